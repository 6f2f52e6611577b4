#ifndef HFCORE_H
#define HFCORE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the exit codes of the `hf` binary.
 */
typedef enum {
  HF_STATUS_OK = 0,
  HF_STATUS_INVALID = 1,
  HF_STATUS_NOT_ADMISSIBLE = 2,
  HF_STATUS_NOT_COMBINATORIAL = 3,
  HF_STATUS_BAD_ARGUMENT = 4,
  HF_STATUS_PANIC = 5,
} HfStatus;

/**
 * Opaque validated diagram.
 */
typedef struct HfDiagram HfDiagram;

/**
 * Opaque homology report.
 */
typedef struct HfHomology HfHomology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *hf_last_error(void);

/**
 * Parses and validates a diagram in `.hfd` JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
HfStatus hf_diagram_from_json(const char *json, HfDiagram **out);

/**
 * Builds a corpus diagram by name, e.g. `"s1s2_g1"`, `"lens(5,2)"`, `"gsph(3)"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
HfStatus hf_diagram_corpus(const char *name, HfDiagram **out);

/**
 * Writes a new handle for the stabilization of `d`.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
HfStatus hf_diagram_stabilize(const HfDiagram *d, HfDiagram **out);

/**
 * # Safety
 * `d` must be NULL or a handle not yet freed.
 */
void hf_diagram_free(HfDiagram *d);

/**
 * The diagram as `.hfd` JSON; release with [`hf_string_free`].
 *
 * # Safety
 * `d` must be a live handle.
 */
char *hf_diagram_to_json(const HfDiagram *d);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void hf_string_free(char *s);

/**
 * # Safety
 * `d` must be a live handle.
 */
size_t hf_diagram_genus(const HfDiagram *d);

/**
 * # Safety
 * `d` must be a live handle.
 */
size_t hf_diagram_generator_count(const HfDiagram *d);

/**
 * # Safety
 * `d` must be a live handle.
 */
size_t hf_diagram_spinc_count(const HfDiagram *d);

/**
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
HfStatus hf_diagram_weakly_admissible(const HfDiagram *d, bool *out);

/**
 * Computes hat Floer homology. Fails with `NotAdmissible` when the diagram
 * is not weakly admissible and with `NotCombinatorial` when an index-1
 * domain is not countable (with `strict_rectangles`, any rectangle).
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer.
 */
HfStatus hf_homology(const HfDiagram *d, bool strict_rectangles, HfHomology **out);

/**
 * # Safety
 * `h` must be NULL or a handle not yet freed.
 */
void hf_homology_free(HfHomology *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
size_t hf_homology_total(const HfHomology *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
size_t hf_homology_class_count(const HfHomology *h);

/**
 * Grading divisor of a class (0 for a Z grading).
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
HfStatus hf_homology_class_divisor(const HfHomology *h, size_t class_id, uint64_t *out);

/**
 * Rank of a class in one grading (0 when the grading does not occur).
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
HfStatus hf_homology_rank(const HfHomology *h, size_t class_id, int64_t grading, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HFCORE_H */
