//! C ABI over `hfcore`.
//!
//! Diagrams and homology reports are opaque heap handles. Every fallible call
//! returns an [`HfStatus`]; on failure the message is kept per thread and can
//! be read with [`hf_last_error`]. Handles must be released with the matching
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hfcore::admissibility::weak_admissible;
use hfcore::corpus::{build, CorpusName};
use hfcore::diagram::{stabilize, HeegaardDiagram, ValidatedDiagram};
use hfcore::floer::{homology_with, FloerError, FloerOptions, HomologyReport};
use hfcore::generators::enumerate_generators;
use hfcore::spinc::spinc_partition;

/// Status codes; the nonzero values match the exit codes of the `hf` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    Invalid = 1,
    NotAdmissible = 2,
    NotCombinatorial = 3,
    BadArgument = 4,
    Panic = 5,
}

/// Opaque validated diagram.
pub struct HfDiagram {
    inner: ValidatedDiagram,
}

/// Opaque homology report.
pub struct HfHomology {
    inner: HomologyReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), (HfStatus, String)>) -> HfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HfStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (HfStatus, String)> {
    if s.is_null() {
        return Err((HfStatus::BadArgument, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (HfStatus::BadArgument, "string is not UTF-8".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), (HfStatus, String)> {
    if out.is_null() {
        Err((HfStatus::BadArgument, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn validated(d: HeegaardDiagram) -> Result<*mut HfDiagram, (HfStatus, String)> {
    let inner = ValidatedDiagram::new(d).map_err(|e| (HfStatus::Invalid, e.to_string()))?;
    Ok(Box::into_raw(Box::new(HfDiagram { inner })))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates a diagram in `.hfd` JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_from_json(json: *const c_char, out: *mut *mut HfDiagram) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let d = HeegaardDiagram::from_json(text(json)?).map_err(|e| (HfStatus::Invalid, e.to_string()))?;
        *out = validated(d)?;
        Ok(())
    })
}

/// Builds a corpus diagram by name, e.g. `"s1s2_g1"`, `"lens(5,2)"`, `"gsph(3)"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_corpus(name: *const c_char, out: *mut *mut HfDiagram) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let name: CorpusName = text(name)?
            .parse()
            .map_err(|e| (HfStatus::BadArgument, format!("{e}")))?;
        let d = build(name).map_err(|e| (HfStatus::BadArgument, e.to_string()))?;
        *out = validated(d)?;
        Ok(())
    })
}

/// Writes a new handle for the stabilization of `d`.
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_stabilize(d: *const HfDiagram, out: *mut *mut HfDiagram) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let d = d.as_ref().ok_or((HfStatus::BadArgument, "null diagram".to_string()))?;
        *out = validated(stabilize(d.inner.diagram()))?;
        Ok(())
    })
}

/// # Safety
/// `d` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_free(d: *mut HfDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// The diagram as `.hfd` JSON; release with [`hf_string_free`].
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_to_json(d: *const HfDiagram) -> *mut c_char {
    match d.as_ref() {
        Some(d) => CString::new(d.inner.diagram().to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_genus(d: *const HfDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.inner.genus())
}

/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_generator_count(d: *const HfDiagram) -> usize {
    d.as_ref().map_or(0, |d| enumerate_generators(&d.inner).len())
}

/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_spinc_count(d: *const HfDiagram) -> usize {
    d.as_ref().map_or(0, |d| spinc_partition(&d.inner).len())
}

/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_diagram_weakly_admissible(d: *const HfDiagram, out: *mut bool) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let d = d.as_ref().ok_or((HfStatus::BadArgument, "null diagram".to_string()))?;
        *out = weak_admissible(&d.inner, None).admissible;
        Ok(())
    })
}

/// Computes hat Floer homology. Fails with `NotAdmissible` when the diagram
/// is not weakly admissible and with `NotCombinatorial` when an index-1
/// domain is not countable (with `strict_rectangles`, any rectangle).
///
/// # Safety
/// `d` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_homology(
    d: *const HfDiagram,
    strict_rectangles: bool,
    out: *mut *mut HfHomology,
) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let d = d.as_ref().ok_or((HfStatus::BadArgument, "null diagram".to_string()))?;
        let report = homology_with(&d.inner, FloerOptions { strict_rectangles }).map_err(|e| {
            let status = match e {
                FloerError::Unbounded(_) => HfStatus::NotAdmissible,
                FloerError::NotCombinatorial { .. } => HfStatus::NotCombinatorial,
                FloerError::DSquaredNonzero { .. } => HfStatus::Panic,
            };
            (status, e.to_string())
        })?;
        *out = Box::into_raw(Box::new(HfHomology { inner: report }));
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hf_homology_free(h: *mut HfHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_homology_total(h: *const HfHomology) -> usize {
    h.as_ref().map_or(0, |h| h.inner.total())
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_homology_class_count(h: *const HfHomology) -> usize {
    h.as_ref().map_or(0, |h| h.inner.classes.len())
}

/// Grading divisor of a class (0 for a Z grading).
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_homology_class_divisor(h: *const HfHomology, class_id: usize, out: *mut u64) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let c = class_of(h, class_id)?;
        *out = c.divisor;
        Ok(())
    })
}

/// Rank of a class in one grading (0 when the grading does not occur).
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_homology_rank(
    h: *const HfHomology,
    class_id: usize,
    grading: i64,
    out: *mut usize,
) -> HfStatus {
    guard(|| {
        out_ptr(out)?;
        let c = class_of(h, class_id)?;
        *out = c.ranks.get(&grading).copied().unwrap_or(0);
        Ok(())
    })
}

unsafe fn class_of<'a>(
    h: *const HfHomology,
    class_id: usize,
) -> Result<&'a hfcore::floer::ClassHomology, (HfStatus, String)> {
    let h = h.as_ref().ok_or((HfStatus::BadArgument, "null homology".to_string()))?;
    h.inner.classes.get(class_id).ok_or((
        HfStatus::BadArgument,
        format!("class {class_id} out of range ({} classes)", h.inner.classes.len()),
    ))
}
