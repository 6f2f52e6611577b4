//! The `hf` command line front end.
//!
//! Every subcommand renders either an aligned text table or, with `--json`,
//! a JSON document whose field order and layout are fixed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::admissibility::{strong_report, weak_report, AdmissibilityReport};
use crate::corpus::{build, CorpusName};
use crate::diagram::{stabilize, validate, HeegaardDiagram, ValidatedDiagram, Violation};
use crate::domains::{DomainError, DomainSolver};
use crate::exactla::{Int, Rational};
use crate::floer::{class_homology, complexes, CountedDomain, FloerError, FloerOptions};
use crate::generators::{enumerate_generators, parse_generator};
use crate::spinc::{spinc_classes, SpincClassReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_ADMISSIBLE: i32 = 2;
pub const EXIT_NOT_COMBINATORIAL: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hf",
    version,
    about = "Combinatorial Heegaard Floer homology over exact arithmetic"
)]
pub struct Cli {
    /// Emit a JSON report instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel parts (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every structural and topological invariant of a diagram.
    Validate { file: PathBuf },
    /// List the generators (intersection tuples).
    Generators { file: PathBuf },
    /// Spin^c classes with grading divisors and relative gradings.
    Spinc { file: PathBuf },
    /// Nonnegative domains with the given index and basepoint multiplicity.
    Domains {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, allow_negative_numbers = true)]
        index: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        nz: i64,
    },
    /// Weak (default) or strong admissibility, with witness or certificate.
    Admissible {
        file: PathBuf,
        /// Restrict to one Spin^c class, by its id in `spinc` output.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long)]
        strong: bool,
    },
    /// Hat Floer homology over F2, per Spin^c class.
    Homology {
        file: PathBuf,
        /// Do not count rectangles; only bigons.
        #[arg(long)]
        strict_rectangles: bool,
    },
    /// Write the stabilization of a diagram.
    Stabilize {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Write a built-in diagram: s3_g1, s1s2_g1, s1s2_bad, s1s2_wind, lens, gsph.
    Corpus {
        name: String,
        #[arg(short = 'p')]
        p: Option<u32>,
        #[arg(short = 'q')]
        q: Option<u32>,
        #[arg(short = 'g')]
        g: Option<u32>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

/// Output of one command: the report and the exit code.
struct Outcome {
    code: i32,
    json: Value,
    text: String,
}

impl Outcome {
    fn new(code: i32, json: Value, text: String) -> Self {
        Outcome { code, json, text }
    }
}

fn int_json(v: &Int) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ints_text(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  ", w = *w));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid {
        message: String,
        violations: Vec<Violation>,
    },
}

fn load(path: &Path) -> Result<HeegaardDiagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    HeegaardDiagram::from_json(&text).map_err(|e| Failure::Invalid {
        message: e.to_string(),
        violations: Vec::new(),
    })
}

fn load_valid(path: &Path) -> Result<ValidatedDiagram, Failure> {
    let d = load(path)?;
    let report = validate(&d);
    if !report.ok() {
        return Err(Failure::Invalid {
            message: "diagram violates its invariants".into(),
            violations: report.violations,
        });
    }
    ValidatedDiagram::new(d).map_err(|e| Failure::Invalid {
        message: e.to_string(),
        violations: Vec::new(),
    })
}

fn violations_text(violations: &[Violation]) -> String {
    let rows: Vec<Vec<String>> = violations
        .iter()
        .map(|v| vec![v.invariant.to_string(), v.ids.join(","), v.detail.clone()])
        .collect();
    table(&["invariant", "ids", "detail"], &rows)
}

fn failure_outcome(f: Failure) -> Outcome {
    match f {
        Failure::Usage(m) => Outcome::new(
            EXIT_USAGE,
            json!({ "error": "usage", "message": m }),
            format!("error: {m}\n"),
        ),
        Failure::Invalid { message, violations } => {
            let mut text = format!("invalid diagram: {message}\n");
            if !violations.is_empty() {
                text.push_str(&violations_text(&violations));
            }
            Outcome::new(
                EXIT_INVALID,
                json!({ "error": "invalid", "message": message, "violations": violations }),
                text,
            )
        }
    }
}

fn write_diagram(d: &HeegaardDiagram, path: &Path) -> Result<(), Failure> {
    fs::write(path, d.to_json()).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_validate(path: &Path) -> Result<Outcome, Failure> {
    let d = load(path)?;
    let report = validate(&d);
    let summary = json!({
        "genus": d.genus(),
        "points": d.num_points(),
        "regions": d.num_regions(),
    });
    if report.ok() {
        let text = format!(
            "valid: genus {}, {} points, {} regions\n",
            d.genus(),
            d.num_points(),
            d.num_regions()
        );
        Ok(Outcome::new(
            EXIT_OK,
            json!({ "valid": true, "diagram": summary, "violations": [] }),
            text,
        ))
    } else {
        let text = format!(
            "invalid: {} violation(s)\n{}",
            report.violations.len(),
            violations_text(&report.violations)
        );
        Ok(Outcome::new(
            EXIT_INVALID,
            json!({ "valid": false, "diagram": summary, "violations": report.violations }),
            text,
        ))
    }
}

fn cmd_generators(path: &Path) -> Result<Outcome, Failure> {
    let d = load_valid(path)?;
    let labels: Vec<String> = enumerate_generators(&d).iter().map(|x| x.label(&d)).collect();
    let rows: Vec<Vec<String>> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| vec![i.to_string(), l.clone()])
        .collect();
    let text = format!("{} generator(s)\n{}", labels.len(), table(&["#", "generator"], &rows));
    Ok(Outcome::new(
        EXIT_OK,
        json!({ "count": labels.len(), "generators": labels }),
        text,
    ))
}

fn cmd_spinc(path: &Path) -> Result<Outcome, Failure> {
    let d = load_valid(path)?;
    let solver = DomainSolver::new(&d);
    let classes = spinc_classes(&solver);
    let reports: Vec<SpincClassReport> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| SpincClassReport::new(&d, i, c))
        .collect();
    let mut rows = Vec::new();
    for r in &reports {
        for m in &r.members {
            rows.push(vec![
                r.id.to_string(),
                r.divisor.to_string(),
                m.clone(),
                r.gradings[m].to_string(),
            ]);
        }
    }
    let text = format!(
        "{} Spin^c class(es)\n{}",
        reports.len(),
        table(&["class", "divisor", "generator", "grading"], &rows)
    );
    Ok(Outcome::new(EXIT_OK, json!({ "classes": reports }), text))
}

fn unbounded_outcome(witness: &[Int]) -> Outcome {
    Outcome::new(
        EXIT_NOT_ADMISSIBLE,
        json!({ "error": "unbounded", "witness": ints_json(witness) }),
        format!(
            "not weakly admissible: nonnegative periodic domain {}\npositive domains are unbounded along it\n",
            ints_text(witness)
        ),
    )
}

fn cmd_domains(path: &Path, from: &str, to: &str, index: i64, nz: i64) -> Result<Outcome, Failure> {
    let d = load_valid(path)?;
    let x = parse_generator(&d, from).ok_or_else(|| Failure::Usage(format!("{from:?} is not a generator")))?;
    let y = parse_generator(&d, to).ok_or_else(|| Failure::Usage(format!("{to:?} is not a generator")))?;
    let solver = DomainSolver::new(&d);
    match solver.positive_domains(&x, &y, index, nz) {
        Err(DomainError::Unbounded { witness }) => Ok(unbounded_outcome(&witness)),
        Ok(doms) => {
            let list: Vec<Value> = doms.iter().map(|dm| ints_json(dm.coefficients())).collect();
            let rows: Vec<Vec<String>> = doms
                .iter()
                .enumerate()
                .map(|(i, dm)| vec![i.to_string(), ints_text(dm.coefficients())])
                .collect();
            let text = format!(
                "{} domain(s) from {} to {} with index {index}, n_z {nz}\n{}",
                doms.len(),
                x.label(&d),
                y.label(&d),
                table(&["#", "coefficients"], &rows)
            );
            Ok(Outcome::new(
                EXIT_OK,
                json!({
                    "from": x.label(&d),
                    "to": y.label(&d),
                    "index": index,
                    "nz": nz,
                    "domains": list,
                }),
                text,
            ))
        }
    }
}

fn report_json(r: &AdmissibilityReport, class: Option<usize>) -> Value {
    json!({
        "kind": r.kind,
        "class": class,
        "admissible": r.admissible,
        "witness": r.witness.as_deref().map(ints_json),
        "witness_n": r.witness_n.as_ref().map(int_json),
        "certificate": r.certificate.as_ref().map(|a| a.iter().map(rational_string).collect::<Vec<_>>()),
        "pairing_zero_weak": r.pairing_zero_weak,
    })
}

fn report_text(r: &AdmissibilityReport, class: Option<usize>) -> String {
    let scope = class.map(|c| format!(" for class {c}")).unwrap_or_default();
    let mut s = format!(
        "{} admissibility{scope}: {}\n",
        r.kind,
        if r.admissible { "yes" } else { "no" }
    );
    if let Some(w) = &r.witness {
        match &r.witness_n {
            Some(n) => s.push_str(&format!(
                "  witness {} (pairing {}, every coefficient <= {n})\n",
                ints_text(w),
                2 * n
            )),
            None => s.push_str(&format!("  witness {} (nonnegative periodic domain)\n", ints_text(w))),
        }
    }
    if let Some(a) = &r.certificate {
        let parts: Vec<String> = a.iter().map(rational_string).collect();
        s.push_str(&format!("  area certificate [{}]\n", parts.join(", ")));
    }
    if let Some(z) = r.pairing_zero_weak {
        s.push_str(&format!(
            "  pairing-zero sublattice weakly admissible: {}\n",
            if z { "yes" } else { "no" }
        ));
    }
    s
}

fn cmd_admissible(path: &Path, class: Option<usize>, strong: bool) -> Result<Outcome, Failure> {
    let d = load_valid(path)?;
    let solver = DomainSolver::new(&d);
    let classes = spinc_classes(&solver);
    if let Some(k) = class {
        if k >= classes.len() {
            return Err(Failure::Usage(format!(
                "class {k} out of range; the diagram has {} class(es)",
                classes.len()
            )));
        }
    }
    let mut reports: Vec<(Option<usize>, AdmissibilityReport)> = Vec::new();
    if strong {
        let ids: Vec<usize> = match class {
            Some(k) => vec![k],
            None => (0..classes.len()).collect(),
        };
        for k in ids {
            reports.push((Some(k), strong_report(&solver, &classes[k])));
        }
    } else {
        reports.push((class, weak_report(&solver, class.map(|k| &classes[k]))));
    }
    let ok = reports
        .iter()
        .all(|(_, r)| r.admissible && r.pairing_zero_weak != Some(false));
    let text: String = reports.iter().map(|(c, r)| report_text(r, *c)).collect();
    let json = json!({
        "admissible": ok,
        "reports": reports.iter().map(|(c, r)| report_json(r, *c)).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_NOT_ADMISSIBLE }, json, text))
}

fn counted_json(d: &ValidatedDiagram, c: &CountedDomain) -> Value {
    json!({
        "from": c.domain.from().label(d),
        "to": c.domain.to().label(d),
        "coefficients": ints_json(c.domain.coefficients()),
        "shape": c.shape.tag,
        "reason": c.shape.reason,
    })
}

#[derive(Serialize)]
struct ClassJson {
    id: usize,
    divisor: u64,
    total: usize,
    ranks: Vec<(i64, usize)>,
}

fn cmd_homology(path: &Path, strict: bool) -> Result<Outcome, Failure> {
    let d = load_valid(path)?;
    let options = FloerOptions {
        strict_rectangles: strict,
    };
    match complexes(&d, options) {
        Err(FloerError::Unbounded(DomainError::Unbounded { witness })) => Ok(unbounded_outcome(&witness)),
        Err(FloerError::NotCombinatorial { offenders }) => {
            let rows: Vec<Vec<String>> = offenders
                .iter()
                .map(|o| {
                    vec![
                        o.domain.from().label(&d),
                        o.domain.to().label(&d),
                        ints_text(o.domain.coefficients()),
                        o.shape.reason.clone().unwrap_or_else(|| format!("{:?}", o.shape.tag)),
                    ]
                })
                .collect();
            let text = format!(
                "not combinatorial: {} index-1 domain(s) cannot be counted\n{}",
                offenders.len(),
                table(&["from", "to", "coefficients", "reason"], &rows)
            );
            let json = json!({
                "error": "not-combinatorial",
                "offenders": offenders.iter().map(|o| counted_json(&d, o)).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(EXIT_NOT_COMBINATORIAL, json, text))
        }
        Err(e @ FloerError::DSquaredNonzero { .. }) => Ok(Outcome::new(
            EXIT_NOT_COMBINATORIAL,
            json!({ "error": "d-squared", "message": e.to_string() }),
            format!("{e}\n"),
        )),
        Ok(cs) => {
            let classes: Vec<ClassJson> = cs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let h = class_homology(c, i);
                    ClassJson {
                        id: i,
                        divisor: h.divisor,
                        total: h.total(),
                        ranks: h.ranks.into_iter().collect(),
                    }
                })
                .collect();
            let total: usize = classes.iter().map(|c| c.total).sum();
            let counted: Vec<Value> = cs.iter().flat_map(|c| &c.audit).map(|a| counted_json(&d, a)).collect();
            let mut rows = Vec::new();
            for c in &classes {
                for (g, r) in &c.ranks {
                    rows.push(vec![
                        c.id.to_string(),
                        c.divisor.to_string(),
                        g.to_string(),
                        r.to_string(),
                    ]);
                }
            }
            let text = format!(
                "total rank {total} over {} Spin^c class(es), {} counted domain(s)\n{}",
                classes.len(),
                counted.len(),
                table(&["class", "divisor", "grading", "rank"], &rows)
            );
            Ok(Outcome::new(
                EXIT_OK,
                json!({ "total": total, "classes": classes, "counted": counted }),
                text,
            ))
        }
    }
}

fn cmd_stabilize(path: &Path, output: &Path) -> Result<Outcome, Failure> {
    let d = load_valid(path)?;
    let s = stabilize(&d);
    write_diagram(&s, output)?;
    Ok(Outcome::new(
        EXIT_OK,
        json!({ "output": output.display().to_string(), "genus": s.genus(), "points": s.num_points() }),
        format!("wrote {} (genus {})\n", output.display(), s.genus()),
    ))
}

fn corpus_name(name: &str, p: Option<u32>, q: Option<u32>, g: Option<u32>) -> Result<CorpusName, Failure> {
    let missing = |flag: &str| Failure::Usage(format!("{name} needs {flag}"));
    let parsed = match name {
        "lens" => CorpusName::Lens {
            p: p.ok_or_else(|| missing("-p"))?,
            q: q.ok_or_else(|| missing("-q"))?,
        },
        "gsph" => CorpusName::Gsph {
            g: g.ok_or_else(|| missing("-g"))?,
        },
        other => other
            .parse()
            .map_err(|e: crate::corpus::CorpusError| Failure::Usage(e.to_string()))?,
    };
    Ok(parsed)
}

fn cmd_corpus(name: &str, p: Option<u32>, q: Option<u32>, g: Option<u32>, output: &Path) -> Result<Outcome, Failure> {
    let corpus = corpus_name(name, p, q, g)?;
    let d = build(corpus).map_err(|e| Failure::Usage(e.to_string()))?;
    write_diagram(&d, output)?;
    Ok(Outcome::new(
        EXIT_OK,
        json!({ "name": corpus.to_string(), "output": output.display().to_string() }),
        format!("wrote {corpus} to {}\n", output.display()),
    ))
}

fn dispatch(command: &Command) -> Outcome {
    let result = match command {
        Command::Validate { file } => cmd_validate(file),
        Command::Generators { file } => cmd_generators(file),
        Command::Spinc { file } => cmd_spinc(file),
        Command::Domains {
            file,
            from,
            to,
            index,
            nz,
        } => cmd_domains(file, from, to, *index, *nz),
        Command::Admissible { file, class, strong } => cmd_admissible(file, *class, *strong),
        Command::Homology {
            file,
            strict_rectangles,
        } => cmd_homology(file, *strict_rectangles),
        Command::Stabilize { file, output } => cmd_stabilize(file, output),
        Command::Corpus { name, p, q, g, output } => cmd_corpus(name, *p, *q, *g, output),
    };
    result.unwrap_or_else(failure_outcome)
}

/// Runs `hf` with the given arguments (including the program name) and
/// returns the exit code. Reports, including failure witnesses, go to
/// `out`; argument errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} threads: {e}", cli.threads);
            return EXIT_USAGE;
        }
    };
    let outcome = pool.install(|| dispatch(&cli.command));
    let written = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
        s.push('\n');
        out.write_all(s.as_bytes())
    } else {
        out.write_all(outcome.text.as_bytes())
    };
    if written.is_err() {
        return EXIT_USAGE;
    }
    outcome.code
}
