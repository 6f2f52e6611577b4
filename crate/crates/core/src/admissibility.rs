//! Weak and strong admissibility, decided by exact linear programming over
//! the real span of the periodic lattice, with witnesses and area
//! certificates.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::ValidatedDiagram;
use crate::domains::{nonnegative_direction, DomainSolver};
use crate::exactla::{
    integer_ray, lp_optimize, rat, rat_from_int, Constraint, HermiteSystem, Int, IntMatrix, LpOutcome, Rational,
    Relation,
};
use crate::measures::chern_pairing;
use crate::spinc::SpincClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdmissibilityKind {
    Weak,
    Strong,
}

impl std::fmt::Display for AdmissibilityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AdmissibilityKind::Weak => "weak",
            AdmissibilityKind::Strong => "strong",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibilityError {
    #[error("no {0} area certificate exists; the diagram is not {0}ly admissible")]
    NotAdmissible(AdmissibilityKind),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub kind: AdmissibilityKind,
    pub admissible: bool,
    /// Periodic domain violating the definition. For the weak check it is
    /// nonzero and nonnegative; for the strong check it has pairing `2n`
    /// with every coefficient at most `n`.
    pub witness: Option<Vec<Int>>,
    /// The `n` of a strong witness.
    pub witness_n: Option<Int>,
    /// Positive region areas, total 1, satisfying the area lemma.
    pub certificate: Option<Vec<Rational>>,
    /// Strong check only: whether the pairing-zero sublattice is weakly
    /// admissible.
    pub pairing_zero_weak: Option<bool>,
}

/// Integer basis (in region coordinates) of the periodic domains with zero
/// pairing against `c`, given as pairings of the lattice basis.
fn pairing_zero_sublattice(basis: &[Vec<Int>], pairing: &[Int], dim: usize) -> Vec<Vec<Int>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let row = IntMatrix::from_rows(&[pairing.to_vec()]);
    HermiteSystem::new(&row)
        .kernel()
        .iter()
        .map(|t| {
            let mut v = vec![Int::zero(); dim];
            for (tj, b) in t.iter().zip(basis) {
                for (o, bi) in v.iter_mut().zip(b) {
                    *o += tj * bi;
                }
            }
            v
        })
        .collect()
}

fn class_pairing(solver: &DomainSolver<'_>, class: &SpincClass) -> Vec<Int> {
    solver.pairings(class.base())
}

/// No nonzero periodic domain (restricted to pairing zero with the class,
/// when given) is componentwise nonnegative.
pub fn weak_report(solver: &DomainSolver<'_>, class: Option<&SpincClass>) -> AdmissibilityReport {
    let basis = &solver.periodic_lattice().basis;
    let dim = solver.diagram().num_regions();
    let pairing = class.map(|c| class_pairing(solver, c));
    let witness = nonnegative_direction(basis, dim, pairing.as_deref());
    let certificate = match witness {
        Some(_) => None,
        None => Some(weak_certificate(solver, class).expect("weakly admissible diagrams carry an area certificate")),
    };
    AdmissibilityReport {
        kind: AdmissibilityKind::Weak,
        admissible: witness.is_none(),
        witness,
        witness_n: None,
        certificate,
        pairing_zero_weak: None,
    }
}

/// No periodic domain with `<c_1(s), P> = 2n > 0` has all coefficients at
/// most `n`. The pairing-zero part is reported separately as a weak check.
pub fn strong_report(solver: &DomainSolver<'_>, class: &SpincClass) -> AdmissibilityReport {
    let basis = &solver.periodic_lattice().basis;
    let dim = solver.diagram().num_regions();
    let pairing = class_pairing(solver, class);
    let weak_zero = nonnegative_direction(basis, dim, Some(&pairing)).is_none();
    let mut witness = None;
    let mut witness_n = None;
    if !basis.is_empty() {
        let mut constraints: Vec<Constraint> = (0..dim)
            .map(|i| {
                Constraint::new(
                    basis.iter().map(|b| rat_from_int(&b[i])).collect(),
                    Relation::Le,
                    Rational::one(),
                )
            })
            .collect();
        constraints.push(Constraint::new(
            pairing.iter().map(rat_from_int).collect(),
            Relation::Eq,
            rat(2, 1),
        ));
        let objective = vec![Rational::zero(); basis.len()];
        if let LpOutcome::Optimal { point, .. } = lp_optimize(&objective, &constraints) {
            let mut p = vec![Rational::zero(); dim];
            for (tj, b) in point.iter().zip(basis) {
                for (o, bi) in p.iter_mut().zip(b) {
                    *o += tj * rat_from_int(bi);
                }
            }
            let w = integer_ray(&p);
            let c = chern_pairing(solver.diagram(), class.base(), &w).expect("periodic vectors have integral pairing");
            let n = c / Int::from(2);
            assert!(
                n.is_positive() && w.iter().all(|x| x <= &n),
                "strong witness fails its own definition"
            );
            witness = Some(w);
            witness_n = Some(n);
        }
    }
    let admissible = witness.is_none();
    let certificate = if admissible && weak_zero {
        strong_certificate(solver, class).ok()
    } else {
        None
    };
    AdmissibilityReport {
        kind: AdmissibilityKind::Strong,
        admissible,
        witness,
        witness_n,
        certificate,
        pairing_zero_weak: Some(weak_zero),
    }
}

pub fn weak_admissible(d: &ValidatedDiagram, class: Option<&SpincClass>) -> AdmissibilityReport {
    weak_report(&DomainSolver::new(d), class)
}

pub fn strong_admissible(d: &ValidatedDiagram, class: &SpincClass) -> AdmissibilityReport {
    strong_report(&DomainSolver::new(d), class)
}

/// Maximizes the least area subject to total area 1 and a prescribed area
/// for each constraint vector.
fn area_lp(dim: usize, targets: &[(Vec<Int>, Rational)]) -> Option<Vec<Rational>> {
    // variables: a_0..a_{dim-1}, s
    let mut constraints = Vec::new();
    for i in 0..dim {
        let mut row = vec![Rational::zero(); dim + 1];
        row[i] = Rational::one();
        row[dim] = -Rational::one();
        constraints.push(Constraint::new(row, Relation::Ge, Rational::zero()));
    }
    let mut total = vec![Rational::one(); dim + 1];
    total[dim] = Rational::zero();
    constraints.push(Constraint::new(total, Relation::Eq, Rational::one()));
    for (p, value) in targets {
        let mut row: Vec<Rational> = p.iter().map(rat_from_int).collect();
        row.push(Rational::zero());
        constraints.push(Constraint::new(row, Relation::Eq, value.clone()));
    }
    let mut objective = vec![Rational::zero(); dim + 1];
    objective[dim] = Rational::one();
    match lp_optimize(&objective, &constraints) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(dim);
            Some(point)
        }
        _ => None,
    }
}

fn area(a: &[Rational], p: &[Int]) -> Rational {
    a.iter().zip(p).map(|(x, y)| x * rat_from_int(y)).sum()
}

fn weak_certificate(
    solver: &DomainSolver<'_>,
    class: Option<&SpincClass>,
) -> Result<Vec<Rational>, AdmissibilityError> {
    let basis = &solver.periodic_lattice().basis;
    let dim = solver.diagram().num_regions();
    let constrained = match class {
        None => basis.clone(),
        Some(c) => pairing_zero_sublattice(basis, &class_pairing(solver, c), dim),
    };
    let targets: Vec<(Vec<Int>, Rational)> = constrained.into_iter().map(|p| (p, Rational::zero())).collect();
    let a = area_lp(dim, &targets).ok_or(AdmissibilityError::NotAdmissible(AdmissibilityKind::Weak))?;
    assert!(a.iter().all(|x| x.is_positive()));
    assert!(targets.iter().all(|(p, v)| &area(&a, p) == v));
    Ok(a)
}

fn strong_certificate(solver: &DomainSolver<'_>, class: &SpincClass) -> Result<Vec<Rational>, AdmissibilityError> {
    let d = solver.diagram();
    let basis = &solver.periodic_lattice().basis;
    let targets: Vec<(Vec<Int>, Rational)> = basis
        .iter()
        .map(|p| {
            let c = chern_pairing(d, class.base(), p).expect("periodic vectors have integral pairing");
            (p.clone(), rat_from_int(&c) * rat(1, 2))
        })
        .collect();
    let a = area_lp(d.num_regions(), &targets).ok_or(AdmissibilityError::NotAdmissible(AdmissibilityKind::Strong))?;
    assert!(a.iter().all(|x| x.is_positive()));
    assert!(targets.iter().all(|(p, v)| &area(&a, p) == v));
    assert_eq!(a.iter().sum::<Rational>(), Rational::one());
    Ok(a)
}

/// Positive areas with total 1 proving admissibility: every constrained
/// periodic domain has signed area 0 (weak) or `<c_1, P> / 2` (strong).
pub fn area_certificate(
    d: &ValidatedDiagram,
    kind: AdmissibilityKind,
    class: Option<&SpincClass>,
) -> Result<Vec<Rational>, AdmissibilityError> {
    let solver = DomainSolver::new(d);
    match (kind, class) {
        (AdmissibilityKind::Weak, c) => weak_certificate(&solver, c),
        (AdmissibilityKind::Strong, Some(c)) => strong_certificate(&solver, c),
        (AdmissibilityKind::Strong, None) => {
            // every class must admit one; report the first that does not
            let classes = crate::spinc::spinc_classes(&solver);
            let mut first = None;
            for c in &classes {
                let a = strong_certificate(&solver, c)?;
                first.get_or_insert(a);
            }
            first.ok_or(AdmissibilityError::NotAdmissible(AdmissibilityKind::Strong))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build, CorpusName};
    use crate::exactla::int;
    use crate::spinc::spinc_partition;

    fn vd(name: CorpusName) -> ValidatedDiagram {
        ValidatedDiagram::new(build(name).unwrap()).unwrap()
    }

    #[test]
    fn lens_is_vacuous() {
        let d = vd(CorpusName::Lens { p: 5, q: 1 });
        let w = weak_admissible(&d, None);
        assert!(w.admissible);
        let a = w.certificate.unwrap();
        assert!(a.iter().all(|x| x.is_positive()));
        assert_eq!(a.iter().sum::<Rational>(), Rational::one());
        for c in spinc_partition(&d) {
            assert!(strong_admissible(&d, &c).admissible);
        }
    }

    #[test]
    fn s1s2_admissible() {
        let d = vd(CorpusName::S1S2G1);
        let w = weak_admissible(&d, None);
        assert!(w.admissible);
        let a = w.certificate.unwrap();
        assert_eq!(a[0], a[1]);
        let class = &spinc_partition(&d)[0];
        let s = strong_admissible(&d, class);
        assert!(s.admissible);
        assert_eq!(s.pairing_zero_weak, Some(true));
        assert!(s.certificate.is_some());
    }

    #[test]
    fn s1s2_bad_fails_weak() {
        let d = vd(CorpusName::S1S2Bad);
        let w = weak_admissible(&d, None);
        assert!(!w.admissible);
        assert_eq!(w.witness.unwrap(), vec![int(0), int(2), int(1)]);
        assert_eq!(
            area_certificate(&d, AdmissibilityKind::Weak, None),
            Err(AdmissibilityError::NotAdmissible(AdmissibilityKind::Weak))
        );
    }
}
