use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::quadrants::{close_quadrants, scan_corners};
use super::{ArcId, CurveKind, HeegaardDiagram};
use crate::exactla::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    CurveCount,
    EmptyCurve,
    PointIncidence,
    BoundaryCycle,
    ArcIncidence,
    QuadrantClosure,
    EulerCharacteristic,
    EulerMeasure,
    Connected,
    AlphaIndependence,
    BetaIndependence,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Invariant::CurveCount => "curve count",
            Invariant::EmptyCurve => "empty curve",
            Invariant::PointIncidence => "point incidence",
            Invariant::BoundaryCycle => "boundary cycle",
            Invariant::ArcIncidence => "arc incidence",
            Invariant::QuadrantClosure => "quadrant closure",
            Invariant::EulerCharacteristic => "euler characteristic",
            Invariant::EulerMeasure => "euler measure",
            Invariant::Connected => "connected surface",
            Invariant::AlphaIndependence => "alpha independence",
            Invariant::BetaIndependence => "beta independence",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: Invariant,
    pub ids: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, invariant: Invariant) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }

    fn push(&mut self, invariant: Invariant, ids: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            invariant,
            ids,
            detail: detail.into(),
        });
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    pub(crate) fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Checks every structural and topological invariant of a diagram.
///
/// The check is exhaustive: all violations are collected, in a fixed order.
pub fn validate(d: &HeegaardDiagram) -> ValidationReport {
    let mut report = ValidationReport::default();
    let g = d.genus();

    if g == 0 || d.alpha().len() != g || d.beta().len() != g {
        report.push(
            Invariant::CurveCount,
            vec![],
            format!(
                "genus {g} with {} alpha and {} beta curves",
                d.alpha().len(),
                d.beta().len()
            ),
        );
    }
    for kind in [CurveKind::Alpha, CurveKind::Beta] {
        for (i, c) in d.curves(kind).iter().enumerate() {
            if c.is_empty() {
                report.push(
                    Invariant::EmptyCurve,
                    vec![format!("{}{i}", kind.letter())],
                    "curve carries no intersection points",
                );
            }
        }
    }

    let mut alpha_hits = vec![0usize; d.num_points()];
    let mut beta_hits = vec![0usize; d.num_points()];
    for &p in d.alpha().iter().flatten() {
        alpha_hits[p] += 1;
    }
    for &p in d.beta().iter().flatten() {
        beta_hits[p] += 1;
    }
    for p in 0..d.num_points() {
        if alpha_hits[p] != 1 || beta_hits[p] != 1 {
            report.push(
                Invariant::PointIncidence,
                vec![d.point_name(p).to_string()],
                format!("on {} alpha and {} beta curve positions", alpha_hits[p], beta_hits[p]),
            );
        }
    }

    let scan = scan_corners(d);
    for (r, c, msg) in &scan.broken_cycles {
        report.push(
            Invariant::BoundaryCycle,
            vec![format!("region {r}"), format!("cycle {c}")],
            msg.clone(),
        );
    }

    let mut uses: BTreeMap<ArcId, (usize, usize)> = d.arcs().into_iter().map(|a| (a, (0, 0))).collect();
    for region in d.regions() {
        for oa in region.boundary.iter().flatten() {
            let e = uses.get_mut(&oa.arc).expect("structure checked at construction");
            if oa.forward {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
    }
    for (arc, (f, b)) in &uses {
        if (*f, *b) != (1, 1) {
            report.push(
                Invariant::ArcIncidence,
                vec![arc.to_string()],
                format!("referenced {f} times forward and {b} times backward; expected once each"),
            );
        }
    }

    for p in 0..d.num_points() {
        if let Err(e) = close_quadrants(d, p, &scan.corners) {
            report.push(
                Invariant::QuadrantClosure,
                vec![d.point_name(p).to_string()],
                format!("quadrant closure at point {}: {e}", d.point_name(p)),
            );
        }
    }

    let v = d.num_points() as i64;
    let e = d.arcs().len() as i64;
    let chi_sum: i64 = d.regions().iter().map(|r| r.euler_characteristic()).sum();
    let expected = 2 - 2 * g as i64;
    if chi_sum + v - e != expected {
        report.push(
            Invariant::EulerCharacteristic,
            vec![],
            format!(
                "sum chi(D_i) + V - E = {} + {v} - {e} = {}, expected {expected}",
                chi_sum,
                chi_sum + v - e
            ),
        );
    }
    let measure: Rational = d.regions().iter().map(|r| r.euler_measure()).sum();
    if measure != rat(expected, 1) {
        report.push(
            Invariant::EulerMeasure,
            vec![],
            format!("sum e(D_i) = {measure}, expected {expected}"),
        );
    }

    // Region adjacency through arcs of the given kinds.
    let sides = {
        let mut sides: BTreeMap<ArcId, Vec<usize>> = BTreeMap::new();
        for (r, region) in d.regions().iter().enumerate() {
            for oa in region.boundary.iter().flatten() {
                sides.entry(oa.arc).or_default().push(r);
            }
        }
        sides
    };
    let components = |kinds: &[CurveKind]| {
        let mut uf = UnionFind::new(d.num_regions());
        for (arc, rs) in &sides {
            if kinds.contains(&arc.kind) {
                for w in rs.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.components()
    };
    if components(&[CurveKind::Alpha, CurveKind::Beta]) != 1 {
        report.push(
            Invariant::Connected,
            vec![],
            "regions do not glue into a connected surface",
        );
    }
    // g disjoint curves are independent in H_1 iff their complement is connected.
    if components(&[CurveKind::Beta]) != 1 {
        report.push(
            Invariant::AlphaIndependence,
            vec![],
            "complement of the alpha curves is disconnected, so they are not independent in homology",
        );
    }
    if components(&[CurveKind::Alpha]) != 1 {
        report.push(
            Invariant::BetaIndependence,
            vec![],
            "complement of the beta curves is disconnected, so they are not independent in homology",
        );
    }
    report
}
