//! Combinatorial pointed Heegaard diagrams.
//!
//! A diagram is stored as curves (cyclic point sequences) together with the
//! complementary regions, each region given by its genus and its boundary
//! cycles. A boundary cycle lists oriented arcs traversed with the region on
//! the left. Everything else (corners, quadrants, intersection signs) is
//! derived from this data.

mod build;
mod hfd;
mod quadrants;
mod transform;
mod validate;
mod validated;

pub use build::{trace_boundary_cycles, CrossingSign};
pub use hfd::{HfdArcRef, HfdFile, HfdRegion};
pub use quadrants::{quadrants, QuadrantStructure};
pub use transform::{connected_sum, permute_curves, reverse_curve, stabilize};
pub(crate) use validate::UnionFind;
pub use validate::{validate, Invariant, ValidationReport, Violation};
pub use validated::ValidatedDiagram;

use std::fmt;

use thiserror::Error;

use crate::exactla::{rat, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("diagram failed validation: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    Alpha,
    Beta,
}

impl CurveKind {
    pub fn letter(self) -> &'static str {
        match self {
            CurveKind::Alpha => "a",
            CurveKind::Beta => "b",
        }
    }
}

/// The segment of a curve from its `arc`-th point to the next one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId {
    pub kind: CurveKind,
    pub curve: usize,
    pub arc: usize,
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}.{}", self.kind.letter(), self.curve, self.arc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedArc {
    pub arc: ArcId,
    pub forward: bool,
}

impl OrientedArc {
    pub fn new(kind: CurveKind, curve: usize, arc: usize, forward: bool) -> Self {
        OrientedArc {
            arc: ArcId { kind, curve, arc },
            forward,
        }
    }
}

/// One end of an arc, seen from the point it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub arc: ArcId,
    pub at_start: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub genus: u32,
    pub boundary: Vec<Vec<OrientedArc>>,
}

impl Region {
    pub fn corners(&self) -> usize {
        self.boundary.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.boundary.len() as i64
    }

    /// Euler measure with every corner acute: `chi - corners / 4`.
    pub fn euler_measure(&self) -> Rational {
        rat(4 * self.euler_characteristic() - self.corners() as i64, 4)
    }
}

/// A pointed Heegaard diagram with dense internal indices.
///
/// Point names are kept sorted, so point index order is the lexicographic
/// order on identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardDiagram {
    genus: usize,
    points: Vec<String>,
    alpha: Vec<Vec<usize>>,
    beta: Vec<Vec<usize>>,
    regions: Vec<Region>,
    basepoint_region: usize,
}

impl HeegaardDiagram {
    /// Assembles a diagram from named curves. Fails only on structural
    /// problems (dangling arc references, bad basepoint); the topological
    /// invariants are checked by [`validate`].
    pub fn new(
        genus: usize,
        alpha: Vec<Vec<String>>,
        beta: Vec<Vec<String>>,
        regions: Vec<Region>,
        basepoint_region: usize,
    ) -> Result<Self, DiagramError> {
        let mut points: Vec<String> = alpha.iter().chain(&beta).flatten().cloned().collect();
        points.sort();
        points.dedup();
        let index = |name: &String| points.binary_search(name).expect("collected above");
        let alpha: Vec<Vec<usize>> = alpha.iter().map(|c| c.iter().map(index).collect()).collect();
        let beta: Vec<Vec<usize>> = beta.iter().map(|c| c.iter().map(index).collect()).collect();
        let d = HeegaardDiagram {
            genus,
            points,
            alpha,
            beta,
            regions,
            basepoint_region,
        };
        d.check_structure()?;
        Ok(d)
    }

    fn check_structure(&self) -> Result<(), DiagramError> {
        if self.basepoint_region >= self.regions.len() {
            return Err(DiagramError::Malformed(format!(
                "basepoint_region {} out of range ({} regions)",
                self.basepoint_region,
                self.regions.len()
            )));
        }
        for (r, region) in self.regions.iter().enumerate() {
            for cycle in &region.boundary {
                for oa in cycle {
                    let curves = self.curves(oa.arc.kind);
                    let Some(c) = curves.get(oa.arc.curve) else {
                        return Err(DiagramError::Malformed(format!(
                            "region {r} references missing curve {}{}",
                            oa.arc.kind.letter(),
                            oa.arc.curve
                        )));
                    };
                    if oa.arc.arc >= c.len() {
                        return Err(DiagramError::Malformed(format!(
                            "region {r} references missing arc {}",
                            oa.arc
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn point_names(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.points[p]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_str().cmp(name)).ok()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn alpha(&self) -> &[Vec<usize>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<usize>] {
        &self.beta
    }

    pub fn curves(&self, kind: CurveKind) -> &[Vec<usize>] {
        match kind {
            CurveKind::Alpha => &self.alpha,
            CurveKind::Beta => &self.beta,
        }
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn num_regions(&self) -> usize {
        self.regions.len()
    }

    pub fn basepoint_region(&self) -> usize {
        self.basepoint_region
    }

    /// Start and end point of an arc.
    pub fn arc_endpoints(&self, arc: ArcId) -> (usize, usize) {
        let c = &self.curves(arc.kind)[arc.curve];
        (c[arc.arc], c[(arc.arc + 1) % c.len()])
    }

    pub fn half_edge_point(&self, h: HalfEdge) -> usize {
        let (s, e) = self.arc_endpoints(h.arc);
        if h.at_start {
            s
        } else {
            e
        }
    }

    /// Every arc of the diagram, alpha arcs first, in curve/arc order.
    pub fn arcs(&self) -> Vec<ArcId> {
        let mut out = Vec::new();
        for kind in [CurveKind::Alpha, CurveKind::Beta] {
            for (ci, c) in self.curves(kind).iter().enumerate() {
                for k in 0..c.len() {
                    out.push(ArcId {
                        kind,
                        curve: ci,
                        arc: k,
                    });
                }
            }
        }
        out
    }

    /// The region vector of the fundamental class: every coefficient 1.
    pub fn fundamental_class(&self) -> Vec<crate::exactla::Int> {
        vec![crate::exactla::int(1); self.regions.len()]
    }

    /// Which alpha curve (and beta curve) each point lies on. Only meaningful
    /// for validated diagrams.
    pub fn point_curves(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); self.points.len()];
        for (i, c) in self.alpha.iter().enumerate() {
            for &p in c {
                out[p].0 = i;
            }
        }
        for (j, c) in self.beta.iter().enumerate() {
            for &p in c {
                out[p].1 = j;
            }
        }
        out
    }
}
