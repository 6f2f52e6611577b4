use super::{CurveKind, DiagramError, HalfEdge, HeegaardDiagram, OrientedArc};

/// A corner of a region: the sector at `point` swept counterclockwise from
/// the half-edge the boundary leaves along to the half-edge it arrived on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Corner {
    pub point: usize,
    pub leaving: HalfEdge,
    pub arriving: HalfEdge,
    pub region: usize,
}

pub(crate) fn arriving_half_edge(oa: OrientedArc) -> HalfEdge {
    HalfEdge {
        arc: oa.arc,
        at_start: !oa.forward,
    }
}

pub(crate) fn leaving_half_edge(oa: OrientedArc) -> HalfEdge {
    HalfEdge {
        arc: oa.arc,
        at_start: oa.forward,
    }
}

/// Problems found while reading corners out of the boundary cycles.
#[derive(Debug, Default)]
pub(crate) struct CornerScan {
    pub corners: Vec<Corner>,
    pub broken_cycles: Vec<(usize, usize, String)>,
}

pub(crate) fn scan_corners(d: &HeegaardDiagram) -> CornerScan {
    let mut scan = CornerScan::default();
    for (r, region) in d.regions().iter().enumerate() {
        for (ci, cycle) in region.boundary.iter().enumerate() {
            if cycle.is_empty() {
                scan.broken_cycles.push((r, ci, "empty boundary cycle".into()));
                continue;
            }
            for i in 0..cycle.len() {
                let prev = cycle[(i + cycle.len() - 1) % cycle.len()];
                let next = cycle[i];
                let arriving = arriving_half_edge(prev);
                let leaving = leaving_half_edge(next);
                let p = d.half_edge_point(arriving);
                let q = d.half_edge_point(leaving);
                if p != q {
                    scan.broken_cycles.push((
                        r,
                        ci,
                        format!(
                            "arc {} ends at {} but {} starts at {}",
                            prev.arc,
                            d.point_name(p),
                            next.arc,
                            d.point_name(q)
                        ),
                    ));
                    continue;
                }
                if prev.arc.kind == next.arc.kind {
                    scan.broken_cycles.push((
                        r,
                        ci,
                        format!(
                            "arcs {} and {} meet at {} without alternating curves",
                            prev.arc,
                            next.arc,
                            d.point_name(p)
                        ),
                    ));
                    continue;
                }
                scan.corners.push(Corner {
                    point: p,
                    leaving,
                    arriving,
                    region: r,
                });
            }
        }
    }
    scan
}

/// The four half-edges at `p`: alpha out, alpha in, beta out, beta in.
/// `None` unless `p` lies on exactly one alpha and one beta curve.
pub(crate) fn half_edges_at(d: &HeegaardDiagram, p: usize) -> Option<[HalfEdge; 4]> {
    let find = |kind: CurveKind| -> Option<(HalfEdge, HalfEdge)> {
        let mut hit = None;
        for (ci, c) in d.curves(kind).iter().enumerate() {
            for (k, &q) in c.iter().enumerate() {
                if q == p {
                    if hit.is_some() {
                        return None;
                    }
                    let n = c.len();
                    let out = HalfEdge {
                        arc: super::ArcId {
                            kind,
                            curve: ci,
                            arc: k,
                        },
                        at_start: true,
                    };
                    let inn = HalfEdge {
                        arc: super::ArcId {
                            kind,
                            curve: ci,
                            arc: (k + n - 1) % n,
                        },
                        at_start: false,
                    };
                    hit = Some((out, inn));
                }
            }
        }
        hit
    };
    let (ao, ai) = find(CurveKind::Alpha)?;
    let (bo, bi) = find(CurveKind::Beta)?;
    Some([ao, ai, bo, bi])
}

/// Checks that the corners at `p` close up into one 4-cycle and returns the
/// counterclockwise rotation starting at the outgoing alpha half-edge, with
/// the region filling each sector.
pub(crate) fn close_quadrants(
    d: &HeegaardDiagram,
    p: usize,
    corners: &[Corner],
) -> Result<([HalfEdge; 4], [usize; 4]), String> {
    let Some(edges) = half_edges_at(d, p) else {
        return Err("point is not on exactly one alpha and one beta curve".into());
    };
    let at_p: Vec<&Corner> = corners.iter().filter(|c| c.point == p).collect();
    if at_p.len() != 4 {
        return Err(format!("{} corner incidences instead of 4", at_p.len()));
    }
    let mut rotation = [edges[0]; 4];
    let mut regions = [0; 4];
    let mut current = edges[0];
    for slot in 0..4 {
        let sector: Vec<&&Corner> = at_p.iter().filter(|c| c.leaving == current).collect();
        if sector.len() != 1 {
            return Err(format!(
                "{} sectors start at half-edge {}{}",
                sector.len(),
                current.arc,
                if current.at_start { "+" } else { "-" }
            ));
        }
        rotation[slot] = current;
        regions[slot] = sector[0].region;
        current = sector[0].arriving;
    }
    if current != edges[0] {
        return Err("quadrants do not close into a single 4-cycle".into());
    }
    let mut seen = rotation.to_vec();
    seen.sort();
    seen.dedup();
    let mut expected = edges.to_vec();
    expected.sort();
    if seen != expected {
        return Err("quadrants do not use each half-edge exactly once".into());
    }
    Ok((rotation, regions))
}

/// Derived local structure at every intersection point.
///
/// Slot `j` at point `p` is the `j`-th sector counterclockwise, starting at
/// the outgoing alpha half-edge. Slots alternate alpha/beta boundaries, so
/// slots 0 and 2 are opposite, as are 1 and 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrantStructure {
    rotations: Vec<[HalfEdge; 4]>,
    regions: Vec<[usize; 4]>,
}

impl QuadrantStructure {
    /// Region occupying each of the four slots around `p`.
    pub fn slots(&self, p: usize) -> [usize; 4] {
        self.regions[p]
    }

    pub fn rotation(&self, p: usize) -> [HalfEdge; 4] {
        self.rotations[p]
    }

    /// Local intersection sign: +1 when the outgoing beta half-edge follows
    /// the outgoing alpha half-edge counterclockwise.
    pub fn sign(&self, p: usize) -> i8 {
        let r = self.rotations[p];
        if r[1].arc.kind == CurveKind::Beta && r[1].at_start {
            1
        } else {
            -1
        }
    }

    pub fn num_points(&self) -> usize {
        self.regions.len()
    }

    /// Sum of the region coefficients over the four slots at `p`.
    pub fn quadrant_sum<T>(&self, p: usize, coeff: impl Fn(usize) -> T) -> T
    where
        T: std::iter::Sum<T>,
    {
        self.regions[p].iter().map(|&r| coeff(r)).sum()
    }
}

/// Derives the quadrant structure of a valid diagram.
pub fn quadrants(d: &HeegaardDiagram) -> Result<QuadrantStructure, DiagramError> {
    let scan = scan_corners(d);
    if let Some((r, c, msg)) = scan.broken_cycles.first() {
        return Err(DiagramError::Invalid(format!("region {r} cycle {c}: {msg}")));
    }
    let mut rotations = Vec::with_capacity(d.num_points());
    let mut regions = Vec::with_capacity(d.num_points());
    for p in 0..d.num_points() {
        let (rot, reg) = close_quadrants(d, p, &scan.corners)
            .map_err(|e| DiagramError::Invalid(format!("point {}: {e}", d.point_name(p))))?;
        rotations.push(rot);
        regions.push(reg);
    }
    Ok(QuadrantStructure { rotations, regions })
}
