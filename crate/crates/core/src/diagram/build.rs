use super::{ArcId, CurveKind, HalfEdge, OrientedArc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingSign {
    Positive,
    Negative,
}

fn half_edges(curves: &[Vec<usize>], kind: CurveKind, num_points: usize) -> Vec<Option<(HalfEdge, HalfEdge)>> {
    let mut out = vec![None; num_points];
    for (ci, c) in curves.iter().enumerate() {
        let n = c.len();
        for (k, &p) in c.iter().enumerate() {
            out[p] = Some((
                HalfEdge {
                    arc: ArcId {
                        kind,
                        curve: ci,
                        arc: k,
                    },
                    at_start: true,
                },
                HalfEdge {
                    arc: ArcId {
                        kind,
                        curve: ci,
                        arc: (k + n - 1) % n,
                    },
                    at_start: false,
                },
            ));
        }
    }
    out
}

/// Traces the boundary cycles of the complement of the curves, given the
/// order of points along each curve and the local intersection sign at each
/// point.
///
/// The counterclockwise rotation at a positive point is alpha-out, beta-out,
/// alpha-in, beta-in; at a negative point beta-in and beta-out swap. Each
/// returned cycle keeps its face on the left. Cycles that bound the same
/// non-disk region still have to be grouped by the caller.
pub fn trace_boundary_cycles(
    num_points: usize,
    alpha: &[Vec<usize>],
    beta: &[Vec<usize>],
    signs: &[CrossingSign],
) -> Vec<Vec<OrientedArc>> {
    let a = half_edges(alpha, CurveKind::Alpha, num_points);
    let b = half_edges(beta, CurveKind::Beta, num_points);
    let rotation: Vec<[HalfEdge; 4]> = (0..num_points)
        .map(|p| {
            let (ao, ai) = a[p].expect("point on an alpha curve");
            let (bo, bi) = b[p].expect("point on a beta curve");
            match signs[p] {
                CrossingSign::Positive => [ao, bo, ai, bi],
                CrossingSign::Negative => [ao, bi, ai, bo],
            }
        })
        .collect();
    let point_of = |h: HalfEdge| {
        let c = match h.arc.kind {
            CurveKind::Alpha => &alpha[h.arc.curve],
            CurveKind::Beta => &beta[h.arc.curve],
        };
        if h.at_start {
            c[h.arc.arc]
        } else {
            c[(h.arc.arc + 1) % c.len()]
        }
    };

    let mut used = std::collections::BTreeSet::new();
    let mut cycles = Vec::new();
    for p in 0..num_points {
        for slot in 0..4 {
            let start = rotation[p][slot];
            if used.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                used.insert(h);
                cycle.push(OrientedArc {
                    arc: h.arc,
                    forward: h.at_start,
                });
                let arriving = HalfEdge {
                    arc: h.arc,
                    at_start: !h.at_start,
                };
                let q = point_of(arriving);
                let idx = rotation[q]
                    .iter()
                    .position(|&e| e == arriving)
                    .expect("half-edge at its point");
                h = rotation[q][(idx + 3) % 4];
                if h == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
    }
    cycles
}
