//! Builders for the standard test diagrams.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{connected_sum, trace_boundary_cycles, CrossingSign, HeegaardDiagram, OrientedArc, Region};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unknown corpus diagram {0:?}")]
    Unknown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorpusName {
    /// Standard genus-one diagram of the three-sphere: one point, one square.
    S3G1,
    /// Genus-one diagram of S^1 x S^2: two bigons and an annulus, basepoint in the annulus.
    S1S2G1,
    /// As [`CorpusName::S1S2G1`] with the basepoint moved into a bigon.
    S1S2Bad,
    /// Genus-two diagram with H_1 = Z carrying a nonnegative periodic domain of
    /// Chern pairing 2, so it is neither weakly nor strongly admissible.
    S1S2Wind,
    /// The flat-torus diagram of the lens space L(p, q).
    Lens { p: u32, q: u32 },
    /// `g`-fold connected sum of [`CorpusName::S1S2G1`].
    Gsph { g: u32 },
}

impl fmt::Display for CorpusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusName::S3G1 => f.write_str("s3_g1"),
            CorpusName::S1S2G1 => f.write_str("s1s2_g1"),
            CorpusName::S1S2Bad => f.write_str("s1s2_bad"),
            CorpusName::S1S2Wind => f.write_str("s1s2_wind"),
            CorpusName::Lens { p, q } => write!(f, "lens({p},{q})"),
            CorpusName::Gsph { g } => write!(f, "gsph({g})"),
        }
    }
}

impl FromStr for CorpusName {
    type Err = CorpusError;

    /// Accepts `s3_g1`, `s1s2_g1`, `s1s2_bad`, `s1s2_wind`, `lens(p,q)` and `gsph(g)`.
    fn from_str(s: &str) -> Result<Self, CorpusError> {
        let s = s.trim();
        let args = |prefix: &str| -> Option<Vec<u32>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|t| t.trim().parse().ok()).collect()
        };
        match s {
            "s3_g1" => return Ok(CorpusName::S3G1),
            "s1s2_g1" => return Ok(CorpusName::S1S2G1),
            "s1s2_bad" => return Ok(CorpusName::S1S2Bad),
            "s1s2_wind" => return Ok(CorpusName::S1S2Wind),
            _ => {}
        }
        if let Some(v) = args("lens") {
            if let [p, q] = v[..] {
                return Ok(CorpusName::Lens { p, q });
            }
        }
        if let Some(v) = args("gsph") {
            if let [g] = v[..] {
                return Ok(CorpusName::Gsph { g });
            }
        }
        Err(CorpusError::Unknown(s.to_string()))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Diagram from curve point orders and crossing signs. Cycles listed in a
/// group of `merge` become a single genus-zero region; every other traced
/// cycle bounds a disk. Regions are ordered as the traced cycles, a merged
/// region sitting at its first cycle's position.
fn from_crossings(
    names: &[String],
    alpha: &[Vec<usize>],
    beta: &[Vec<usize>],
    signs: &[CrossingSign],
    merge: impl Fn(&[Vec<OrientedArc>]) -> Vec<Vec<usize>>,
    basepoint: impl Fn(&[Region]) -> usize,
) -> HeegaardDiagram {
    let cycles = trace_boundary_cycles(names.len(), alpha, beta, signs);
    let groups = merge(&cycles);
    let mut regions = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        match groups.iter().find(|g| g.contains(&i)) {
            Some(g) if g[0] == i => regions.push(Region {
                genus: 0,
                boundary: g.iter().map(|&j| cycles[j].clone()).collect(),
            }),
            Some(_) => {}
            None => regions.push(Region {
                genus: 0,
                boundary: vec![c.clone()],
            }),
        }
    }
    let z = basepoint(&regions);
    let named = |c: &Vec<usize>| c.iter().map(|&p| names[p].clone()).collect::<Vec<_>>();
    HeegaardDiagram::new(
        alpha.len(),
        alpha.iter().map(named).collect(),
        beta.iter().map(named).collect(),
        regions,
        z,
    )
    .expect("corpus diagrams are well formed")
}

pub(crate) fn s3_g1_named(point: &str) -> HeegaardDiagram {
    from_crossings(
        &[point.to_string()],
        &[vec![0]],
        &[vec![0]],
        &[CrossingSign::Positive],
        |_| vec![],
        |_| 0,
    )
}

fn s1s2(basepoint_in_bigon: bool) -> HeegaardDiagram {
    // theta = point 0, eta = point 1; beta rises through alpha at theta and
    // falls back at eta, cutting two bigons from theta to eta and an annulus.
    let names = ["theta".to_string(), "eta".to_string()];
    let alpha = vec![vec![0, 1]];
    let beta = vec![vec![0, 1]];
    let signs = [CrossingSign::Positive, CrossingSign::Negative];
    let cycles = trace_boundary_cycles(2, &alpha, &beta, &signs);
    let arcs = |c: &Vec<OrientedArc>| {
        let mut v: Vec<(bool, usize)> = c
            .iter()
            .map(|oa| (oa.arc.kind == crate::diagram::CurveKind::Alpha, oa.arc.arc))
            .collect();
        v.sort();
        v
    };
    // bigons pair alpha arc k with beta arc k; the annulus cycles mix them
    let bigon = |k: usize| {
        cycles
            .iter()
            .find(|c| arcs(c) == vec![(false, k), (true, k)])
            .expect("bigon traced")
            .clone()
    };
    let annulus: Vec<Vec<OrientedArc>> = cycles
        .iter()
        .filter(|c| arcs(c)[0].1 != arcs(c)[1].1)
        .cloned()
        .collect();
    assert_eq!(annulus.len(), 2);
    let regions = vec![
        Region {
            genus: 0,
            boundary: vec![bigon(0)],
        },
        Region {
            genus: 0,
            boundary: vec![bigon(1)],
        },
        Region {
            genus: 0,
            boundary: annulus,
        },
    ];
    let named = |c: &Vec<usize>| c.iter().map(|&p| names[p].clone()).collect::<Vec<_>>();
    HeegaardDiagram::new(
        1,
        alpha.iter().map(named).collect(),
        beta.iter().map(named).collect(),
        regions,
        if basepoint_in_bigon { 0 } else { 2 },
    )
    .expect("corpus diagrams are well formed")
}

fn lens(p: u32, q: u32) -> HeegaardDiagram {
    let n = p as usize;
    let width = (n - 1).to_string().len();
    let names: Vec<String> = (0..n).map(|k| format!("x{k:0width$}")).collect();
    let alpha = vec![(0..n).collect::<Vec<_>>()];
    let beta = vec![(0..n).map(|k| k * q as usize % n).collect::<Vec<_>>()];
    let signs = vec![CrossingSign::Positive; n];
    let q = q as usize;
    let target = {
        let mut t = vec![0, 1 % n, q % n, (q + 1) % n];
        t.sort();
        t
    };
    let alpha_c = alpha.clone();
    let beta_c = beta.clone();
    from_crossings(
        &names,
        &alpha,
        &beta,
        &signs,
        |_| vec![],
        move |regions| {
            regions
                .iter()
                .position(|r| {
                    let mut pts: Vec<usize> = r.boundary[0]
                        .iter()
                        .map(|oa| {
                            let c = match oa.arc.kind {
                                crate::diagram::CurveKind::Alpha => &alpha_c[oa.arc.curve],
                                crate::diagram::CurveKind::Beta => &beta_c[oa.arc.curve],
                            };
                            if oa.forward {
                                c[oa.arc.arc]
                            } else {
                                c[(oa.arc.arc + 1) % c.len()]
                            }
                        })
                        .collect();
                    pts.sort();
                    pts == target
                })
                .expect("square with corners x_0, x_1, x_q, x_q+1")
        },
    )
}

/// Builds a corpus diagram.
pub fn build(name: CorpusName) -> Result<HeegaardDiagram, CorpusError> {
    match name {
        CorpusName::S3G1 => Ok(s3_g1_named("x")),
        CorpusName::S1S2G1 => Ok(s1s2(false)),
        CorpusName::S1S2Bad => Ok(s1s2(true)),
        CorpusName::S1S2Wind => Ok(s1s2_wind()),
        CorpusName::Lens { p, q } => {
            if !(2..=64).contains(&p) || q == 0 || q >= p || gcd(p, q) != 1 {
                return Err(CorpusError::OutOfRange(format!(
                    "lens({p},{q}) needs 2 <= p <= 64, 1 <= q < p, gcd(p, q) = 1"
                )));
            }
            Ok(lens(p, q))
        }
        CorpusName::Gsph { g } => {
            if !(1..=5).contains(&g) {
                return Err(CorpusError::OutOfRange(format!("gsph({g}) needs 1 <= g <= 5")));
            }
            let base = s1s2(false);
            Ok((1..g).fold(base.clone(), |acc, _| connected_sum(&acc, &base)))
        }
    }
}

fn s1s2_wind() -> HeegaardDiagram {
    // alpha_1 meets beta_1 in w0, w1, w2 (algebraically -1) and beta_2 in the
    // cancelling pair w3, w4; alpha_2 meets only beta_1, in the cancelling
    // pair w5, w6. H_1 = Z, and the periodic domain is nonnegative with
    // Chern pairing 2.
    let names: Vec<String> = (0..7).map(|k| format!("w{k}")).collect();
    let alpha = vec![vec![0, 3, 2, 1, 4], vec![5, 6]];
    let beta = vec![vec![0, 5, 1, 2, 6], vec![3, 4]];
    use CrossingSign::*;
    let signs = [Negative, Positive, Negative, Positive, Negative, Negative, Positive];
    from_crossings(
        &names,
        &alpha,
        &beta,
        &signs,
        |_| vec![],
        |regions| {
            regions
                .iter()
                .position(|r| r.corners() == 12)
                .expect("twelve-cornered region")
        },
    )
}
