use std::collections::BTreeSet;

use super::{HeegaardDiagram, OrientedArc, Region};

fn standard_torus(point: &str) -> HeegaardDiagram {
    crate::corpus::s3_g1_named(point)
}

fn fresh_name(taken: &BTreeSet<&str>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken.contains(n.as_str()))
        .expect("unbounded search")
}

/// Connected sum of two pointed diagrams, taken at the basepoints.
///
/// The basepoint regions merge into one region whose genus is the sum and
/// whose boundary cycles are pooled. Curves of `d2` are appended after those
/// of `d1`; point names of `d1` are kept, and names of `d2` are primed until
/// they no longer collide.
pub fn connected_sum(d1: &HeegaardDiagram, d2: &HeegaardDiagram) -> HeegaardDiagram {
    let taken: BTreeSet<&str> = d1.point_names().iter().map(String::as_str).collect();
    let mut suffix = String::new();
    while d2
        .point_names()
        .iter()
        .any(|n| taken.contains(format!("{n}{suffix}").as_str()))
    {
        suffix.push('\'');
    }
    let names1 = |c: &Vec<usize>| c.iter().map(|&p| d1.point_name(p).to_string()).collect::<Vec<_>>();
    let names2 = |c: &Vec<usize>| {
        c.iter()
            .map(|&p| format!("{}{suffix}", d2.point_name(p)))
            .collect::<Vec<_>>()
    };
    let mut alpha: Vec<Vec<String>> = d1.alpha().iter().map(names1).collect();
    alpha.extend(d2.alpha().iter().map(names2));
    let mut beta: Vec<Vec<String>> = d1.beta().iter().map(names1).collect();
    beta.extend(d2.beta().iter().map(names2));

    let shift = d1.genus();
    let moved = |oa: &OrientedArc| {
        let mut oa = *oa;
        oa.arc.curve += shift;
        oa
    };
    let mut regions: Vec<Region> = d1.regions().to_vec();
    let z1 = d1.basepoint_region();
    let z2 = d2.basepoint_region();
    let merged = &mut regions[z1];
    merged.genus += d2.regions()[z2].genus;
    merged.boundary.extend(
        d2.regions()[z2]
            .boundary
            .iter()
            .map(|c| c.iter().map(moved).collect::<Vec<_>>()),
    );
    for (r, reg) in d2.regions().iter().enumerate() {
        if r != z2 {
            regions.push(Region {
                genus: reg.genus,
                boundary: reg.boundary.iter().map(|c| c.iter().map(moved).collect()).collect(),
            });
        }
    }
    HeegaardDiagram::new(d1.genus() + d2.genus(), alpha, beta, regions, z1)
        .expect("connected sum of well-formed diagrams is well formed")
}

/// Stabilization: connected sum at the basepoint with the standard genus-one
/// diagram of the three-sphere. The new intersection point is named `c`
/// (or `c1`, `c2`, ... if taken).
pub fn stabilize(d: &HeegaardDiagram) -> HeegaardDiagram {
    let taken: BTreeSet<&str> = d.point_names().iter().map(String::as_str).collect();
    let name = fresh_name(&taken, "c");
    connected_sum(d, &standard_torus(&name))
}

/// Relabels curves: new alpha curve `i` is old alpha curve `alpha_perm[i]`,
/// likewise for beta.
pub fn permute_curves(d: &HeegaardDiagram, alpha_perm: &[usize], beta_perm: &[usize]) -> HeegaardDiagram {
    let mut alpha_inv = vec![0; alpha_perm.len()];
    for (new, &old) in alpha_perm.iter().enumerate() {
        alpha_inv[old] = new;
    }
    let mut beta_inv = vec![0; beta_perm.len()];
    for (new, &old) in beta_perm.iter().enumerate() {
        beta_inv[old] = new;
    }
    let names = |c: &Vec<usize>| c.iter().map(|&p| d.point_name(p).to_string()).collect::<Vec<_>>();
    let alpha = alpha_perm.iter().map(|&i| names(&d.alpha()[i])).collect();
    let beta = beta_perm.iter().map(|&i| names(&d.beta()[i])).collect();
    let regions = d
        .regions()
        .iter()
        .map(|r| Region {
            genus: r.genus,
            boundary: r
                .boundary
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|oa| {
                            let mut oa = *oa;
                            oa.arc.curve = match oa.arc.kind {
                                super::CurveKind::Alpha => alpha_inv[oa.arc.curve],
                                super::CurveKind::Beta => beta_inv[oa.arc.curve],
                            };
                            oa
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    HeegaardDiagram::new(d.genus(), alpha, beta, regions, d.basepoint_region()).expect("relabeling preserves structure")
}

/// Reverses the orientation of one curve. The point order becomes
/// `p0, p_{n-1}, .., p1`, so old arc `k` is new arc `n - 1 - k` run backwards.
pub fn reverse_curve(d: &HeegaardDiagram, kind: super::CurveKind, index: usize) -> HeegaardDiagram {
    let names = |c: &Vec<usize>| c.iter().map(|&p| d.point_name(p).to_string()).collect::<Vec<_>>();
    let mut alpha: Vec<Vec<String>> = d.alpha().iter().map(names).collect();
    let mut beta: Vec<Vec<String>> = d.beta().iter().map(names).collect();
    let target = match kind {
        super::CurveKind::Alpha => &mut alpha[index],
        super::CurveKind::Beta => &mut beta[index],
    };
    let n = target.len();
    if n > 1 {
        target[1..].reverse();
    }
    let regions = d
        .regions()
        .iter()
        .map(|r| Region {
            genus: r.genus,
            boundary: r
                .boundary
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|oa| {
                            let mut oa = *oa;
                            if oa.arc.kind == kind && oa.arc.curve == index {
                                oa.arc.arc = n - 1 - oa.arc.arc;
                                oa.forward = !oa.forward;
                            }
                            oa
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    HeegaardDiagram::new(d.genus(), alpha, beta, regions, d.basepoint_region()).expect("reversal preserves structure")
}
