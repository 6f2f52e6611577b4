#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use hfcore::corpus::{build, CorpusName};
use hfcore::diagram::{ArcId, CurveKind, HeegaardDiagram, ValidatedDiagram};
use hfcore::exactla::{int, Int};
use hfcore::generators::Generator;
use num_rational::Ratio;

pub fn vd(name: CorpusName) -> ValidatedDiagram {
    ValidatedDiagram::new(build(name).unwrap()).unwrap()
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lens_names() -> Vec<CorpusName> {
    let mut out = Vec::new();
    for p in 2..=7 {
        for q in 1..p {
            if gcd(p, q) == 1 {
                out.push(CorpusName::Lens { p, q });
            }
        }
    }
    out
}

/// Every corpus diagram used by the suites.
pub fn corpus() -> Vec<CorpusName> {
    let mut out = vec![
        CorpusName::S3G1,
        CorpusName::S1S2G1,
        CorpusName::S1S2Bad,
        CorpusName::S1S2Wind,
    ];
    out.extend(lens_names());
    out.extend((1..=3).map(|g| CorpusName::Gsph { g }));
    out
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn rectangle_diagram() -> ValidatedDiagram {
    let text = std::fs::read_to_string(fixture("rectangle_g2.hfd")).unwrap();
    ValidatedDiagram::new(HeegaardDiagram::from_json(&text).unwrap()).unwrap()
}

pub fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn small(xs: &[Int]) -> Vec<i64> {
    xs.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

/// Brute-force model of a diagram that reads only the raw region data:
/// arc multiplicities for the boundary, corner incidences for the
/// point measures.
/// An alpha arc: start, end, and the signed regions along it.
type AlphaArc = (usize, usize, Vec<(usize, i64)>);

pub struct Oracle {
    pub regions: usize,
    pub basepoint: usize,
    pub genus: i64,
    points: usize,
    /// Signed region contributions to every alpha arc.
    alpha_arcs: Vec<AlphaArc>,
    /// Corner incidences per region and point.
    corners: Vec<Vec<i64>>,
    /// 4 * e of each region.
    euler4: Vec<i64>,
}

impl Oracle {
    pub fn new(d: &HeegaardDiagram) -> Self {
        let mut arcs: HashMap<ArcId, Vec<(usize, i64)>> = HashMap::new();
        let mut corners = vec![vec![0i64; d.num_points()]; d.num_regions()];
        let mut euler4 = Vec::new();
        for (r, region) in d.regions().iter().enumerate() {
            for oa in region.boundary.iter().flatten() {
                arcs.entry(oa.arc)
                    .or_default()
                    .push((r, if oa.forward { 1 } else { -1 }));
                let (s, e) = d.arc_endpoints(oa.arc);
                corners[r][if oa.forward { e } else { s }] += 1;
            }
            let chi = 2 - 2 * i64::from(region.genus) - region.boundary.len() as i64;
            let n: usize = region.boundary.iter().map(Vec::len).sum();
            euler4.push(4 * chi - n as i64);
        }
        let alpha_arcs = arcs
            .into_iter()
            .filter(|(a, _)| a.kind == CurveKind::Alpha)
            .map(|(a, v)| {
                let (s, e) = d.arc_endpoints(a);
                (s, e, v)
            })
            .collect();
        Oracle {
            regions: d.num_regions(),
            basepoint: d.basepoint_region(),
            genus: d.genus() as i64,
            points: d.num_points(),
            alpha_arcs,
            corners,
            euler4,
        }
    }

    /// Endpoint chain of the alpha part of the boundary.
    pub fn alpha_chain(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut chain = vec![0i64; self.points];
        for (s, e, sides) in &self.alpha_arcs {
            let m: i64 = sides.iter().map(|&(r, sign)| sign * coeffs[r]).sum();
            chain[*e] += m;
            chain[*s] -= m;
        }
        chain
    }

    pub fn is_domain(&self, coeffs: &[i64], x: &Generator, y: &Generator) -> bool {
        self.alpha_chain(coeffs)
            .iter()
            .enumerate()
            .all(|(p, &c)| c == y.contains(p) as i64 - x.contains(p) as i64)
    }

    pub fn euler(&self, coeffs: &[i64]) -> Ratio<i64> {
        Ratio::new(coeffs.iter().zip(&self.euler4).map(|(c, e)| c * e).sum(), 4)
    }

    pub fn point(&self, coeffs: &[i64], p: usize) -> Ratio<i64> {
        Ratio::new(coeffs.iter().zip(&self.corners).map(|(c, k)| c * k[p]).sum(), 4)
    }

    pub fn index(&self, coeffs: &[i64], x: &Generator, y: &Generator) -> Ratio<i64> {
        let mut total = self.euler(coeffs);
        for &p in x.points().iter().chain(y.points()) {
            total += self.point(coeffs, p);
        }
        total
    }

    /// Every vector of `{lo..=hi}^F`.
    pub fn cube(&self, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        let f = self.regions;
        let mut out = Vec::new();
        let mut cur = vec![lo; f];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            while i < f && cur[i] == hi {
                cur[i] = lo;
                i += 1;
            }
            if i == f {
                return out;
            }
            cur[i] += 1;
        }
    }
}

/// `A * A` over F2, entry by entry.
pub fn square_is_zero(m: &hfcore::exactla::BitMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..m.cols()).all(|j| (0..m.cols()).filter(|&k| m.get(i, k) && m.get(k, j)).count() % 2 == 0))
}
