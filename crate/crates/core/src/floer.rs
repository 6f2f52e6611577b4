//! The hat chain complex over F2 for diagrams whose index-1 domains are
//! all bigons or rectangles, and its homology.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ArcId, UnionFind, ValidatedDiagram};
use crate::domains::{Domain, DomainError, DomainSolver};
use crate::exactla::BitMatrix;
use crate::generators::Generator;
use crate::measures::maslov_index;
use crate::spinc::{spinc_classes, SpincClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RigidTag {
    Bigon,
    Rectangle,
    Other,
}

/// Classification of a nonnegative domain with index 1 and `n_z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidShape {
    pub tag: RigidTag,
    /// Regions with coefficient 1.
    pub support: Vec<usize>,
    /// Acute corners of the support, by point.
    pub corners: Vec<usize>,
    /// Euler characteristic of the support glued along shared arcs.
    pub euler_characteristic: Option<i64>,
    pub boundary_cycles: Option<usize>,
    /// Why the domain is not a bigon or rectangle.
    pub reason: Option<String>,
}

impl RigidShape {
    fn other(support: Vec<usize>, reason: impl Into<String>) -> Self {
        RigidShape {
            tag: RigidTag::Other,
            support,
            corners: Vec::new(),
            euler_characteristic: None,
            boundary_cycles: None,
            reason: Some(reason.into()),
        }
    }
}

/// Sides of every arc: the (one or two) regions whose boundary runs along it.
fn arc_sides(d: &ValidatedDiagram) -> HashMap<ArcId, Vec<usize>> {
    let mut sides: HashMap<ArcId, Vec<usize>> = HashMap::new();
    for (r, region) in d.regions().iter().enumerate() {
        for oa in region.boundary.iter().flatten() {
            sides.entry(oa.arc).or_default().push(r);
        }
    }
    sides
}

pub fn classify_rigid(d: &ValidatedDiagram, domain: &Domain) -> RigidShape {
    let coeffs = domain.coefficients();
    let support: Vec<usize> = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
    if let Some(i) = coeffs.iter().position(|c| !c.is_zero() && !c.is_one()) {
        return RigidShape::other(support, format!("coefficient {} in region {i}", coeffs[i]));
    }
    if support.is_empty() {
        return RigidShape::other(support, "empty domain");
    }
    match maslov_index(d, domain) {
        Ok(i) if i.is_one() => {}
        Ok(i) => return RigidShape::other(support, format!("Maslov index {i}")),
        Err(e) => return RigidShape::other(support, e.to_string()),
    }
    let in_support = |r: usize| coeffs[r].is_one();

    // glue the support regions along shared arcs
    let sides = arc_sides(d);
    let mut arcs: Vec<(&ArcId, &Vec<usize>)> = sides.iter().collect();
    arcs.sort();
    let mut components = UnionFind::new(d.num_regions());
    let mut boundary_arcs: Vec<ArcId> = Vec::new();
    let mut edges = 0i64;
    for (arc, rs) in &arcs {
        let inside = rs.iter().filter(|&&r| in_support(r)).count();
        if inside > 0 {
            edges += 1;
        }
        if inside == 2 {
            components.union(rs[0], rs[1]);
        } else if inside == 1 {
            boundary_arcs.push(**arc);
        }
    }
    let arc_index: HashMap<ArcId, usize> = boundary_arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut boundary = UnionFind::new(boundary_arcs.len());

    let q = d.quadrants();
    let mut vertices = 0i64;
    let mut corners = Vec::new();
    let mut obtuse = Vec::new();
    for p in 0..d.num_points() {
        let slots = q.slots(p);
        let rot = q.rotation(p);
        let on: Vec<bool> = slots.iter().map(|&r| in_support(r)).collect();
        let count = on.iter().filter(|&&b| b).count();
        if count == 0 {
            continue;
        }
        if count == 4 {
            vertices += 1;
            continue;
        }
        // runs of consecutive support slots; slot j spans rot[j] .. rot[j+1]
        for start in 0..4 {
            if !on[start] || on[(start + 3) % 4] {
                continue;
            }
            let mut len = 0;
            while on[(start + len) % 4] {
                len += 1;
            }
            vertices += 1;
            match len {
                1 => corners.push(p),
                3 => obtuse.push(p),
                _ => {}
            }
            let a = arc_index[&rot[start].arc];
            let b = arc_index[&rot[(start + len) % 4].arc];
            boundary.union(a, b);
        }
    }
    let chi: i64 = support
        .iter()
        .map(|&r| d.regions()[r].euler_characteristic())
        .sum::<i64>()
        - edges
        + vertices;
    let cycles = boundary.components();
    let roots: std::collections::BTreeSet<usize> = support.iter().map(|&r| components.find(r)).collect();

    let mut shape = RigidShape {
        tag: RigidTag::Other,
        support,
        corners: corners.clone(),
        euler_characteristic: Some(chi),
        boundary_cycles: Some(cycles),
        reason: None,
    };
    if roots.len() != 1 {
        shape.reason = Some(format!("support has {} components", roots.len()));
        return shape;
    }
    if chi != 1 || cycles != 1 {
        shape.reason = Some(format!(
            "support is not a disk (euler characteristic {chi}, {cycles} boundary cycles)"
        ));
        return shape;
    }
    if !obtuse.is_empty() {
        shape.reason = Some(format!("obtuse corner at {}", d.point_name(obtuse[0])));
        return shape;
    }
    let (x, y) = (domain.from(), domain.to());
    let leaving = corners.iter().filter(|&&p| x.contains(p) && !y.contains(p)).count();
    let arriving = corners.iter().filter(|&&p| y.contains(p) && !x.contains(p)).count();
    shape.tag = match (corners.len(), leaving, arriving) {
        (2, 1, 1) => RigidTag::Bigon,
        (4, 2, 2) => RigidTag::Rectangle,
        _ => {
            shape.reason = Some(format!(
                "{} corners ({leaving} at the source, {arriving} at the target)",
                corners.len()
            ));
            RigidTag::Other
        }
    };
    shape
}

/// A domain counted in the differential, or one that blocked the count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountedDomain {
    pub domain: Domain,
    pub shape: RigidShape,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloerError {
    #[error("{} index-1 domain(s) are neither bigons nor rectangles", offenders.len())]
    NotCombinatorial { offenders: Vec<CountedDomain> },
    #[error(transparent)]
    Unbounded(#[from] DomainError),
    #[error("the differential of Spin^c class {class} does not square to zero")]
    DSquaredNonzero { class: usize },
}

/// Chain complex of one Spin^c class. `boundary` has a row per target and
/// a column per source, both in `class.members` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub class: SpincClass,
    pub boundary: BitMatrix,
    pub audit: Vec<CountedDomain>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FloerOptions {
    /// Treat rectangles as uncountable.
    pub strict_rectangles: bool,
}

fn counts(tag: RigidTag, options: FloerOptions) -> bool {
    match tag {
        RigidTag::Bigon => true,
        RigidTag::Rectangle => !options.strict_rectangles,
        RigidTag::Other => false,
    }
}

pub fn complex_for(
    solver: &DomainSolver<'_>,
    class: &SpincClass,
    id: usize,
    options: FloerOptions,
) -> Result<GradedComplex, FloerError> {
    let d = solver.diagram();
    let n = class.members.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let found: Vec<Result<Vec<CountedDomain>, DomainError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let doms = solver.positive_domains(&class.members[i], &class.members[j], 1, 0)?;
            Ok(doms
                .into_iter()
                .map(|domain| {
                    let shape = classify_rigid(d, &domain);
                    CountedDomain { domain, shape }
                })
                .collect())
        })
        .collect();
    let mut boundary = BitMatrix::zeros(n, n);
    let mut audit = Vec::new();
    let mut offenders = Vec::new();
    for (&(i, j), res) in pairs.iter().zip(found) {
        for cd in res? {
            if counts(cd.shape.tag, options) {
                boundary.flip(j, i);
                audit.push(cd);
            } else {
                offenders.push(cd);
            }
        }
    }
    if !offenders.is_empty() {
        return Err(FloerError::NotCombinatorial { offenders });
    }
    if !boundary.mul(&boundary).is_zero() {
        return Err(FloerError::DSquaredNonzero { class: id });
    }
    for i in 0..n {
        for j in 0..n {
            if boundary.get(j, i) {
                let gi = class.gradings[&class.members[i]];
                let gj = class.gradings[&class.members[j]];
                assert_eq!(
                    class.reduce(gi - gj - 1),
                    0,
                    "differential does not drop the grading by one"
                );
            }
        }
    }
    Ok(GradedComplex {
        class: class.clone(),
        boundary,
        audit,
    })
}

/// One complex per Spin^c class, in canonical class order. Offending
/// domains from every class are gathered before failing.
pub fn complexes(d: &ValidatedDiagram, options: FloerOptions) -> Result<Vec<GradedComplex>, FloerError> {
    let solver = DomainSolver::new(d);
    if let Some(witness) = solver.nonnegative_periodic() {
        return Err(FloerError::Unbounded(DomainError::Unbounded { witness }));
    }
    let classes = spinc_classes(&solver);
    let mut out = Vec::new();
    let mut offenders = Vec::new();
    for (id, class) in classes.iter().enumerate() {
        match complex_for(&solver, class, id, options) {
            Ok(c) => out.push(c),
            Err(FloerError::NotCombinatorial { offenders: o }) => offenders.extend(o),
            Err(e) => return Err(e),
        }
    }
    if !offenders.is_empty() {
        return Err(FloerError::NotCombinatorial { offenders });
    }
    Ok(out)
}

pub fn differential(
    d: &ValidatedDiagram,
    class: &SpincClass,
    options: FloerOptions,
) -> Result<GradedComplex, FloerError> {
    let solver = DomainSolver::new(d);
    let id = spinc_classes(&solver)
        .iter()
        .position(|c| c.members == class.members)
        .unwrap_or(0);
    complex_for(&solver, class, id, options)
}

/// Homology ranks of one class, keyed by grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassHomology {
    pub id: usize,
    pub divisor: u64,
    pub ranks: BTreeMap<i64, usize>,
}

impl ClassHomology {
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub classes: Vec<ClassHomology>,
}

impl HomologyReport {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.total()).sum()
    }

    /// Ranks summed over classes, keyed by grading.
    pub fn graded_totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            for (&g, &r) in &c.ranks {
                *out.entry(g).or_insert(0) += r;
            }
        }
        out
    }
}

pub fn class_homology(complex: &GradedComplex, id: usize) -> ClassHomology {
    let class = &complex.class;
    let mut by_grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, x) in class.members.iter().enumerate() {
        by_grading.entry(class.gradings[x]).or_default().push(i);
    }
    let empty = Vec::new();
    let mut ranks = BTreeMap::new();
    for (&k, gens) in &by_grading {
        let below = by_grading.get(&class.reduce(k - 1)).unwrap_or(&empty);
        let above = by_grading.get(&class.reduce(k + 1)).unwrap_or(&empty);
        let out_rank = complex.boundary.select(below, gens).rank();
        let in_rank = complex.boundary.select(gens, above).rank();
        let r = gens.len() - out_rank - in_rank;
        if r > 0 {
            ranks.insert(k, r);
        }
    }
    ClassHomology {
        id,
        divisor: class.divisor,
        ranks,
    }
}

pub fn homology_with(d: &ValidatedDiagram, options: FloerOptions) -> Result<HomologyReport, FloerError> {
    let complexes = complexes(d, options)?;
    Ok(HomologyReport {
        classes: complexes
            .iter()
            .enumerate()
            .map(|(i, c)| class_homology(c, i))
            .collect(),
    })
}

pub fn homology(d: &ValidatedDiagram) -> Result<HomologyReport, FloerError> {
    homology_with(d, FloerOptions::default())
}

/// Labels for the generators of a complex, in matrix order.
pub fn member_labels(d: &ValidatedDiagram, c: &GradedComplex) -> Vec<String> {
    c.class.members.iter().map(|x: &Generator| x.label(d)).collect()
}
