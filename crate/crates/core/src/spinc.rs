//! Partition of the generators into Spin^c classes and relative gradings.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::ValidatedDiagram;
use crate::domains::DomainSolver;
use crate::exactla::Int;
use crate::generators::{enumerate_generators, Generator};
use crate::measures::{chern_pairing, maslov_index};

/// One Spin^c class: its generators in canonical order, the grading divisor
/// (0 for a Z-grading) and relative gradings with minimum 0, reduced mod
/// the divisor when it is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpincClass {
    pub members: Vec<Generator>,
    pub divisor: u64,
    pub gradings: BTreeMap<Generator, i64>,
}

impl SpincClass {
    pub fn base(&self) -> &Generator {
        &self.members[0]
    }

    pub fn grading(&self, x: &Generator) -> Option<i64> {
        self.gradings.get(x).copied()
    }

    /// Reduces a grading difference in this class's grading group.
    pub fn reduce(&self, g: i64) -> i64 {
        if self.divisor == 0 {
            g
        } else {
            g.mod_floor(&(self.divisor as i64))
        }
    }
}

/// Serializable view of a class, with generator labels.
#[derive(Clone, Debug, Serialize)]
pub struct SpincClassReport {
    pub id: usize,
    pub divisor: u64,
    pub members: Vec<String>,
    pub gradings: BTreeMap<String, i64>,
}

impl SpincClassReport {
    pub fn new(d: &ValidatedDiagram, id: usize, class: &SpincClass) -> Self {
        SpincClassReport {
            id,
            divisor: class.divisor,
            members: class.members.iter().map(|x| x.label(d)).collect(),
            gradings: class.gradings.iter().map(|(x, g)| (x.label(d), *g)).collect(),
        }
    }
}

/// Groups generators by their Spin^c class, verifying the grouping with the
/// domain solver: every member connects to its class's base, and bases of
/// distinct classes do not connect.
pub fn partition_generators(solver: &DomainSolver<'_>, generators: &[Generator]) -> Vec<Vec<Generator>> {
    let keys: Vec<Vec<Int>> = generators.par_iter().map(|x| solver.spinc_key(x)).collect();
    let mut groups: Vec<Vec<Generator>> = Vec::new();
    let mut index: HashMap<Vec<Int>, usize> = HashMap::new();
    let mut sorted: Vec<(Generator, Vec<Int>)> = generators.iter().cloned().zip(keys).collect();
    sorted.sort();
    for (x, key) in sorted {
        let slot = *index.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(x);
    }
    groups.par_iter().for_each(|g| {
        for x in &g[1..] {
            assert!(
                solver.connecting_domain(&g[0], x).is_some(),
                "Spin^c class is not connected"
            );
        }
    });
    let bases: Vec<&Generator> = groups.iter().map(|g| &g[0]).collect();
    (0..bases.len()).into_par_iter().for_each(|i| {
        for j in i + 1..bases.len() {
            assert!(
                solver.connecting_domain(bases[i], bases[j]).is_none(),
                "distinct Spin^c classes are connected"
            );
        }
    });
    groups
}

/// gcd of `|<c_1(s), B_j>|` over the periodic lattice basis, for the class
/// whose generators are `members`.
pub fn divisor_for(solver: &DomainSolver<'_>, members: &[Generator]) -> u64 {
    let d = solver.diagram();
    let pairings = solver.pairings(&members[0]);
    for x in &members[1..] {
        for (b, c) in solver.periodic_lattice().basis.iter().zip(&pairings) {
            let other = chern_pairing(d, x, b).expect("periodic vectors have integral pairing");
            assert_eq!(&other, c, "Chern pairing depends on the generator within a class");
        }
    }
    let g = pairings.iter().fold(Int::zero(), |acc, c| acc.gcd(&c.abs()));
    g.to_u64().expect("grading divisor fits in u64")
}

/// Gradings relative to the class base: `gr(x) - gr(base)` is the index of a
/// domain from `x` to the base with `n_z = 0`.
pub fn gradings_for(solver: &DomainSolver<'_>, members: &[Generator], divisor: u64) -> BTreeMap<Generator, i64> {
    let d = solver.diagram();
    let base = &members[0];
    let raw: Vec<i64> = members
        .par_iter()
        .map(|x| {
            let dom = solver
                .connecting_domain(x, base)
                .expect("members of a class are connected");
            maslov_index(d, &dom)
                .expect("connecting domains have integral index")
                .to_i64()
                .expect("grading fits in i64")
        })
        .collect();
    let reduce = |g: i64| {
        if divisor == 0 {
            g
        } else {
            g.mod_floor(&(divisor as i64))
        }
    };
    let reduced: Vec<i64> = raw.into_iter().map(reduce).collect();
    let min = reduced.iter().copied().min().unwrap_or(0);
    members
        .iter()
        .cloned()
        .zip(reduced.into_iter().map(|g| reduce(g - min)))
        .collect()
}

pub fn spinc_classes(solver: &DomainSolver<'_>) -> Vec<SpincClass> {
    let gens = enumerate_generators(solver.diagram());
    partition_generators(solver, &gens)
        .into_iter()
        .map(|members| {
            let divisor = divisor_for(solver, &members);
            let gradings = gradings_for(solver, &members, divisor);
            SpincClass {
                members,
                divisor,
                gradings,
            }
        })
        .collect()
}

/// Spin^c classes in canonical order (by least member).
pub fn spinc_partition(d: &ValidatedDiagram) -> Vec<SpincClass> {
    spinc_classes(&DomainSolver::new(d))
}

pub fn grading_divisor(d: &ValidatedDiagram, class: &SpincClass) -> u64 {
    divisor_for(&DomainSolver::new(d), &class.members)
}

pub fn relative_gradings(d: &ValidatedDiagram, class: &SpincClass) -> BTreeMap<Generator, i64> {
    let solver = DomainSolver::new(d);
    let divisor = divisor_for(&solver, &class.members);
    gradings_for(&solver, &class.members, divisor)
}
