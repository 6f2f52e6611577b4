//! Generators: g-tuples of intersection points with exactly one point on
//! each alpha curve and each beta curve.

use std::fmt;

use rayon::prelude::*;

use crate::diagram::HeegaardDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    /// `by_alpha[i]` is the point on alpha curve `i`.
    by_alpha: Vec<usize>,
    /// Point indices in increasing order; this is the canonical id.
    sorted: Vec<usize>,
}

impl Generator {
    pub fn new(by_alpha: Vec<usize>) -> Self {
        let mut sorted = by_alpha.clone();
        sorted.sort_unstable();
        Generator { by_alpha, sorted }
    }

    pub fn by_alpha(&self) -> &[usize] {
        &self.by_alpha
    }

    pub fn points(&self) -> &[usize] {
        &self.sorted
    }

    pub fn contains(&self, p: usize) -> bool {
        self.sorted.binary_search(&p).is_ok()
    }

    /// The permutation sigma with `x_i` on `beta_{sigma(i)}`.
    pub fn permutation(&self, d: &HeegaardDiagram) -> Vec<usize> {
        let curves = d.point_curves();
        self.by_alpha.iter().map(|&p| curves[p].1).collect()
    }

    /// Canonical id: the sorted point names.
    pub fn id(&self, d: &HeegaardDiagram) -> Vec<String> {
        self.sorted.iter().map(|&p| d.point_name(p).to_string()).collect()
    }

    pub fn label(&self, d: &HeegaardDiagram) -> String {
        format!("{{{}}}", self.id(d).join(","))
    }

    pub fn display<'a>(&'a self, d: &'a HeegaardDiagram) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Generator, &'a HeegaardDiagram);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.label(self.1))
            }
        }
        Show(self, d)
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sorted
            .cmp(&other.sorted)
            .then_with(|| self.by_alpha.cmp(&other.by_alpha))
    }
}

/// Finds a generator of `d` from point names, in any order.
pub fn generator_from_names(d: &HeegaardDiagram, names: &[&str]) -> Option<Generator> {
    let curves = d.point_curves();
    let mut by_alpha = vec![usize::MAX; d.alpha().len()];
    let mut betas = vec![false; d.beta().len()];
    for n in names {
        let p = d.point_index(n)?;
        let (a, b) = curves[p];
        if by_alpha[a] != usize::MAX || betas[b] {
            return None;
        }
        by_alpha[a] = p;
        betas[b] = true;
    }
    if by_alpha.contains(&usize::MAX) {
        return None;
    }
    Some(Generator::new(by_alpha))
}

/// Parses a generator written as `{a,b}` or `a,b`.
pub fn parse_generator(d: &HeegaardDiagram, text: &str) -> Option<Generator> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let names: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    generator_from_names(d, &names)
}

fn extend(
    order: &[usize],
    options: &[Vec<(usize, usize)>],
    depth: usize,
    used_beta: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Generator>,
) {
    if depth == order.len() {
        out.push(Generator::new(chosen.clone()));
        return;
    }
    let a = order[depth];
    for &(p, b) in &options[a] {
        if used_beta[b] {
            continue;
        }
        used_beta[b] = true;
        chosen[a] = p;
        extend(order, options, depth + 1, used_beta, chosen, out);
        used_beta[b] = false;
    }
}

/// All generators, sorted by canonical id.
///
/// Backtracks over alpha curves in ascending order of intersection count;
/// the choices on the first curve are explored in parallel.
pub fn enumerate_generators(d: &HeegaardDiagram) -> Vec<Generator> {
    let g = d.alpha().len();
    if g == 0 {
        return Vec::new();
    }
    let curves = d.point_curves();
    let options: Vec<Vec<(usize, usize)>> = d
        .alpha()
        .iter()
        .map(|c| c.iter().map(|&p| (p, curves[p].1)).collect())
        .collect();
    let mut order: Vec<usize> = (0..g).collect();
    order.sort_by_key(|&a| (options[a].len(), a));
    let first = order[0];
    let mut out: Vec<Generator> = options[first]
        .par_iter()
        .flat_map_iter(|&(p, b)| {
            let mut used = vec![false; d.beta().len()];
            used[b] = true;
            let mut chosen = vec![usize::MAX; g];
            chosen[first] = p;
            let mut found = Vec::new();
            extend(&order, &options, 1, &mut used, &mut chosen, &mut found);
            found
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
