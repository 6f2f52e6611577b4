//! Exact two-phase simplex over the rationals with Bland's pivoting rule.
//!
//! Variables are unrestricted in sign; sign constraints are stated as
//! ordinary constraints. Internally every variable is split into a
//! nonnegative pair.

use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs . x  (<= | >= | =)  rhs`
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    // rows of [a_1 .. a_N | b]
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

struct Unbounded;

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over the current basis using Bland's rule.
    fn run(&mut self, cost: &[Rational], allowed: &[bool]) -> Result<(), Unbounded> {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() {
                        reduced -= &cost[b] * &row[j];
                    }
                }
                reduced.is_positive()
            });
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Unbounded),
            }
        }
    }

    fn value(&self, j: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == j)
            .map_or_else(Rational::zero, |i| self.rows[i][self.width].clone())
    }
}

/// Maximizes `objective . x` subject to `constraints`, exactly.
///
/// Results are reproducible: the pivot rule is Bland's, and the returned
/// point is checked against every constraint before it is handed back.
pub fn lp_optimize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    assert!(
        constraints.iter().all(|c| c.coeffs.len() == n),
        "constraint width mismatch"
    );

    // columns: x+ (n), x- (n), slacks (one per inequality), artificials (m)
    let slack_count = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let art0 = 2 * n + slack_count;
    let width = art0 + m;
    let mut rows = Vec::with_capacity(m);
    let mut slack = 2 * n;
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a.clone();
        }
        match c.relation {
            Relation::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width] = c.rhs.clone();
        if row[width].is_negative() {
            for v in row.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        row[art0 + i] = Rational::one();
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis: (art0..art0 + m).collect(),
        width,
    };

    // phase 1: maximize -(sum of artificials)
    let mut cost1 = vec![Rational::zero(); width];
    for c in cost1.iter_mut().skip(art0) {
        *c = -Rational::one();
    }
    let everything = vec![true; width];
    if tab.run(&cost1, &everything).is_err() {
        unreachable!("phase one objective is bounded above by zero");
    }
    let infeasibility: Rational = (art0..width).map(|j| tab.value(j)).sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= art0 {
            match (0..art0).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(c) => tab.pivot(r, c),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost2 = vec![Rational::zero(); width];
    for (j, c) in objective.iter().enumerate() {
        cost2[j] = c.clone();
        cost2[n + j] = -c.clone();
    }
    let mut allowed = vec![true; width];
    for a in allowed.iter_mut().skip(art0) {
        *a = false;
    }
    if tab.run(&cost2, &allowed).is_err() {
        return LpOutcome::Unbounded;
    }
    let point: Vec<Rational> = (0..n).map(|j| tab.value(j) - tab.value(n + j)).collect();
    let value: Rational = objective.iter().zip(&point).map(|(a, b)| a * b).sum();
    for c in constraints {
        assert!(c.is_satisfied(&point), "simplex returned a point violating {c:?}");
    }
    LpOutcome::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn le(c: &[i64], rhs: i64) -> Constraint {
        Constraint::new(c.iter().map(|&v| rat(v, 1)).collect(), Relation::Le, rat(rhs, 1))
    }

    fn ge(c: &[i64], rhs: i64) -> Constraint {
        Constraint::new(c.iter().map(|&v| rat(v, 1)).collect(), Relation::Ge, rat(rhs, 1))
    }

    #[test]
    fn bounded_interval() {
        let out = lp_optimize(&[rat(1, 1)], &[le(&[1], 1), ge(&[1], 0)]);
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(1, 1),
                point: vec![rat(1, 1)]
            }
        );
    }

    #[test]
    fn half_line_is_unbounded() {
        assert_eq!(lp_optimize(&[rat(1, 1)], &[ge(&[1], 0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn empty_interval_is_infeasible() {
        assert_eq!(
            lp_optimize(&[rat(0, 1)], &[ge(&[1], 1), le(&[1], 0)]),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn fractional_vertex() {
        // max x + y s.t. 2x + y <= 2, x + 3y <= 3, x, y >= 0 -> (3/5, 4/5), value 7/5
        let out = lp_optimize(
            &[rat(1, 1), rat(1, 1)],
            &[le(&[2, 1], 2), le(&[1, 3], 3), ge(&[1, 0], 0), ge(&[0, 1], 0)],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(7, 5),
                point: vec![rat(3, 5), rat(4, 5)]
            }
        );
    }

    #[test]
    fn redundant_equalities() {
        let eq = |c: &[i64], r: i64| Constraint::new(c.iter().map(|&v| rat(v, 1)).collect(), Relation::Eq, rat(r, 1));
        let out = lp_optimize(
            &[rat(-1, 1), rat(0, 1)],
            &[eq(&[1, 1], 2), eq(&[2, 2], 4), ge(&[1, 0], 0), ge(&[0, 1], 0)],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(0, 1),
                point: vec![rat(0, 1), rat(2, 1)]
            }
        );
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule
        let r = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>();
        let obj = r(&[(3, 4), (-150, 1), (1, 50), (-6, 1)]);
        let cons = vec![
            Constraint::new(r(&[(1, 4), (-60, 1), (-1, 25), (9, 1)]), Relation::Le, rat(0, 1)),
            Constraint::new(r(&[(1, 2), (-90, 1), (-1, 50), (3, 1)]), Relation::Le, rat(0, 1)),
            Constraint::new(r(&[(0, 1), (0, 1), (1, 1), (0, 1)]), Relation::Le, rat(1, 1)),
            ge(&[1, 0, 0, 0], 0),
            ge(&[0, 1, 0, 0], 0),
            ge(&[0, 0, 1, 0], 0),
            ge(&[0, 0, 0, 1], 0),
        ];
        match lp_optimize(&obj, &cons) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
