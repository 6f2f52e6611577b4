use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, IntMatrix};

/// Smith normal form `p * a * q = diag(d_1, .., d_r, 0, ..)` with
/// `d_i | d_{i+1}`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    diagonal: Vec<Int>,
    p: IntMatrix,
    q: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.diagonal
    }

    pub fn left(&self) -> &IntMatrix {
        &self.p
    }

    pub fn right(&self) -> &IntMatrix {
        &self.q
    }

    /// Torsion orders of the cokernel `Z^m / im(a)` (the factors > 1).
    pub fn torsion(&self) -> Vec<Int> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.p.rows() - self.rank()
    }

    /// Coordinates of `v` in the cokernel `Z^m / im(a)`: one residue per
    /// nontrivial invariant factor followed by the free coordinates. Two
    /// vectors have equal coordinates iff their difference lies in `im(a)`.
    pub fn cokernel_coordinates(&self, v: &[Int]) -> Vec<Int> {
        let w = self.p.mul_vec(v);
        let mut out = Vec::new();
        for (i, wi) in w.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) => out.push(wi.mod_floor(d)),
                None => out.push(wi.clone()),
            }
        }
        out
    }
}

fn min_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = IntMatrix::identity(m);
    let mut q = IntMatrix::identity(n);
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        p.swap_rows(t, pi);
        d.swap_cols(t, pj);
        q.swap_cols(t, pj);
        loop {
            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                let f = -(&d[(i, t)] / &pivot);
                d.add_row_multiple(i, t, &f);
                p.add_row_multiple(i, t, &f);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let f = -(&d[(t, j)] / &pivot);
                d.add_col_multiple(j, t, &f);
                q.add_col_multiple(j, t, &f);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // a smaller remainder appeared in the pivot row or column
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                p.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                q.swap_cols(t, best.1);
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = Int::one();
                    d.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        diagonal.push(d[(t, t)].clone());
    }
    SmithForm { diagonal, p, q }
}
