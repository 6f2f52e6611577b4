use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{floor_div, Int, IntMatrix};

/// Column-style Hermite normal form: `h = a * u` with `u` unimodular.
///
/// Column `k < rank` of `h` has its first nonzero entry (positive) in row
/// `pivots[k]`, the pivot rows are strictly increasing, and every entry to the
/// left of a pivot in its row lies in `[0, pivot)`. Columns `rank..` of `h`
/// are zero.
pub(crate) struct ColumnHnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

pub(crate) fn column_hnf(a: &IntMatrix) -> ColumnHnf {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, k)].is_zero() {
                h.swap_cols(k, j);
                u.swap_cols(k, j);
                continue;
            }
            let a = h[(i, k)].clone();
            let b = h[(i, j)].clone();
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
            let neg_bg = -bg;
            h.combine_cols(k, j, &eg.x, &eg.y, &neg_bg, &ag);
            u.combine_cols(k, j, &eg.x, &eg.y, &neg_bg, &ag);
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        let pivot = h[(i, k)].clone();
        for j in 0..k {
            let q = -floor_div(&h[(i, j)], &pivot);
            h.add_col_multiple(j, k, &q);
            u.add_col_multiple(j, k, &q);
        }
        pivots.push(i);
        k += 1;
    }
    ColumnHnf { h, u, pivots }
}

/// Row Hermite normal form of the lattice spanned by `vectors`.
///
/// The result is the unique echelon basis with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped, so the
/// output is a basis even if the input was only a generating set.
pub fn row_hnf(vectors: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let t = IntMatrix::from_columns(dim, vectors);
    let hnf = column_hnf(&t);
    (0..hnf.pivots.len()).map(|k| hnf.h.column(k)).collect()
}

/// Particular solution plus integer kernel basis of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Int>,
    pub kernel: Vec<Vec<Int>>,
}

/// A factored integer system `A x = b`, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct HermiteSystem {
    a: IntMatrix,
    h: IntMatrix,
    u: IntMatrix,
    pivots: Vec<usize>,
    kernel: Vec<Vec<Int>>,
}

impl HermiteSystem {
    pub fn new(a: &IntMatrix) -> Self {
        let ColumnHnf { h, u, pivots } = column_hnf(a);
        let rank = pivots.len();
        let raw: Vec<Vec<Int>> = (rank..a.cols()).map(|j| u.column(j)).collect();
        let kernel = row_hnf(&raw, a.cols());
        for k in &kernel {
            assert!(a.mul_vec(k).iter().all(Zero::is_zero), "kernel vector fails A k = 0");
        }
        HermiteSystem {
            a: a.clone(),
            h,
            u,
            pivots,
            kernel,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical (row-HNF) basis of the integer kernel.
    pub fn kernel(&self) -> &[Vec<Int>] {
        &self.kernel
    }

    /// Integer solution of `A x = b`, reduced canonically modulo the kernel,
    /// or `None` when no integer solution exists.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.a.rows(), "right-hand side has wrong length");
        let n = self.a.cols();
        let rank = self.rank();
        let mut y = vec![Int::zero(); n];
        let mut k = 0;
        for (i, bi) in b.iter().enumerate() {
            let mut residual = bi.clone();
            for (j, yj) in y.iter().enumerate().take(k) {
                residual -= &self.h[(i, j)] * yj;
            }
            if k < rank && self.pivots[k] == i {
                let (q, r) = residual.div_rem(&self.h[(i, k)]);
                if !r.is_zero() {
                    return None;
                }
                y[k] = q;
                k += 1;
            } else if !residual.is_zero() {
                return None;
            }
        }
        let mut x = self.u.mul_vec(&y);
        for row in &self.kernel {
            let p = row.iter().position(|v| !v.is_zero()).expect("nonzero kernel row");
            let q = floor_div(&x[p], &row[p]);
            if !q.is_zero() {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi -= &q * ri;
                }
            }
        }
        assert_eq!(self.a.mul_vec(&x), b, "particular solution fails A x = b");
        Some(x)
    }
}

/// Solves `A x = b` over the integers.
///
/// Returns `None` exactly when no integer solution exists.
pub fn hermite_solve(a: &IntMatrix, b: &[Int]) -> Option<Solution> {
    let sys = HermiteSystem::new(a);
    sys.solve(b).map(|particular| Solution {
        particular,
        kernel: sys.kernel().to_vec(),
    })
}
