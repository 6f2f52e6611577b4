//! Euler measure, point measures and the index formulas built from them.
//!
//! All values are exact rationals. The Euler measure and point measures lie
//! in `(1/4) Z`; the index, embedded Euler characteristic and Chern pairing
//! are integers for genuine domains, and a non-integral result is reported
//! as an error rather than rounded.

use num_traits::Zero;
use thiserror::Error;

use crate::diagram::ValidatedDiagram;
use crate::domains::Domain;
use crate::exactla::{rat, rat_from_int, Int, Rational};
use crate::generators::Generator;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("{quantity} evaluated to the non-integer {value}; the domain data is inconsistent")]
    NonIntegral { quantity: &'static str, value: Rational },
}

fn integral(quantity: &'static str, value: Rational) -> Result<Int, MeasureError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(MeasureError::NonIntegral { quantity, value })
    }
}

/// `e(D) = sum n_i (chi(D_i) - corners(D_i) / 4)`.
pub fn euler_measure(d: &ValidatedDiagram, coeffs: &[Int]) -> Rational {
    d.regions()
        .iter()
        .zip(coeffs)
        .filter(|(_, n)| !n.is_zero())
        .map(|(r, n)| r.euler_measure() * rat_from_int(n))
        .sum()
}

/// Average of the coefficients in the four quadrants at `p`.
pub fn point_measure(d: &ValidatedDiagram, coeffs: &[Int], p: usize) -> Rational {
    let total: Int = d.quadrants().quadrant_sum(p, |r| coeffs[r].clone());
    rat_from_int(&total) * rat(1, 4)
}

/// `n_x(D)`: the point measures summed over the points of `x`.
pub fn generator_measure(d: &ValidatedDiagram, coeffs: &[Int], x: &Generator) -> Rational {
    x.points().iter().map(|&p| point_measure(d, coeffs, p)).sum()
}

/// Maslov index `e(D) + n_from(D) + n_to(D)`.
pub fn maslov_index(d: &ValidatedDiagram, domain: &Domain) -> Result<Int, MeasureError> {
    let c = domain.coefficients();
    let value = euler_measure(d, c) + generator_measure(d, c, domain.from()) + generator_measure(d, c, domain.to());
    integral("Maslov index", value)
}

/// Euler characteristic of an embedded representative,
/// `g - n_from(D) - n_to(D) + e(D)`.
pub fn embedded_euler_char(d: &ValidatedDiagram, domain: &Domain) -> Result<Int, MeasureError> {
    let c = domain.coefficients();
    let value =
        rat(d.genus() as i64, 1) - generator_measure(d, c, domain.from()) - generator_measure(d, c, domain.to())
            + euler_measure(d, c);
    integral("embedded Euler characteristic", value)
}

/// `<c_1(s), P> = e(P) + 2 n_x(P)` for a periodic vector `P` with `n_z = 0`
/// and a generator `x` in the Spin^c class `s`.
///
/// A kernel element with `n_z != 0` is first reduced by `n_z [Sigma]`, which
/// is null-homologous, so `[Sigma]` itself pairs to zero.
pub fn chern_pairing(d: &ValidatedDiagram, x: &Generator, periodic: &[Int]) -> Result<Int, MeasureError> {
    let nz = &periodic[d.basepoint_region()];
    let value = euler_measure(d, periodic) + generator_measure(d, periodic, x) * rat(2, 1);
    let sigma_part = rat_from_int(nz) * rat(2, 1);
    integral("Chern pairing", value - sigma_part)
}

/// Index of a periodic vector viewed in `pi_2(x, x)`: `<c_1, P> + 2 n_z(P)`.
pub fn periodic_index(d: &ValidatedDiagram, x: &Generator, periodic: &[Int]) -> Result<Int, MeasureError> {
    let nz = &periodic[d.basepoint_region()];
    Ok(chern_pairing(d, x, periodic)? + nz * Int::from(2))
}
