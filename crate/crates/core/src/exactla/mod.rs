//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`Int`]) or
//! reduced fractions ([`Rational`]). There is no floating point anywhere in
//! the crate; measures, areas and LP optima are all exact.

mod f2;
mod hermite;
mod lp;
mod matrix;
mod smith;

pub use f2::BitMatrix;
pub use hermite::{hermite_solve, row_hnf, HermiteSystem, Solution};
pub use lp::{lp_optimize, Constraint, LpOutcome, Relation};
pub use matrix::IntMatrix;
pub use smith::{smith_form, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(v: &Int) -> Rational {
    BigRational::from_integer(v.clone())
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gcd of the entries, always nonnegative; zero for the zero vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content so the vector becomes primitive.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and returns the primitive
/// integer vector on the same ray.
pub fn integer_ray(v: &[Rational]) -> Vec<Int> {
    let lcm = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<Int> = v.iter().map(|x| (x * rat_from_int(&lcm)).to_integer()).collect();
    primitive(&scaled)
}

/// Floor division for big integers (rounds toward negative infinity).
pub fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

pub fn ceil_rat(r: &Rational) -> Int {
    r.ceil().to_integer()
}

pub fn floor_rat(r: &Rational) -> Int {
    r.floor().to_integer()
}

pub fn is_nonnegative(v: &[Int]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
