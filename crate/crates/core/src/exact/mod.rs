//! Exact dense linear algebra over the rationals.
//!
//! Everything downstream (algebras, actions, certificates) is carried by
//! [`QMat`] and [`Subspace`]; no floating point is used anywhere.

mod charpoly;
mod congruence;
pub mod json;
mod matrix;
mod subspace;

pub use charpoly::{char_poly, Poly};
pub use congruence::{congruence_search, elementary_moves, solve_congruence_candidate};
pub use matrix::QMat;
pub use subspace::{kernel_basis, rank, span_close, Subspace};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Rat {
    frac(1, 2)
}

/// Parses `"p/q"` or `"p"`; surrounding whitespace is ignored.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    s.parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

pub fn zero_vec(len: usize) -> Vec<Rat> {
    vec![Rat::zero(); len]
}

pub fn unit_vec(len: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(len);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(v: &[Rat], c: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * c).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Projective equality: `a` and `b` are nonzero and proportional.
pub fn same_projective_point(a: &[Rat], b: &[Rat]) -> bool {
    if a.len() != b.len() || is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    let Some(p) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[p].is_zero() {
        return false;
    }
    let ratio = &b[p] / &a[p];
    a.iter().zip(b).all(|(x, y)| x * &ratio == *y)
}
