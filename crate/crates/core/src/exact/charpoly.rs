use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{QMat, Rat};
use crate::error::{Error, Result};

/// Polynomial with rational coefficients, highest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// `coeffs[0]` is the leading coefficient. Leading zeros are dropped.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let skip = coeffs.iter().take_while(|c| c.is_zero()).count();
        let coeffs = if skip == coeffs.len() {
            vec![Rat::zero()]
        } else {
            coeffs[skip..].to_vec()
        };
        Poly { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![Rat::zero(); degree + 1];
        c[0] = Rat::one();
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::monomial(0), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &QMat) -> QMat {
        let d = m.rows();
        let mut acc = QMat::zeros(d, d);
        for c in &self.coeffs {
            acc = &(&acc * m) + &QMat::identity(d).scale(c);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(deg == 0) {
                continue;
            }
            let power = deg - i;
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !abs.is_one() || power == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<super::matrix::RatRepr>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|r| r.to_rat())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient list"));
        }
        Ok(Poly::new(coeffs))
    }
}

/// `det(xI - m)` by the Faddeev-LeVerrier recurrence
/// `N_k = m N_{k-1} + c_{k-1} I`, `c_k = -tr(m N_k) / k`.
/// All divisions are by small integers, so it is exact over Q.
pub fn char_poly(m: &QMat) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(Rat::one());
    let mut n_k = QMat::zeros(d, d);
    for k in 1..=d {
        n_k = &(m * &n_k) + &QMat::identity(d).scale(&coeffs[k - 1]);
        let mn = m * &n_k;
        let c = -mn.trace() / Rat::from_integer(BigInt::from(k));
        coeffs.push(c);
    }
    let p = Poly { coeffs };
    debug_assert!(d > 8 || p.eval_matrix(m).is_zero(), "Cayley-Hamilton");
    Ok(p)
}
