//! Heisenberg group and Lie algebra arithmetic, and faithful nilpotent
//! matrix realizations of `h_{2n+1}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot, half, int, span_close, QMat, Rat, Subspace};

/// The standard skew form `Ω = [[0, I_n], [-I_n, 0]]`.
pub fn standard_omega(n: usize) -> QMat {
    let mut m = QMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, int(1));
        m.set(n + i, i, int(-1));
    }
    m
}

/// A non-degenerate skew form on `Q^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    n: usize,
    omega: QMat,
}

impl SymplecticSpace {
    pub fn standard(n: usize) -> Self {
        SymplecticSpace {
            n,
            omega: standard_omega(n),
        }
    }

    pub fn new(omega: QMat) -> Result<Self> {
        if !omega.is_square() || !omega.rows().is_multiple_of(2) {
            return Err(Error::dims(format!(
                "skew form must be square of even size, got {:?}",
                omega.shape()
            )));
        }
        if omega != -&omega.transpose() {
            return Err(Error::InvalidStructureMatrix("form is not skew".into()));
        }
        if omega.inverse().is_none() {
            return Err(Error::InvalidStructureMatrix("form is degenerate".into()));
        }
        Ok(SymplecticSpace {
            n: omega.rows() / 2,
            omega,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &QMat {
        &self.omega
    }

    pub fn is_standard(&self) -> bool {
        self.omega == standard_omega(self.n)
    }

    /// `ω(u, v) = uᵗ Ω v`.
    pub fn pairing(&self, u: &[Rat], v: &[Rat]) -> Result<Rat> {
        if u.len() != 2 * self.n || v.len() != 2 * self.n {
            return Err(Error::dims(format!(
                "vectors of length {} and {} in a space of dimension {}",
                u.len(),
                v.len(),
                2 * self.n
            )));
        }
        Ok(dot(u, &self.omega.apply(v)))
    }
}

/// An element `(w, t)` of `W × Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub w: Vec<Rat>,
    pub t: Rat,
}

impl HeisenbergElement {
    pub fn new(w: Vec<Rat>, t: Rat) -> Self {
        HeisenbergElement { w, t }
    }

    pub fn identity(n: usize) -> Self {
        HeisenbergElement {
            w: vec![Rat::zero(); 2 * n],
            t: Rat::zero(),
        }
    }

    pub fn inverse(&self) -> Self {
        HeisenbergElement {
            w: self.w.iter().map(|x| -x).collect(),
            t: -&self.t,
        }
    }
}

/// `(w₁, t₁)(w₂, t₂) = (w₁ + w₂, t₁ + t₂ + ½ ω(w₁, w₂))`.
pub fn group_mul(
    a: &HeisenbergElement,
    b: &HeisenbergElement,
    sp: &SymplecticSpace,
) -> Result<HeisenbergElement> {
    let twist = sp.pairing(&a.w, &b.w)? * half();
    Ok(HeisenbergElement {
        w: a.w.iter().zip(&b.w).map(|(x, y)| x + y).collect(),
        t: &a.t + &b.t + twist,
    })
}

/// `[(w₁, t₁), (w₂, t₂)] = (0, ω(w₁, w₂))`.
pub fn lie_bracket(
    a: &HeisenbergElement,
    b: &HeisenbergElement,
    sp: &SymplecticSpace,
) -> Result<HeisenbergElement> {
    let t = sp.pairing(&a.w, &b.w)?;
    Ok(HeisenbergElement {
        w: vec![Rat::zero(); a.w.len()],
        t,
    })
}

/// `exp(m) = Σ mᵏ/k!`, a finite sum for nilpotent `m`.
pub fn exp_nilpotent(m: &QMat) -> Result<QMat> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    let mut acc = QMat::identity(d);
    let mut term = QMat::identity(d);
    for k in 1..=d.max(1) {
        term = (&term * m).scale(&Rat::new(One::one(), (k as i64).into()));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    // m^d ≠ 0
    Err(Error::NotNilpotent)
}

/// A faithful realization of `h_{2n+1}` by strictly upper triangular
/// `d × d` matrices: `[X_i, X_j] = ω(e_i, e_j)·t` and `t` central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergMatRep {
    n: usize,
    d: usize,
    x: Vec<QMat>,
    t: QMat,
    omega: SymplecticSpace,
}

impl HeisenbergMatRep {
    pub fn new(x: Vec<QMat>, t: QMat, omega: SymplecticSpace) -> Result<Self> {
        let n = omega.n();
        if x.len() != 2 * n {
            return Err(Error::WrongDimension {
                what: "Heisenberg generators",
                expected: 2 * n,
                found: x.len(),
            });
        }
        let d = t.rows();
        if !t.is_square() || x.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::dims("generators must be square of a common size"));
        }
        if t.is_zero() {
            return Err(Error::NotHeisenberg("central element is zero".into()));
        }
        if !t.is_strictly_upper() || x.iter().any(|m| !m.is_strictly_upper()) {
            return Err(Error::NotHeisenberg(
                "generators are not strictly upper triangular".into(),
            ));
        }
        for (i, xi) in x.iter().enumerate() {
            if !xi.commutator(&t).is_zero() {
                return Err(Error::NotHeisenberg(format!("[X{}, t] ≠ 0", i + 1)));
            }
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                let expected = t.scale(omega.omega().get(i, j));
                if xi.commutator(xj) != expected {
                    return Err(Error::NotHeisenberg(format!(
                        "[X{}, X{}] ≠ {}·t",
                        i + 1,
                        j + 1,
                        omega.omega().get(i, j)
                    )));
                }
            }
        }
        let rep = HeisenbergMatRep { n, d, x, t, omega };
        let dim = span_close(&rep.basis())?.dim();
        if dim != 2 * n + 1 {
            return Err(Error::NotHeisenberg(format!(
                "span has dimension {dim}, expected {}",
                2 * n + 1
            )));
        }
        Ok(rep)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn x(&self) -> &[QMat] {
        &self.x
    }

    pub fn t(&self) -> &QMat {
        &self.t
    }

    pub fn symplectic_space(&self) -> &SymplecticSpace {
        &self.omega
    }

    /// `X_1, …, X_{2n}, t`.
    pub fn basis(&self) -> Vec<QMat> {
        let mut b = self.x.clone();
        b.push(self.t.clone());
        b
    }

    pub fn span(&self) -> Subspace {
        span_close(&self.basis()).expect("common shape")
    }

    /// Coefficient of `t` in `[X_i, X_j]`; equals the form's matrix.
    pub fn bracket_table(&self) -> Result<QMat> {
        let line = span_close(std::slice::from_ref(&self.t))?;
        let p = line.pivots()[0];
        let scale = self.t.entries()[p].clone();
        let m = 2 * self.n;
        let mut table = QMat::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let br = self.x[i].commutator(&self.x[j]);
                if !line.contains_matrix(&br) {
                    return Err(Error::NotHeisenberg(format!(
                        "[X{}, X{}] is not a multiple of t",
                        i + 1,
                        j + 1
                    )));
                }
                table.set(i, j, &br.entries()[p] / &scale);
            }
        }
        Ok(table)
    }

    /// The Lie algebra element `Σ wᵢ Xᵢ + t·T`.
    pub fn lie_element(&self, g: &HeisenbergElement) -> Result<QMat> {
        if g.w.len() != 2 * self.n {
            return Err(Error::dims("element does not match the representation"));
        }
        let mut acc = self.t.scale(&g.t);
        for (c, xi) in g.w.iter().zip(&self.x) {
            if !c.is_zero() {
                acc = &acc + &xi.scale(c);
            }
        }
        Ok(acc)
    }

    /// The group element `exp(Σ wᵢ Xᵢ + t·T)`; a homomorphism for the
    /// group law because `[A, B]` is central.
    pub fn group_element(&self, g: &HeisenbergElement) -> Result<QMat> {
        exp_nilpotent(&self.lie_element(g)?)
    }

    /// `P⁻¹ X P` applied to every basis element.
    pub fn conjugate(&self, p: &QMat) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidAction("conjugating matrix is singular".into()))?;
        let c = |m: &QMat| &(&inv * m) * p;
        HeisenbergMatRep::new(
            self.x.iter().map(c).collect(),
            c(&self.t),
            self.omega.clone(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RepDoc {
    n: usize,
    d: usize,
    #[serde(rename = "X")]
    x: Vec<QMat>,
    t: QMat,
}

impl Serialize for HeisenbergMatRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RepDoc {
            n: self.n,
            d: self.d,
            x: self.x.clone(),
            t: self.t.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeisenbergMatRep {
    /// Serialized reps carry the standard form; anything else is rejected
    /// rather than silently re-normalised.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = RepDoc::deserialize(d)?;
        if doc.t.rows() != doc.d {
            return Err(serde::de::Error::custom("t does not have size d"));
        }
        HeisenbergMatRep::new(doc.x, doc.t, SymplecticSpace::standard(doc.n))
            .map_err(serde::de::Error::custom)
    }
}

/// Extracts a standard symplectic basis `X_1..X_2n, t` from matrices
/// spanning a Heisenberg Lie algebra.
///
/// `t` is the reduced echelon generator of the derived algebra. The
/// complement is taken from the generators in input order, then paired by
/// symplectic Gram-Schmidt so that `[X_i, X_{n+j}] = δ_ij t`.
pub fn symplectic_basis_extract(generators: &[QMat]) -> Result<HeisenbergMatRep> {
    let span = span_close(generators)?;
    if span.is_zero() {
        return Err(Error::NotHeisenberg("no generators".into()));
    }
    let (d, _) = generators[0].shape();
    let basis = span.matrices(d, d);

    let mut derived = Subspace::zero(d * d);
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let br = a.commutator(b);
            if !span.contains_matrix(&br) {
                return Err(Error::NotHeisenberg(
                    "span is not closed under bracket".into(),
                ));
            }
            derived.insert(br.into_entries())?;
        }
    }
    if derived.dim() != 1 {
        return Err(Error::NotHeisenberg(format!(
            "derived algebra has dimension {}",
            derived.dim()
        )));
    }
    let t = derived.matrices(d, d).remove(0);
    let p = derived.pivots()[0];
    if basis.iter().any(|b| !b.commutator(&t).is_zero()) {
        return Err(Error::NotHeisenberg(
            "derived algebra is not central".into(),
        ));
    }
    let form = |a: &QMat, b: &QMat| a.commutator(b).entries()[p].clone();

    let mut seen = span_close(std::slice::from_ref(&t))?;
    let mut pool = Vec::new();
    for g in generators {
        if seen.insert(g.entries().to_vec())? {
            pool.push(g.clone());
        }
    }
    if pool.len() % 2 != 0 {
        return Err(Error::NotHeisenberg(format!(
            "span has even dimension {}",
            pool.len() + 1
        )));
    }

    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    while !pool.is_empty() {
        let a = pool.remove(0);
        let Some(k) = pool.iter().position(|b| !form(&a, b).is_zero()) else {
            return Err(Error::NotHeisenberg(
                "induced form is degenerate (center larger than derived algebra)".into(),
            ));
        };
        let b0 = pool.remove(k);
        let b = b0.scale(&(Rat::one() / form(&a, &b0)));
        pool = pool
            .into_iter()
            .map(|w| {
                // w - ω(w,b)·a + ω(w,a)·b is orthogonal to both a and b
                let wb = form(&w, &b);
                let wa = form(&w, &a);
                &(&w - &a.scale(&wb)) + &b.scale(&wa)
            })
            .collect();
        firsts.push(a);
        seconds.push(b);
    }
    let n = firsts.len();
    firsts.extend(seconds);
    HeisenbergMatRep::new(firsts, t, SymplecticSpace::standard(n))
}
