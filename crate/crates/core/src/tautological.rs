//! Structure matrices of tautological algebras and certified
//! (in)equivalence of the corresponding Heisenberg structures.
//!
//! For a symplectic basis `X_1..X_2n, t` of the maximal ideal of a
//! tautological algebra, `X_i X_j = a_ij t` and `M − Mᵗ = Ω`. The
//! invariant is `char_poly(Ω⁻¹S)` with `S = (M + Mᵗ)/2`: if
//! `k·M₁ = C M₂ Cᵗ` with `C Ω Cᵗ = k Ω`, then
//! `Ω⁻¹S₁ = C⁻ᵗ (Ω⁻¹S₂) Cᵗ`, so the polynomial is unchanged. It is not a
//! complete invariant.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::closure::{generate_algebra, local_anatomy, LocalAlgebra};
use crate::correspondence::HeisenbergProjAction;
use crate::error::{Error, Result};
use crate::exact::{char_poly, congruence_search, half, int, unit_vec, Poly, QMat, Rat};
use crate::heisenberg::{standard_omega, HeisenbergMatRep, SymplecticSpace};
use crate::random::transvection;

/// `Ω⁻¹ = −Ω` for the standard form.
fn omega_inverse(n: usize) -> QMat {
    -&standard_omega(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureMatrix {
    n: usize,
    m: QMat,
}

impl StructureMatrix {
    pub fn new(m: QMat) -> Result<Self> {
        if !m.is_square() || !m.rows().is_multiple_of(2) || m.rows() == 0 {
            return Err(Error::InvalidStructureMatrix(format!(
                "shape {:?} is not 2n × 2n",
                m.shape()
            )));
        }
        let n = m.rows() / 2;
        if &m - &m.transpose() != standard_omega(n) {
            return Err(Error::InvalidStructureMatrix("M − Mᵗ ≠ Ω".into()));
        }
        Ok(StructureMatrix { n, m })
    }

    /// `M = S + Ω/2`, the inverse of [`StructureMatrix::symmetric_part`].
    pub fn from_symmetric(s: &QMat) -> Result<Self> {
        if !s.is_square() || !s.is_symmetric() {
            return Err(Error::InvalidStructureMatrix(
                "input is not symmetric".into(),
            ));
        }
        if !s.rows().is_multiple_of(2) {
            return Err(Error::InvalidStructureMatrix("odd size".into()));
        }
        let omega = standard_omega(s.rows() / 2);
        Self::new(s.try_add(&omega.scale(&half()))?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &QMat {
        &self.m
    }

    /// `S(M) = (M + Mᵗ)/2`.
    pub fn symmetric_part(&self) -> QMat {
        (&self.m + &self.m.transpose()).scale(&half())
    }

    /// `C M Cᵗ`; valid again whenever `C ∈ Sp(Ω)`.
    pub fn congruent(&self, c: &QMat) -> Result<Self> {
        Self::new(c.try_mul(&self.m)?.try_mul(&c.transpose())?)
    }
}

#[derive(Serialize, Deserialize)]
struct StructureDoc {
    n: usize,
    #[serde(rename = "M")]
    m: QMat,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StructureInput {
    Doc(StructureDoc),
    Bare(QMat),
}

impl Serialize for StructureMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StructureDoc {
            n: self.n,
            m: self.m.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let m = match StructureInput::deserialize(de)? {
            StructureInput::Doc(doc) => {
                if doc.m.rows() != 2 * doc.n {
                    return Err(serde::de::Error::custom("n disagrees with the matrix"));
                }
                doc.m
            }
            StructureInput::Bare(m) => m,
        };
        StructureMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Reads `a_ij` off `X_i X_j = a_ij t`.
pub fn extract_structure_matrix(
    loc: &LocalAlgebra,
    rep: &HeisenbergMatRep,
) -> Result<StructureMatrix> {
    let n = rep.n();
    if loc.d() != rep.d() {
        return Err(Error::dims("algebra and representation sizes differ"));
    }
    if loc.dim() != 2 * n + 2 || *loc.maximal_ideal() != rep.span() {
        return Err(Error::NotTautological(format!(
            "algebra of dimension {} is not I ⊕ span(X, t)",
            loc.dim()
        )));
    }
    if !rep.symplectic_space().is_standard() {
        return Err(Error::NotTautological("basis is not symplectic".into()));
    }
    let t = rep.t();
    let p = t
        .entries()
        .iter()
        .position(|x| !x.is_zero())
        .expect("t ≠ 0");
    let m = 2 * n;
    let mut out = QMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let prod = &rep.x()[i] * &rep.x()[j];
            let a = &prod.entries()[p] / &t.entries()[p];
            if prod != t.scale(&a) {
                return Err(Error::NotTautological(format!(
                    "X{} X{} is not a multiple of t",
                    i + 1,
                    j + 1
                )));
            }
            out.set(i, j, a);
        }
    }
    StructureMatrix::new(out)
}

/// `X_i = E_{1,i+1} + Σ_l a_{li} E_{l+1,2n+2}`, `t = E_{1,2n+2}`.
pub fn algebra_from_structure_matrix(
    sm: &StructureMatrix,
) -> Result<(HeisenbergMatRep, LocalAlgebra)> {
    let n = sm.n;
    let d = 2 * n + 2;
    let t = QMat::unit(d, 0, d - 1);
    let x: Vec<QMat> = (0..2 * n)
        .map(|i| {
            let mut xi = QMat::unit(d, 0, i + 1);
            for l in 0..2 * n {
                xi.set(l + 1, d - 1, sm.m.get(l, i).clone());
            }
            xi
        })
        .collect();
    for i in 0..2 * n {
        for j in 0..2 * n {
            debug_assert_eq!(&x[i] * &x[j], t.scale(sm.m.get(i, j)));
        }
    }
    let rep = HeisenbergMatRep::new(x, t, SymplecticSpace::standard(n))?;
    let loc = local_anatomy(&generate_algebra(d, &rep.basis())?)?;
    if loc.dim() != d {
        return Err(Error::NotTautological(format!(
            "closure has dimension {}, expected {d}",
            loc.dim()
        )));
    }
    Ok((rep, loc))
}

/// The Heisenberg structure on `P^{2n+1}` with boundary `{x₁ = 0}`.
pub fn realize_action(sm: &StructureMatrix) -> Result<HeisenbergProjAction> {
    let (rep, _) = algebra_from_structure_matrix(sm)?;
    HeisenbergProjAction::standard(rep)
}

/// `char_poly(Ω⁻¹·S(M))`.
pub fn symplectic_invariant(sm: &StructureMatrix) -> Poly {
    char_poly(&hamiltonian(sm)).expect("square")
}

fn hamiltonian(sm: &StructureMatrix) -> QMat {
    &omega_inverse(sm.n) * &sm.symmetric_part()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Inequivalent,
    /// Equal invariants. This is not a proof of equivalence.
    Undistinguished,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub symmetric_left: QMat,
    pub symmetric_right: QMat,
    pub hamiltonian_left: QMat,
    pub hamiltonian_right: QMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequivalenceCertificate {
    pub left: StructureMatrix,
    pub right: StructureMatrix,
    pub invariants: [Poly; 2],
    pub verdict: Verdict,
    pub transcript: Transcript,
}

impl InequivalenceCertificate {
    /// Recomputes every transcript entry from `left` and `right` and checks
    /// the verdict against the invariants.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::InvalidStructureMatrix(format!(
                "certificate: {what}"
            )))
        };
        if self.left.n != self.right.n {
            return fail("sizes differ");
        }
        let n = self.left.n;
        let omega = standard_omega(n);
        for sm in [&self.left, &self.right] {
            if &sm.m - &sm.m.transpose() != omega {
                return fail("M − Mᵗ ≠ Ω");
            }
        }
        let t = &self.transcript;
        let sides = [
            (
                &self.left,
                &t.symmetric_left,
                &t.hamiltonian_left,
                &self.invariants[0],
            ),
            (
                &self.right,
                &t.symmetric_right,
                &t.hamiltonian_right,
                &self.invariants[1],
            ),
        ];
        for (sm, s, h, inv) in sides {
            if (&sm.m + &sm.m.transpose()).scale(&half()) != *s {
                return fail("symmetric part");
            }
            // Ω·H = S is equivalent to H = Ω⁻¹S and avoids an inverse.
            if &omega * h != *s {
                return fail("Ω⁻¹S");
            }
            if char_poly(h)? != *inv {
                return fail("characteristic polynomial");
            }
        }
        let expected = if self.invariants[0] != self.invariants[1] {
            Verdict::Inequivalent
        } else {
            Verdict::Undistinguished
        };
        if self.verdict != expected {
            return fail("verdict");
        }
        Ok(())
    }
}

pub fn certify_inequivalent(
    a: &StructureMatrix,
    b: &StructureMatrix,
) -> Result<InequivalenceCertificate> {
    if a.n != b.n {
        return Err(Error::dims(format!("n = {} vs n = {}", a.n, b.n)));
    }
    let (ha, hb) = (hamiltonian(a), hamiltonian(b));
    let invariants = [char_poly(&ha)?, char_poly(&hb)?];
    let verdict = if invariants[0] != invariants[1] {
        Verdict::Inequivalent
    } else {
        Verdict::Undistinguished
    };
    Ok(InequivalenceCertificate {
        left: a.clone(),
        right: b.clone(),
        invariants,
        verdict,
        transcript: Transcript {
            symmetric_left: a.symmetric_part(),
            symmetric_right: b.symmetric_part(),
            hamiltonian_left: ha,
            hamiltonian_right: hb,
        },
    })
}

/// `M_λ = λI + Ω/2`, with invariant `(x² + λ²)ⁿ`.
pub fn generate_family(n: usize, labels: &[Rat]) -> Result<Vec<StructureMatrix>> {
    if n == 0 {
        return Err(Error::InvalidLabels("n must be positive".into()));
    }
    for (i, l) in labels.iter().enumerate() {
        if !l.is_positive() {
            return Err(Error::InvalidLabels(format!("label {l} is not positive")));
        }
        if labels[..i].contains(l) {
            return Err(Error::InvalidLabels(format!("label {l} is repeated")));
        }
    }
    labels
        .iter()
        .map(|l| StructureMatrix::from_symmetric(&QMat::identity(2 * n).scale(l)))
        .collect()
}

/// Transvections `I ± u uᵗ Ω` for `u ∈ {e_i, e_i ± e_j}`.
pub fn transvection_moves(n: usize) -> Vec<QMat> {
    let m = 2 * n;
    let mut dirs = Vec::new();
    for i in 0..m {
        dirs.push(unit_vec(m, i));
        for j in i + 1..m {
            for s in [1, -1] {
                let mut u = unit_vec(m, i);
                u[j] = int(s);
                dirs.push(u);
            }
        }
    }
    dirs.iter()
        .flat_map(|u| [transvection(u, &Rat::one()), transvection(u, &int(-1))])
        .collect()
}

/// A verified `C` with `a.M = C·b.M·Cᵗ`, searched among products of
/// transvections. Since both skew parts are `Ω`, any witness is symplectic.
pub fn equivalence_witness(
    a: &StructureMatrix,
    b: &StructureMatrix,
    budget: usize,
) -> Option<QMat> {
    if a.n != b.n {
        return None;
    }
    if symplectic_invariant(a) != symplectic_invariant(b) {
        return None;
    }
    congruence_search(&a.m, &b.m, &transvection_moves(a.n), budget)
}
