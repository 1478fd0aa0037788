//! The Hassett-Tschinkel correspondence between additive structures on
//! `P^n` and local commutative algebras, and the descent of a Heisenberg
//! structure on `P^{2n+1}` to an additive structure on `P^{2n}`.
//!
//! Points are row vectors and a matrix `g` acts by `x ↦ x·g`. In this
//! convention the translation structure on `P^n` is generated by the
//! matrix units `E_{1,j+1}`: `[z₀ : z₁ + a₁z₀ : … ]`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::closure::{generate_algebra, local_anatomy, BasisCoords, LocalAlgebra};
use crate::error::{Error, Result};
use crate::exact::json::{rat_vec, rat_vecs};
use crate::exact::{is_zero_vec, kernel_basis, unit_vec, QMat, Rat, Subspace};
use crate::heisenberg::{exp_nilpotent, HeisenbergMatRep};

/// Row span of `x·A` over the algebra's basis.
fn orbit_span(reference: &[Rat], basis: &[QMat]) -> Subspace {
    Subspace::from_vectors(
        reference.len(),
        basis.iter().map(|b| b.apply_right(reference)),
    )
    .expect("length")
}

/// Scales a nonzero vector so its first nonzero entry is 1.
fn normalize(v: &[Rat]) -> Vec<Rat> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .unwrap_or_else(Rat::one);
    v.iter().map(|x| x / &lead).collect()
}

/// An effective `G_a^n` action on `P^{d-1}` with a dense orbit, given by
/// commuting nilpotent generators and a reference point on the open orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveProjAction {
    generators: Vec<QMat>,
    reference_point: Vec<Rat>,
}

impl AdditiveProjAction {
    pub fn new(generators: Vec<QMat>, reference_point: Vec<Rat>) -> Result<Self> {
        let d = reference_point.len();
        let n = generators.len();
        if d != n + 1 {
            return Err(Error::WrongDimension {
                what: "projective space of an additive structure",
                expected: n + 1,
                found: d,
            });
        }
        if let Some(g) = generators.iter().find(|g| g.shape() != (d, d)) {
            return Err(Error::dims(format!(
                "generator of shape {:?} on a {d}-dimensional space",
                g.shape()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.pow(d as u32).is_zero() {
                return Err(Error::InvalidAction(format!(
                    "generator {i} is not nilpotent"
                )));
            }
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !g.commutator(h).is_zero() {
                    return Err(Error::InvalidAction(format!(
                        "generators {i} and {j} do not commute"
                    )));
                }
            }
        }
        if n > 0 && Subspace::from_matrices(d * d, &generators)?.dim() != n {
            return Err(Error::InvalidAction(
                "generators are linearly dependent".into(),
            ));
        }
        let alg = generate_algebra(d, &generators)?;
        if orbit_span(&reference_point, &alg.basis()).dim() != d {
            return Err(Error::NotDense);
        }
        Ok(AdditiveProjAction {
            generators,
            reference_point,
        })
    }

    /// Dimension of the group (and of the projective space).
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn d(&self) -> usize {
        self.reference_point.len()
    }

    pub fn generators(&self) -> &[QMat] {
        &self.generators
    }

    pub fn reference_point(&self) -> &[Rat] {
        &self.reference_point
    }

    /// The group element `exp(Σ aᵢ gᵢ)`.
    pub fn group_element(&self, params: &[Rat]) -> Result<QMat> {
        if params.len() != self.n() {
            return Err(Error::dims("parameter count"));
        }
        let d = self.d();
        let mut log = QMat::zeros(d, d);
        for (a, g) in params.iter().zip(&self.generators) {
            log = &log + &g.scale(a);
        }
        exp_nilpotent(&log)
    }

    pub fn orbit_point(&self, params: &[Rat]) -> Result<Vec<Rat>> {
        Ok(self
            .group_element(params)?
            .apply_right(&self.reference_point))
    }

    /// Conjugates the action by `p`: generators `p⁻¹ g p`, reference `ô·p`.
    pub fn conjugate(&self, p: &QMat) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidAction("conjugating matrix is singular".into()))?;
        AdditiveProjAction::new(
            self.generators.iter().map(|g| &(&inv * g) * p).collect(),
            p.apply_right(&self.reference_point),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct AdditiveDoc {
    n: usize,
    d: usize,
    generators: Vec<QMat>,
    #[serde(with = "rat_vec")]
    reference_point: Vec<Rat>,
}

impl Serialize for AdditiveProjAction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AdditiveDoc {
            n: self.n(),
            d: self.d(),
            generators: self.generators.clone(),
            reference_point: self.reference_point.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdditiveProjAction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = AdditiveDoc::deserialize(de)?;
        if doc.generators.len() != doc.n || doc.reference_point.len() != doc.d {
            return Err(serde::de::Error::custom(
                "n or d disagrees with the payload",
            ));
        }
        AdditiveProjAction::new(doc.generators, doc.reference_point)
            .map_err(serde::de::Error::custom)
    }
}

/// Regular representation of a commutative local algebra: right
/// multiplication by a basis of `m` on the algebra itself, in the ordered
/// basis `I, m₁, …, m_n`, with the unit `e₁` as reference point.
pub fn algebra_to_action(loc: &LocalAlgebra) -> Result<AdditiveProjAction> {
    if !loc.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let mut basis = vec![QMat::identity(loc.d())];
    basis.extend(loc.maximal_ideal_basis());
    let dim = basis.len();
    let coords = BasisCoords::new(basis)?;
    let generators = coords.basis()[1..]
        .iter()
        .map(|m| {
            let rows = coords
                .basis()
                .iter()
                .map(|b| coords.coords(&(b * m)).ok_or(Error::NotCommutative))
                .collect::<Result<Vec<_>>>()?;
            QMat::from_rows(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    AdditiveProjAction::new(generators, unit_vec(dim, 0))
}

/// The algebra generated by the action's generators and the identity.
pub fn action_to_algebra(act: &AdditiveProjAction) -> Result<LocalAlgebra> {
    let loc = local_anatomy(&generate_algebra(act.d(), act.generators())?)?;
    if !loc.is_commutative() {
        return Err(Error::NotCommutative);
    }
    if loc.dim() != act.n() + 1 {
        return Err(Error::WrongDimension {
            what: "algebra of an additive structure",
            expected: act.n() + 1,
            found: loc.dim(),
        });
    }
    Ok(loc)
}

/// Translation structure iff `m² = 0` and `ô, ô·g₁, …, ô·g_n` span `V`.
/// Both conditions are invariant under conjugation.
pub fn is_tautological(act: &AdditiveProjAction) -> bool {
    let gens = act.generators();
    let square_zero = gens.iter().all(|g| gens.iter().all(|h| (g * h).is_zero()));
    if !square_zero {
        return false;
    }
    let mut span = Subspace::zero(act.d());
    span.insert(act.reference_point().to_vec()).expect("length");
    for g in gens {
        span.insert(g.apply_right(act.reference_point()))
            .expect("length");
    }
    span.dim() == act.d()
}

/// A Heisenberg structure on `P V`, `V = Q^{2n+2}`, with boundary
/// hyperplane `V'` and a reference point on the open orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergProjAction {
    rep: HeisenbergMatRep,
    boundary: Subspace,
    reference_point: Vec<Rat>,
}

impl HeisenbergProjAction {
    pub fn new(
        rep: HeisenbergMatRep,
        boundary: Subspace,
        reference_point: Vec<Rat>,
    ) -> Result<Self> {
        let d = rep.d();
        if boundary.ambient_dim() != d || reference_point.len() != d {
            return Err(Error::dims("boundary and reference must live in V"));
        }
        if boundary.dim() + 1 != d {
            return Err(Error::WrongDimension {
                what: "boundary hyperplane",
                expected: d - 1,
                found: boundary.dim(),
            });
        }
        if boundary.contains(&reference_point) {
            return Err(Error::InvalidAction(
                "reference point lies on the boundary".into(),
            ));
        }
        let alg = generate_algebra(d, &rep.basis())?;
        if orbit_span(&reference_point, &alg.basis()).dim() != d {
            return Err(Error::NotDense);
        }
        for (i, x) in rep.basis().iter().enumerate() {
            let g = exp_nilpotent(x)?;
            if boundary
                .basis()
                .iter()
                .any(|b| !boundary.contains(&g.apply_right(b)))
            {
                return Err(Error::InvalidAction(format!(
                    "basis element {i} does not preserve the boundary"
                )));
            }
        }
        Ok(HeisenbergProjAction {
            rep,
            boundary,
            reference_point,
        })
    }

    /// Boundary `{x₁ = 0}` and reference point `e₁`.
    pub fn standard(rep: HeisenbergMatRep) -> Result<Self> {
        let d = rep.d();
        let boundary = Subspace::from_vectors(d, (1..d).map(|i| unit_vec(d, i)))?;
        Self::new(rep, boundary, unit_vec(d, 0))
    }

    pub fn rep(&self) -> &HeisenbergMatRep {
        &self.rep
    }

    pub fn boundary(&self) -> &Subspace {
        &self.boundary
    }

    pub fn reference_point(&self) -> &[Rat] {
        &self.reference_point
    }

    /// The same structure viewed from another point of the open orbit.
    pub fn with_reference(&self, reference_point: Vec<Rat>) -> Result<Self> {
        Self::new(self.rep.clone(), self.boundary.clone(), reference_point)
    }

    /// Change of coordinates `y = x·p`. `p` must be upper triangular so
    /// that the representation stays strictly upper triangular.
    pub fn conjugate(&self, p: &QMat) -> Result<Self> {
        let d = self.rep.d();
        let boundary =
            Subspace::from_vectors(d, self.boundary.basis().iter().map(|b| p.apply_right(b)))?;
        Self::new(
            self.rep.conjugate(p)?,
            boundary,
            p.apply_right(&self.reference_point),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct HeisenbergActionDoc {
    rep: HeisenbergMatRep,
    #[serde(with = "rat_vecs")]
    boundary: Vec<Vec<Rat>>,
    #[serde(with = "rat_vec")]
    reference_point: Vec<Rat>,
}

impl Serialize for HeisenbergProjAction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HeisenbergActionDoc {
            rep: self.rep.clone(),
            boundary: self.boundary.basis().to_vec(),
            reference_point: self.reference_point.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeisenbergProjAction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = HeisenbergActionDoc::deserialize(de)?;
        let boundary =
            Subspace::from_vectors(doc.rep.d(), doc.boundary).map_err(serde::de::Error::custom)?;
        HeisenbergProjAction::new(doc.rep, boundary, doc.reference_point)
            .map_err(serde::de::Error::custom)
    }
}

/// Whether the central one-parameter subgroup fixes `P V'` pointwise.
///
/// For nilpotent `t`, `x·exp(st) ∈ Q·x` for all `s` forces `x·t = 0`
/// (an eigenvector of a nilpotent map has eigenvalue zero), so projective
/// fixing reduces to linear annihilation of `V'`.
pub fn boundary_fixed_check(h: &HeisenbergProjAction) -> bool {
    let t = h.rep.t();
    h.boundary
        .basis()
        .iter()
        .all(|b| is_zero_vec(&t.apply_right(b)))
}

/// The point `v = [ô·t]` added by the closure of the central orbit,
/// normalised so its first nonzero coordinate is 1.
pub fn fixed_direction(h: &HeisenbergProjAction) -> Result<Vec<Rat>> {
    fixed_direction_at(h, &h.reference_point)
}

/// [`fixed_direction`] computed from an arbitrary lift of a reference point.
pub fn fixed_direction_at(h: &HeisenbergProjAction, reference: &[Rat]) -> Result<Vec<Rat>> {
    if !boundary_fixed_check(h) {
        return Err(Error::NotBoundaryFixing);
    }
    if reference.len() != h.rep.d() {
        return Err(Error::dims("reference point length"));
    }
    let v = h.rep.t().apply_right(reference);
    if is_zero_vec(&v) {
        return Err(Error::DegenerateDirection);
    }
    Ok(normalize(&v))
}

/// The descended action on `P(V / Q·v̂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentResult {
    #[serde(with = "rat_vec")]
    fixed_direction: Vec<Rat>,
    /// Coordinate eliminated by the quotient (first nonzero entry of `v̂`).
    pivot: usize,
    /// The coordinate vectors `e_j`, `j ≠ pivot`, whose images form the
    /// basis of the quotient.
    #[serde(with = "rat_vecs")]
    complement_basis: Vec<Vec<Rat>>,
    quotient_action: AdditiveProjAction,
    tautological: bool,
}

impl DescentResult {
    pub fn fixed_direction(&self) -> &[Rat] {
        &self.fixed_direction
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn complement_basis(&self) -> &[Vec<Rat>] {
        &self.complement_basis
    }

    pub fn quotient_action(&self) -> &AdditiveProjAction {
        &self.quotient_action
    }

    pub fn tautological(&self) -> bool {
        self.tautological
    }

    /// `pr : V → V/Q·v̂`, in the complement coordinates.
    pub fn project_point(&self, x: &[Rat]) -> Vec<Rat> {
        let c = &x[self.pivot];
        x.iter()
            .zip(&self.fixed_direction)
            .enumerate()
            .filter(|(j, _)| *j != self.pivot)
            .map(|(_, (xi, vi))| xi - c * vi)
            .collect()
    }

    /// The induced endomorphism of the quotient, for any `m` with
    /// `v̂·m ∈ Q·v̂`.
    pub fn project_matrix(&self, m: &QMat) -> Result<QMat> {
        let image = m.apply_right(&self.fixed_direction);
        let lambda = &image[self.pivot];
        if image
            .iter()
            .zip(&self.fixed_direction)
            .any(|(a, v)| *a != lambda * v)
        {
            return Err(Error::DirectionNotFixed(0));
        }
        let rows = (0..m.rows())
            .filter(|&j| j != self.pivot)
            .map(|j| self.project_point(m.row(j)))
            .collect();
        QMat::from_rows(rows)
    }
}

/// Pushes every `X_i` to `V / Q·v̂`; `t` must become zero there.
pub fn descend_action(h: &HeisenbergProjAction) -> Result<DescentResult> {
    let v = fixed_direction(h)?;
    let d = h.rep.d();
    let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero");
    let mut res = DescentResult {
        fixed_direction: v,
        pivot,
        complement_basis: (0..d)
            .filter(|&j| j != pivot)
            .map(|j| unit_vec(d, j))
            .collect(),
        quotient_action: AdditiveProjAction {
            generators: Vec::new(),
            reference_point: Vec::new(),
        },
        tautological: false,
    };
    let mut quotients = Vec::new();
    for (i, x) in h.rep.basis().iter().enumerate() {
        let q = res
            .project_matrix(x)
            .map_err(|_| Error::DirectionNotFixed(i))?;
        quotients.push(q);
    }
    let t_image = quotients.pop().expect("t is last");
    if !t_image.is_zero() {
        return Err(Error::InvalidAction(
            "central element acts nontrivially on the quotient".into(),
        ));
    }
    let reference = res.project_point(&h.reference_point);
    res.quotient_action = AdditiveProjAction::new(quotients, reference)?;
    res.tautological = is_tautological(&res.quotient_action);
    Ok(res)
}

/// `ker(ev)` for `ev(S) = ô·S`, as a subspace of the flattened algebra.
pub fn evaluation_kernel(loc: &LocalAlgebra, reference: &[Rat]) -> Result<Subspace> {
    let d = loc.d();
    if reference.len() != d {
        return Err(Error::dims("reference point length"));
    }
    let basis = loc.algebra().basis();
    let mut ev = QMat::zeros(d, basis.len());
    for (k, b) in basis.iter().enumerate() {
        for (i, x) in b.apply_right(reference).into_iter().enumerate() {
            ev.set(i, k, x);
        }
    }
    if crate::exact::rank(&ev) != d {
        return Err(Error::NotDense);
    }
    let ker = kernel_basis(&ev);
    Subspace::from_vectors(
        d * d,
        ker.basis().iter().map(|c| {
            let mut acc = QMat::zeros(d, d);
            for (x, b) in c.iter().zip(&basis) {
                if !x.is_zero() {
                    acc = &acc + &b.scale(x);
                }
            }
            acc.into_entries()
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::ideal_power;
    use crate::exact::{int, same_projective_point, span_close};
    use crate::heisenberg::symplectic_basis_extract;

    fn e(d: usize, i: usize, j: usize) -> QMat {
        QMat::unit(d, i - 1, j - 1)
    }

    fn jordan(m: usize) -> QMat {
        let mut j = QMat::zeros(m, m);
        for i in 0..m.saturating_sub(1) {
            j.set(i, i + 1, int(1));
        }
        j
    }

    fn truncated_polynomials(m: usize) -> LocalAlgebra {
        local_anatomy(&generate_algebra(m, &[jordan(m)]).unwrap()).unwrap()
    }

    /// Example generators for n = 1.
    fn example_rep(k: usize) -> HeisenbergMatRep {
        let d = 4;
        let x1 = if k == 0 {
            e(d, 1, 2)
        } else {
            &e(d, 1, 2) + &e(d, 2, 3)
        };
        symplectic_basis_extract(&[x1, &e(d, 1, 3) + &e(d, 2, 4), e(d, 1, 4)]).unwrap()
    }

    #[test]
    fn dual_numbers_give_translation_on_p1() {
        let act = algebra_to_action(&truncated_polynomials(2)).unwrap();
        assert_eq!(act.generators(), &[e(2, 1, 2)]);
        assert_eq!(act.reference_point(), &[int(1), int(0)]);
        // [z₀ : z₁] · exp(a E₁₂) = [z₀ : z₁ + a z₀]
        let g = act.group_element(&[int(5)]).unwrap();
        assert_eq!(g.apply_right(&[int(2), int(3)]), vec![int(2), int(13)]);
        assert!(is_tautological(&act));
    }

    #[test]
    fn scalars_give_trivial_action_on_p0() {
        let loc = local_anatomy(&generate_algebra(1, &[]).unwrap()).unwrap();
        let act = algebra_to_action(&loc).unwrap();
        assert_eq!(act.n(), 0);
        assert_eq!(act.d(), 1);
    }

    #[test]
    fn cubic_truncation_has_dense_unit_orbit() {
        let act = algebra_to_action(&truncated_polynomials(3)).unwrap();
        assert_eq!(act.n(), 2);
        let alg = generate_algebra(3, act.generators()).unwrap();
        assert_eq!(orbit_span(act.reference_point(), &alg.basis()).dim(), 3);
        assert!(!is_tautological(&act));
    }

    #[test]
    fn tautological_action_gives_square_zero_algebra() {
        for n in 1..=3 {
            let d = 2 * n + 1;
            let gens = (2..=d).map(|j| e(d, 1, j)).collect();
            let act = AdditiveProjAction::new(gens, unit_vec(d, 0)).unwrap();
            assert!(is_tautological(&act));
            let loc = action_to_algebra(&act).unwrap();
            assert_eq!(loc.dim(), 2 * n + 1);
            assert!(ideal_power(&loc, 2).is_zero());
        }
    }

    #[test]
    fn jordan_action_recovers_cubic_truncation() {
        let act =
            AdditiveProjAction::new(vec![jordan(3), jordan(3).pow(2)], unit_vec(3, 0)).unwrap();
        let loc = action_to_algebra(&act).unwrap();
        assert_eq!(loc.dim(), 3);
        assert!(!ideal_power(&loc, 2).is_zero());
        assert!(ideal_power(&loc, 3).is_zero());
    }

    #[test]
    fn single_nilpotent_on_p1() {
        let act = AdditiveProjAction::new(vec![e(2, 1, 2)], unit_vec(2, 0)).unwrap();
        assert_eq!(action_to_algebra(&act).unwrap().dim(), 2);
    }

    #[test]
    fn invalid_actions_are_rejected() {
        // not dense: e₂ is fixed
        assert!(matches!(
            AdditiveProjAction::new(vec![e(2, 1, 2)], unit_vec(2, 1)),
            Err(Error::NotDense)
        ));
        // non-commuting
        let gens = vec![e(3, 1, 2), e(3, 2, 3)];
        assert!(AdditiveProjAction::new(gens, unit_vec(3, 0)).is_err());
        // wrong count
        assert!(AdditiveProjAction::new(vec![e(3, 1, 2)], unit_vec(3, 0)).is_err());
    }

    #[test]
    fn conjugated_translations_stay_tautological() {
        let gens = vec![e(3, 1, 2), e(3, 1, 3)];
        let act = AdditiveProjAction::new(gens, unit_vec(3, 0)).unwrap();
        let p = QMat::from_i64(&[&[2, 1, 0], &[1, 1, 3], &[0, -1, 1]]);
        assert!(is_tautological(&act.conjugate(&p).unwrap()));
    }

    #[test]
    fn boundary_check_follows_the_hyperplane() {
        let h = HeisenbergProjAction::standard(example_rep(0)).unwrap();
        assert!(boundary_fixed_check(&h));
        // {last coordinate = 0} contains e₁, and e₁·t = e₄ ≠ 0.
        let last_zero = Subspace::from_vectors(4, (0..3).map(|i| unit_vec(4, i))).unwrap();
        let other = HeisenbergProjAction {
            rep: example_rep(0),
            boundary: last_zero,
            reference_point: unit_vec(4, 3),
        };
        assert!(!boundary_fixed_check(&other));
        assert!(matches!(
            fixed_direction(&other),
            Err(Error::NotBoundaryFixing)
        ));
    }

    #[test]
    fn fixed_direction_examples() {
        let h = HeisenbergProjAction::standard(example_rep(0)).unwrap();
        assert_eq!(fixed_direction(&h).unwrap(), unit_vec(4, 3));
        let scaled: Vec<Rat> = unit_vec(4, 0).iter().map(|x| x * int(7)).collect();
        assert_eq!(fixed_direction_at(&h, &scaled).unwrap(), unit_vec(4, 3));
        let shifted = vec![int(1), int(1), int(0), int(0)];
        assert!(same_projective_point(
            &fixed_direction_at(&h, &shifted).unwrap(),
            &unit_vec(4, 3)
        ));
    }

    #[test]
    fn descent_of_k0_is_translation() {
        let h = HeisenbergProjAction::standard(example_rep(0)).unwrap();
        let res = descend_action(&h).unwrap();
        assert!(res.tautological());
        assert_eq!(res.pivot(), 3);
        assert_eq!(
            res.quotient_action().generators(),
            &[e(3, 1, 2), e(3, 1, 3)]
        );
        assert!(res.project_matrix(h.rep().t()).unwrap().is_zero());
    }

    #[test]
    fn descent_of_k1_is_not_translation() {
        let h = HeisenbergProjAction::standard(example_rep(1)).unwrap();
        let res = descend_action(&h).unwrap();
        assert!(!res.tautological());
    }

    #[test]
    fn evaluation_kernels() {
        let h0 = HeisenbergProjAction::standard(example_rep(0)).unwrap();
        let loc0 = local_anatomy(&generate_algebra(4, &h0.rep().basis()).unwrap()).unwrap();
        assert!(evaluation_kernel(&loc0, h0.reference_point())
            .unwrap()
            .is_zero());

        let h1 = HeisenbergProjAction::standard(example_rep(1)).unwrap();
        let loc1 = local_anatomy(&generate_algebra(4, &h1.rep().basis()).unwrap()).unwrap();
        let ker = evaluation_kernel(&loc1, h1.reference_point()).unwrap();
        assert_eq!(ker.dim(), 1);
        // X₁² - Y₁ ∝ E₂₄ is the kernel direction (first row vanishes).
        assert_eq!(
            ker,
            span_close(&[&e(4, 1, 3) - &(&e(4, 1, 3) + &e(4, 2, 4))]).unwrap()
        );
        assert!(ker.intersection(loc1.center()).unwrap().is_zero());

        assert!(matches!(
            evaluation_kernel(&loc1, &unit_vec(4, 3)),
            Err(Error::NotDense)
        ));
    }

    #[test]
    fn json_roundtrips() {
        let h = HeisenbergProjAction::standard(example_rep(1)).unwrap();
        let back: HeisenbergProjAction =
            serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
        let act = algebra_to_action(&truncated_polynomials(3)).unwrap();
        let back: AdditiveProjAction =
            serde_json::from_str(&serde_json::to_string(&act).unwrap()).unwrap();
        assert_eq!(back, act);
        let res = serde_json::to_value(descend_action(&h).unwrap()).unwrap();
        assert_eq!(res["complement_basis"].as_array().unwrap().len(), 3);
    }
}
