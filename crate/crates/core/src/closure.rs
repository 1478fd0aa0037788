//! Unital associative subalgebras of `Mat_d(Q)` generated by matrices, and
//! the anatomy of local ones: maximal ideal, center, power filtration.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, QMat, Rat, Subspace};

/// A unital subalgebra of `Mat_d(Q)`, stored as a canonical subspace of
/// the flattened `d²`-dimensional matrix space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatAlgebra {
    d: usize,
    space: Subspace,
}

impl MatAlgebra {
    /// Wraps a spanning set, checking that it contains `I` and is closed
    /// under multiplication.
    pub fn from_spanning_set(d: usize, mats: &[QMat]) -> Result<Self> {
        check_shapes(d, mats)?;
        let space = Subspace::from_matrices(d * d, mats)?;
        let alg = MatAlgebra { d, space };
        if !alg.contains(&QMat::identity(d)) {
            return Err(Error::NotUnipotentLocal("identity is missing".into()));
        }
        alg.check_closed()?;
        Ok(alg)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// The canonical (reduced echelon) basis as matrices.
    pub fn basis(&self) -> Vec<QMat> {
        self.space.matrices(self.d, self.d)
    }

    pub fn contains(&self, m: &QMat) -> bool {
        m.shape() == (self.d, self.d) && self.space.contains_matrix(m)
    }

    pub fn is_commutative(&self) -> bool {
        let b = self.basis();
        b.iter()
            .enumerate()
            .all(|(i, x)| b[i + 1..].iter().all(|y| x.commutator(y).is_zero()))
    }

    /// Every product of basis elements lies in the span.
    pub fn check_closed(&self) -> Result<()> {
        let b = self.basis();
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if !self.contains(&(x * y)) {
                    return Err(Error::NotUnipotentLocal(format!(
                        "product of basis elements {i} and {j} leaves the span"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_shapes(d: usize, mats: &[QMat]) -> Result<()> {
    match mats.iter().find(|m| m.shape() != (d, d)) {
        Some(m) => Err(Error::dims(format!(
            "expected {d}x{d} matrices, found {:?}",
            m.shape()
        ))),
        None => Ok(()),
    }
}

/// Smallest unital subalgebra of `Mat_d(Q)` containing `generators`.
///
/// Breadth-first: each round multiplies the newly found elements with
/// everything found so far, on both sides, and keeps the products that
/// enlarge the span. Terminates because the dimension is at most `d²`.
pub fn generate_algebra(d: usize, generators: &[QMat]) -> Result<MatAlgebra> {
    check_shapes(d, generators)?;
    let id = QMat::identity(d);
    let mut space = Subspace::zero(d * d);
    space.insert(id.entries().to_vec())?;
    let mut elems = vec![id];
    let mut frontier = Vec::new();
    for g in generators {
        if space.insert(g.entries().to_vec())? {
            frontier.push(g.clone());
        }
    }
    elems.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let snapshot = elems.clone();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &snapshot {
                for p in [a * b, b * a] {
                    if space.insert(p.entries().to_vec())? {
                        next.push(p);
                    }
                }
            }
        }
        elems.extend(next.iter().cloned());
        frontier = next;
    }
    let alg = MatAlgebra { d, space };
    alg.check_closed()?;
    Ok(alg)
}

/// Coordinates with respect to an arbitrary (not echelon) ordered basis.
#[derive(Clone, Debug)]
pub struct BasisCoords {
    basis: Vec<QMat>,
    space: Subspace,
    // coords_in_basis = transition · coords_in_echelon_basis
    transition: QMat,
}

impl BasisCoords {
    pub fn new(basis: Vec<QMat>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::dims("empty basis"));
        };
        let (r, c) = first.shape();
        let space = Subspace::from_matrices(r * c, &basis)?;
        if space.dim() != basis.len() {
            return Err(Error::dims("basis elements are linearly dependent"));
        }
        // B_k = Σ_l B_k[p_l] R_l, so echelon coords c = Tᵗ y.
        let k = basis.len();
        let mut tt = QMat::zeros(k, k);
        for (row, b) in basis.iter().enumerate() {
            for (col, &p) in space.pivots().iter().enumerate() {
                tt.set(col, row, b.entries()[p].clone());
            }
        }
        let transition = tt.inverse().expect("independent basis");
        Ok(BasisCoords {
            basis,
            space,
            transition,
        })
    }

    pub fn basis(&self) -> &[QMat] {
        &self.basis
    }

    pub fn coords(&self, m: &QMat) -> Option<Vec<Rat>> {
        let c = self.space.coordinates(m.entries())?;
        Some(self.transition.apply(&c))
    }
}

/// `structure[i][j]` holds the coordinates of `b_i · b_j` in the basis.
pub fn structure_constants(basis: &[QMat]) -> Result<Vec<Vec<Vec<Rat>>>> {
    let coords = BasisCoords::new(basis.to_vec())?;
    basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| {
                    coords.coords(&(x * y)).ok_or_else(|| {
                        Error::NotUnipotentLocal("basis is not closed under products".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// `{z ∈ A : zb = bz for all b}`, the kernel of the stacked commutator system.
pub fn center(a: &MatAlgebra) -> Subspace {
    let basis = a.basis();
    let k = basis.len();
    let dd = a.d * a.d;
    if k == 0 {
        return Subspace::zero(dd);
    }
    let mut sys = QMat::zeros(k * dd, k);
    for (col, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            for (e, v) in x.commutator(y).entries().iter().enumerate() {
                if !v.is_zero() {
                    sys.set(j * dd + e, col, v.clone());
                }
            }
        }
    }
    let ker = kernel_basis(&sys);
    Subspace::from_vectors(
        dd,
        ker.basis()
            .iter()
            .map(|c| combine(&basis, c).into_entries()),
    )
    .expect("shape")
}

fn combine(basis: &[QMat], coeffs: &[Rat]) -> QMat {
    let (r, c) = basis[0].shape();
    let mut acc = QMat::zeros(r, c);
    for (b, x) in basis.iter().zip(coeffs) {
        if !x.is_zero() {
            acc = &acc + &b.scale(x);
        }
    }
    acc
}

/// A local algebra `A = Q·I ⊕ m` with nilpotent maximal ideal `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    algebra: MatAlgebra,
    maximal_ideal: Subspace,
    center: Subspace,
    /// `m, m², …` up to the last nonzero power.
    filtration: Vec<Subspace>,
}

impl LocalAlgebra {
    pub fn algebra(&self) -> &MatAlgebra {
        &self.algebra
    }

    pub fn d(&self) -> usize {
        self.algebra.d
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn maximal_ideal(&self) -> &Subspace {
        &self.maximal_ideal
    }

    pub fn maximal_ideal_basis(&self) -> Vec<QMat> {
        self.maximal_ideal.matrices(self.d(), self.d())
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    pub fn filtration(&self) -> &[Subspace] {
        &self.filtration
    }

    /// `dim m^k` for `k = 1, 2, …` up to the last nonzero power.
    pub fn filtration_profile(&self) -> Vec<usize> {
        self.filtration.iter().map(Subspace::dim).collect()
    }

    /// Smallest `k ≥ 1` with `m^k = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.filtration.len() + 1
    }

    pub fn is_commutative(&self) -> bool {
        self.center == *self.algebra.space()
    }
}

/// Splits a unipotent-type algebra into `Q·I ⊕ m`.
///
/// Each basis element `b` contributes `b - (tr b / d)·I`. The algebra is
/// local with nilpotent `m` exactly when these span a subalgebra: then
/// every element of `m` has `tr(xᵏ) = 0` for all `k`, hence is nilpotent.
pub fn local_anatomy(a: &MatAlgebra) -> Result<LocalAlgebra> {
    let d = a.d;
    let dd = Rat::from_integer((d as i64).into());
    let id = QMat::identity(d);
    let traceless: Vec<QMat> = a
        .basis()
        .iter()
        .map(|b| b - &id.scale(&(b.trace() / &dd)))
        .collect();
    let maximal_ideal = Subspace::from_matrices(d * d, &traceless)?;
    if maximal_ideal.dim() + 1 != a.dim() {
        return Err(Error::NotUnipotentLocal(
            "algebra is not Q·I plus a complement".into(),
        ));
    }
    let m_basis = maximal_ideal.matrices(d, d);
    for x in &m_basis {
        if x.pow(d as u32).is_zero() {
            continue;
        }
        return Err(Error::NotUnipotentLocal(
            "maximal ideal candidate has a non-nilpotent element".into(),
        ));
    }
    for x in &m_basis {
        for y in &m_basis {
            if !maximal_ideal.contains_matrix(&(x * y)) {
                return Err(Error::NotUnipotentLocal(
                    "traceless part is not closed under products".into(),
                ));
            }
        }
    }

    let mut filtration = Vec::new();
    let mut power = maximal_ideal.clone();
    while !power.is_zero() {
        if filtration.len() > d {
            return Err(Error::NotUnipotentLocal(
                "filtration does not terminate".into(),
            ));
        }
        let mut next = Subspace::zero(d * d);
        for x in power.matrices(d, d) {
            for y in &m_basis {
                next.insert((&x * y).into_entries())?;
            }
        }
        filtration.push(power);
        power = next;
    }

    Ok(LocalAlgebra {
        center: center(a),
        algebra: a.clone(),
        maximal_ideal,
        filtration,
    })
}

/// `m^k`; `m^0` is the whole algebra.
pub fn ideal_power(loc: &LocalAlgebra, k: usize) -> Subspace {
    match k {
        0 => loc.algebra.space.clone(),
        k => loc
            .filtration
            .get(k - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(loc.d() * loc.d())),
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    d: usize,
    basis: Vec<QMat>,
}

impl Serialize for MatAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraDoc {
            d: self.d,
            basis: self.basis(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = AlgebraDoc::deserialize(de)?;
        MatAlgebra::from_spanning_set(doc.d, &doc.basis).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize)]
struct LocalDoc {
    d: usize,
    basis: Vec<QMat>,
    maximal_ideal: Vec<QMat>,
    center: Vec<QMat>,
    filtration: Vec<Vec<QMat>>,
}

impl Serialize for LocalAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.d();
        LocalDoc {
            d,
            basis: self.algebra.basis(),
            maximal_ideal: self.maximal_ideal.matrices(d, d),
            center: self.center.matrices(d, d),
            filtration: self.filtration.iter().map(|p| p.matrices(d, d)).collect(),
        }
        .serialize(s)
    }
}
