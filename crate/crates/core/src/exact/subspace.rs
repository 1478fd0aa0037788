use num_traits::{One, Zero};

use super::{is_zero_vec, QMat, Rat};
use crate::error::{Error, Result};

/// A linear subspace of `Q^ambient_dim`, stored as a fully reduced row
/// echelon basis. Equal subspaces always have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut s = Self::zero(ambient_dim);
        for i in 0..ambient_dim {
            s.insert(super::unit_vec(ambient_dim, i)).expect("length");
        }
        s
    }

    pub fn from_vectors<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rat>>,
    {
        let mut s = Self::zero(ambient_dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Span of flattened matrices of a common shape.
    pub fn from_matrices<'a, I>(ambient_dim: usize, mats: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a QMat>,
    {
        let mut s = Self::zero(ambient_dim);
        for m in mats {
            s.insert(m.entries().to_vec())?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors reshaped as `rows x cols` matrices.
    pub fn matrices(&self, rows: usize, cols: usize) -> Vec<QMat> {
        assert_eq!(rows * cols, self.ambient_dim, "reshape");
        self.basis
            .iter()
            .map(|v| QMat::from_flat(rows, cols, v).expect("length"))
            .collect()
    }

    fn check_len(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::dims(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.ambient_dim && is_zero_vec(&self.reduce(v))
    }

    pub fn contains_matrix(&self, m: &QMat) -> bool {
        self.contains(m.entries())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    /// For a reduced echelon basis they are just the entries at the pivots.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rat>) -> Result<bool> {
        self.check_len(&v)?;
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let lead = r[p].clone();
        if !lead.is_one() {
            for x in r.iter_mut() {
                *x /= &lead;
            }
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let c = b[p].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone())?;
        }
        Ok(s)
    }

    /// `self ∩ other`, from the kernel of `[A | -B]` with `A`, `B` the bases.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dims("intersection of different ambient spaces"));
        }
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let mut sys = QMat::zeros(self.ambient_dim, a + b);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                sys.set(i, j, x.clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                sys.set(i, a + j, -x);
            }
        }
        let ker = kernel_basis(&sys);
        Subspace::from_vectors(
            self.ambient_dim,
            ker.basis.iter().map(|coeffs| {
                let mut v = vec![Rat::zero(); self.ambient_dim];
                for (c, basis_vec) in coeffs[..a].iter().zip(&self.basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(basis_vec) {
                        *x += c * y;
                    }
                }
                v
            }),
        )
    }
}

/// Canonical basis of the linear span of same-shape matrices.
pub fn span_close(vectors: &[QMat]) -> Result<Subspace> {
    let Some(first) = vectors.first() else {
        return Ok(Subspace::zero(0));
    };
    let shape = first.shape();
    if let Some(bad) = vectors.iter().find(|m| m.shape() != shape) {
        return Err(Error::dims(format!(
            "span of {:?} and {:?} matrices",
            shape,
            bad.shape()
        )));
    }
    Subspace::from_matrices(shape.0 * shape.1, vectors)
}

pub fn rank(m: &QMat) -> usize {
    Subspace::from_vectors(m.cols(), m.row_vectors())
        .expect("row length")
        .dim()
}

/// Right null space `{v : m v = 0}`.
pub fn kernel_basis(m: &QMat) -> Subspace {
    let rows = Subspace::from_vectors(m.cols(), m.row_vectors()).expect("row length");
    let pivots = rows.pivots();
    let free = (0..m.cols()).filter(|c| pivots.binary_search(c).is_err());
    let vectors: Vec<Vec<Rat>> = free
        .map(|f| {
            let mut v = vec![Rat::zero(); m.cols()];
            v[f] = Rat::one();
            for (row, &p) in rows.basis().iter().zip(pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect();
    Subspace::from_vectors(m.cols(), vectors).expect("kernel length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use proptest::prelude::*;

    fn e(d: usize, i: usize, j: usize) -> QMat {
        QMat::unit(d, i - 1, j - 1)
    }

    #[test]
    fn span_of_scalar_multiples() {
        let e12 = e(2, 1, 2);
        let s = span_close(&[e12.clone(), e12.scale(&int(2))]).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn empty_span() {
        assert_eq!(span_close(&[]).unwrap().dim(), 0);
    }

    #[test]
    fn independent_supports() {
        let a = &e(3, 1, 2) + &e(3, 2, 3);
        let s = span_close(&[a, e(3, 1, 3)]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn span_rejects_mixed_shapes() {
        assert!(span_close(&[e(2, 1, 2), e(3, 1, 2)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&QMat::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&QMat::zeros(2, 3)).dim(), 3);
        let k = kernel_basis(&QMat::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.dim(), 1);
        // Canonical form normalises the leading entry: (1, -1).
        assert_eq!(k.basis()[0], vec![int(1), int(-1)]);
    }

    #[test]
    fn coordinates_at_pivots() {
        let s = Subspace::from_vectors(
            3,
            [vec![int(1), int(2), int(0)], vec![int(0), int(1), int(1)]],
        )
        .unwrap();
        let v = vec![int(2), int(1), int(-3)];
        let c = s.coordinates(&v).unwrap();
        let rebuilt: Vec<Rat> = (0..3)
            .map(|i| s.basis().iter().zip(&c).map(|(b, x)| &b[i] * x).sum())
            .collect();
        assert_eq!(rebuilt, v);
        assert!(s.coordinates(&[int(0), int(0), int(1)]).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(
            3,
            [vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]],
        )
        .unwrap();
        let b = Subspace::from_vectors(
            3,
            [vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]],
        )
        .unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.basis(), &[vec![int(0), int(1), int(0)]]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMat> {
        proptest::collection::vec(
            prop_oneof![3 => Just(int(0)), 2 => small_rat()],
            rows * cols,
        )
        .prop_map(move |e| QMat::new(rows, cols, e).unwrap())
    }

    proptest! {
        #[test]
        fn rank_nullity_random(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.cols());
            for v in k.basis() {
                prop_assert!(is_zero_vec(&m.apply(v)));
            }
        }

        #[test]
        fn span_is_order_independent_and_idempotent(
            mats in proptest::collection::vec(matrix(2, 3), 0..6),
        ) {
            prop_assume!(!mats.is_empty());
            let s = span_close(&mats).unwrap();
            let mut rev = mats.clone();
            rev.reverse();
            prop_assert_eq!(&span_close(&rev).unwrap(), &s);
            let again = span_close(&s.matrices(2, 3)).unwrap();
            if s.dim() > 0 {
                prop_assert_eq!(again, s);
            }
        }
    }
}
