//! Seeded random instances: small rational matrices, symplectic
//! transvection products, triangular changes of basis.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{frac, int, QMat, Rat};
use crate::heisenberg::standard_omega;

/// Deterministic RNG for `(seed, label, n)`; labels keep independent
/// checks from sharing a stream.
pub fn rng_for(seed: u64, label: &str, n: usize) -> ChaCha8Rng {
    // FNV-1a, so the stream does not depend on std's hasher
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes().chain(n.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// An integer in `[-bound, bound]`, occasionally halved or thirded.
pub fn small_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    let num = rng.gen_range(-bound..=bound);
    let den = *[1, 1, 1, 2, 3].choose(rng).expect("nonempty");
    frac(num, den)
}

pub fn nonzero_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let r = small_rat(rng, bound);
        if r != int(0) {
            return r;
        }
    }
}

pub fn small_vec<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rat> {
    (0..len).map(|_| small_rat(rng, bound)).collect()
}

pub fn symmetric<R: Rng>(rng: &mut R, m: usize, bound: i64) -> QMat {
    let mut s = QMat::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = small_rat(rng, bound);
            s.set(i, j, v.clone());
            s.set(j, i, v);
        }
    }
    s
}

/// The symplectic transvection `I + c·u·uᵗ·Ω`.
pub fn transvection(u: &[Rat], c: &Rat) -> QMat {
    let m = u.len();
    let omega = standard_omega(m / 2);
    let col = QMat::column(u);
    &QMat::identity(m) + &(&(&col * &col.transpose()) * &omega).scale(c)
}

/// A product of `steps` random transvections; always in `Sp(Ω)`.
pub fn symplectic<R: Rng>(rng: &mut R, n: usize, steps: usize) -> QMat {
    let m = 2 * n;
    let mut acc = QMat::identity(m);
    for _ in 0..steps {
        let u: Vec<Rat> = (0..m).map(|_| int(rng.gen_range(-1..=1))).collect();
        let c = nonzero_rat(rng, 2);
        acc = &acc * &transvection(&u, &c);
    }
    acc
}

/// Upper triangular with nonzero diagonal; preserves the strictly upper
/// triangular matrices under conjugation.
pub fn upper_triangular<R: Rng>(rng: &mut R, d: usize, bound: i64) -> QMat {
    let mut p = QMat::identity(d);
    for i in 0..d {
        p.set(i, i, nonzero_rat(rng, 2));
        for j in i + 1..d {
            p.set(i, j, small_rat(rng, bound));
        }
    }
    p
}
