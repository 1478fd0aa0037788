use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{
    associated_algebra, build_example, certify_family, default_labels, example_generators,
    truncated_bivariate, truncated_polynomials, FamilyCertificate,
};
use crate::closure::{generate_algebra, ideal_power, structure_constants, LocalAlgebra};
use crate::correspondence::{
    action_to_algebra, algebra_to_action, boundary_fixed_check, descend_action, evaluation_kernel,
    fixed_direction, fixed_direction_at, HeisenbergProjAction,
};
use crate::error::Result;
use crate::exact::{int, same_projective_point, span_close, Poly, QMat, Rat};
use crate::heisenberg::{
    exp_nilpotent, group_mul, standard_omega, symplectic_basis_extract, HeisenbergElement,
    SymplecticSpace,
};
use crate::par::Exec;
use crate::random::{nonzero_rat, small_rat, small_vec, symmetric, symplectic, upper_triangular};
use crate::tautological::{
    algebra_from_structure_matrix, certify_inequivalent, equivalence_witness,
    extract_structure_matrix, realize_action, symplectic_invariant, transvection_moves,
    StructureMatrix, Verdict,
};

pub enum Outcome {
    Pass(Value),
    Fail(Value),
    Inconclusive(Value),
}

pub struct Check {
    pub name: &'static str,
    pub instance: fn(usize) -> String,
    pub run: fn(usize, &mut ChaCha8Rng) -> Result<Outcome>,
}

macro_rules! fail {
    ($($w:tt)+) => {
        return Ok(Outcome::Fail(json!($($w)+)))
    };
}

fn rats(v: &[Rat]) -> Value {
    v.iter().map(|x| x.to_string()).collect()
}

fn mat(m: &QMat) -> Value {
    serde_json::to_value(m).expect("matrix")
}

fn element_json(g: &HeisenbergElement) -> Value {
    json!({ "w": rats(&g.w), "t": g.t.to_string() })
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> HeisenbergElement {
    HeisenbergElement::new(small_vec(rng, 2 * n, 3), small_rat(rng, 3))
}

/// A random tautological structure in random triangular coordinates.
fn random_tautological(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Result<(StructureMatrix, HeisenbergProjAction)> {
    let sm = StructureMatrix::from_symmetric(&symmetric(rng, 2 * n, 3))?;
    let p = upper_triangular(rng, 2 * n + 2, 2);
    let h = realize_action(&sm)?.conjugate(&p)?;
    Ok((sm, h))
}

/// Examples `k = 0..=n` followed by `extra` random tautological structures.
fn instances(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
) -> Result<Vec<(String, HeisenbergProjAction)>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.push((format!("example(n={n}, k={k})"), build_example(n, k)?));
    }
    for i in 0..extra {
        out.push((
            format!("random tautological #{i}"),
            random_tautological(rng, n)?.1,
        ));
    }
    Ok(out)
}

fn example_dims(n: usize) -> Result<Vec<usize>> {
    (0..=n)
        .map(|k| Ok(associated_algebra(&build_example(n, k)?)?.dim()))
        .collect()
}

fn heisenberg_relations(n: usize, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let d = 2 * n + 2;
    let t_line = span_close(&[QMat::unit(d, 0, d - 1)])?;
    for k in 0..=n {
        let gens = example_generators(n, k)?;
        let brackets: Vec<QMat> = gens
            .iter()
            .flat_map(|a| gens.iter().map(move |b| a.commutator(b)))
            .collect();
        let derived = span_close(&brackets)?;
        if derived != t_line {
            fail!({ "k": k, "derived_dim": derived.dim() });
        }
        let rep = symplectic_basis_extract(&gens)?;
        let table = rep.bracket_table()?;
        if table != standard_omega(n) {
            fail!({ "k": k, "bracket_table": mat(&table) });
        }
        if let Some(i) = rep
            .x()
            .iter()
            .position(|x| !x.commutator(rep.t()).is_zero())
        {
            fail!({ "k": k, "noncentral": i });
        }
    }
    Ok(Outcome::Pass(json!({ "examples": n + 1 })))
}

fn group_law_associativity(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let sp = SymplecticSpace::standard(n);
    let rep = build_example(n, n)?.rep().clone();
    let trials = 20;
    for _ in 0..trials {
        let (a, b, c) = (
            random_element(rng, n),
            random_element(rng, n),
            random_element(rng, n),
        );
        let left = group_mul(&group_mul(&a, &b, &sp)?, &c, &sp)?;
        let right = group_mul(&a, &group_mul(&b, &c, &sp)?, &sp)?;
        if left != right {
            fail!({ "a": element_json(&a), "b": element_json(&b), "c": element_json(&c) });
        }
        if group_mul(&a, &a.inverse(), &sp)? != HeisenbergElement::identity(n) {
            fail!({ "inverse": element_json(&a) });
        }
        let ab = group_mul(&a, &b, &sp)?;
        if &rep.group_element(&a)? * &rep.group_element(&b)? != rep.group_element(&ab)? {
            fail!({ "homomorphism": [element_json(&a), element_json(&b)] });
        }
    }
    Ok(Outcome::Pass(json!({ "triples": trials })))
}

fn algebra_closure_soundness(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let insts = instances(rng, n, 3)?;
    for (name, h) in &insts {
        let alg = generate_algebra(h.rep().d(), &h.rep().basis())?;
        if !alg.contains(&QMat::identity(alg.d())) {
            fail!({ "instance": name, "missing": "identity" });
        }
        let basis = alg.basis();
        let sc = structure_constants(&basis)?;
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let mut acc = QMat::zeros(alg.d(), alg.d());
                for (c, b) in sc[i][j].iter().zip(&basis) {
                    acc = &acc + &b.scale(c);
                }
                if acc != x * y {
                    fail!({ "instance": name, "i": i, "j": j });
                }
            }
        }
    }
    Ok(Outcome::Pass(json!({ "algebras": insts.len() })))
}

fn example_dimension(n: usize, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let dims = example_dims(n)?;
    let expected: Vec<usize> = (0..=n).map(|k| 2 * n + 2 + k).collect();
    let w = json!({ "dims": dims, "expected": expected });
    Ok(if dims == expected {
        Outcome::Pass(w)
    } else {
        Outcome::Fail(w)
    })
}

fn dim_bounds(n: usize, _: &mut ChaCha8Rng) -> Result<Outcome> {
    for k in 0..=n {
        if !boundary_fixed_check(&build_example(n, k)?) {
            fail!({ "k": k, "boundary_fixed": false });
        }
    }
    let dims = example_dims(n)?;
    let (lo, hi) = (2 * n + 2, 3 * n + 2);
    let w = json!({ "dims": dims, "lower": lo, "upper": hi });
    let within = dims.iter().all(|d| (lo..=hi).contains(d));
    let attained = dims.contains(&lo) && dims.contains(&hi);
    Ok(if within && attained {
        Outcome::Pass(w)
    } else {
        Outcome::Fail(w)
    })
}

fn t_kills_ideal(h: &HeisenbergProjAction, loc: &LocalAlgebra) -> bool {
    let t = h.rep().t();
    loc.maximal_ideal_basis()
        .iter()
        .all(|x| (t * x).is_zero() && (x * t).is_zero())
}

fn lemma_center(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let insts = instances(rng, n, 5)?;
    let mut applicable = 0;
    for (name, h) in &insts {
        let loc = associated_algebra(h)?;
        if !t_kills_ideal(h, &loc) {
            continue;
        }
        applicable += 1;
        let m2 = ideal_power(&loc, 2);
        if !m2.is_subspace_of(loc.center()) {
            fail!({ "instance": name, "m2_dim": m2.dim(), "center_dim": loc.center().dim() });
        }
    }
    Ok(Outcome::Pass(
        json!({ "instances": insts.len(), "hypothesis_held": applicable }),
    ))
}

fn lemma_kernel_ev(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut dims = Vec::new();
    for (idx, (name, h)) in instances(rng, n, 5)?.iter().enumerate() {
        let loc = associated_algebra(h)?;
        let ker = evaluation_kernel(&loc, h.reference_point())?;
        let meet = ker.intersection(loc.center())?;
        // examples come first, with ker(ev) of dimension k
        let expected = if idx <= n { idx } else { 0 };
        if !meet.is_zero() || ker.dim() > n || ker.dim() != expected {
            fail!({ "instance": name, "kernel_dim": ker.dim(), "kernel_meets_center": meet.dim() });
        }
        dims.push(ker.dim());
    }
    Ok(Outcome::Pass(json!({ "kernel_dims": dims })))
}

fn fixed_direction_independence(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let insts = instances(rng, n, 2)?;
    for (name, h) in &insts {
        let v = fixed_direction(h)?;
        for _ in 0..20 {
            let g = h.rep().group_element(&random_element(rng, n))?;
            let c = nonzero_rat(rng, 3);
            let moved: Vec<Rat> = g
                .apply_right(h.reference_point())
                .iter()
                .map(|x| x * &c)
                .collect();
            let shifted: Vec<Rat> =
                h.boundary()
                    .basis()
                    .iter()
                    .fold(h.reference_point().to_vec(), |acc, b| {
                        let s = small_rat(rng, 3);
                        acc.iter().zip(b).map(|(x, y)| x + &s * y).collect()
                    });
            for o in [moved, shifted] {
                let w = fixed_direction_at(h, &o)?;
                if !same_projective_point(&w, &v) {
                    fail!({ "instance": name, "reference": rats(&o), "direction": rats(&w), "expected": rats(&v) });
                }
            }
        }
    }
    Ok(Outcome::Pass(
        json!({ "instances": insts.len(), "references_per_instance": 40 }),
    ))
}

fn central_triviality(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let insts = instances(rng, n, 2)?;
    for (name, h) in &insts {
        let res = descend_action(h)?;
        let t = h.rep().t();
        if !res.project_matrix(t)?.is_zero() {
            fail!({ "instance": name, "t_image": mat(&res.project_matrix(t)?) });
        }
        for _ in 0..5 {
            let s = nonzero_rat(rng, 5);
            let g = exp_nilpotent(&t.scale(&s))?;
            if !res.project_matrix(&g)?.is_identity() {
                fail!({ "instance": name, "s": s.to_string() });
            }
        }
    }
    Ok(Outcome::Pass(json!({ "instances": insts.len() })))
}

fn descent_diagram(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let insts = instances(rng, n, 2)?;
    let d = 2 * n + 2;
    for (name, h) in &insts {
        let res = descend_action(h)?;
        for _ in 0..20 {
            let elt = random_element(rng, n);
            let g = h.rep().group_element(&elt)?;
            let theta = res.project_matrix(&g)?;
            if theta != res.quotient_action().group_element(&elt.w)? {
                fail!({ "instance": name, "element": element_json(&elt), "theta": mat(&theta) });
            }
            let p = loop {
                let p = small_vec(rng, d, 4);
                if res.project_point(&p).iter().any(|x| !x.is_zero()) {
                    break p;
                }
            };
            let lhs = res.project_point(&g.apply_right(&p));
            let rhs = theta.apply_right(&res.project_point(&p));
            if lhs != rhs {
                fail!({ "instance": name, "element": element_json(&elt), "point": rats(&p) });
            }
        }
    }
    Ok(Outcome::Pass(
        json!({ "instances": insts.len(), "pairs_per_instance": 20 }),
    ))
}

fn taut_iff_dim(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut rows = Vec::new();
    for (idx, (name, h)) in instances(rng, n, 3)?.iter().enumerate() {
        let loc = associated_algebra(h)?;
        let taut = descend_action(h)?.tautological();
        let expect_taut = idx == 0 || idx > n;
        if (loc.dim() == 2 * n + 2) != taut || taut != expect_taut {
            fail!({ "instance": name, "dim": loc.dim(), "tautological": taut });
        }
        if taut && !evaluation_kernel(&loc, h.reference_point())?.is_zero() {
            fail!({ "instance": name, "kernel": "nonzero" });
        }
        rows.push(json!({ "instance": name, "dim": loc.dim(), "tautological": taut }));
    }
    Ok(Outcome::Pass(Value::Array(rows)))
}

fn structure_roundtrip(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let count = 100;
    for _ in 0..count {
        let sm = StructureMatrix::from_symmetric(&symmetric(rng, 2 * n, 4))?;
        let (rep, loc) = algebra_from_structure_matrix(&sm)?;
        for i in 0..2 * n {
            for j in 0..2 * n {
                if &rep.x()[i] * &rep.x()[j] != rep.t().scale(sm.matrix().get(i, j)) {
                    fail!({ "M": mat(sm.matrix()), "i": i, "j": j });
                }
            }
        }
        let back = extract_structure_matrix(&loc, &rep)?;
        if back != sm {
            fail!({ "M": mat(sm.matrix()), "extracted": mat(back.matrix()) });
        }
    }
    Ok(Outcome::Pass(json!({ "matrices": count })))
}

fn f_bijection(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let count = 100;
    let m = 2 * n;
    let omega = standard_omega(n);
    for _ in 0..count {
        let s = symmetric(rng, m, 4);
        if StructureMatrix::from_symmetric(&s)?.symmetric_part() != s {
            fail!({ "N": mat(&s) });
        }
        // An arbitrary M with M − Mᵗ = Ω, built entrywise.
        let mut raw = QMat::zeros(m, m);
        for i in 0..m {
            raw.set(i, i, small_rat(rng, 4));
            for j in i + 1..m {
                let a = small_rat(rng, 4);
                raw.set(j, i, &a - omega.get(i, j));
                raw.set(i, j, a);
            }
        }
        let sm = StructureMatrix::new(raw)?;
        if StructureMatrix::from_symmetric(&sm.symmetric_part())? != sm {
            fail!({ "M": mat(sm.matrix()) });
        }
    }
    Ok(Outcome::Pass(json!({ "instances": count })))
}

fn invariance_oracle(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let omega = standard_omega(n);
    for _ in 0..100 {
        let sm = StructureMatrix::from_symmetric(&symmetric(rng, 2 * n, 3))?;
        let steps = rng.gen_range(1..=6);
        let c = symplectic(rng, n, steps);
        if &(&c * &omega) * &c.transpose() != omega {
            fail!({ "not_symplectic": mat(&c) });
        }
        let moved = sm.congruent(&c)?;
        if symplectic_invariant(&moved) != symplectic_invariant(&sm) {
            fail!({ "M": mat(sm.matrix()), "C": mat(&c) });
        }
        if certify_inequivalent(&sm, &moved)?.verdict != Verdict::Undistinguished {
            fail!({ "planted": mat(&c), "M": mat(sm.matrix()) });
        }
    }
    for _ in 0..20 {
        let k = nonzero_rat(rng, 4);
        let m2 = StructureMatrix::from_symmetric(&symmetric(rng, 2 * n, 3))?;
        let mut diag = vec![k.clone(); n];
        diag.extend(vec![int(1); n]);
        let c = &QMat::diagonal(&diag) * &symplectic(rng, n, 4);
        let m1 =
            StructureMatrix::new((&(&c * m2.matrix()) * &c.transpose()).scale(&(Rat::one() / &k)))?;
        if symplectic_invariant(&m1) != symplectic_invariant(&m2) {
            fail!({ "k": k.to_string(), "C": mat(&c), "M": mat(m2.matrix()) });
        }
    }
    let moves = transvection_moves(n);
    let mut missed = 0;
    for _ in 0..10 {
        let a = StructureMatrix::from_symmetric(&symmetric(rng, 2 * n, 3))?;
        let t = moves.choose(rng).expect("moves");
        let b = a.congruent(t)?;
        match equivalence_witness(&a, &b, 20_000) {
            Some(w) if *a.matrix() == &(&w * b.matrix()) * &w.transpose() => {}
            Some(w) => fail!({ "bad_witness": mat(&w) }),
            None => missed += 1,
        }
    }
    let w = json!({ "congruences": 100, "conformal": 20, "planted": 10, "witness_search_exhausted": missed });
    Ok(if missed > 0 {
        Outcome::Inconclusive(w)
    } else {
        Outcome::Pass(w)
    })
}

/// `(x² + λ²)ⁿ` with descending coefficients.
fn family_invariant(n: usize, label: &Rat) -> Poly {
    Poly::new(vec![int(1), int(0), label * label]).pow(n as u32)
}

fn family_certification(n: usize, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let labels = default_labels(20);
    let fam = certify_family(n, &labels, Exec::Sequential)?;
    let parsed: FamilyCertificate = serde_json::from_str(&serde_json::to_string(&fam)?)?;
    parsed.verify()?;
    for m in &parsed.members {
        if m.invariant != family_invariant(n, &m.label) {
            fail!({ "label": m.label.to_string(), "invariant": m.invariant.to_string() });
        }
    }
    Ok(Outcome::Pass(
        json!({ "labels": labels.len(), "certificates": parsed.certificates.len() }),
    ))
}

fn ht_algebras() -> Result<Vec<(String, LocalAlgebra)>> {
    let mut out = Vec::new();
    for m in 1..=5 {
        out.push((format!("Q[x]/(x^{m})"), truncated_polynomials(m)?));
    }
    for (a, b) in [(2, 2), (2, 3), (3, 2)] {
        out.push((format!("Q[x,y]/(x^{a}, y^{b})"), truncated_bivariate(a, b)?));
    }
    Ok(out)
}

fn ht_roundtrip(_: usize, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut rows = Vec::new();
    for (name, loc) in ht_algebras()? {
        let act = algebra_to_action(&loc)?;
        let back = action_to_algebra(&act)?;
        let mut before = vec![QMat::identity(loc.d())];
        before.extend(loc.maximal_ideal_basis());
        let mut after = vec![QMat::identity(act.d())];
        after.extend(act.generators().iter().cloned());
        let same_constants = structure_constants(&before)? == structure_constants(&after)?;
        if back.dim() != loc.dim()
            || back.filtration_profile() != loc.filtration_profile()
            || !same_constants
        {
            fail!({
                "algebra": name,
                "dims": [loc.dim(), back.dim()],
                "profiles": [loc.filtration_profile(), back.filtration_profile()],
                "structure_constants_match": same_constants,
            });
        }
        rows.push(
            json!({ "algebra": name, "dim": loc.dim(), "profile": loc.filtration_profile() }),
        );
    }
    Ok(Outcome::Pass(Value::Array(rows)))
}

fn ht_remark(n: usize, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let b = truncated_polynomials(2 * n + 1)?;
    let top = ideal_power(&b, 2 * n);
    if top.is_zero() || !ideal_power(&b, 2 * n + 1).is_zero() {
        fail!({ "target_profile": b.filtration_profile() });
    }
    let mut profiles = Vec::new();
    for k in 0..=n {
        let loc = associated_algebra(&build_example(n, k)?)?;
        if !ideal_power(&loc, n + 3).is_zero() || ideal_power(&loc, 2).dim() > n + 1 {
            fail!({ "k": k, "profile": loc.filtration_profile() });
        }
        profiles.push(loc.filtration_profile());
    }
    let conclusion = if 2 * n >= n + 3 {
        format!(
            "no Heisenberg preimage possible: m^{} = 0 bound, target has m^{} ≠ 0",
            n + 3,
            2 * n
        )
    } else {
        format!("bound not decisive: 2n = {} < n+3 = {}", 2 * n, n + 3)
    };
    Ok(Outcome::Pass(json!({
        "target": format!("Q[x]/(x^{})", 2 * n + 1),
        "target_profile": b.filtration_profile(),
        "example_profiles": profiles,
        "conclusion": conclusion,
    })))
}

pub static CHECKS: &[Check] = &[
    Check {
        name: "heisenberg-relations",
        instance: |n| format!("example generators, n={n}, 0 ≤ k ≤ n"),
        run: heisenberg_relations,
    },
    Check {
        name: "group-law-associativity",
        instance: |n| format!("20 random triples in H_{}", 2 * n + 1),
        run: group_law_associativity,
    },
    Check {
        name: "algebra-closure-soundness",
        instance: |n| format!("examples and 3 random tautological algebras, n={n}"),
        run: algebra_closure_soundness,
    },
    Check {
        name: "example-dimension",
        instance: |n| format!("dim of example algebras, n={n}"),
        run: example_dimension,
    },
    Check {
        name: "dim-bounds",
        instance: |n| format!("2n+2 ≤ dim ≤ 3n+2 over examples, n={n}"),
        run: dim_bounds,
    },
    Check {
        name: "lemma-center",
        instance: |n| format!("m² ⊆ center, examples and 5 random, n={n}"),
        run: lemma_center,
    },
    Check {
        name: "lemma-kernel-ev",
        instance: |n| format!("ker(ev) ∩ center = 0, examples and 5 random, n={n}"),
        run: lemma_kernel_ev,
    },
    Check {
        name: "fixed-direction-independence",
        instance: |n| format!("40 reference points per instance, n={n}"),
        run: fixed_direction_independence,
    },
    Check {
        name: "central-triviality-on-quotient",
        instance: |n| format!("image of exp(st) on the quotient, n={n}"),
        run: central_triviality,
    },
    Check {
        name: "descent-diagram",
        instance: |n| format!("20 random (g, p) per instance, n={n}"),
        run: descent_diagram,
    },
    Check {
        name: "taut-iff-dim",
        instance: |n| format!("dim = 2n+2 iff tautological descent, n={n}"),
        run: taut_iff_dim,
    },
    Check {
        name: "structure-roundtrip",
        instance: |n| format!("100 random structure matrices, n={n}"),
        run: structure_roundtrip,
    },
    Check {
        name: "F-bijection",
        instance: |n| format!("100 random N and M, n={n}"),
        run: f_bijection,
    },
    Check {
        name: "invariance-oracle",
        instance: |n| format!("100 symplectic and 20 conformal congruences, n={n}"),
        run: invariance_oracle,
    },
    Check {
        name: "family-certification",
        instance: |n| format!("labels 1..20, n={n}"),
        run: family_certification,
    },
    Check {
        name: "ht-roundtrip",
        instance: |_| "Q[x]/(x^m), m ≤ 5, and Q[x,y]/(x^a, y^b), ab ≤ 6".to_string(),
        run: ht_roundtrip,
    },
    Check {
        name: "ht-remark",
        instance: |n| format!("Q[x]/(x^{}) against example algebras, n={n}", 2 * n + 1),
        run: ht_remark,
    },
];
