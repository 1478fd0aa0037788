//! The nine acceptance criteria, each printed as one PASS/FAIL line.
//!
//! Run with `cargo test -p hcompact --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use hcompact::closure::ideal_power;
use hcompact::correspondence::{
    action_to_algebra, algebra_to_action, descend_action, evaluation_kernel, fixed_direction,
    fixed_direction_at,
};
use hcompact::exact::{half, int, same_projective_point, Poly, Rat};
use hcompact::heisenberg::{standard_omega, HeisenbergElement};
use hcompact::par::Exec;
use hcompact::random::{
    nonzero_rat, rng_for, small_rat, small_vec, symmetric, symplectic, upper_triangular,
};
use hcompact::tautological::{
    algebra_from_structure_matrix, certify_inequivalent, equivalence_witness,
    extract_structure_matrix, realize_action, symplectic_invariant, transvection_moves,
    StructureMatrix, Verdict,
};
use hcompact::verify::{
    associated_algebra, build_example, certify_family, default_labels, truncated_bivariate,
    truncated_polynomials, FamilyCertificate,
};
use rand::seq::SliceRandom;

const SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn example_dims() -> Result<Vec<(usize, usize, usize)>, String> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for k in 0..=n {
            let h = build_example(n, k).map_err(e)?;
            out.push((n, k, associated_algebra(&h).map_err(e)?.dim()));
        }
    }
    Ok(out)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let dims = example_dims()?;
    let elapsed = start.elapsed();
    for &(n, k, dim) in &dims {
        ensure(dim == 2 * n + 2 + k, || format!("n={n} k={k}: dim {dim}"))?;
    }
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} instances, {:.2?}", dims.len(), elapsed))
}

fn criterion_2() -> Outcome {
    let dims = example_dims()?;
    for n in 1..=4 {
        let (lo, hi) = (2 * n + 2, 3 * n + 2);
        let ds: Vec<usize> = dims.iter().filter(|d| d.0 == n).map(|d| d.2).collect();
        ensure(ds.iter().all(|d| (lo..=hi).contains(d)), || {
            format!("n={n}: {ds:?}")
        })?;
        ensure(ds.contains(&lo) && ds.contains(&hi), || {
            format!("n={n}: endpoints {lo}, {hi} not both attained in {ds:?}")
        })?;
    }
    Ok("bounds hold and both endpoints attained for n ≤ 4".into())
}

fn criterion_3() -> Outcome {
    for n in 1..=4 {
        for k in 0..=n {
            let h = build_example(n, k).map_err(e)?;
            let taut = descend_action(&h).map_err(e)?.tautological();
            ensure(taut == (k == 0), || {
                format!("n={n} k={k}: tautological={taut}")
            })?;
            if k == 0 {
                let loc = associated_algebra(&h).map_err(e)?;
                ensure(loc.dim() == 2 * n + 2, || {
                    format!("n={n}: dim {}", loc.dim())
                })?;
                let ker = evaluation_kernel(&loc, h.reference_point()).map_err(e)?;
                ensure(ker.is_zero(), || {
                    format!("n={n}: ker(ev) has dim {}", ker.dim())
                })?;
            }
        }
    }
    Ok("k = 0 tautological with ker(ev) = 0; k ≥ 1 not tautological".into())
}

fn random_element(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> HeisenbergElement {
    HeisenbergElement::new(small_vec(rng, 2 * n, 3), small_rat(rng, 3))
}

fn lemma_suite_instance(n: usize, i: usize) -> Result<(), String> {
    let mut rng = rng_for(SEED, &format!("acceptance-4-{i}"), n);
    let rng = &mut rng;
    let sm = StructureMatrix::from_symmetric(&symmetric(rng, 2 * n, 3)).map_err(e)?;
    let p = upper_triangular(rng, 2 * n + 2, 2);
    let h = realize_action(&sm).map_err(e)?.conjugate(&p).map_err(e)?;
    let loc = associated_algebra(&h).map_err(e)?;
    let t = h.rep().t();
    ensure(loc.dim() == 2 * n + 2, || "not tautological".into())?;

    let m = loc.maximal_ideal_basis();
    let hypothesis = m.iter().all(|x| (t * x).is_zero() && (x * t).is_zero());
    ensure(hypothesis, || {
        "t·m = m·t = 0 fails on a tautological algebra".into()
    })?;
    ensure(ideal_power(&loc, 2).is_subspace_of(loc.center()), || {
        "m² ⊄ C(A)".into()
    })?;

    let ker = evaluation_kernel(&loc, h.reference_point()).map_err(e)?;
    ensure(ker.intersection(loc.center()).map_err(e)?.is_zero(), || {
        "ker(ev) ∩ C(A) ≠ 0".into()
    })?;

    let v = fixed_direction(&h).map_err(e)?;
    for _ in 0..20 {
        let g = h.rep().group_element(&random_element(rng, n)).map_err(e)?;
        let c = nonzero_rat(rng, 3);
        let o: Vec<Rat> = g
            .apply_right(h.reference_point())
            .iter()
            .map(|x| x * &c)
            .collect();
        let w = fixed_direction_at(&h, &o).map_err(e)?;
        ensure(same_projective_point(&v, &w), || {
            "fixed direction moved".into()
        })?;
    }

    let res = descend_action(&h).map_err(e)?;
    for _ in 0..20 {
        let g = h.rep().group_element(&random_element(rng, n)).map_err(e)?;
        let theta = res.project_matrix(&g).map_err(e)?;
        let pt = loop {
            let pt = small_vec(rng, 2 * n + 2, 4);
            if !same_projective_point(&pt, &v) && pt.iter().any(|x| *x != int(0)) {
                break pt;
            }
        };
        let lhs = res.project_point(&g.apply_right(&pt));
        let rhs = theta.apply_right(&res.project_point(&pt));
        ensure(lhs == rhs, || "descent diagram does not commute".into())?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for n in 1..=3 {
        let results = Exec::default().map_range(50, |i| lemma_suite_instance(n, i));
        for (i, r) in results.into_iter().enumerate() {
            r.map_err(|m| format!("n={n} instance {i}: {m}"))?;
        }
    }
    Ok("150 random tautological algebras, 20 references and 20 (g, p) pairs each".into())
}

fn criterion_5() -> Outcome {
    for n in 1..=3 {
        let mut rng = rng_for(SEED, "acceptance-5", n);
        for _ in 0..100 {
            let sm = StructureMatrix::from_symmetric(&symmetric(&mut rng, 2 * n, 4)).map_err(e)?;
            let (rep, loc) = algebra_from_structure_matrix(&sm).map_err(e)?;
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let lhs = &rep.x()[i] * &rep.x()[j];
                    ensure(lhs == rep.t().scale(sm.matrix().get(i, j)), || {
                        format!("n={n}: X{i} X{j} ≠ a_ij t")
                    })?;
                }
            }
            let back = extract_structure_matrix(&loc, &rep).map_err(e)?;
            ensure(back == sm, || format!("n={n}: round trip changed M"))?;
        }
    }
    Ok("300 structure matrices recovered bit-exactly".into())
}

fn criterion_6() -> Outcome {
    let mut planted = 0;
    for n in 1..=3 {
        let mut rng = rng_for(SEED, "acceptance-6", n);
        let omega = standard_omega(n);
        let moves = transvection_moves(n);
        for i in 0..100 {
            let sm = StructureMatrix::from_symmetric(&symmetric(&mut rng, 2 * n, 3)).map_err(e)?;
            let c = symplectic(&mut rng, n, 5);
            ensure(&(&c * &omega) * &c.transpose() == omega, || {
                "C not symplectic".into()
            })?;
            let moved = sm.congruent(&c).map_err(e)?;
            ensure(
                symplectic_invariant(&moved) == symplectic_invariant(&sm),
                || format!("n={n}: invariant changed"),
            )?;
            let cert = certify_inequivalent(&sm, &moved).map_err(e)?;
            ensure(cert.verdict != Verdict::Inequivalent, || {
                format!("n={n}: planted congruence certified inequivalent")
            })?;
            if i % 10 == 0 {
                let t = moves.choose(&mut rng).expect("moves");
                let b = sm.congruent(t).map_err(e)?;
                let w = equivalence_witness(&sm, &b, 20_000)
                    .ok_or_else(|| format!("n={n}: planted transvection not recovered"))?;
                ensure(*sm.matrix() == &(&w * b.matrix()) * &w.transpose(), || {
                    "bad witness".into()
                })?;
                planted += 1;
            }
        }
    }
    Ok(format!(
        "300 congruences, {planted} planted witnesses recovered"
    ))
}

/// `(x² + λ²)ⁿ` by the binomial theorem: coefficient of `x^{2(n-j)}` is
/// `C(n, j) λ^{2j}`.
fn family_oracle(n: usize, label: &Rat) -> Vec<Rat> {
    let mut coeffs = vec![int(0); 2 * n + 1];
    let mut binom = int(1);
    let sq = label * label;
    let mut pow = int(1);
    for j in 0..=n {
        coeffs[2 * j] = &binom * &pow;
        binom = binom * int((n - j) as i64) / int(j as i64 + 1);
        pow = &pow * &sq;
    }
    coeffs
}

fn criterion_7() -> Outcome {
    let mut times = Vec::new();
    for n in 1..=3 {
        let start = Instant::now();
        let fam = certify_family(n, &default_labels(20), Exec::default()).map_err(e)?;
        let text = serde_json::to_string(&fam).map_err(e)?;
        let parsed: FamilyCertificate = serde_json::from_str(&text).map_err(e)?;
        ensure(parsed.certificates.len() == 190, || {
            format!("n={n}: {}", parsed.certificates.len())
        })?;
        for c in &parsed.certificates {
            c.verify().map_err(|err| format!("n={n}: {err}"))?;
            ensure(c.verdict == Verdict::Inequivalent, || {
                format!("n={n}: undistinguished pair")
            })?;
        }
        for m in &parsed.members {
            ensure(m.invariant == Poly::new(family_oracle(n, &m.label)), || {
                format!("n={n}: invariant of λ={} is {}", m.label, m.invariant)
            })?;
        }
        parsed.verify().map_err(e)?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(30), || {
            format!("n={n} took {elapsed:?}")
        })?;
        times.push(format!("n={n} {elapsed:.2?}"));
    }
    Ok(format!(
        "190 certificates per n re-verified from JSON ({})",
        times.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = rng_for(SEED, "acceptance-8", 0);
    for i in 0..100 {
        let n = 1 + i % 3;
        let nmat = symmetric(&mut rng, 2 * n, 5);
        let m = StructureMatrix::from_symmetric(&nmat).map_err(e)?;
        ensure(m.symmetric_part() == nmat, || "S(N + Ω/2) ≠ N".into())?;
        let half_omega = standard_omega(n).scale(&half());
        ensure(&m.symmetric_part() + &half_omega == *m.matrix(), || {
            "S(M) + Ω/2 ≠ M".into()
        })?;
    }
    Ok("100 instances, both directions".into())
}

/// `dim m^k` for `Q[x,y]/(x^a, y^b)`: monomials `x^i y^j` with `i + j ≥ k`.
fn bivariate_profile(a: usize, b: usize) -> Vec<usize> {
    (1..a + b - 1)
        .map(|k| {
            (0..a)
                .flat_map(|i| (0..b).map(move |j| i + j))
                .filter(|&s| s >= k)
                .count()
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let mut cases = Vec::new();
    for m in 1..=5 {
        cases.push((
            format!("x^{m}"),
            truncated_polynomials(m).map_err(e)?,
            (1..m).rev().collect::<Vec<_>>(),
        ));
    }
    for (a, b) in [(2, 2), (2, 3), (3, 2)] {
        cases.push((
            format!("({a},{b})"),
            truncated_bivariate(a, b).map_err(e)?,
            bivariate_profile(a, b),
        ));
    }
    for (name, loc, expected) in &cases {
        ensure(loc.filtration_profile() == *expected, || {
            format!(
                "{name}: profile {:?} vs {expected:?}",
                loc.filtration_profile()
            )
        })?;
        let back = action_to_algebra(&algebra_to_action(loc).map_err(e)?).map_err(e)?;
        ensure(
            back.dim() == loc.dim() && back.filtration_profile() == *expected,
            || format!("{name}: {} {:?}", back.dim(), back.filtration_profile()),
        )?;
    }
    Ok(format!("{} algebras preserved", cases.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("example dimension formula", criterion_1),
        ("dimension bounds", criterion_2),
        ("tautological characterization", criterion_3),
        ("lemma suite", criterion_4),
        ("structure-matrix round trip", criterion_5),
        ("invariance oracle", criterion_6),
        ("family certification", criterion_7),
        ("F-bijection", criterion_8),
        ("HT round trip", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  [{}] {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL  [{}] {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
