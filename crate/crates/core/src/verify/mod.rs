//! Named checks over instances, batch execution and family certificates.

mod checks;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::closure::{generate_algebra, local_anatomy, LocalAlgebra};
use crate::correspondence::HeisenbergProjAction;
use crate::error::{Error, Result};
use crate::exact::{int, Poly, QMat, Rat};
use crate::heisenberg::symplectic_basis_extract;
use crate::par::Exec;
use crate::random::rng_for;
use crate::tautological::{
    certify_inequivalent, extract_structure_matrix, generate_family, realize_action,
    symplectic_invariant, InequivalenceCertificate, StructureMatrix, Verdict,
};

pub use checks::{Check, Outcome, CHECKS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A bounded search ran out of budget; neither pass nor fail.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub instance: String,
    pub status: Status,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// `E_{ij}` with 1-based indices.
fn e(d: usize, i: usize, j: usize) -> QMat {
    QMat::unit(d, i - 1, j - 1)
}

/// The raw generators `X_1..X_n, Y_1..Y_n, t` of the example family.
pub fn example_generators(n: usize, k: usize) -> Result<Vec<QMat>> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "need 0 ≤ k ≤ n and n ≥ 1, got n={n}, k={k}"
        )));
    }
    let d = 2 * n + 2;
    let mut gens = Vec::with_capacity(2 * n + 1);
    for i in 1..=n {
        let x = e(d, 1, i + 1);
        gens.push(if i <= k {
            &x + &e(d, i + 1, n + i + 1)
        } else {
            x
        });
    }
    for i in 1..=n {
        gens.push(&e(d, 1, n + i + 1) + &e(d, n - i + 2, d));
    }
    gens.push(e(d, 1, d));
    Ok(gens)
}

/// The example structure on `P^{2n+1}` with `dim ⟨π⁻¹(H)⟩ = 2n+2+k`,
/// normalised to a standard symplectic basis, boundary `{x₁ = 0}` and
/// reference point `e₁`.
pub fn build_example(n: usize, k: usize) -> Result<HeisenbergProjAction> {
    let rep = symplectic_basis_extract(&example_generators(n, k)?)?;
    HeisenbergProjAction::standard(rep)
}

/// The associative algebra `⟨π⁻¹(H)⟩` of a structure.
pub fn associated_algebra(h: &HeisenbergProjAction) -> Result<LocalAlgebra> {
    local_anatomy(&generate_algebra(h.rep().d(), &h.rep().basis())?)
}

fn jordan(m: usize) -> QMat {
    let mut j = QMat::zeros(m, m);
    for i in 0..m.saturating_sub(1) {
        j.set(i, i + 1, int(1));
    }
    j
}

/// `Q[x]/(x^m)` acting on itself.
pub fn truncated_polynomials(m: usize) -> Result<LocalAlgebra> {
    local_anatomy(&generate_algebra(m, &[jordan(m)])?)
}

/// `Q[x,y]/(x^a, y^b)` as Kronecker products of Jordan blocks.
pub fn truncated_bivariate(a: usize, b: usize) -> Result<LocalAlgebra> {
    let x = jordan(a).kron(&QMat::identity(b));
    let y = QMat::identity(a).kron(&jordan(b));
    local_anatomy(&generate_algebra(a * b, &[x, y])?)
}

/// Resolves a check name or alias; `all` expands to every check.
pub fn resolve_checks(names: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for name in names {
        let name = name.trim();
        if name == "all" {
            out.extend(CHECKS.iter().map(|c| c.name));
            continue;
        }
        let canonical = match name {
            "dimension-bounds" => "dim-bounds",
            "descent-taut" => "taut-iff-dim",
            other => other,
        };
        let check = CHECKS
            .iter()
            .find(|c| c.name == canonical)
            .ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
        if !out.contains(&check.name) {
            out.push(check.name);
        }
    }
    Ok(out)
}

/// Runs one check at one size. Errors inside the check are reported as
/// failures carrying the error message.
pub fn run_check(name: &str, n: usize, seed: u64, timings: bool) -> Result<CheckReport> {
    let name = resolve_checks(&[name.to_string()])?[0];
    let check = CHECKS.iter().find(|c| c.name == name).expect("resolved");
    let mut rng = rng_for(seed, name, n);
    let start = Instant::now();
    let (status, witness) = match (check.run)(n, &mut rng) {
        Ok(Outcome::Pass(w)) => (Status::Pass, w),
        Ok(Outcome::Fail(w)) => (Status::Fail, w),
        Ok(Outcome::Inconclusive(w)) => (Status::Inconclusive, w),
        Err(err) => (
            Status::Fail,
            serde_json::json!({ "error": err.to_string() }),
        ),
    };
    Ok(CheckReport {
        check: name.to_string(),
        n,
        instance: (check.instance)(n),
        status,
        seed,
        witness: Some(witness),
        wall_time_ms: timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Every selected check at every size, in `(check, n)` order.
pub fn run_suite(
    names: &[String],
    sizes: &[usize],
    seed: u64,
    exec: Exec,
    timings: bool,
) -> Result<Vec<CheckReport>> {
    let checks = resolve_checks(names)?;
    if let Some(&n) = sizes.iter().find(|&&n| n == 0) {
        return Err(Error::OutOfRange(format!("size n = {n}; sizes start at 1")));
    }
    let jobs: Vec<(&str, usize)> = checks
        .iter()
        .flat_map(|c| sizes.iter().map(move |&n| (*c, n)))
        .collect();
    exec.map(&jobs, |&(c, n)| run_check(c, n, seed, timings))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    #[serde(with = "crate::exact::json::rat")]
    pub label: Rat,
    pub structure_matrix: StructureMatrix,
    pub invariant: Poly,
    pub action: HeisenbergProjAction,
}

/// `k` pairwise inequivalent structures on `P^{2n+1}` with all `k(k-1)/2`
/// certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub n: usize,
    pub members: Vec<FamilyMember>,
    pub certificates: Vec<InequivalenceCertificate>,
}

impl FamilyCertificate {
    /// Replays every certificate and re-derives each member's structure
    /// matrix from its realized action.
    pub fn verify(&self) -> Result<()> {
        let k = self.members.len();
        let bad = |msg: String| Err(Error::InvalidLabels(msg));
        if k < 2 {
            return bad("a family needs at least two members".into());
        }
        if self.certificates.len() != k * (k - 1) / 2 {
            return bad(format!(
                "{} certificates for {k} members",
                self.certificates.len()
            ));
        }
        for m in &self.members {
            if m.structure_matrix.n() != self.n
                || symplectic_invariant(&m.structure_matrix) != m.invariant
            {
                return bad(format!("member {} has a wrong invariant", m.label));
            }
            let loc = associated_algebra(&m.action)?;
            if extract_structure_matrix(&loc, m.action.rep())? != m.structure_matrix {
                return bad(format!("member {} realizes a different matrix", m.label));
            }
        }
        let mut idx = 0;
        for i in 0..k {
            for j in i + 1..k {
                let c = &self.certificates[idx];
                idx += 1;
                c.verify()?;
                if c.left != self.members[i].structure_matrix
                    || c.right != self.members[j].structure_matrix
                {
                    return bad(format!("certificate {idx} is not for pair ({i}, {j})"));
                }
                if c.verdict != Verdict::Inequivalent {
                    return bad(format!("pair ({i}, {j}) is not certified"));
                }
            }
        }
        Ok(())
    }
}

pub fn certify_family(n: usize, labels: &[Rat], exec: Exec) -> Result<FamilyCertificate> {
    if labels.len() < 2 {
        return Err(Error::InvalidLabels(
            "at least two labels are required".into(),
        ));
    }
    let family = generate_family(n, labels)?;
    let members = exec
        .map(&family, |sm| -> Result<FamilyMember> {
            Ok(FamilyMember {
                label: Rat::default(),
                structure_matrix: sm.clone(),
                invariant: symplectic_invariant(sm),
                action: realize_action(sm)?,
            })
        })
        .into_iter()
        .zip(labels)
        .map(|(m, l)| {
            m.map(|m| FamilyMember {
                label: l.clone(),
                ..m
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..family.len())
        .flat_map(|i| (i + 1..family.len()).map(move |j| (i, j)))
        .collect();
    let certificates = exec
        .map(&pairs, |&(i, j)| {
            certify_inequivalent(&family[i], &family[j])
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyCertificate {
        n,
        members,
        certificates,
    })
}

/// Labels `1, 2, …, count`.
pub fn default_labels(count: usize) -> Vec<Rat> {
    (1..=count as i64).map(int).collect()
}
