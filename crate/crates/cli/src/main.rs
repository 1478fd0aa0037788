use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use hcompact::closure::{generate_algebra, local_anatomy};
use hcompact::correspondence::{
    boundary_fixed_check, descend_action, AdditiveProjAction, HeisenbergProjAction,
};
use hcompact::exact::{parse_rat, QMat};
use hcompact::heisenberg::HeisenbergMatRep;
use hcompact::par::Exec;
use hcompact::tautological::{
    algebra_from_structure_matrix, certify_inequivalent, realize_action, symplectic_invariant,
    StructureMatrix, Verdict,
};
use hcompact::verify::{build_example, certify_family, default_labels, run_suite, Status};

/// Exact checks for Heisenberg group compactifications of projective space.
#[derive(Parser)]
#[command(name = "hcompact", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Example structure on P^{2n+1} whose algebra has dimension 2n+2+k.
    BuildExample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Associative closure and local anatomy of a structure, a
    /// representation or a bare list of generators.
    Closure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Descent of a Heisenberg structure to P^{2n}.
    Descend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tautological algebra and structure realized by a structure matrix.
    TautFromMatrix {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// char_poly(Ω⁻¹ S(M)) of a structure matrix.
    Invariant {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Inequivalence certificate for two structure matrices. Exits 1 when
    /// the invariant does not separate them.
    Certify {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise certificates for the family λI + Ω/2.
    CertifyFamily {
        #[arg(long)]
        n: usize,
        /// Comma separated positive rationals.
        #[arg(long, value_delimiter = ',', conflicts_with = "count")]
        labels: Option<Vec<String>>,
        /// Use labels 1..=COUNT.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Run named checks over a range of sizes.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Inclusive range `A..B`, or a single size.
        #[arg(long, default_value = "1..3")]
        n_range: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record wall time per check (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        sequential: bool,
    },
}

/// Failures that should exit with status 1 rather than 2.
struct CheckFailed;

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> anyhow::Result<T> {
    serde_json::from_value(v).with_context(|| format!("input is not a valid {what}"))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn parse_range(s: &str) -> anyhow::Result<Vec<usize>> {
    let bad = || anyhow!("bad --n-range `{s}`; expected A..B");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

/// Generators from a structure, a representation, an additive action or
/// `{"generators": [...], "d": d}`.
fn generators_of(v: &Value) -> anyhow::Result<(usize, Vec<QMat>)> {
    if v.get("rep").is_some() {
        let h: HeisenbergProjAction = parse(v.clone(), "Heisenberg structure")?;
        return Ok((h.rep().d(), h.rep().basis()));
    }
    if v.get("X").is_some() {
        let r: HeisenbergMatRep = parse(v.clone(), "Heisenberg representation")?;
        return Ok((r.d(), r.basis()));
    }
    if v.get("reference_point").is_some() {
        let a: AdditiveProjAction = parse(v.clone(), "additive action")?;
        return Ok((a.d(), a.generators().to_vec()));
    }
    let gens: Vec<QMat> = match v.get("generators") {
        Some(g) => parse(g.clone(), "list of matrices")?,
        None => parse(v.clone(), "list of matrices")?,
    };
    let d = match (gens.first(), v.get("d").and_then(Value::as_u64)) {
        (Some(g), _) => g.rows(),
        (None, Some(d)) => d as usize,
        (None, None) => bail!("empty generator list needs \"d\""),
    };
    Ok((d, gens))
}

fn run(cli: Cli) -> anyhow::Result<Result<(), CheckFailed>> {
    match cli.cmd {
        Cmd::BuildExample { n, k, out } => {
            emit(&build_example(n, k)?, out.as_deref())?;
        }
        Cmd::Closure { input, out } => {
            let (d, gens) = generators_of(&read_json(&input)?)?;
            let loc = local_anatomy(&generate_algebra(d, &gens)?)?;
            let mut doc = serde_json::to_value(&loc)?;
            doc["dim"] = json!(loc.dim());
            doc["filtration_profile"] = json!(loc.filtration_profile());
            doc["commutative"] = json!(loc.is_commutative());
            emit(&doc, out.as_deref())?;
        }
        Cmd::Descend { input, out } => {
            let h: HeisenbergProjAction = parse(read_json(&input)?, "Heisenberg structure")?;
            if !boundary_fixed_check(&h) {
                emit(&json!({ "boundary_fixed": false }), out.as_deref())?;
                eprintln!("central subgroup does not fix the boundary pointwise");
                return Ok(Err(CheckFailed));
            }
            emit(&descend_action(&h)?, out.as_deref())?;
        }
        Cmd::TautFromMatrix { input, out } => {
            let sm: StructureMatrix = parse(read_json(&input)?, "structure matrix")?;
            let (rep, loc) = algebra_from_structure_matrix(&sm)?;
            let doc = json!({
                "structure_matrix": sm,
                "rep": rep,
                "algebra": loc,
                "action": realize_action(&sm)?,
            });
            emit(&doc, out.as_deref())?;
        }
        Cmd::Invariant { input } => {
            let sm: StructureMatrix = parse(read_json(&input)?, "structure matrix")?;
            let p = symplectic_invariant(&sm);
            emit(
                &json!({ "invariant": p, "polynomial": p.to_string() }),
                None,
            )?;
        }
        Cmd::Certify { left, right, out } => {
            let a: StructureMatrix = parse(read_json(&left)?, "structure matrix")?;
            let b: StructureMatrix = parse(read_json(&right)?, "structure matrix")?;
            let cert = certify_inequivalent(&a, &b)?;
            emit(&cert, out.as_deref())?;
            if cert.verdict != Verdict::Inequivalent {
                eprintln!("invariants agree; the structures are not distinguished");
                return Ok(Err(CheckFailed));
            }
        }
        Cmd::CertifyFamily {
            n,
            labels,
            count,
            out,
            sequential,
        } => {
            let labels = match (labels, count) {
                (Some(ls), _) => ls
                    .iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>, _>>()?,
                (None, Some(c)) => default_labels(c),
                (None, None) => bail!("one of --labels or --count is required"),
            };
            let fam = certify_family(n, &labels, exec(sequential))?;
            fam.verify()?;
            emit(&fam, out.as_deref())?;
            eprintln!(
                "{} members, {} certificates, all inequivalent",
                fam.members.len(),
                fam.certificates.len()
            );
        }
        Cmd::Verify {
            suite,
            n_range,
            seed,
            report,
            timings,
            sequential,
        } => {
            let sizes = parse_range(&n_range)?;
            let reports = run_suite(&suite, &sizes, seed, exec(sequential), timings)?;
            for r in &reports {
                let status = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Inconclusive => "INCONCLUSIVE",
                };
                println!("{status:<12} {:<32} n={}  {}", r.check, r.n, r.instance);
            }
            if let Some(path) = report {
                let doc = json!({ "seed": seed, "sizes": sizes, "reports": reports });
                emit(&doc, Some(&path))?;
            }
            if reports.iter().any(|r| r.status == Status::Fail) {
                return Ok(Err(CheckFailed));
            }
        }
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CheckFailed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
