use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spinorlab_core::admissible::nondegenerate_form;
use spinorlab_core::brackets::{blade_metric, bracket_k, null_lemma};
use spinorlab_core::clifford::cone_even_iso;
use spinorlab_core::cone_split::{null_plane_invariants, semispinor_decision, volume_flip_degree};
use spinorlab_core::model::{HyperquadricModel, SpinorField, DEFAULT_STEP, DEFAULT_TOLERANCE};
use spinorlab_core::polyvector::{blades, Polyvector};
use spinorlab_core::rng::{int_vector, null_vector, trial_rng};
use spinorlab_core::scalar::serde_strings::fraction;
use spinorlab_core::subspace_lab::{
    extremal_obstructed_subspace, random_surjectivity_sweep, spin23_isotropic_scan, spin45_search, spin45_setup,
    surjectivity_threshold,
};
use spinorlab_core::{build_rep, Error as CoreError, Signature};

use spinorlab::report::{envelope, render, Format};
use spinorlab::suite::{admissible_rows, default_form, even_iso_holds, run_all, SuiteConfig};
use spinorlab::witness::{default_path, WitnessFile, WITNESS_DIR};
use spinorlab::{parse_signature, LabError, LabResult};

#[derive(Parser)]
#[command(name = "spinorlab", version, about = "Clifford modules, spinor brackets and Killing spinor checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Master seed for every randomized check.
    #[arg(long, global = true, env = "SPINORLAB_SEED", default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LambdaSign {
    Auto,
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Spinor dimension and commutant type for every signature.
    RepTable {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Admissible form solution spaces for every (σ, τ).
    AdmissibleTable {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Seeded bracket evaluations and null-lemma reports.
    Bracket {
        #[arg(long, value_parser = parse_signature)]
        sig: Signature,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        samples: u64,
    },
    /// Extremal obstructed subspaces and a random surjectivity sweep.
    BoundSearch {
        #[arg(long, value_parser = parse_signature)]
        sig: Signature,
        /// Subspace dimension for the sweep (default: 3N/4 + 1).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 500)]
        trials: u64,
    },
    /// Bracket image dimensions of random Lagrangians in S_{2,3}.
    Spin23 {
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
    /// Search for (or re-verify) an isotropic S0 ⊂ S_{4,5} with 4-dim bracket.
    Spin45 {
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Directory the witness is written to.
        #[arg(long, default_value = WITNESS_DIR)]
        out: PathBuf,
        /// Re-verify an existing witness file instead of searching.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Semi-spinor decision and invariants for the cone over a base signature.
    ConeReport {
        #[arg(long, value_parser = parse_signature)]
        sig: Signature,
    },
    /// Finite-difference checks on the hyperquadric of a cone signature.
    ModelVerify {
        #[arg(long, value_parser = parse_signature)]
        cone: Signature,
        #[arg(long, value_enum, default_value_t = LambdaSign::Auto)]
        lambda_sign: LambdaSign,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        h: f64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Every acceptance criterion; exits 1 if any fails.
    VerifyAll {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Archived Spin(4,5) witness.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

struct Outcome {
    name: &'static str,
    body: Value,
    passed: bool,
}

fn ok(name: &'static str, body: Value) -> Outcome {
    Outcome { name, body, passed: true }
}

fn strings(vs: &[spinorlab_core::Rational]) -> Vec<String> {
    vs.iter().map(fraction).collect()
}

fn rep_table(max_n: usize) -> LabResult<Outcome> {
    let mut rows = Vec::new();
    for s in Signature::all_up_to(max_n) {
        let rep = build_rep(s)?;
        rows.push(json!({
            "p": s.p, "q": s.q, "n": s.n(), "s_mod8": s.s_mod8(),
            "N": rep.dim, "commutant": s.commutant_type().to_string(),
        }));
    }
    Ok(ok("rep-table", json!({ "rows": rows })))
}

fn bracket(sig: Signature, k: usize, samples: u64, seed: u64) -> LabResult<Outcome> {
    let rep = build_rep(sig)?;
    let h = default_form(&rep).ok_or(CoreError::DegenerateForm)?;
    let mut evals = Vec::new();
    let mut identity_ok = true;
    for i in 0..samples {
        let mut rng = trial_rng(seed, i);
        let s = int_vector(&mut rng, rep.dim, 3);
        let t = int_vector(&mut rng, rep.dim, 3);
        let w = bracket_k(&rep, &h, &s, &t, k)?;
        for b in blades(sig.n(), k) {
            let direct = h.eval(&rep.gamma_blade(&b).mul_vec(&s), &t);
            identity_ok &= blade_metric(&rep, &w, &Polyvector::basis(sig.n(), &b)) == direct;
        }
        evals.push(json!({"s": strings(&s), "t": strings(&t), "bracket": strings(&w.coeffs)}));
    }
    let mut lemmas = Vec::new();
    let mut lemma_ok = true;
    if !sig.is_definite() {
        for i in 0..samples {
            let v = null_vector(&mut trial_rng(seed, 1000 + i), sig);
            let (r, _) = null_lemma(&rep, &h, &v)?;
            lemma_ok &= r.holds();
            lemmas.push(json!({"v": strings(&v), "report": r}));
        }
    }
    let body = json!({
        "signature": sig.to_string(), "N": rep.dim, "k": k, "seed": seed,
        "form": {"sigma": h.sigma, "tau": h.tau},
        "blades": blades(sig.n(), k),
        "evaluations": evals,
        "defining_identity": identity_ok,
        "null_lemma": lemmas,
    });
    Ok(Outcome { name: "bracket", body, passed: identity_ok && lemma_ok })
}

fn bound_search(sig: Signature, d: Option<usize>, trials: u64, seed: u64) -> LabResult<Outcome> {
    let rep = build_rep(sig)?;
    let mut extremal = Vec::new();
    if !sig.is_definite() {
        let v = null_vector(&mut trial_rng(seed, 0), sig);
        for (sigma, tau) in [(1i8, -1i8), (-1, 1), (1, 1), (-1, -1)] {
            let Some(h) = nondegenerate_form(&rep, sigma, tau)? else { continue };
            let entry = match extremal_obstructed_subspace(&rep, &h, &v) {
                Ok(s0) => json!({"sigma": sigma, "tau": tau, "dim": s0.dim()}),
                Err(e) => json!({"sigma": sigma, "tau": tau, "error": e.to_string()}),
            };
            extremal.push(entry);
        }
    }
    let h = default_form(&rep).ok_or(CoreError::DegenerateForm)?;
    let d = d.unwrap_or(surjectivity_threshold(&rep) + 1).min(rep.dim);
    let sweep = random_surjectivity_sweep(&rep, &h, d, trials, seed)?;
    let passed = sweep.consistent();
    let body = json!({
        "signature": sig.to_string(), "N": rep.dim, "threshold": surjectivity_threshold(&rep),
        "extremal": extremal,
        "sweep_form": {"sigma": h.sigma, "tau": h.tau},
        "sweep": sweep,
    });
    Ok(Outcome { name: "bound-search", body, passed })
}

fn spin45(seed: u64, budget: u64, out: PathBuf, verify: Option<PathBuf>) -> LabResult<Outcome> {
    if let Some(path) = verify {
        let w = WitnessFile::load(&path)?;
        let r = w.reverify()?;
        let passed = r.valid(4);
        let body = json!({"file": path.display().to_string(), "seed": w.seed, "report": r});
        return Ok(Outcome { name: "spin45", body, passed });
    }
    let (_, h) = spin45_setup()?;
    let result = spin45_search(seed, budget)?;
    let path = default_path(&out, seed);
    let file = WitnessFile::from_spin45(&result, &h);
    file.save(&path)?;
    // what was written must survive a round trip
    let r = WitnessFile::load(&path)?.reverify()?;
    let body = json!({
        "file": path.display().to_string(),
        "seed": seed,
        "candidates_tried": result.candidates_tried,
        "histogram": result.histogram,
        "report": r,
    });
    Ok(Outcome { name: "spin45", body, passed: r.valid(4) })
}

fn cone_report(base: Signature) -> LabResult<Outcome> {
    let cone_sig = base.cone();
    let (brep, cone) = (build_rep(base)?, build_rep(cone_sig)?);
    let d = semispinor_decision(&cone)?;
    let iso = cone_even_iso(&brep, &cone)?;
    let invariants = match null_plane_invariants(&cone) {
        Ok(r) => json!(r),
        Err(_) => Value::Null,
    };
    let iso_ok = even_iso_holds(base, &iso);
    let body = json!({
        "base": base.to_string(),
        "cone": cone_sig.to_string(),
        "s_mod8": base.s_mod8(),
        "cone_N": d.cone_dim,
        "base_N": d.base_dim,
        "even_commutant_dim": d.even_commutant_dim,
        "computed_split": d.computed_split,
        "stated_split": d.stated_split,
        "agrees": d.agrees(),
        "even_iso": iso,
        "invariants": invariants,
        "volume_flip": volume_flip_degree(&brep),
    });
    Ok(Outcome { name: "cone-report", body, passed: d.agrees() && iso_ok })
}

fn model_verify(cone: Signature, sign: LambdaSign, h: f64, tol: f64) -> LabResult<Outcome> {
    let m = HyperquadricModel::new(cone)?.with_step(h).with_tolerance(tol);
    let report = m.killing_report();
    let dim = m.spinor_dim();
    let eps = match sign {
        LambdaSign::Auto => report.epsilon.unwrap_or(1) as f64,
        LambdaSign::Plus => 1.0,
        LambdaSign::Minus => -1.0,
    };
    let lambda = 0.5 * eps;
    let fields: Vec<_> = (0..dim).map(|k| SpinorField::basis(dim, k)).collect();
    let residuals: Vec<f64> = fields.iter().map(|f| m.killing_residual(f, lambda)).collect();
    let passing = residuals.iter().filter(|&&r| r < tol).count();
    let dirac = fields.iter().map(|f| m.dirac_residual(f, lambda)).fold(0.0, f64::max);
    let scal = m.scal_check(lambda);
    let body = json!({
        "cone": cone.to_string(),
        "base": m.base().to_string(),
        "step": h,
        "tolerance": tol,
        "lambda": lambda,
        "detected": report,
        "killing_residuals": residuals,
        "passing": passing,
        "dirac_residual": dirac,
        "scal": scal,
    });
    let passed = passing == dim && dirac < 10.0 * tol && scal.max_error < tol;
    Ok(Outcome { name: "model-verify", body, passed })
}

fn verify_all(max_n: usize, seed: u64, witness: Option<PathBuf>) -> Outcome {
    let mut cfg = SuiteConfig::new(max_n, seed);
    if let Some(w) = witness {
        cfg.witness = w;
    }
    let criteria = run_all(&cfg);
    for c in &criteria {
        eprintln!("{}", c.line());
    }
    let passed = criteria.iter().all(|c| c.passed);
    let rows: Vec<Value> = criteria.iter().map(|c| json!({"id": c.id, "title": c.title, "passed": c.passed})).collect();
    let details: serde_json::Map<String, Value> = criteria.iter().map(|c| (c.id.clone(), c.detail.clone())).collect();
    let body = json!({"max_n": max_n, "seed": seed, "passed": passed, "rows": rows, "details": details});
    Outcome { name: "verify-all", body, passed }
}

fn run(cli: Cli) -> LabResult<Outcome> {
    let seed = cli.seed;
    match cli.command {
        Command::RepTable { max_n } => rep_table(max_n),
        Command::AdmissibleTable { max_n } => Ok(ok("admissible-table", json!({ "rows": admissible_rows(max_n) }))),
        Command::Bracket { sig, k, samples } => bracket(sig, k, samples, seed),
        Command::BoundSearch { sig, d, trials } => bound_search(sig, d, trials, seed),
        Command::Spin23 { trials } => {
            let scan = spin23_isotropic_scan(trials, seed)?;
            let passed = scan.histogram.len() == 1 && scan.histogram.get(&1) == Some(&trials);
            Ok(Outcome { name: "spin23", body: json!({"seed": seed, "scan": scan}), passed })
        }
        Command::Spin45 { budget, out, verify } => spin45(seed, budget, out, verify),
        Command::ConeReport { sig } => cone_report(sig),
        Command::ModelVerify { cone, lambda_sign, h, tol, .. } => model_verify(cone, lambda_sign, h, tol),
        Command::VerifyAll { max_n, witness } => Ok(verify_all(max_n, seed, witness)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::ModelVerify { json: true, .. } => Format::Json,
        _ => cli.format,
    };
    match run(cli).and_then(|o| Ok((render(format, &envelope(o.name, o.body))?, o.passed))) {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(LabError::Core(e @ (CoreError::Falsified(_) | CoreError::BudgetExhausted(_)))) => {
            eprintln!("falsified: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
