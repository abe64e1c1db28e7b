//! Command-line front end: parse and validate JSON artifacts, run
//! analyses, compute pseudotraces, and execute the verification suites.
//! All output is machine-readable JSON with rationals as strings; payloads
//! are deterministic byte-for-byte (metadata goes to stderr under --meta).
//!
//! Exit codes: 0 ok, 1 verification failure, 2 invalid input or usage,
//! 3 not split over Q, 4 not projective, 5 hypothesis violated.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use fdalg::algebra::{Algebra, MulSide};
use fdalg::exactla::Rat;
use fdalg::json;
use fdalg::pseudotrace::{
    build_context, build_omega, decompose_projective, is_interlocked, pseudotrace,
    structured_coordinate_system, ContextError, OmegaReport, ProjectiveSplit,
};
use fdalg::slf::{phi_w, slf_basis};
use fdalg::structure::{
    basic_algebra, find_symmetric_form, primitive_idempotents, radical, socle, socle_ideal,
    StructureError, SymmetricSearch,
};
use fdalg::verify;
use fdalg::zoo;
use fdalg::DEFAULT_SEARCH_BUDGET;

#[derive(Parser)]
#[command(
    name = "fdalg",
    version,
    about = "Exact computations with finite-dimensional algebras"
)]
struct Cli {
    /// Print run metadata to stderr; the stdout payload stays untouched.
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: radical, socles, blocks, basic corner, SLF.
    Analyze {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Basis of the symmetric linear functions of an algebra.
    Slf {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Pseudotrace and trace extension of one endomorphism.
    Pseudotrace {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        endo: PathBuf,
    },
    /// Run verification suites over the built-in instances or a user file.
    Verify {
        /// Suite id or "all".
        #[arg(long)]
        suite: String,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Emit a built-in algebra with its functional and named modules.
    Zoo {
        #[arg(long)]
        name: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NOT_SPLIT: u8 = 3;
const EXIT_NOT_PROJECTIVE: u8 = 4;
const EXIT_HYPOTHESIS: u8 = 5;

#[derive(Serialize)]
struct ErrorPayload {
    error: String,
    detail: String,
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable payload")
    );
}

fn bail(code: u8, error: &str, detail: String) -> ExitCode {
    emit(&ErrorPayload {
        error: error.to_string(),
        detail,
    });
    ExitCode::from(code)
}

fn budget() -> usize {
    std::env::var("FDALG_SEARCH_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BUDGET)
}

#[derive(Serialize)]
struct AnalyzeReport {
    dim: usize,
    radical_dim: usize,
    socle_left_dim: usize,
    socle_right_dim: usize,
    socle_two_sided: bool,
    blocks: usize,
    idempotents: Vec<Vec<Rat>>,
    basic_dim: usize,
    basic_mult: Vec<Vec<Vec<Rat>>>,
    slf_dim: usize,
    symmetric: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetric_phi: Option<Vec<Rat>>,
}

fn cmd_analyze(path: &Path) -> ExitCode {
    let algebra = match json::load_algebra(path) {
        Ok(a) => a,
        Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
    };
    let rad = match radical(&algebra) {
        Ok(r) => r,
        Err(e) => return bail(EXIT_INVALID, "invalid-algebra", e.to_string()),
    };
    let dec = match primitive_idempotents(&algebra) {
        Ok(d) => d,
        Err(e @ StructureError::NotSplitOverQ { .. }) => {
            return bail(EXIT_NOT_SPLIT, "not-split-over-q", e.to_string())
        }
        Err(e) => return bail(EXIT_INVALID, "structure-failure", e.to_string()),
    };
    let basic = match basic_algebra(&algebra, &dec, budget()) {
        Ok(b) => b,
        Err(e) => return bail(EXIT_INVALID, "structure-failure", e.to_string()),
    };
    let (symmetric, symmetric_phi) = match find_symmetric_form(&algebra, budget()) {
        SymmetricSearch::Found(phi) => ("symmetric".to_string(), Some(phi.values)),
        SymmetricSearch::CertifiedNotSymmetric { .. } => ("not_symmetric".to_string(), None),
        SymmetricSearch::NotFoundWithin(_) => ("inconclusive".to_string(), None),
    };
    let left = socle(&algebra, &rad, MulSide::Left);
    let right = socle(&algebra, &rad, MulSide::Right);
    let report = AnalyzeReport {
        dim: algebra.dim,
        radical_dim: rad.dim(),
        socle_left_dim: left.dim(),
        socle_right_dim: right.dim(),
        socle_two_sided: socle_ideal(&algebra, &rad).is_some(),
        blocks: dec.block_count(),
        idempotents: dec.idempotents.iter().map(|e| e.coeffs.clone()).collect(),
        basic_dim: basic.basic_dim(),
        basic_mult: basic.corner.algebra.mult.clone(),
        slf_dim: slf_basis(&algebra).len(),
        symmetric,
        symmetric_phi,
    };
    emit(&report);
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct SlfReport {
    dim: usize,
    slf_dim: usize,
    basis: Vec<Vec<Rat>>,
}

fn cmd_slf(path: &Path) -> ExitCode {
    let algebra = match json::load_algebra(path) {
        Ok(a) => a,
        Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
    };
    let basis = slf_basis(&algebra);
    emit(&SlfReport {
        dim: algebra.dim,
        slf_dim: basis.len(),
        basis: basis.into_iter().map(|f| f.values).collect(),
    });
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct OmegaReportJson {
    weak_ok: bool,
    duality_ok: bool,
    socle_products_ok: bool,
    tails_left_invariant: bool,
    tails_right_invariant: bool,
    normalization_failures: Vec<String>,
}

impl From<&OmegaReport> for OmegaReportJson {
    fn from(r: &OmegaReport) -> Self {
        OmegaReportJson {
            weak_ok: r.weak_ok,
            duality_ok: r.duality_ok,
            socle_products_ok: r.socle_products_ok,
            tails_left_invariant: r.tails_left_invariant,
            tails_right_invariant: r.tails_right_invariant,
            normalization_failures: r.normalization_failures.clone(),
        }
    }
}

#[derive(Serialize)]
struct PseudotraceReport {
    interlocked: bool,
    multiplicities: Vec<usize>,
    pseudotrace: Rat,
    phi_w: Rat,
    equal: bool,
    omega_report: OmegaReportJson,
}

fn context_exit(e: &ContextError) -> u8 {
    match e {
        ContextError::Structure(StructureError::NotSplitOverQ { .. }) => EXIT_NOT_SPLIT,
        _ => EXIT_HYPOTHESIS,
    }
}

fn cmd_pseudotrace(
    algebra_path: &Path,
    phi_path: &Path,
    module_path: &Path,
    endo_path: &Path,
) -> ExitCode {
    let algebra = match json::load_algebra(algebra_path) {
        Ok(a) => a,
        Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
    };
    let phi = match json::load_linfunc(phi_path, &algebra) {
        Ok(p) => p,
        Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
    };
    let (module_algebra, module) = match json::load_module(module_path) {
        Ok(m) => m,
        Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
    };
    if *module_algebra != *algebra {
        return bail(
            EXIT_INVALID,
            "invalid-input",
            "module file is over a different algebra".to_string(),
        );
    }
    let endo = match json::load_endo(endo_path, &module) {
        Ok(m) => m,
        Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
    };
    let ctx = match build_context(&algebra, &phi) {
        Ok(c) => c,
        Err(e) => return bail(context_exit(&e), "context-hypothesis-failed", e.to_string()),
    };
    let omega = build_omega(&ctx);
    let interlocked = is_interlocked(&ctx, &module);
    let dec = match decompose_projective(&ctx, &module) {
        ProjectiveSplit::Decomposed(d) => d,
        ProjectiveSplit::NotProjective(cert) => {
            return bail(
                EXIT_NOT_PROJECTIVE,
                "not-projective",
                format!(
                    "residual of dimension {} killed by every socle dual",
                    cert.residual_basis.len()
                ),
            );
        }
    };
    let pseudo = match pseudotrace(&ctx, &omega, &dec, &module, &endo) {
        Ok(v) => v,
        Err(e) => return bail(EXIT_INVALID, "invalid-endomorphism", e.to_string()),
    };
    let coords = structured_coordinate_system(&ctx, &omega, &dec, &module);
    let value = match phi_w(&ctx.phi, &module, &coords, &endo) {
        Ok(v) => v,
        Err(e) => return bail(EXIT_INVALID, "invalid-endomorphism", e.to_string()),
    };
    let equal = pseudo == value;
    emit(&PseudotraceReport {
        interlocked: interlocked.interlocked,
        multiplicities: dec.multiplicities,
        pseudotrace: pseudo,
        phi_w: value,
        equal,
        omega_report: OmegaReportJson::from(&omega.report),
    });
    ExitCode::SUCCESS
}

fn cmd_verify(suite: &str, algebra_path: &Option<PathBuf>) -> ExitCode {
    let user: Option<Arc<Algebra>> = match algebra_path {
        None => None,
        Some(path) => match json::load_algebra(path) {
            Ok(a) => Some(a),
            Err(e) => return bail(EXIT_INVALID, "invalid-input", e.to_string()),
        },
    };
    let reports: Vec<verify::SuiteReport> = if suite == "all" {
        match user {
            None => verify::run_all(budget()),
            Some(a) => verify::SUITE_IDS
                .iter()
                .filter_map(|id| verify::run_suite(id, Some(Arc::clone(&a)), budget()))
                .collect(),
        }
    } else {
        match verify::run_suite(suite, user, budget()) {
            Some(r) => vec![r],
            None => {
                return bail(
                    EXIT_INVALID,
                    "unknown-suite",
                    format!("suite {:?} not in {:?}", suite, verify::SUITE_IDS),
                )
            }
        }
    };
    emit(&reports);
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAIL)
    }
}

fn zoo_entry_by_name(name: &str) -> Option<zoo::ZooEntry> {
    let parametric = |prefix: char, rest: &str| -> Option<usize> {
        name.starts_with(prefix)
            .then(|| rest.parse().ok())
            .flatten()
    };
    match name {
        "s3" => Some(zoo::group_algebra_s3()),
        "n2" => Some(zoo::zigzag_2()),
        "m2xt3" => Some(zoo::product(&[
            zoo::matrix_algebra(2),
            zoo::truncated_polynomial(3),
        ])),
        _ => {
            let rest = &name[1..];
            match name.chars().next()? {
                't' => parametric('t', rest).map(zoo::truncated_polynomial),
                'c' => parametric('c', rest).map(zoo::group_algebra_cyclic),
                'm' => parametric('m', rest).map(zoo::matrix_algebra),
                'u' => parametric('u', rest).map(zoo::upper_triangular),
                _ => None,
            }
        }
    }
}

fn cmd_zoo(name: &str, emit_path: &Option<PathBuf>) -> ExitCode {
    let Some(entry) = zoo_entry_by_name(name) else {
        return bail(
            EXIT_INVALID,
            "unknown-zoo-entry",
            format!(
                "no entry named {:?}; try t3, t4, c2, c3, m2, u2, s3, n2, m2xt3",
                name
            ),
        );
    };
    let emission = json::emit_zoo_entry(&entry);
    let text = serde_json::to_string_pretty(&emission).expect("serializable emission");
    match emit_path {
        None => println!("{}", text),
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                return bail(EXIT_INVALID, "write-failed", e.to_string());
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.meta {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        eprintln!(
            "{{\"meta\":{{\"unix_time\":{},\"budget\":{}}}}}",
            ts,
            budget()
        );
    }
    match &cli.command {
        Command::Analyze { algebra } => cmd_analyze(algebra),
        Command::Slf { algebra } => cmd_slf(algebra),
        Command::Pseudotrace {
            algebra,
            phi,
            module,
            endo,
        } => cmd_pseudotrace(algebra, phi, module, endo),
        Command::Verify { suite, algebra } => cmd_verify(suite, algebra),
        Command::Zoo { name, emit } => cmd_zoo(name, emit),
    }
}
