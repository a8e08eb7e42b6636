//! The `svineq` command-line tool.
//!
//! Exit codes: 0 holds / found, 1 violated, 2 hypothesis violated,
//! 3 usage or input error, 4 search exhausted.

pub mod format;
pub mod report_file;
pub mod repro;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use svineq_core::fuzzer::{
    canonical_class, replay, run_campaign, search_counterexample, CampaignConfig, CampaignTarget,
    SearchId, SearchOutcome, SearchTarget, Witness, DEFAULT_PERTURB_STEPS,
};
use svineq_core::inequalities::{check_with, CheckOptions, InequalityId, Verdict};
use svineq_core::randgen::GeneratorClass;
use svineq_core::{ComplexMatrix, Tolerance};

use crate::format::sig6;
use crate::report_file::{ReportBody, ReportFile};
use crate::repro::Fixture;

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_HYPOTHESIS: u8 = 2;
pub const EXIT_USAGE: u8 = 3;
pub const EXIT_EXHAUSTED: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "svineq",
    version,
    about = "Numerical verifier for singular value inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one inequality on matrices read from JSON files.
    Verify {
        /// Inequality id, e.g. thm-2.1.
        ineq: String,
        /// Matrix files in the checker's argument order.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Recompute a worked example.
    Repro {
        /// ex-2.2 or ex-2.3.
        fixture: String,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized campaign.
    Fuzz {
        /// Inequality id, `all`, or `list` to print the catalog.
        #[arg(long)]
        ineq: String,
        /// Generator class; defaults to the inequality's canonical class.
        #[arg(long)]
        class: Option<String>,
        /// Dimensions as `a..b` (inclusive), a comma list, or one value.
        #[arg(long, default_value = "2,3,5,8")]
        dims: String,
        /// Trials per dimension.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a counterexample outside a statement's hypotheses.
    Search {
        #[arg(long)]
        target: String,
        /// Checker evaluations across all restarts.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2,3")]
        dims: String,
        /// Perturbation steps per restart.
        #[arg(long, default_value_t = DEFAULT_PERTURB_STEPS)]
        steps: u32,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the checker on every witness stored in a report file.
    Replay { file: PathBuf },
}

#[derive(Args, Debug)]
struct TolArgs {
    #[arg(long, default_value_t = Tolerance::default().tol_abs)]
    tol_abs: f64,
    #[arg(long, default_value_t = Tolerance::default().tol_rel)]
    tol_rel: f64,
}

impl TolArgs {
    fn tolerance(&self) -> Result<Tolerance, Failure> {
        Tolerance::new(self.tol_abs, self.tol_rel).map_err(Failure::usage)
    }
}

/// A diagnostic plus the exit code to report it with.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_HOLDS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify { ineq, files, tol } => cmd_verify(&ineq, &files, &tol, out, err),
        Command::Repro {
            fixture,
            json,
            out: path,
        } => cmd_repro(&fixture, json, path.as_deref(), out),
        Command::Fuzz {
            ineq,
            class,
            dims,
            trials,
            seed,
            tol,
            out: path,
        } => cmd_fuzz(
            &ineq,
            class.as_deref(),
            &dims,
            trials,
            seed,
            &tol,
            path.as_deref(),
            out,
        ),
        Command::Search {
            target,
            budget,
            seed,
            dims,
            steps,
            tol,
            out: path,
        } => cmd_search(
            &target,
            budget,
            seed,
            &dims,
            steps,
            &tol,
            path.as_deref(),
            out,
        ),
        Command::Replay { file } => cmd_replay(&file, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, file: &ReportFile) -> Result<(), Failure> {
    fs::write(path, file.to_json())
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Parses `a..b` (inclusive), `a,b,c` or a single dimension.
pub fn parse_dims(spec: &str) -> Result<Vec<usize>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid dimension '{}' in '{spec}'", s.trim()))
    };
    let dims: Vec<usize> = if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!("empty dimension range '{spec}'"));
        }
        (lo..=hi).collect()
    } else {
        spec.split(',').map(parse).collect::<Result<_, _>>()?
    };
    if dims.contains(&0) {
        return Err("dimensions must be at least 1".into());
    }
    Ok(dims)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => EXIT_HOLDS,
        Verdict::Violated => EXIT_VIOLATED,
        Verdict::HypothesisViolated => EXIT_HYPOTHESIS,
    }
}

fn cmd_verify(
    ineq: &str,
    files: &[PathBuf],
    tol: &TolArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let id: InequalityId = ineq.parse().map_err(Failure::usage)?;
    let tol = tol.tolerance()?;
    let inputs = files
        .iter()
        .map(|p| read_matrix(p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    let opts = CheckOptions::with_tol(tol);
    let report = check_with(id, &inputs, &opts).map_err(|e| Failure::usage(e.to_string()))?;
    let code = verdict_code(report.verdict);
    let _ = writeln!(
        err,
        "{id}: {} (min margin {}, tolerance {})",
        report.verdict.as_str(),
        sig6(report.min_margin),
        sig6(report.tol_used)
    );
    if let Some(h) = report.failing_hypothesis() {
        let _ = writeln!(
            err,
            "hypothesis {} failed: residual {}",
            h.name,
            sig6(h.residual)
        );
    }
    let file = ReportFile::new(ReportBody::Verify {
        files: files.iter().map(|p| p.display().to_string()).collect(),
        witness: Witness::new(inputs, report, opts),
    });
    write_out(out, &file.to_json())?;
    Ok(code)
}

fn cmd_repro(fixture: &str, json: bool, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let fixture = match fixture {
        "ex-2.2" => Fixture::Ex22,
        "ex-2.3" => Fixture::Ex23,
        other => {
            return Err(Failure::usage(format!(
                "unknown fixture '{other}' (expected ex-2.2 or ex-2.3)"
            )))
        }
    };
    let result = repro::run(fixture).map_err(|e| Failure::usage(e.to_string()))?;
    let text = repro::render(&result);
    let file = ReportFile::new(ReportBody::Repro { result });
    if let Some(path) = path {
        write_file(path, &file)?;
    }
    write_out(out, &if json { file.to_json() } else { text })?;
    Ok(EXIT_HOLDS)
}

fn catalog() -> String {
    let mut s = String::new();
    for id in InequalityId::ALL {
        s.push_str(&format!(
            "{:<18} {:<26} {}\n",
            id.as_str(),
            canonical_class(id).as_str(),
            id.statement()
        ));
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    ineq: &str,
    class: Option<&str>,
    dims: &str,
    trials: u64,
    seed: u64,
    tol: &TolArgs,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    if ineq == "list" {
        write_out(out, &catalog())?;
        return Ok(EXIT_HOLDS);
    }
    let class: Option<GeneratorClass> =
        class.map(str::parse).transpose().map_err(Failure::usage)?;
    let targets: Vec<CampaignTarget> = if ineq == "all" {
        if class.is_some() {
            return Err(Failure::usage("--class cannot be combined with --ineq all"));
        }
        InequalityId::ALL
            .iter()
            .map(|&id| CampaignTarget::canonical(id))
            .collect()
    } else {
        let id: InequalityId = ineq.parse().map_err(Failure::usage)?;
        vec![CampaignTarget::new(
            id,
            class.unwrap_or_else(|| canonical_class(id)),
        )]
    };
    let config = CampaignConfig {
        targets,
        dims: parse_dims(dims).map_err(Failure::usage)?,
        trials_per_dim: trials,
        seed,
        tol: tol.tolerance()?,
    };
    let result = run_campaign(&config).map_err(|e| Failure::usage(e.to_string()))?;

    let mut text = String::new();
    for t in &result.targets {
        text.push_str(&format!(
            "{} × {}: {} trials, holds {}, violated {}, hypothesis_violated {}, errored {}, min margin {}{}\n",
            t.id,
            t.class,
            t.trials,
            t.holds,
            t.violated,
            t.hypothesis_violated,
            t.errored,
            t.min_margin.map(sig6).unwrap_or_else(|| "n/a".into()),
            if t.unexpected_violations() > 0 { "  UNEXPECTED" } else { "" }
        ));
        if let Some(e) = &t.first_error {
            text.push_str(&format!("  first error: {e}\n"));
        }
    }
    write_out(out, &text)?;
    let code = if result.unexpected_violations() > 0 {
        EXIT_VIOLATED
    } else {
        EXIT_HOLDS
    };
    if let Some(path) = path {
        write_file(path, &ReportFile::new(ReportBody::Fuzz { config, result }))?;
    }
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    target: &str,
    budget: u64,
    seed: u64,
    dims: &str,
    steps: u32,
    tol: &TolArgs,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let id: SearchId = target.parse().map_err(Failure::usage)?;
    let target = SearchTarget {
        id,
        budget,
        perturb_steps: steps,
        dims: parse_dims(dims).map_err(Failure::usage)?,
        tol: tol.tolerance()?,
    };
    let outcome =
        search_counterexample(&target, seed).map_err(|e| Failure::usage(e.to_string()))?;
    let (code, line) = match &outcome {
        SearchOutcome::Found { witness, evaluations } => (
            EXIT_HOLDS,
            format!(
                "{id}: witness found after {evaluations} evaluations at n = {} (min margin {}, threshold {})\n",
                witness.inputs[0].n(),
                sig6(witness.report.min_margin),
                sig6(-10.0 * witness.report.tol_used)
            ),
        ),
        SearchOutcome::Exhausted { evaluations, .. } => {
            (EXIT_EXHAUSTED, format!("{id}: exhausted after {evaluations} evaluations\n"))
        }
    };
    write_out(out, &line)?;
    if let Some(path) = path {
        write_file(
            path,
            &ReportFile::new(ReportBody::Search {
                target,
                seed,
                outcome,
            }),
        )?;
    }
    Ok(code)
}

fn cmd_replay(path: &Path, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let file = ReportFile::from_json(&text).map_err(Failure::usage)?;
    let witnesses = file.witnesses();
    if witnesses.is_empty() {
        write_out(out, "no witnesses stored\n")?;
        return Ok(EXIT_HOLDS);
    }
    let mut worst = EXIT_HOLDS;
    for w in witnesses {
        let r = replay(w).map_err(|e| Failure::usage(e.to_string()))?;
        write_out(
            out,
            &format!(
                "{}: {} (min margin {})\n",
                w.id,
                r.verdict.as_str(),
                sig6(r.min_margin)
            ),
        )?;
        worst = worst.max(verdict_code(r.verdict));
    }
    Ok(worst)
}
