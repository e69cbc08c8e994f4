//! `rplus`: runs the experiments and writes canonical reports.
//!
//! Exit codes: 0 all checks passed, 1 a check failed or errored (or a golden
//! fixture drifted), 2 invalid configuration or input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rplus_core::report::golden::{check_golden, fixture_dir, GoldenOutcome};
use rplus_core::report::{diff_reports, run_experiment, ExperimentConfig, ExperimentReport};
use rplus_core::Error;

#[derive(Parser)]
#[command(name = "rplus", version, about = "Exact experiments on the Fermat cubic and its cube-root tower")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identity checks for each tower level.
    TowerVerify(RunArgs),
    /// Colon witnesses, valuations and the z² ∉ (x, y) decision.
    TowerColon(RunArgs),
    /// The averaging retraction A₁ → A.
    TowerTrace(RunArgs),
    /// Frobenius closure and tight-closure multipliers over 𝔽ₚ.
    Charp(RunArgs),
    /// The doubling endomorphism and membership of m(z²).
    Isogeny(RunArgs),
    /// Successive approximation over (ℤ/pᴺ)[x, y, z]/(x³ + y³ + z³).
    Padic(RunArgs),
    /// Every experiment in one report.
    All(RunArgs),
    /// Structural difference of two JSON reports.
    Diff { left: PathBuf, right: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    /// JSON or TOML configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    max_level: Option<u32>,
    /// Prime(s); repeatable.
    #[arg(long = "p")]
    primes: Vec<u64>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    deg_bound: Option<u64>,
    #[arg(long)]
    e_max: Option<u32>,
    /// Isogeny level n (membership modulo 2ⁿ).
    #[arg(long)]
    n: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u32>,
    /// File holding α for the p-adic experiment ('#' starts a comment).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Keep only checks whose name starts with this prefix (`all` keeps every check).
    #[arg(long, default_value = "all")]
    check: String,
    /// Compare with (or freeze) the fixture `<NAME>.json` in $RPLUS_FIXTURES (default ./fixtures).
    #[arg(long, value_name = "NAME")]
    golden: Option<String>,
}

fn config_error(field: &str, msg: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        msg: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| config_error("file", format!("{}: {e}", path.display())))
}

fn build_config(name: &str, a: &RunArgs) -> Result<ExperimentConfig, Error> {
    let mut c = match &a.config {
        Some(path) => {
            let text = read(path)?;
            if path.extension().is_some_and(|e| e == "toml") {
                ExperimentConfig::from_toml(&text)?
            } else {
                ExperimentConfig::from_json(&text)?
            }
        }
        None => ExperimentConfig::default(),
    };
    if let Some(v) = a.max_level {
        c.max_level = v;
        c.full_colon_max = c.full_colon_max.min(v);
        c.properness_max = c.properness_max.min(v);
    }
    if !a.primes.is_empty() {
        match name {
            "charp" => c.primes = a.primes.clone(),
            "padic" => c.padic_primes = a.primes.clone(),
            "isogeny" => {
                if a.primes != [2] {
                    return Err(config_error("p", "the isogeny experiment models multiplication by 2"));
                }
            }
            "all" => {
                c.primes = a.primes.clone();
                c.padic_primes = a.primes.clone();
            }
            _ => return Err(config_error("p", format!("`{name}` takes no prime"))),
        }
    }
    if let Some(v) = a.precision {
        c.precision = v;
    }
    if let Some(v) = a.deg_bound {
        c.deg_bound = v;
    }
    if let Some(v) = a.e_max {
        c.e_max = v;
    }
    if let Some(v) = a.n {
        c.isogeny_n = v;
    }
    if let Some(v) = a.seed {
        c.seed = v;
    }
    if let Some(v) = a.trials {
        c.trials = v;
    }
    if let Some(path) = &a.input {
        let text: String = read(path)?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        if text.is_empty() {
            return Err(config_error("input", "no polynomial in the input file"));
        }
        c.alpha = Some(text);
    }
    c.validate()?;
    Ok(c)
}

fn run(name: &str, a: &RunArgs) -> Result<bool, Error> {
    let config = build_config(name, a)?;
    let mut report = run_experiment(name, &config)?;
    if a.check != "all" {
        let kept: Vec<_> = report
            .checks
            .into_iter()
            .filter(|c| c.name.starts_with(&a.check))
            .collect();
        if kept.is_empty() {
            return Err(config_error("check", format!("no check named `{}*`", a.check)));
        }
        let mut echo = config.echo();
        echo["check"] = a.check.clone().into();
        report = ExperimentReport::new(name, echo, kept);
    }
    match a.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if let Some(path) = &a.report {
        std::fs::write(path, report.to_json())
            .map_err(|e| config_error("report", format!("{}: {e}", path.display())))?;
    }
    let mut ok = report.passed();
    if let Some(g) = &a.golden {
        match check_golden(&report, &fixture_dir(Path::new("fixtures")), g)? {
            GoldenOutcome::Frozen(p) => eprintln!("froze {}", p.display()),
            GoldenOutcome::Matched(p) => eprintln!("matches {}", p.display()),
            GoldenOutcome::Drifted(p, diffs) => {
                eprintln!("drift against {}:", p.display());
                for d in diffs {
                    eprintln!("  {} {}: {} -> {}", d.check, d.field, d.left, d.right);
                }
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn diff(left: &Path, right: &Path) -> Result<bool, Error> {
    let a = ExperimentReport::from_json(&read(left)?)?;
    let b = ExperimentReport::from_json(&read(right)?)?;
    let diffs = diff_reports(&a, &b)?;
    for d in &diffs {
        println!("{}\t{}\t{}\t{}", d.check, d.field, d.left, d.right);
    }
    Ok(diffs.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::TowerVerify(a) => run("tower-verify", a),
        Command::TowerColon(a) => run("tower-colon", a),
        Command::TowerTrace(a) => run("tower-trace", a),
        Command::Charp(a) => run("charp", a),
        Command::Isogeny(a) => run("isogeny", a),
        Command::Padic(a) => run("padic", a),
        Command::All(a) => run("all", a),
        Command::Diff { left, right } => diff(left, right),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
