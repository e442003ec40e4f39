//! The `gfra` command line.
//!
//! Exit status: 0 on success, 2 for usage errors, 3 for configuration errors
//! (unreadable or invalid config, bad `--set`), 4 for numerical-guard
//! failures, 1 for anything else.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::airsim::ScenarioConfig;
use crate::baselines::{run_mp_bsbl_sync, BompConfig};
use crate::bench::{
    aer, ce_mse, run_oracle_check, run_sinr_monte_carlo, run_sweep, to_db, write_csv, Algorithm,
    Instance, OracleCheckSpec, SinrSpec, SweepSpec,
};
use crate::bundle::{read_bundle, write_bundle};
use crate::detector::{run_detector, DetectionResult, DetectorConfig};
use crate::error::{Error, Result};

/// Largest accepted closed-form vs quadrature discrepancy.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

pub const RESULT_FILE: &str = "result.json";
pub const CHANNEL_FILE: &str = "channel.csv";

#[derive(Debug, Parser)]
#[command(name = "gfra", version, about = "Asynchronous grant-free random access: simulation, detection and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON config file; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path (directory for `simulate` and `detect`, file otherwise).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override a config value by dotted path, e.g. `--set scenario.snr_db=6`.
    /// The value is parsed as JSON, falling back to a plain string.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Seed override (the config's seed or master seed).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one round (config: scenario) and write a sample bundle.
    Simulate(Common),
    /// Run a detector on a saved bundle (config: detector).
    Detect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long, default_value = "pudmp")]
        algo: Algorithm,
    },
    /// Run a Monte-Carlo sweep (config: sweep spec) and write CSV.
    Sweep(Common),
    /// Asynchronous vs synchronous SINR Monte-Carlo.
    Sinr(Common),
    /// Compare the closed-form synthesis against the quadrature reference.
    OracleCheck(Common),
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) => 3,
        e if e.is_numerical() => 4,
        _ => 1,
    }
}

/// Applies one `key.path=value` override onto a JSON document.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{assignment}` is not KEY=VALUE")))?;
    if key.is_empty() || key.split('.').any(str::is_empty) {
        return Err(Error::Config(format!("override key `{key}` is malformed")));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.into()));
    let mut node = doc;
    let mut parts = key.split('.').peekable();
    while let Some(part) = parts.next() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("override `{key}`: `{part}` is not inside an object")))?;
        if parts.peek().is_none() {
            obj.insert(part.into(), value);
            return Ok(());
        }
        node = obj.entry(part).or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split yields at least one part")
}

/// Loads a config: file (or defaults), then overrides, then the seed, and
/// only then deserializes, so bad overrides fail exactly like bad files.
pub fn load_config<T: Serialize + DeserializeOwned + Default>(
    common: &Common,
    seed_key: Option<&str>,
) -> Result<T> {
    let mut doc = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))?
        }
        None => serde_json::to_value(T::default())?,
    };
    for o in &common.overrides {
        apply_override(&mut doc, o)?;
    }
    if let (Some(seed), Some(key)) = (common.seed, seed_key) {
        apply_override(&mut doc, &format!("{key}={seed}"))?;
    }
    serde_json::from_value(doc).map_err(|e| Error::Config(e.to_string()))
}

fn require_out(common: &Common) -> Result<&Path> {
    common
        .out
        .as_deref()
        .ok_or_else(|| Error::Config("--out is required for this command".into()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)?).map_err(|e| Error::io(path, e))
}

fn simulate(common: &Common) -> Result<()> {
    let cfg: ScenarioConfig = load_config(common, Some("seed"))?;
    cfg.validate()?;
    let out = require_out(common)?;
    let inst = Instance::generate(&cfg)?;
    write_bundle(out, &inst)?;
    if !common.quiet {
        println!(
            "wrote {}: K={} L_p={} M={} active={} snr_db={}",
            out.display(),
            cfg.num_ues,
            cfg.pilot_length,
            cfg.num_antennas,
            inst.realization.num_active(),
            cfg.snr_db
        );
    }
    Ok(())
}

fn detect(common: &Common, bundle: &Path, algo: Algorithm) -> Result<()> {
    // the algorithms are deterministic given the bundle; --seed has nothing to seed
    let cfg: DetectorConfig = load_config(common, None)?;
    cfg.validate()?;
    let inst = read_bundle(bundle)?;
    let r = &inst.realization;
    let result = match algo {
        Algorithm::Pudmp => run_detector(&inst.samples, &inst.pilots, &cfg)?,
        Algorithm::MpBsblSync => run_mp_bsbl_sync(&inst.sync_samples, &r.pilots, &cfg)?,
        Algorithm::GaMmse | Algorithm::Bomp => {
            let (activity, channel) = inst.run(algo, &cfg, BompConfig::default())?;
            DetectionResult {
                activity,
                gamma: Vec::new(),
                channel,
                gamma_trace: Vec::new(),
                lambda_trace: Vec::new(),
                epsilon_trace: Vec::new(),
            }
        }
    };
    let out = common.out.as_deref().unwrap_or(bundle);
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    result.write_json(&out.join(RESULT_FILE))?;
    result.write_channel_csv(&out.join(CHANNEL_FILE))?;
    if !common.quiet {
        let mse = ce_mse(&r.channel, &result.channel)?;
        println!(
            "{}: detected {}/{} (true active {}), aer {:.4}, ce_mse {:.3e} ({:.2} dB)",
            algo.name(),
            result.num_detected(),
            r.num_ues(),
            r.num_active(),
            aer(&r.activity, &result.activity)?,
            mse,
            to_db(mse)
        );
    }
    Ok(())
}

fn sweep(common: &Common) -> Result<()> {
    // a sweep spec has no sensible default, so the file is mandatory
    if common.config.is_none() {
        return Err(Error::Config("sweep needs --config <spec.json>".into()));
    }
    let doc: Value = load_config(common, Some("master_seed"))?;
    let spec: SweepSpec = serde_json::from_value(doc).map_err(|e| Error::Config(e.to_string()))?;
    spec.validate()?;
    let out = require_out(common)?;
    let rows = run_sweep(&spec)?;
    write_csv(&rows, out)?;
    if !common.quiet {
        println!("{:>7} {:>4} {:>3} {:>5} {:>9} {:>4} {:>13} {:>9} {:>9} {:>6}",
            "snr_db", "l_p", "m", "p_a", "sigma_tau", "n_it", "algorithm", "aer", "ce_mse_db", "errors");
        for r in &rows {
            println!(
                "{:>7} {:>4} {:>3} {:>5} {:>9} {:>4} {:>13} {:>9.5} {:>9.2} {:>6}",
                r.snr_db, r.l_p, r.m, r.p_a, r.sigma_tau, r.n_it, r.algorithm.name(), r.aer, r.ce_mse_db, r.errors
            );
        }
        println!("wrote {} rows to {}", rows.len(), out.display());
    }
    Ok(())
}

fn sinr(common: &Common) -> Result<()> {
    let spec: SinrSpec = load_config(common, Some("seed"))?;
    let s = run_sinr_monte_carlo(&spec)?;
    if !common.quiet {
        println!("draws {} (K={}, L_p={}, lambda={}, variance={})",
            s.draws, spec.num_ues, spec.pilot_length, spec.lambda, spec.variance);
        println!("{:<14} {:>12} {:>14}", "", "mean SINR", "interference");
        println!("{:<14} {:>12.4} {:>14.4}", "asynchronous", s.mean_sinr_asy, s.interference_asy);
        println!("{:<14} {:>12.4} {:>14.4}", "synchronous", s.mean_sinr_syn, s.interference_syn);
    }
    if let Some(out) = &common.out {
        write_json(out, &s)?;
    }
    Ok(())
}

fn oracle_check(common: &Common) -> Result<()> {
    let spec: OracleCheckSpec = load_config(common, Some("seed"))?;
    let rep = run_oracle_check(&spec)?;
    if let Some(out) = &common.out {
        write_json(out, &rep)?;
    }
    if !common.quiet {
        println!(
            "{} scenarios, grid step {}: max error {:.3e} (perfect timing {:.3e}, delay errors {:.3e})",
            rep.scenarios,
            spec.grid_step,
            rep.max_error(),
            rep.max_error_perfect,
            rep.max_error_imperfect
        );
    }
    if !(rep.max_error() <= ORACLE_TOLERANCE) {
        return Err(Error::Numerical(format!(
            "oracle discrepancy {:.3e} exceeds {ORACLE_TOLERANCE:e}",
            rep.max_error()
        )));
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("GFRA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Config(format!("GFRA_THREADS=`{v}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot size the thread pool: {e}")))
}

pub fn dispatch(cli: &Cli) -> Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::Simulate(c) => simulate(c),
        Command::Detect { common, bundle, algo } => detect(common, bundle, *algo),
        Command::Sweep(c) => sweep(c),
        Command::Sinr(c) => sinr(c),
        Command::OracleCheck(c) => oracle_check(c),
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gfra: error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
