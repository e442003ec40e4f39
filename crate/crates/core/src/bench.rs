//! Metrics, the asynchronous-vs-synchronous SINR analysis, and seeded
//! Monte-Carlo sweeps with CSV output.

use std::fs;
use std::path::Path;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::airsim::{
    build_effective_pilots, generate_scenario, synthesize_samples, synthesize_samples_imperfect,
    synthesize_oracle, synthesize_synchronous, EffectivePilotSet, OracleOptions, NoiseCovariance, ReceivedSamples, ScenarioConfig,
    ScenarioRealization,
};
use crate::baselines::{build_stacked_model, run_bomp, run_ga_mmse, run_mp_bsbl_sync, BompConfig};
use crate::detector::{run_detector, DetectorConfig};
use crate::error::{Error, Result};
use crate::waveform::PulseShape;

// ---- metrics ----------------------------------------------------------------

/// Activity-detection error rate: fraction of mismatched indicators.
pub fn aer(truth: &[bool], estimate: &[bool]) -> Result<f64> {
    if truth.len() != estimate.len() || truth.is_empty() {
        return Err(Error::Contract(format!(
            "activity vectors of lengths {} and {}",
            truth.len(),
            estimate.len()
        )));
    }
    let wrong = truth.iter().zip(estimate).filter(|(a, b)| a != b).count();
    Ok(wrong as f64 / truth.len() as f64)
}

/// Channel-estimation MSE averaged over all `K M` entries.
pub fn ce_mse(truth: &DMatrix<Complex64>, estimate: &DMatrix<Complex64>) -> Result<f64> {
    if truth.shape() != estimate.shape() || truth.is_empty() {
        return Err(Error::Contract(format!(
            "channel shapes {:?} and {:?}",
            truth.shape(),
            estimate.shape()
        )));
    }
    let e: f64 = truth.iter().zip(estimate.iter()).map(|(a, b)| (a - b).norm_sqr()).sum();
    Ok(e / truth.len() as f64)
}

pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

// ---- SINR analysis ------------------------------------------------------------

/// Per-UE SINR of the forward messages at symbol `symbol`, with shared noise
/// precision `lambda` and a common backward variance `variance` for every
/// interferer. Returns `(asynchronous, synchronous)`; the synchronous case
/// uses the raw pilots in place of the effective ones.
pub fn sinr_pair(
    pilots: &EffectivePilotSet,
    raw: &DMatrix<Complex64>,
    symbol: usize,
    lambda: f64,
    variance: f64,
) -> (Vec<f64>, Vec<f64>) {
    let k = pilots.num_ues();
    let sinr = |gain: f64, interference: f64| gain / (1.0 / lambda + variance * interference);
    let asy = (0..k)
        .map(|ue| {
            let i: f64 = (0..k)
                .filter(|&j| j != ue)
                .map(|j| pilots.get(ue, symbol, j).norm_sqr())
                .sum();
            sinr(pilots.get(ue, symbol, ue).norm_sqr(), i)
        })
        .collect();
    let syn = (0..k)
        .map(|ue| {
            let i: f64 = (0..k).filter(|&j| j != ue).map(|j| raw[(symbol, j)].norm_sqr()).sum();
            sinr(raw[(symbol, ue)].norm_sqr(), i)
        })
        .collect();
    (asy, syn)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SinrSpec {
    pub num_ues: usize,
    pub pilot_length: usize,
    pub draws: usize,
    /// Shared noise precision `λ̂`.
    pub lambda: f64,
    /// Shared backward variance of the interferers.
    pub variance: f64,
    pub seed: u64,
}

impl Default for SinrSpec {
    fn default() -> Self {
        Self {
            num_ues: 10,
            pilot_length: 16,
            draws: 1000,
            lambda: 10.0,
            variance: 1.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinrSummary {
    pub draws: usize,
    pub mean_sinr_asy: f64,
    pub mean_sinr_syn: f64,
    /// Mean `|p̄^l_{k,k'}|²` over `k ≠ k'`.
    pub interference_asy: f64,
    /// Mean `|p^l_{k'}|²` over the same pairs.
    pub interference_syn: f64,
}

/// Monte-Carlo over Gaussian pilots and uniform delays. Only interior symbols
/// (`1 ..= L_p - 2`) are averaged: at the block edges part of an interferer's
/// pulse falls into the silent guard interval, which would bias the
/// interference factor downwards.
pub fn run_sinr_monte_carlo(spec: &SinrSpec) -> Result<SinrSummary> {
    if spec.num_ues < 2 || spec.pilot_length < 3 || spec.draws < 1 {
        return Err(Error::Config(
            "SINR Monte-Carlo needs K >= 2, L_p >= 3 and at least one draw".into(),
        ));
    }
    if !(spec.lambda > 0.0 && spec.variance > 0.0) {
        return Err(Error::Config("lambda and variance must be positive".into()));
    }
    let shape = PulseShape::default();
    let parts: Vec<Result<[f64; 5]>> = (0..spec.draws)
        .into_par_iter()
        .map(|d| {
            let cfg = ScenarioConfig {
                num_ues: spec.num_ues,
                num_antennas: 1,
                pilot_length: spec.pilot_length,
                activation_prob: 1.0,
                seed: child_seed(spec.seed, 0, d as u64),
                ..Default::default()
            };
            let r = generate_scenario(&cfg)?;
            let p = build_effective_pilots(&r, &shape)?;
            let k = spec.num_ues;
            let mut acc = [0.0; 5];
            for l in 1..spec.pilot_length - 1 {
                let (a, s) = sinr_pair(&p, &r.pilots, l, spec.lambda, spec.variance);
                acc[0] += a.iter().sum::<f64>();
                acc[1] += s.iter().sum::<f64>();
                acc[4] += k as f64;
                for ue in 0..k {
                    for j in (0..k).filter(|&j| j != ue) {
                        acc[2] += p.get(ue, l, j).norm_sqr();
                        acc[3] += r.pilots[(l, j)].norm_sqr();
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut tot = [0.0; 5];
    for p in parts {
        for (t, v) in tot.iter_mut().zip(p?) {
            *t += v;
        }
    }
    let pairs = tot[4] * (spec.num_ues - 1) as f64;
    Ok(SinrSummary {
        draws: spec.draws,
        mean_sinr_asy: tot[0] / tot[4],
        mean_sinr_syn: tot[1] / tot[4],
        interference_asy: tot[2] / pairs,
        interference_syn: tot[3] / pairs,
    })
}

// ---- seeding -------------------------------------------------------------------

/// SplitMix64 finalizer; a bijection on `u64`.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` at grid point `point`. Injective in `(point, trial)`
/// for indices below `2^32`, since every stage is a bijection.
pub fn child_seed(master: u64, point: u64, trial: u64) -> u64 {
    debug_assert!(point < 1 << 32 && trial < 1 << 32);
    mix(master.wrapping_add(mix((point << 32) | trial)))
}

// ---- closed form vs quadrature ------------------------------------------------

/// Random noiseless rounds on which the closed-form synthesis is compared with
/// the continuous-time quadrature reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleCheckSpec {
    pub scenarios: usize,
    pub max_ues: usize,
    pub max_pilot_length: usize,
    pub num_antennas: usize,
    /// In units of `T_s`.
    pub grid_step: f64,
    /// Delay errors for the imperfect case are uniform in `±max_delay_error T_s`.
    pub max_delay_error: f64,
    pub seed: u64,
}

impl Default for OracleCheckSpec {
    fn default() -> Self {
        Self {
            scenarios: 50,
            max_ues: 4,
            max_pilot_length: 8,
            num_antennas: 2,
            grid_step: 1e-4,
            max_delay_error: 0.4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheckReport {
    pub scenarios: usize,
    pub max_error_perfect: f64,
    pub max_error_imperfect: f64,
}

impl OracleCheckReport {
    pub fn max_error(&self) -> f64 {
        self.max_error_perfect.max(self.max_error_imperfect)
    }
}

pub fn run_oracle_check(spec: &OracleCheckSpec) -> Result<OracleCheckReport> {
    if spec.scenarios < 1 || spec.max_ues < 1 || spec.max_pilot_length < 2 || spec.num_antennas < 1 {
        return Err(Error::Config("oracle check needs scenarios, UEs, antennas >= 1 and L_p >= 2".into()));
    }
    if !(spec.grid_step > 0.0 && spec.grid_step <= 1e-2) {
        return Err(Error::Config("grid_step must be in (0, 1e-2]".into()));
    }
    if !(0.0..1.0).contains(&spec.max_delay_error) {
        return Err(Error::Config("max_delay_error must be in [0, 1)".into()));
    }
    let errors: Vec<(f64, f64)> = (0..spec.scenarios as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let seed = child_seed(spec.seed, 0, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cfg = ScenarioConfig {
                num_ues: rng.gen_range(1..=spec.max_ues),
                pilot_length: rng.gen_range(2..=spec.max_pilot_length),
                num_antennas: spec.num_antennas,
                activation_prob: 1.0,
                seed,
                ..Default::default()
            };
            let mut r = generate_scenario(&cfg)?;
            let shape = PulseShape::default();
            let pilots = build_effective_pilots(&r, &shape)?;
            let cov = NoiseCovariance::build(&r.nominal_delays, &shape, cfg.pilot_length, 0.0)?;
            let opts = OracleOptions { grid_step: spec.grid_step, ..Default::default() };
            let closed = synthesize_samples(&r, &pilots, &cov, cfg.num_antennas, 0)?;
            let perfect = closed.max_abs_diff(&synthesize_oracle(&r, &shape, opts, None)?);
            let e = spec.max_delay_error;
            for (a, n) in r.actual_delays.iter_mut().zip(&r.nominal_delays) {
                *a = n + if e > 0.0 { rng.gen_range(-e..=e) } else { 0.0 };
            }
            let closed = synthesize_samples_imperfect(&r, &shape, &cov, cfg.num_antennas, 0)?;
            let imperfect = closed.max_abs_diff(&synthesize_oracle(&r, &shape, opts, None)?);
            Ok((perfect, imperfect))
        })
        .collect::<Result<_>>()?;
    Ok(OracleCheckReport {
        scenarios: spec.scenarios,
        max_error_perfect: errors.iter().map(|e| e.0).fold(0.0, f64::max),
        max_error_imperfect: errors.iter().map(|e| e.1).fold(0.0, f64::max),
    })
}

// ---- sweeps ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Pudmp,
    MpBsblSync,
    GaMmse,
    Bomp,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pudmp => "pudmp",
            Algorithm::MpBsblSync => "mp_bsbl_sync",
            Algorithm::GaMmse => "ga_mmse",
            Algorithm::Bomp => "bomp",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// Swept parameters; absent axes stay at the base value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Axes {
    pub snr_db: Vec<f64>,
    pub l_p: Vec<usize>,
    pub m: Vec<usize>,
    pub p_a: Vec<f64>,
    pub sigma_tau: Vec<f64>,
    pub n_it: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub snr_db: f64,
    pub l_p: usize,
    pub m: usize,
    pub p_a: f64,
    pub sigma_tau: f64,
    pub n_it: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub scenario: ScenarioConfig,
    #[serde(default)]
    pub detector: DetectorConfig,
    pub axes: Axes,
    pub trials_per_point: usize,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    #[serde(default)]
    pub bomp: BompConfig,
    /// Off by default so that repeated sweeps produce identical files.
    #[serde(default)]
    pub record_wall_time: bool,
}

fn axis_or<T: Copy>(axis: &[T], base: T) -> Vec<T> {
    if axis.is_empty() {
        vec![base]
    } else {
        axis.to_vec()
    }
}

impl SweepSpec {
    /// Grid points in row-major order over `snr_db, l_p, m, p_a, sigma_tau, n_it`.
    pub fn grid(&self) -> Vec<GridPoint> {
        let (s, d, a) = (&self.scenario, &self.detector, &self.axes);
        let mut out = Vec::new();
        for &snr_db in &axis_or(&a.snr_db, s.snr_db) {
            for &l_p in &axis_or(&a.l_p, s.pilot_length) {
                for &m in &axis_or(&a.m, s.num_antennas) {
                    for &p_a in &axis_or(&a.p_a, s.activation_prob) {
                        for &sigma_tau in &axis_or(&a.sigma_tau, s.delay_error_sigma) {
                            for &n_it in &axis_or(&a.n_it, d.num_iterations) {
                                out.push(GridPoint { snr_db, l_p, m, p_a, sigma_tau, n_it });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn point_configs(&self, p: &GridPoint) -> (ScenarioConfig, DetectorConfig) {
        let scenario = ScenarioConfig {
            snr_db: p.snr_db,
            pilot_length: p.l_p,
            num_antennas: p.m,
            activation_prob: p.p_a,
            delay_error_sigma: p.sigma_tau,
            ..self.scenario.clone()
        };
        let detector = DetectorConfig {
            num_iterations: p.n_it,
            ..self.detector.clone()
        };
        (scenario, detector)
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.axes;
        if [a.snr_db.len(), a.l_p.len(), a.m.len(), a.p_a.len(), a.sigma_tau.len(), a.n_it.len()]
            .iter()
            .all(|n| *n == 0)
        {
            return Err(Error::Config("a sweep needs at least one non-empty axis".into()));
        }
        if self.trials_per_point < 1 || self.trials_per_point as u64 >= 1 << 32 {
            return Err(Error::Config("trials_per_point must be in 1..2^32".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms requested".into()));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(Error::Config(format!("algorithm {} listed twice", a.name())));
            }
        }
        for p in self.grid() {
            let (s, d) = self.point_configs(&p);
            s.validate()?;
            d.validate()?;
        }
        Ok(())
    }
}

/// One aggregated line of sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub snr_db: f64,
    pub l_p: usize,
    pub m: usize,
    pub p_a: f64,
    pub sigma_tau: f64,
    pub n_it: usize,
    pub algorithm: Algorithm,
    /// Means over the trials that completed.
    pub aer: f64,
    pub ce_mse: f64,
    pub ce_mse_db: f64,
    /// Trials attempted.
    pub trials: usize,
    /// Trials whose algorithm run failed.
    pub errors: usize,
    pub wall_time_s: f64,
}

pub const CSV_HEADER: [&str; 13] = [
    "snr_db", "l_p", "m", "p_a", "sigma_tau", "n_it", "algorithm", "aer", "ce_mse", "ce_mse_db",
    "trials", "errors", "wall_time_s",
];

#[derive(Debug, Clone, Copy)]
struct TrialOutcome {
    aer: f64,
    ce_mse: f64,
    seconds: f64,
}

fn sub_seed(child: u64, stream: u64) -> u64 {
    mix(child ^ mix(stream))
}

/// One simulated round with everything the algorithms consume. Noise for the
/// asynchronous receiver and the synchronous reference arm comes from
/// independent sub-streams of `config.seed`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub config: ScenarioConfig,
    pub shape: PulseShape,
    pub realization: ScenarioRealization,
    pub pilots: EffectivePilotSet,
    pub covariance: NoiseCovariance,
    pub samples: ReceivedSamples,
    /// `L_p x M` synchronous-arm observation.
    pub sync_samples: DMatrix<Complex64>,
}

impl Instance {
    pub fn generate(config: &ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let realization = generate_scenario(config)?;
        let shape = PulseShape::default();
        let (pilots, covariance) = Self::derived(config, &realization, &shape)?;
        let noise_seed = sub_seed(config.seed, 1);
        let samples = if realization.has_delay_errors() {
            synthesize_samples_imperfect(&realization, &shape, &covariance, config.num_antennas, noise_seed)?
        } else {
            synthesize_samples(&realization, &pilots, &covariance, config.num_antennas, noise_seed)?
        };
        let sync_samples =
            synthesize_synchronous(&realization, &shape, config.noise_variance(), sub_seed(config.seed, 2))?;
        Ok(Self { config: config.clone(), shape, realization, pilots, covariance, samples, sync_samples })
    }

    /// Effective pilots and noise covariance, which are functions of the
    /// realization and the pulse.
    pub fn derived(
        config: &ScenarioConfig,
        realization: &ScenarioRealization,
        shape: &PulseShape,
    ) -> Result<(EffectivePilotSet, NoiseCovariance)> {
        let pilots = build_effective_pilots(realization, shape)?;
        let cov = NoiseCovariance::build(
            &realization.nominal_delays,
            shape,
            realization.pilot_length(),
            config.noise_variance(),
        )?;
        Ok((pilots, cov))
    }

    /// Runs one algorithm; the activity estimate and the `K x M` channel.
    pub fn run(
        &self,
        alg: Algorithm,
        detector: &DetectorConfig,
        bomp: BompConfig,
    ) -> Result<(Vec<bool>, DMatrix<Complex64>)> {
        let r = &self.realization;
        Ok(match alg {
            Algorithm::Pudmp => {
                let out = run_detector(&self.samples, &self.pilots, detector)?;
                (out.activity, out.channel)
            }
            Algorithm::MpBsblSync => {
                let out = run_mp_bsbl_sync(&self.sync_samples, &r.pilots, detector)?;
                (out.activity, out.channel)
            }
            Algorithm::GaMmse => {
                let model = build_stacked_model(&self.samples, &self.pilots, &self.covariance)?;
                (r.activity.clone(), run_ga_mmse(&model, &r.activity)?)
            }
            Algorithm::Bomp => {
                let model = build_stacked_model(&self.samples, &self.pilots, &self.covariance)?;
                let out = run_bomp(&model, r.num_active(), bomp)?;
                let mut act = vec![false; r.num_ues()];
                for &k in &out.support {
                    act[k] = true;
                }
                (act, out.channel)
            }
        })
    }
}

/// Runs every requested algorithm on one Monte-Carlo instance.
fn run_trial(
    scenario: &ScenarioConfig,
    detector: &DetectorConfig,
    spec: &SweepSpec,
    seed: u64,
) -> Vec<Result<TrialOutcome>> {
    let inst = match Instance::generate(&ScenarioConfig { seed, ..scenario.clone() }) {
        Ok(v) => v,
        Err(e) => {
            return spec
                .algorithms
                .iter()
                .map(|_| Err(Error::Numerical(format!("instance setup failed: {e}"))))
                .collect()
        }
    };
    let r = &inst.realization;
    spec.algorithms
        .iter()
        .map(|alg| {
            let start = Instant::now();
            let (activity, channel) = inst.run(*alg, detector, spec.bomp)?;
            Ok(TrialOutcome {
                aer: aer(&r.activity, &activity)?,
                ce_mse: ce_mse(&r.channel, &channel)?,
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// Runs the whole grid. Trials run in parallel; outcomes are reduced in
/// (point, trial) order, so the rows do not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<MetricRow>> {
    spec.validate()?;
    let grid = spec.grid();
    let trials = spec.trials_per_point;
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|p| (0..trials).map(move |t| (p, t)))
        .collect();
    let outcomes: Vec<Vec<Result<TrialOutcome>>> = jobs
        .par_iter()
        .map(|&(p, t)| {
            let (s, d) = spec.point_configs(&grid[p]);
            run_trial(&s, &d, spec, child_seed(spec.master_seed, p as u64, t as u64))
        })
        .collect();

    let mut rows = Vec::with_capacity(grid.len() * spec.algorithms.len());
    for (p, point) in grid.iter().enumerate() {
        let chunk = &outcomes[p * trials..(p + 1) * trials];
        for (a, alg) in spec.algorithms.iter().enumerate() {
            let per_trial = chunk.iter().map(|t| t[a].as_ref().ok().copied());
            rows.push(summarize(point, *alg, per_trial, spec.record_wall_time));
        }
    }
    Ok(rows)
}

/// Folds per-trial outcomes (`None` for a failed run) into one row, in order.
fn summarize(
    point: &GridPoint,
    algorithm: Algorithm,
    outcomes: impl Iterator<Item = Option<TrialOutcome>>,
    record_wall_time: bool,
) -> MetricRow {
    let (mut n, mut trials) = (0usize, 0usize);
    let (mut aer_sum, mut mse_sum, mut secs) = (0.0, 0.0, 0.0);
    for o in outcomes {
        trials += 1;
        if let Some(o) = o {
            n += 1;
            aer_sum += o.aer;
            mse_sum += o.ce_mse;
            secs += o.seconds;
        }
    }
    let mean = |s: f64| if n > 0 { s / n as f64 } else { f64::NAN };
    let ce = mean(mse_sum);
    MetricRow {
        snr_db: point.snr_db,
        l_p: point.l_p,
        m: point.m,
        p_a: point.p_a,
        sigma_tau: point.sigma_tau,
        n_it: point.n_it,
        algorithm,
        aer: mean(aer_sum),
        ce_mse: ce,
        ce_mse_db: to_db(ce),
        trials,
        errors: trials - n,
        wall_time_s: if record_wall_time { secs } else { 0.0 },
    }
}

pub fn write_csv(rows: &[MetricRow], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<Vec<MetricRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(Error::Contract(format!(
            "{}: unexpected CSV header {header:?}",
            path.display()
        )));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}
