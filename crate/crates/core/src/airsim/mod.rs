//! Random-access scenario generation and matched-filter sample synthesis.
//!
//! Delays are expressed in the pulse's time unit (fractions of a symbol when
//! `T_s = 1`). UEs are indexed in ascending order of nominal delay.

mod noise;
mod synth;

pub use noise::{draw_correlated_noise, NoiseCovariance};
pub use synth::{
    synthesize_oracle, synthesize_samples, synthesize_samples_imperfect, synthesize_synchronous,
    OracleOptions,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::cmat;
use crate::waveform::PulseShape;

/// Normalized symbol period used by scenario generation.
pub const SYMBOL_PERIOD: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DelayModel {
    /// i.i.d. uniform on `[0, T_s)`.
    #[default]
    UniformInSymbol,
    /// One delay per UE as a fraction of `T_s`; folded modulo `T_s` and sorted.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PilotModel {
    #[default]
    GaussianUnitVariance,
    UnitModulusRandomPhase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub num_ues: usize,
    pub num_antennas: usize,
    pub pilot_length: usize,
    pub activation_prob: f64,
    pub snr_db: f64,
    #[serde(default)]
    pub delay_model: DelayModel,
    /// Standard deviation of the delay error, as a fraction of `T_s`.
    #[serde(default)]
    pub delay_error_sigma: f64,
    #[serde(default)]
    pub pilot_model: PilotModel,
    #[serde(default)]
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            num_ues: 50,
            num_antennas: 8,
            pilot_length: 20,
            activation_prob: 0.1,
            snr_db: 10.0,
            delay_model: DelayModel::UniformInSymbol,
            delay_error_sigma: 0.0,
            pilot_model: PilotModel::GaussianUnitVariance,
            seed: 0,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.num_ues < 1 {
            return bad("num_ues must be at least 1".into());
        }
        if self.num_antennas < 1 {
            return bad("num_antennas must be at least 1".into());
        }
        if self.pilot_length < 2 {
            return bad("pilot_length must be at least 2".into());
        }
        if !(0.0..=1.0).contains(&self.activation_prob) {
            return bad(format!(
                "activation_prob {} outside [0, 1]",
                self.activation_prob
            ));
        }
        if !self.snr_db.is_finite() {
            return bad("snr_db must be finite".into());
        }
        if !(self.delay_error_sigma >= 0.0 && self.delay_error_sigma.is_finite()) {
            return bad(format!(
                "delay_error_sigma {} must be a finite nonnegative number",
                self.delay_error_sigma
            ));
        }
        if let DelayModel::Explicit(d) = &self.delay_model {
            if d.len() != self.num_ues {
                return bad(format!(
                    "explicit delay list has {} entries for {} UEs",
                    d.len(),
                    self.num_ues
                ));
            }
            if d.iter().any(|x| !x.is_finite()) {
                return bad("explicit delays must be finite".into());
            }
        }
        Ok(())
    }

    /// `sigma_n^2 = 10^(-snr_db / 10)`.
    pub fn noise_variance(&self) -> f64 {
        10f64.powf(-self.snr_db / 10.0)
    }
}

/// One random-access round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRealization {
    pub symbol_period: f64,
    /// `L_p x K`, entry `(l, k)` is `p_k^l`.
    #[serde(with = "cmat")]
    pub pilots: DMatrix<Complex64>,
    /// Sorted ascending, each in `[0, T_s)`.
    pub nominal_delays: Vec<f64>,
    pub actual_delays: Vec<f64>,
    pub activity: Vec<bool>,
    /// `K x M` small-scale gains `g_k^m`.
    #[serde(with = "cmat")]
    pub gains: DMatrix<Complex64>,
    /// `K x M`, row `k` is `alpha_k` times row `k` of `gains`.
    #[serde(with = "cmat")]
    pub channel: DMatrix<Complex64>,
}

impl ScenarioRealization {
    pub fn num_ues(&self) -> usize {
        self.pilots.ncols()
    }

    pub fn pilot_length(&self) -> usize {
        self.pilots.nrows()
    }

    pub fn num_antennas(&self) -> usize {
        self.gains.ncols()
    }

    pub fn num_active(&self) -> usize {
        self.activity.iter().filter(|a| **a).count()
    }

    pub fn delay_errors(&self) -> Vec<f64> {
        self.actual_delays
            .iter()
            .zip(&self.nominal_delays)
            .map(|(a, n)| a - n)
            .collect()
    }

    pub fn has_delay_errors(&self) -> bool {
        self.actual_delays != self.nominal_delays
    }

    /// Pilot symbol `p_k^l` for a 0-based symbol index; zero outside the
    /// pilot block (guard interval / frame start).
    #[inline]
    pub fn pilot(&self, ue: usize, symbol: isize) -> Complex64 {
        if symbol < 0 || symbol as usize >= self.pilot_length() {
            Complex64::new(0.0, 0.0)
        } else {
            self.pilots[(symbol as usize, ue)]
        }
    }

    /// The same round observed synchronously: every nominal delay is zero and
    /// each actual delay keeps its error.
    pub fn synchronous_view(&self) -> Self {
        let errors = self.delay_errors();
        Self {
            nominal_delays: vec![0.0; self.num_ues()],
            actual_delays: errors,
            ..self.clone()
        }
    }

    /// Checks the ordering and spread preconditions of the closed forms.
    pub fn check_delay_profile(&self) -> Result<()> {
        check_delays(&self.nominal_delays, self.symbol_period)
    }
}

pub(crate) fn check_delays(delays: &[f64], symbol_period: f64) -> Result<()> {
    if delays.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Contract("delays must be sorted ascending".into()));
    }
    if let (Some(first), Some(last)) = (delays.first(), delays.last()) {
        if !(last - first < symbol_period) {
            return Err(Error::Contract(format!(
                "maximum relative delay {} is not below T_s = {symbol_period}",
                last - first
            )));
        }
    }
    Ok(())
}

fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn generate_scenario(config: &ScenarioConfig) -> Result<ScenarioRealization> {
    config.validate()?;
    let (k, m, lp) = (config.num_ues, config.num_antennas, config.pilot_length);
    let ts = SYMBOL_PERIOD;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let pilots = DMatrix::from_fn(lp, k, |_, _| match config.pilot_model {
        PilotModel::GaussianUnitVariance => complex_gaussian(&mut rng),
        PilotModel::UnitModulusRandomPhase => {
            Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
        }
    });

    let mut nominal_delays: Vec<f64> = match &config.delay_model {
        DelayModel::UniformInSymbol => (0..k).map(|_| rng.gen_range(0.0..ts)).collect(),
        DelayModel::Explicit(d) => d.iter().map(|x| (x * ts).rem_euclid(ts)).collect(),
    };
    nominal_delays.sort_by(f64::total_cmp);

    let activity: Vec<bool> = (0..k)
        .map(|_| rng.gen::<f64>() < config.activation_prob)
        .collect();
    let gains = DMatrix::from_fn(k, m, |_, _| complex_gaussian(&mut rng));
    let channel = DMatrix::from_fn(k, m, |i, j| {
        if activity[i] {
            gains[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    let sigma = config.delay_error_sigma * ts;
    let actual_delays = nominal_delays
        .iter()
        .map(|&t| {
            if sigma > 0.0 {
                let e: f64 = StandardNormal.sample(&mut rng);
                t + sigma * e
            } else {
                t
            }
        })
        .collect();

    Ok(ScenarioRealization {
        symbol_period: ts,
        pilots,
        nominal_delays,
        actual_delays,
        activity,
        gains,
        channel,
    })
}

/// The effective pilot matrices `P̄_k` (`L_p x K` each), one per matched filter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectivePilotSet {
    #[serde(with = "pilot_list")]
    matrices: Vec<DMatrix<Complex64>>,
}

mod pilot_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrapped(#[serde(with = "cmat")] DMatrix<Complex64>);

    pub fn serialize<S: Serializer>(v: &[DMatrix<Complex64>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let w: Vec<Wrapped> = v.iter().cloned().map(Wrapped).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<DMatrix<Complex64>>, D::Error> {
        Ok(Vec::<Wrapped>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

impl EffectivePilotSet {
    pub fn from_matrices(matrices: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let k = matrices.len();
        if k == 0 {
            return Err(Error::Contract("empty effective pilot set".into()));
        }
        let lp = matrices[0].nrows();
        if matrices.iter().any(|m| m.nrows() != lp || m.ncols() != k) {
            return Err(Error::Contract(format!(
                "every effective pilot matrix must be {lp}x{k}"
            )));
        }
        Ok(Self { matrices })
    }

    /// Synchronous set: every filter sees the raw pilot matrix.
    pub fn synchronous(pilots: &DMatrix<Complex64>) -> Self {
        Self {
            matrices: vec![pilots.clone(); pilots.ncols()],
        }
    }

    pub fn num_ues(&self) -> usize {
        self.matrices.len()
    }

    pub fn pilot_length(&self) -> usize {
        self.matrices[0].nrows()
    }

    /// `p̄^l_{filter, ue}`.
    #[inline]
    pub fn get(&self, filter: usize, symbol: usize, ue: usize) -> Complex64 {
        self.matrices[filter][(symbol, ue)]
    }

    pub fn matrix(&self, filter: usize) -> &DMatrix<Complex64> {
        &self.matrices[filter]
    }
}

/// Symbol taps seen by a filter when a UE's pulse train is offset by `delta`
/// (UE delay minus filter delay). Each tap `(shift, weight)` contributes
/// `weight * p^{l - shift}` to sample `l`. For `delta` in `(0, T_s]` this is
/// `p^l rho(delta) + p^{l-1} rho(T_s - delta)`; for `delta` in `(-T_s, 0]` it is
/// `p^l rho(-delta) + p^{l+1} rho(T_s + delta)`; larger offsets shift whole
/// symbols, covering all four relative-delay branches of the mismatched case.
pub(crate) fn symbol_taps(shape: &PulseShape, delta: f64) -> Result<[(isize, f64); 2]> {
    let ts = shape.symbol_period();
    if delta > 0.0 && delta <= ts {
        Ok([
            (0, shape.autocorrelation(delta)?),
            (1, shape.autocorrelation(ts - delta)?),
        ])
    } else if delta <= 0.0 && delta > -ts {
        let d = -delta;
        Ok([
            (0, shape.autocorrelation(d)?),
            (-1, shape.autocorrelation(ts - d)?),
        ])
    } else {
        let n = (delta / ts).floor();
        let rem = (delta - n * ts).clamp(0.0, ts);
        let n = n as isize;
        Ok([
            (n, shape.autocorrelation(rem)?),
            (n + 1, shape.autocorrelation(ts - rem)?),
        ])
    }
}

pub fn build_effective_pilots(
    realization: &ScenarioRealization,
    shape: &PulseShape,
) -> Result<EffectivePilotSet> {
    realization.check_delay_profile()?;
    let (k, lp) = (realization.num_ues(), realization.pilot_length());
    let tau = &realization.nominal_delays;
    let mut matrices = Vec::with_capacity(k);
    for filter in 0..k {
        let mut pbar = DMatrix::<Complex64>::zeros(lp, k);
        for ue in 0..k {
            if ue == filter {
                pbar.set_column(ue, &realization.pilots.column(ue));
                continue;
            }
            let taps = symbol_taps(shape, tau[ue] - tau[filter])?;
            for l in 0..lp {
                pbar[(l, ue)] = taps
                    .iter()
                    .map(|&(shift, w)| realization.pilot(ue, l as isize - shift) * w)
                    .sum();
            }
        }
        matrices.push(pbar);
    }
    Ok(EffectivePilotSet { matrices })
}

/// Matched-filter outputs `y^m_k(l)` for all antennas, filters and symbols
/// (also used for noise tensors). Storage is antenna-major, then filter, then
/// symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedSamples {
    num_antennas: usize,
    num_ues: usize,
    pilot_length: usize,
    data: Vec<Complex64>,
}

impl ReceivedSamples {
    pub fn zeros(num_antennas: usize, num_ues: usize, pilot_length: usize) -> Self {
        Self {
            num_antennas,
            num_ues,
            pilot_length,
            data: vec![Complex64::new(0.0, 0.0); num_antennas * num_ues * pilot_length],
        }
    }

    pub fn from_vec(
        num_antennas: usize,
        num_ues: usize,
        pilot_length: usize,
        data: Vec<Complex64>,
    ) -> Result<Self> {
        if data.len() != num_antennas * num_ues * pilot_length {
            return Err(Error::Contract(format!(
                "sample buffer has {} entries, expected {num_antennas}x{num_ues}x{pilot_length}",
                data.len()
            )));
        }
        Ok(Self {
            num_antennas,
            num_ues,
            pilot_length,
            data,
        })
    }

    pub fn num_antennas(&self) -> usize {
        self.num_antennas
    }

    pub fn num_ues(&self) -> usize {
        self.num_ues
    }

    pub fn pilot_length(&self) -> usize {
        self.pilot_length
    }

    #[inline]
    fn index(&self, antenna: usize, filter: usize, symbol: usize) -> usize {
        (antenna * self.num_ues + filter) * self.pilot_length + symbol
    }

    #[inline]
    pub fn get(&self, antenna: usize, filter: usize, symbol: usize) -> Complex64 {
        self.data[self.index(antenna, filter, symbol)]
    }

    #[inline]
    pub fn get_mut(&mut self, antenna: usize, filter: usize, symbol: usize) -> &mut Complex64 {
        let i = self.index(antenna, filter, symbol);
        &mut self.data[i]
    }

    /// The `L_p` samples of one filter on one antenna.
    pub fn filter_output(&self, antenna: usize, filter: usize) -> &[Complex64] {
        let start = self.index(antenna, filter, 0);
        &self.data[start..start + self.pilot_length]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_ue_realization() -> ScenarioRealization {
        let pilots = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.3, 0.1),
                Complex64::new(1.0, 0.0),
                Complex64::new(-0.7, 0.2),
                Complex64::new(-1.0, 0.0),
            ],
        );
        let gains = DMatrix::from_element(2, 1, Complex64::new(1.0, 0.0));
        ScenarioRealization {
            symbol_period: 1.0,
            pilots,
            nominal_delays: vec![0.0, 0.25],
            actual_delays: vec![0.0, 0.25],
            activity: vec![true, true],
            gains: gains.clone(),
            channel: gains,
        }
    }

    #[test]
    fn inactive_round_has_zero_channel() {
        let cfg = ScenarioConfig {
            num_ues: 30,
            activation_prob: 0.0,
            ..Default::default()
        };
        let r = generate_scenario(&cfg).unwrap();
        assert!(r.activity.iter().all(|a| !a));
        assert!(r.channel.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn generation_is_deterministic_in_seed() {
        let cfg = ScenarioConfig {
            seed: 99,
            delay_error_sigma: 0.1,
            ..Default::default()
        };
        assert_eq!(generate_scenario(&cfg).unwrap(), generate_scenario(&cfg).unwrap());
        let other = ScenarioConfig { seed: 100, ..cfg };
        assert_ne!(generate_scenario(&other).unwrap().pilots, generate_scenario(&ScenarioConfig { seed: 99, ..Default::default() }).unwrap().pilots);
    }

    #[test]
    fn gain_second_moment_is_unit() {
        let cfg = ScenarioConfig {
            num_ues: 1000,
            num_antennas: 16,
            activation_prob: 1.0,
            seed: 5,
            ..Default::default()
        };
        let r = generate_scenario(&cfg).unwrap();
        let m2 = r.gains.iter().map(|z| z.norm_sqr()).sum::<f64>() / r.gains.len() as f64;
        assert!((m2 - 1.0).abs() < 0.02, "{m2}");
    }

    #[test]
    fn realization_invariants() {
        let cfg = ScenarioConfig {
            seed: 3,
            activation_prob: 0.4,
            ..Default::default()
        };
        let r = generate_scenario(&cfg).unwrap();
        assert!(r.nominal_delays.windows(2).all(|w| w[0] <= w[1]));
        assert!(r.nominal_delays.iter().all(|&t| (0.0..1.0).contains(&t)));
        for k in 0..r.num_ues() {
            let zero_row = r.channel.row(k).iter().all(|z| z.norm() == 0.0);
            assert_eq!(zero_row, !r.activity[k]);
        }
        assert_eq!(r.actual_delays, r.nominal_delays);
    }

    #[test]
    fn explicit_delays_are_folded_and_sorted() {
        let cfg = ScenarioConfig {
            num_ues: 3,
            delay_model: DelayModel::Explicit(vec![1.5, 0.2, -0.1]),
            ..Default::default()
        };
        let r = generate_scenario(&cfg).unwrap();
        let want = [0.2, 0.5, 0.9];
        for (a, b) in r.nominal_delays.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn config_validation() {
        let ok = ScenarioConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            ScenarioConfig { num_ues: 0, ..ok.clone() },
            ScenarioConfig { num_antennas: 0, ..ok.clone() },
            ScenarioConfig { pilot_length: 1, ..ok.clone() },
            ScenarioConfig { activation_prob: 1.5, ..ok.clone() },
            ScenarioConfig { delay_error_sigma: -0.1, ..ok.clone() },
            ScenarioConfig { delay_model: DelayModel::Explicit(vec![0.1]), ..ok.clone() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::Config(_))));
        }
        assert!((ScenarioConfig { snr_db: 10.0, ..ok }.noise_variance() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn config_json_field_names() {
        let json = r#"{"num_ues": 4, "num_antennas": 2, "pilot_length": 8,
            "activation_prob": 0.5, "snr_db": 10, "delay_model": {"explicit": [0, 0.1, 0.2, 0.3]},
            "delay_error_sigma": 0.02, "pilot_model": "unit_modulus_random_phase", "seed": 7}"#;
        let cfg: ScenarioConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.pilot_model, PilotModel::UnitModulusRandomPhase);
        let back: ScenarioConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        let uni: ScenarioConfig = serde_json::from_str(
            r#"{"num_ues": 4, "num_antennas": 2, "pilot_length": 8, "activation_prob": 0.5,
                "snr_db": 10, "delay_model": "uniform_in_symbol"}"#,
        )
        .unwrap();
        assert_eq!(uni.delay_model, DelayModel::UniformInSymbol);
    }

    #[test]
    fn unit_modulus_pilots() {
        let cfg = ScenarioConfig {
            pilot_model: PilotModel::UnitModulusRandomPhase,
            ..Default::default()
        };
        let r = generate_scenario(&cfg).unwrap();
        assert!(r.pilots.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn effective_pilot_diagonal_alignment() {
        let r = generate_scenario(&ScenarioConfig { seed: 11, ..Default::default() }).unwrap();
        let p = build_effective_pilots(&r, &PulseShape::rectangular(1.0)).unwrap();
        for k in 0..r.num_ues() {
            for l in 0..r.pilot_length() {
                assert_eq!(p.get(k, l, k), r.pilots[(l, k)]);
            }
        }
    }

    #[test]
    fn equal_delays_give_raw_pilots() {
        let cfg = ScenarioConfig {
            num_ues: 5,
            delay_model: DelayModel::Explicit(vec![0.3; 5]),
            ..Default::default()
        };
        let r = generate_scenario(&cfg).unwrap();
        let p = build_effective_pilots(&r, &PulseShape::rectangular(1.0)).unwrap();
        for k in 0..5 {
            assert_eq!(p.matrix(k), &r.pilots);
        }
    }

    #[test]
    fn later_interferer_mixes_current_and_previous_symbol() {
        // Filter of UE 1 (delay 0) sees UE 2 (delay 0.25) on symbol 2: the
        // overlap with UE 2's symbol 2 is 0.75 T_s and with its symbol 1 is 0.25 T_s,
        // as integrated directly from the pulse trains.
        let r = two_ue_realization();
        let p = build_effective_pilots(&r, &PulseShape::rectangular(1.0)).unwrap();
        let want = r.pilots[(1, 1)] * 0.75 + r.pilots[(0, 1)] * 0.25;
        assert!((p.get(0, 1, 1) - want).norm() < 1e-15);
        assert!((p.get(0, 1, 1) - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        // Earlier interferer seen by UE 2's filter on symbol 1: own symbol and the next one.
        let want = r.pilots[(0, 0)] * 0.75 + r.pilots[(1, 0)] * 0.25;
        assert!((p.get(1, 0, 0) - want).norm() < 1e-15);
        // Past the last pilot the guard interval contributes nothing.
        assert!((p.get(1, 1, 0) - r.pilots[(1, 0)] * 0.75).norm() < 1e-15);
    }

    #[test]
    fn unsorted_or_spread_delays_are_rejected() {
        let mut r = two_ue_realization();
        r.nominal_delays = vec![0.25, 0.0];
        assert!(matches!(build_effective_pilots(&r, &PulseShape::default()), Err(Error::Contract(_))));
        r.nominal_delays = vec![0.0, 1.0];
        assert!(matches!(build_effective_pilots(&r, &PulseShape::default()), Err(Error::Contract(_))));
    }

    #[test]
    fn taps_cover_multi_symbol_offsets() {
        let s = PulseShape::rectangular(1.0);
        let t = symbol_taps(&s, 1.3).unwrap();
        assert_eq!(t[0].0, 1);
        assert!((t[0].1 - 0.7).abs() < 1e-12);
        assert_eq!(t[1].0, 2);
        assert!((t[1].1 - 0.3).abs() < 1e-12);
        let t = symbol_taps(&s, -1.25).unwrap();
        assert_eq!(t[0].0, -2);
        assert!((t[0].1 - 0.25).abs() < 1e-12);
        assert_eq!(t[1].0, -1);
        assert!((t[1].1 - 0.75).abs() < 1e-12);
    }
}
