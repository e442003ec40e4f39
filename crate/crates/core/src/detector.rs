//! Partially uni-directional message-passing SBL detector for joint user
//! activity detection and channel estimation.
//!
//! Each UE's channel belief is built only from the forward messages of its
//! own matched filter; other filters see the UE only through backward
//! messages. One iteration runs eight steps in order:
//!
//! 1. factor → channel forward messages (previous iteration's backward messages),
//! 2. channel beliefs, 3. activity precisions γ̂, 4. shape parameter ε̂,
//! 5. channel → factor backward messages, 6. factor → noiseless-output
//!    predictions, 7. noiseless-output beliefs, 8. noise precisions λ̂.
//!
//! After the last iteration UE `k` is declared active iff `γ̂_k < γ_th`.
//!
//! Every variance in this recursion is antenna-independent (none of the
//! variance updates reads the samples), so [`MessageState`] stores variances
//! once per `(symbol, UE)` and means per `(antenna, symbol, UE)`.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::airsim::{EffectivePilotSet, ReceivedSamples};
use crate::error::{Error, Result};
use crate::serde_util::cmat;

/// Self pilots below this magnitude are rejected as degenerate.
pub const DEGENERATE_PILOT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MeanScaling {
    /// Backward-message mean scaled by the backward (extrinsic) variance.
    #[default]
    Extrinsic,
    /// Scaled by the belief variance instead.
    Belief,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    pub num_iterations: usize,
    /// `γ_th`: UE `k` is declared active iff `γ̂_k` is below this.
    pub uad_threshold: f64,
    /// `η`, the Gamma-prior rate.
    pub rate_param: f64,
    pub init_epsilon: f64,
    pub init_lambda: f64,
    pub init_gamma: f64,
    pub init_message_variance: f64,
    pub init_message_mean: f64,
    pub mean_scaling: MeanScaling,
    pub gamma_max: f64,
    pub lambda_max: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            num_iterations: 80,
            uad_threshold: 10.0,
            rate_param: 0.0,
            init_epsilon: 1e-3,
            init_lambda: 1.0,
            init_gamma: 1.0,
            init_message_variance: 1.0,
            init_message_mean: 0.0,
            mean_scaling: MeanScaling::Extrinsic,
            gamma_max: 1e12,
            lambda_max: 1e12,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.into()));
        if self.num_iterations < 1 {
            return bad("num_iterations must be at least 1");
        }
        if !(self.uad_threshold > 0.0 && self.uad_threshold.is_finite()) {
            return bad("uad_threshold must be positive");
        }
        if !(self.rate_param >= 0.0 && self.rate_param.is_finite()) {
            return bad("rate_param must be nonnegative");
        }
        if !(self.init_epsilon >= 0.0 && self.init_epsilon.is_finite()) {
            return bad("init_epsilon must be nonnegative");
        }
        for (name, v) in [
            ("init_lambda", self.init_lambda),
            ("init_gamma", self.init_gamma),
            ("init_message_variance", self.init_message_variance),
            ("gamma_max", self.gamma_max),
            ("lambda_max", self.lambda_max),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive and finite")));
            }
        }
        if !self.init_message_mean.is_finite() {
            return bad("init_message_mean must be finite");
        }
        Ok(())
    }
}

// ---- scalar kernels -------------------------------------------------------

/// Forward message from a factor node to its own UE, given the interference
/// sums `Σ_{k'≠k} p̄ μ` and `Σ_{k'≠k} |p̄|² v` over the other UEs' backward
/// messages.
pub fn factor_to_channel(
    y: Complex64,
    self_pilot: Complex64,
    interference_mean: Complex64,
    interference_var: f64,
    lambda: f64,
) -> (Complex64, f64) {
    let var = (1.0 / lambda + interference_var) / self_pilot.norm_sqr();
    let mean = (y - interference_mean) / self_pilot;
    (mean, var)
}

/// Precision-weighted product of Gaussian messages with a zero-mean prior of
/// precision `gamma`.
pub fn combine_messages(
    messages: impl IntoIterator<Item = (Complex64, f64)>,
    gamma: f64,
) -> (Complex64, f64) {
    let (mut prec, mut weighted) = (gamma, Complex64::new(0.0, 0.0));
    for (mu, v) in messages {
        prec += 1.0 / v;
        weighted += mu / v;
    }
    let var = 1.0 / prec;
    (weighted * var, var)
}

/// `γ̂ = (ε̂ + M) / (η + energy)` with `energy = Σ_m (|μ_h|² + v_h)`, capped at
/// `gamma_max`.
pub fn update_gamma(epsilon: f64, num_antennas: usize, eta: f64, energy: f64, gamma_max: f64) -> f64 {
    let den = eta + energy;
    if den > 0.0 {
        ((epsilon + num_antennas as f64) / den).min(gamma_max)
    } else {
        gamma_max
    }
}

/// `ε̂ = ½ sqrt(ln mean(γ̂) − mean(ln γ̂))`; round-off below zero is clamped.
pub fn update_epsilon(gamma: &[f64]) -> f64 {
    let n = gamma.len() as f64;
    let mean = gamma.iter().sum::<f64>() / n;
    let mean_log = gamma.iter().map(|g| g.ln()).sum::<f64>() / n;
    0.5 * (mean.ln() - mean_log).max(0.0).sqrt()
}

/// Prediction of a noiseless filter output from backward messages:
/// `(Σ p̄ μ, Σ |p̄|² v)`.
pub fn predict_output(pilots: &[Complex64], means: &[Complex64], vars: &[f64]) -> (Complex64, f64) {
    let mut mu = Complex64::new(0.0, 0.0);
    let mut v = 0.0;
    for ((p, m), var) in pilots.iter().zip(means).zip(vars) {
        mu += p * m;
        v += p.norm_sqr() * var;
    }
    (mu, v)
}

/// Belief of a noiseless output: prediction combined with the observation
/// `CN(y, 1/λ̂)`.
pub fn output_belief(y: Complex64, pred_mean: Complex64, pred_var: f64, lambda: f64) -> (Complex64, f64) {
    let v = 1.0 / (1.0 / pred_var + lambda);
    (v * (y * lambda + pred_mean / pred_var), v)
}

/// `λ̂ = count / residual`, capped at `lambda_max`.
pub fn update_lambda(count: usize, residual: f64, lambda_max: f64) -> f64 {
    if residual > 0.0 {
        (count as f64 / residual).min(lambda_max)
    } else {
        lambda_max
    }
}

// ---- factor graph ---------------------------------------------------------

/// Connectivity and data of one detection problem: a set of matched filters
/// (each with `L_p` factor nodes per antenna), the pilot rows seen by each
/// filter, and which filter feeds each UE's belief.
#[derive(Debug, Clone)]
pub struct FactorGraph {
    num_antennas: usize,
    num_ues: usize,
    num_filters: usize,
    pilot_length: usize,
    /// `[filter][l][k']`.
    pilots: Vec<Complex64>,
    /// `[m][filter][l]`.
    samples: Vec<Complex64>,
    /// Filter whose factors form UE `k`'s belief.
    own_filter: Vec<usize>,
    /// Backward messages exclude own-filter factors `l - radius ..= l + radius`.
    exclusion_radius: usize,
}

impl FactorGraph {
    /// Asynchronous graph: filter `k` belongs to UE `k`, backward messages
    /// exclude the three own-filter factors around symbol `l`.
    pub fn asynchronous(samples: &ReceivedSamples, pilots: &EffectivePilotSet) -> Result<Self> {
        let (m, k, lp) = (samples.num_antennas(), samples.num_ues(), samples.pilot_length());
        if pilots.num_ues() != k || pilots.pilot_length() != lp {
            return Err(Error::Contract(format!(
                "samples are for K={k}, L_p={lp}; pilots for K={}, L_p={}",
                pilots.num_ues(),
                pilots.pilot_length()
            )));
        }
        let mut p = Vec::with_capacity(k * lp * k);
        for f in 0..k {
            for l in 0..lp {
                for ue in 0..k {
                    p.push(pilots.get(f, l, ue));
                }
            }
        }
        Self::new(m, k, k, lp, p, samples.as_slice().to_vec(), (0..k).collect(), 1)
    }

    /// Synchronous graph: one shared filter with observations `y` (`L_p x M`)
    /// and raw pilots `P` (`L_p x K`); backward messages exclude exactly one
    /// factor.
    pub fn synchronous(y: &DMatrix<Complex64>, pilots: &DMatrix<Complex64>) -> Result<Self> {
        let (lp, m, k) = (y.nrows(), y.ncols(), pilots.ncols());
        if pilots.nrows() != lp {
            return Err(Error::Contract(format!(
                "observations have {lp} rows, pilots {}",
                pilots.nrows()
            )));
        }
        let p = (0..lp)
            .flat_map(|l| (0..k).map(move |ue| pilots[(l, ue)]))
            .collect();
        let s = (0..m)
            .flat_map(|a| (0..lp).map(move |l| y[(l, a)]))
            .collect();
        Self::new(m, k, 1, lp, p, s, vec![0; k], 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn new(
        num_antennas: usize,
        num_ues: usize,
        num_filters: usize,
        pilot_length: usize,
        pilots: Vec<Complex64>,
        samples: Vec<Complex64>,
        own_filter: Vec<usize>,
        exclusion_radius: usize,
    ) -> Result<Self> {
        if num_antennas == 0 || num_ues == 0 || pilot_length == 0 {
            return Err(Error::Contract("empty detection problem".into()));
        }
        let g = Self {
            num_antennas,
            num_ues,
            num_filters,
            pilot_length,
            pilots,
            samples,
            own_filter,
            exclusion_radius,
        };
        for ue in 0..num_ues {
            let f = g.own_filter[ue];
            for l in 0..pilot_length {
                if g.pilot_row(f, l)[ue].norm() < DEGENERATE_PILOT {
                    return Err(Error::DegeneratePilot { filter: f, symbol: l });
                }
            }
        }
        Ok(g)
    }

    pub fn num_antennas(&self) -> usize {
        self.num_antennas
    }

    pub fn num_ues(&self) -> usize {
        self.num_ues
    }

    pub fn num_filters(&self) -> usize {
        self.num_filters
    }

    pub fn pilot_length(&self) -> usize {
        self.pilot_length
    }

    #[inline]
    fn pilot_row(&self, filter: usize, l: usize) -> &[Complex64] {
        let k = self.num_ues;
        let start = (filter * self.pilot_length + l) * k;
        &self.pilots[start..start + k]
    }

    #[inline]
    fn sample(&self, m: usize, filter: usize, l: usize) -> Complex64 {
        self.samples[(m * self.num_filters + filter) * self.pilot_length + l]
    }
}

// ---- message state --------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct MessageState {
    num_antennas: usize,
    num_ues: usize,
    num_filters: usize,
    pilot_length: usize,
    /// Forward messages to the channel VNs: means `[m][l][k]`, variances `[l][k]`.
    pub forward_mean: Vec<Complex64>,
    pub forward_var: Vec<f64>,
    /// Channel beliefs: means `[m][k]`, variances `[k]`.
    pub belief_mean: Vec<Complex64>,
    pub belief_var: Vec<f64>,
    /// Backward messages from the channel VNs: means `[m][l][k]`, variances `[l][k]`.
    pub backward_mean: Vec<Complex64>,
    pub backward_var: Vec<f64>,
    /// Factor → output predictions: means `[m][filter][l]`, variances `[filter][l]`.
    pub predicted_mean: Vec<Complex64>,
    pub predicted_var: Vec<f64>,
    /// Noiseless-output beliefs, laid out as the predictions.
    pub output_mean: Vec<Complex64>,
    pub output_var: Vec<f64>,
    /// `γ̂`, one per UE.
    pub gamma: Vec<f64>,
    /// The `γ̂` that entered the current channel beliefs.
    pub belief_gamma: Vec<f64>,
    /// `λ̂`, one per filter.
    pub lambda: Vec<f64>,
    pub epsilon: f64,
    /// Whether the predictions were built from the current backward messages;
    /// step 1 reuses them. Cleared by step 5 only, so write backward messages
    /// through `update_backward` or call `update_prediction` afterwards.
    prediction_current: bool,
}

fn guard(ok: bool, iteration: usize, step: u8, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Guard {
            iteration,
            step,
            detail: detail(),
        })
    }
}

fn positive(v: &[f64]) -> bool {
    v.iter().all(|x| *x > 0.0 && x.is_finite())
}

fn finite(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

impl MessageState {
    pub fn new(graph: &FactorGraph, config: &DetectorConfig) -> Self {
        let (m, k, f, lp) = (
            graph.num_antennas,
            graph.num_ues,
            graph.num_filters,
            graph.pilot_length,
        );
        let zero = Complex64::new(0.0, 0.0);
        Self {
            num_antennas: m,
            num_ues: k,
            num_filters: f,
            pilot_length: lp,
            forward_mean: vec![zero; m * lp * k],
            forward_var: vec![1.0; lp * k],
            belief_mean: vec![zero; m * k],
            belief_var: vec![1.0; k],
            backward_mean: vec![Complex64::new(config.init_message_mean, 0.0); m * lp * k],
            backward_var: vec![config.init_message_variance; lp * k],
            predicted_mean: vec![zero; m * f * lp],
            predicted_var: vec![1.0; f * lp],
            output_mean: vec![zero; m * f * lp],
            output_var: vec![1.0; f * lp],
            gamma: vec![config.init_gamma; k],
            belief_gamma: vec![config.init_gamma; k],
            lambda: vec![config.init_lambda; f],
            epsilon: config.init_epsilon,
            prediction_current: false,
        }
    }

    /// Step 1.
    pub fn update_forward(&mut self, g: &FactorGraph, iteration: usize) -> Result<()> {
        // The interference over k' != k is the full prediction of step 6
        // minus the UE's own term; both use the same backward messages.
        if !self.prediction_current {
            self.update_prediction(g, iteration)?;
        }
        let (k, f, lp) = (self.num_ues, self.num_filters, self.pilot_length);
        for l in 0..lp {
            for ue in 0..k {
                let fi = g.own_filter[ue];
                let p2 = g.pilot_row(fi, l)[ue].norm_sqr();
                let interference = self.predicted_var[fi * lp + l] - p2 * self.backward_var[l * k + ue];
                self.forward_var[l * k + ue] = (1.0 / self.lambda[fi] + interference.max(0.0)) / p2;
            }
        }
        for m in 0..self.num_antennas {
            for l in 0..lp {
                let base = (m * lp + l) * k;
                for ue in 0..k {
                    let fi = g.own_filter[ue];
                    let p = g.pilot_row(fi, l)[ue];
                    let s = self.predicted_mean[(m * f + fi) * lp + l] - p * self.backward_mean[base + ue];
                    self.forward_mean[base + ue] = (g.sample(m, fi, l) - s) / p;
                }
            }
        }
        guard(positive(&self.forward_var) && finite(&self.forward_mean), iteration, 1, || {
            "forward message variance not positive or mean not finite".into()
        })
    }

    /// Step 2.
    pub fn update_belief(&mut self, iteration: usize) -> Result<()> {
        let (k, lp) = (self.num_ues, self.pilot_length);
        for ue in 0..k {
            let prec: f64 = (0..lp).map(|l| 1.0 / self.forward_var[l * k + ue]).sum::<f64>()
                + self.gamma[ue];
            self.belief_var[ue] = 1.0 / prec;
        }
        self.belief_gamma.copy_from_slice(&self.gamma);
        for m in 0..self.num_antennas {
            for ue in 0..k {
                let s: Complex64 = (0..lp)
                    .map(|l| self.forward_mean[(m * lp + l) * k + ue] / self.forward_var[l * k + ue])
                    .sum();
                self.belief_mean[m * k + ue] = s * self.belief_var[ue];
            }
        }
        guard(positive(&self.belief_var) && finite(&self.belief_mean), iteration, 2, || {
            "channel belief variance not positive or mean not finite".into()
        })
    }

    /// Step 3.
    pub fn update_gamma(&mut self, config: &DetectorConfig, iteration: usize) -> Result<()> {
        let (m, k) = (self.num_antennas, self.num_ues);
        for ue in 0..k {
            let energy: f64 = (0..m)
                .map(|a| self.belief_mean[a * k + ue].norm_sqr() + self.belief_var[ue])
                .sum();
            self.gamma[ue] = update_gamma(self.epsilon, m, config.rate_param, energy, config.gamma_max);
        }
        guard(positive(&self.gamma), iteration, 3, || "γ̂ not positive".into())
    }

    /// Step 4.
    pub fn update_epsilon(&mut self, iteration: usize) -> Result<()> {
        self.epsilon = update_epsilon(&self.gamma);
        guard(self.epsilon.is_finite(), iteration, 4, || "ε̂ not finite".into())
    }

    /// Step 5: the belief divided by the own-filter forward messages within
    /// the exclusion window around `l`. The remaining precision and weighted
    /// mean are summed directly (prefix + suffix), never by subtraction.
    pub fn update_backward(&mut self, g: &FactorGraph, config: &DetectorConfig, iteration: usize) -> Result<()> {
        self.prediction_current = false;
        let (k, lp, r) = (self.num_ues, self.pilot_length, g.exclusion_radius);
        let lo = |l: usize| l.saturating_sub(r);
        let hi = |l: usize| (l + r + 1).min(lp);
        let zero = Complex64::new(0.0, 0.0);
        let (mut prefix, mut suffix) = (vec![0.0; lp + 1], vec![0.0; lp + 1]);
        let (mut cprefix, mut csuffix) = (vec![zero; lp + 1], vec![zero; lp + 1]);
        for ue in 0..k {
            for l in 0..lp {
                prefix[l + 1] = prefix[l] + 1.0 / self.forward_var[l * k + ue];
            }
            for l in (0..lp).rev() {
                suffix[l] = suffix[l + 1] + 1.0 / self.forward_var[l * k + ue];
            }
            for l in 0..lp {
                let prec = self.belief_gamma[ue] + prefix[lo(l)] + suffix[hi(l)];
                self.backward_var[l * k + ue] = 1.0 / prec;
            }
        }
        for m in 0..self.num_antennas {
            for ue in 0..k {
                let at = |l: usize| (m * lp + l) * k + ue;
                for l in 0..lp {
                    cprefix[l + 1] = cprefix[l] + self.forward_mean[at(l)] / self.forward_var[l * k + ue];
                }
                for l in (0..lp).rev() {
                    csuffix[l] = csuffix[l + 1] + self.forward_mean[at(l)] / self.forward_var[l * k + ue];
                }
                for l in 0..lp {
                    let weighted = cprefix[lo(l)] + csuffix[hi(l)];
                    let scale = match config.mean_scaling {
                        MeanScaling::Extrinsic => self.backward_var[l * k + ue],
                        MeanScaling::Belief => self.belief_var[ue],
                    };
                    self.backward_mean[at(l)] = weighted * scale;
                }
            }
        }
        guard(positive(&self.backward_var) && finite(&self.backward_mean), iteration, 5, || {
            "backward message precision not positive".into()
        })
    }

    /// Step 6.
    pub fn update_prediction(&mut self, g: &FactorGraph, iteration: usize) -> Result<()> {
        let (k, f, lp) = (self.num_ues, self.num_filters, self.pilot_length);
        for filter in 0..f {
            for l in 0..lp {
                let row = g.pilot_row(filter, l);
                let bv = &self.backward_var[l * k..(l + 1) * k];
                self.predicted_var[filter * lp + l] =
                    row.iter().zip(bv).map(|(p, v)| p.norm_sqr() * v).sum();
            }
        }
        for m in 0..self.num_antennas {
            for filter in 0..f {
                for l in 0..lp {
                    let base = (m * lp + l) * k;
                    let bm = &self.backward_mean[base..base + k];
                    self.predicted_mean[(m * f + filter) * lp + l] =
                        g.pilot_row(filter, l).iter().zip(bm).map(|(p, mu)| p * mu).sum();
                }
            }
        }
        self.prediction_current = true;
        guard(positive(&self.predicted_var), iteration, 6, || "prediction variance not positive".into())
    }

    /// Step 7.
    pub fn update_output(&mut self, g: &FactorGraph, iteration: usize) -> Result<()> {
        let (f, lp) = (self.num_filters, self.pilot_length);
        for filter in 0..f {
            for l in 0..lp {
                let i = filter * lp + l;
                self.output_var[i] = 1.0 / (1.0 / self.predicted_var[i] + self.lambda[filter]);
            }
        }
        for m in 0..self.num_antennas {
            for filter in 0..f {
                for l in 0..lp {
                    let i = (m * f + filter) * lp + l;
                    let (mu, _) = output_belief(
                        g.sample(m, filter, l),
                        self.predicted_mean[i],
                        self.predicted_var[filter * lp + l],
                        self.lambda[filter],
                    );
                    self.output_mean[i] = mu;
                }
            }
        }
        guard(positive(&self.output_var) && finite(&self.output_mean), iteration, 7, || {
            "output belief variance not positive".into()
        })
    }

    /// Step 8.
    pub fn update_lambda(&mut self, g: &FactorGraph, config: &DetectorConfig, iteration: usize) -> Result<()> {
        let (m, f, lp) = (self.num_antennas, self.num_filters, self.pilot_length);
        for filter in 0..f {
            let mut residual = 0.0;
            for a in 0..m {
                for l in 0..lp {
                    let i = (a * f + filter) * lp + l;
                    residual += (g.sample(a, filter, l) - self.output_mean[i]).norm_sqr()
                        + self.output_var[filter * lp + l];
                }
            }
            self.lambda[filter] = update_lambda(m * lp, residual, config.lambda_max);
        }
        guard(positive(&self.lambda), iteration, 8, || "λ̂ not positive".into())
    }

    /// One full iteration (steps 1–8).
    pub fn iterate(&mut self, g: &FactorGraph, config: &DetectorConfig, iteration: usize) -> Result<()> {
        self.update_forward(g, iteration)?;
        self.update_belief(iteration)?;
        self.update_gamma(config, iteration)?;
        self.update_epsilon(iteration)?;
        self.update_backward(g, config, iteration)?;
        self.update_prediction(g, iteration)?;
        self.update_output(g, iteration)?;
        self.update_lambda(g, config, iteration)
    }

    /// Belief mean of `h^m_k`.
    pub fn channel_mean(&self, antenna: usize, ue: usize) -> Complex64 {
        self.belief_mean[antenna * self.num_ues + ue]
    }
}

// ---- result ----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub activity: Vec<bool>,
    /// Final `γ̂`.
    pub gamma: Vec<f64>,
    /// `K x M`; zero rows for UEs declared inactive.
    #[serde(with = "cmat")]
    pub channel: DMatrix<Complex64>,
    pub gamma_trace: Vec<Vec<f64>>,
    pub lambda_trace: Vec<Vec<f64>>,
    pub epsilon_trace: Vec<f64>,
}

impl DetectionResult {
    pub fn num_detected(&self) -> usize {
        self.activity.iter().filter(|a| **a).count()
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let s = serde_json::to_string_pretty(self)?;
        fs::write(path, s).map_err(|e| Error::io(path, e))
    }

    /// Channel estimate as CSV rows `ue,antenna,re,im`.
    pub fn write_channel_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["ue", "antenna", "re", "im"])?;
        for k in 0..self.channel.nrows() {
            for m in 0..self.channel.ncols() {
                let z = self.channel[(k, m)];
                w.write_record([k.to_string(), m.to_string(), z.re.to_string(), z.im.to_string()])?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Runs the configured number of iterations on `graph` and applies the
/// decision rule.
pub fn run_graph(graph: &FactorGraph, config: &DetectorConfig) -> Result<DetectionResult> {
    config.validate()?;
    let mut state = MessageState::new(graph, config);
    let mut gamma_trace = Vec::with_capacity(config.num_iterations);
    let mut lambda_trace = Vec::with_capacity(config.num_iterations);
    let mut epsilon_trace = Vec::with_capacity(config.num_iterations);
    for it in 1..=config.num_iterations {
        state.iterate(graph, config, it)?;
        gamma_trace.push(state.gamma.clone());
        lambda_trace.push(state.lambda.clone());
        epsilon_trace.push(state.epsilon);
    }
    let (k, m) = (graph.num_ues, graph.num_antennas);
    let activity: Vec<bool> = state.gamma.iter().map(|g| *g < config.uad_threshold).collect();
    let channel = DMatrix::from_fn(k, m, |ue, a| {
        if activity[ue] {
            state.channel_mean(a, ue)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(DetectionResult {
        activity,
        gamma: state.gamma,
        channel,
        gamma_trace,
        lambda_trace,
        epsilon_trace,
    })
}

/// Asynchronous detection from per-UE matched-filter outputs and effective pilots.
pub fn run_detector(
    samples: &ReceivedSamples,
    pilots: &EffectivePilotSet,
    config: &DetectorConfig,
) -> Result<DetectionResult> {
    config.validate()?;
    run_graph(&FactorGraph::asynchronous(samples, pilots)?, config)
}
