//! Reference algorithms: synchronous MP-BSBL, the genie-aided MMSE channel
//! estimator, and block OMP, the latter two on the stacked linear model
//! `Ȳ = P̄ H + N̄` with `N̄` columns `~ CN(0, σ² Σ)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::airsim::{EffectivePilotSet, NoiseCovariance, ReceivedSamples};
use crate::detector::{run_graph, DetectionResult, DetectorConfig, FactorGraph};
use crate::error::{Error, Result};
use crate::linalg::PivotMode;

/// MP-BSBL on a synchronous round: `y` is `L_p x M` from the single shared
/// matched filter, `pilots` the raw `L_p x K` pilot matrix.
pub fn run_mp_bsbl_sync(
    y: &DMatrix<Complex64>,
    pilots: &DMatrix<Complex64>,
    config: &DetectorConfig,
) -> Result<DetectionResult> {
    config.validate()?;
    run_graph(&FactorGraph::synchronous(y, pilots)?, config)
}

/// All matched filters stacked: row `k * L_p + l` is filter `k`, symbol `l`.
#[derive(Debug, Clone)]
pub struct StackedModel {
    /// `K L_p x M`.
    pub observations: DMatrix<Complex64>,
    /// `K L_p x K`.
    pub dictionary: DMatrix<Complex64>,
    /// Unit-diagonal `Σ`; `covariance.noise_variance` is `σ²`.
    pub covariance: NoiseCovariance,
}

pub fn build_stacked_model(
    samples: &ReceivedSamples,
    pilots: &EffectivePilotSet,
    cov: &NoiseCovariance,
) -> Result<StackedModel> {
    let (m, k, lp) = (samples.num_antennas(), samples.num_ues(), samples.pilot_length());
    if pilots.num_ues() != k || pilots.pilot_length() != lp {
        return Err(Error::Contract("effective pilots do not match the samples".into()));
    }
    if cov.num_ues() != k || cov.pilot_length() != lp {
        return Err(Error::Contract("noise covariance does not match the samples".into()));
    }
    let observations = DMatrix::from_fn(k * lp, m, |i, a| samples.get(a, i / lp, i % lp));
    let dictionary = DMatrix::from_fn(k * lp, k, |i, ue| pilots.get(i / lp, i % lp, ue));
    Ok(StackedModel {
        observations,
        dictionary,
        covariance: cov.clone(),
    })
}

impl StackedModel {
    pub fn num_ues(&self) -> usize {
        self.dictionary.ncols()
    }

    pub fn num_antennas(&self) -> usize {
        self.observations.ncols()
    }

    /// Dense `Σ̄ = σ² Σ` (for small problems and tests).
    pub fn scaled_covariance(&self) -> DMatrix<f64> {
        self.covariance.to_dense() * self.covariance.noise_variance
    }

    /// `(L⁻¹ Ȳ, L⁻¹ P̄)` with `L Lᴴ = Σ̄` (rows in symbol-major order). A
    /// singular `Σ̄` is regularized by diagonal jitter.
    pub fn whiten(&self) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
        let cov = &self.covariance;
        let factor = cov.factor(cov.noise_variance, PivotMode::Strict)?;
        let (k, lp) = (cov.num_ues(), cov.pilot_length());
        let apply = |x: &DMatrix<Complex64>| {
            let mut out = DMatrix::zeros(x.nrows(), x.ncols());
            let mut buf = vec![Complex64::new(0.0, 0.0); x.nrows()];
            for c in 0..x.ncols() {
                for ue in 0..k {
                    for l in 0..lp {
                        buf[cov.band_index(ue, l)] = x[(ue * lp + l, c)];
                    }
                }
                factor.solve_lower_in_place(&mut buf);
                out.set_column(c, &nalgebra::DVector::from_column_slice(&buf));
            }
            out
        };
        Ok((apply(&self.observations), apply(&self.dictionary)))
    }
}

fn columns(m: &DMatrix<Complex64>, idx: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.nrows(), idx.len(), |i, j| m[(i, idx[j])])
}

/// Genie-aided MMSE: with the true support `a`, per antenna
/// `ĥ_a = (P̄_aᴴ Σ̄⁻¹ P̄_a + I)⁻¹ P̄_aᴴ Σ̄⁻¹ ȳ` (unit-variance prior),
/// evaluated on the whitened model. Rows outside the support are zero.
pub fn run_ga_mmse(model: &StackedModel, true_activity: &[bool]) -> Result<DMatrix<Complex64>> {
    let (k, m) = (model.num_ues(), model.num_antennas());
    if true_activity.len() != k {
        return Err(Error::Contract(format!(
            "activity has {} entries for {k} UEs",
            true_activity.len()
        )));
    }
    let support: Vec<usize> = (0..k).filter(|&i| true_activity[i]).collect();
    let mut h = DMatrix::zeros(k, m);
    if support.is_empty() {
        return Ok(h);
    }
    let (y, w) = model.whiten()?;
    let wa = columns(&w, &support);
    let wah = wa.adjoint();
    let gram = &wah * &wa + DMatrix::<Complex64>::identity(support.len(), support.len());
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Numerical("MMSE Gram matrix is not positive definite".into()))?;
    let ha = chol.solve(&(&wah * &y));
    for (j, &ue) in support.iter().enumerate() {
        h.set_row(ue, &ha.row(j));
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BompConfig {
    /// Whiten by `Σ̄^{-1/2}` before correlating; otherwise work on the raw
    /// stacked model.
    pub whiten: bool,
}

impl Default for BompConfig {
    fn default() -> Self {
        Self { whiten: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BompResult {
    /// Selected UEs, ascending.
    pub support: Vec<usize>,
    /// `K x M`.
    pub channel: DMatrix<Complex64>,
}

/// Block OMP with a genie-supplied number of active UEs. A block is one
/// dictionary column across all `M` observation columns; its score is
/// `Σ_m |w_cᴴ r_m|² / ‖w_c‖²`. The channel is re-fitted by least squares on
/// the selected support after every selection.
pub fn run_bomp(model: &StackedModel, num_active: usize, config: BompConfig) -> Result<BompResult> {
    let (k, m) = (model.num_ues(), model.num_antennas());
    if num_active > k {
        return Err(Error::Contract(format!("{num_active} active UEs requested out of {k}")));
    }
    let (y, w) = if config.whiten {
        model.whiten()?
    } else {
        (model.observations.clone(), model.dictionary.clone())
    };
    let norms: Vec<f64> = (0..k).map(|c| w.column(c).norm_squared()).collect();
    let mut support: Vec<usize> = Vec::with_capacity(num_active);
    let mut residual = y.clone();
    let mut coef = DMatrix::<Complex64>::zeros(0, m);
    for _ in 0..num_active {
        let corr = w.adjoint() * &residual;
        let best = (0..k)
            .filter(|c| !support.contains(c) && norms[*c] > 0.0)
            .map(|c| (c, corr.row(c).norm_squared() / norms[c]))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)));
        let Some((c, _)) = best else { break };
        support.push(c);
        let ws = columns(&w, &support);
        let pinv = ws
            .clone()
            .pseudo_inverse(1e-12)
            .map_err(|e| Error::Numerical(e.to_string()))?;
        coef = pinv * &y;
        residual = &y - ws * &coef;
    }
    let mut channel = DMatrix::zeros(k, m);
    for (j, &ue) in support.iter().enumerate() {
        channel.set_row(ue, &coef.row(j));
    }
    support.sort_unstable();
    Ok(BompResult { support, channel })
}
