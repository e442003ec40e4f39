use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    draw_correlated_noise, symbol_taps, EffectivePilotSet, NoiseCovariance, ReceivedSamples,
    ScenarioRealization,
};
use crate::error::{Error, Result};
use crate::waveform::PulseShape;

fn check_dims(
    realization: &ScenarioRealization,
    cov: &NoiseCovariance,
    num_antennas: usize,
) -> Result<()> {
    let (k, lp) = (realization.num_ues(), realization.pilot_length());
    if realization.num_antennas() != num_antennas {
        return Err(Error::Contract(format!(
            "realization has {} antennas, {num_antennas} requested",
            realization.num_antennas()
        )));
    }
    if cov.num_ues() != k || cov.pilot_length() != lp {
        return Err(Error::Contract(format!(
            "noise covariance is for K={}, L_p={}; realization has K={k}, L_p={lp}",
            cov.num_ues(),
            cov.pilot_length()
        )));
    }
    Ok(())
}

/// Closed-form matched-filter outputs with perfect delay knowledge:
/// `y^m_k(l) = sum_k' h^m_k' p̄^l_{k,k'} + n^m_k(l)`.
pub fn synthesize_samples(
    realization: &ScenarioRealization,
    pilots: &EffectivePilotSet,
    cov: &NoiseCovariance,
    num_antennas: usize,
    seed: u64,
) -> Result<ReceivedSamples> {
    check_dims(realization, cov, num_antennas)?;
    let (k, lp) = (realization.num_ues(), realization.pilot_length());
    if pilots.num_ues() != k || pilots.pilot_length() != lp {
        return Err(Error::Contract("effective pilot set does not match realization".into()));
    }
    if realization.has_delay_errors() {
        return Err(Error::Contract(
            "perfect-delay synthesis needs actual delays equal to nominal delays".into(),
        ));
    }
    let h = &realization.channel;
    let mut out = draw_correlated_noise(cov, num_antennas, seed)?;
    for m in 0..num_antennas {
        for filter in 0..k {
            for l in 0..lp {
                let mut acc = Complex64::new(0.0, 0.0);
                for ue in 0..k {
                    let hv = h[(ue, m)];
                    if hv.re != 0.0 || hv.im != 0.0 {
                        acc += hv * pilots.get(filter, l, ue);
                    }
                }
                *out.get_mut(m, filter, l) += acc;
            }
        }
    }
    Ok(out)
}

/// Matched filters aligned to the nominal delays while the signals arrive at
/// the actual delays. Every UE (the filter's own included) contributes
/// through the two symbols its pulse train overlaps in the filter window.
pub fn synthesize_samples_imperfect(
    realization: &ScenarioRealization,
    shape: &PulseShape,
    cov: &NoiseCovariance,
    num_antennas: usize,
    seed: u64,
) -> Result<ReceivedSamples> {
    check_dims(realization, cov, num_antennas)?;
    realization.check_delay_profile()?;
    let (k, lp) = (realization.num_ues(), realization.pilot_length());
    let h = &realization.channel;
    let mut out = draw_correlated_noise(cov, num_antennas, seed)?;
    for filter in 0..k {
        let tau = realization.nominal_delays[filter];
        for ue in (0..k).filter(|&u| realization.activity[u]) {
            let taps = symbol_taps(shape, realization.actual_delays[ue] - tau)?;
            for l in 0..lp {
                let eff: Complex64 = taps
                    .iter()
                    .map(|&(shift, w)| realization.pilot(ue, l as isize - shift) * w)
                    .sum();
                for m in 0..num_antennas {
                    *out.get_mut(m, filter, l) += h[(ue, m)] * eff;
                }
            }
        }
    }
    Ok(out)
}

/// The synchronous counterpart of a round: one matched filter shared by all
/// UEs at nominal delay zero, each UE arriving at its delay error, white
/// noise of variance `noise_variance`. Returns `L_p x M` outputs.
pub fn synthesize_synchronous(
    realization: &ScenarioRealization,
    shape: &PulseShape,
    noise_variance: f64,
    seed: u64,
) -> Result<DMatrix<Complex64>> {
    let (k, lp, m) = (
        realization.num_ues(),
        realization.pilot_length(),
        realization.num_antennas(),
    );
    let noise = draw_correlated_noise(&NoiseCovariance::white(lp, noise_variance), m, seed)?;
    let mut y = DMatrix::from_fn(lp, m, |l, a| noise.get(a, 0, l));
    let sync = realization.synchronous_view();
    for ue in (0..k).filter(|&u| sync.activity[u]) {
        let taps = symbol_taps(shape, sync.actual_delays[ue])?;
        for l in 0..lp {
            let eff: Complex64 = taps
                .iter()
                .map(|&(shift, w)| sync.pilot(ue, l as isize - shift) * w)
                .sum();
            for a in 0..m {
                y[(l, a)] += sync.channel[(ue, a)] * eff;
            }
        }
    }
    Ok(y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Largest quadrature cell, in units of `T_s`.
    pub grid_step: f64,
    /// Refuse when `K * L_p * ceil(1 / grid_step)` exceeds this.
    pub max_cells: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            grid_step: 1e-4,
            max_cells: 1_000_000_000,
        }
    }
}

/// Continuous-time reference: superposes the delayed pulse trains at the
/// actual delays and integrates each matched-filter window (aligned to the
/// nominal delay) numerically. The window is split at every pulse edge and
/// each piece is integrated with the composite midpoint rule on cells no
/// longer than `grid_step * T_s`. Uses no autocorrelation values, so it is
/// independent of the closed forms. `noise`, when given, is added as-is.
pub fn synthesize_oracle(
    realization: &ScenarioRealization,
    shape: &PulseShape,
    options: OracleOptions,
    noise: Option<&ReceivedSamples>,
) -> Result<ReceivedSamples> {
    let (k, lp, m) = (
        realization.num_ues(),
        realization.pilot_length(),
        realization.num_antennas(),
    );
    let ts = shape.symbol_period();
    if !(options.grid_step > 0.0) {
        return Err(Error::Contract("oracle grid step must be positive".into()));
    }
    let per_window = (1.0 / options.grid_step).ceil();
    let cells = (k * lp) as f64 * per_window;
    if cells > options.max_cells as f64 {
        return Err(Error::Size(format!(
            "oracle would evaluate {cells:.3e} cells, cap is {}",
            options.max_cells
        )));
    }
    let step = options.grid_step * ts;
    let active: Vec<usize> = (0..k).filter(|&u| realization.activity[u]).collect();
    let h = &realization.channel;

    let windows: Vec<Vec<Complex64>> = (0..k * lp)
        .into_par_iter()
        .map(|w| {
            let (filter, l) = (w / lp, w % lp);
            let start = l as f64 * ts + realization.nominal_delays[filter];
            let end = start + ts;
            let mut edges = vec![start, end];
            for &ue in &active {
                let d = realization.actual_delays[ue];
                let first = ((start - d) / ts).ceil() as i64;
                let last = ((end - d) / ts).floor() as i64;
                for j in first..=last {
                    let e = j as f64 * ts + d;
                    if e > start && e < end {
                        edges.push(e);
                    }
                }
            }
            edges.sort_by(f64::total_cmp);
            edges.dedup();

            let mut acc = vec![Complex64::new(0.0, 0.0); m];
            for seg in edges.windows(2) {
                let len = seg[1] - seg[0];
                if len <= 0.0 {
                    continue;
                }
                let cells = (len / step).ceil().max(1.0) as usize;
                let dt = len / cells as f64;
                for c in 0..cells {
                    let t = seg[0] + (c as f64 + 0.5) * dt;
                    let f = shape.amplitude(t - start);
                    if f == 0.0 {
                        continue;
                    }
                    for &ue in &active {
                        let u = t - realization.actual_delays[ue];
                        let j = (u / ts).floor();
                        let p = realization.pilot(ue, j as isize);
                        if p.re == 0.0 && p.im == 0.0 {
                            continue;
                        }
                        let v = p * (shape.amplitude(u - j * ts) * f * dt);
                        for (a, hv) in acc.iter_mut().zip(h.row(ue).iter()) {
                            *a += hv * v;
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut out = ReceivedSamples::zeros(m, k, lp);
    for (w, acc) in windows.into_iter().enumerate() {
        let (filter, l) = (w / lp, w % lp);
        for (ant, v) in acc.into_iter().enumerate() {
            *out.get_mut(ant, filter, l) = v;
        }
    }
    if let Some(n) = noise {
        if n.num_antennas() != m || n.num_ues() != k || n.pilot_length() != lp {
            return Err(Error::Contract("noise tensor shape mismatch".into()));
        }
        out.add_assign(n);
    }
    Ok(out)
}
