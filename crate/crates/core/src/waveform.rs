//! Pulse-shaping waveform, its autocorrelation, and the multi-user
//! interference (MUI) factor.
//!
//! Time is normalized so that delays are fractions of one symbol period;
//! the default symbol period is `1.0`. Every shape carries unit energy over
//! `[0, T_s]` and is zero outside that interval.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack when checking `|tau| <= T_s`, so that delays computed as
/// differences of folded values do not trip the domain check on round-off.
const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseKind {
    Rectangular,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Shape {
    Rectangular,
    /// Uniform grid `t_i = i * step`, `i = 0..amplitudes.len()`, covering `[0, T_s]`.
    Sampled { step: f64, amplitudes: Vec<f64> },
}

/// A unit-energy pulse `s(t)` supported on `[0, T_s]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseShape {
    symbol_period: f64,
    #[serde(flatten)]
    shape: Shape,
}

impl Default for PulseShape {
    fn default() -> Self {
        Self::rectangular(1.0)
    }
}

impl PulseShape {
    /// `s(t) = 1/sqrt(T_s)` on `[0, T_s]`.
    pub fn rectangular(symbol_period: f64) -> Self {
        assert!(symbol_period > 0.0, "symbol period must be positive");
        Self {
            symbol_period,
            shape: Shape::Rectangular,
        }
    }

    /// Builds a sampled shape from a uniform amplitude grid spanning `[0, T_s]`
    /// (first sample at 0, last at `T_s`). The amplitudes are re-normalized so
    /// that the trapezoidal energy equals one.
    pub fn sampled(symbol_period: f64, amplitudes: Vec<f64>) -> Result<Self> {
        if !(symbol_period > 0.0) {
            return Err(Error::Config("symbol period must be positive".into()));
        }
        if amplitudes.len() < 2 {
            return Err(Error::Config(
                "a sampled pulse needs at least two grid points".into(),
            ));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::Config("pulse amplitudes must be finite".into()));
        }
        let step = symbol_period / (amplitudes.len() - 1) as f64;
        let energy = trapezoid(step, amplitudes.iter().map(|a| a * a));
        if !(energy > 0.0) {
            return Err(Error::Config("pulse has zero energy".into()));
        }
        let scale = energy.sqrt().recip();
        let amplitudes = amplitudes.into_iter().map(|a| a * scale).collect();
        Ok(Self {
            symbol_period,
            shape: Shape::Sampled { step, amplitudes },
        })
    }

    /// Loads a two-column `time amplitude` text file. Times must increase
    /// strictly; the first time is taken as the pulse origin and the span as
    /// `T_s`. Non-uniform grids are resampled onto a uniform grid with the same
    /// number of points by linear interpolation. Lines starting with `#` are
    /// ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |c: Option<&str>| -> Result<f64> {
                c.and_then(|s| s.parse::<f64>().ok()).ok_or_else(|| {
                    Error::Config(format!(
                        "{}:{}: expected two numeric columns",
                        path.display(),
                        lineno + 1
                    ))
                })
            };
            times.push(parse(cols.next())?);
            values.push(parse(cols.next())?);
        }
        if times.len() < 2 {
            return Err(Error::Config(format!(
                "{}: a pulse file needs at least two samples",
                path.display()
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config(format!(
                "{}: sample times must increase strictly",
                path.display()
            )));
        }
        let t0 = times[0];
        let span = times[times.len() - 1] - t0;
        let n = times.len();
        let step = span / (n - 1) as f64;
        let mut uniform = Vec::with_capacity(n);
        let mut j = 0;
        for i in 0..n {
            let t = t0 + i as f64 * step;
            while j + 2 < n && times[j + 1] < t {
                j += 1;
            }
            let (ta, tb) = (times[j], times[j + 1]);
            let w = ((t - ta) / (tb - ta)).clamp(0.0, 1.0);
            uniform.push(values[j] * (1.0 - w) + values[j + 1] * w);
        }
        Self::sampled(span, uniform)
    }

    pub fn kind(&self) -> PulseKind {
        match self.shape {
            Shape::Rectangular => PulseKind::Rectangular,
            Shape::Sampled { .. } => PulseKind::Sampled,
        }
    }

    pub fn symbol_period(&self) -> f64 {
        self.symbol_period
    }

    /// `s(t)`; zero outside `[0, T_s]`.
    pub fn amplitude(&self, t: f64) -> f64 {
        if !(0.0..=self.symbol_period).contains(&t) {
            return 0.0;
        }
        match &self.shape {
            Shape::Rectangular => self.symbol_period.sqrt().recip(),
            Shape::Sampled { step, amplitudes } => {
                let x = t / step;
                let i = (x.floor() as usize).min(amplitudes.len() - 2);
                let w = x - i as f64;
                amplitudes[i] * (1.0 - w) + amplitudes[i + 1] * w
            }
        }
    }

    /// Trapezoidal energy of the stored shape (exactly 1 for rectangular).
    pub fn energy(&self) -> f64 {
        match &self.shape {
            Shape::Rectangular => 1.0,
            Shape::Sampled { step, amplitudes } => {
                trapezoid(*step, amplitudes.iter().map(|a| a * a))
            }
        }
    }

    /// `rho(tau) = ∫_0^{T_s} s(t) s(t - tau) dt` for `|tau| <= T_s`.
    pub fn autocorrelation(&self, tau: f64) -> Result<f64> {
        let ts = self.symbol_period;
        let lag = tau.abs();
        if !(lag <= ts * (1.0 + DOMAIN_SLACK)) {
            return Err(Error::Domain(format!(
                "autocorrelation lag {tau} outside [-{ts}, {ts}]"
            )));
        }
        let lag = lag.min(ts);
        Ok(match &self.shape {
            Shape::Rectangular => 1.0 - lag / ts,
            Shape::Sampled { step, amplitudes } => {
                if lag >= ts {
                    0.0
                } else {
                    trapezoid(
                        *step,
                        amplitudes
                            .iter()
                            .enumerate()
                            .map(|(i, a)| a * self.amplitude(i as f64 * step - lag)),
                    )
                }
            }
        })
    }

    /// `rho(delta)^2 + rho(T_s - delta)^2` for `delta` in `[0, T_s]`.
    pub fn mui_factor(&self, delta: f64) -> Result<f64> {
        let ts = self.symbol_period;
        if !(delta >= -ts * DOMAIN_SLACK && delta <= ts * (1.0 + DOMAIN_SLACK)) {
            return Err(Error::Domain(format!(
                "MUI relative delay {delta} outside [0, {ts}]"
            )));
        }
        let delta = delta.clamp(0.0, ts);
        let a = self.autocorrelation(delta)?;
        let b = self.autocorrelation(ts - delta)?;
        Ok(a * a + b * b)
    }

    /// Average MUI factor for a relative delay uniform on `[0, T_s]`,
    /// trapezoidal rule on `quadrature_points` equally spaced nodes.
    pub fn mean_mui_factor(&self, quadrature_points: usize) -> Result<f64> {
        if quadrature_points < 2 {
            return Err(Error::Domain(
                "mean MUI factor needs at least two quadrature points".into(),
            ));
        }
        let ts = self.symbol_period;
        let h = ts / (quadrature_points - 1) as f64;
        let values = (0..quadrature_points)
            .map(|i| self.mui_factor(i as f64 * h))
            .collect::<Result<Vec<_>>>()?;
        Ok(trapezoid(h, values.into_iter()) / ts)
    }
}

fn trapezoid(step: f64, values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    let mut sum = 0.0;
    for (i, v) in values.enumerate() {
        let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        sum += w * v;
    }
    sum * step
}
