use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{check_delays, ReceivedSamples};
use crate::error::{Error, Result};
use crate::linalg::{BandCholesky, PivotMode};
use crate::waveform::PulseShape;

/// Correlation of the matched-filter noise samples on one antenna, stored
/// structurally: sample `(k, l)` correlates with `(k', l)` through
/// `rho(tau_k - tau_k')` and, for `k' <= k`, with `(k', l + 1)` through
/// `rho(T_s - (tau_k - tau_k'))`. The dense form is `K L_p x K L_p` indexed by
/// `k * L_p + l`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseCovariance {
    num_ues: usize,
    pilot_length: usize,
    /// `K x K`, symmetric.
    same_symbol: Vec<f64>,
    /// `K x K`, entry `[k][k']` meaningful for `k' <= k`.
    next_symbol: Vec<f64>,
    /// `sigma_n^2`.
    pub noise_variance: f64,
}

impl NoiseCovariance {
    pub fn build(
        delays: &[f64],
        shape: &PulseShape,
        pilot_length: usize,
        noise_variance: f64,
    ) -> Result<Self> {
        check_delays(delays, shape.symbol_period())?;
        if pilot_length == 0 {
            return Err(Error::Contract("pilot length must be positive".into()));
        }
        if !(noise_variance >= 0.0) {
            return Err(Error::Contract("noise variance must be nonnegative".into()));
        }
        let k = delays.len();
        let ts = shape.symbol_period();
        let mut same_symbol = vec![0.0; k * k];
        let mut next_symbol = vec![0.0; k * k];
        for a in 0..k {
            same_symbol[a * k + a] = 1.0;
            for b in 0..a {
                let d = delays[a] - delays[b];
                let rho = shape.autocorrelation(d)?;
                same_symbol[a * k + b] = rho;
                same_symbol[b * k + a] = rho;
                next_symbol[a * k + b] = shape.autocorrelation(ts - d)?;
            }
            next_symbol[a * k + a] = shape.autocorrelation(ts)?;
        }
        Ok(Self {
            num_ues: k,
            pilot_length,
            same_symbol,
            next_symbol,
            noise_variance,
        })
    }

    /// White noise on a single filter (`K = 1`).
    pub fn white(pilot_length: usize, noise_variance: f64) -> Self {
        Self {
            num_ues: 1,
            pilot_length,
            same_symbol: vec![1.0],
            next_symbol: vec![0.0],
            noise_variance,
        }
    }

    pub fn num_ues(&self) -> usize {
        self.num_ues
    }

    pub fn pilot_length(&self) -> usize {
        self.pilot_length
    }

    pub fn dim(&self) -> usize {
        self.num_ues * self.pilot_length
    }

    /// Unit-variance correlation between samples `(k, l)` and `(k2, l2)`.
    pub fn correlation(&self, k: usize, l: usize, k2: usize, l2: usize) -> f64 {
        let n = self.num_ues;
        if l == l2 {
            self.same_symbol[k * n + k2]
        } else if l2 == l + 1 && k2 <= k {
            self.next_symbol[k * n + k2]
        } else if l == l2 + 1 && k <= k2 {
            self.next_symbol[k2 * n + k]
        } else {
            0.0
        }
    }

    /// Entry of the dense `Σ` with the `k * L_p + l` ordering.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let lp = self.pilot_length;
        self.correlation(i / lp, i % lp, j / lp, j % lp)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// Symbol-major position of `(k, l)` in the banded ordering.
    #[inline]
    pub(crate) fn band_index(&self, k: usize, l: usize) -> usize {
        l * self.num_ues + k
    }

    /// Factor of `scale * Σ` in the symbol-major ordering, with jitter retries.
    pub(crate) fn factor(&self, scale: f64, mode: PivotMode) -> Result<BandCholesky> {
        let n = self.num_ues;
        BandCholesky::factor_with_jitter(
            self.dim(),
            n,
            |i, j| scale * self.correlation(i % n, i / n, j % n, j / n),
            mode,
        )
    }
}

/// Draws `M` independent antenna realizations of the correlated noise
/// (`CN(0, sigma_n^2 Σ)` per antenna), deterministic in `seed`.
pub fn draw_correlated_noise(
    cov: &NoiseCovariance,
    num_antennas: usize,
    seed: u64,
) -> Result<ReceivedSamples> {
    let (k, lp) = (cov.num_ues(), cov.pilot_length());
    let mut out = ReceivedSamples::zeros(num_antennas, k, lp);
    if cov.noise_variance == 0.0 {
        return Ok(out);
    }
    let factor = cov.factor(1.0, PivotMode::Semidefinite)?;
    let sigma = cov.noise_variance.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = sigma * std::f64::consts::FRAC_1_SQRT_2;
    for m in 0..num_antennas {
        let w: Vec<Complex64> = (0..cov.dim())
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, im) * scale
            })
            .collect();
        let n = factor.mul_lower(&w);
        for kk in 0..k {
            for l in 0..lp {
                *out.get_mut(m, kk, l) = n[cov.band_index(kk, l)];
            }
        }
    }
    Ok(out)
}
