//! Banded Cholesky factorization for the matched-filter noise covariance.
//!
//! Reordered symbol-major (`l` outer, `k` inner), the covariance only couples
//! samples of the same or adjacent symbol index, so it is banded with fewer
//! than `2K` sub-diagonals. That keeps factorization at `O(K^3 L_p)` instead
//! of the dense `O(K^3 L_p^3)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// How non-positive pivots are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotMode {
    /// Positive semidefinite input: a pivot that vanishes to round-off zeroes
    /// its column, which is exact when the row is a linear combination of
    /// earlier rows. Suitable for drawing samples, not for solves.
    Semidefinite,
    /// Every pivot must be positive; suitable for solves and whitening.
    Strict,
}

const ZERO_PIVOT_REL: f64 = 1e-12;
const NEGATIVE_PIVOT_REL: f64 = 1e-9;
const STRICT_PIVOT_REL: f64 = 1e-14;

/// Lower-triangular band factor `L` with `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct BandCholesky {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl BandCholesky {
    /// Factors the symmetric `n x n` matrix given by `entry(i, j)` (queried
    /// only for `j <= i`, `i - j <= bw`), with `jitter` added to the diagonal.
    pub fn factor(
        n: usize,
        bw: usize,
        entry: impl Fn(usize, usize) -> f64,
        jitter: f64,
        mode: PivotMode,
    ) -> Result<Self> {
        let w = bw + 1;
        let mut data = vec![0.0; n * w];
        let idx = |i: usize, j: usize| i * w + (bw + j - i);
        for i in 0..n {
            let lo_i = i.saturating_sub(bw);
            for j in lo_i..=i {
                let lo = lo_i.max(j.saturating_sub(bw));
                let mut s = entry(i, j);
                if i == j {
                    s += jitter;
                }
                for k in lo..j {
                    s -= data[idx(i, k)] * data[idx(j, k)];
                }
                if i == j {
                    let scale = (entry(i, i) + jitter).abs().max(f64::MIN_POSITIVE);
                    data[idx(i, i)] = match mode {
                        PivotMode::Strict => {
                            if s > STRICT_PIVOT_REL * scale {
                                s.sqrt()
                            } else {
                                return Err(Error::Numerical(format!(
                                    "non-positive pivot {s:e} at row {i}"
                                )));
                            }
                        }
                        PivotMode::Semidefinite => {
                            if s > ZERO_PIVOT_REL * scale {
                                s.sqrt()
                            } else if s >= -NEGATIVE_PIVOT_REL * scale {
                                0.0
                            } else {
                                return Err(Error::Numerical(format!(
                                    "negative pivot {s:e} at row {i}"
                                )));
                            }
                        }
                    };
                } else {
                    let d = data[idx(j, j)];
                    data[idx(i, j)] = if d == 0.0 { 0.0 } else { s / d };
                }
            }
        }
        Ok(Self { n, bw, data })
    }

    /// Factors with the documented jitter schedule: no jitter first, then
    /// `1e-10`, `1e-9`, `1e-8` on successive failures.
    pub fn factor_with_jitter(
        n: usize,
        bw: usize,
        entry: impl Fn(usize, usize) -> f64,
        mode: PivotMode,
    ) -> Result<Self> {
        let mut last = None;
        for attempt in 0..4 {
            let jitter = if attempt == 0 {
                0.0
            } else {
                1e-10 * 10f64.powi(attempt - 1)
            };
            match Self::factor(n, bw, &entry, jitter, mode) {
                Ok(f) => return Ok(f),
                Err(e) => last = Some(e),
            }
        }
        Err(Error::Numerical(format!(
            "covariance factorization failed after 3 jitter retries: {}",
            last.map(|e| e.to_string()).unwrap_or_default()
        )))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.bw + 1) + (self.bw + j - i)]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i || i - j > self.bw {
            0.0
        } else {
            self.at(i, j)
        }
    }

    /// `L x`.
    pub fn mul_lower(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                (i.saturating_sub(self.bw)..=i)
                    .map(|j| x[j] * self.at(i, j))
                    .sum()
            })
            .collect()
    }

    /// Overwrites `b` with `L⁻¹ b`.
    pub fn solve_lower_in_place(&self, b: &mut [Complex64]) {
        assert_eq!(b.len(), self.n);
        for i in 0..self.n {
            let mut s = b[i];
            for j in i.saturating_sub(self.bw)..i {
                s -= b[j] * self.at(i, j);
            }
            b[i] = s / self.at(i, i);
        }
    }

    /// Overwrites `b` with `L⁻ᵀ b`.
    pub fn solve_upper_in_place(&self, b: &mut [Complex64]) {
        assert_eq!(b.len(), self.n);
        for i in (0..self.n).rev() {
            let mut s = b[i];
            for j in i + 1..(i + self.bw + 1).min(self.n) {
                s -= b[j] * self.at(j, i);
            }
            b[i] = s / self.at(i, i);
        }
    }

    /// Overwrites `b` with `A⁻¹ b`.
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        self.solve_lower_in_place(b);
        self.solve_upper_in_place(b);
    }
}
