//! Grant-free random access with asynchronous (delayed) uplink users.
//!
//! - [`waveform`]: pulse shape, autocorrelation and MUI factor.
//! - [`airsim`]: scenario generation, effective pilots, correlated noise and
//!   matched-filter sample synthesis (closed form and continuous-time oracle).
//! - [`detector`]: the message-passing joint activity detector / channel
//!   estimator.
//! - [`baselines`]: synchronous MP-BSBL, genie-aided MMSE and block OMP.
//! - [`bench`]: metrics, SINR analysis, oracle check and seeded sweeps.
//! - [`bundle`], [`cli`]: sample bundles on disk and the `gfra` binary.

pub mod airsim;
pub mod baselines;
pub mod bench;
pub mod bundle;
pub mod cli;
pub mod detector;
pub mod error;
pub mod linalg;
mod serde_util;
pub mod waveform;

pub use error::{Error, Result};
