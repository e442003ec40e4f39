//! On-disk sample bundles: a directory holding `scenario.json` (config, pulse
//! and realization), the asynchronous samples and the synchronous-arm samples.
//! Samples are raw little-endian `f64` pairs `(re, im)` in the
//! antenna/filter/symbol order of [`ReceivedSamples`], each with a JSON shape
//! sidecar, so they round-trip bit for bit.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::airsim::{ReceivedSamples, ScenarioConfig, ScenarioRealization};
use crate::bench::Instance;
use crate::error::{Error, Result};
use crate::waveform::PulseShape;

pub const SCENARIO_FILE: &str = "scenario.json";
pub const SAMPLES_FILE: &str = "samples.bin";
pub const SAMPLES_SHAPE_FILE: &str = "samples.json";
pub const SYNC_FILE: &str = "sync_samples.bin";
pub const SYNC_SHAPE_FILE: &str = "sync_samples.json";

const LAYOUT: &str = "antenna,filter,symbol";
const ENCODING: &str = "f64le-interleaved-complex";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    config: ScenarioConfig,
    pulse: PulseShape,
    realization: ScenarioRealization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleShape {
    pub num_antennas: usize,
    pub num_filters: usize,
    pub pilot_length: usize,
    pub layout: String,
    pub encoding: String,
}

pub fn encode_samples(y: &ReceivedSamples) -> Vec<u8> {
    let mut out = Vec::with_capacity(y.as_slice().len() * 16);
    for z in y.as_slice() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn decode_samples(bytes: &[u8], shape: &SampleShape) -> Result<ReceivedSamples> {
    if shape.layout != LAYOUT || shape.encoding != ENCODING {
        return Err(Error::Contract(format!(
            "unsupported sample layout `{}` / encoding `{}`",
            shape.layout, shape.encoding
        )));
    }
    let n = shape.num_antennas * shape.num_filters * shape.pilot_length;
    if bytes.len() != n * 16 {
        return Err(Error::Contract(format!(
            "sample file has {} bytes, shape needs {}",
            bytes.len(),
            n * 16
        )));
    }
    let f = |c: &[u8]| f64::from_le_bytes(c.try_into().expect("8-byte chunk"));
    let data = bytes
        .chunks_exact(16)
        .map(|c| Complex64::new(f(&c[..8]), f(&c[8..])))
        .collect();
    ReceivedSamples::from_vec(shape.num_antennas, shape.num_filters, shape.pilot_length, data)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn write_samples(dir: &Path, bin: &str, sidecar: &str, y: &ReceivedSamples) -> Result<()> {
    let shape = SampleShape {
        num_antennas: y.num_antennas(),
        num_filters: y.num_ues(),
        pilot_length: y.pilot_length(),
        layout: LAYOUT.into(),
        encoding: ENCODING.into(),
    };
    write_file(&dir.join(bin), &encode_samples(y))?;
    write_file(&dir.join(sidecar), serde_json::to_string_pretty(&shape)?.as_bytes())
}

fn read_samples(dir: &Path, bin: &str, sidecar: &str) -> Result<ReceivedSamples> {
    let shape: SampleShape = serde_json::from_slice(&read_file(&dir.join(sidecar))?)?;
    decode_samples(&read_file(&dir.join(bin))?, &shape)
}

/// Writes `inst` into `dir`, creating it if needed.
pub fn write_bundle(dir: &Path, inst: &Instance) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let scenario = ScenarioFile {
        config: inst.config.clone(),
        pulse: inst.shape.clone(),
        realization: inst.realization.clone(),
    };
    write_file(&dir.join(SCENARIO_FILE), serde_json::to_string_pretty(&scenario)?.as_bytes())?;
    write_samples(dir, SAMPLES_FILE, SAMPLES_SHAPE_FILE, &inst.samples)?;
    // the L_p x M synchronous observation is stored as a single filter
    let s = &inst.sync_samples;
    let mut sync = ReceivedSamples::zeros(s.ncols(), 1, s.nrows());
    for m in 0..s.ncols() {
        for l in 0..s.nrows() {
            *sync.get_mut(m, 0, l) = s[(l, m)];
        }
    }
    write_samples(dir, SYNC_FILE, SYNC_SHAPE_FILE, &sync)
}

/// Reads a bundle back; effective pilots and noise covariance are rebuilt
/// from the stored realization and pulse.
pub fn read_bundle(dir: &Path) -> Result<Instance> {
    let scenario: ScenarioFile = serde_json::from_slice(&read_file(&dir.join(SCENARIO_FILE))?)?;
    let r = &scenario.realization;
    let samples = read_samples(dir, SAMPLES_FILE, SAMPLES_SHAPE_FILE)?;
    let (k, lp, m) = (r.num_ues(), r.pilot_length(), r.num_antennas());
    if (samples.num_antennas(), samples.num_ues(), samples.pilot_length()) != (m, k, lp) {
        return Err(Error::Contract("samples do not match the scenario dimensions".into()));
    }
    let sync = read_samples(dir, SYNC_FILE, SYNC_SHAPE_FILE)?;
    if (sync.num_antennas(), sync.num_ues(), sync.pilot_length()) != (m, 1, lp) {
        return Err(Error::Contract("synchronous samples do not match the scenario dimensions".into()));
    }
    let sync_samples = DMatrix::from_fn(lp, m, |l, a| sync.get(a, 0, l));
    let (pilots, covariance) = Instance::derived(&scenario.config, r, &scenario.pulse)?;
    Ok(Instance {
        config: scenario.config,
        shape: scenario.pulse,
        realization: scenario.realization,
        pilots,
        covariance,
        samples,
        sync_samples,
    })
}
