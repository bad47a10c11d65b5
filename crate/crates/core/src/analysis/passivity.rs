use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::densela::{c64, is_psd_shifted, C64};
use crate::error::{Error, Result};
use crate::systems::TransferFunction;

/// Relative diagonal shift of the Cholesky test.
pub const PSD_SHIFT: f64 = 1e-10;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PassivitySample {
    pub s: C64,
    /// `None` when `H(s)` could not be evaluated.
    pub psd: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PassivityReport {
    pub samples: Vec<PassivitySample>,
    pub all_psd: bool,
    /// Indices of samples that are not PSD or failed to evaluate.
    pub failures: Vec<usize>,
}

/// Samples `H(s) + H(s)^H >= 0` at points of the open right half-plane.
/// This is a necessary condition for positive realness, not a certificate.
pub fn passivity_sample<M: TransferFunction + ?Sized>(model: &M, points: &[C64]) -> Result<PassivityReport> {
    if let Some(bad) = points.iter().find(|s| !(s.re > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "passivity samples need Re(s) > 0, got {bad}"
        )));
    }
    let samples: Vec<PassivitySample> = points
        .iter()
        .map(|&s| PassivitySample {
            s,
            psd: model.eval_transfer(s).ok().map(|h| is_psd_shifted(&h, PSD_SHIFT)),
        })
        .collect();
    let failures: Vec<usize> = samples
        .iter()
        .enumerate()
        .filter(|(_, p)| p.psd != Some(true))
        .map(|(i, _)| i)
        .collect();
    Ok(PassivityReport {
        all_psd: failures.is_empty(),
        samples,
        failures,
    })
}

/// `count` points with `Re(s) > 0`, log-uniform in magnitude over
/// `[scale / 100, 100 scale]` and uniform in angle over `(-pi/2, pi/2)`.
pub fn sample_right_half_plane(count: usize, scale: f64, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mag = scale * 10f64.powf(rng.gen_range(-2.0..2.0));
            let theta = rng.gen_range(-1.5..1.5);
            c64(mag * f64::cos(theta), mag * f64::sin(theta))
        })
        .collect()
}
