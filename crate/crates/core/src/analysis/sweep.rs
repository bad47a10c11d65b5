use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{rel_error, REL_EPS};
use crate::densela::{c64, Matrix};
use crate::error::{Error, Result};
use crate::systems::TransferFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridScale {
    Log,
    Linear,
}

pub fn frequency_grid(f_min: f64, f_max: f64, points: usize, scale: GridScale) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidArgument("a sweep needs at least 2 points".into()));
    }
    if !(f_min.is_finite() && f_max.is_finite() && f_max > f_min) {
        return Err(Error::InvalidArgument("need finite f_min < f_max".into()));
    }
    let last = (points - 1) as f64;
    let grid = match scale {
        GridScale::Log => {
            if f_min <= 0.0 {
                return Err(Error::InvalidArgument("log grid needs f_min > 0".into()));
            }
            let (a, b) = (f_min.log10(), f_max.log10());
            (0..points)
                .map(|k| 10f64.powf(a + (b - a) * k as f64 / last))
                .collect()
        }
        GridScale::Linear => (0..points)
            .map(|k| f_min + (f_max - f_min) * k as f64 / last)
            .collect(),
    };
    Ok(grid)
}

/// `H(2 pi i f)` on a frequency grid; points where evaluation failed are `None`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrequencyResponse {
    pub label: String,
    pub freqs_hz: Vec<f64>,
    pub values: Vec<Option<Matrix>>,
}

pub fn sweep<M>(model: &M, freqs_hz: &[f64], label: &str) -> FrequencyResponse
where
    M: TransferFunction + Sync + ?Sized,
{
    let values = freqs_hz
        .par_iter()
        .map(|&f| model.eval_transfer(c64(0.0, 2.0 * PI * f)).ok())
        .collect();
    FrequencyResponse {
        label: label.to_string(),
        freqs_hz: freqs_hz.to_vec(),
        values,
    }
}

impl FrequencyResponse {
    pub fn failed_points(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    /// CSV with one `re, im, abs` column triple per entry; indices are 1-based.
    /// Failed points are written as `NaN`. Panics if an entry is out of range.
    pub fn to_csv(&self, entries: Option<&[(usize, usize)]>) -> String {
        let shape = self.values.iter().flatten().next().map(|h| h.shape()).unwrap_or((0, 0));
        let all: Vec<(usize, usize)> = (0..shape.0)
            .flat_map(|i| (0..shape.1).map(move |j| (i, j)))
            .collect();
        let entries = entries.unwrap_or(&all);
        let mut out = String::from("f_hz");
        for &(i, j) in entries {
            let _ = write!(out, ",re(H_{0}_{1}),im(H_{0}_{1}),abs(H_{0}_{1})", i + 1, j + 1);
        }
        out.push('\n');
        for (f, v) in self.freqs_hz.iter().zip(&self.values) {
            let _ = write!(out, "{f:e}");
            for &(i, j) in entries {
                match v {
                    Some(h) => {
                        let z = h[(i, j)];
                        let _ = write!(out, ",{:e},{:e},{:e}", z.re, z.im, z.norm());
                    }
                    None => out.push_str(",NaN,NaN,NaN"),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepErrorSummary {
    /// `||H_a - H_b||_F / ||H_a||_F` per point; `None` where either failed.
    pub rel_errors: Vec<Option<f64>>,
    pub max_rel: f64,
    pub mean_rel: f64,
    /// Largest entrywise `|H_a - H_b|`.
    pub max_abs: f64,
    pub compared: usize,
}

/// Pointwise error of `b` against the reference `a` on an identical grid.
pub fn sweep_error(a: &FrequencyResponse, b: &FrequencyResponse) -> Result<SweepErrorSummary> {
    if a.freqs_hz != b.freqs_hz {
        return Err(Error::GridMismatch);
    }
    let mut rel_errors = Vec::with_capacity(a.freqs_hz.len());
    let (mut max_rel, mut sum, mut max_abs, mut compared) = (0.0_f64, 0.0, 0.0_f64, 0);
    for (x, y) in a.values.iter().zip(&b.values) {
        match (x, y) {
            (Some(x), Some(y)) if x.shape() == y.shape() => {
                let e = rel_error(x, y);
                max_rel = max_rel.max(e);
                max_abs = max_abs.max(x.max_abs_diff(y));
                sum += e;
                compared += 1;
                rel_errors.push(Some(e));
            }
            (Some(x), Some(y)) => {
                return Err(Error::Dimension(format!(
                    "responses have shapes {:?} and {:?}",
                    x.shape(),
                    y.shape()
                )))
            }
            _ => rel_errors.push(None),
        }
    }
    Ok(SweepErrorSummary {
        rel_errors,
        max_rel,
        mean_rel: sum / (compared as f64).max(REL_EPS),
        max_abs,
        compared,
    })
}
