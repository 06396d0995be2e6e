//! Symmetric channels and generalized degrees of freedom.

use serde::Serialize;

use crate::channel::{
    etw_split, hk_params, make_channel, outer_params, ChannelInstance, RegimeLabel,
};
use crate::error::{Error, Result};
use crate::polyhedra::symmetric_max;
use crate::regions::{achievable_region, outer_region, strong_region};

/// One point of a GDoF sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GdofPoint {
    pub alpha: f64,
    pub snr: f64,
    pub dsym_lower: f64,
    pub dsym_upper: f64,
    pub dsym_formula: f64,
}

/// All users share `SNR = snr` and `INR = snr^alpha`.
pub fn symmetric_channel(k: usize, snr: f64, alpha: f64) -> Result<ChannelInstance> {
    if !(snr > 1.0 && snr.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "snr must exceed 1, got {snr}"
        )));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    let inr = snr.powf(alpha);
    make_channel(k, &vec![snr; k], &vec![inr; k])
}

/// Closed-form symmetric GDoF as a function of `alpha = log INR / log SNR`.
pub fn dsym_formula(alpha: f64) -> f64 {
    if alpha < 1.0 {
        alpha.max(1.0 - alpha).min(1.0 - alpha / 2.0)
    } else {
        (alpha / 2.0).min(1.0)
    }
}

/// Numeric bracket on the symmetric GDoF at finite `snr`.
///
/// Weak side: achievable region under ETW (lower) against the outer bound
/// (upper). Strong side: the capacity region, so both ends coincide.
/// Rates are normalized by `log2(snr)`.
pub fn dsym_numeric(k: usize, alpha: f64, snr: f64) -> Result<(f64, f64)> {
    let ch = symmetric_channel(k, snr, alpha)?;
    let norm = snr.log2();
    match crate::channel::classify_regime(&ch) {
        RegimeLabel::Weak => {
            let hk = hk_params(&ch, &etw_split(&ch))?;
            let lower = symmetric_max(&achievable_region(&hk, k)?)?;
            let upper = symmetric_max(&outer_region(&outer_params(&ch), k)?)?;
            Ok((lower / norm, upper / norm))
        }
        RegimeLabel::Strong | RegimeLabel::VeryStrong => {
            let v = symmetric_max(&strong_region(&ch)?)? / norm;
            Ok((v, v))
        }
        RegimeLabel::Mixed => unreachable!("a symmetric channel is never mixed"),
    }
}

/// Evaluates every grid point, keeping the input order.
pub fn gdof_sweep(k: usize, alphas: &[f64], snr: f64) -> Result<Vec<GdofPoint>> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("empty alpha grid".into()));
    }
    alphas
        .iter()
        .map(|&alpha| {
            let (dsym_lower, dsym_upper) = dsym_numeric(k, alpha, snr)?;
            Ok(GdofPoint {
                alpha,
                snr,
                dsym_lower,
                dsym_upper,
                dsym_formula: dsym_formula(alpha),
            })
        })
        .collect()
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn alpha_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|t| lo + (hi - lo) * t as f64 / (n - 1) as f64)
            .collect(),
    }
}
