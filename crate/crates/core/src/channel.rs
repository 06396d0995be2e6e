//! Channel parameterization and the per-user information quantities.
//!
//! User `i` transmits to receiver `i` and interferes only at receiver
//! `i - 1` (cyclically). `snr[i]` is the direct-link signal-to-noise ratio
//! and `inr[i]` the interference-to-noise ratio that transmitter `i`
//! creates at receiver `i - 1`. All ratios are linear scale; all rates are
//! bits per channel use.

use serde::Serialize;

use crate::error::{Error, Result};

/// Index `i + offset` reduced modulo `k`.
#[inline]
pub(crate) fn cyc(i: usize, offset: isize, k: usize) -> usize {
    (i as isize + offset).rem_euclid(k as isize) as usize
}

/// A validated K-user cyclic Gaussian interference channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelInstance {
    snr: Vec<f64>,
    inr: Vec<f64>,
}

impl ChannelInstance {
    pub fn new(snr: Vec<f64>, inr: Vec<f64>) -> Result<Self> {
        make_channel(snr.len(), &snr, &inr)
    }

    /// Number of users.
    pub fn k(&self) -> usize {
        self.snr.len()
    }

    pub fn snr(&self) -> &[f64] {
        &self.snr
    }

    pub fn inr(&self) -> &[f64] {
        &self.inr
    }

    /// SNR of user `i`, index taken modulo K.
    pub fn snr_at(&self, i: isize) -> f64 {
        self.snr[i.rem_euclid(self.k() as isize) as usize]
    }

    /// INR of user `i`, index taken modulo K.
    pub fn inr_at(&self, i: isize) -> f64 {
        self.inr[i.rem_euclid(self.k() as isize) as usize]
    }
}

/// Builds and validates a channel. `snr` and `inr` are linear-scale ratios.
pub fn make_channel(k: usize, snr: &[f64], inr: &[f64]) -> Result<ChannelInstance> {
    if k < 2 {
        return Err(Error::TooFewUsers(k));
    }
    if snr.len() != k || inr.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            snr: snr.len(),
            inr: inr.len(),
        });
    }
    for (i, &s) in snr.iter().enumerate() {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::NonPositiveSnr {
                user: i + 1,
                value: s,
            });
        }
    }
    for (i, &x) in inr.iter().enumerate() {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::NegativeInr {
                user: i + 1,
                value: x,
            });
        }
    }
    Ok(ChannelInstance {
        snr: snr.to_vec(),
        inr: inr.to_vec(),
    })
}

/// Interference regime of a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeLabel {
    Weak,
    Strong,
    VeryStrong,
    Mixed,
}

impl RegimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::Weak => "weak",
            RegimeLabel::Strong => "strong",
            RegimeLabel::VeryStrong => "very_strong",
            RegimeLabel::Mixed => "mixed",
        }
    }

    pub fn is_strong(self) -> bool {
        matches!(self, RegimeLabel::Strong | RegimeLabel::VeryStrong)
    }
}

/// Classifies the channel, checking VeryStrong, Strong, Weak in that order so
/// that equality cases land on the stronger label.
pub fn classify_regime(ch: &ChannelInstance) -> RegimeLabel {
    let k = ch.k() as isize;
    let very_strong = (0..k).all(|i| ch.inr_at(i) >= (1.0 + ch.snr_at(i - 1)) * ch.snr_at(i));
    if very_strong {
        return RegimeLabel::VeryStrong;
    }
    if (0..k).all(|i| ch.inr_at(i) >= ch.snr_at(i)) {
        return RegimeLabel::Strong;
    }
    if (0..k).all(|i| ch.inr_at(i) <= ch.snr_at(i)) {
        return RegimeLabel::Weak;
    }
    RegimeLabel::Mixed
}

/// Private-message power allocation, expressed as the INR each transmitter's
/// private part produces at the receiver it interferes with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSplit {
    inr_private: Vec<f64>,
}

impl PowerSplit {
    /// Validates `0 <= inr_private[i] <= inr[i]` for every user.
    pub fn new(ch: &ChannelInstance, inr_private: Vec<f64>) -> Result<Self> {
        if inr_private.len() != ch.k() {
            return Err(Error::DimensionMismatch {
                expected: ch.k(),
                actual: inr_private.len(),
            });
        }
        for (i, (&p, &inr)) in inr_private.iter().zip(ch.inr()).enumerate() {
            if !(p >= 0.0 && p <= inr) {
                return Err(Error::InvalidSplit {
                    user: i + 1,
                    value: p,
                    inr,
                });
            }
        }
        Ok(PowerSplit { inr_private })
    }

    /// Every message is entirely private (no common part).
    pub fn private_only(ch: &ChannelInstance) -> Self {
        PowerSplit {
            inr_private: ch.inr().to_vec(),
        }
    }

    pub fn inr_private(&self) -> &[f64] {
        &self.inr_private
    }

    pub fn k(&self) -> usize {
        self.inr_private.len()
    }

    /// Direct-link SNR of user `i`'s private part. With no interference the
    /// whole power counts as private.
    pub fn snr_private(&self, ch: &ChannelInstance, i: usize) -> f64 {
        let inr = ch.inr()[i];
        if inr > 0.0 {
            ch.snr()[i] * (self.inr_private[i] / inr)
        } else {
            ch.snr()[i]
        }
    }
}

/// Private INR set to `min(INR_i, 1)`: the private part arrives at the
/// interfered receiver at the noise level.
pub fn etw_split(ch: &ChannelInstance) -> PowerSplit {
    PowerSplit {
        inr_private: ch.inr().iter().map(|&x| x.min(1.0)).collect(),
    }
}

/// Han-Kobayashi mutual-information quantities for a fixed Gaussian input,
/// in bits. `a[i] <= e[i] <= g[i]`, `a[i] <= d[i] <= g[i]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HkParams {
    pub a: Vec<f64>,
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub g: Vec<f64>,
    pub r: Vec<f64>,
}

impl HkParams {
    /// Assembles parameters from `a, d, e, g`, deriving
    /// `r[i] = a[i-1] + g[i] + sum_{j not in {i, i-1}} e[j]`.
    pub fn from_adeg(a: Vec<f64>, d: Vec<f64>, e: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        let k = a.len();
        for len in [d.len(), e.len(), g.len()] {
            if len != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    actual: len,
                });
            }
        }
        if k < 2 {
            return Err(Error::TooFewUsers(k));
        }
        let r = derive_r(&a, &e, &g);
        Ok(HkParams { a, d, e, g, r })
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }
}

fn derive_r(a: &[f64], e: &[f64], g: &[f64]) -> Vec<f64> {
    let k = a.len();
    (0..k)
        .map(|i| {
            let prev = cyc(i, -1, k);
            let rest: f64 = (0..k).filter(|&j| j != i && j != prev).map(|j| e[j]).sum();
            a[prev] + g[i] + rest
        })
        .collect()
}

/// Evaluates the HK quantities for Gaussian inputs under `split`.
///
/// At receiver `i` the noise-plus-private-interference floor is
/// `nu = 1 + inr_private[i+1]`, and
///
/// ```text
/// a = log2((nu + SNR_ip) / nu)            d = log2((nu + SNR_i) / nu)
/// e = log2((1 + INR_{i+1} + SNR_ip) / nu) g = log2((1 + INR_{i+1} + SNR_i) / nu)
/// ```
pub fn hk_params(ch: &ChannelInstance, split: &PowerSplit) -> Result<HkParams> {
    let k = ch.k();
    if split.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: split.k(),
        });
    }
    let mut a = Vec::with_capacity(k);
    let mut d = Vec::with_capacity(k);
    let mut e = Vec::with_capacity(k);
    let mut g = Vec::with_capacity(k);
    for i in 0..k {
        let next = cyc(i, 1, k);
        let nu = 1.0 + split.inr_private[next];
        let snr = ch.snr()[i];
        let snr_p = split.snr_private(ch, i);
        let inr_next = ch.inr()[next];
        a.push(((nu + snr_p) / nu).log2());
        d.push(((nu + snr) / nu).log2());
        e.push(((1.0 + inr_next + snr_p) / nu).log2());
        g.push(((1.0 + inr_next + snr) / nu).log2());
    }
    let r = derive_r(&a, &e, &g);
    Ok(HkParams { a, d, e, g, r })
}

/// Quantities entering the weak-regime outer bound, in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OuterParams {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    pub rho: Vec<f64>,
}

impl OuterParams {
    pub fn k(&self) -> usize {
        self.alpha.len()
    }
}

/// Evaluates the outer-bound quantities. The formulas are computed for any
/// instance; they bound the capacity region only in the weak regime.
pub fn outer_params(ch: &ChannelInstance) -> OuterParams {
    let k = ch.k();
    let mut alpha = Vec::with_capacity(k);
    let mut beta = Vec::with_capacity(k);
    let mut gamma = Vec::with_capacity(k);
    let mut lambda = Vec::with_capacity(k);
    let mut mu = Vec::with_capacity(k);
    for i in 0..k {
        let snr = ch.snr()[i];
        let inr = ch.inr()[i];
        let inr_next = ch.inr()[cyc(i, 1, k)];
        alpha.push((1.0 + inr_next + snr / (1.0 + inr)).log2());
        beta.push(((1.0 + snr) / (1.0 + inr)).log2());
        gamma.push((1.0 + inr_next + snr).log2());
        lambda.push((1.0 + snr).log2());
        mu.push((1.0 + inr).log2());
    }
    let rho = derive_r(&beta, &alpha, &gamma);
    OuterParams {
        alpha,
        beta,
        gamma,
        lambda,
        mu,
        rho,
    }
}

/// How a quantity is compared against its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    Equal,
}

/// One of the six per-user gap inequalities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    /// 1-based user label.
    pub user: usize,
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub pass: bool,
}

/// Report of the per-user inequalities used by the two-bit gap argument.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IneqReport {
    pub regime: RegimeLabel,
    pub checks: Vec<InequalityCheck>,
}

impl IneqReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Slack for "at most" comparisons and the exact `gamma - g = 1` identity.
pub const INEQ_TOL: f64 = 1e-12;

/// Evaluates `lambda-d`, `lambda-(a+e_prev)`, `beta-a`, `alpha-e`,
/// `gamma-g` and `mu-e_prev` for every user against bounds 1, 2, 1, 1, 1, 1.
///
/// `gamma - g` equals `log2(1 + inr_private[i+1])`, which is exactly one
/// under the ETW split whenever `INR_{i+1} >= 1`; it is checked as an
/// equality there and as an upper bound otherwise. Out-of-regime channels
/// are reported, not rejected.
pub fn useful_inequalities(ch: &ChannelInstance, hk: &HkParams, ob: &OuterParams) -> IneqReport {
    let k = ch.k();
    let mut checks = Vec::with_capacity(6 * k);
    for i in 0..k {
        let prev = cyc(i, -1, k);
        let next = cyc(i, 1, k);
        let gamma_rel = if ch.inr()[next] >= 1.0 {
            Relation::Equal
        } else {
            Relation::AtMost
        };
        let items = [
            (
                "lambda_minus_d",
                ob.lambda[i] - hk.d[i],
                1.0,
                Relation::AtMost,
            ),
            (
                "lambda_minus_a_plus_e_prev",
                ob.lambda[i] - (hk.a[i] + hk.e[prev]),
                2.0,
                Relation::AtMost,
            ),
            ("beta_minus_a", ob.beta[i] - hk.a[i], 1.0, Relation::AtMost),
            (
                "alpha_minus_e",
                ob.alpha[i] - hk.e[i],
                1.0,
                Relation::AtMost,
            ),
            ("gamma_minus_g", ob.gamma[i] - hk.g[i], 1.0, gamma_rel),
            (
                "mu_minus_e_prev",
                ob.mu[i] - hk.e[prev],
                1.0,
                Relation::AtMost,
            ),
        ];
        for (name, value, bound, relation) in items {
            let pass = match relation {
                Relation::AtMost => value <= bound + INEQ_TOL,
                Relation::Equal => (value - bound).abs() <= INEQ_TOL,
            };
            checks.push(InequalityCheck {
                user: i + 1,
                name,
                value,
                bound,
                relation,
                pass,
            });
        }
    }
    IneqReport {
        regime: classify_regime(ch),
        checks,
    }
}
