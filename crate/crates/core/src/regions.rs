//! Region generators. Every region is returned min-expanded: one row per
//! branch of each `min`, tagged with its family so gap logic can regroup.

use serde::Serialize;

use crate::channel::{
    classify_regime, cyc, hk_params, outer_params, ChannelInstance, HkParams, OuterParams,
    PowerSplit, RegimeLabel,
};
use crate::error::{Error, Result};
use crate::polyhedra;
use crate::system::{Family, InequalitySystem, Row, RowParams};

/// Coefficient vector with ones on the cyclic window `m, m+1, .., m+l-1`.
fn window(k: usize, m: usize, l: usize) -> Vec<i32> {
    let mut c = vec![0; k];
    for t in 0..l {
        c[(m + t) % k] = 1;
    }
    c
}

fn unit(k: usize, i: usize, v: i32) -> Vec<i32> {
    let mut c = vec![0; k];
    c[i] = v;
    c
}

/// Sum of `v[j]` over the cyclic index range `from ..= to` (as offsets from
/// a base index; empty when `to < from`).
fn cyc_sum(v: &[f64], base: usize, from: isize, to: isize) -> f64 {
    let k = v.len();
    (from..=to).map(|o| v[cyc(base, o, k)]).sum()
}

fn push(sys: &mut InequalitySystem, coeffs: Vec<i32>, rhs: f64, family: Family, params: RowParams) {
    sys.push(Row {
        coeffs,
        rhs,
        family,
        params,
    })
    .expect("generator rows match the variable count");
}

/// Per-family right-hand sides of the HK / outer-bound shape.
struct Shape<'a> {
    individual: Vec<Vec<f64>>,
    /// Two branches for window `(m, l)`.
    adjacent: &'a dyn Fn(usize, usize) -> [f64; 2],
    full: Vec<f64>,
    sum_plus_one: Vec<f64>,
}

fn build(k: usize, shape: &Shape<'_>) -> InequalitySystem {
    let mut sys = InequalitySystem::rates(k);
    for (i, branches) in shape.individual.iter().enumerate() {
        for &rhs in branches {
            push(
                &mut sys,
                unit(k, i, 1),
                rhs,
                Family::Individual,
                RowParams::user(i + 1),
            );
        }
    }
    for i in 0..k {
        push(
            &mut sys,
            unit(k, i, -1),
            0.0,
            Family::Nonneg,
            RowParams::user(i + 1),
        );
    }
    for l in 2..k {
        for m in 0..k {
            for rhs in (shape.adjacent)(m, l) {
                push(
                    &mut sys,
                    window(k, m, l),
                    rhs,
                    Family::AdjacentSum,
                    RowParams::window(m + 1, l),
                );
            }
        }
    }
    for &rhs in &shape.full {
        push(
            &mut sys,
            vec![1; k],
            rhs,
            Family::FullSum,
            RowParams::none(),
        );
    }
    for (i, &rhs) in shape.sum_plus_one.iter().enumerate() {
        let mut c = vec![1; k];
        c[i] = 2;
        push(&mut sys, c, rhs, Family::SumPlusOne, RowParams::user(i + 1));
    }
    sys
}

fn check_k(actual: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::TooFewUsers(k));
    }
    if actual != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual,
        });
    }
    Ok(())
}

fn hk_shape(hk: &HkParams, with_common_bound: bool) -> InequalitySystem {
    let k = hk.k();
    let (a, e, g) = (&hk.a, &hk.e, &hk.g);
    let individual = (0..k)
        .map(|i| {
            let mut b = vec![hk.d[i]];
            if with_common_bound {
                b.push(a[i] + e[cyc(i, -1, k)]);
            }
            b
        })
        .collect();
    let adjacent = |m: usize, l: usize| {
        let last = a[cyc(m, l as isize - 1, k)];
        let l = l as isize;
        [
            g[m] + cyc_sum(e, m, 1, l - 2) + last,
            cyc_sum(e, m, -1, l - 2) + last,
        ]
    };
    let mut full = vec![e.iter().sum()];
    full.extend(hk.r.iter().copied());
    let sum_plus_one = (0..k)
        .map(|i| a[i] + g[i] + (0..k).filter(|&j| j != i).map(|j| e[j]).sum::<f64>())
        .collect();
    build(
        k,
        &Shape {
            individual,
            adjacent: &adjacent,
            full,
            sum_plus_one,
        },
    )
}

/// Han-Kobayashi achievable region for a fixed input distribution.
///
/// Families, in order: `R_i <= min{d_i, a_i + e_{i-1}}`, `R_i >= 0`, the
/// adjacent windows of length `2 <= l < K`, the full sum
/// `min{sum e, r_1, .., r_K}` and the `K` sum-plus-one rows; `K^2 + 1`
/// families in total.
pub fn achievable_region(hk: &HkParams, k: usize) -> Result<InequalitySystem> {
    check_k(hk.k(), k)?;
    Ok(hk_shape(hk, true))
}

/// Three-user time-sharing region: the achievable region without the
/// `a_i + e_{i-1}` individual bounds.
pub fn ts_region_3(hk: &HkParams) -> Result<InequalitySystem> {
    if hk.k() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: hk.k(),
        });
    }
    Ok(hk_shape(hk, false))
}

/// Weak-regime outer bound with the same family structure (and coefficient
/// vectors) as [`achievable_region`].
pub fn outer_region(ob: &OuterParams, k: usize) -> Result<InequalitySystem> {
    check_k(ob.k(), k)?;
    let (alpha, beta, gamma) = (&ob.alpha, &ob.beta, &ob.gamma);
    let individual = ob.lambda.iter().map(|&v| vec![v]).collect();
    let adjacent = |m: usize, l: usize| {
        let last = beta[cyc(m, l as isize - 1, k)];
        let l = l as isize;
        [
            gamma[m] + cyc_sum(alpha, m, 1, l - 2) + last,
            ob.mu[m] + cyc_sum(alpha, m, 0, l - 2) + last,
        ]
    };
    let mut full = vec![alpha.iter().sum()];
    full.extend(ob.rho.iter().copied());
    let sum_plus_one = (0..k)
        .map(|i| beta[i] + gamma[i] + (0..k).filter(|&j| j != i).map(|j| alpha[j]).sum::<f64>())
        .collect();
    Ok(build(
        k,
        &Shape {
            individual,
            adjacent: &adjacent,
            full,
            sum_plus_one,
        },
    ))
}

/// Makes user `i`'s (0-based) message entirely private.
pub fn marginalize_split(ch: &ChannelInstance, split: &PowerSplit, i: usize) -> Result<PowerSplit> {
    let k = ch.k();
    if i >= k {
        return Err(Error::IndexOutOfRange { index: i, k });
    }
    let mut p = split.inr_private().to_vec();
    p[i] = ch.inr()[i];
    PowerSplit::new(ch, p)
}

/// Intersection of the K two-user MAC capacity regions seen at each
/// receiver, plus nonnegativity.
pub fn mac_intersection(ch: &ChannelInstance) -> InequalitySystem {
    let k = ch.k();
    let mut sys = InequalitySystem::rates(k);
    for i in 0..k {
        let next = cyc(i, 1, k);
        let snr = ch.snr()[i];
        let inr_next = ch.inr()[next];
        let p = RowParams::user(i + 1);
        push(&mut sys, unit(k, i, 1), (1.0 + snr).log2(), Family::Mac, p);
        push(
            &mut sys,
            unit(k, next, 1),
            (1.0 + inr_next).log2(),
            Family::Mac,
            p,
        );
        let mut c = unit(k, i, 1);
        c[next] += 1;
        push(&mut sys, c, (1.0 + snr + inr_next).log2(), Family::Mac, p);
    }
    for i in 0..k {
        push(
            &mut sys,
            unit(k, i, -1),
            0.0,
            Family::Nonneg,
            RowParams::user(i + 1),
        );
    }
    sys
}

/// Strong-regime capacity region: `R_i <= log2(1 + SNR_i)` and
/// `R_i + R_{i+1} <= log2(1 + SNR_i + INR_{i+1})`, plus nonnegativity.
pub fn strong_region(ch: &ChannelInstance) -> Result<InequalitySystem> {
    let regime = classify_regime(ch);
    if !regime.is_strong() {
        return Err(Error::WrongRegime {
            required: "strong",
            actual: regime,
        });
    }
    let k = ch.k();
    let mut sys = InequalitySystem::rates(k);
    for i in 0..k {
        let v = (1.0 + ch.snr()[i]).log2();
        push(
            &mut sys,
            unit(k, i, 1),
            v,
            Family::Individual,
            RowParams::user(i + 1),
        );
    }
    for i in 0..k {
        push(
            &mut sys,
            unit(k, i, -1),
            0.0,
            Family::Nonneg,
            RowParams::user(i + 1),
        );
    }
    for i in 0..k {
        let next = cyc(i, 1, k);
        let v = (1.0 + ch.snr()[i] + ch.inr()[next]).log2();
        push(
            &mut sys,
            window(k, i, 2),
            v,
            Family::AdjacentSum,
            RowParams::window(i + 1, 2),
        );
    }
    Ok(sys)
}

/// Very-strong-regime capacity region: the box `0 <= R_i <= log2(1 + SNR_i)`.
pub fn very_strong_region(ch: &ChannelInstance) -> Result<InequalitySystem> {
    let regime = classify_regime(ch);
    if regime != RegimeLabel::VeryStrong {
        return Err(Error::WrongRegime {
            required: "very strong",
            actual: regime,
        });
    }
    let k = ch.k();
    let mut sys = InequalitySystem::rates(k);
    for i in 0..k {
        let v = (1.0 + ch.snr()[i]).log2();
        push(
            &mut sys,
            unit(k, i, 1),
            v,
            Family::Box,
            RowParams::user(i + 1),
        );
    }
    for i in 0..k {
        push(
            &mut sys,
            unit(k, i, -1),
            0.0,
            Family::Nonneg,
            RowParams::user(i + 1),
        );
    }
    Ok(sys)
}

/// Per-family gap bounds used by a constant-gap argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapBounds {
    /// General K, ETW split: 2, 2l, 2K, 2(K+1).
    TwoBit,
    /// K = 3 time-sharing region: 1, 3, 3, 4.
    TimeSharing3,
    /// Inner and outer coincide (strong regime): all bounds zero.
    Exact,
}

/// Gap between matched achievable and outer families.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyGap {
    pub family: Family,
    pub params: RowParams,
    /// Number of rate terms, counting a doubled rate twice.
    pub l: i32,
    /// `min(outer rows) - min(inner rows)` in bits.
    pub delta: f64,
    pub bound: f64,
    /// Sharper bound `l + 1` the adjacent-window argument actually yields.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_bound: Option<f64>,
    pub pass: bool,
}

/// Matched-family deltas together with the LP-certified per-user gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub regime: RegimeLabel,
    pub bounds: GapBounds,
    pub families: Vec<FamilyGap>,
    pub certified_b: f64,
}

impl GapReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(|f| f.pass)
    }
}

const DELTA_TOL: f64 = 1e-9;

/// Groups both systems by coefficient vector and compares the tightest
/// right-hand side of each inner family with its outer counterpart.
pub fn match_families(
    inner: &InequalitySystem,
    outer: &InequalitySystem,
    bounds: GapBounds,
) -> Result<Vec<FamilyGap>> {
    if inner.vars != outer.vars {
        return Err(Error::DimensionMismatch {
            expected: inner.dim(),
            actual: outer.dim(),
        });
    }
    let k = inner.dim() as f64;
    let mut out = Vec::new();
    for coeffs in inner.families() {
        let first = inner
            .rows
            .iter()
            .find(|r| r.coeffs == coeffs)
            .expect("family exists");
        let inner_min = inner.min_rhs(coeffs).expect("family exists");
        let outer_min = outer
            .min_rhs(coeffs)
            .ok_or_else(|| Error::UnmatchedFamily(format!("{} {:?}", first.family, coeffs)))?;
        let l = first.weight();
        let lf = l as f64;
        let (bound, tight_bound) = match (bounds, first.family) {
            (GapBounds::Exact, _) => (0.0, None),
            (GapBounds::TwoBit, Family::Individual) => (2.0, None),
            (GapBounds::TwoBit, Family::AdjacentSum) => (2.0 * lf, Some(lf + 1.0)),
            (GapBounds::TwoBit, Family::FullSum) => (2.0 * k, None),
            (GapBounds::TwoBit, Family::SumPlusOne) => (2.0 * (k + 1.0), None),
            (GapBounds::TimeSharing3, Family::Individual) => (1.0, None),
            (GapBounds::TimeSharing3, Family::AdjacentSum) => (3.0, None),
            (GapBounds::TimeSharing3, Family::FullSum) => (3.0, None),
            (GapBounds::TimeSharing3, Family::SumPlusOne) => (4.0, None),
            (_, fam) => {
                return Err(Error::UnmatchedFamily(format!(
                    "no gap bound for family {fam}"
                )))
            }
        };
        let delta = outer_min - inner_min;
        out.push(FamilyGap {
            family: first.family,
            params: first.params,
            l,
            delta,
            bound,
            tight_bound,
            pass: delta <= bound + DELTA_TOL,
        });
    }
    Ok(out)
}

/// Family deltas of the achievable region against the outer bound.
pub fn family_gaps(hk: &HkParams, ob: &OuterParams, k: usize) -> Result<Vec<FamilyGap>> {
    match_families(
        &achievable_region(hk, k)?,
        &outer_region(ob, k)?,
        GapBounds::TwoBit,
    )
}

/// Family deltas of the three-user time-sharing region against the outer
/// bound.
pub fn ts_family_gaps(hk: &HkParams, ob: &OuterParams) -> Result<Vec<FamilyGap>> {
    match_families(
        &ts_region_3(hk)?,
        &outer_region(ob, 3)?,
        GapBounds::TimeSharing3,
    )
}

/// Which inner region a weak-regime gap report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerRegion {
    Achievable,
    TimeSharing3,
}

/// Full gap report for a channel: weak channels compare the chosen inner
/// region under `split` with the outer bound; strong channels compare the
/// capacity region with itself. Mixed channels have no outer bound here.
pub fn gap_report(
    ch: &ChannelInstance,
    split: &PowerSplit,
    inner: InnerRegion,
) -> Result<GapReport> {
    let regime = classify_regime(ch);
    let k = ch.k();
    match regime {
        RegimeLabel::Weak => {
            let hk = hk_params(ch, split)?;
            let ob = outer_params(ch);
            let outer = outer_region(&ob, k)?;
            let (inner_sys, bounds) = match inner {
                InnerRegion::Achievable => (achievable_region(&hk, k)?, GapBounds::TwoBit),
                InnerRegion::TimeSharing3 => (ts_region_3(&hk)?, GapBounds::TimeSharing3),
            };
            let families = match_families(&inner_sys, &outer, bounds)?;
            let certified_b = polyhedra::certified_gap(&inner_sys, &outer)?;
            Ok(GapReport {
                regime,
                bounds,
                families,
                certified_b,
            })
        }
        RegimeLabel::Strong | RegimeLabel::VeryStrong => {
            let cap = strong_region(ch)?;
            let families = match_families(&cap, &cap, GapBounds::Exact)?;
            let certified_b = polyhedra::certified_gap(&cap, &cap)?;
            Ok(GapReport {
                regime,
                bounds: GapBounds::Exact,
                families,
                certified_b,
            })
        }
        RegimeLabel::Mixed => Err(Error::WrongRegime {
            required: "weak or strong",
            actual: regime,
        }),
    }
}
