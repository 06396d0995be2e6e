//! Fourier-Motzkin oracle for the achievable region.
//!
//! Starts from the per-receiver polymatroid constraints on private rates
//! `S_i` and common rates `T_i`, substitutes `S_i = R_i - T_i`, and projects
//! out `T_1 .. T_K` one at a time, pruning implied rows after each step.
//! The result is an independent derivation of the closed-form region built
//! by [`crate::regions::achievable_region`].

use std::collections::BTreeMap;

use crate::channel::{cyc, HkParams};
use crate::error::{Error, Result};
use crate::polyhedra::irredundant_mask;
use crate::system::{classify_rates, InequalitySystem, Row};

/// Coefficient magnitude that no projected row of this family may exceed.
pub const COEFF_TRIPWIRE: i32 = 4;

/// A row of an intermediate system together with the polymatroid rows it
/// was combined from.
#[derive(Debug, Clone, PartialEq)]
pub struct FmRow {
    pub coeffs: Vec<i32>,
    pub rhs: f64,
    /// Sorted indices into the original polymatroid system.
    pub origins: Vec<u32>,
}

/// Inequality system over rate and common-rate variables.
#[derive(Debug, Clone, PartialEq)]
pub struct FmSystem {
    pub vars: Vec<String>,
    pub rows: Vec<FmRow>,
}

impl FmSystem {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn view(&self) -> Vec<(&[i32], f64)> {
        self.rows
            .iter()
            .map(|r| (r.coeffs.as_slice(), r.rhs))
            .collect()
    }

    /// Largest absolute coefficient.
    pub fn max_coeff(&self) -> i32 {
        self.rows
            .iter()
            .flat_map(|r| r.coeffs.iter())
            .map(|c| c.abs())
            .max()
            .unwrap_or(0)
    }

    /// Sorts rows by `(coeffs, rhs)` so output is independent of the order
    /// in which pairs were combined.
    fn canonicalize(&mut self) {
        self.rows.sort_by(|x, y| {
            x.coeffs
                .cmp(&y.coeffs)
                .then(x.rhs.total_cmp(&y.rhs))
                .then(x.origins.cmp(&y.origins))
        });
    }

    /// True iff every row holds at `x` within `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| {
            let lhs: f64 = r.coeffs.iter().zip(x).map(|(&c, &v)| c as f64 * v).sum();
            lhs <= r.rhs + tol
        })
    }
}

/// Polymatroid constraints after substituting `S_i = R_i - T_i`.
///
/// Variables are `R_1..R_K, T_1..T_K`. Per user `i`:
/// `R_i - T_i <= a_i`, `R_i <= d_i`, `R_i - T_i + T_{i+1} <= e_i`,
/// `R_i + T_{i+1} <= g_i`, `T_i - R_i <= 0`, `-T_i <= 0`, `-R_i <= 0`.
pub fn polymatroid_system(hk: &HkParams, k: usize) -> Result<FmSystem> {
    if k < 2 {
        return Err(Error::TooFewUsers(k));
    }
    if hk.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: hk.k(),
        });
    }
    let mut vars: Vec<String> = (1..=k).map(|i| format!("R_{i}")).collect();
    vars.extend((1..=k).map(|i| format!("T_{i}")));
    let n = 2 * k;
    let mut rows = Vec::with_capacity(7 * k);
    let mut add = |terms: &[(usize, i32)], rhs: f64| {
        let mut coeffs = vec![0; n];
        for &(j, c) in terms {
            coeffs[j] += c;
        }
        let id = rows.len() as u32;
        rows.push(FmRow {
            coeffs,
            rhs,
            origins: vec![id],
        });
    };
    for i in 0..k {
        let r = i;
        let t = k + i;
        let t_next = k + cyc(i, 1, k);
        add(&[(r, 1), (t, -1)], hk.a[i]);
        add(&[(r, 1)], hk.d[i]);
        add(&[(r, 1), (t, -1), (t_next, 1)], hk.e[i]);
        add(&[(r, 1), (t_next, 1)], hk.g[i]);
        add(&[(r, -1), (t, 1)], 0.0);
        add(&[(t, -1)], 0.0);
        add(&[(r, -1)], 0.0);
    }
    Ok(FmSystem { vars, rows })
}

fn gcd(a: i32, b: i32) -> i32 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn merge_origins(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// One Fourier-Motzkin step: removes `var` by combining every row with a
/// positive coefficient on it with every row with a negative one.
///
/// Combined rows are scaled to integer coefficients and divided by their
/// gcd. Rows that become `0 <= c` with `c >= 0` are dropped. The variable is
/// removed from the variable list.
pub fn eliminate_variable(sys: &FmSystem, var: &str) -> Result<FmSystem> {
    let v = sys.var_index(var)?;
    let mut kept: Vec<FmRow> = Vec::new();
    let mut pos: Vec<&FmRow> = Vec::new();
    let mut neg: Vec<&FmRow> = Vec::new();
    for r in &sys.rows {
        match r.coeffs[v].signum() {
            0 => kept.push(r.clone()),
            1 => pos.push(r),
            _ => neg.push(r),
        }
    }
    for p in &pos {
        for q in &neg {
            let cp = p.coeffs[v];
            let cq = -q.coeffs[v];
            let mut coeffs: Vec<i32> = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(&x, &y)| cq * x + cp * y)
                .collect();
            let mut rhs = cq as f64 * p.rhs + cp as f64 * q.rhs;
            let div = coeffs.iter().fold(0, |acc, &c| gcd(acc, c));
            if div > 1 {
                for c in &mut coeffs {
                    *c /= div;
                }
                rhs /= div as f64;
            }
            kept.push(FmRow {
                coeffs,
                rhs,
                origins: merge_origins(&p.origins, &q.origins),
            });
        }
    }
    let mut rows: Vec<FmRow> = Vec::with_capacity(kept.len());
    for mut r in kept {
        r.coeffs.remove(v);
        rows.push(r);
    }
    let mut vars = sys.vars.clone();
    vars.remove(v);
    let mut trimmed = Vec::with_capacity(rows.len());
    for r in rows {
        if r.coeffs.iter().all(|&c| c == 0) {
            if r.rhs < -1e-9 {
                return Err(Error::Infeasible);
            }
        } else {
            trimmed.push(r);
        }
    }
    let mut out = FmSystem {
        vars,
        rows: trimmed,
    };
    out.canonicalize();
    Ok(out)
}

/// Keeps the tightest row per coefficient vector.
fn collapse(sys: FmSystem) -> FmSystem {
    let mut best: BTreeMap<Vec<i32>, FmRow> = BTreeMap::new();
    for r in sys.rows {
        match best.get_mut(&r.coeffs) {
            Some(cur) if cur.rhs <= r.rhs => {}
            Some(cur) => *cur = r,
            None => {
                best.insert(r.coeffs.clone(), r);
            }
        }
    }
    FmSystem {
        vars: sys.vars,
        rows: best.into_values().collect(),
    }
}

/// Removes every row whose bound is implied by the remaining rows
/// (LP optimum within `1e-9` of its right-hand side). Rows whose LP is
/// unbounded are kept.
pub fn remove_redundant(sys: &FmSystem) -> FmSystem {
    let keep = irredundant_mask(sys.dim(), &sys.view());
    let rows = sys
        .rows
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r.clone())
        .collect();
    let mut out = FmSystem {
        vars: sys.vars.clone(),
        rows,
    };
    out.canonicalize();
    out
}

/// Projects the polymatroid system onto the rates, eliminating `T_i` in the
/// given 0-based order.
pub fn project_in_order(hk: &HkParams, k: usize, order: &[usize]) -> Result<FmSystem> {
    let mut sys = polymatroid_system(hk, k)?;
    for &t in order {
        if t >= k {
            return Err(Error::IndexOutOfRange { index: t, k });
        }
        sys = collapse(eliminate_variable(&sys, &format!("T_{}", t + 1))?);
        sys = remove_redundant(&sys);
        let big = sys.max_coeff();
        assert!(
            big <= COEFF_TRIPWIRE,
            "projected coefficient magnitude {big} exceeds {COEFF_TRIPWIRE}"
        );
    }
    Ok(sys)
}

/// Eliminates `T_1, .., T_K` in order and returns the system over the
/// rates, each row tagged with the family its coefficient vector matches.
pub fn project_to_rates(hk: &HkParams, k: usize) -> Result<InequalitySystem> {
    let order: Vec<usize> = (0..k).collect();
    let fm = project_in_order(hk, k, &order)?;
    Ok(to_rate_system(&fm))
}

/// Converts a fully projected system to a tagged rate system.
pub fn to_rate_system(fm: &FmSystem) -> InequalitySystem {
    let mut out = InequalitySystem::new(fm.vars.clone());
    for r in &fm.rows {
        let (family, params) = classify_rates(&r.coeffs);
        out.rows.push(Row {
            coeffs: r.coeffs.clone(),
            rhs: r.rhs,
            family,
            params,
        });
    }
    // Family order first, then the window/user labels.
    out.rows.sort_by(|x, y| {
        x.family
            .cmp(&y.family)
            .then(x.params.l.cmp(&y.params.l))
            .then(x.params.m.cmp(&y.params.m))
            .then(x.params.i.cmp(&y.params.i))
            .then(y.coeffs.cmp(&x.coeffs))
    });
    out
}
