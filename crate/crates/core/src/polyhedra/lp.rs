//! Dense two-phase simplex with Bland's rule.
//!
//! Solves `max c.x  s.t.  A x <= b` with every `x_j` free. Free variables are
//! split as `x = u - w` with `u, w >= 0`; rows with negative right-hand side
//! get an artificial variable for phase one. Pivoting is fully deterministic.

// Tableau loops index several arrays in lockstep.
#![allow(clippy::needless_range_loop)]

use serde::Serialize;

/// Feasibility slack used for witness checks.
pub const FEAS_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of a maximization. `witness` and `dual` are empty unless optimal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: f64,
    pub witness: Vec<f64>,
    /// Row multipliers `y >= 0` with `A^T y = c` and `b . y = value`.
    pub dual: Vec<f64>,
}

impl LpResult {
    fn status_only(status: LpStatus) -> Self {
        let value = match status {
            LpStatus::Unbounded => f64::INFINITY,
            _ => f64::NEG_INFINITY,
        };
        LpResult {
            status,
            value,
            witness: Vec::new(),
            dual: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

struct Tableau {
    /// `rows x (cols + 1)`, last column is the right-hand side.
    t: Vec<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
    /// Reduced costs `c_j - z_j`, plus the negated objective value at `cols`.
    cost: Vec<f64>,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * (self.cols + 1) + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.cols + 1;
        let inv = 1.0 / self.t[pr * w + pc];
        for c in 0..w {
            self.t[pr * w + c] *= inv;
        }
        self.t[pr * w + pc] = 1.0;
        let (before, rest) = self.t.split_at_mut(pr * w);
        let (prow, after) = rest.split_at_mut(w);
        for chunk in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = chunk[pc];
            if f != 0.0 {
                for c in 0..w {
                    chunk[c] -= f * prow[c];
                }
                chunk[pc] = 0.0;
            }
        }
        let f = self.cost[pc];
        if f != 0.0 {
            for c in 0..w {
                self.cost[c] -= f * prow[c];
            }
            self.cost[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Runs Bland-rule pivots on the current cost row. Returns `false` when
    /// the objective is unbounded.
    fn optimize(&mut self) -> bool {
        for _ in 0..MAX_PIVOTS {
            let Some(pc) = (0..self.cols).find(|&c| self.allowed[c] && self.cost[c] > COST_TOL)
            else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a > PIVOT_TOL {
                    let ratio = self.at(r, self.cols) / a;
                    best = match best {
                        None => Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < bratio - 1e-12
                                || (ratio <= bratio + 1e-12 && self.basis[r] < self.basis[br])
                            {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        }
                    }
                }
            }
            match best {
                None => return false,
                Some((pr, _)) => self.pivot(pr, pc),
            }
        }
        // Bland's rule cannot cycle; hitting the cap means numerical trouble.
        true
    }
}

/// Maximizes `objective . x` subject to `coeffs_i . x <= rhs_i` for each row.
pub fn maximize(n: usize, rows: &[(&[i32], f64)], objective: &[f64]) -> LpResult {
    debug_assert_eq!(objective.len(), n);
    let m = rows.len();
    let flipped: Vec<bool> = rows.iter().map(|&(_, b)| b < 0.0).collect();
    let n_art = flipped.iter().filter(|&&f| f).count();
    // Columns: u (n), w (n), slacks (m), artificials (n_art).
    let cols = 2 * n + m + n_art;
    let w = cols + 1;
    let mut t = vec![0.0; m * w];
    let mut basis = vec![0; m];
    let mut art = 2 * n + m;
    for (r, &(coeffs, b)) in rows.iter().enumerate() {
        let sign = if flipped[r] { -1.0 } else { 1.0 };
        let row = &mut t[r * w..(r + 1) * w];
        for (j, &c) in coeffs.iter().enumerate() {
            row[j] = sign * c as f64;
            row[n + j] = -sign * c as f64;
        }
        row[2 * n + r] = sign;
        row[cols] = sign * b;
        if flipped[r] {
            row[art] = 1.0;
            basis[r] = art;
            art += 1;
        } else {
            basis[r] = 2 * n + r;
        }
    }
    let mut tab = Tableau {
        t,
        rows: m,
        cols,
        basis,
        cost: vec![0.0; w],
        allowed: vec![true; cols],
    };

    if n_art > 0 {
        // Phase one: maximize -sum(artificials).
        for r in 0..m {
            if flipped[r] {
                for c in 0..w {
                    tab.cost[c] += tab.t[r * w + c];
                }
            }
        }
        for c in 2 * n + m..cols {
            tab.cost[c] = 0.0;
        }
        tab.optimize();
        if tab.cost[cols] > FEAS_TOL {
            return LpResult::status_only(LpStatus::Infeasible);
        }
        // Drive basic artificials out where possible.
        for r in 0..m {
            if tab.basis[r] >= 2 * n + m {
                if let Some(pc) = (0..2 * n + m).find(|&c| tab.at(r, c).abs() > 1e-9) {
                    tab.pivot(r, pc);
                }
            }
        }
        for c in 2 * n + m..cols {
            tab.allowed[c] = false;
        }
    }

    // Phase two cost row: c_j - c_B B^-1 A_j.
    let mut cost = vec![0.0; w];
    for j in 0..n {
        cost[j] = objective[j];
        cost[n + j] = -objective[j];
    }
    for r in 0..m {
        let bj = tab.basis[r];
        let cb = if bj < n {
            objective[bj]
        } else if bj < 2 * n {
            -objective[bj - n]
        } else {
            0.0
        };
        if cb != 0.0 {
            for c in 0..w {
                cost[c] -= cb * tab.t[r * w + c];
            }
        }
    }
    tab.cost = cost;
    if !tab.optimize() {
        return LpResult::status_only(LpStatus::Unbounded);
    }

    let mut witness = vec![0.0; n];
    for r in 0..m {
        let bj = tab.basis[r];
        let v = tab.at(r, cols);
        if bj < n {
            witness[bj] += v;
        } else if bj < 2 * n {
            witness[bj - n] -= v;
        }
    }
    let dual: Vec<f64> = (0..m).map(|r| (-tab.cost[2 * n + r]).max(0.0)).collect();
    let value = objective.iter().zip(&witness).map(|(c, x)| c * x).sum();
    LpResult {
        status: LpStatus::Optimal,
        value,
        witness,
        dual,
    }
}
