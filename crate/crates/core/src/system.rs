//! Labeled linear inequality systems `A x <= b` over named variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constraint family a row belongs to. Rows of one family share a
/// coefficient vector and differ only in which branch of a `min` they encode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Individual,
    Nonneg,
    AdjacentSum,
    FullSum,
    SumPlusOne,
    Mac,
    Box,
    /// A projected row that fits none of the families above.
    Other,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Individual => "individual",
            Family::Nonneg => "nonneg",
            Family::AdjacentSum => "adjacent_sum",
            Family::FullSum => "full_sum",
            Family::SumPlusOne => "sum_plus_one",
            Family::Mac => "mac",
            Family::Box => "box",
            Family::Other => "other",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Optional 1-based labels identifying a row within its family: `m` is the
/// first user of an adjacent window, `l` its length, `i` a user index.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
}

impl RowParams {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn user(i: usize) -> Self {
        RowParams {
            i: Some(i),
            ..Self::default()
        }
    }

    pub fn window(m: usize, l: usize) -> Self {
        RowParams {
            m: Some(m),
            l: Some(l),
            i: None,
        }
    }
}

/// One inequality `coeffs . x <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<i32>,
    pub rhs: f64,
    pub family: Family,
    #[serde(default)]
    pub params: RowParams,
}

impl Row {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(&c, &v)| c as f64 * v).sum()
    }

    /// Sum of coefficients; for rate rows this is the number of rate terms.
    pub fn weight(&self) -> i32 {
        self.coeffs.iter().sum()
    }
}

/// A polyhedron given by explicit rows. Nonnegativity rows are ordinary rows.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub vars: Vec<String>,
    pub rows: Vec<Row>,
}

impl InequalitySystem {
    pub fn new(vars: Vec<String>) -> Self {
        InequalitySystem {
            vars,
            rows: Vec::new(),
        }
    }

    /// Variables `R_1 .. R_k`.
    pub fn rates(k: usize) -> Self {
        Self::new((1..=k).map(|i| format!("R_{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Appends a row unless an identical `(coeffs, rhs)` row is present.
    pub fn push(&mut self, row: Row) -> Result<()> {
        if row.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: row.coeffs.len(),
            });
        }
        let dup = self
            .rows
            .iter()
            .any(|r| r.coeffs == row.coeffs && r.rhs.to_bits() == row.rhs.to_bits());
        if !dup {
            self.rows.push(row);
        }
        Ok(())
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Distinct coefficient vectors, in first-appearance order, excluding
    /// nonnegativity rows.
    pub fn families(&self) -> Vec<&[i32]> {
        let mut out: Vec<&[i32]> = Vec::new();
        for r in &self.rows {
            if r.family == Family::Nonneg {
                continue;
            }
            if !out.contains(&r.coeffs.as_slice()) {
                out.push(&r.coeffs);
            }
        }
        out
    }

    /// Tightest right-hand side among rows with exactly these coefficients.
    pub fn min_rhs(&self, coeffs: &[i32]) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.coeffs == coeffs)
            .map(|r| r.rhs)
            .reduce(f64::min)
    }

    /// Applies the cyclic relabeling `x_j -> x_{j+1}` to every row.
    pub fn cyclic_shift(&self) -> Self {
        let n = self.dim();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut coeffs = vec![0; n];
                for (j, &c) in r.coeffs.iter().enumerate() {
                    coeffs[(j + 1) % n] = c;
                }
                Row {
                    coeffs,
                    ..r.clone()
                }
            })
            .collect();
        InequalitySystem {
            vars: self.vars.clone(),
            rows,
        }
    }
}

/// Assigns a rate-only coefficient vector to a family with its 1-based
/// params, or `Family::Other` when it matches none.
pub fn classify_rates(coeffs: &[i32]) -> (Family, RowParams) {
    let k = coeffs.len();
    let nonzero: Vec<usize> = (0..k).filter(|&j| coeffs[j] != 0).collect();
    if nonzero.len() == 1 {
        let j = nonzero[0];
        match coeffs[j] {
            1 => return (Family::Individual, RowParams::user(j + 1)),
            -1 => return (Family::Nonneg, RowParams::user(j + 1)),
            _ => return (Family::Other, RowParams::none()),
        }
    }
    if coeffs.iter().all(|&c| c == 1) {
        return (Family::FullSum, RowParams::none());
    }
    let twos: Vec<usize> = (0..k).filter(|&j| coeffs[j] == 2).collect();
    if twos.len() == 1 && coeffs.iter().all(|&c| c == 1 || c == 2) {
        return (Family::SumPlusOne, RowParams::user(twos[0] + 1));
    }
    if coeffs.iter().all(|&c| c == 0 || c == 1) && !nonzero.is_empty() {
        // A cyclic window of ones starts where the previous entry is zero.
        let l = nonzero.len();
        let starts: Vec<usize> = (0..k)
            .filter(|&j| coeffs[j] == 1 && coeffs[(j + k - 1) % k] == 0)
            .collect();
        if starts.len() == 1 {
            let m = starts[0];
            if (0..l).all(|t| coeffs[(m + t) % k] == 1) {
                return (Family::AdjacentSum, RowParams::window(m + 1, l));
            }
        }
    }
    (Family::Other, RowParams::none())
}
