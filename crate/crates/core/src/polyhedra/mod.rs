//! LP-backed predicates on inequality systems: feasibility, inclusion,
//! equality, certified per-user gap, symmetric max-min rate and 2-D slices.

mod lp;
mod slice;

pub use lp::{maximize, LpResult, LpStatus, FEAS_TOL};
pub use slice::{slice_2d, Slice};

use crate::error::{Error, Result};
use crate::system::InequalitySystem;

/// Slack for inclusion and equality tests between regions.
pub const INCLUSION_TOL: f64 = 1e-7;
/// Slack for declaring a row redundant.
pub const REDUNDANCY_TOL: f64 = 1e-9;

fn row_view(sys: &InequalitySystem) -> Vec<(&[i32], f64)> {
    sys.rows
        .iter()
        .map(|r| (r.coeffs.as_slice(), r.rhs))
        .collect()
}

/// Maximizes `objective . x` over the system.
pub fn lp_max(sys: &InequalitySystem, objective: &[f64]) -> Result<LpResult> {
    if objective.len() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            actual: objective.len(),
        });
    }
    Ok(maximize(sys.dim(), &row_view(sys), objective))
}

/// True iff every row holds at `x` within [`FEAS_TOL`].
pub fn contains_point(sys: &InequalitySystem, x: &[f64]) -> Result<bool> {
    if x.len() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            actual: x.len(),
        });
    }
    Ok(sys.rows.iter().all(|r| r.eval(x) <= r.rhs + FEAS_TOL))
}

fn check_same_vars(a: &InequalitySystem, b: &InequalitySystem) -> Result<()> {
    if a.vars != b.vars {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(())
}

/// True iff `inner` is contained in `outer`: every row of `outer` is implied
/// by `inner` within [`INCLUSION_TOL`]. An empty `inner` is contained in
/// anything; an unbounded direction of `inner` against a row of `outer`
/// fails the test.
pub fn region_includes(outer: &InequalitySystem, inner: &InequalitySystem) -> Result<bool> {
    check_same_vars(outer, inner)?;
    let view = row_view(inner);
    for row in &outer.rows {
        let c: Vec<f64> = row.coeffs.iter().map(|&v| v as f64).collect();
        let res = maximize(inner.dim(), &view, &c);
        match res.status {
            LpStatus::Infeasible => return Ok(true),
            LpStatus::Unbounded => return Ok(false),
            LpStatus::Optimal => {
                if res.value > row.rhs + INCLUSION_TOL {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Two-way inclusion.
pub fn regions_equal(a: &InequalitySystem, b: &InequalitySystem) -> Result<bool> {
    Ok(region_includes(a, b)? && region_includes(b, a)?)
}

/// Smallest `b >= 0` such that every point of `outer`, lowered by `b` in
/// each coordinate (clamped at zero), lies in `inner`.
///
/// Computed row-wise: for each `inner` row `(c, v)` with positive
/// coefficient sum, `(max_{outer} c.x - v) / sum(c)`.
pub fn certified_gap(inner: &InequalitySystem, outer: &InequalitySystem) -> Result<f64> {
    check_same_vars(inner, outer)?;
    let view = row_view(outer);
    let mut gap: f64 = 0.0;
    for row in &inner.rows {
        let weight = row.weight();
        if weight <= 0 {
            continue;
        }
        let c: Vec<f64> = row.coeffs.iter().map(|&v| v as f64).collect();
        let res = maximize(outer.dim(), &view, &c);
        match res.status {
            LpStatus::Unbounded => return Err(Error::Unbounded),
            LpStatus::Infeasible => return Ok(0.0),
            LpStatus::Optimal => {
                gap = gap.max((res.value - row.rhs) / weight as f64);
            }
        }
    }
    Ok(gap)
}

/// Largest `t` with `(t, .., t)` feasible.
pub fn symmetric_max(sys: &InequalitySystem) -> Result<f64> {
    let mut hi = f64::INFINITY;
    let mut lo = f64::NEG_INFINITY;
    for r in &sys.rows {
        let w = r.weight() as f64;
        if w > 0.0 {
            hi = hi.min(r.rhs / w);
        } else if w < 0.0 {
            lo = lo.max(r.rhs / w);
        } else if r.rhs < -FEAS_TOL {
            return Err(Error::Infeasible);
        }
    }
    if hi == f64::INFINITY {
        return Err(Error::Unbounded);
    }
    if lo > hi + FEAS_TOL {
        return Err(Error::Infeasible);
    }
    Ok(hi)
}

/// True iff the row at `idx` is implied by the other rows.
pub fn row_is_redundant(sys: &InequalitySystem, idx: usize) -> bool {
    let others: Vec<(&[i32], f64)> = sys
        .rows
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != idx)
        .map(|(_, r)| (r.coeffs.as_slice(), r.rhs))
        .collect();
    redundant_against(sys.dim(), &others, &sys.rows[idx].coeffs, sys.rows[idx].rhs)
}

pub(crate) fn redundant_against(
    n: usize,
    others: &[(&[i32], f64)],
    coeffs: &[i32],
    rhs: f64,
) -> bool {
    let c: Vec<f64> = coeffs.iter().map(|&v| v as f64).collect();
    let res = maximize(n, others, &c);
    match res.status {
        LpStatus::Optimal => res.value <= rhs + REDUNDANCY_TOL,
        // Empty remainder: the row cannot cut anything off.
        LpStatus::Infeasible => true,
        LpStatus::Unbounded => false,
    }
}

/// Removes rows implied by the remaining ones, scanning in order. One pass
/// reaches a fixed point: dropping an implied row leaves the set unchanged,
/// so rows kept earlier stay necessary.
pub fn prune(sys: &InequalitySystem) -> InequalitySystem {
    let keep = irredundant_mask(sys.dim(), &row_view(sys));
    InequalitySystem {
        vars: sys.vars.clone(),
        rows: sys
            .rows
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(r, _)| r.clone())
            .collect(),
    }
}

pub(crate) fn irredundant_mask(n: usize, rows: &[(&[i32], f64)]) -> Vec<bool> {
    let mut keep = vec![true; rows.len()];
    for idx in 0..rows.len() {
        let others: Vec<(&[i32], f64)> = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx && keep[j])
            .map(|(_, r)| *r)
            .collect();
        if redundant_against(n, &others, rows[idx].0, rows[idx].1) {
            keep[idx] = false;
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Family, Row, RowParams};

    fn boxed(k: usize, hi: f64) -> InequalitySystem {
        let mut s = InequalitySystem::rates(k);
        for i in 0..k {
            let mut c = vec![0; k];
            c[i] = 1;
            s.push(Row {
                coeffs: c.clone(),
                rhs: hi,
                family: Family::Individual,
                params: RowParams::user(i + 1),
            })
            .unwrap();
            c[i] = -1;
            s.push(Row {
                coeffs: c,
                rhs: 0.0,
                family: Family::Nonneg,
                params: RowParams::user(i + 1),
            })
            .unwrap();
        }
        s
    }

    #[test]
    fn box_lp() {
        let s = boxed(2, 4.0);
        let res = lp_max(&s, &[1.0, 1.0]).unwrap();
        assert!((res.value - 8.0).abs() < 1e-12);
        assert!(lp_max(&s, &[1.0]).is_err());
        let empty = InequalitySystem::rates(2);
        assert_eq!(
            lp_max(&empty, &[1.0, 0.0]).unwrap().status,
            LpStatus::Unbounded
        );
    }

    #[test]
    fn inclusion_on_boxes() {
        let big = boxed(2, 1.0);
        let small = boxed(2, 0.5);
        assert!(region_includes(&big, &small).unwrap());
        assert!(!region_includes(&small, &big).unwrap());
        assert!(regions_equal(&big, &big).unwrap());
        assert!(!region_includes(&big, &InequalitySystem::rates(2)).unwrap());
    }

    #[test]
    fn gap_on_boxes() {
        let big = boxed(3, 2.0);
        let small = boxed(3, 0.5);
        assert!((certified_gap(&small, &big).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(certified_gap(&big, &big).unwrap(), 0.0);
        assert_eq!(
            certified_gap(&small, &InequalitySystem::rates(3)),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn symmetric_max_box() {
        assert_eq!(symmetric_max(&boxed(2, 4.0)).unwrap(), 4.0);
        assert_eq!(
            symmetric_max(&InequalitySystem::rates(2)),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn prune_drops_loose_and_duplicate_rows() {
        let mut s = InequalitySystem::rates(1);
        for rhs in [3.0, 4.0, 3.0] {
            s.rows.push(Row {
                coeffs: vec![1],
                rhs,
                family: Family::Individual,
                params: RowParams::none(),
            });
        }
        let p = prune(&s);
        assert_eq!(p.len(), 1);
        assert_eq!(p.rows[0].rhs, 3.0);
        assert!(row_is_redundant(&s, 1));
    }

    #[test]
    fn contains() {
        let s = boxed(2, 1.0);
        assert!(contains_point(&s, &[0.0, 0.0]).unwrap());
        assert!(contains_point(&s, &[1.0 + 1e-10, 0.5]).unwrap());
        assert!(!contains_point(&s, &[2.0, 0.0]).unwrap());
        assert!(contains_point(&s, &[1.0]).is_err());
    }
}
