use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::InequalitySystem;

use super::FEAS_TOL;

/// Half-width of the starting square; slices are clipped out of it.
const FRAME: f64 = 1e6;

/// Cross-section of a region in two coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slice {
    /// Counterclockwise vertices, no repeated closing vertex.
    pub vertices: Vec<[f64; 2]>,
    /// False when the fixed coordinates leave nothing feasible.
    pub feasible: bool,
}

/// Intersects the half-planes obtained by fixing every coordinate other than
/// `i` and `j` (0-based). `fixed` lists the remaining coordinates in
/// increasing index order.
pub fn slice_2d(sys: &InequalitySystem, i: usize, j: usize, fixed: &[f64]) -> Result<Slice> {
    let n = sys.dim();
    if i >= n || j >= n || i == j {
        return Err(Error::InvalidParameter(format!(
            "slice axes ({i}, {j}) invalid for {n} variables"
        )));
    }
    if fixed.len() != n - 2 {
        return Err(Error::DimensionMismatch {
            expected: n - 2,
            actual: fixed.len(),
        });
    }
    let mut point = vec![0.0; n];
    let mut it = fixed.iter();
    for (t, slot) in point.iter_mut().enumerate() {
        if t != i && t != j {
            *slot = *it.next().expect("length checked");
        }
    }

    let mut poly = vec![
        [-FRAME, -FRAME],
        [FRAME, -FRAME],
        [FRAME, FRAME],
        [-FRAME, FRAME],
    ];
    for row in &sys.rows {
        let a = row.coeffs[i] as f64;
        let b = row.coeffs[j] as f64;
        let rest: f64 = (0..n)
            .filter(|&t| t != i && t != j)
            .map(|t| row.coeffs[t] as f64 * point[t])
            .sum();
        let c = row.rhs - rest;
        if a == 0.0 && b == 0.0 {
            if c < -FEAS_TOL {
                return Ok(Slice {
                    vertices: Vec::new(),
                    feasible: false,
                });
            }
            continue;
        }
        poly = clip(&poly, a, b, c);
        if poly.is_empty() {
            return Ok(Slice {
                vertices: Vec::new(),
                feasible: false,
            });
        }
    }
    let vertices = dedup(poly);
    let feasible = !vertices.is_empty();
    Ok(Slice { vertices, feasible })
}

/// Sutherland-Hodgman step against `a x + b y <= c`.
fn clip(poly: &[[f64; 2]], a: f64, b: f64, c: f64) -> Vec<[f64; 2]> {
    let side = |p: &[f64; 2]| a * p[0] + b * p[1] - c;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for k in 0..poly.len() {
        let p = poly[k];
        let q = poly[(k + 1) % poly.len()];
        let sp = side(&p);
        let sq = side(&q);
        let p_in = sp <= FEAS_TOL;
        let q_in = sq <= FEAS_TOL;
        if p_in {
            out.push(p);
        }
        if p_in != q_in {
            let t = sp / (sp - sq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn dedup(poly: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    let close =
        |p: &[f64; 2], q: &[f64; 2]| (p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9;
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(poly.len());
    for p in poly {
        if out.last().is_none_or(|q| !close(&p, q)) {
            out.push(p);
        }
    }
    while out.len() > 1 && close(&out[0], out.last().unwrap()) {
        out.pop();
    }
    // Drop collinear middle points.
    let mut changed = true;
    while changed && out.len() > 2 {
        changed = false;
        for k in 0..out.len() {
            let p = out[(k + out.len() - 1) % out.len()];
            let q = out[k];
            let r = out[(k + 1) % out.len()];
            let cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
            if cross.abs() < 1e-12 {
                out.remove(k);
                changed = true;
                break;
            }
        }
    }
    out
}
