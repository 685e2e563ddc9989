use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::{FusionCategory, Label};
use crate::half_braiding::braiding_hexagon_residual;
use crate::hom::{max_abs, Calculus};
use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct FBlockDefect {
    pub labels: [usize; 4],
    pub unitarity_defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub ring_failures: Vec<String>,
    pub pentagon_residual: f64,
    /// Blocks sorted by label tuple.
    pub f_unitarity: Vec<FBlockDefect>,
    pub max_unitarity_defect: f64,
    /// F-blocks with a unit leg must be the identity.
    pub unit_leg_residual: f64,
    pub qdim_pf_deviation: f64,
    pub qdim_unit_dual_deviation: f64,
    /// Present iff R-symbols are supplied and the fusion ring is consistent.
    pub hexagon_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Evaluates every axiom; never fails.
pub fn validate(data: &FusionCategory) -> ValidationReport {
    let tol = data.tolerance;
    let ring_failures = data.ring.axiom_failures();
    let ring_ok = ring_failures.is_empty();

    let mut f_unitarity: Vec<FBlockDefect> = data
        .f_blocks()
        .map(|(abcd, blk)| {
            let m = &blk.matrix;
            let defect = if m.nrows() != m.ncols() {
                f64::INFINITY
            } else {
                let id = DMatrix::<C64>::identity(m.nrows(), m.ncols());
                max_abs(&(m.adjoint() * m - &id)).max(max_abs(&(m * m.adjoint() - &id)))
            };
            FBlockDefect { labels: abcd.map(|l| l.0), unitarity_defect: defect }
        })
        .collect();
    f_unitarity.sort_by_key(|d| d.labels);
    let max_unitarity_defect = f_unitarity.iter().map(|d| d.unitarity_defect).fold(0.0, f64::max);

    let mut unit_leg_residual: f64 = 0.0;
    for (abcd, blk) in data.f_blocks() {
        if !abcd[..3].iter().any(|l| l.is_unit()) {
            continue;
        }
        let m = &blk.matrix;
        if m.nrows() != m.ncols() {
            unit_leg_residual = f64::INFINITY;
            continue;
        }
        let id = DMatrix::<C64>::identity(m.nrows(), m.ncols());
        unit_leg_residual = unit_leg_residual.max(max_abs(&(m - id)));
    }

    let pentagon_residual = if ring_ok { pentagon(data) } else { f64::INFINITY };

    let mut qdim_pf_deviation: f64 = 0.0;
    for a in data.labels() {
        let n = data.ring.fusion_matrix(a);
        let g = &n * n.transpose();
        let top = SymmetricEigen::new(g).eigenvalues.iter().copied().fold(0.0, f64::max);
        qdim_pf_deviation = qdim_pf_deviation.max((top.sqrt() - data.qdim(a)).abs());
    }
    let mut qdim_unit_dual_deviation = (data.qdim(Label::UNIT) - 1.0).abs();
    for a in data.labels() {
        let d = (data.qdim(a) - data.qdim(data.dual(a))).abs();
        qdim_unit_dual_deviation = qdim_unit_dual_deviation.max(d);
        if data.qdim(a) <= 0.0 {
            qdim_unit_dual_deviation = f64::INFINITY;
        }
    }

    let hexagon_residual = if data.has_braiding() && ring_ok {
        let calc = Calculus::new(Arc::new(data.clone()));
        Some(braiding_hexagon_residual(&calc).unwrap_or(f64::INFINITY))
    } else {
        None
    };

    let pass = ring_ok
        && pentagon_residual < tol
        && max_unitarity_defect < tol
        && unit_leg_residual < tol
        && qdim_pf_deviation < tol
        && qdim_unit_dual_deviation < tol
        && hexagon_residual.is_none_or(|h| h < tol);

    ValidationReport {
        ring_failures,
        pentagon_residual,
        f_unitarity,
        max_unitarity_defect,
        unit_leg_residual,
        qdim_pf_deviation,
        qdim_unit_dual_deviation,
        hexagon_residual,
        tolerance: tol,
        pass,
    }
}

/// Largest defect of the multiplicity-aware pentagon over all admissible
/// label and vertex tuples.
fn pentagon(data: &FusionCategory) -> f64 {
    let n = |x: Label, y: Label, z: Label| data.mult(x, y, z);
    let f = |a, b, c, d, row, col| data.f_symbol(a, b, c, d, row, col);
    let labels: Vec<Label> = data.labels().collect();
    let mut worst: f64 = 0.0;
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for &d in &labels {
                    for &e in &labels {
                        for &ff in &labels {
                            for &g in &labels {
                                for &k in &labels {
                                    for &l in &labels {
                                        let dims =
                                            [n(a, b, ff), n(ff, c, g), n(g, d, e), n(c, d, l), n(b, l, k), n(a, k, e)];
                                        if dims.contains(&0) {
                                            continue;
                                        }
                                        for m1 in 0..dims[0] {
                                            for m2 in 0..dims[1] {
                                                for m3 in 0..dims[2] {
                                                    for v1 in 0..dims[3] {
                                                        for v3 in 0..dims[4] {
                                                            for v4 in 0..dims[5] {
                                                                let mut lhs = C64::new(0.0, 0.0);
                                                                for v2 in 0..n(ff, l, e) {
                                                                    lhs += f(ff, c, d, e, (g, m2, m3), (l, v1, v2))
                                                                        * f(a, b, l, e, (ff, m1, v2), (k, v3, v4));
                                                                }
                                                                let mut rhs = C64::new(0.0, 0.0);
                                                                for &h in &labels {
                                                                    for k1 in 0..n(b, c, h) {
                                                                        for k2 in 0..n(a, h, g) {
                                                                            for k3 in 0..n(h, d, k) {
                                                                                rhs += f(
                                                                                    a,
                                                                                    b,
                                                                                    c,
                                                                                    g,
                                                                                    (ff, m1, m2),
                                                                                    (h, k1, k2),
                                                                                ) * f(
                                                                                    a,
                                                                                    h,
                                                                                    d,
                                                                                    e,
                                                                                    (g, k2, m3),
                                                                                    (k, k3, v4),
                                                                                ) * f(
                                                                                    b,
                                                                                    c,
                                                                                    d,
                                                                                    k,
                                                                                    (h, k1, k3),
                                                                                    (l, v1, v3),
                                                                                );
                                                                            }
                                                                        }
                                                                    }
                                                                }
                                                                worst = worst.max((lhs - rhs).norm());
                                                            }
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}
