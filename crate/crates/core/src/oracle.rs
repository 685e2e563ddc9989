//! Direct solution of the half-braiding equations, independent of the tube
//! algebra: unitarity and the braiding-fusion equation are minimized by
//! Levenberg–Marquardt from seeded random starts, and solutions are
//! deduplicated up to unitary equivalence.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_data::Label;
use crate::half_braiding::{self, HalfBraiding};
use crate::hom::{Calculus, TensorWord};
use crate::linalg::{nearest_unitary, unitarity_defect};
use crate::{c, C64};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OracleConfig {
    pub starts: usize,
    pub max_iterations: usize,
    /// Largest admissible `Σ n_λ d(λ)`.
    pub max_dim: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { starts: 24, max_iterations: 200, max_dim: 4.0, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StartReport {
    pub start: usize,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Pairwise inequivalent irreducible solutions.
    pub solutions: Vec<HalfBraiding>,
    pub starts: Vec<StartReport>,
}

/// Free entries of `E(β)` for `β ≠ id`: root-matched positions of every
/// component morphism.
struct Layout {
    template: HalfBraiding,
    slots: Vec<(usize, usize, usize, (usize, usize))>,
}

impl Layout {
    fn new(calc: &Calculus, betas: &[Label], components: &[Label]) -> Layout {
        let mut e = Vec::new();
        let mut slots = Vec::new();
        for (bi, &b) in betas.iter().enumerate() {
            let mut rows = Vec::new();
            for (a, &la) in components.iter().enumerate() {
                let mut row = Vec::new();
                for (bb, &lb) in components.iter().enumerate() {
                    let src = TensorWord(vec![la, b]);
                    let tgt = TensorWord(vec![b, lb]);
                    let mut m = calc.zero(&src, &tgt);
                    let sb = calc.basis(&src);
                    let tb = calc.basis(&tgt);
                    for i in 0..tb.len() {
                        for j in 0..sb.len() {
                            if tb.root_of(i) != sb.root_of(j) {
                                continue;
                            }
                            if b.is_unit() {
                                if a == bb {
                                    m.matrix[(i, j)] = c(1.0, 0.0);
                                }
                            } else {
                                slots.push((bi, a, bb, (i, j)));
                            }
                        }
                    }
                    row.push(m);
                }
                rows.push(row);
            }
            e.push(rows);
        }
        Layout { template: HalfBraiding { components: components.to_vec(), betas: betas.to_vec(), e }, slots }
    }

    fn unknowns(&self) -> usize {
        2 * self.slots.len()
    }

    fn fill(&self, x: &DVector<f64>) -> HalfBraiding {
        let mut hb = self.template.clone();
        for (k, &(bi, a, b, pos)) in self.slots.iter().enumerate() {
            hb.e[bi][a][b].matrix[pos] = c(x[2 * k], x[2 * k + 1]);
        }
        hb
    }

    fn read(&self, hb: &HalfBraiding) -> DVector<f64> {
        let mut x = DVector::zeros(self.unknowns());
        for (k, &(bi, a, b, pos)) in self.slots.iter().enumerate() {
            let z = hb.e[bi][a][b].matrix[pos];
            x[2 * k] = z.re;
            x[2 * k + 1] = z.im;
        }
        x
    }
}

/// Real residual vector: BFE defects for `β₁, β₂ ≠ id` and unitarity of each `E(β)`.
fn residuals(calc: &Calculus, hb: &HalfBraiding) -> DVector<f64> {
    let cat = calc.category();
    let n = hb.components.len();
    let mut out: Vec<f64> = Vec::new();
    let mut push = |m: &DMatrix<C64>| {
        for z in m.iter() {
            out.push(z.re);
            out.push(z.im);
        }
    };
    for (i1, &b1) in hb.betas.iter().enumerate().skip(1) {
        for (i2, &b2) in hb.betas.iter().enumerate().skip(1) {
            for (i3, &b3) in hb.betas.iter().enumerate() {
                for mu in 0..cat.mult(b1, b2, b3) {
                    let x = calc.vertex(b1, b2, b3, mu).expect("vertex");
                    for a in 0..n {
                        let sx = calc.left_id(&TensorWord(vec![hb.components[a]]), &x);
                        for b in 0..n {
                            let lb = TensorWord(vec![hb.components[b]]);
                            let lhs = calc.compose(&calc.right_id(&x, &lb), &hb.e[i3][a][b]).unwrap();
                            let mut d = lhs.matrix.clone();
                            for k in 0..n {
                                let t = calc
                                    .chain(&[
                                        &sx,
                                        &calc.right_id(&hb.e[i1][a][k], &TensorWord(vec![b2])),
                                        &calc.left_id(&TensorWord(vec![b1]), &hb.e[i2][k][b]),
                                    ])
                                    .unwrap();
                                d -= t.matrix;
                            }
                            push(&d);
                        }
                    }
                }
            }
        }
    }
    for bi in 1..hb.betas.len() {
        let m = hb.assembled(calc, bi);
        let k = m.ncols();
        push(&(m.adjoint() * &m - DMatrix::<C64>::identity(k, k)));
    }
    DVector::from_vec(out)
}

fn polar(calc: &Calculus, hb: &mut HalfBraiding) {
    for bi in 1..hb.betas.len() {
        let u = nearest_unitary(&hb.assembled(calc, bi));
        hb.set_assembled(calc, bi, &u);
    }
}

fn max_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn levenberg_marquardt(
    calc: &Calculus,
    layout: &Layout,
    mut x: DVector<f64>,
    iters: usize,
) -> (DVector<f64>, usize, f64) {
    let f = |x: &DVector<f64>| residuals(calc, &layout.fill(x));
    let mut r = f(&x);
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    let h = 1e-7;
    let mut it = 0;
    while it < iters && max_norm(&r) > 1e-13 {
        it += 1;
        let mut jac = DMatrix::<f64>::zeros(r.len(), x.len());
        for k in 0..x.len() {
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            jac.set_column(k, &((f(&xp) - f(&xm)) / (2.0 * h)));
        }
        let jtj = jac.transpose() * &jac;
        let g = jac.transpose() * &r;
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj.clone();
            for d in 0..a.nrows() {
                a[(d, d)] += lambda * (1.0 + jtj[(d, d)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let xn = &x + step;
            let rn = f(&xn);
            let cn = rn.norm_squared();
            if cn < cost {
                x = xn;
                r = rn;
                cost = cn;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (x, it, max_norm(&r))
}

/// All inequivalent irreducible half-braidings on `σ = ⊕ n_λ λ` found from
/// the configured starts.
pub fn solve_bfe_direct(
    calc: &Calculus,
    betas: &[Label],
    multiplicities: &[usize],
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    let cat = calc.category();
    if multiplicities.len() != cat.rank() {
        return Err(Error::Shape(format!("expected {} multiplicities, got {}", cat.rank(), multiplicities.len())));
    }
    let components: Vec<Label> = cat.labels().flat_map(|l| std::iter::repeat_n(l, multiplicities[l.0])).collect();
    let d: f64 = components.iter().map(|&l| cat.qdim(l)).sum();
    if d > cfg.max_dim + 1e-9 {
        return Err(Error::Shape(format!("oracle instance of dimension {d} exceeds the limit {}", cfg.max_dim)));
    }
    if components.is_empty() {
        return Err(Error::Shape("oracle needs a nonzero object".into()));
    }
    let layout = Layout::new(calc, betas, &components);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut solutions: Vec<HalfBraiding> = Vec::new();
    let mut starts = Vec::new();
    for s in 0..cfg.starts {
        let x0 = DVector::from_fn(layout.unknowns(), |_, _| rng.gen_range(-1.0..1.0));
        let mut hb0 = layout.fill(&x0);
        polar(calc, &mut hb0);
        let (x, iterations, _) = levenberg_marquardt(calc, &layout, layout.read(&hb0), cfg.max_iterations);
        let mut hb = layout.fill(&x);
        polar(calc, &mut hb);
        let residual = max_norm(&residuals(calc, &hb));
        let converged = residual < 1e-8;
        starts.push(StartReport { start: s, iterations, residual, converged });
        if !converged {
            continue;
        }
        if half_braiding::hom(calc, &hb, &hb, 1e-6)?.dim != 1 {
            continue;
        }
        let mut new = true;
        for other in &solutions {
            if half_braiding::hom(calc, &hb, other, 1e-6)?.dim > 0 {
                new = false;
                break;
            }
        }
        if new {
            solutions.push(hb);
        }
    }
    Ok(OracleResult { solutions, starts })
}

/// Largest unitarity defect over `β` of a solution; used in reports.
pub fn solution_unitarity(calc: &Calculus, hb: &HalfBraiding) -> f64 {
    (0..hb.betas.len()).map(|bi| unitarity_defect(&hb.assembled(calc, bi))).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::catalog;
    use crate::half_braiding::verify;
    use std::sync::Arc;

    fn calc(name: &str) -> Calculus {
        Calculus::new(Arc::new(catalog::load(name).unwrap()))
    }

    #[test]
    fn trivial_subcategory_has_one_solution_per_simple() {
        let cx = calc("ising");
        for l in 0..3 {
            let mut n = vec![0; 3];
            n[l] = 1;
            let res = solve_bfe_direct(&cx, &[Label(0)], &n, &OracleConfig::default()).unwrap();
            assert_eq!(res.solutions.len(), 1);
        }
    }

    #[test]
    fn pointed_unit_object_has_two_signs() {
        let cx = calc("vec_z2");
        let res = solve_bfe_direct(&cx, &[Label(0), Label(1)], &[1, 0], &OracleConfig::default()).unwrap();
        assert_eq!(res.solutions.len(), 2);
        let mut signs: Vec<i64> = res.solutions.iter().map(|h| h.e[1][0][0].matrix[(0, 0)].re.round() as i64).collect();
        signs.sort();
        assert_eq!(signs, vec![-1, 1]);
    }

    #[test]
    fn ising_sigma_over_fermion_subcategory() {
        let cx = calc("ising");
        let res = solve_bfe_direct(&cx, &[Label(0), Label(2)], &[0, 1, 0], &OracleConfig::default()).unwrap();
        assert_eq!(res.solutions.len(), 2);
        for s in &res.solutions {
            assert!(verify(&cx, s, 1e-7).pass);
        }
    }

    #[test]
    fn fibonacci_tau_has_two_half_braidings() {
        let cx = calc("fibonacci");
        let res = solve_bfe_direct(&cx, &[Label(0), Label(1)], &[0, 1], &OracleConfig::default()).unwrap();
        assert_eq!(res.solutions.len(), 2);
    }

    #[test]
    fn oversized_instances_are_rejected() {
        let cx = calc("ising");
        let cfg = OracleConfig { max_dim: 1.0, ..Default::default() };
        assert!(solve_bfe_direct(&cx, &[Label(0)], &[0, 1, 0], &cfg).is_err());
    }
}
