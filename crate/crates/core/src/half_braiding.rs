//! Half-braidings of objects of `D` with respect to a subcategory `C`.
//!
//! An object `σ = ⊕ λ_a` is stored as its list of simple components, and
//! `E(β) ∈ Hom(σβ, βσ)` as the family of component morphisms
//! `E(β)_{a,b} = β(W_b*) E(β) W_a ∈ Hom(λ_a β, β λ_b)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_data::{FusionCategory, Label};
use crate::hom::{Calculus, Morphism, TensorWord};
use crate::linalg::{nullspace, unitarity_defect};
use crate::{c, C64};

#[derive(Clone, Debug)]
pub struct HalfBraiding {
    /// Simple summands of σ, repeated according to multiplicity.
    pub components: Vec<Label>,
    /// `Irr(C)`, with the unit first.
    pub betas: Vec<Label>,
    /// `e[β][a][b] ∈ Hom(λ_a β, β λ_b)`.
    pub e: Vec<Vec<Vec<Morphism>>>,
}

fn w1(l: Label) -> TensorWord {
    TensorWord(vec![l])
}

fn w2(a: Label, b: Label) -> TensorWord {
    TensorWord(vec![a, b])
}

impl HalfBraiding {
    pub fn object_multiplicities(&self, rank: usize) -> Vec<usize> {
        let mut n = vec![0; rank];
        for l in &self.components {
            n[l.0] += 1;
        }
        n
    }

    pub fn dim(&self, cat: &FusionCategory) -> f64 {
        self.components.iter().map(|&l| cat.qdim(l)).sum()
    }

    pub fn beta_index(&self, b: Label) -> Option<usize> {
        self.betas.iter().position(|&x| x == b)
    }

    /// `(label, i)` names of the components.
    pub fn component_names(&self) -> Vec<(Label, usize)> {
        let mut seen = std::collections::HashMap::new();
        self.components
            .iter()
            .map(|&l| {
                let i = seen.entry(l).or_insert(0usize);
                *i += 1;
                (l, *i - 1)
            })
            .collect()
    }

    /// The unit object with `E(β) = id` for all β.
    pub fn trivial(calc: &Calculus, betas: &[Label]) -> HalfBraiding {
        let u = Label::UNIT;
        let e = betas
            .iter()
            .map(|&b| {
                let mut m = calc.zero(&w2(u, b), &w2(b, u));
                m.matrix[(0, 0)] = c(1.0, 0.0);
                vec![vec![m]]
            })
            .collect();
        HalfBraiding { components: vec![u], betas: betas.to_vec(), e }
    }

    /// `E_σ(β) = c_{σ,β}`, or `c_{β,σ}⁻¹` when `reverse`, from the R-symbols.
    pub fn from_braiding(calc: &Calculus, sigma: Label, betas: &[Label], reverse: bool) -> Option<HalfBraiding> {
        let mut e = Vec::with_capacity(betas.len());
        for &b in betas {
            let m = if reverse { calc.adjoint(&calc.braiding(b, sigma)?) } else { calc.braiding(sigma, b)? };
            e.push(vec![vec![m]]);
        }
        Some(HalfBraiding { components: vec![sigma], betas: betas.to_vec(), e })
    }

    /// Row and column offsets of each component inside the assembled matrix of `E(β)`.
    fn offsets(&self, calc: &Calculus, b: Label) -> (Vec<usize>, Vec<usize>, usize, usize) {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let (mut r, mut s) = (0, 0);
        for &l in &self.components {
            rows.push(r);
            cols.push(s);
            r += calc.basis(&w2(b, l)).len();
            s += calc.basis(&w2(l, b)).len();
        }
        (rows, cols, r, s)
    }

    /// `E(β)` as one matrix: rows `⊕_b trees(β λ_b)`, columns `⊕_a trees(λ_a β)`.
    pub fn assembled(&self, calc: &Calculus, bi: usize) -> DMatrix<C64> {
        let b = self.betas[bi];
        let (ro, co, nr, nc) = self.offsets(calc, b);
        let mut m = DMatrix::zeros(nr, nc);
        for (a, row) in self.e[bi].iter().enumerate() {
            for (bb, x) in row.iter().enumerate() {
                m.view_mut((ro[bb], co[a]), (x.matrix.nrows(), x.matrix.ncols())).copy_from(&x.matrix);
            }
        }
        m
    }

    /// Inverse of [`HalfBraiding::assembled`].
    pub fn set_assembled(&mut self, calc: &Calculus, bi: usize, m: &DMatrix<C64>) {
        let b = self.betas[bi];
        let (ro, co, _, _) = self.offsets(calc, b);
        for a in 0..self.components.len() {
            for bb in 0..self.components.len() {
                let x = &mut self.e[bi][a][bb];
                let (h, w) = (x.matrix.nrows(), x.matrix.ncols());
                x.matrix.copy_from(&m.view((ro[bb], co[a]), (h, w)));
            }
        }
    }

    /// Gauge-invariant traces of `E(β)` per root label, used as a sort key.
    pub fn signature(&self, calc: &Calculus) -> Vec<[i64; 2]> {
        let cat = calc.category();
        let mut out = Vec::new();
        for (bi, &b) in self.betas.iter().enumerate().skip(1) {
            for root in cat.labels() {
                let mut tr = c(0.0, 0.0);
                for (a, &l) in self.components.iter().enumerate() {
                    let src = calc.basis(&w2(l, b));
                    let tgt = calc.basis(&w2(b, l));
                    let s: Vec<usize> = src.with_root(root).map(|(i, _)| i).collect();
                    let t: Vec<usize> = tgt.with_root(root).map(|(i, _)| i).collect();
                    for (&i, &j) in s.iter().zip(&t) {
                        tr += self.e[bi][a][a].matrix[(j, i)];
                    }
                }
                out.push([(tr.re * 1e6).round() as i64, (tr.im * 1e6).round() as i64]);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfBraidingReport {
    pub bfe_residual: f64,
    pub unitarity_defect: f64,
    pub unit_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks unitarity, `E(id) = id` and the braiding-fusion equation
/// `X E(β₃) = β₁(E(β₂)) E(β₁) σ(X)` for every vertex `X ∈ Hom(β₃, β₁β₂)`.
pub fn verify(calc: &Calculus, hb: &HalfBraiding, tol: f64) -> HalfBraidingReport {
    let mut unit_defect: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    for (bi, &b) in hb.betas.iter().enumerate() {
        unitarity = unitarity.max(unitarity_defect(&hb.assembled(calc, bi)));
        if b.is_unit() {
            for (a, row) in hb.e[bi].iter().enumerate() {
                for (bb, x) in row.iter().enumerate() {
                    let expect = if a == bb { 1.0 } else { 0.0 };
                    for (k, z) in x.matrix.iter().enumerate() {
                        let e = if k == 0 { expect } else { 0.0 };
                        unit_defect = unit_defect.max((z - c(e, 0.0)).norm());
                    }
                }
            }
        }
    }
    let bfe = bfe_residual(calc, hb);
    HalfBraidingReport {
        bfe_residual: bfe,
        unitarity_defect: unitarity,
        unit_defect,
        tolerance: tol,
        pass: bfe < tol && unitarity < tol && unit_defect < tol,
    }
}

/// Largest entry of `X E(β₃) − β₁(E(β₂)) E(β₁) σ(X)` over all vertices.
pub fn bfe_residual(calc: &Calculus, hb: &HalfBraiding) -> f64 {
    let cat = calc.category();
    let n = hb.components.len();
    let mut worst: f64 = 0.0;
    for (i1, &b1) in hb.betas.iter().enumerate() {
        for (i2, &b2) in hb.betas.iter().enumerate() {
            for (i3, &b3) in hb.betas.iter().enumerate() {
                for mu in 0..cat.mult(b1, b2, b3) {
                    let x = calc.vertex(b1, b2, b3, mu).expect("vertex exists");
                    for a in 0..n {
                        let la = hb.components[a];
                        let sx = calc.left_id(&w1(la), &x);
                        for bb in 0..n {
                            let lb = hb.components[bb];
                            let lhs = calc.compose(&calc.right_id(&x, &w1(lb)), &hb.e[i3][a][bb]).expect("BFE shapes");
                            let mut rhs = calc.zero(&lhs.source, &lhs.target);
                            for k in 0..n {
                                let term = calc
                                    .chain(&[
                                        &sx,
                                        &calc.right_id(&hb.e[i1][a][k], &w1(b2)),
                                        &calc.left_id(&w1(b1), &hb.e[i2][k][bb]),
                                    ])
                                    .expect("BFE shapes");
                                rhs.matrix += term.matrix;
                            }
                            worst = worst.max(lhs.distance(&rhs));
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Conjugate half-braiding `Ē(β) = d(σ) R_σ*(E(β)* β(R̄_σ))` of `σ̄`, written
/// with the `d`-normalized rigidity pairs.
pub fn conjugate(calc: &Calculus, hb: &HalfBraiding) -> HalfBraiding {
    let cat = calc.category();
    let comps: Vec<Label> = hb.components.iter().map(|&l| cat.dual(l)).collect();
    let n = comps.len();
    let mut e = Vec::with_capacity(hb.betas.len());
    for (bi, &b) in hb.betas.iter().enumerate() {
        let mut rows = Vec::with_capacity(n);
        for a in 0..n {
            let la = hb.components[a];
            let pa = calc.rigidity_pair(la);
            let mut row = Vec::with_capacity(n);
            for bb in 0..n {
                let lb = hb.components[bb];
                let pb = calc.rigidity_pair(lb);
                let m = calc
                    .chain(&[
                        &calc.left_id(&w2(comps[a], b), &pb.rbar),
                        &calc.left_id(&w1(comps[a]), &calc.right_id(&calc.adjoint(&hb.e[bi][a][bb]), &w1(comps[bb]))),
                        &calc.right_id(&calc.adjoint(&pa.r), &w2(b, comps[bb])),
                    ])
                    .expect("conjugate shapes");
                row.push(m);
            }
            rows.push(row);
        }
        e.push(rows);
    }
    HalfBraiding { components: comps, betas: hb.betas.clone(), e }
}

/// Fusion product `{E_σ(β) σ(E_σ'(β))}`, with `σσ'` split into simple
/// components through vertices `c → λ_a λ'_a'`.
pub fn tensor(calc: &Calculus, h1: &HalfBraiding, h2: &HalfBraiding) -> Result<HalfBraiding> {
    if h1.betas != h2.betas {
        return Err(Error::Shape("half-braidings over different subcategories".into()));
    }
    let cat = calc.category();
    let mut parts = Vec::new();
    for (a, &la) in h1.components.iter().enumerate() {
        for (ap, &lap) in h2.components.iter().enumerate() {
            for (root, n) in cat.ring.products(la, lap) {
                for mu in 0..n {
                    parts.push((a, ap, root, mu));
                }
            }
        }
    }
    parts.sort_by_key(|p| (p.2, p.0, p.1, p.3));
    let comps: Vec<Label> = parts.iter().map(|p| p.2).collect();
    let mut e = Vec::with_capacity(h1.betas.len());
    for (bi, &b) in h1.betas.iter().enumerate() {
        let mut rows = Vec::with_capacity(parts.len());
        for &(a, ap, ca, mua) in &parts {
            let (la, lap) = (h1.components[a], h2.components[ap]);
            let ya = calc.right_id(&calc.vertex(la, lap, ca, mua)?, &w1(b));
            let mut row = Vec::with_capacity(parts.len());
            for &(bb, bp, cb, mub) in &parts {
                let (lb, lbp) = (h1.components[bb], h2.components[bp]);
                let yb = calc.left_id(&w1(b), &calc.adjoint(&calc.vertex(lb, lbp, cb, mub)?));
                let m = calc.chain(&[
                    &ya,
                    &calc.left_id(&w1(la), &h2.e[bi][ap][bp]),
                    &calc.right_id(&h1.e[bi][a][bb], &w1(lbp)),
                    &yb,
                ])?;
                row.push(m);
            }
            rows.push(row);
        }
        e.push(rows);
    }
    Ok(HalfBraiding { components: comps, betas: h1.betas.clone(), e })
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub dim: usize,
    /// Orthonormal basis; each entry maps components of the source (columns)
    /// to components of the target (rows).
    pub basis: Vec<DMatrix<C64>>,
    pub singular_values: Vec<f64>,
    /// Some singular value lies within a factor 10 of the threshold.
    pub borderline: bool,
    /// `Σ_s max(0, 1 − s/tol)`: equals `dim` when the spectrum splits cleanly.
    pub soft_dim: f64,
}

/// Intertwiners `X ∈ Hom(σ, σ')` with `E'(β) X = β(X) E(β)` for all β.
pub fn hom(calc: &Calculus, h1: &HalfBraiding, h2: &HalfBraiding, rank_tol: f64) -> Result<HomSpace> {
    if h1.betas != h2.betas {
        return Err(Error::Shape("half-braidings over different subcategories".into()));
    }
    let mut unknowns = Vec::new();
    for (ap, &l2) in h2.components.iter().enumerate() {
        for (a, &l1) in h1.components.iter().enumerate() {
            if l1 == l2 {
                unknowns.push((ap, a));
            }
        }
    }
    let col_of = |ap: usize, a: usize| unknowns.iter().position(|&u| u == (ap, a));
    if unknowns.is_empty() {
        return Ok(HomSpace { dim: 0, basis: vec![], singular_values: vec![], borderline: false, soft_dim: 0.0 });
    }
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for bi in 0..h1.betas.len() {
        for a in 0..h1.components.len() {
            for bp in 0..h2.components.len() {
                let shape = {
                    let l1 = h1.components[a];
                    let l2 = h2.components[bp];
                    let b = h1.betas[bi];
                    (calc.basis(&w2(b, l2)).len(), calc.basis(&w2(l1, b)).len())
                };
                let mut block = vec![vec![c(0.0, 0.0); unknowns.len()]; shape.0 * shape.1];
                for ap in 0..h2.components.len() {
                    if let Some(col) = col_of(ap, a) {
                        for (k, z) in h2.e[bi][ap][bp].matrix.iter().enumerate() {
                            block[k][col] += z;
                        }
                    }
                }
                for b in 0..h1.components.len() {
                    if let Some(col) = col_of(bp, b) {
                        for (k, z) in h1.e[bi][a][b].matrix.iter().enumerate() {
                            block[k][col] -= z;
                        }
                    }
                }
                rows.extend(block);
            }
        }
    }
    let m = DMatrix::from_fn(rows.len(), unknowns.len(), |i, j| rows[i][j]);
    let (null, sv) = nullspace(&m, rank_tol);
    let borderline = sv.iter().any(|&s| s > rank_tol / 10.0 && s < rank_tol * 10.0);
    let soft_dim = sv.iter().map(|&s| (1.0 - s / rank_tol).max(0.0)).sum();
    let basis = null
        .iter()
        .map(|v: &DVector<C64>| {
            let mut x = DMatrix::zeros(h2.components.len(), h1.components.len());
            for (k, &(ap, a)) in unknowns.iter().enumerate() {
                x[(ap, a)] = v[k];
            }
            x
        })
        .collect();
    Ok(HomSpace { dim: null.len(), basis, singular_values: sv, borderline, soft_dim })
}

/// Hexagon residual: the braiding and the reverse braiding must both be
/// half-braidings of every simple object with respect to the whole category.
pub fn braiding_hexagon_residual(calc: &Calculus) -> Option<f64> {
    let cat = calc.category();
    let betas: Vec<Label> = cat.labels().collect();
    let mut worst: f64 = 0.0;
    for s in cat.labels() {
        for reverse in [false, true] {
            let hb = HalfBraiding::from_braiding(calc, s, &betas, reverse)?;
            let rep = verify(calc, &hb, f64::INFINITY);
            worst = worst.max(rep.bfe_residual).max(rep.unitarity_defect).max(rep.unit_defect);
        }
    }
    Some(worst)
}
