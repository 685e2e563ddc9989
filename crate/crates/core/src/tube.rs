//! The relative tube algebra `Tube(C, D) = ⊕_{λ,ν ∈ Irr(D), μ ∈ Irr(C)} Hom(λμ, μν)`.
//!
//! Elements are stored as coefficient vectors over a basis that is
//! orthonormal for the trace form `⟨x, y⟩ = φ(y* x)`. Each summand
//! `Hom(λμ, μν)` is first spanned by tree-coordinate matrix units, which
//! are then orthonormalized by a Cholesky factor of their Gram matrix.
//! Product, involution, unit and `φ` are precomputed densely.
//!
//! Product of `X ∈ Hom(λμ, μν)` and `Y ∈ Hom(νμ', μ'ρ)`:
//!
//! ```text
//! XY = Σ_{ξ ∈ Irr(C)} Σ_T (T* ⊗ 1_ρ)(1_μ ⊗ Y)(X ⊗ 1_μ')(1_λ ⊗ T)   ∈ Hom(λξ, ξρ)
//! ```
//!
//! with `T` running over isometric vertices `ξ → μμ'`. The involution bends
//! both `μ` legs of `X*` with the rigidity pair of `μ`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_data::{FusionCategory, Label, Subcategory};
use crate::hom::{Calculus, Morphism, TensorWord};
use crate::linalg::hermitian_eigen;
use crate::{c, C64};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TubeBasisIndex {
    pub lambda: Label,
    pub mu: Label,
    pub nu: Label,
    pub t: usize,
}

/// One summand `Hom(λμ, μν)`.
#[derive(Clone, Debug)]
pub struct TubeBlock {
    pub lambda: Label,
    pub mu: Label,
    pub nu: Label,
    pub offset: usize,
    /// `(target tree, source tree)` positions of the spanning matrix units.
    pub units: Vec<(usize, usize)>,
    /// Columns: orthonormal basis vectors in matrix-unit coordinates.
    pub to_units: DMatrix<C64>,
    /// Inverse of `to_units`.
    pub from_units: DMatrix<C64>,
}

impl TubeBlock {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn source(&self) -> TensorWord {
        TensorWord(vec![self.lambda, self.mu])
    }

    pub fn target(&self) -> TensorWord {
        TensorWord(vec![self.mu, self.nu])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TubeElement {
    algebra: u64,
    pub coeffs: DVector<C64>,
}

impl TubeElement {
    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn scale(&self, s: C64) -> TubeElement {
        TubeElement { algebra: self.algebra, coeffs: &self.coeffs * s }
    }

    pub fn add(&self, other: &TubeElement) -> Result<TubeElement> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TubeElement { algebra: self.algebra, coeffs: &self.coeffs + &other.coeffs })
    }

    pub fn sub(&self, other: &TubeElement) -> Result<TubeElement> {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    /// Largest coefficient modulus.
    pub fn norm_max(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub struct TubeAlgebra {
    id: u64,
    pub sub: Subcategory,
    pub calc: Arc<Calculus>,
    pub blocks: Vec<TubeBlock>,
    block_of: HashMap<(Label, Label, Label), usize>,
    pub index: Vec<TubeBasisIndex>,
    /// `left[k]` is left multiplication by basis element `k`.
    left: Vec<DMatrix<C64>>,
    /// `star(x) = star · conj(x)`.
    star: DMatrix<C64>,
    unit: DVector<C64>,
    /// `φ(x) = Σ_k phi[k] x_k`.
    phi: DVector<C64>,
    /// Condition number of the Gram matrix of the matrix-unit spanning set.
    pub gram_condition: f64,
}

impl std::fmt::Debug for TubeAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TubeAlgebra")
            .field("category", &self.sub.parent().name)
            .field("members", &self.sub.members())
            .field("dim", &self.dim())
            .finish()
    }
}

fn w2(a: Label, b: Label) -> TensorWord {
    TensorWord(vec![a, b])
}

/// `Σ_{λ,μ,ν} dim Hom(λμ, μν)` from the fusion ring alone.
pub fn dim_from_ring(sub: &Subcategory) -> usize {
    let ring = &sub.parent().ring;
    let mut n = 0;
    for l in ring.labels() {
        for &m in sub.members() {
            for v in ring.labels() {
                for r in ring.labels() {
                    n += ring.mult(l, m, r) * ring.mult(m, v, r);
                }
            }
        }
    }
    n
}

/// `Σ_ξ Σ_T (T*⊗1)(1⊗Y)(X⊗1)(1⊗T)`, grouped by `ξ`.
fn product_morphisms(
    calc: &Calculus,
    sub: &Subcategory,
    (l, m, _n): (Label, Label, Label),
    x: &Morphism,
    (_n2, m2, r): (Label, Label, Label),
    y: &Morphism,
) -> Vec<(Label, Morphism)> {
    let cat = calc.category();
    let wl = TensorWord(vec![l]);
    let wm = TensorWord(vec![m]);
    let wm2 = TensorWord(vec![m2]);
    let wr = TensorWord(vec![r]);
    let xm = calc.right_id(x, &wm2);
    let my = calc.left_id(&wm, y);
    let mut out = Vec::new();
    for &xi in sub.members() {
        let n = cat.mult(m, m2, xi);
        if n == 0 {
            continue;
        }
        let mut acc: Option<Morphism> = None;
        for k in 0..n {
            let t = calc.vertex(m, m2, xi, k).expect("vertex exists");
            let z = calc
                .chain(&[&calc.left_id(&wl, &t), &xm, &my, &calc.right_id(&calc.adjoint(&t), &wr)])
                .expect("tube product shapes");
            acc = Some(match acc {
                None => z,
                Some(a) => a.add(&z).expect("same words"),
            });
        }
        out.push((xi, acc.unwrap()));
    }
    out
}

/// `(1_{μ̄λ} ⊗ r̄_μ*)(1_μ̄ ⊗ X* ⊗ 1_μ̄)(r_μ ⊗ 1_{νμ̄}) ∈ Hom(νμ̄, μ̄λ)`.
fn star_morphism(calc: &Calculus, (l, m, n): (Label, Label, Label), x: &Morphism) -> Morphism {
    let mb = calc.category().dual(m);
    let p = calc.rigidity_pair(m);
    calc.chain(&[
        &calc.right_id(&p.r, &w2(n, mb)),
        &calc.right_id(&calc.left_id(&TensorWord(vec![mb]), &calc.adjoint(x)), &TensorWord(vec![mb])),
        &calc.left_id(&w2(mb, l), &calc.adjoint(&p.rbar)),
    ])
    .expect("star shapes")
}

/// Builds `Tube(C, D)` for `C = sub` inside its parent `D`.
pub fn build_tube(sub: &Subcategory) -> Result<TubeAlgebra> {
    let calc = Arc::new(Calculus::new(sub.parent_arc().clone()));
    build_tube_with(sub, calc)
}

pub fn build_tube_with(sub: &Subcategory, calc: Arc<Calculus>) -> Result<TubeAlgebra> {
    let cat: &FusionCategory = calc.category();
    let mut blocks = Vec::new();
    let mut block_of = HashMap::new();
    let mut offset = 0;
    for l in cat.labels() {
        for &m in sub.members() {
            for n in cat.labels() {
                let sb = calc.basis(&w2(l, m));
                let tb = calc.basis(&w2(m, n));
                let mut units = Vec::new();
                for i in 0..tb.len() {
                    for j in 0..sb.len() {
                        if tb.root_of(i) == sb.root_of(j) {
                            units.push((i, j));
                        }
                    }
                }
                if units.is_empty() {
                    continue;
                }
                let k = units.len();
                block_of.insert((l, m, n), blocks.len());
                blocks.push(TubeBlock {
                    lambda: l,
                    mu: m,
                    nu: n,
                    offset,
                    units,
                    to_units: DMatrix::identity(k, k),
                    from_units: DMatrix::identity(k, k),
                });
                offset += k;
            }
        }
    }
    let dim = offset;

    let unit_morphism = |b: &TubeBlock, i: usize| -> Morphism {
        let mut m = calc.zero(&b.source(), &b.target());
        m.matrix[b.units[i]] = c(1.0, 0.0);
        m
    };
    let coords = |b: &TubeBlock, z: &Morphism, out: &mut DVector<C64>| {
        for (i, &pos) in b.units.iter().enumerate() {
            out[b.offset + i] += z.matrix[pos];
        }
    };

    // structure in matrix-unit coordinates
    let mut raw_left = vec![DMatrix::<C64>::zeros(dim, dim); dim];
    let mut raw_star = DMatrix::<C64>::zeros(dim, dim);
    let mut raw_phi = DVector::<C64>::zeros(dim);
    let mut raw_unit = DVector::<C64>::zeros(dim);
    for b1 in &blocks {
        if b1.mu.is_unit() && b1.lambda == b1.nu {
            raw_phi[b1.offset] = c(cat.qdim(b1.lambda).powi(2), 0.0);
            raw_unit[b1.offset] = c(1.0, 0.0);
        }
        for i in 0..b1.len() {
            let x = unit_morphism(b1, i);
            let s = star_morphism(&calc, (b1.lambda, b1.mu, b1.nu), &x);
            let sb = &blocks[block_of[&(b1.nu, cat.dual(b1.mu), b1.lambda)]];
            let mut col = DVector::zeros(dim);
            coords(sb, &s, &mut col);
            raw_star.set_column(b1.offset + i, &col);
            for b2 in blocks.iter().filter(|b| b.lambda == b1.nu) {
                for j in 0..b2.len() {
                    let y = unit_morphism(b2, j);
                    let mut col = DVector::zeros(dim);
                    for (xi, z) in
                        product_morphisms(&calc, sub, (b1.lambda, b1.mu, b1.nu), &x, (b2.lambda, b2.mu, b2.nu), &y)
                    {
                        if let Some(&bi) = block_of.get(&(b1.lambda, xi, b2.nu)) {
                            coords(&blocks[bi], &z, &mut col);
                        }
                    }
                    raw_left[b1.offset + i].set_column(b2.offset + j, &col);
                }
            }
        }
    }

    // Gram matrix G[j][i] = φ(b_j* b_i)
    let mut gram = DMatrix::<C64>::zeros(dim, dim);
    for j in 0..dim {
        let sj = raw_star.column(j);
        let mut lj = DMatrix::<C64>::zeros(dim, dim);
        for k in 0..dim {
            if sj[k] != c(0.0, 0.0) {
                lj += &raw_left[k] * sj[k];
            }
        }
        let row = raw_phi.transpose() * lj;
        for i in 0..dim {
            gram[(j, i)] = row[i];
        }
    }
    let (gvals, _) = hermitian_eigen(&gram);
    let gram_condition = if gvals[0] > 0.0 { gvals[dim - 1] / gvals[0] } else { f64::INFINITY };

    let mut to_units = DMatrix::<C64>::zeros(dim, dim);
    let mut from_units = DMatrix::<C64>::zeros(dim, dim);
    for b in blocks.iter_mut() {
        let g = gram.view((b.offset, b.offset), (b.len(), b.len())).into_owned();
        let g = (&g + g.adjoint()) * c(0.5, 0.0);
        let chol = Cholesky::new(g.clone()).ok_or_else(|| Error::NonPositiveTrace(hermitian_eigen(&g).0[0]))?;
        let l = chol.l();
        let m = l.adjoint().try_inverse().ok_or(Error::NonPositiveTrace(0.0))?;
        b.from_units = l.adjoint();
        b.to_units = m;
        to_units.view_mut((b.offset, b.offset), (b.len(), b.len())).copy_from(&b.to_units);
        from_units.view_mut((b.offset, b.offset), (b.len(), b.len())).copy_from(&b.from_units);
    }

    let mut left = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut acc = DMatrix::<C64>::zeros(dim, dim);
        for i in 0..dim {
            let mik = to_units[(i, k)];
            if mik != c(0.0, 0.0) {
                acc += &raw_left[i] * mik;
            }
        }
        left.push(&from_units * acc * &to_units);
    }
    let star = &from_units * raw_star * to_units.map(|z| z.conj());
    let unit = &from_units * raw_unit;
    let phi = (raw_phi.transpose() * &to_units).transpose();

    let index = blocks
        .iter()
        .flat_map(|b| (0..b.len()).map(move |t| TubeBasisIndex { lambda: b.lambda, mu: b.mu, nu: b.nu, t }))
        .collect();

    Ok(TubeAlgebra {
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        sub: sub.clone(),
        calc,
        blocks,
        block_of,
        index,
        left,
        star,
        unit,
        phi,
        gram_condition,
    })
}

impl TubeAlgebra {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn category(&self) -> &FusionCategory {
        self.calc.category()
    }

    pub fn element(&self, coeffs: DVector<C64>) -> Result<TubeElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::Shape(format!("expected {} coefficients, got {}", self.dim(), coeffs.len())));
        }
        Ok(TubeElement { algebra: self.id, coeffs })
    }

    pub fn zero(&self) -> TubeElement {
        TubeElement { algebra: self.id, coeffs: DVector::zeros(self.dim()) }
    }

    pub fn basis_element(&self, k: usize) -> TubeElement {
        let mut x = self.zero();
        x.coeffs[k] = c(1.0, 0.0);
        x
    }

    pub fn unit(&self) -> TubeElement {
        TubeElement { algebra: self.id, coeffs: self.unit.clone() }
    }

    fn check(&self, x: &TubeElement) -> Result<()> {
        if x.algebra != self.id {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Matrix of `y ↦ xy`.
    pub fn left_matrix(&self, x: &TubeElement) -> Result<DMatrix<C64>> {
        self.check(x)?;
        let n = self.dim();
        let mut acc = DMatrix::zeros(n, n);
        for (k, &xk) in x.coeffs.iter().enumerate() {
            if xk != c(0.0, 0.0) {
                acc += &self.left[k] * xk;
            }
        }
        Ok(acc)
    }

    /// Matrix of `y ↦ yx`.
    pub fn right_matrix(&self, x: &TubeElement) -> Result<DMatrix<C64>> {
        self.check(x)?;
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            m.set_column(k, &(&self.left[k] * &x.coeffs));
        }
        Ok(m)
    }

    pub fn multiply(&self, x: &TubeElement, y: &TubeElement) -> Result<TubeElement> {
        self.check(y)?;
        let coeffs = self.left_matrix(x)? * &y.coeffs;
        Ok(TubeElement { algebra: self.id, coeffs })
    }

    pub fn star(&self, x: &TubeElement) -> Result<TubeElement> {
        self.check(x)?;
        Ok(TubeElement { algebra: self.id, coeffs: &self.star * x.coeffs.map(|z| z.conj()) })
    }

    pub fn phi(&self, x: &TubeElement) -> Result<C64> {
        self.check(x)?;
        Ok(self.phi.dot(&x.coeffs))
    }

    /// `⟨x, y⟩ = φ(y* x)`.
    pub fn trace_form(&self, x: &TubeElement, y: &TubeElement) -> Result<C64> {
        let p = self.multiply(&self.star(y)?, x)?;
        self.phi(&p)
    }

    /// Gram matrix of the basis under the trace form.
    pub fn gram(&self) -> DMatrix<C64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |j, i| self.trace_form(&self.basis_element(i), &self.basis_element(j)).unwrap())
    }

    pub fn block(&self, l: Label, m: Label, n: Label) -> Option<&TubeBlock> {
        self.block_of.get(&(l, m, n)).map(|&b| &self.blocks[b])
    }

    /// The `Hom(λμ, μν)` component of `x` as a morphism.
    pub fn component(&self, x: &TubeElement, l: Label, m: Label, n: Label) -> Result<Morphism> {
        self.check(x)?;
        let src = w2(l, m);
        let tgt = w2(m, n);
        let mut out = self.calc.zero(&src, &tgt);
        if let Some(b) = self.block(l, m, n) {
            let local = x.coeffs.rows(b.offset, b.len());
            let u = &b.to_units * local;
            for (i, &pos) in b.units.iter().enumerate() {
                out.matrix[pos] = u[i];
            }
        }
        Ok(out)
    }

    /// The element `(λμ|X|μν)`.
    pub fn from_morphism(&self, l: Label, m: Label, n: Label, x: &Morphism) -> Result<TubeElement> {
        if x.source != w2(l, m) || x.target != w2(m, n) {
            return Err(Error::Shape(format!("morphism {}→{} is not in Hom({l}{m}, {m}{n})", x.source, x.target)));
        }
        let mut out = self.zero();
        if let Some(b) = self.block(l, m, n) {
            let u = DVector::from_iterator(b.len(), b.units.iter().map(|&p| x.matrix[p]));
            out.coeffs.rows_mut(b.offset, b.len()).copy_from(&(&b.from_units * u));
        }
        Ok(out)
    }

    /// `(λ0|1|0λ)`.
    pub fn object_projection(&self, l: Label) -> TubeElement {
        let id = self.calc.identity(&w2(l, Label::UNIT));
        let mut m = self.calc.zero(&w2(l, Label::UNIT), &w2(Label::UNIT, l));
        m.matrix.copy_from(&id.matrix);
        self.from_morphism(l, Label::UNIT, l, &m).expect("identity block exists")
    }

    pub fn structure_constants(&self) -> &[DMatrix<C64>] {
        &self.left
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TubeChecks {
    pub dim: usize,
    pub dim_from_ring: usize,
    pub associativity: f64,
    pub unit: f64,
    pub star_involution: f64,
    pub star_antihomomorphism: f64,
    /// `max |φ(xy) − φ(yx)|`; nonzero whenever linked corners have different dimensions.
    pub phi_trace: f64,
    /// `max |φ(xy) − d(λ)/d(ν) φ(yx)|` for `x ∈ p_λ A p_ν`.
    pub phi_modular: f64,
    pub phi_unit: f64,
    pub dim_d: f64,
    /// `‖Gram − 1‖`; zero when summands are mutually orthogonal.
    pub orthonormality: f64,
    pub gram_condition: f64,
    pub min_trace_form_eigenvalue: f64,
}

/// Axiom residuals over all basis pairs and triples.
pub fn check_axioms(a: &TubeAlgebra) -> TubeChecks {
    let n = a.dim();
    let e: Vec<TubeElement> = (0..n).map(|k| a.basis_element(k)).collect();
    let one = a.unit();
    let mut assoc: f64 = 0.0;
    let mut unit: f64 = 0.0;
    let mut inv: f64 = 0.0;
    let mut anti: f64 = 0.0;
    let mut trace: f64 = 0.0;
    let mut modular: f64 = 0.0;
    let cat = a.category();
    let prods: Vec<Vec<TubeElement>> =
        e.iter().map(|x| e.iter().map(|y| a.multiply(x, y).unwrap()).collect()).collect();
    for i in 0..n {
        unit = unit.max(a.multiply(&one, &e[i]).unwrap().sub(&e[i]).unwrap().norm_max());
        unit = unit.max(a.multiply(&e[i], &one).unwrap().sub(&e[i]).unwrap().norm_max());
        inv = inv.max(a.star(&a.star(&e[i]).unwrap()).unwrap().sub(&e[i]).unwrap().norm_max());
        for j in 0..n {
            let lhs = a.star(&prods[i][j]).unwrap();
            let rhs = a.multiply(&a.star(&e[j]).unwrap(), &a.star(&e[i]).unwrap()).unwrap();
            anti = anti.max(lhs.sub(&rhs).unwrap().norm_max());
            let (pij, pji) = (a.phi(&prods[i][j]).unwrap(), a.phi(&prods[j][i]).unwrap());
            trace = trace.max((pij - pji).norm());
            let ratio = cat.qdim(a.index[i].lambda) / cat.qdim(a.index[i].nu);
            modular = modular.max((pij - pji * ratio).norm());
            for k in 0..n {
                let l = a.multiply(&prods[i][j], &e[k]).unwrap();
                let r = a.multiply(&e[i], &prods[j][k]).unwrap();
                assoc = assoc.max(l.sub(&r).unwrap().norm_max());
            }
        }
    }
    let gram = a.gram();
    let orth = crate::hom::max_abs(&(&gram - DMatrix::<C64>::identity(n, n)));
    let min_eig = hermitian_eigen(&gram).0.first().copied().unwrap_or(0.0);
    let dim_d = crate::fusion_data::category_dim(a.category());
    TubeChecks {
        dim: n,
        dim_from_ring: dim_from_ring(&a.sub),
        associativity: assoc,
        unit,
        star_involution: inv,
        star_antihomomorphism: anti,
        phi_trace: trace,
        phi_modular: modular,
        phi_unit: (a.phi(&one).unwrap() - c(dim_d, 0.0)).norm(),
        dim_d,
        orthonormality: orth,
        gram_condition: a.gram_condition,
        min_trace_form_eigenvalue: min_eig,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::{catalog, full_subcategory, subcategory, trivial_subcategory};
    use proptest::prelude::*;

    fn tube(name: &str, members: Option<&[usize]>) -> TubeAlgebra {
        let d = Arc::new(catalog::load(name).unwrap());
        let sub = match members {
            None => full_subcategory(d),
            Some(m) => subcategory(d, m.iter().map(|&i| Label(i))).unwrap(),
        };
        build_tube(&sub).unwrap()
    }

    fn pairs() -> Vec<(&'static str, Option<&'static [usize]>)> {
        vec![
            ("ising", Some(&[0][..])),
            ("fibonacci", Some(&[0][..])),
            ("vec_z2", None),
            ("vec_z3", None),
            ("vec_z2_twisted", None),
            ("ising", Some(&[0, 2][..])),
            ("ising", None),
            ("fibonacci", None),
        ]
    }

    #[test]
    fn dimensions() {
        assert_eq!(tube("ising", Some(&[0])).dim(), 3);
        assert_eq!(tube("vec_z2", None).dim(), 4);
        assert_eq!(tube("ising", None).dim(), 12);
        assert_eq!(tube("ising", Some(&[0, 2])).dim(), 6);
        assert_eq!(tube("fibonacci", None).dim(), 7);
        for (name, m) in pairs() {
            let a = tube(name, m);
            assert_eq!(a.dim(), dim_from_ring(&a.sub));
        }
    }

    #[test]
    fn axioms_hold_on_catalog_pairs() {
        for (name, m) in pairs() {
            let a = tube(name, m);
            let ch = check_axioms(&a);
            assert!(ch.associativity < 1e-8, "{name} {m:?}: {ch:?}");
            assert!(ch.unit < 1e-8, "{name} {m:?}: {ch:?}");
            assert!(ch.star_involution < 1e-8, "{name} {m:?}: {ch:?}");
            assert!(ch.star_antihomomorphism < 1e-8, "{name} {m:?}: {ch:?}");
            assert!(ch.phi_modular < 1e-8, "{name} {m:?}: {ch:?}");
            assert!(ch.phi_unit < 1e-9, "{name} {m:?}: {ch:?}");
            assert!(ch.orthonormality < 1e-8, "{name} {m:?}: {ch:?}");
            assert!(ch.gram_condition.is_finite());
        }
    }

    #[test]
    fn trivial_subcategory_tube_is_commutative() {
        let d = Arc::new(catalog::load("ising").unwrap());
        let a = build_tube(&trivial_subcategory(d)).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let x = a.basis_element(i);
                let y = a.basis_element(j);
                let d = a.multiply(&x, &y).unwrap().sub(&a.multiply(&y, &x).unwrap()).unwrap();
                assert!(d.norm_max() < 1e-12);
            }
        }
    }

    #[test]
    fn phi_is_tracial_when_linked_dimensions_agree() {
        for (name, m) in [("ising", None), ("ising", Some(&[0usize, 2][..])), ("vec_z2", None), ("vec_z3", None)] {
            let ch = check_axioms(&tube(name, m));
            assert!(ch.phi_trace < 1e-8, "{name}: {ch:?}");
        }
        // Fibonacci links the corners of 1 and τ, so φ is only tracial up to d(λ)/d(ν)
        let ch = check_axioms(&tube("fibonacci", None));
        assert!(ch.phi_trace > 0.1 && ch.phi_modular < 1e-8);
    }

    #[test]
    fn phi_values() {
        let a = tube("ising", None);
        assert!((a.phi(&a.unit()).unwrap() - c(4.0, 0.0)).norm() < 1e-9);
        assert!((a.trace_form(&a.unit(), &a.unit()).unwrap() - c(4.0, 0.0)).norm() < 1e-9);
        for (k, ix) in a.index.iter().enumerate() {
            if !ix.mu.is_unit() {
                assert_eq!(a.phi(&a.basis_element(k)).unwrap(), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn pointed_square_lands_in_unit_sector() {
        let a = tube("vec_z2", None);
        let g = Label(1);
        let k = a.index.iter().position(|ix| ix.lambda == g && ix.mu == g && ix.nu == g).unwrap();
        let x = a.basis_element(k);
        let sq = a.multiply(&x, &x).unwrap();
        for (i, ix) in a.index.iter().enumerate() {
            if sq.coeffs[i].norm() > 1e-12 {
                assert!(ix.mu.is_unit() && ix.lambda == g && ix.nu == g);
            }
        }
        // with trivial associator the tube algebra is the group algebra of Z2 × Z2
        assert!(sq.sub(&a.object_projection(g)).unwrap().norm_max() < 1e-12);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = tube("vec_z2", None);
        let b = tube("vec_z2", None);
        assert!(matches!(a.multiply(&a.unit(), &b.unit()), Err(Error::AlgebraMismatch)));
        assert!(matches!(a.trace_form(&a.unit(), &b.unit()), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn morphism_round_trip() {
        let a = tube("ising", None);
        for (k, ix) in a.index.iter().enumerate() {
            let x = a.basis_element(k);
            let m = a.component(&x, ix.lambda, ix.mu, ix.nu).unwrap();
            let back = a.from_morphism(ix.lambda, ix.mu, ix.nu, &m).unwrap();
            assert!(back.sub(&x).unwrap().norm_max() < 1e-12);
        }
    }

    fn random_element(a: &TubeAlgebra, seed: &[f64]) -> TubeElement {
        let n = a.dim();
        let v = DVector::from_fn(n, |k, _| c(seed[(2 * k) % seed.len()], seed[(2 * k + 1) % seed.len()]));
        a.element(v).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_elements_satisfy_axioms(s1 in prop::collection::vec(-1.0f64..1.0, 24),
                                          s2 in prop::collection::vec(-1.0f64..1.0, 23)) {
            for (name, m) in [("ising", None), ("fibonacci", None), ("ising", Some(&[0usize, 2][..]))] {
                let a = tube(name, m);
                let x = random_element(&a, &s1);
                let y = random_element(&a, &s2);
                let xy = a.multiply(&x, &y).unwrap();
                let lhs = a.star(&xy).unwrap();
                let rhs = a.multiply(&a.star(&y).unwrap(), &a.star(&x).unwrap()).unwrap();
                prop_assert!(lhs.sub(&rhs).unwrap().norm_max() < 1e-8);
                if name == "ising" {
                    let yx = a.multiply(&y, &x).unwrap();
                    prop_assert!((a.phi(&xy).unwrap() - a.phi(&yx).unwrap()).norm() < 1e-8);
                }
                let xx = a.trace_form(&x, &x).unwrap();
                prop_assert!(xx.re >= -1e-12 && xx.im.abs() < 1e-9);
            }
        }
    }
}
