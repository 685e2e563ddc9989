//! Block decomposition of the tube algebra and the relative Drinfeld
//! commutant it classifies.
//!
//! Each minimal central projection `z` of `Tube(C, D)` carries a system of
//! matrix units `e_{(λ,i),(μ,j)}`; the half-braiding of the block is read
//! off their components through
//!
//! ```text
//! e_{(λ,i),(μ,j)} = d(σ) / (dim C √(d(λ) d(μ))) Σ_β d(β) (λβ| E(β)_{(λ,i),(μ,j)} |βμ)
//! ```

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_data::Label;
use crate::half_braiding::{self, HalfBraiding};
use crate::hom::{Calculus, TensorWord};
use crate::linalg::{cluster_sorted, hermitian_eigen, nullspace, unitarity_defect};
use crate::tube::{TubeAlgebra, TubeElement};
use crate::{c, C64};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CommutantConfig {
    /// Eigenvalue gap separating clusters.
    pub cluster_tol: f64,
    /// Singular-value threshold for numerical rank.
    pub rank_tol: f64,
    pub seed: u64,
    /// Fresh random elements tried before an ambiguous clustering is reported.
    pub max_retries: usize,
}

impl Default for CommutantConfig {
    fn default() -> Self {
        Self { cluster_tol: 1e-5, rank_tol: 1e-6, seed: 0, max_retries: 5 }
    }
}

#[derive(Clone, Debug)]
pub struct SimpleBlock {
    pub z: TubeElement,
    pub size: usize,
    pub d_sigma: f64,
    /// `n_λ`, indexed by label of `D`.
    pub object_multiplicities: Vec<usize>,
    /// `(λ, i)` index of each matrix-unit row, sorted by label.
    pub components: Vec<Label>,
    /// `matrix_units[a][b] = e_{a,b}`.
    pub matrix_units: Vec<Vec<TubeElement>>,
}

/// Orthonormal basis of the center, from the commutation system `zx = xz`.
pub fn center_basis(a: &TubeAlgebra) -> Vec<TubeElement> {
    let n = a.dim();
    let left = a.structure_constants();
    let mut sys = DMatrix::<C64>::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            // (z e_i − e_i z) = Σ_j z_j (e_j e_i − e_i e_j)
            let col = left[j].column(i) - left[i].column(j);
            sys.view_mut((i * n, j), (n, 1)).copy_from(&col);
        }
    }
    let (basis, _) = nullspace(&sys, 1e-8 * (1.0 + crate::hom::max_abs(&sys)));
    basis.into_iter().map(|v| a.element(v).unwrap()).collect()
}

fn spectral_projections(
    a: &TubeAlgebra,
    h: &TubeElement,
    tol: f64,
) -> std::result::Result<Vec<(f64, TubeElement)>, f64> {
    let l = a.left_matrix(h).expect("same algebra");
    let (vals, vecs) = hermitian_eigen(&l);
    let clusters = cluster_sorted(&vals, tol)?;
    let one = a.unit();
    Ok(clusters
        .into_iter()
        .map(|r| {
            let v = vecs.columns(r.start, r.len());
            let p = v * v.adjoint();
            let mean = vals[r.clone()].iter().sum::<f64>() / r.len() as f64;
            (mean, a.element(p * &one.coeffs).unwrap())
        })
        .collect())
}

fn random_self_adjoint(a: &TubeAlgebra, span: &[TubeElement], rng: &mut ChaCha8Rng) -> TubeElement {
    // real and imaginary parts together span every self-adjoint element of the span
    let mut h = a.zero();
    for x in span {
        let xs = a.star(x).unwrap();
        let re = x.add(&xs).unwrap().scale(c(0.5, 0.0));
        let im = x.sub(&xs).unwrap().scale(c(0.0, -0.5));
        let r: f64 = rng.gen_range(-1.0..1.0);
        let s: f64 = rng.gen_range(-1.0..1.0);
        h = h.add(&re.scale(c(r, 0.0))).unwrap().add(&im.scale(c(s, 0.0))).unwrap();
    }
    h
}

/// Minimal central projections, from the spectral decomposition of left
/// multiplication by a random self-adjoint central element.
pub fn minimal_central_projections(a: &TubeAlgebra, cfg: &CommutantConfig) -> Result<Vec<TubeElement>> {
    let center = center_basis(a);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last_gap = f64::NAN;
    for _ in 0..cfg.max_retries {
        let h = random_self_adjoint(a, &center, &mut rng);
        match spectral_projections(a, &h, cfg.cluster_tol) {
            Ok(ps) if ps.len() == center.len() => {
                return Ok(ps.into_iter().map(|(_, z)| z).collect());
            }
            Ok(_) => last_gap = 0.0,
            Err(gap) => last_gap = gap,
        }
    }
    Err(Error::ClusteringAmbiguous { gap: last_gap, tol: cfg.cluster_tol })
}

/// `d(σ) = √(dim C · φ(z))`.
pub fn block_dimension(a: &TubeAlgebra, z: &TubeElement) -> Result<f64> {
    let p = a.phi(z)?;
    if p.re <= 0.0 || !p.re.is_finite() {
        return Err(Error::NonPositiveTrace(p.re));
    }
    Ok((a.sub.global_dim() * p.re).sqrt())
}

fn corner_rank(a: &TubeAlgebra, q: &TubeElement, rank_tol: f64) -> usize {
    let m = a.left_matrix(q).unwrap() * a.right_matrix(q).unwrap();
    let (null, _) = nullspace(&m, rank_tol);
    a.dim() - null.len()
}

/// Full block data for a minimal central projection: dimension, object
/// multiplicities and a system of matrix units.
pub fn matrix_units(a: &TubeAlgebra, z: &TubeElement, cfg: &CommutantConfig) -> Result<SimpleBlock> {
    let cat = a.category();
    let dim_c = a.sub.global_dim();
    let d_sigma = block_dimension(a, z)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);

    let mut mults = vec![0usize; cat.rank()];
    let mut corners = Vec::new();
    for l in cat.labels() {
        let q = a.multiply(z, &a.object_projection(l))?;
        let t = a.phi(&q)?.re * dim_c / (d_sigma * cat.qdim(l));
        let n = t.round();
        if (t - n).abs() > 1e-6 || n < 0.0 {
            return Err(Error::RankInconsistency(format!(
                "trace of the {l}-corner gives non-integral multiplicity {t}"
            )));
        }
        let n = n as usize;
        let rank = corner_rank(a, &q, cfg.rank_tol);
        if rank != n * n {
            return Err(Error::RankInconsistency(format!("{l}-corner has dimension {rank}, expected {}", n * n)));
        }
        mults[l.0] = n;
        if n > 0 {
            corners.push((l, n, q));
        }
    }
    let from_objects: f64 = cat.labels().map(|l| mults[l.0] as f64 * cat.qdim(l)).sum();
    if (from_objects - d_sigma).abs() > 1e-6 {
        return Err(Error::DimensionMismatch { from_trace: d_sigma, from_objects });
    }

    // minimal projections f_{(λ,i)}
    let basis: Vec<TubeElement> = (0..a.dim()).map(|k| a.basis_element(k)).collect();
    let mut components = Vec::new();
    let mut diag: Vec<TubeElement> = Vec::new();
    for (l, n, q) in &corners {
        if *n == 1 {
            components.push(*l);
            diag.push(q.clone());
            continue;
        }
        let mut found = None;
        for _ in 0..cfg.max_retries {
            let g = random_self_adjoint(a, &basis, &mut rng);
            let g = a.multiply(q, &a.multiply(&g, q)?)?;
            // shift the corner spectrum away from the zero eigenvalue of (1 − q)A
            let shift = 2.0 + 2.0 * crate::hom::max_abs(&a.left_matrix(&g)?) * a.dim() as f64;
            let g = g.add(&q.scale(c(shift, 0.0)))?;
            if let Ok(ps) = spectral_projections(a, &g, cfg.cluster_tol) {
                let fs: Vec<TubeElement> = ps.into_iter().filter(|(v, _)| *v > shift / 2.0).map(|(_, f)| f).collect();
                if fs.len() == *n {
                    found = Some(fs);
                    break;
                }
            }
        }
        let fs = found.ok_or(Error::ClusteringAmbiguous { gap: f64::NAN, tol: cfg.cluster_tol })?;
        for f in fs {
            components.push(*l);
            diag.push(f);
        }
    }

    // partial isometries e_{k0}
    let size = diag.len();
    let f0 = &diag[0];
    let phi_f0 = a.phi(f0)?.re;
    let mut col0 = vec![f0.clone()];
    for fk in &diag[1..] {
        let mut best: Option<(f64, TubeElement)> = None;
        for b in &basis {
            let v = a.multiply(fk, &a.multiply(b, f0)?)?;
            let nrm = a.trace_form(&v, &v)?.re;
            if best.as_ref().is_none_or(|(m, _)| nrm > *m + 1e-12) {
                best = Some((nrm, v));
            }
        }
        let (nrm, v) = best.unwrap();
        if nrm <= 1e-12 {
            return Err(Error::RankInconsistency("corners of one block are not linked".into()));
        }
        col0.push(v.scale(c((phi_f0 / nrm).sqrt(), 0.0)));
    }
    let row0: Vec<TubeElement> = col0.iter().map(|e| a.star(e).unwrap()).collect();
    let mut units = vec![Vec::with_capacity(size); size];
    for (k, row) in units.iter_mut().enumerate() {
        for l in 0..size {
            row.push(if l == 0 { col0[k].clone() } else { a.multiply(&col0[k], &row0[l])? });
        }
    }
    units[0][0] = f0.clone();

    Ok(SimpleBlock { z: z.clone(), size, d_sigma, object_multiplicities: mults, components, matrix_units: units })
}

/// Largest defect of `e_{ab} e_{cd} = δ_{bc} e_{ad}`, `e_{ab}* = e_{ba}` and `Σ e_{aa} = z`.
pub fn matrix_unit_residual(a: &TubeAlgebra, b: &SimpleBlock) -> f64 {
    let n = b.size;
    let e = &b.matrix_units;
    let mut worst: f64 = 0.0;
    let mut sum = a.zero();
    for i in 0..n {
        sum = sum.add(&e[i][i]).unwrap();
        for j in 0..n {
            let s = a.star(&e[i][j]).unwrap();
            worst = worst.max(s.sub(&e[j][i]).unwrap().norm_max());
            for k in 0..n {
                for l in 0..n {
                    let p = a.multiply(&e[i][j], &e[k][l]).unwrap();
                    let expect = if j == k { e[i][l].clone() } else { a.zero() };
                    worst = worst.max(p.sub(&expect).unwrap().norm_max());
                }
            }
        }
    }
    worst.max(sum.sub(&b.z).unwrap().norm_max())
}

/// Reads `E(β)_{(λ,i),(μ,j)}` off the matrix units.
pub fn extract_half_braiding(a: &TubeAlgebra, b: &SimpleBlock) -> Result<HalfBraiding> {
    let cat = a.category();
    let dim_c = a.sub.global_dim();
    let betas: Vec<Label> = a.sub.members().to_vec();
    let n = b.size;
    let mut e = Vec::with_capacity(betas.len());
    for &beta in &betas {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let li = b.components[i];
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let lj = b.components[j];
                let scale = dim_c * (cat.qdim(li) * cat.qdim(lj)).sqrt() / (b.d_sigma * cat.qdim(beta));
                let m = a.component(&b.matrix_units[i][j], li, beta, lj)?;
                row.push(m.scale(c(scale, 0.0)));
            }
            rows.push(row);
        }
        e.push(rows);
    }
    let hb = HalfBraiding { components: b.components.clone(), betas, e };
    for bi in 0..hb.betas.len() {
        let defect = unitarity_defect(&hb.assembled(&a.calc, bi));
        if defect > 1e-7 {
            return Err(Error::Extraction(format!("E({}) has unitarity defect {defect:e}", hb.betas[bi])));
        }
    }
    Ok(hb)
}

/// Matrix units `e(E)` built from a half-braiding by the defining formula.
pub fn matrix_units_from_half_braiding(a: &TubeAlgebra, hb: &HalfBraiding) -> Result<Vec<Vec<TubeElement>>> {
    let cat = a.category();
    let dim_c = a.sub.global_dim();
    let d_sigma = hb.dim(cat);
    let n = hb.components.len();
    let mut out = vec![Vec::with_capacity(n); n];
    for (i, row) in out.iter_mut().enumerate() {
        let li = hb.components[i];
        for j in 0..n {
            let lj = hb.components[j];
            let mut acc = a.zero();
            for (bi, &beta) in hb.betas.iter().enumerate() {
                let s = d_sigma * cat.qdim(beta) / (dim_c * (cat.qdim(li) * cat.qdim(lj)).sqrt());
                let x = a.from_morphism(li, beta, lj, &hb.e[bi][i][j])?;
                acc = acc.add(&x.scale(c(s, 0.0)))?;
            }
            row.push(acc);
        }
    }
    Ok(out)
}

/// Cheap invariant of an equivalence class: dimension, multiplicities and
/// traces of `E(β)` per fusion channel.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassKey {
    pub d_micro: i64,
    pub multiplicities: Vec<usize>,
    pub signature: Vec<[i64; 2]>,
}

pub fn class_key(calc: &Calculus, hb: &HalfBraiding) -> ClassKey {
    let cat = calc.category();
    ClassKey {
        d_micro: (hb.dim(cat) * 1e6).round() as i64,
        multiplicities: hb.object_multiplicities(cat.rank()),
        signature: hb.signature(calc),
    }
}

#[derive(Clone, Debug)]
pub struct Commutant {
    pub blocks: Vec<SimpleBlock>,
    pub half_braidings: Vec<HalfBraiding>,
}

/// Minimal central projections, matrix units and half-braidings, in the
/// deterministic order of [`ClassKey`].
pub fn decompose(a: &TubeAlgebra, cfg: &CommutantConfig) -> Result<Commutant> {
    let zs = minimal_central_projections(a, cfg)?;
    let mut items = Vec::with_capacity(zs.len());
    for z in &zs {
        let b = matrix_units(a, z, cfg)?;
        let hb = extract_half_braiding(a, &b)?;
        items.push((class_key(&a.calc, &hb), b, hb));
    }
    items.sort_by(|x, y| x.0.cmp(&y.0));
    let (blocks, half_braidings) = items.into_iter().map(|(_, b, h)| (b, h)).unzip();
    Ok(Commutant { blocks, half_braidings })
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    /// `n[i][j][k] = N_{ij}^k`.
    pub n: Vec<Vec<Vec<usize>>>,
    pub dims: Vec<f64>,
    pub unit: usize,
    pub conjugates: Vec<usize>,
    pub unit_law: bool,
    pub duality: bool,
    pub associative: bool,
    pub dimension_defect: f64,
    /// Largest distance of a soft hom dimension from its integer value.
    pub rounding_gap: f64,
    pub borderline_warnings: Vec<String>,
}

fn hom_dim(
    calc: &Calculus,
    h1: &HalfBraiding,
    h2: &HalfBraiding,
    rank_tol: f64,
    gap: &mut f64,
    warn: &mut Vec<String>,
    what: impl FnOnce() -> String,
) -> Result<usize> {
    let hs = half_braiding::hom(calc, h1, h2, rank_tol)?;
    *gap = gap.max((hs.soft_dim - hs.dim as f64).abs());
    if hs.borderline {
        warn.push(what());
    }
    Ok(hs.dim)
}

/// `N_{ij}^k = dim Hom(σ_i σ_j, σ_k)` with unit, duality and associativity checks.
pub fn fusion_table(calc: &Calculus, hbs: &[HalfBraiding], rank_tol: f64) -> Result<FusionTable> {
    let cat = calc.category();
    let m = hbs.len();
    let dims: Vec<f64> = hbs.iter().map(|h| h.dim(cat)).collect();
    let mut gap: f64 = 0.0;
    let mut warn = Vec::new();

    let trivial = HalfBraiding::trivial(calc, &hbs[0].betas);
    let mut unit = None;
    for (k, h) in hbs.iter().enumerate() {
        if hom_dim(calc, &trivial, h, rank_tol, &mut gap, &mut warn, || format!("unit vs {k}"))? == 1 {
            unit = Some(k);
        }
    }
    let unit = unit.ok_or_else(|| Error::Extraction("no block is equivalent to the trivial half-braiding".into()))?;

    let mut n = vec![vec![vec![0usize; m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            let t = half_braiding::tensor(calc, &hbs[i], &hbs[j])?;
            for k in 0..m {
                n[i][j][k] = hom_dim(calc, &t, &hbs[k], rank_tol, &mut gap, &mut warn, || format!("N[{i}][{j}][{k}]"))?;
            }
        }
    }

    let mut conjugates = vec![usize::MAX; m];
    for i in 0..m {
        let cj = half_braiding::conjugate(calc, &hbs[i]);
        for k in 0..m {
            if hom_dim(calc, &cj, &hbs[k], rank_tol, &mut gap, &mut warn, || format!("conj {i} vs {k}"))? == 1 {
                conjugates[i] = k;
            }
        }
    }

    let unit_law =
        (0..m).all(|i| (0..m).all(|k| n[unit][i][k] == usize::from(i == k) && n[i][unit][k] == usize::from(i == k)));
    let duality = (0..m).all(|i| (0..m).all(|j| n[i][j][unit] == usize::from(j == conjugates[i])));
    let mut assoc_defect: i64 = 0;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let lhs: i64 = (0..m).map(|p| (n[i][j][p] * n[p][k][l]) as i64).sum();
                    let rhs: i64 = (0..m).map(|p| (n[j][k][p] * n[i][p][l]) as i64).sum();
                    assoc_defect = assoc_defect.max((lhs - rhs).abs());
                }
            }
        }
    }
    if assoc_defect > 0 {
        return Err(Error::Associativity(assoc_defect));
    }
    let mut dimension_defect: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let s: f64 = (0..m).map(|k| n[i][j][k] as f64 * dims[k]).sum();
            dimension_defect = dimension_defect.max((s - dims[i] * dims[j]).abs());
        }
    }
    Ok(FusionTable {
        n,
        dims,
        unit,
        conjugates,
        unit_law,
        duality,
        associative: true,
        dimension_defect,
        rounding_gap: gap,
        borderline_warnings: warn,
    })
}

/// Half-braidings of the simple objects of `D` with respect to the trivial
/// subcategory: the empty family.
pub fn vec_half_braidings(calc: &Calculus) -> Vec<HalfBraiding> {
    calc.category()
        .labels()
        .map(|l| {
            let mut id = calc.zero(&TensorWord(vec![l, Label::UNIT]), &TensorWord(vec![Label::UNIT, l]));
            id.matrix[(0, 0)] = c(1.0, 0.0);
            HalfBraiding { components: vec![l], betas: vec![Label::UNIT], e: vec![vec![vec![id]]] }
        })
        .collect()
}

/// Coefficient vector used to test centrality: `max_k ‖z e_k − e_k z‖`.
pub fn centrality_defect(a: &TubeAlgebra, z: &TubeElement) -> f64 {
    let l = a.left_matrix(z).unwrap();
    let r = a.right_matrix(z).unwrap();
    crate::hom::max_abs(&(l - r))
}

pub fn projection_defect(a: &TubeAlgebra, z: &TubeElement) -> f64 {
    let sq = a.multiply(z, z).unwrap().sub(z).unwrap().norm_max();
    let st = a.star(z).unwrap().sub(z).unwrap().norm_max();
    sq.max(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::{catalog, full_subcategory, subcategory};
    use crate::half_braiding::verify;
    use crate::tube::build_tube;
    use std::sync::Arc;

    fn tube(name: &str, members: Option<&[usize]>) -> TubeAlgebra {
        let d = Arc::new(catalog::load(name).unwrap());
        let sub = match members {
            None => full_subcategory(d),
            Some(m) => subcategory(d, m.iter().map(|&i| Label(i))).unwrap(),
        };
        build_tube(&sub).unwrap()
    }

    #[test]
    fn center_dimensions() {
        assert_eq!(center_basis(&tube("ising", Some(&[0]))).len(), 3);
        assert_eq!(center_basis(&tube("vec_z2", None)).len(), 4);
        assert_eq!(center_basis(&tube("ising", None)).len(), 9);
        assert_eq!(center_basis(&tube("ising", Some(&[0, 2]))).len(), 6);
        assert_eq!(center_basis(&tube("fibonacci", None)).len(), 4);
    }

    #[test]
    fn braiding_matrix_units_are_matrix_units() {
        let a = tube("fibonacci", None);
        let betas: Vec<Label> = a.sub.members().to_vec();
        for s in [0, 1] {
            for rev in [false, true] {
                let hb = HalfBraiding::from_braiding(&a.calc, Label(s), &betas, rev).unwrap();
                let e = matrix_units_from_half_braiding(&a, &hb).unwrap();
                let p = &e[0][0];
                let sq = a.multiply(p, p).unwrap();
                assert!(sq.sub(p).unwrap().norm_max() < 1e-9, "s={s} rev={rev}");
                assert!(centrality_defect(&a, p) < 1e-9);
                let d = block_dimension(&a, p).unwrap();
                assert!((d - hb.dim(a.category())).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn decomposition_of_catalog_pairs() {
        let cfg = CommutantConfig::default();
        let cases: Vec<(&str, Option<&[usize]>, usize, f64)> = vec![
            ("ising", Some(&[0]), 3, 4.0),
            ("vec_z2", None, 4, 4.0),
            ("ising", Some(&[0, 2]), 6, 8.0),
            ("ising", None, 9, 16.0),
            ("fibonacci", None, 4, (1.0 + ((1.0 + 5f64.sqrt()) / 2.0).powi(2)).powi(2)),
        ];
        for (name, m, count, total) in cases {
            let a = tube(name, m);
            let com = decompose(&a, &cfg).unwrap();
            assert_eq!(com.blocks.len(), count, "{name} {m:?}");
            let s: f64 = com.blocks.iter().map(|b| b.d_sigma.powi(2)).sum();
            assert!((s - total).abs() < 1e-6, "{name} {m:?}: {s}");
            let mut zsum = a.zero();
            for (b, hb) in com.blocks.iter().zip(&com.half_braidings) {
                assert!(matrix_unit_residual(&a, b) < 1e-8, "{name} {m:?}");
                assert!(projection_defect(&a, &b.z) < 1e-8);
                assert!(centrality_defect(&a, &b.z) < 1e-8);
                assert!(verify(&a.calc, hb, 1e-7).pass, "{name} {m:?}");
                assert_eq!(half_braiding::hom(&a.calc, hb, hb, 1e-6).unwrap().dim, 1);
                zsum = zsum.add(&b.z).unwrap();
            }
            assert!(zsum.sub(&a.unit()).unwrap().norm_max() < 1e-8);
            for i in 0..com.blocks.len() {
                for j in 0..i {
                    let hs = &com.half_braidings;
                    assert_eq!(half_braiding::hom(&a.calc, &hs[i], &hs[j], 1e-6).unwrap().dim, 0);
                }
            }
        }
    }

    #[test]
    fn ising_center_has_one_block_of_size_two() {
        let a = tube("ising", None);
        let com = decompose(&a, &CommutantConfig::default()).unwrap();
        let mut sizes: Vec<usize> = com.blocks.iter().map(|b| b.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1, 1, 1, 1, 1, 1, 2]);
        assert_eq!(sizes.iter().map(|s| s * s).sum::<usize>(), 12);
    }

    #[test]
    fn pointed_double_signs() {
        let a = tube("vec_z2", None);
        let com = decompose(&a, &CommutantConfig::default()).unwrap();
        let g = Label(1);
        let mut seen = Vec::new();
        for hb in &com.half_braidings {
            let bi = hb.beta_index(g).unwrap();
            let v = hb.e[bi][0][0].matrix[(0, 0)];
            assert!((v.re.abs() - 1.0).abs() < 1e-9 && v.im.abs() < 1e-9);
            seen.push((hb.components[0].0, v.re.round() as i64));
        }
        seen.sort();
        assert_eq!(seen, vec![(0, -1), (0, 1), (1, -1), (1, 1)]);
        let ft = fusion_table(&a.calc, &com.half_braidings, 1e-6).unwrap();
        // Z2 × Z2: every object squares to the unit
        for i in 0..4 {
            assert_eq!(ft.n[i][i][ft.unit], 1);
            assert_eq!(ft.conjugates[i], i);
        }
    }

    #[test]
    fn vec_subcategory_recovers_fusion_ring() {
        let a = tube("fibonacci", Some(&[0]));
        let com = decompose(&a, &CommutantConfig::default()).unwrap();
        let ft = fusion_table(&a.calc, &com.half_braidings, 1e-6).unwrap();
        let labels: Vec<usize> = com.half_braidings.iter().map(|h| h.components[0].0).collect();
        let ring = &a.category().ring;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(ft.n[i][j][k], ring.mult(Label(labels[i]), Label(labels[j]), Label(labels[k])));
                }
            }
        }
    }

    #[test]
    fn fusion_tables_of_centers() {
        let cfg = CommutantConfig::default();
        for (name, m, count) in [("ising", None, 9usize), ("ising", Some(&[0usize, 2][..]), 6), ("fibonacci", None, 4)]
        {
            let a = tube(name, m);
            let com = decompose(&a, &cfg).unwrap();
            let ft = fusion_table(&a.calc, &com.half_braidings, 1e-6).unwrap();
            assert_eq!(ft.n.len(), count);
            assert!(ft.unit_law && ft.duality && ft.associative, "{name}");
            assert!(ft.dimension_defect < 1e-6, "{name}: {}", ft.dimension_defect);
            assert!(ft.rounding_gap < 0.4);
            for (i, hb) in com.half_braidings.iter().enumerate() {
                let cj = half_braiding::conjugate(&a.calc, hb);
                assert!(verify(&a.calc, &cj, 1e-7).pass);
                assert!((cj.dim(a.category()) - hb.dim(a.category())).abs() < 1e-9);
                let cc = half_braiding::conjugate(&a.calc, &cj);
                assert_eq!(half_braiding::hom(&a.calc, &cc, hb, 1e-6).unwrap().dim, 1);
                assert!((com.blocks[ft.conjugates[i]].d_sigma - com.blocks[i].d_sigma).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn tensor_products_pass_bfe() {
        let a = tube("ising", None);
        let com = decompose(&a, &CommutantConfig::default()).unwrap();
        let hs = &com.half_braidings;
        for i in 0..hs.len() {
            for j in 0..hs.len() {
                let t = half_braiding::tensor(&a.calc, &hs[i], &hs[j]).unwrap();
                assert!(verify(&a.calc, &t, 1e-7).pass);
            }
        }
    }

    #[test]
    fn determinism() {
        let cfg = CommutantConfig { seed: 7, ..Default::default() };
        let a = tube("ising", None);
        let x = decompose(&a, &cfg).unwrap();
        let y = decompose(&a, &cfg).unwrap();
        for (p, q) in x.blocks.iter().zip(&y.blocks) {
            assert_eq!(p.z.coeffs, q.z.coeffs);
        }
    }
}
