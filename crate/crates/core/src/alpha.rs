//! Dimension and count level checks for α-induction from a modular category
//! `C` along a commutative extension `θ`.
//!
//! Global dimensions of the induced categories default to
//! `dim D± = dim C / d(θ)`, `dim D⁰ = dim C / d(θ)²` and `dim D = dim C`.
//! These are the only values compatible with the center identity
//! `(dim D⁺)² = dim C · dim D⁰` and the two relative commutant identities
//! below once `d(θ)² = dim C / dim D⁰` is imposed; supplied values override
//! them and are then cross-checked.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{c, C64};

const MODULAR_TOL: f64 = 1e-9;
const VERLINDE_TOL: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-6;
const COMMUTATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ModularData {
    pub name: String,
    pub s: DMatrix<C64>,
    /// Diagonal of `T`.
    pub t: DVector<C64>,
    pub central_charge: Option<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn value(&self) -> C64 {
        match *self {
            Entry::Real(x) => c(x, 0.0),
            Entry::Complex([re, im]) => c(re, im),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModularFile {
    #[serde(default)]
    name: String,
    #[serde(rename = "S")]
    s: Vec<Vec<Entry>>,
    #[serde(rename = "T")]
    t: Vec<Entry>,
    #[serde(default)]
    central_charge: Option<f64>,
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.t.len()
    }

    /// `d_λ = S_{0λ} / S_{00}`.
    pub fn qdims(&self) -> Vec<f64> {
        let s00 = self.s[(0, 0)].re;
        (0..self.rank()).map(|l| self.s[(0, l)].re / s00).collect()
    }

    pub fn global_dim(&self) -> f64 {
        self.qdims().iter().map(|d| d * d).sum()
    }

    /// Verlinde multiplicities `N_{ab}^c` before rounding.
    pub fn verlinde(&self, a: usize, b: usize, cc: usize) -> C64 {
        (0..self.rank()).map(|m| self.s[(a, m)] * self.s[(b, m)] * self.s[(cc, m)].conj() / self.s[(0, m)]).sum()
    }
}

/// Parses a modular data file: `S` rows and the diagonal of `T`, each entry
/// a real number or a `[re, im]` pair.
pub fn load_modular(bytes: &[u8]) -> Result<ModularData> {
    let f: ModularFile = serde_json::from_slice(bytes)?;
    let n = f.t.len();
    if n == 0 || f.s.len() != n || f.s.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("S must be {n}x{n} to match T")));
    }
    let s = DMatrix::from_fn(n, n, |i, j| f.s[i][j].value());
    if s[(0, 0)].re <= 0.0 {
        return Err(Error::Shape("S_00 must be positive".into()));
    }
    let t = DVector::from_iterator(n, f.t.iter().map(Entry::value));
    Ok(ModularData { name: f.name, s, t, central_charge: f.central_charge })
}

/// `SU(2)_k` with labels `0..=k` (twice the spin) and `T` normalized by `c/24`,
/// so that `(ST)³ = S²` holds exactly.
pub fn su2_level_k(k: usize) -> Result<ModularData> {
    if k == 0 {
        return Err(Error::Shape("level must be at least 1".into()));
    }
    let n = k + 1;
    let kk = (k + 2) as f64;
    let norm = (2.0 / kk).sqrt();
    let s = DMatrix::from_fn(n, n, |j, l| c(norm * (PI * ((j + 1) * (l + 1)) as f64 / kk).sin(), 0.0));
    let cc = 3.0 * k as f64 / kk;
    let t = DVector::from_fn(n, |j, _| {
        let h = (j * (j + 2)) as f64 / (4.0 * kk);
        C64::from_polar(1.0, 2.0 * PI * (h - cc / 24.0))
    });
    Ok(ModularData { name: format!("su2_{k}"), s, t, central_charge: Some(cc) })
}

/// Builtin `su2:k` or a JSON file path.
pub fn resolve_modular(arg: &str) -> Result<ModularData> {
    if let Some(k) = arg.strip_prefix("su2:") {
        let k: usize =
            k.parse().map_err(|_| Error::Parse { location: arg.into(), message: "level is not an integer".into() })?;
        return su2_level_k(k);
    }
    load_modular(&std::fs::read(arg)?)
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularChecks {
    pub rank: usize,
    pub qdims: Vec<f64>,
    pub global_dim: f64,
    pub s_unitarity: f64,
    pub s_symmetry: f64,
    /// Best phase `p` with `(ST)³ ≈ p S²`, as `[re, im]`.
    pub st_phase: [f64; 2],
    pub st_cubed_residual: f64,
    /// `S² = C` for this label permutation.
    pub charge_conjugation: Vec<usize>,
    pub s_squared_residual: f64,
    pub verlinde_integrality: f64,
    pub verlinde_min: i64,
    pub pass: bool,
}

pub fn check_modular(md: &ModularData) -> ModularChecks {
    let n = md.rank();
    let s = &md.s;
    let id = DMatrix::<C64>::identity(n, n);
    let s_unitarity = max_abs(&(s.adjoint() * s - &id));
    let s_symmetry = max_abs(&(s - s.transpose()));

    let st = s * DMatrix::from_diagonal(&md.t);
    let st3 = &st * &st * &st;
    let s2 = s * s;
    let num: C64 = st3.iter().zip(s2.iter()).map(|(a, b)| a * b.conj()).sum();
    let den: f64 = s2.iter().map(|b| b.norm_sqr()).sum();
    let phase = num / den;
    let st_cubed_residual = max_abs(&(st3 - &s2 * phase)).max((phase.norm() - 1.0).abs());

    let charge_conjugation: Vec<usize> =
        (0..n).map(|i| (0..n).max_by(|&a, &b| s2[(i, a)].norm().total_cmp(&s2[(i, b)].norm())).unwrap()).collect();
    let perm = DMatrix::from_fn(n, n, |i, j| if charge_conjugation[i] == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
    let mut s_squared_residual = max_abs(&(&s2 - perm));
    let mut seen = charge_conjugation.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != n {
        s_squared_residual = f64::INFINITY;
    }

    let mut verlinde_integrality: f64 = 0.0;
    let mut verlinde_min = i64::MAX;
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let v = md.verlinde(a, b, cc);
                let r = v.re.round();
                verlinde_integrality = verlinde_integrality.max((v - c(r, 0.0)).norm());
                verlinde_min = verlinde_min.min(r as i64);
            }
        }
    }

    let pass = s_unitarity < MODULAR_TOL
        && s_symmetry < MODULAR_TOL
        && st_cubed_residual < MODULAR_TOL
        && s_squared_residual < MODULAR_TOL
        && verlinde_integrality < VERLINDE_TOL
        && verlinde_min >= 0;
    ModularChecks {
        rank: n,
        qdims: md.qdims(),
        global_dim: md.global_dim(),
        s_unitarity,
        s_symmetry,
        st_phase: [phase.re, phase.im],
        st_cubed_residual,
        charge_conjugation,
        s_squared_residual,
        verlinde_integrality,
        verlinde_min,
        pass,
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Counts {
    pub d0: usize,
    pub dplus: usize,
    pub dminus: usize,
    pub dfull: usize,
    /// Simple objects of the center of `D⁺`, if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuppliedDims {
    pub d0: Option<f64>,
    pub dplus: Option<f64>,
    pub dminus: Option<f64>,
    pub dfull: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSummary {
    #[serde(default)]
    pub name: String,
    pub theta: Vec<usize>,
    #[serde(rename = "Z")]
    pub z: Vec<Vec<i64>>,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<SuppliedDims>,
}

pub fn load_extension(bytes: &[u8]) -> Result<ExtensionSummary> {
    Ok(serde_json::from_slice(bytes)?)
}

/// The trivial extension `θ = 0` with `Z = 1` and all induced categories equal to `C`.
pub fn trivial_extension(rank: usize) -> ExtensionSummary {
    ExtensionSummary {
        name: "trivial".into(),
        theta: vec![0],
        z: (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect(),
        counts: Counts { d0: rank, dplus: rank, dminus: rank, dfull: rank, center: None },
        dims: None,
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Dims {
    pub c: f64,
    pub d0: f64,
    pub dplus: f64,
    pub dminus: f64,
    pub dfull: f64,
    /// Which of `d0, dplus, dminus, dfull` were supplied rather than derived.
    pub supplied: [bool; 4],
}

fn dims(md: &ModularData, ext: &ExtensionSummary, d_theta: f64) -> Dims {
    let cdim = md.global_dim();
    let sup = ext.dims.unwrap_or_default();
    Dims {
        c: cdim,
        d0: sup.d0.unwrap_or(cdim / (d_theta * d_theta)),
        dplus: sup.dplus.unwrap_or(cdim / d_theta),
        dminus: sup.dminus.unwrap_or(cdim / d_theta),
        dfull: sup.dfull.unwrap_or(cdim),
        supplied: [sup.d0.is_some(), sup.dplus.is_some(), sup.dminus.is_some(), sup.dfull.is_some()],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / |lhs|`.
    pub residual: f64,
    /// Holds for any input; reported for completeness.
    pub tautological: bool,
    pub pass: bool,
}

fn identity(name: &'static str, statement: &'static str, lhs: f64, rhs: f64, tautological: bool) -> IdentityCheck {
    let residual = if lhs == rhs { 0.0 } else { (lhs - rhs).abs() / lhs.abs() };
    IdentityCheck { name, statement, lhs, rhs, residual, tautological, pass: residual < IDENTITY_TOL }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionChecks {
    pub z_shape_ok: bool,
    pub z_vacuum: i64,
    pub z_nonnegative: bool,
    pub zs_residual: f64,
    pub zt_residual: f64,
    /// `θ = ⊕_λ Z_{0λ} λ`.
    pub theta_matches_vacuum_row: bool,
    pub d_theta: f64,
    pub pass: bool,
}

pub fn check_extension(md: &ModularData, ext: &ExtensionSummary) -> Result<ExtensionChecks> {
    let n = md.rank();
    if let Some(&bad) = ext.theta.iter().find(|&&l| l >= n) {
        return Err(Error::UnknownLabel(bad));
    }
    let z_shape_ok = ext.z.len() == n && ext.z.iter().all(|r| r.len() == n);
    if !z_shape_ok {
        return Err(Error::Shape(format!("Z must be {n}x{n}")));
    }
    let z = DMatrix::from_fn(n, n, |i, j| c(ext.z[i][j] as f64, 0.0));
    let zs_residual = max_abs(&(&z * &md.s - &md.s * &z));
    let tm = DMatrix::from_diagonal(&md.t);
    let zt_residual = max_abs(&(&z * &tm - &tm * &z));
    let z_vacuum = ext.z[0][0];
    let z_nonnegative = ext.z.iter().flatten().all(|&x| x >= 0);
    let mut theta_mult = vec![0i64; n];
    for &l in &ext.theta {
        theta_mult[l] += 1;
    }
    let theta_matches_vacuum_row = theta_mult == ext.z[0];
    let qd = md.qdims();
    let d_theta = ext.theta.iter().map(|&l| qd[l]).sum();
    let pass = z_vacuum == 1
        && z_nonnegative
        && zs_residual < COMMUTATION_TOL
        && zt_residual < COMMUTATION_TOL
        && theta_matches_vacuum_row;
    Ok(ExtensionChecks {
        z_shape_ok,
        z_vacuum,
        z_nonnegative,
        zs_residual,
        zt_residual,
        theta_matches_vacuum_row,
        d_theta,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub dims: Dims,
    pub dimension: IdentityCheck,
    /// `|Irr(C)| · |Irr(D⁰)|`.
    pub predicted_center_count: usize,
    pub supplied_center_count: Option<usize>,
    pub count_pass: bool,
    pub pass: bool,
}

/// The center of `D⁺` is `C ⊠ (D⁰)^opp`; compares dimensions and, when
/// supplied, simple object counts.
pub fn check_center_theorem(md: &ModularData, ext: &ExtensionSummary) -> Result<CenterReport> {
    let d_theta = check_extension(md, ext)?.d_theta;
    let dm = dims(md, ext, d_theta);
    let dimension = identity(
        "center_of_chiral_extension",
        "dim Z(D+) = (dim D+)^2 equals dim C * dim D0",
        dm.dplus * dm.dplus,
        dm.c * dm.d0,
        false,
    );
    let predicted_center_count = md.rank() * ext.counts.d0;
    let count_pass = ext.counts.center.is_none_or(|c| c == predicted_center_count);
    Ok(CenterReport {
        dims: dm,
        pass: dimension.pass && count_pass,
        dimension,
        predicted_center_count,
        supplied_center_count: ext.counts.center,
        count_pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedCounts {
    pub c: usize,
    /// `(D⁺)′∩D ≃ C ⊠ D⁻`.
    pub dplus_in_d: usize,
    /// `(D⁰)′∩D⁺ ≃ D⁺ ⊠ D⁰`.
    pub d0_in_dplus: usize,
    /// `(D⁰)′∩D ≃ D⁺ ⊠ D⁻`.
    pub d0_in_d: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeCommutantReport {
    pub dims: Dims,
    pub identities: Vec<IdentityCheck>,
    /// `|dim D - dim C| / dim C`; zero iff all identities can hold at once.
    pub full_dim_vs_c: f64,
    pub counts: Counts,
    pub count_checks: Vec<CountCheck>,
    pub predicted: PredictedCounts,
    pub pass: bool,
}

/// Relative commutants of `D⁺ ⊂ D`, `D⁰ ⊂ D⁺` and `D⁰ ⊂ D` have dimension
/// `dim(sub) · dim(ambient)`; each is compared with the dimension of its
/// predicted Deligne product.
pub fn check_relative_commutant_theorems(md: &ModularData, ext: &ExtensionSummary) -> Result<RelativeCommutantReport> {
    let d_theta = check_extension(md, ext)?.d_theta;
    let dm = dims(md, ext, d_theta);
    let identities = vec![
        identity(
            "commutant_of_chiral_in_full",
            "dim D+ * dim D equals dim C * dim D-",
            dm.dplus * dm.dfull,
            dm.c * dm.dminus,
            false,
        ),
        identity(
            "commutant_of_ambichiral_in_chiral",
            "dim D0 * dim D+ equals dim D+ * dim D0",
            dm.d0 * dm.dplus,
            dm.dplus * dm.d0,
            true,
        ),
        identity(
            "commutant_of_ambichiral_in_full",
            "dim D0 * dim D equals dim D+ * dim D-",
            dm.d0 * dm.dfull,
            dm.dplus * dm.dminus,
            false,
        ),
    ];
    let k = ext.counts;
    let z_square_sum: i64 = ext.z.iter().flatten().map(|x| x * x).sum();
    let count_checks = vec![
        CountCheck { name: "chiral_counts_agree", statement: "|Irr(D+)| = |Irr(D-)|", pass: k.dplus == k.dminus },
        CountCheck {
            name: "count_ordering",
            statement: "|Irr(D0)| <= |Irr(D+-)| <= |Irr(D)|",
            pass: k.d0 <= k.dplus.min(k.dminus) && k.dplus.max(k.dminus) <= k.dfull,
        },
        CountCheck {
            name: "full_count_from_modular_invariant",
            statement: "|Irr(D)| = sum of Z_{lm}^2",
            pass: k.dfull as i64 == z_square_sum,
        },
    ];
    let full_dim_vs_c = (dm.dfull - dm.c).abs() / dm.c;
    let pass = identities.iter().all(|i| i.pass) && count_checks.iter().all(|c| c.pass);
    Ok(RelativeCommutantReport {
        dims: dm,
        identities,
        full_dim_vs_c,
        counts: k,
        count_checks,
        predicted: PredictedCounts {
            c: md.rank(),
            dplus_in_d: md.rank() * k.dminus,
            d0_in_dplus: k.dplus * k.d0,
            d0_in_d: k.dplus * k.dminus,
        },
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    pub modular_name: String,
    pub extension_name: String,
    pub modular: ModularChecks,
    pub extension: ExtensionChecks,
    pub center: CenterReport,
    pub relative_commutants: RelativeCommutantReport,
    pub pass: bool,
}

pub fn alpha_check(md: &ModularData, ext: &ExtensionSummary) -> Result<AlphaReport> {
    let modular = check_modular(md);
    let extension = check_extension(md, ext)?;
    let center = check_center_theorem(md, ext)?;
    let relative_commutants = check_relative_commutant_theorems(md, ext)?;
    let pass = modular.pass && extension.pass && center.pass && relative_commutants.pass;
    Ok(AlphaReport {
        modular_name: md.name.clone(),
        extension_name: ext.name.clone(),
        modular,
        extension,
        center,
        relative_commutants,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::catalog::E6_EXTENSION;

    fn e6() -> ExtensionSummary {
        load_extension(E6_EXTENSION.as_bytes()).unwrap()
    }

    #[test]
    fn low_levels_have_expected_dims() {
        let d1 = su2_level_k(1).unwrap().qdims();
        assert_eq!(d1.len(), 2);
        assert!((d1[1] - 1.0).abs() < 1e-12);
        let d2 = su2_level_k(2).unwrap().qdims();
        assert!((d2[1] - 2f64.sqrt()).abs() < 1e-12 && (d2[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generated_data_is_modular() {
        for k in 1..=12 {
            let md = su2_level_k(k).unwrap();
            let ch = check_modular(&md);
            assert!(ch.pass, "k={k}: {ch:?}");
            assert!((ch.st_phase[0] - 1.0).abs() < 1e-9);
            assert_eq!(ch.charge_conjugation, (0..=k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn verlinde_reproduces_su2_fusion_rules() {
        let k = 10;
        let md = su2_level_k(k).unwrap();
        for a in 0..=k {
            for b in 0..=k {
                for cc in 0..=k {
                    // truncated Clebsch–Gordan rule
                    let allowed = cc >= a.abs_diff(b) && cc <= (a + b).min(2 * k - a - b) && (a + b + cc) % 2 == 0;
                    let v = md.verlinde(a, b, cc);
                    assert!((v.re - f64::from(u8::from(allowed))).abs() < 1e-9 && v.im.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn file_round_trip_matches_generator() {
        let md = su2_level_k(3).unwrap();
        let s: Vec<Vec<[f64; 2]>> =
            (0..4).map(|i| (0..4).map(|j| [md.s[(i, j)].re, md.s[(i, j)].im]).collect()).collect();
        let t: Vec<[f64; 2]> = md.t.iter().map(|z| [z.re, z.im]).collect();
        let json = serde_json::json!({"name": "su2_3", "S": s, "T": t});
        let back = load_modular(json.to_string().as_bytes()).unwrap();
        assert!(max_abs(&(&back.s - &md.s)) < 1e-15);
        assert!(check_modular(&back).pass);
    }

    #[test]
    fn malformed_modular_file_is_rejected() {
        assert!(load_modular(br#"{"S": [[1.0, 0.0]], "T": [1.0]}"#).is_err());
        assert!(resolve_modular("su2:x").is_err());
        assert!(resolve_modular("su2:0").is_err());
    }

    #[test]
    fn e6_extension_is_consistent() {
        let md = su2_level_k(10).unwrap();
        let ext = e6();
        let ch = check_extension(&md, &ext).unwrap();
        assert!(ch.pass, "{ch:?}");
        assert!(ch.zs_residual < 1e-9 && ch.zt_residual < 1e-9);
        let d6 = (7.0 * PI / 12.0).sin() / (PI / 12.0).sin();
        assert!((ch.d_theta - (1.0 + d6)).abs() < 1e-12);
    }

    #[test]
    fn e6_identities_hold() {
        let md = su2_level_k(10).unwrap();
        let rep = alpha_check(&md, &e6()).unwrap();
        assert!(rep.pass, "{rep:#?}");
        assert!(rep.center.dimension.residual < 1e-12);
        let rc = &rep.relative_commutants;
        assert_eq!(
            (rc.predicted.c, rc.predicted.dplus_in_d, rc.predicted.d0_in_dplus, rc.predicted.d0_in_d),
            (11, 66, 18, 36)
        );
        assert!(rc.identities[1].tautological);
        assert!(rc.full_dim_vs_c < 1e-15);
    }

    #[test]
    fn trivial_extension_collapses_to_c() {
        for k in [1, 2, 5, 10] {
            let md = su2_level_k(k).unwrap();
            let rep = alpha_check(&md, &trivial_extension(k + 1)).unwrap();
            assert!(rep.pass);
            let d = rep.center.dims;
            for x in [d.d0, d.dplus, d.dminus, d.dfull] {
                assert!((x - d.c).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn corrupted_ambichiral_dimension_fails_center_identity() {
        let md = su2_level_k(10).unwrap();
        let mut ext = e6();
        let d_theta = check_extension(&md, &ext).unwrap().d_theta;
        let d0 = md.global_dim() / (d_theta * d_theta) * 1.1;
        ext.dims = Some(SuppliedDims { d0: Some(d0), ..Default::default() });
        let rep = check_center_theorem(&md, &ext).unwrap();
        assert!(!rep.pass);
        assert!((rep.dimension.residual - 0.1).abs() < 1e-9);
    }

    #[test]
    fn misstated_chiral_count_fails() {
        let md = su2_level_k(10).unwrap();
        let mut ext = e6();
        ext.counts.dminus = 5;
        let rep = check_relative_commutant_theorems(&md, &ext).unwrap();
        assert!(!rep.pass);
        assert!(!rep.count_checks[0].pass);
    }

    #[test]
    fn supplied_full_dimension_off_c_breaks_identities() {
        let md = su2_level_k(10).unwrap();
        let mut ext = e6();
        ext.dims = Some(SuppliedDims { dfull: Some(md.global_dim() * 1.5), ..Default::default() });
        let rep = check_relative_commutant_theorems(&md, &ext).unwrap();
        assert!((rep.full_dim_vs_c - 0.5).abs() < 1e-12);
        assert!(!rep.identities[0].pass && !rep.identities[2].pass && rep.identities[1].pass);
    }

    #[test]
    fn center_count_is_checked_when_supplied() {
        let md = su2_level_k(10).unwrap();
        let mut ext = e6();
        ext.counts.center = Some(33);
        assert!(check_center_theorem(&md, &ext).unwrap().pass);
        ext.counts.center = Some(34);
        assert!(!check_center_theorem(&md, &ext).unwrap().pass);
    }

    #[test]
    fn bad_z_is_flagged() {
        let md = su2_level_k(10).unwrap();
        let mut ext = e6();
        ext.z[1][1] = 1;
        let ch = check_extension(&md, &ext).unwrap();
        assert!(!ch.pass && ch.zs_residual > 1e-3);
        ext.theta.push(11);
        assert!(check_extension(&md, &ext).is_err());
    }
}
