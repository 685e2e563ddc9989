//! Pipelines behind each command-line subcommand, producing deterministic
//! serializable reports. Every report carries a flat list of named checks;
//! it passes iff all of them do.

use std::sync::Arc;

use serde::Serialize;

use crate::alpha::{self, AlphaReport, ExtensionSummary, ModularData};
use crate::commutant::{self, CommutantConfig, FusionTable};
use crate::error::{Error, Result};
use crate::fusion_data::{self, catalog, FusionCategory, Label, Subcategory, ValidationReport};
use crate::half_braiding::{self, HalfBraidingReport};
use crate::hom::{Calculus, MorphismDump};
use crate::oracle::{self, OracleConfig, StartReport};
use crate::tube::{self, TubeAlgebra, TubeChecks};

pub const AXIOM_TOL: f64 = 1e-8;
pub const PHI_UNIT_TOL: f64 = 1e-9;
pub const MATRIX_UNIT_TOL: f64 = 1e-8;
pub const DIMENSION_TOL: f64 = 1e-6;
pub const HALF_BRAIDING_TOL: f64 = 1e-7;

/// Inputs shared by all subcommands.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Catalog name or path of a category file.
    pub category: String,
    /// Members of the subcategory; the whole category when absent.
    pub sub: Option<Vec<usize>>,
    /// Overrides the validation tolerance and the half-braiding tolerance.
    pub tol: Option<f64>,
    pub commutant: CommutantConfig,
    /// Present iff the brute-force cross-check is enabled.
    pub oracle: Option<OracleConfig>,
}

impl RunConfig {
    pub fn new(category: impl Into<String>) -> Self {
        Self { category: category.into(), sub: None, tol: None, commutant: CommutantConfig::default(), oracle: None }
    }

    pub fn with_sub(mut self, sub: &[usize]) -> Self {
        self.sub = Some(sub.to_vec());
        self
    }

    pub fn check(&self) -> Result<()> {
        let tols = [
            ("tolerance", self.tol.unwrap_or(1.0)),
            ("cluster tolerance", self.commutant.cluster_tol),
            ("rank tolerance", self.commutant.rank_tol),
        ];
        // NaN fails this test too
        match tols.iter().find(|(_, x)| x.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)) {
            Some((what, x)) => Err(Error::Shape(format!("{what} must be positive, got {x}"))),
            None => Ok(()),
        }
    }

    fn hb_tol(&self) -> f64 {
        self.tol.unwrap_or(HALF_BRAIDING_TOL)
    }
}

/// Loads a catalog dataset by name, or else a category file by path.
pub fn load_category(arg: &str) -> Result<FusionCategory> {
    if catalog::source(arg).is_some() {
        return catalog::load(arg);
    }
    match std::fs::read(arg) {
        Ok(bytes) => fusion_data::load_category(&bytes),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound && !arg.contains(['/', '.']) => {
            Err(Error::UnknownCatalog(arg.to_owned()))
        }
        Err(e) => Err(e.into()),
    }
}

/// Loads the catalog extension `e6` or an extension file by path.
pub fn load_extension(arg: &str) -> Result<ExtensionSummary> {
    if arg == "e6" {
        return alpha::load_extension(catalog::E6_EXTENSION.as_bytes());
    }
    alpha::load_extension(&std::fs::read(arg)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub found: f64,
    /// `"<"`, `">"` or `"="`.
    pub relation: &'static str,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, found: f64, bound: f64) -> Self {
        Self { name: name.into(), found, relation: "<", bound, pass: found < bound }
    }

    pub fn above(name: impl Into<String>, found: f64, bound: f64) -> Self {
        Self { name: name.into(), found, relation: ">", bound, pass: found > bound }
    }

    pub fn equal(name: impl Into<String>, found: f64, expected: f64) -> Self {
        Self { name: name.into(), found, relation: "=", bound: expected, pass: found == expected }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::equal(name, f64::from(u8::from(ok)), 1.0)
    }
}

/// Common surface of all reports.
pub trait Report: Serialize {
    fn command(&self) -> &'static str;
    fn checks(&self) -> &[Check];
    fn pass(&self) -> bool {
        self.checks().iter().all(|c| c.pass)
    }
}

pub fn to_json<R: Report>(r: &R) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

pub fn to_text<R: Report>(r: &R) -> String {
    let mut s = format!("{}\n", r.command());
    for c in r.checks() {
        s.push_str(&format!(
            "  [{}] {} : {:e} {} {:e}\n",
            if c.pass { "pass" } else { "FAIL" },
            c.name,
            c.found,
            c.relation,
            c.bound
        ));
    }
    s.push_str(if r.pass() { "result: pass\n" } else { "result: FAIL\n" });
    s
}

fn input(cfg: &RunConfig) -> Result<(Arc<FusionCategory>, Subcategory)> {
    cfg.check()?;
    let mut cat = load_category(&cfg.category)?;
    if let Some(t) = cfg.tol {
        cat = cat.with_tolerance(t);
    }
    let cat = Arc::new(cat);
    let sub = match &cfg.sub {
        Some(m) => fusion_data::subcategory(cat.clone(), m.iter().map(|&i| Label(i)))?,
        None => fusion_data::full_subcategory(cat.clone()),
    };
    Ok((cat, sub))
}

fn members(sub: &Subcategory) -> Vec<usize> {
    sub.members().iter().map(|l| l.0).collect()
}

// validate

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub category: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub qdims: Vec<f64>,
    pub global_dim: f64,
    pub validation: ValidationReport,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for ValidateReport {
    fn command(&self) -> &'static str {
        "validate"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

pub fn run_validate(cfg: &RunConfig) -> Result<ValidateReport> {
    let (cat, _) = input(cfg)?;
    let v = fusion_data::validate(&cat);
    let t = v.tolerance;
    let mut checks = vec![
        Check::equal("fusion_ring_axioms_failures", v.ring_failures.len() as f64, 0.0),
        Check::below("pentagon", v.pentagon_residual, t),
        Check::below("f_unitarity", v.max_unitarity_defect, t),
        Check::below("f_trivial_on_unit_legs", v.unit_leg_residual, t),
        Check::below("qdim_perron_frobenius", v.qdim_pf_deviation, t),
        Check::below("qdim_unit_and_duals", v.qdim_unit_dual_deviation, t),
    ];
    if let Some(h) = v.hexagon_residual {
        checks.push(Check::below("hexagon", h, t));
    }
    Ok(ValidateReport {
        category: cat.name.clone(),
        rank: cat.rank(),
        labels: cat.labels().map(|l| cat.label_name(l).to_owned()).collect(),
        qdims: cat.qdim.clone(),
        global_dim: fusion_data::category_dim(&cat),
        pass: checks.iter().all(|c| c.pass),
        validation: v,
        checks,
    })
}

// tube

#[derive(Clone, Debug, Serialize)]
pub struct TubeReport {
    pub category: String,
    pub subcategory: Vec<usize>,
    pub dim: usize,
    pub dim_c: f64,
    pub dim_d: f64,
    pub axioms: TubeChecks,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for TubeReport {
    fn command(&self) -> &'static str {
        "tube"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

fn tube_checks(ax: &TubeChecks) -> Vec<Check> {
    vec![
        Check::equal("dimension_from_fusion_ring", ax.dim as f64, ax.dim_from_ring as f64),
        Check::below("associativity", ax.associativity, AXIOM_TOL),
        Check::below("unit", ax.unit, AXIOM_TOL),
        Check::below("star_involution", ax.star_involution, AXIOM_TOL),
        Check::below("star_antihomomorphism", ax.star_antihomomorphism, AXIOM_TOL),
        Check::below("phi_of_unit_equals_dim_d", ax.phi_unit, PHI_UNIT_TOL),
        Check::below("phi_modular_relation", ax.phi_modular, AXIOM_TOL),
        Check::below("basis_orthonormal_for_trace_form", ax.orthonormality, AXIOM_TOL),
        Check::above("trace_form_positive", ax.min_trace_form_eigenvalue, 0.0),
    ]
}

pub fn run_tube(cfg: &RunConfig) -> Result<TubeReport> {
    let (cat, sub) = input(cfg)?;
    let a = tube::build_tube(&sub)?;
    let axioms = tube::check_axioms(&a);
    let checks = tube_checks(&axioms);
    Ok(TubeReport {
        category: cat.name.clone(),
        subcategory: members(&sub),
        dim: a.dim(),
        dim_c: sub.global_dim(),
        dim_d: fusion_data::category_dim(&cat),
        axioms,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

// center

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionSummary {
    pub phi: f64,
    pub d_sigma: f64,
    pub centrality_defect: f64,
    pub projection_defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub category: String,
    pub subcategory: Vec<usize>,
    pub tube_dim: usize,
    pub center_dim: usize,
    pub projections: Vec<ProjectionSummary>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for CenterReport {
    fn command(&self) -> &'static str {
        "center"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

pub fn run_center(cfg: &RunConfig) -> Result<CenterReport> {
    let (cat, sub) = input(cfg)?;
    let a = tube::build_tube(&sub)?;
    let basis = commutant::center_basis(&a);
    let zs = commutant::minimal_central_projections(&a, &cfg.commutant)?;
    let centrality = basis.iter().map(|z| commutant::centrality_defect(&a, z)).fold(0.0, f64::max);
    let mut total = a.zero();
    let mut orth: f64 = 0.0;
    let mut projections = Vec::new();
    for (i, z) in zs.iter().enumerate() {
        total = total.add(z)?;
        for w in &zs[i + 1..] {
            orth = orth.max(a.multiply(z, w)?.norm_max());
        }
        projections.push(ProjectionSummary {
            phi: a.phi(z)?.re,
            d_sigma: commutant::block_dimension(&a, z)?,
            centrality_defect: commutant::centrality_defect(&a, z),
            projection_defect: commutant::projection_defect(&a, z),
        });
    }
    projections.sort_by(|x, y| x.d_sigma.total_cmp(&y.d_sigma).then(x.phi.total_cmp(&y.phi)));
    let checks = vec![
        Check::below("center_basis_central", centrality, AXIOM_TOL),
        Check::equal("minimal_projection_count", zs.len() as f64, basis.len() as f64),
        Check::below(
            "minimal_projections_central",
            projections.iter().map(|p| p.centrality_defect).fold(0.0, f64::max),
            MATRIX_UNIT_TOL,
        ),
        Check::below(
            "minimal_projections_self_adjoint_idempotent",
            projections.iter().map(|p| p.projection_defect).fold(0.0, f64::max),
            MATRIX_UNIT_TOL,
        ),
        Check::below("minimal_projections_orthogonal", orth, MATRIX_UNIT_TOL),
        Check::below("central_projections_sum_to_unit", total.sub(&a.unit())?.norm_max(), MATRIX_UNIT_TOL),
    ];
    Ok(CenterReport {
        category: cat.name.clone(),
        subcategory: members(&sub),
        tube_dim: a.dim(),
        center_dim: basis.len(),
        projections,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

// commutant

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub index: usize,
    pub size: usize,
    pub d_sigma: f64,
    /// `n_λ` by label of `D`.
    pub object_multiplicities: Vec<usize>,
    /// `σ` as a formal sum of label names, e.g. `"1+tau"`.
    pub object: String,
    pub matrix_unit_residual: f64,
    pub half_braiding: HalfBraidingReport,
    /// Rounded traces of `E(β)` per fusion channel.
    pub signature: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleComparison {
    pub object_multiplicities: Vec<usize>,
    pub object_dim: f64,
    pub tube_count: usize,
    pub oracle_count: usize,
    pub converged_starts: usize,
    pub starts: Vec<StartReport>,
    pub max_solution_residual: f64,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    pub config: OracleConfig,
    pub comparisons: Vec<OracleComparison>,
    /// Multiplicity vectors above `max_dim`, not attempted.
    pub skipped: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub category: String,
    pub subcategory: Vec<usize>,
    pub tube_dim: usize,
    pub config: CommutantConfig,
    pub blocks: Vec<BlockSummary>,
    pub block_count: usize,
    pub sum_d_sq: f64,
    /// `dim C · dim D`.
    pub expected: f64,
    /// Only for the trivial subcategory: the fusion table must be that of `D`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered_fusion: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for CommutantReport {
    fn command(&self) -> &'static str {
        "commutant"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

fn object_name(cat: &FusionCategory, n: &[usize]) -> String {
    let parts: Vec<String> = cat
        .labels()
        .filter(|l| n[l.0] > 0)
        .map(|l| if n[l.0] == 1 { cat.label_name(l).to_owned() } else { format!("{}{}", n[l.0], cat.label_name(l)) })
        .collect();
    parts.join("+")
}

struct Decomposed {
    cat: Arc<FusionCategory>,
    sub: Subcategory,
    a: TubeAlgebra,
    c: commutant::Commutant,
}

fn decompose(cfg: &RunConfig) -> Result<Decomposed> {
    let (cat, sub) = input(cfg)?;
    let a = tube::build_tube(&sub)?;
    let c = commutant::decompose(&a, &cfg.commutant)?;
    Ok(Decomposed { cat, sub, a, c })
}

/// Fusion rules of `D` in the label order of `D`.
fn parent_fusion(cat: &FusionCategory) -> Vec<Vec<Vec<usize>>> {
    cat.labels().map(|a| cat.labels().map(|b| cat.labels().map(|c| cat.mult(a, b, c)).collect()).collect()).collect()
}

/// Fusion table of the commutant of the trivial subcategory, relabelled by
/// the object carried by each block; `None` if a block is not simple in `D`.
fn relabel_trivial(cat: &FusionCategory, blocks: &[BlockSummary], table: &FusionTable) -> Option<Vec<Vec<Vec<usize>>>> {
    let mut label_of = Vec::new();
    for b in blocks {
        let nz: Vec<usize> = (0..cat.rank()).filter(|&l| b.object_multiplicities[l] > 0).collect();
        if nz.len() != 1 || b.object_multiplicities[nz[0]] != 1 {
            return None;
        }
        label_of.push(nz[0]);
    }
    let r = cat.rank();
    if blocks.len() != r {
        return None;
    }
    let mut out = vec![vec![vec![0; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                out[label_of[i]][label_of[j]][label_of[k]] = table.n[i][j][k];
            }
        }
    }
    Some(out)
}

fn run_oracle_section(
    calc: &Calculus,
    sub: &Subcategory,
    blocks: &[BlockSummary],
    ocfg: &OracleConfig,
    tol: f64,
) -> Result<OracleSection> {
    let cat = calc.category();
    let mut vectors: Vec<Vec<usize>> = blocks.iter().map(|b| b.object_multiplicities.clone()).collect();
    vectors.sort();
    vectors.dedup();
    let mut comparisons = Vec::new();
    let mut skipped = Vec::new();
    for n in vectors {
        let object_dim: f64 = cat.labels().map(|l| n[l.0] as f64 * cat.qdim(l)).sum();
        if object_dim > ocfg.max_dim + 1e-9 {
            skipped.push(n);
            continue;
        }
        let res = oracle::solve_bfe_direct(calc, sub.members(), &n, ocfg)?;
        let tube_count = blocks.iter().filter(|b| b.object_multiplicities == n).count();
        let max_solution_residual = res
            .solutions
            .iter()
            .map(|h| {
                let v = half_braiding::verify(calc, h, tol);
                v.bfe_residual.max(v.unitarity_defect).max(v.unit_defect)
            })
            .fold(0.0, f64::max);
        comparisons.push(OracleComparison {
            object_dim,
            tube_count,
            oracle_count: res.solutions.len(),
            converged_starts: res.starts.iter().filter(|s| s.converged).count(),
            agree: tube_count == res.solutions.len(),
            starts: res.starts,
            max_solution_residual,
            object_multiplicities: n,
        });
    }
    Ok(OracleSection { config: *ocfg, comparisons, skipped })
}

pub fn run_commutant(cfg: &RunConfig) -> Result<CommutantReport> {
    let Decomposed { cat, sub, a, c } = decompose(cfg)?;
    let calc = &a.calc;
    let tol = cfg.hb_tol();
    let blocks: Vec<BlockSummary> = c
        .blocks
        .iter()
        .zip(&c.half_braidings)
        .enumerate()
        .map(|(index, (b, h))| BlockSummary {
            index,
            size: b.size,
            d_sigma: b.d_sigma,
            object: object_name(&cat, &b.object_multiplicities),
            object_multiplicities: b.object_multiplicities.clone(),
            matrix_unit_residual: commutant::matrix_unit_residual(&a, b),
            half_braiding: half_braiding::verify(calc, h, tol),
            signature: h.signature(calc),
        })
        .collect();
    let sum_d_sq: f64 = blocks.iter().map(|b| b.d_sigma * b.d_sigma).sum();
    let expected = sub.global_dim() * fusion_data::category_dim(&cat);
    let mut total = a.zero();
    for b in &c.blocks {
        total = total.add(&b.z)?;
    }
    let mut checks = vec![
        Check::below("block_dimensions_sum_to_dim_c_dim_d", (sum_d_sq - expected).abs(), DIMENSION_TOL),
        Check::below(
            "matrix_unit_relations",
            blocks.iter().map(|b| b.matrix_unit_residual).fold(0.0, f64::max),
            MATRIX_UNIT_TOL,
        ),
        Check::below("central_projections_sum_to_unit", total.sub(&a.unit())?.norm_max(), MATRIX_UNIT_TOL),
        Check::holds("half_braiding_equations", blocks.iter().all(|b| b.half_braiding.pass)),
    ];
    let mut recovered_fusion = None;
    if sub.is_trivial() {
        checks.push(Check::equal("trivial_subcategory_block_count_is_rank", blocks.len() as f64, cat.rank() as f64));
        let table = commutant::fusion_table(calc, &c.half_braidings, cfg.commutant.rank_tol)?;
        let rel = relabel_trivial(&cat, &blocks, &table);
        checks.push(Check::holds(
            "trivial_subcategory_recovers_fusion_rules",
            rel.as_ref() == Some(&parent_fusion(&cat)),
        ));
        recovered_fusion = rel;
    }
    let oracle = match &cfg.oracle {
        Some(o) => {
            let sec = run_oracle_section(calc, &sub, &blocks, o, tol)?;
            checks.push(Check::holds("oracle_block_counts_agree", sec.comparisons.iter().all(|c| c.agree)));
            checks.push(Check::below(
                "oracle_solutions_are_half_braidings",
                sec.comparisons.iter().map(|c| c.max_solution_residual).fold(0.0, f64::max),
                tol,
            ));
            Some(sec)
        }
        None => None,
    };
    Ok(CommutantReport {
        category: cat.name.clone(),
        subcategory: members(&sub),
        tube_dim: a.dim(),
        config: cfg.commutant,
        block_count: blocks.len(),
        blocks,
        sum_d_sq,
        expected,
        recovered_fusion,
        oracle,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

// fusion

#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub category: String,
    pub subcategory: Vec<usize>,
    pub objects: Vec<String>,
    pub table: FusionTable,
    /// Worst BFE residual of a conjugate half-braiding.
    pub conjugate_bfe: f64,
    /// Worst BFE residual of a tensor product of two blocks.
    pub tensor_bfe: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for FusionReport {
    fn command(&self) -> &'static str {
        "fusion"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

pub fn run_fusion(cfg: &RunConfig) -> Result<FusionReport> {
    let Decomposed { cat, sub, a, c } = decompose(cfg)?;
    let calc = &a.calc;
    let hbs = &c.half_braidings;
    let tol = cfg.hb_tol();
    let table = commutant::fusion_table(calc, hbs, cfg.commutant.rank_tol)?;
    let conjugate_bfe =
        hbs.iter().map(|h| half_braiding::bfe_residual(calc, &half_braiding::conjugate(calc, h))).fold(0.0, f64::max);
    let mut tensor_bfe: f64 = 0.0;
    for h1 in hbs {
        for h2 in hbs {
            tensor_bfe = tensor_bfe.max(half_braiding::bfe_residual(calc, &half_braiding::tensor(calc, h1, h2)?));
        }
    }
    let m = hbs.len();
    let conj_preserves_dims = (0..m).all(|i| (table.dims[table.conjugates[i]] - table.dims[i]).abs() < DIMENSION_TOL);
    let conj_involutive = (0..m).all(|i| table.conjugates.get(table.conjugates[i]) == Some(&i));
    let mut checks = vec![
        Check::holds("unit_law", table.unit_law),
        Check::holds("duality", table.duality),
        Check::holds("associativity", table.associative),
        Check::below("dimension_homomorphism", table.dimension_defect, DIMENSION_TOL),
        Check::below("rounding_gap", table.rounding_gap, 0.4),
        Check::below("conjugates_satisfy_half_braiding_equations", conjugate_bfe, tol),
        Check::holds("conjugation_preserves_dimension", conj_preserves_dims),
        Check::holds("conjugation_involutive", conj_involutive),
        Check::below("tensor_products_satisfy_half_braiding_equations", tensor_bfe, tol),
    ];
    if sub.is_trivial() {
        let blocks: Vec<BlockSummary> = c
            .blocks
            .iter()
            .zip(hbs)
            .enumerate()
            .map(|(index, (b, h))| BlockSummary {
                index,
                size: b.size,
                d_sigma: b.d_sigma,
                object: String::new(),
                object_multiplicities: b.object_multiplicities.clone(),
                matrix_unit_residual: 0.0,
                half_braiding: half_braiding::verify(calc, h, tol),
                signature: Vec::new(),
            })
            .collect();
        let rel = relabel_trivial(&cat, &blocks, &table);
        checks.push(Check::holds(
            "trivial_subcategory_recovers_fusion_rules",
            rel.as_ref() == Some(&parent_fusion(&cat)),
        ));
    }
    Ok(FusionReport {
        category: cat.name.clone(),
        subcategory: members(&sub),
        objects: c.blocks.iter().map(|b| object_name(&cat, &b.object_multiplicities)).collect(),
        table,
        conjugate_bfe,
        tensor_bfe,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

// oracle

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub category: String,
    pub subcategory: Vec<usize>,
    pub tube_block_count: usize,
    pub oracle: OracleSection,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for OracleReport {
    fn command(&self) -> &'static str {
        "oracle"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

pub fn run_oracle(cfg: &RunConfig) -> Result<OracleReport> {
    let ocfg = cfg.oracle.unwrap_or_default();
    let Decomposed { cat, sub, a, c } = decompose(cfg)?;
    let calc = &a.calc;
    let tol = cfg.hb_tol();
    let blocks: Vec<BlockSummary> = c
        .blocks
        .iter()
        .zip(&c.half_braidings)
        .enumerate()
        .map(|(index, (b, h))| BlockSummary {
            index,
            size: b.size,
            d_sigma: b.d_sigma,
            object: object_name(&cat, &b.object_multiplicities),
            object_multiplicities: b.object_multiplicities.clone(),
            matrix_unit_residual: commutant::matrix_unit_residual(&a, b),
            half_braiding: half_braiding::verify(calc, h, tol),
            signature: h.signature(calc),
        })
        .collect();
    let sec = run_oracle_section(calc, &sub, &blocks, &ocfg, tol)?;
    let compared: usize = sec.comparisons.iter().map(|c| c.tube_count).sum();
    let checks = vec![
        Check::holds("oracle_block_counts_agree", sec.comparisons.iter().all(|c| c.agree)),
        Check::below(
            "oracle_solutions_are_half_braidings",
            sec.comparisons.iter().map(|c| c.max_solution_residual).fold(0.0, f64::max),
            tol,
        ),
        Check::holds("tube_half_braidings_verified", blocks.iter().all(|b| b.half_braiding.pass)),
        Check::above("blocks_compared", compared as f64, 0.0),
    ];
    Ok(OracleReport {
        category: cat.name.clone(),
        subcategory: members(&sub),
        tube_block_count: blocks.len(),
        oracle: sec,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

/// One component `E(β)_{a,b}` of a block's half-braiding.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentDump {
    pub block: usize,
    pub beta: usize,
    pub row: usize,
    pub col: usize,
    pub morphism: MorphismDump,
}

/// Every half-braiding component of every block, for debugging.
pub fn dump_half_braidings(cfg: &RunConfig) -> Result<Vec<ComponentDump>> {
    let Decomposed { a, c, .. } = decompose(cfg)?;
    let mut out = Vec::new();
    for (block, h) in c.half_braidings.iter().enumerate() {
        for (bi, rows) in h.e.iter().enumerate() {
            for (row, cols) in rows.iter().enumerate() {
                for (col, m) in cols.iter().enumerate() {
                    out.push(ComponentDump { block, beta: h.betas[bi].0, row, col, morphism: a.calc.dump(m) });
                }
            }
        }
    }
    Ok(out)
}

// alpha-check

#[derive(Clone, Debug, Serialize)]
pub struct AlphaCheckReport {
    pub alpha: AlphaReport,
    pub counts: alpha::Counts,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report for AlphaCheckReport {
    fn command(&self) -> &'static str {
        "alpha-check"
    }
    fn checks(&self) -> &[Check] {
        &self.checks
    }
}

pub fn run_alpha(md: &ModularData, ext: &ExtensionSummary) -> Result<AlphaCheckReport> {
    let r = alpha::alpha_check(md, ext)?;
    let m = &r.modular;
    let e = &r.extension;
    let mut checks = vec![
        Check::below("s_unitary", m.s_unitarity, 1e-9),
        Check::below("s_symmetric", m.s_symmetry, 1e-9),
        Check::below("st_cubed_projectively_s_squared", m.st_cubed_residual, 1e-9),
        Check::below("s_squared_is_charge_conjugation", m.s_squared_residual, 1e-9),
        Check::below("verlinde_integrality", m.verlinde_integrality, 1e-6),
        Check::holds("verlinde_nonnegative", m.verlinde_min >= 0),
        Check::equal("z_vacuum_entry", e.z_vacuum as f64, 1.0),
        Check::holds("z_nonnegative", e.z_nonnegative),
        Check::below("z_commutes_with_s", e.zs_residual, 1e-9),
        Check::below("z_commutes_with_t", e.zt_residual, 1e-9),
        Check::holds("theta_matches_vacuum_row", e.theta_matches_vacuum_row),
    ];
    let id = &r.center.dimension;
    checks.push(Check::below(id.name, id.residual, 1e-6));
    checks.push(Check::holds("center_count", r.center.count_pass));
    for id in &r.relative_commutants.identities {
        checks.push(Check::below(id.name, id.residual, 1e-6));
    }
    for c in &r.relative_commutants.count_checks {
        checks.push(Check::holds(c.name, c.pass));
    }
    Ok(AlphaCheckReport { counts: ext.counts, pass: checks.iter().all(|c| c.pass), alpha: r, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_subcategory_reproduces_ising() {
        let r = run_commutant(&RunConfig::new("ising").with_sub(&[0])).unwrap();
        assert!(r.pass, "{:#?}", r.checks);
        assert_eq!(r.block_count, 3);
        assert!(r.recovered_fusion.is_some());
    }

    #[test]
    fn fermion_subcategory_has_six_blocks() {
        let r = run_commutant(&RunConfig::new("ising").with_sub(&[0, 2])).unwrap();
        assert!(r.pass);
        assert_eq!(r.block_count, 6);
        assert!((r.sum_d_sq - 8.0).abs() < 1e-6 && r.expected == 8.0);
    }

    #[test]
    fn json_is_deterministic() {
        let cfg = RunConfig::new("fibonacci");
        let a = to_json(&run_commutant(&cfg).unwrap());
        let b = to_json(&run_commutant(&cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn nonpositive_tolerance_is_rejected() {
        let mut cfg = RunConfig::new("ising");
        cfg.tol = Some(0.0);
        assert!(run_validate(&cfg).is_err());
    }

    #[test]
    fn unknown_category_is_an_error() {
        assert!(matches!(load_category("nonexistent"), Err(Error::UnknownCatalog(_))));
        assert!(matches!(load_category("/no/such/file.json"), Err(Error::Io(_))));
    }

    #[test]
    fn oracle_agrees_on_fibonacci_center() {
        let r = run_oracle(&RunConfig::new("fibonacci")).unwrap();
        assert!(r.pass, "{:#?}", r.checks);
        let tau = r.oracle.comparisons.iter().find(|c| c.object_multiplicities == [0, 1]).unwrap();
        assert_eq!(tau.oracle_count, 2);
    }

    #[test]
    fn text_format_lists_every_check() {
        let r = run_validate(&RunConfig::new("vec_z2")).unwrap();
        let t = to_text(&r);
        assert_eq!(t.lines().count(), r.checks.len() + 2);
        assert!(t.ends_with("result: pass\n"));
    }
}
