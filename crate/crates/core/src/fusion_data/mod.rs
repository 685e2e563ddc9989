//! Skeletal data of a unitary fusion category: fusion ring, quantum
//! dimensions, F-symbols and optional R-symbols.
//!
//! F-symbols use the splitting-tree convention
//!
//! ```text
//! |(ab)_e^α (ec)_d^β>  =  Σ_{f,γ,δ} F^{abc}_d[(e,α,β),(f,γ,δ)] |(bc)_f^γ (af)_d^δ>
//! ```
//!
//! with isometric vertices, so every F-block is a unitary matrix.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

pub mod catalog;
mod validate;

pub use validate::{validate, FBlockDefect, ValidationReport};

/// Index of a simple object. Label 0 is the unit object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub usize);

impl Label {
    pub const UNIT: Label = Label(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionRing {
    rank: usize,
    dual: Vec<Label>,
    mult: Vec<usize>,
}

impl FusionRing {
    pub fn new(rank: usize, dual: Vec<Label>, mult: Vec<usize>) -> Result<Self> {
        if dual.len() != rank || mult.len() != rank * rank * rank {
            return Err(Error::Shape(format!(
                "fusion ring of rank {rank} needs {rank} duals and {} multiplicities",
                rank * rank * rank
            )));
        }
        Ok(Self { rank, dual, mult })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + Clone {
        (0..self.rank).map(Label)
    }

    pub fn dual(&self, a: Label) -> Label {
        self.dual[a.0]
    }

    /// `N_{ab}^c`.
    #[inline]
    pub fn mult(&self, a: Label, b: Label, c: Label) -> usize {
        self.mult[(a.0 * self.rank + b.0) * self.rank + c.0]
    }

    /// Simple summands of `a ⊗ b` with their multiplicities.
    pub fn products(&self, a: Label, b: Label) -> impl Iterator<Item = (Label, usize)> + '_ {
        self.labels().map(move |c| (c, self.mult(a, b, c))).filter(|&(_, n)| n > 0)
    }

    /// Fusion matrix of left multiplication by `a`: entry `(b, c)` is `N_{ab}^c`.
    pub fn fusion_matrix(&self, a: Label) -> DMatrix<f64> {
        DMatrix::from_fn(self.rank, self.rank, |b, c| self.mult(a, Label(b), Label(c)) as f64)
    }

    /// Violations of the unit, duality and associativity axioms, as messages.
    pub fn axiom_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let u = Label::UNIT;
        if self.rank == 0 {
            out.push("rank is zero".to_owned());
            return out;
        }
        if self.dual(u) != u {
            out.push("dual(0) != 0".to_owned());
        }
        for a in self.labels() {
            if self.dual(a).0 >= self.rank || self.dual(self.dual(a)) != a {
                out.push(format!("dual is not an involution at {a}"));
            }
            for c in self.labels() {
                let delta = usize::from(a == c);
                if self.mult(a, u, c) != delta || self.mult(u, a, c) != delta {
                    out.push(format!("unit law fails: N_({a},0)^{c} or N_(0,{a})^{c} != {delta}"));
                }
            }
            for b in self.labels() {
                let expect = usize::from(b == self.dual(a));
                if self.mult(a, b, u) != expect {
                    out.push(format!("duality fails: N_({a},{b})^0 != {expect}"));
                }
            }
        }
        for a in self.labels() {
            for b in self.labels() {
                for c in self.labels() {
                    for d in self.labels() {
                        let left: usize = self.labels().map(|e| self.mult(a, b, e) * self.mult(e, c, d)).sum();
                        let right: usize = self.labels().map(|f| self.mult(b, c, f) * self.mult(a, f, d)).sum();
                        if left != right {
                            out.push(format!("associativity fails at ({a},{b},{c}) -> {d}"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Row/column key of an F-block: an internal label with two vertex multiplicities.
pub type VertexPair = (Label, usize, usize);

/// All F-symbols `F^{abc}_d` for fixed external labels.
#[derive(Clone, Debug)]
pub struct FBlock {
    pub rows: Vec<VertexPair>,
    pub cols: Vec<VertexPair>,
    row_index: HashMap<VertexPair, usize>,
    col_index: HashMap<VertexPair, usize>,
    pub matrix: DMatrix<C64>,
}

impl FBlock {
    fn new(rows: Vec<VertexPair>, cols: Vec<VertexPair>) -> Self {
        let row_index = rows.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let col_index = cols.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let matrix = DMatrix::zeros(rows.len(), cols.len());
        Self { rows, cols, row_index, col_index, matrix }
    }

    pub fn entry(&self, row: VertexPair, col: VertexPair) -> C64 {
        match (self.row_index.get(&row), self.col_index.get(&col)) {
            (Some(&i), Some(&j)) => self.matrix[(i, j)],
            _ => C64::new(0.0, 0.0),
        }
    }

    fn position(&self, row: VertexPair, col: VertexPair) -> Option<(usize, usize)> {
        Some((*self.row_index.get(&row)?, *self.col_index.get(&col)?))
    }
}

#[derive(Clone, Debug)]
pub struct FusionCategory {
    pub name: String,
    pub labels: Vec<String>,
    pub ring: FusionRing,
    pub qdim: Vec<f64>,
    f: HashMap<[usize; 4], FBlock>,
    r: Option<HashMap<[usize; 3], DMatrix<C64>>>,
    pub tolerance: f64,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl FusionCategory {
    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + Clone {
        self.ring.labels()
    }

    pub fn dual(&self, a: Label) -> Label {
        self.ring.dual(a)
    }

    pub fn mult(&self, a: Label, b: Label, c: Label) -> usize {
        self.ring.mult(a, b, c)
    }

    pub fn qdim(&self, a: Label) -> f64 {
        self.qdim[a.0]
    }

    pub fn label_name(&self, a: Label) -> &str {
        &self.labels[a.0]
    }

    pub fn has_braiding(&self) -> bool {
        self.r.is_some()
    }

    pub fn f_block(&self, a: Label, b: Label, c: Label, d: Label) -> Option<&FBlock> {
        self.f.get(&[a.0, b.0, c.0, d.0])
    }

    pub fn f_blocks(&self) -> impl Iterator<Item = ([Label; 4], &FBlock)> {
        self.f.iter().map(|(k, v)| ([Label(k[0]), Label(k[1]), Label(k[2]), Label(k[3])], v))
    }

    /// `F^{abc}_d[(e,α,β),(f,γ,δ)]`, zero when not admissible.
    pub fn f_symbol(&self, a: Label, b: Label, c: Label, d: Label, row: VertexPair, col: VertexPair) -> C64 {
        self.f_block(a, b, c, d).map_or(C64::new(0.0, 0.0), |blk| blk.entry(row, col))
    }

    /// `R^{ab}_c` as a matrix over vertex multiplicities: `c_{a,b} Y^{ab}_{c,μ} = Σ_ν R[μ,ν] Y^{ba}_{c,ν}`.
    pub fn r_symbol(&self, a: Label, b: Label, c: Label) -> Option<&DMatrix<C64>> {
        self.r.as_ref()?.get(&[a.0, b.0, c.0])
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    /// Mutable F access, used to build perturbed data in tests and tools.
    pub fn set_f_symbol(&mut self, abcd: [Label; 4], row: VertexPair, col: VertexPair, value: C64) -> Result<()> {
        let key = [abcd[0].0, abcd[1].0, abcd[2].0, abcd[3].0];
        let blk = self.f.get_mut(&key).ok_or_else(|| Error::Shape(format!("no F-block for {key:?}")))?;
        let (i, j) = blk
            .position(row, col)
            .ok_or_else(|| Error::Shape(format!("F-block {key:?} has no entry {row:?},{col:?}")))?;
        blk.matrix[(i, j)] = value;
        Ok(())
    }

    fn empty_f_blocks(ring: &FusionRing) -> HashMap<[usize; 4], FBlock> {
        let mut out = HashMap::new();
        for a in ring.labels() {
            for b in ring.labels() {
                for c in ring.labels() {
                    for d in ring.labels() {
                        let mut rows = Vec::new();
                        for (e, nab) in ring.products(a, b) {
                            for al in 0..nab {
                                for be in 0..ring.mult(e, c, d) {
                                    rows.push((e, al, be));
                                }
                            }
                        }
                        let mut cols = Vec::new();
                        for (f, nbc) in ring.products(b, c) {
                            for ga in 0..nbc {
                                for de in 0..ring.mult(a, f, d) {
                                    cols.push((f, ga, de));
                                }
                            }
                        }
                        if !rows.is_empty() || !cols.is_empty() {
                            out.insert([a.0, b.0, c.0, d.0], FBlock::new(rows, cols));
                        }
                    }
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// File schema

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum QdimValue {
    Number(f64),
    Expr(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(default)]
    pub name: Option<String>,
    pub rank: usize,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<f64>>,
    pub qdim: Vec<QdimValue>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<f64>>,
    #[serde(rename = "R", default)]
    pub r: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

/// Evaluates a quantum-dimension expression: a number, `sqrt(x)`, or `golden`.
pub fn parse_qdim_expr(s: &str) -> Option<f64> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("golden") || t.eq_ignore_ascii_case("phi") {
        return Some((1.0 + 5f64.sqrt()) / 2.0);
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return inner.trim().parse::<f64>().ok().filter(|x| *x >= 0.0).map(f64::sqrt);
    }
    t.parse::<f64>().ok()
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn as_index(v: f64, bound: usize, location: &str) -> Result<usize> {
    if v.fract() != 0.0 || v < 0.0 || v >= bound as f64 {
        return Err(parse_err(location, format!("index {v} is not an integer in [0, {bound})")));
    }
    Ok(v as usize)
}

/// Parses the JSON document. Axioms are not checked here; see [`validate`].
pub fn load_category(bytes: &[u8]) -> Result<FusionCategory> {
    let file: CategoryFile = serde_json::from_slice(bytes)
        .map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    from_file(file)
}

pub fn from_file(file: CategoryFile) -> Result<FusionCategory> {
    let rank = file.rank;
    if rank == 0 {
        return Err(parse_err("rank", "rank must be positive (the unit label 0 is required)"));
    }
    if file.labels.len() != rank {
        return Err(parse_err("labels", format!("expected {rank} names, found {}", file.labels.len())));
    }
    if file.dual.len() != rank {
        return Err(parse_err("dual", format!("expected {rank} entries, found {}", file.dual.len())));
    }
    let mut dual = Vec::with_capacity(rank);
    for (i, &d) in file.dual.iter().enumerate() {
        if d >= rank {
            return Err(parse_err(format!("dual[{i}]"), format!("label {d} out of range")));
        }
        dual.push(Label(d));
    }

    let mut mult = vec![0usize; rank * rank * rank];
    for (i, q) in file.n.iter().enumerate() {
        let loc = format!("N[{i}]");
        if q.len() != 4 {
            return Err(parse_err(&loc, "expected [a, b, c, multiplicity]"));
        }
        let a = as_index(q[0], rank, &loc)?;
        let b = as_index(q[1], rank, &loc)?;
        let c = as_index(q[2], rank, &loc)?;
        let m = q[3];
        if m.fract() != 0.0 || m < 0.0 {
            return Err(parse_err(&loc, format!("multiplicity {m} is not a non-negative integer")));
        }
        mult[(a * rank + b) * rank + c] = m as usize;
    }
    let ring = FusionRing::new(rank, dual, mult)?;

    if file.qdim.len() != rank {
        return Err(parse_err("qdim", format!("expected {rank} entries, found {}", file.qdim.len())));
    }
    let mut qdim = Vec::with_capacity(rank);
    for (i, q) in file.qdim.iter().enumerate() {
        let v = match q {
            QdimValue::Number(x) => *x,
            QdimValue::Expr(s) => {
                parse_qdim_expr(s).ok_or_else(|| parse_err(format!("qdim[{i}]"), format!("cannot evaluate `{s}`")))?
            }
        };
        qdim.push(v);
    }

    let mut f = FusionCategory::empty_f_blocks(&ring);
    for (i, row) in file.f.iter().enumerate() {
        let loc = format!("F[{i}]");
        if row.len() != 12 {
            return Err(parse_err(&loc, "expected [a,b,c,d,e,f,α,β,γ,δ,re,im]"));
        }
        let mut idx = [0usize; 10];
        for k in 0..6 {
            idx[k] = as_index(row[k], rank, &loc)?;
        }
        for k in 6..10 {
            idx[k] = as_index(row[k], usize::MAX, &loc)?;
        }
        let [a, b, c, d, e, ff, al, be, ga, de] = idx;
        let blk = f
            .get_mut(&[a, b, c, d])
            .ok_or_else(|| parse_err(&loc, format!("F^{{{a}{b}{c}}}_{d} is not admissible")))?;
        let (r, s) = blk
            .position((Label(e), al, be), (Label(ff), ga, de))
            .ok_or_else(|| parse_err(&loc, "internal label or multiplicity index is not admissible"))?;
        blk.matrix[(r, s)] = C64::new(row[10], row[11]);
    }

    let r = match file.r {
        None => None,
        Some(entries) => {
            let mut map: HashMap<[usize; 3], DMatrix<C64>> = HashMap::new();
            for a in ring.labels() {
                for b in ring.labels() {
                    for (c, n) in ring.products(a, b) {
                        map.insert([a.0, b.0, c.0], DMatrix::zeros(n, ring.mult(b, a, c)));
                    }
                }
            }
            for (i, row) in entries.iter().enumerate() {
                let loc = format!("R[{i}]");
                if row.len() != 7 {
                    return Err(parse_err(&loc, "expected [a,b,c,α,β,re,im]"));
                }
                let a = as_index(row[0], rank, &loc)?;
                let b = as_index(row[1], rank, &loc)?;
                let c = as_index(row[2], rank, &loc)?;
                let al = as_index(row[3], usize::MAX, &loc)?;
                let be = as_index(row[4], usize::MAX, &loc)?;
                let m = map
                    .get_mut(&[a, b, c])
                    .ok_or_else(|| parse_err(&loc, format!("R^{{{a}{b}}}_{c} is not admissible")))?;
                if al >= m.nrows() || be >= m.ncols() {
                    return Err(parse_err(&loc, "multiplicity index out of range"));
                }
                m[(al, be)] = C64::new(row[5], row[6]);
            }
            Some(map)
        }
    };

    Ok(FusionCategory {
        name: file.name.unwrap_or_else(|| "unnamed".to_owned()),
        labels: file.labels,
        ring,
        qdim,
        f,
        r,
        tolerance: file.tolerance.unwrap_or(DEFAULT_TOLERANCE),
    })
}

// ---------------------------------------------------------------------------
// Subcategories

/// A fusion- and dual-closed set of labels containing the unit.
#[derive(Clone, Debug)]
pub struct Subcategory {
    parent: Arc<FusionCategory>,
    members: Vec<Label>,
}

impl Subcategory {
    pub fn parent(&self) -> &FusionCategory {
        &self.parent
    }

    pub fn parent_arc(&self) -> &Arc<FusionCategory> {
        &self.parent
    }

    pub fn members(&self) -> &[Label] {
        &self.members
    }

    pub fn contains(&self, a: Label) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.rank()
    }

    pub fn global_dim(&self) -> f64 {
        global_dim(self)
    }
}

pub fn subcategory(data: Arc<FusionCategory>, members: impl IntoIterator<Item = Label>) -> Result<Subcategory> {
    let set: BTreeSet<Label> = members.into_iter().collect();
    for &a in &set {
        if a.0 >= data.rank() {
            return Err(Error::UnknownLabel(a.0));
        }
    }
    if !set.contains(&Label::UNIT) {
        return Err(Error::MissingUnit);
    }
    for &a in &set {
        let d = data.dual(a);
        if !set.contains(&d) {
            return Err(Error::NotDualClosed { a, dual: d });
        }
        for &b in &set {
            for (c, _) in data.ring.products(a, b) {
                if !set.contains(&c) {
                    return Err(Error::NotFusionClosed { a, b, c });
                }
            }
        }
    }
    Ok(Subcategory { parent: data, members: set.into_iter().collect() })
}

pub fn full_subcategory(data: Arc<FusionCategory>) -> Subcategory {
    let members = data.labels().collect();
    Subcategory { parent: data, members }
}

pub fn trivial_subcategory(data: Arc<FusionCategory>) -> Subcategory {
    Subcategory { parent: data, members: vec![Label::UNIT] }
}

/// All fusion- and dual-closed label sets, smallest first.
pub fn all_subcategories(data: &Arc<FusionCategory>) -> Vec<Subcategory> {
    let rank = data.rank();
    let mut out = Vec::new();
    // rank is tiny for every supported dataset
    for mask in 0u64..(1u64 << rank.min(20)) {
        if mask & 1 == 0 {
            continue;
        }
        let members = (0..rank).filter(|i| mask >> i & 1 == 1).map(Label);
        if let Ok(s) = subcategory(data.clone(), members) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| s.members.len());
    out
}

/// `Σ_{λ ∈ members} d(λ)²`.
pub fn global_dim(view: &Subcategory) -> f64 {
    view.members.iter().map(|&a| view.parent.qdim(a).powi(2)).sum()
}

/// Global dimension of the whole category.
pub fn category_dim(data: &FusionCategory) -> f64 {
    data.qdim.iter().map(|d| d * d).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qdim_expressions() {
        assert_eq!(parse_qdim_expr("sqrt(2)"), Some(2f64.sqrt()));
        assert_eq!(parse_qdim_expr("golden"), Some((1.0 + 5f64.sqrt()) / 2.0));
        assert_eq!(parse_qdim_expr(" 1.5 "), Some(1.5));
        assert_eq!(parse_qdim_expr("sqrt(-1)"), None);
        assert_eq!(parse_qdim_expr("pi"), None);
    }

    #[test]
    fn ising_loads() {
        let ising = catalog::load("ising").unwrap();
        assert_eq!(ising.rank(), 3);
        let expect = [1.0, 2f64.sqrt(), 1.0];
        for (d, e) in ising.qdim.iter().zip(expect) {
            assert!((d - e).abs() < 1e-15);
        }
    }

    #[test]
    fn vec_z2_loads_with_trivial_associator() {
        let z2 = catalog::load("vec_z2").unwrap();
        assert_eq!(z2.rank(), 2);
        assert_eq!(z2.qdim, vec![1.0, 1.0]);
        for (_, blk) in z2.f_blocks() {
            for v in blk.matrix.iter() {
                assert_eq!(*v, C64::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn unit_law_violation_loads_but_fails_validation() {
        let json = r#"{"rank":2,"labels":["1","g"],"dual":[0,1],
            "N":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,0,0,1]],
            "qdim":[1,1],"F":[]}"#;
        let cat = load_category(json.as_bytes()).unwrap();
        let report = validate(&cat);
        assert!(!report.pass);
        assert!(report.ring_failures.iter().any(|m| m.contains("unit law")));
    }

    #[test]
    fn schema_errors_carry_locations() {
        let bad_index = r#"{"rank":1,"labels":["1"],"dual":[0],"N":[[0,0,3,1]],"qdim":[1],"F":[]}"#;
        match load_category(bad_index.as_bytes()) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "N[0]"),
            other => panic!("unexpected {other:?}"),
        }
        let no_unit = r#"{"rank":0,"labels":[],"dual":[],"N":[],"qdim":[],"F":[]}"#;
        assert!(matches!(load_category(no_unit.as_bytes()), Err(Error::Parse { .. })));
        let short_f =
            r#"{"rank":1,"labels":["1"],"dual":[0],"N":[[0,0,0,1]],"qdim":[1],"F":[[0,0,0,0,0,0,0,0,0,0,1]]}"#;
        match load_category(short_f.as_bytes()) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "F[0]"),
            other => panic!("unexpected {other:?}"),
        }
        let garbage = b"{ not json";
        assert!(matches!(load_category(garbage), Err(Error::Parse { .. })));
    }

    #[test]
    fn subcategory_closure() {
        let ising = Arc::new(catalog::load("ising").unwrap());
        let psi = subcategory(ising.clone(), [Label(0), Label(2)]).unwrap();
        assert_eq!(psi.members(), &[Label(0), Label(2)]);
        match subcategory(ising.clone(), [Label(0), Label(1)]) {
            Err(Error::NotFusionClosed { a, b, c }) => {
                assert_eq!((a, b, c), (Label(1), Label(1), Label(2)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(subcategory(ising.clone(), [Label(2)]), Err(Error::MissingUnit)));
        assert!(subcategory(ising.clone(), [Label(0)]).unwrap().is_trivial());
        assert!(subcategory(ising.clone(), [Label(0), Label(1), Label(2)]).unwrap().is_full());
    }

    #[test]
    fn dual_closure_is_required() {
        let z3 = Arc::new(catalog::load("vec_z3").unwrap());
        assert!(matches!(
            subcategory(z3, [Label(0), Label(1)]),
            Err(Error::NotDualClosed { .. }) | Err(Error::NotFusionClosed { .. })
        ));
    }

    #[test]
    fn global_dimensions() {
        let z2 = Arc::new(catalog::load("vec_z2").unwrap());
        assert!((global_dim(&full_subcategory(z2.clone())) - 2.0).abs() < 1e-12);
        let ising = Arc::new(catalog::load("ising").unwrap());
        assert!((global_dim(&full_subcategory(ising.clone())) - 4.0).abs() < 1e-12);
        let fib = Arc::new(catalog::load("fibonacci").unwrap());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let g = global_dim(&full_subcategory(fib.clone()));
        assert!((g - (1.0 + phi * phi)).abs() < 1e-12);
        assert!((g - 3.618034).abs() < 1e-6);
        for cat in [z2, ising, fib] {
            assert_eq!(global_dim(&trivial_subcategory(cat)), 1.0);
        }
    }

    #[test]
    fn global_dim_is_monotone() {
        for name in catalog::NAMES {
            let cat = Arc::new(catalog::load(name).unwrap());
            let subs = all_subcategories(&cat);
            for s in &subs {
                for t in &subs {
                    if s.members().iter().all(|a| t.contains(*a)) {
                        assert!(global_dim(s) <= global_dim(t) + 1e-12);
                    }
                }
            }
        }
    }
}
