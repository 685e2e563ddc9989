//! Morphism spaces between tensor words of simple objects, realised in
//! fusion-tree coordinates.
//!
//! A word `(x₁,…,xₙ)` has the left-parenthesized splitting-tree basis
//! `((x₁x₂)_{e₂}x₃)_{e₃}…` ; trees are isometries `root → word`, so
//! `Hom(w, w')` is block-diagonal over the root label and a morphism is
//! stored as a dense matrix with rows indexed by the target trees and
//! columns by the source trees.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_data::{FusionCategory, Label};
use crate::{c, C64};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TensorWord(pub Vec<Label>);

impl TensorWord {
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Self {
        Self(labels.into_iter().collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn concat(&self, other: &TensorWord) -> TensorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TensorWord(v)
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for a word from raw label indices.
pub fn word(labels: &[usize]) -> TensorWord {
    TensorWord(labels.iter().map(|&i| Label(i)).collect())
}

/// Left-parenthesized splitting tree. `path[k]` is the partial fusion
/// product after `k + 1` factors; `mults[k]` is the multiplicity index of
/// the vertex `path[k] ⊗ x_{k+2} → path[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FusionTree {
    pub path: Vec<Label>,
    pub mults: Vec<usize>,
}

impl FusionTree {
    pub fn root(&self) -> Label {
        self.path.last().copied().unwrap_or(Label::UNIT)
    }

    fn extended(&self, root: Label, mult: usize) -> FusionTree {
        let mut t = self.clone();
        if t.path.is_empty() {
            t.path.push(root);
        } else {
            t.path.push(root);
            t.mults.push(mult);
        }
        t
    }

    fn truncated(&self) -> FusionTree {
        let mut t = self.clone();
        t.path.pop();
        t.mults.pop();
        t
    }
}

#[derive(Debug)]
pub struct TreeBasis {
    pub word: TensorWord,
    pub trees: Vec<FusionTree>,
    index: HashMap<FusionTree, usize>,
}

impl TreeBasis {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, t: &FusionTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn with_root(&self, root: Label) -> impl Iterator<Item = (usize, &FusionTree)> {
        self.trees.iter().enumerate().filter(move |(_, t)| t.root() == root)
    }

    pub fn root_of(&self, i: usize) -> Label {
        self.trees[i].root()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub source: TensorWord,
    pub target: TensorWord,
    pub matrix: DMatrix<C64>,
}

impl Morphism {
    pub fn scale(mut self, s: C64) -> Morphism {
        self.matrix *= s;
        self
    }

    /// Largest entry modulus of `self - other`; infinite when words differ.
    pub fn distance(&self, other: &Morphism) -> f64 {
        if self.source != other.source || self.target != other.target {
            return f64::INFINITY;
        }
        max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn norm_max(&self) -> f64 {
        max_abs(&self.matrix)
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape(format!(
                "cannot add {}→{} and {}→{}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), matrix: &self.matrix + &other.matrix })
    }
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Debug view of a morphism: entries as `[re, im]`, rows and columns
/// annotated with their fusion trees.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismDump {
    pub source: TensorWord,
    pub target: TensorWord,
    pub source_trees: Vec<FusionTree>,
    pub target_trees: Vec<FusionTree>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// Change of basis from the product basis of two left-combs joined by one
/// vertex to the left-comb basis of the concatenated word.
#[derive(Debug)]
pub struct Joined {
    /// `(tree of left word, tree of right word, root, vertex multiplicity)`
    pub parts: Vec<(usize, usize, Label, usize)>,
    /// Rows: comb trees of the concatenation. Columns: `parts`.
    pub matrix: DMatrix<C64>,
}

/// A standard solution of the conjugate equations for one simple object.
#[derive(Clone, Debug)]
pub struct RigidityPair {
    pub label: Label,
    /// `unit → λ̄ λ`
    pub r: Morphism,
    /// `unit → λ λ̄`
    pub rbar: Morphism,
}

/// Fusion-tree calculus over one category. Caches are internal and
/// thread-safe; every operation is a pure function of its inputs.
pub struct Calculus {
    cat: Arc<FusionCategory>,
    bases: Mutex<HashMap<TensorWord, Arc<TreeBasis>>>,
    joins: Mutex<HashMap<(TensorWord, TensorWord), Arc<Joined>>>,
    rigidity: Mutex<HashMap<Label, Arc<RigidityPair>>>,
}

impl fmt::Debug for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Calculus").field("category", &self.cat.name).finish()
    }
}

impl Calculus {
    pub fn new(cat: Arc<FusionCategory>) -> Self {
        Self { cat, bases: Mutex::default(), joins: Mutex::default(), rigidity: Mutex::default() }
    }

    pub fn category(&self) -> &FusionCategory {
        &self.cat
    }

    pub fn category_arc(&self) -> &Arc<FusionCategory> {
        &self.cat
    }

    pub fn basis(&self, w: &TensorWord) -> Arc<TreeBasis> {
        if let Some(b) = self.bases.lock().unwrap().get(w) {
            return b.clone();
        }
        let b = Arc::new(self.build_basis(w));
        self.bases.lock().unwrap().insert(w.clone(), b.clone());
        b
    }

    fn build_basis(&self, w: &TensorWord) -> TreeBasis {
        let ring = &self.cat.ring;
        let mut trees = vec![FusionTree { path: vec![], mults: vec![] }];
        for (k, &x) in w.0.iter().enumerate() {
            let mut next = Vec::new();
            for t in &trees {
                if k == 0 {
                    next.push(FusionTree { path: vec![x], mults: vec![] });
                    continue;
                }
                let a = t.root();
                for (e, n) in ring.products(a, x) {
                    for m in 0..n {
                        next.push(t.extended(e, m));
                    }
                }
            }
            trees = next;
        }
        trees.sort_by(|s, t| (s.root(), &s.path, &s.mults).cmp(&(t.root(), &t.path, &t.mults)));
        let index = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TreeBasis { word: w.clone(), trees, index }
    }

    /// Number of trees from `word` to `root`, i.e. `dim Hom(root, word)`.
    pub fn dump(&self, f: &Morphism) -> MorphismDump {
        let m = &f.matrix;
        MorphismDump {
            source: f.source.clone(),
            target: f.target.clone(),
            source_trees: self.basis(&f.source).trees.clone(),
            target_trees: self.basis(&f.target).trees.clone(),
            matrix: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect(),
        }
    }

    pub fn tree_count(&self, w: &TensorWord, root: Label) -> usize {
        self.basis(w).with_root(root).count()
    }

    /// Trees from `word` to `root`.
    pub fn tree_basis(&self, w: &TensorWord, root: Label) -> Vec<FusionTree> {
        self.basis(w).with_root(root).map(|(_, t)| t.clone()).collect()
    }

    /// `dim Hom(source, target)`.
    pub fn hom_dim(&self, source: &TensorWord, target: &TensorWord) -> usize {
        let s = self.basis(source);
        let t = self.basis(target);
        self.cat.labels().map(|c| s.with_root(c).count() * t.with_root(c).count()).sum()
    }

    pub fn zero(&self, source: &TensorWord, target: &TensorWord) -> Morphism {
        let s = self.basis(source);
        let t = self.basis(target);
        Morphism { source: source.clone(), target: target.clone(), matrix: DMatrix::zeros(t.len(), s.len()) }
    }

    pub fn identity(&self, w: &TensorWord) -> Morphism {
        let n = self.basis(w).len();
        Morphism { source: w.clone(), target: w.clone(), matrix: DMatrix::identity(n, n) }
    }

    /// The isometry `root → word` given by one tree.
    pub fn tree_morphism(&self, w: &TensorWord, tree: &FusionTree) -> Result<Morphism> {
        let root = TensorWord(vec![tree.root()]);
        let tb = self.basis(w);
        let i = tb.index_of(tree).ok_or_else(|| Error::Shape(format!("tree {tree:?} not in basis of {w}")))?;
        let mut m = self.zero(&root, w);
        m.matrix[(i, 0)] = c(1.0, 0.0);
        Ok(m)
    }

    /// The vertex isometry `c → a ⊗ b` with multiplicity index `mu`.
    pub fn vertex(&self, a: Label, b: Label, root: Label, mu: usize) -> Result<Morphism> {
        let tree = FusionTree { path: vec![a, root], mults: vec![mu] };
        self.tree_morphism(&TensorWord(vec![a, b]), &tree)
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::Shape(format!(
                "cannot compose {}→{} after {}→{}",
                g.source, g.target, f.source, f.target
            )));
        }
        Ok(Morphism { source: f.source.clone(), target: g.target.clone(), matrix: &g.matrix * &f.matrix })
    }

    /// Composes a chain given in application order: `fs[0]` first.
    pub fn chain(&self, fs: &[&Morphism]) -> Result<Morphism> {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }

    pub fn adjoint(&self, f: &Morphism) -> Morphism {
        Morphism { source: f.target.clone(), target: f.source.clone(), matrix: f.matrix.adjoint() }
    }

    pub fn join(&self, left: &TensorWord, right: &TensorWord) -> Arc<Joined> {
        let key = (left.clone(), right.clone());
        if let Some(j) = self.joins.lock().unwrap().get(&key) {
            return j.clone();
        }
        let j = Arc::new(self.build_join(left, right));
        self.joins.lock().unwrap().insert(key, j.clone());
        j
    }

    fn build_join(&self, left: &TensorWord, right: &TensorWord) -> Joined {
        let lb = self.basis(left);
        let rb = self.basis(right);
        let cb = self.basis(&left.concat(right));
        let mut parts = Vec::new();
        for (i, ti) in lb.trees.iter().enumerate() {
            for (k, tk) in rb.trees.iter().enumerate() {
                for (root, n) in self.cat.ring.products(ti.root(), tk.root()) {
                    for mu in 0..n {
                        parts.push((i, k, root, mu));
                    }
                }
            }
        }
        let mut matrix = DMatrix::zeros(cb.len(), parts.len());
        for (col, &(i, k, root, mu)) in parts.iter().enumerate() {
            let expansion = self.expand_join(&lb.trees[i], &rb.trees[k], right.labels(), root, mu);
            for (tree, v) in expansion {
                let row = cb.index_of(&tree).expect("expanded tree belongs to the comb basis");
                matrix[(row, col)] += v;
            }
        }
        Joined { parts, matrix }
    }

    /// Expands `(t1 ⊗ t2) ∘ Y^{ab}_{root,mu}` in the comb basis of the
    /// concatenated word.
    fn expand_join(
        &self,
        t1: &FusionTree,
        t2: &FusionTree,
        right: &[Label],
        root: Label,
        mu: usize,
    ) -> Vec<(FusionTree, C64)> {
        if t1.path.is_empty() {
            debug_assert!(root == t2.root() && mu == 0);
            return vec![(t2.clone(), c(1.0, 0.0))];
        }
        match right.len() {
            0 => {
                debug_assert!(root == t1.root() && mu == 0);
                vec![(t1.clone(), c(1.0, 0.0))]
            }
            1 => vec![(t1.extended(root, mu), c(1.0, 0.0))],
            n => {
                let x = right[n - 1];
                let b = t2.root();
                let nu = *t2.mults.last().unwrap();
                let prefix = t2.truncated();
                let bp = prefix.root();
                let a = t1.root();
                let ring = &self.cat.ring;
                let mut acc: HashMap<FusionTree, C64> = HashMap::new();
                for (e, nabp) in ring.products(a, bp) {
                    for al in 0..nabp {
                        for be in 0..ring.mult(e, x, root) {
                            let coef = self.cat.f_symbol(a, bp, x, root, (e, al, be), (b, nu, mu)).conj();
                            if coef.norm() == 0.0 {
                                continue;
                            }
                            for (t, v) in self.expand_join(t1, &prefix, &right[..n - 1], e, al) {
                                *acc.entry(t.extended(root, be)).or_insert(c(0.0, 0.0)) += coef * v;
                            }
                        }
                    }
                }
                let mut out: Vec<_> = acc.into_iter().collect();
                out.sort_by(|x, y| x.0.cmp(&y.0));
                out
            }
        }
    }

    /// `f ⊗ g`, recoupled into the comb basis of the concatenated words.
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let js = self.join(&f.source, &g.source);
        let jt = self.join(&f.target, &g.target);
        let mut k = DMatrix::<C64>::zeros(jt.parts.len(), js.parts.len());
        for (r, &(i, kk, root, mu)) in jt.parts.iter().enumerate() {
            for (s, &(j, l, root2, mu2)) in js.parts.iter().enumerate() {
                if root == root2 && mu == mu2 {
                    let v = f.matrix[(i, j)] * g.matrix[(kk, l)];
                    if v.norm() != 0.0 {
                        k[(r, s)] = v;
                    }
                }
            }
        }
        Morphism {
            source: f.source.concat(&g.source),
            target: f.target.concat(&g.target),
            matrix: &jt.matrix * k * js.matrix.adjoint(),
        }
    }

    /// `id_w ⊗ f`.
    pub fn left_id(&self, w: &TensorWord, f: &Morphism) -> Morphism {
        self.tensor(&self.identity(w), f)
    }

    /// `f ⊗ id_w`.
    pub fn right_id(&self, f: &Morphism, w: &TensorWord) -> Morphism {
        self.tensor(f, &self.identity(w))
    }

    /// Unitary change of basis from the split parenthesization
    /// `(w[..split])(w[split..])` to the comb basis of `w`.
    pub fn recoupling_matrix(&self, w: &TensorWord, split: usize) -> Result<Arc<Joined>> {
        if split > w.len() {
            return Err(Error::Shape(format!("split {split} beyond word {w}")));
        }
        let left = TensorWord(w.0[..split].to_vec());
        let right = TensorWord(w.0[split..].to_vec());
        Ok(self.join(&left, &right))
    }

    /// Matrix of `f` with source and target expressed in split
    /// parenthesizations instead of combs.
    pub fn recouple(&self, f: &Morphism, source_split: usize, target_split: usize) -> Result<DMatrix<C64>> {
        let js = self.recoupling_matrix(&f.source, source_split)?;
        let jt = self.recoupling_matrix(&f.target, target_split)?;
        Ok(jt.matrix.adjoint() * &f.matrix * &js.matrix)
    }

    /// Inverse of [`Calculus::recouple`].
    pub fn uncouple(
        &self,
        m: &DMatrix<C64>,
        source: &TensorWord,
        target: &TensorWord,
        source_split: usize,
        target_split: usize,
    ) -> Result<Morphism> {
        let js = self.recoupling_matrix(source, source_split)?;
        let jt = self.recoupling_matrix(target, target_split)?;
        Ok(Morphism { source: source.clone(), target: target.clone(), matrix: &jt.matrix * m * js.matrix.adjoint() })
    }

    /// Solution of the conjugate equations with `r*r = rbar*rbar = d(λ)`.
    pub fn rigidity_pair(&self, l: Label) -> Arc<RigidityPair> {
        if let Some(p) = self.rigidity.lock().unwrap().get(&l) {
            return p.clone();
        }
        let pair = Arc::new(self.build_rigidity(l));
        self.rigidity.lock().unwrap().insert(l, pair.clone());
        pair
    }

    fn build_rigidity(&self, l: Label) -> RigidityPair {
        let lb = self.cat.dual(l);
        if lb.0 < l.0 {
            // pairs of a dual couple are shared so that bending twice is trivial
            let other = self.rigidity_pair(lb);
            return RigidityPair { label: l, r: other.rbar.clone(), rbar: other.r.clone() };
        }
        let sd = self.cat.qdim(l).sqrt();
        let cap = |a: Label, b: Label| {
            let w = TensorWord(vec![a, b]);
            let tree = FusionTree { path: vec![a, Label::UNIT], mults: vec![0] };
            let mut m = self.tree_morphism(&w, &tree).expect("duality vertex exists");
            m.source = TensorWord::empty();
            m.scale(c(sd, 0.0))
        };
        let r = cap(lb, l);
        let rbar0 = cap(l, lb);
        let wl = TensorWord(vec![l]);
        let zig = self
            .chain(&[&self.left_id(&wl, &r), &self.right_id(&self.adjoint(&rbar0), &wl)])
            .expect("zigzag shapes agree");
        let s = zig.matrix[(0, 0)];
        let rbar = rbar0.scale(c(1.0, 0.0) / s.conj());
        RigidityPair { label: l, r, rbar }
    }

    /// Largest defect of the two conjugate equations and the `d(λ)` normalization.
    pub fn conjugate_equation_residual(&self, l: Label) -> f64 {
        let p = self.rigidity_pair(l);
        let lb = self.cat.dual(l);
        let wl = TensorWord(vec![l]);
        let wlb = TensorWord(vec![lb]);
        let z1 = self.chain(&[&self.left_id(&wl, &p.r), &self.right_id(&self.adjoint(&p.rbar), &wl)]).unwrap();
        let z2 = self.chain(&[&self.left_id(&wlb, &p.rbar), &self.right_id(&self.adjoint(&p.r), &wlb)]).unwrap();
        let d = self.cat.qdim(l);
        let n1 = (self.compose(&self.adjoint(&p.r), &p.r).unwrap().matrix[(0, 0)] - d).norm();
        let n2 = (self.compose(&self.adjoint(&p.rbar), &p.rbar).unwrap().matrix[(0, 0)] - d).norm();
        z1.distance(&self.identity(&wl)).max(z2.distance(&self.identity(&wlb))).max(n1).max(n2)
    }

    /// Standard left inverse `φ_λ(X) = d(λ)⁻¹ (r*⊗1)(1_λ̄⊗X)(r⊗1)` for
    /// `X ∈ Hom(λ w₁, λ w₂)`.
    pub fn left_inverse(&self, l: Label, x: &Morphism) -> Result<Morphism> {
        if x.source.0.first() != Some(&l) || x.target.0.first() != Some(&l) {
            return Err(Error::Shape(format!(
                "left inverse of {l} needs words starting with {l}, got {}→{}",
                x.source, x.target
            )));
        }
        let w1 = TensorWord(x.source.0[1..].to_vec());
        let w2 = TensorWord(x.target.0[1..].to_vec());
        let p = self.rigidity_pair(l);
        let lb = TensorWord(vec![self.cat.dual(l)]);
        let out =
            self.chain(&[&self.right_id(&p.r, &w1), &self.left_id(&lb, x), &self.right_id(&self.adjoint(&p.r), &w2)])?;
        Ok(out.scale(c(1.0 / self.cat.qdim(l), 0.0)))
    }

    /// Braiding `c_{a,b} : ab → ba` from the R-symbols, if present.
    pub fn braiding(&self, a: Label, b: Label) -> Option<Morphism> {
        let src = TensorWord(vec![a, b]);
        let tgt = TensorWord(vec![b, a]);
        let sb = self.basis(&src);
        let tb = self.basis(&tgt);
        let mut m = self.zero(&src, &tgt);
        for (root, _) in self.cat.ring.products(a, b) {
            let r = self.cat.r_symbol(a, b, root)?;
            for mu in 0..r.nrows() {
                for nu in 0..r.ncols() {
                    let s = sb.index_of(&FusionTree { path: vec![a, root], mults: vec![mu] })?;
                    let t = tb.index_of(&FusionTree { path: vec![b, root], mults: vec![nu] })?;
                    m.matrix[(t, s)] = r[(mu, nu)];
                }
            }
        }
        Some(m)
    }
}
