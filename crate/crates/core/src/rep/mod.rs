//! Finite-dimensional representations with weight and isotypic block data.
//!
//! A [`Representation`] always stores its action in a basis adapted to the
//! decomposition `V = ⊕_ψ ⊕_χ V_(ψ),χ`: every basis vector lies in exactly
//! one block.

mod irrep;
mod spans;

pub use irrep::{build_irrep, exterior_power, weyl_dimension};
pub use spans::{
    check_transition_surjectivity, projector_constant, ChevalleyLatticeData, GradedSpans, ProjectorConstant, Sign,
    TransitionCertificate,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rat, Span};
use crate::rootdata::{ChevalleyBasis, Isogeny, RootSystem, TypeLabel};
use crate::serde_util;

/// Weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        Weight(coords.to_vec())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Basis indices spanning `V_(ψ),χ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub psi: Weight,
    pub chi: Weight,
    pub indices: Vec<usize>,
}

/// One isotypic component as reported by [`decompose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isotypic {
    pub psi: Weight,
    pub multiplicity: usize,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug)]
pub struct Representation {
    cb: Arc<ChevalleyBasis>,
    h: Vec<QMatrix>,
    x: Vec<QMatrix>,
    blocks: Vec<Block>,
    highest: Vec<(Weight, usize)>,
    block_of: Vec<usize>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.cb.root_system() == other.cb.root_system()
            && self.cb.isogeny() == other.cb.isogeny()
            && self.h == other.h
            && self.x == other.x
    }
}

/// Weight-space data of an action, before choosing a basis.
struct Analysis {
    /// `(ψ, multiplicity, [(χ, basis of V_(ψ),χ)])`
    components: Vec<(Weight, usize, Vec<(Weight, Vec<Vec<Rat>>)>)>,
}

impl Representation {
    /// Validates the action, decomposes it and rebases to an adapted basis if necessary.
    ///
    /// `h[i]` is the action of the simple coroot `h_i`, `x[k]` that of `x_α` for
    /// `α = roots()[k]`.
    pub fn from_action(cb: Arc<ChevalleyBasis>, h: Vec<QMatrix>, x: Vec<QMatrix>) -> Result<Self> {
        check_relations(&cb, &h, &x).map_err(Error::NotARepresentation)?;
        let d = h.first().map(|m| m.rows()).or_else(|| x.first().map(|m| m.rows())).unwrap_or(0);
        if d == 0 {
            return Err(Error::NotARepresentation("zero-dimensional space".into()));
        }
        let an = analyze(&cb, &h, &x)?;
        let highest: Vec<(Weight, usize)> = an.components.iter().map(|(p, m, _)| (p.clone(), *m)).collect();

        let mut blocks = Vec::new();
        let mut adapted = true;
        let mut seen = vec![false; d];
        'outer: for (psi, _, bl) in &an.components {
            for (chi, basis) in bl {
                let span = Span::from_vectors(d, basis.iter().cloned());
                let mut idx = Vec::new();
                for j in 0..d {
                    if span.contains(&unit(d, j)) {
                        if seen[j] {
                            adapted = false;
                            break 'outer;
                        }
                        seen[j] = true;
                        idx.push(j);
                    }
                }
                if idx.len() != span.rank() {
                    adapted = false;
                    break 'outer;
                }
                blocks.push(Block { psi: psi.clone(), chi: chi.clone(), indices: idx });
            }
        }
        if adapted {
            return Ok(Self::assemble(cb, h, x, blocks, highest));
        }

        let mut cols = Vec::new();
        let mut blocks = Vec::new();
        for (psi, _, bl) in &an.components {
            for (chi, basis) in bl {
                let start = cols.len();
                let (r, piv) = QMatrix::from_rows(basis.clone()).rref();
                cols.extend((0..piv.len()).map(|k| r.row(k)));
                blocks.push(Block { psi: psi.clone(), chi: chi.clone(), indices: (start..cols.len()).collect() });
            }
        }
        let p = QMatrix::from_columns(d, &cols);
        let pinv = p.inverse().ok_or_else(|| Error::NotARepresentation("blocks do not span".into()))?;
        let conj = |m: &QMatrix| &(&pinv * m) * &p;
        let h = h.iter().map(conj).collect();
        let x = x.iter().map(conj).collect();
        Ok(Self::assemble(cb, h, x, blocks, highest))
    }

    fn assemble(cb: Arc<ChevalleyBasis>, h: Vec<QMatrix>, x: Vec<QMatrix>, blocks: Vec<Block>, highest: Vec<(Weight, usize)>) -> Self {
        let d = h.first().map(|m| m.rows()).unwrap_or_else(|| x[0].rows());
        let mut block_of = vec![0; d];
        for (b, bl) in blocks.iter().enumerate() {
            for &i in &bl.indices {
                block_of[i] = b;
            }
        }
        Representation { cb, h, x, blocks, highest, block_of }
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(cb: Arc<ChevalleyBasis>) -> Self {
        let l = cb.rank();
        let nr = cb.xs().len();
        let z = QMatrix::zeros(1, 1);
        let w = Weight::zero(l);
        let blocks = vec![Block { psi: w.clone(), chi: w.clone(), indices: vec![0] }];
        Self::assemble(cb, vec![z.clone(); l], vec![z; nr], blocks, vec![(w, 1)])
    }

    /// The defining matrix realization.
    pub fn defining(cb: Arc<ChevalleyBasis>) -> Result<Self> {
        let h = cb.hs().to_vec();
        let x = cb.xs().to_vec();
        Self::from_action(cb, h, x)
    }

    /// `𝔤` acting on itself, in the documented basis of `𝔤`.
    pub fn adjoint(cb: Arc<ChevalleyBasis>) -> Result<Self> {
        let h = cb.hs().iter().map(|m| cb.ad(m)).collect();
        let x = cb.xs().iter().map(|m| cb.ad(m)).collect();
        Self::from_action(cb, h, x)
    }

    pub fn chevalley(&self) -> &ChevalleyBasis {
        &self.cb
    }

    pub fn chevalley_arc(&self) -> &Arc<ChevalleyBasis> {
        &self.cb
    }

    pub fn root_system(&self) -> &RootSystem {
        self.cb.root_system()
    }

    pub fn dim(&self) -> usize {
        self.block_of.len()
    }

    /// Action of the simple coroot `h_i`.
    pub fn h(&self, i: usize) -> &QMatrix {
        &self.h[i]
    }

    pub fn hs(&self) -> &[QMatrix] {
        &self.h
    }

    /// Action of `x_α` for `α = roots()[k]`.
    pub fn x(&self, k: usize) -> &QMatrix {
        &self.x[k]
    }

    pub fn xs(&self) -> &[QMatrix] {
        &self.x
    }

    /// Action of `x_{α_i}`.
    pub fn e(&self, i: usize) -> &QMatrix {
        &self.x[self.root_system().simple_index(i)]
    }

    /// Action of `x_{-α_i}`.
    pub fn f(&self, i: usize) -> &QMatrix {
        let rs = self.root_system();
        &self.x[rs.negative_of(rs.simple_index(i))]
    }

    /// Action of an element of the Cartan given in the `h_i` basis.
    pub fn cartan_action(&self, t: &[Rat]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (c, hi) in t.iter().zip(&self.h) {
            if !c.is_zero() {
                m = &m + &hi.scale(c);
            }
        }
        m
    }

    /// Actions of a `Z`-basis of `𝔗₀`.
    pub fn cartan_lattice_actions(&self) -> Vec<QMatrix> {
        self.cb.cartan_lattice().generators().iter().map(|t| self.cartan_action(t)).collect()
    }

    /// Action of an element of `𝔤` given in coordinates.
    pub fn action_of(&self, c: &[Rat]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (ci, a) in c.iter().zip(self.h.iter().chain(self.x.iter())) {
            if !ci.is_zero() {
                m = &m + &a.scale(ci);
            }
        }
        m
    }

    /// Actions of the documented basis of `𝔤`.
    pub fn basis_actions(&self) -> Vec<QMatrix> {
        self.h.iter().chain(self.x.iter()).cloned().collect()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, psi: &Weight, chi: &Weight) -> Option<&Block> {
        self.blocks.iter().find(|b| &b.psi == psi && &b.chi == chi)
    }

    /// Index into [`blocks`](Self::blocks) of the block containing basis vector `j`.
    pub fn block_index_of(&self, j: usize) -> usize {
        self.block_of[j]
    }

    /// Weight of basis vector `j`.
    pub fn weight_of(&self, j: usize) -> &Weight {
        &self.blocks[self.block_of[j]].chi
    }

    /// `𝒟` with multiplicities.
    pub fn highest_weights(&self) -> &[(Weight, usize)] {
        &self.highest
    }

    pub fn blocks_of(&self, psi: &Weight) -> impl Iterator<Item = &Block> {
        let psi = psi.clone();
        self.blocks.iter().filter(move |b| b.psi == psi)
    }

    /// Lowest weight of `V_(ψ)`: the block furthest below `ψ`.
    pub fn lowest_weight(&self, psi: &Weight) -> Option<Weight> {
        self.blocks_of(psi).max_by_key(|b| self.depth(&b.psi, &b.chi)).map(|b| b.chi.clone())
    }

    /// Height of `ψ - χ` in simple-root coordinates.
    pub fn depth(&self, psi: &Weight, chi: &Weight) -> i64 {
        let d = psi.sub(chi);
        self.root_system().weight_to_root_coords(&d.0).map(|c| RootSystem::height(&c)).unwrap_or(i64::MAX)
    }

    /// Exact check of `ρ([a,b]) = [ρ(a), ρ(b)]` for every pair of basis elements of `𝔤`.
    pub fn check_homomorphism(&self) -> std::result::Result<(), String> {
        let g = self.cb.basis_matrices();
        let r = self.basis_actions();
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                let c = self.cb.coordinates(&g[a].commutator(&g[b])).ok_or("bracket left 𝔤")?;
                if self.action_of(&c) != r[a].commutator(&r[b]) {
                    return Err(format!("bracket of basis elements {a} and {b} not preserved"));
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(reps: &[Representation]) -> Result<Representation> {
        let first = reps.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        same_algebra(reps)?;
        let cb = first.cb.clone();
        let h = (0..cb.rank()).map(|i| QMatrix::block_diagonal(&reps.iter().map(|r| r.h[i].clone()).collect::<Vec<_>>())).collect();
        let x = (0..cb.xs().len()).map(|k| QMatrix::block_diagonal(&reps.iter().map(|r| r.x[k].clone()).collect::<Vec<_>>())).collect();
        Self::from_action(cb, h, x)
    }

    /// Tensor product `a ⊗ b`, basis `u_i ⊗ v_j` in lexicographic order.
    pub fn tensor(a: &Representation, b: &Representation) -> Result<Representation> {
        same_algebra(&[a.clone(), b.clone()])?;
        let (ia, ib) = (QMatrix::identity(a.dim()), QMatrix::identity(b.dim()));
        let t = |p: &QMatrix, q: &QMatrix| &p.kron(&ib) + &ia.kron(q);
        let h = a.h.iter().zip(&b.h).map(|(p, q)| t(p, q)).collect();
        let x = a.x.iter().zip(&b.x).map(|(p, q)| t(p, q)).collect();
        Self::from_action(a.cb.clone(), h, x)
    }

    /// The projection `pr_(ψ),χ`; zero when the block does not exist.
    pub fn projector(&self, psi: &Weight, chi: &Weight) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        if let Some(b) = self.block(psi, chi) {
            for &i in &b.indices {
                m[(i, i)] = Rat::one();
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn same_algebra(reps: &[Representation]) -> Result<()> {
    let cb = &reps[0].cb;
    for r in reps {
        if r.cb.root_system() != cb.root_system() || r.cb.isogeny() != cb.isogeny() {
            return Err(Error::Invalid("representations of different Lie algebras".into()));
        }
    }
    Ok(())
}

/// Highest weights with their isotypic block structure.
pub fn decompose(rep: &Representation) -> Vec<Isotypic> {
    rep.highest
        .iter()
        .map(|(psi, m)| Isotypic { psi: psi.clone(), multiplicity: *m, blocks: rep.blocks_of(psi).cloned().collect() })
        .collect()
}

fn unit(d: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[j] = Rat::one();
    v
}

/// Checks a presentation of `𝔤` (Chevalley-Serre relations) plus consistency of
/// the non-simple root vectors with the recursion used to build them.
pub(crate) fn check_relations(cb: &ChevalleyBasis, h: &[QMatrix], x: &[QMatrix]) -> std::result::Result<(), String> {
    let rs = cb.root_system();
    let l = rs.rank();
    if h.len() != l || x.len() != rs.roots().len() {
        return Err(format!("expected {l} Cartan and {} root matrices", rs.roots().len()));
    }
    let d = h[0].rows();
    if h.iter().chain(x).any(|m| m.rows() != d || m.cols() != d) {
        return Err("action matrices must be square of equal size".into());
    }
    for i in 0..l {
        for j in i + 1..l {
            if !h[i].commutator(&h[j]).is_zero() {
                return Err(format!("h_{i} and h_{j} do not commute"));
            }
        }
    }
    for (k, root) in rs.roots().iter().enumerate() {
        for i in 0..l {
            let c = Rat::from_integer(rs.pairing(root, i).into());
            if h[i].commutator(&x[k]) != x[k].scale(&c) {
                return Err(format!("[h_{i}, x_{root:?}] is wrong"));
            }
        }
    }
    let e = |i: usize| &x[rs.simple_index(i)];
    let f = |i: usize| &x[rs.negative_of(rs.simple_index(i))];
    for i in 0..l {
        for j in 0..l {
            let c = e(i).commutator(f(j));
            let ok = if i == j { c == h[i] } else { c.is_zero() };
            if !ok {
                return Err(format!("[e_{i}, f_{j}] is wrong"));
            }
        }
    }
    for i in 0..l {
        for j in 0..l {
            if i == j {
                continue;
            }
            let n = 1 - rs.cartan()[i][j];
            for (neg, name) in [(false, "e"), (true, "f")] {
                let g = |k: usize| if neg { f(k) } else { e(k) };
                let mut m = g(j).clone();
                for _ in 0..n {
                    m = g(i).commutator(&m);
                }
                if !m.is_zero() {
                    return Err(format!("Serre relation for {name}_{i}, {name}_{j} fails"));
                }
            }
        }
    }
    for k in 0..rs.num_positive() {
        if let Some((i, b, r)) = rs.predecessor(k) {
            let div = Rat::from_integer((r + 1).into());
            if e(i).commutator(&x[b]) != x[k].scale(&div) {
                return Err(format!("x_{:?} inconsistent with the Chevalley basis", rs.roots()[k]));
            }
            let nk = rs.negative_of(k);
            if f(i).commutator(&x[rs.negative_of(b)]) != x[nk].scale(&(-div)) {
                return Err(format!("x_{:?} inconsistent with the Chevalley basis", rs.roots()[nk]));
            }
        }
    }
    Ok(())
}

/// Joint eigenspaces of commuting `h_i` with integer eigenvalues.
pub(crate) fn joint_eigenspaces(h: &[QMatrix], d: usize) -> Result<Vec<(Weight, Vec<Vec<Rat>>)>> {
    let diagonal = h.iter().all(|m| (0..d).all(|i| (0..d).all(|j| i == j || m[(i, j)].is_zero())));
    if diagonal {
        let mut map: BTreeMap<Vec<i64>, Vec<Vec<Rat>>> = BTreeMap::new();
        for j in 0..d {
            let w = h
                .iter()
                .map(|m| {
                    let v = &m[(j, j)];
                    if v.is_integer() {
                        v.to_integer().to_i64().ok_or_else(|| Error::NotARepresentation("weight overflow".into()))
                    } else {
                        Err(Error::NotARepresentation("non-integral weight".into()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            map.entry(w).or_default().push(unit(d, j));
        }
        return Ok(map.into_iter().map(|(w, b)| (Weight(w), b)).collect());
    }
    let mut spaces: Vec<(Vec<i64>, Vec<Vec<Rat>>)> = vec![(vec![], (0..d).map(|j| unit(d, j)).collect())];
    for hi in h {
        let mut next = Vec::new();
        for (prefix, basis) in spaces {
            let k = basis.len();
            let b = QMatrix::from_columns(d, &basis);
            let hb = hi * &b;
            let rows = b.transpose().independent_columns();
            let left = b.select_rows(&rows).inverse().expect("independent rows");
            let r = &left * &hb.select_rows(&rows);
            if &b * &r != hb {
                return Err(Error::NotARepresentation("Cartan action does not preserve weight spaces".into()));
            }
            let bound = (0..k)
                .map(|i| (0..k).fold(Rat::zero(), |acc, j| acc + r[(i, j)].abs()))
                .max()
                .unwrap_or_else(Rat::zero)
                .ceil()
                .to_integer()
                .to_i64()
                .unwrap_or(i64::MAX);
            let mut found = 0;
            for lam in -bound..=bound {
                let shifted = &r - &QMatrix::identity(k).scale(&Rat::from_integer(lam.into()));
                let ker = shifted.kernel();
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let mut p = prefix.clone();
                p.push(lam);
                next.push((p, ker.iter().map(|c| b.mul_vec(c)).collect()));
            }
            if found != k {
                return Err(Error::NotARepresentation("Cartan action is not diagonalizable with integer eigenvalues".into()));
            }
        }
        spaces = next;
    }
    spaces.sort();
    Ok(spaces.into_iter().map(|(w, b)| (Weight(w), b)).collect())
}

/// Highest-weight vectors per weight: joint kernel of the simple `e_i` on each weight space.
pub(crate) fn highest_weight_vectors(
    es: &[&QMatrix],
    spaces: &[(Weight, Vec<Vec<Rat>>)],
    d: usize,
) -> Vec<(Weight, Vec<Vec<Rat>>)> {
    let mut out = Vec::new();
    for (w, basis) in spaces {
        let b = QMatrix::from_columns(d, basis);
        let stacked = es.iter().fold(None::<QMatrix>, |acc, e| {
            let m = *e * &b;
            Some(match acc {
                None => m,
                Some(a) => a.vcat(&m),
            })
        });
        let ker = match stacked {
            Some(s) => s.kernel(),
            None => (0..basis.len()).map(|j| unit(basis.len(), j)).collect(),
        };
        if !ker.is_empty() {
            out.push((w.clone(), ker.iter().map(|c| b.mul_vec(c)).collect()));
        }
    }
    out
}

/// Subspace generated from `start` (all of weight `top`) under the simple `f_i`, per weight.
pub(crate) fn lowering_closure(
    rs: &RootSystem,
    fs: &[&QMatrix],
    top: &Weight,
    start: &[Vec<Rat>],
    d: usize,
) -> BTreeMap<Weight, Span> {
    let mut spans: BTreeMap<Weight, Span> = BTreeMap::new();
    let mut queue = Vec::new();
    let s = spans.entry(top.clone()).or_insert_with(|| Span::new(d));
    for v in start {
        if s.insert(v.clone()) {
            queue.push((top.clone(), v.clone()));
        }
    }
    while let Some((w, v)) = queue.pop() {
        for (i, f) in fs.iter().enumerate() {
            let u = f.mul_vec(&v);
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            let nw = Weight(w.0.iter().enumerate().map(|(j, c)| c - rs.cartan()[j][i]).collect());
            if spans.entry(nw.clone()).or_insert_with(|| Span::new(d)).insert(u.clone()) {
                queue.push((nw, u));
            }
        }
    }
    spans
}

fn analyze(cb: &ChevalleyBasis, h: &[QMatrix], x: &[QMatrix]) -> Result<Analysis> {
    let rs = cb.root_system();
    let l = rs.rank();
    let d = h[0].rows();
    let spaces = joint_eigenspaces(h, d)?;
    let es: Vec<&QMatrix> = (0..l).map(|i| &x[rs.simple_index(i)]).collect();
    let fs: Vec<&QMatrix> = (0..l).map(|i| &x[rs.negative_of(rs.simple_index(i))]).collect();
    let mut hws = highest_weight_vectors(&es, &spaces, d);
    hws.sort_by(|a, b| b.0.cmp(&a.0));
    let mut components = Vec::new();
    let mut all = Span::new(d);
    for (psi, vecs) in &hws {
        if !psi.is_dominant() {
            return Err(Error::NotARepresentation(format!("highest weight {psi} is not dominant")));
        }
        let spans = lowering_closure(rs, &fs, psi, vecs, d);
        let depth = |chi: &Weight| {
            rs.weight_to_root_coords(&psi.sub(chi).0).map(|c| RootSystem::height(&c)).unwrap_or(i64::MAX)
        };
        let mut blocks: Vec<(Weight, Vec<Vec<Rat>>)> = spans.into_iter().map(|(w, s)| (w, s.basis().to_vec())).collect();
        blocks.sort_by(|a, b| depth(&a.0).cmp(&depth(&b.0)).then_with(|| b.0.cmp(&a.0)));
        for (_, b) in &blocks {
            for v in b {
                if !all.insert(v.clone()) {
                    return Err(Error::NotARepresentation("isotypic components overlap".into()));
                }
            }
        }
        components.push((psi.clone(), vecs.len(), blocks));
    }
    if all.rank() != d {
        return Err(Error::NotARepresentation("highest-weight vectors do not generate the space".into()));
    }
    Ok(Analysis { components })
}

#[derive(Serialize, Deserialize)]
struct RootAction {
    root: Vec<i64>,
    #[serde(with = "serde_util::matrix")]
    matrix: QMatrix,
}

#[derive(Serialize, Deserialize)]
struct HighestWeight {
    weight: Weight,
    multiplicity: usize,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "type")]
    label: TypeLabel,
    rank: usize,
    #[serde(default)]
    isogeny: Isogeny,
    dim: usize,
    #[serde(with = "serde_util::matrix_vec")]
    cartan_action: Vec<QMatrix>,
    root_action: Vec<RootAction>,
    #[serde(default)]
    blocks: Vec<Block>,
    #[serde(default)]
    highest_weights: Vec<HighestWeight>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rs = self.root_system();
        Wire {
            label: rs.label(),
            rank: rs.rank(),
            isogeny: self.cb.isogeny(),
            dim: self.dim(),
            cartan_action: self.h.clone(),
            root_action: rs.roots().iter().zip(&self.x).map(|(r, m)| RootAction { root: r.clone(), matrix: m.clone() }).collect(),
            blocks: self.blocks.clone(),
            highest_weights: self.highest.iter().map(|(w, m)| HighestWeight { weight: w.clone(), multiplicity: *m }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let cb = ChevalleyBasis::build(w.label, w.rank, w.isogeny).map_err(D::Error::custom)?;
        let rs = cb.root_system();
        let mut x = vec![None; rs.roots().len()];
        for ra in w.root_action {
            let k = rs.root_index(&ra.root).ok_or_else(|| D::Error::custom(format!("{:?} is not a root", ra.root)))?;
            x[k] = Some(ra.matrix);
        }
        let x: Vec<QMatrix> = x.into_iter().collect::<Option<_>>().ok_or_else(|| D::Error::custom("missing root actions"))?;
        let rep = Representation::from_action(Arc::new(cb), w.cartan_action, x).map_err(D::Error::custom)?;
        if rep.dim() != w.dim {
            return Err(D::Error::custom("dimension field disagrees with the matrices"));
        }
        if !w.blocks.is_empty() && w.blocks != rep.blocks {
            return Err(D::Error::custom("basis is not adapted to the stated block decomposition"));
        }
        Ok(rep)
    }
}
