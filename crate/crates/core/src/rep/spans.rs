//! Graded spans of products of generators inside `End(V)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Representation, Weight};
use crate::error::{Error, Result};
use crate::exact::rational::lcm_of_denominators;
use crate::exact::{Int, Module, QMatrix, Rat, Ring, Span};
use crate::rootdata::{ChevalleyBasis, RootSystem};

/// Scalars `c_α` of a Chevalley lattice `𝔗₀ ⊕ ⊕ Z c_α x_α`, in `roots()` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyLatticeData {
    #[serde(with = "crate::serde_util::rat_vec")]
    pub scales: Vec<Rat>,
}

impl ChevalleyLatticeData {
    pub fn unit(cb: &ChevalleyBasis) -> Self {
        ChevalleyLatticeData { scales: vec![Rat::one(); cb.xs().len()] }
    }

    /// The image of the unit data under the torus element with `α_i`-values `t_i`:
    /// `c_α = ∏ t_i^{m_i}` for `α = Σ m_i α_i`.
    pub fn torus(cb: &ChevalleyBasis, t: &[Rat]) -> Result<Self> {
        let rs = cb.root_system();
        if t.len() != rs.rank() || t.iter().any(Zero::is_zero) {
            return Err(Error::Invalid("torus element needs one nonzero value per simple root".into()));
        }
        let scales = rs
            .roots()
            .iter()
            .map(|m| m.iter().zip(t).fold(Rat::one(), |acc, (&e, ti)| acc * pow(ti, e)))
            .collect();
        Ok(ChevalleyLatticeData { scales })
    }

    /// Graded generators: scaled `x_α` and a basis of `𝔗₀`.
    pub fn generators(&self, rep: &Representation) -> Vec<(Vec<i64>, QMatrix)> {
        let rs = rep.root_system();
        let mut out: Vec<(Vec<i64>, QMatrix)> =
            rep.cartan_lattice_actions().into_iter().map(|m| (vec![0; rs.rank()], m)).collect();
        for (k, root) in rs.roots().iter().enumerate() {
            out.push((root.clone(), rep.x(k).scale(&self.scales[k])));
        }
        out
    }
}

fn pow(q: &Rat, e: i64) -> Rat {
    let b = if e < 0 { Rat::one() / q } else { q.clone() };
    (0..e.unsigned_abs()).fold(Rat::one(), |acc, _| acc * &b)
}

/// Per-degree modules spanned by products of graded generators.
///
/// An element of degree `μ` (simple-root coordinates) is stored compressed to
/// the matrix positions `(r, c)` with `wt(r) - wt(c) = μ`, the only places it
/// can be nonzero in an adapted basis.
#[derive(Clone, Debug)]
pub struct GradedSpans {
    d: usize,
    positions: BTreeMap<Vec<i64>, Vec<(usize, usize)>>,
    modules: BTreeMap<Vec<i64>, Module>,
    /// Longest product length that still enlarged some module.
    pub stabilized_at: Option<usize>,
}

impl GradedSpans {
    fn positions(rep: &Representation) -> BTreeMap<Vec<i64>, Vec<(usize, usize)>> {
        let rs = rep.root_system();
        let d = rep.dim();
        let mut pos: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
        for c in 0..d {
            for r in 0..d {
                if let Some(m) = rs.weight_to_root_coords(&rep.weight_of(r).sub(rep.weight_of(c)).0) {
                    pos.entry(m).or_default().push((r, c));
                }
            }
        }
        pos
    }

    /// Spans of all products of at most `max_len` generators whose partial
    /// degrees satisfy `keep`, starting from the identity.
    pub fn grow(
        rep: &Representation,
        gens: &[(Vec<i64>, QMatrix)],
        ring: Ring,
        max_len: usize,
        keep: &dyn Fn(&[i64]) -> bool,
    ) -> Self {
        let d = rep.dim();
        let l = rep.root_system().rank();
        let positions = Self::positions(rep);
        let mut s = GradedSpans { d, positions, modules: BTreeMap::new(), stabilized_at: None };
        let zero = vec![0i64; l];
        let id = QMatrix::identity(d);
        let v = s.compress(&zero, &id).expect("identity has degree zero");
        s.modules.insert(zero.clone(), Module::from_vectors(ring, v.len(), &[v]));
        let mut frontier = vec![(zero, id)];
        for round in 1..=max_len + 1 {
            let mut pending: BTreeMap<Vec<i64>, Vec<Vec<Rat>>> = BTreeMap::new();
            let mut next = Vec::new();
            for (deg, m) in &frontier {
                for (gd, g) in gens {
                    let nd: Vec<i64> = deg.iter().zip(gd).map(|(a, b)| a + b).collect();
                    if !keep(&nd) || !s.positions.contains_key(&nd) {
                        continue;
                    }
                    let prod = g * m;
                    if prod.is_zero() {
                        continue;
                    }
                    let v = s.compress(&nd, &prod).expect("products are homogeneous");
                    if s.modules.get(&nd).is_some_and(|md| md.contains(&v)) {
                        continue;
                    }
                    pending.entry(nd.clone()).or_default().push(v);
                    next.push((nd, prod));
                }
            }
            if next.is_empty() {
                s.stabilized_at = Some(round - 1);
                break;
            }
            if round > max_len {
                break;
            }
            for (deg, vs) in pending {
                let n = s.positions[&deg].len();
                let m = s.modules.entry(deg).or_insert_with(|| Module::zero(ring, n));
                *m = m.add_vectors(&vs);
            }
            frontier = next;
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn module(&self, deg: &[i64]) -> Option<&Module> {
        self.modules.get(deg)
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.modules.keys()
    }

    /// Entries of `m` at the positions of degree `deg`; `None` if `m` is not homogeneous of that degree.
    pub fn compress(&self, deg: &[i64], m: &QMatrix) -> Option<Vec<Rat>> {
        let pos = self.positions.get(deg)?;
        let v: Vec<Rat> = pos.iter().map(|&(r, c)| m[(r, c)].clone()).collect();
        let nonzero = m.entries().iter().filter(|x| !x.is_zero()).count();
        let kept = v.iter().filter(|x| !x.is_zero()).count();
        (nonzero == kept).then_some(v)
    }

    pub fn expand(&self, deg: &[i64], v: &[Rat]) -> QMatrix {
        let mut m = QMatrix::zeros(self.d, self.d);
        for (&(r, c), x) in self.positions[deg].iter().zip(v) {
            m[(r, c)] = x.clone();
        }
        m
    }

    /// Basis of the degree-`deg` module as matrices.
    pub fn matrices(&self, deg: &[i64]) -> Vec<QMatrix> {
        self.modules.get(deg).map(|m| m.generators().iter().map(|v| self.expand(deg, v)).collect()).unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCertificate {
    pub surjective: bool,
    pub rank: usize,
    pub required: usize,
    pub product_length: i64,
}

/// Rank check that degree `∓(ψ-χ)` products of simple root vectors span
/// `Hom(V_(ψ),ψ, V_(ψ),χ)` (sign `-`) or `Hom(V_(ψ),χ, V_(ψ),ψ)` (sign `+`).
pub fn check_transition_surjectivity(rep: &Representation, psi: &Weight, chi: &Weight, sign: Sign) -> Result<TransitionCertificate> {
    let rs = rep.root_system();
    if !rep.highest_weights().iter().any(|(w, _)| w == psi) {
        return Err(Error::Invalid(format!("{psi} is not a highest weight of the representation")));
    }
    let top = rep.block(psi, psi).expect("highest-weight block");
    let low = rep.block(psi, chi).ok_or_else(|| Error::NotAWeight(chi.0.clone()))?;
    let depth = rs.weight_to_root_coords(&psi.sub(chi).0).expect("block weights differ by roots");
    let (src, tgt) = match sign {
        Sign::Minus => (top, low),
        Sign::Plus => (low, top),
    };
    let l = rs.rank();
    let gens: Vec<&QMatrix> = (0..l).map(|i| if sign == Sign::Minus { rep.f(i) } else { rep.e(i) }).collect();
    let d = rep.dim();
    let m = src.indices.len();
    let start = QMatrix::from_fn(d, m, |r, c| if r == src.indices[c] { Rat::one() } else { Rat::zero() });

    // level-by-level over the partial degree, measured as a nonnegative vector below `depth`
    let mut level: BTreeMap<Vec<i64>, Span> = BTreeMap::new();
    level.insert(vec![0; l], Span::from_vectors(d * m, [start.flatten()]));
    for _ in 0..RootSystem::height(&depth) {
        let mut next: BTreeMap<Vec<i64>, Span> = BTreeMap::new();
        for (deg, span) in &level {
            for (i, g) in gens.iter().enumerate() {
                let mut nd = deg.clone();
                nd[i] += 1;
                if nd[i] > depth[i] {
                    continue;
                }
                let sp = next.entry(nd).or_insert_with(|| Span::new(d * m));
                for v in span.basis() {
                    let prod = *g * &QMatrix::unflatten(d, m, v);
                    if !prod.is_zero() {
                        sp.insert(prod.flatten());
                    }
                }
            }
        }
        level = next;
    }
    let mut restricted = Span::new(tgt.indices.len() * m);
    if let Some(span) = level.get(&depth) {
        for v in span.basis() {
            let prod = QMatrix::unflatten(d, m, v);
            restricted.insert(prod.select_rows(&tgt.indices).flatten());
        }
    }
    let required = tgt.indices.len() * m;
    Ok(TransitionCertificate {
        surjective: restricted.rank() == required,
        rank: restricted.rank(),
        required,
        product_length: RootSystem::height(&depth),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockConstant {
    pub psi: Weight,
    pub chi: Weight,
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorConstant {
    /// Least `r` with `r · pr_(ψ),χ` in the degree-zero span for every block.
    pub r: u64,
    pub blocks: Vec<BlockConstant>,
    /// Product length after which no span grew.
    pub stabilized_at: usize,
    /// `max_ψ height(ψ - χ_min) + 2`.
    pub cap: usize,
    /// Whether stabilization happened within the cap.
    pub certified: bool,
}

/// Exact minimal `r` such that every `r · pr_(ψ),χ` lies in the `Z`-span of
/// degree-zero products of the Chevalley generators.
pub fn projector_constant(rep: &Representation, data: &ChevalleyLatticeData) -> Result<ProjectorConstant> {
    let cap = rep
        .highest_weights()
        .iter()
        .map(|(psi, _)| {
            let low = rep.lowest_weight(psi).expect("nonempty component");
            rep.depth(psi, &low) as usize + 2
        })
        .max()
        .unwrap_or(2);
    let hard = 2 * cap + 4;
    let gens = data.generators(rep);
    let spans = GradedSpans::grow(rep, &gens, Ring::Integers, hard, &|_| true);
    let stabilized_at = spans
        .stabilized_at
        .ok_or_else(|| Error::NoStabilization(format!("products up to length {hard} keep enlarging the span")))?;
    let zero = vec![0i64; rep.root_system().rank()];
    let m0 = spans.module(&zero).expect("identity");
    let mut r = Int::one();
    let mut blocks = Vec::new();
    for b in rep.blocks() {
        let pr = rep.projector(&b.psi, &b.chi);
        let v = spans.compress(&zero, &pr).expect("projectors have degree zero");
        let c = m0.span_coordinates(&v).ok_or_else(|| {
            Error::CapExceeded(format!("projector onto block {} / {} not in the span after length {hard}", b.psi, b.chi))
        })?;
        let rb = lcm_of_denominators(&c);
        r = r.lcm(&rb);
        blocks.push(BlockConstant { psi: b.psi.clone(), chi: b.chi.clone(), r: rb.to_u64().expect("small constant") });
    }
    Ok(ProjectorConstant { r: r.to_u64().expect("small constant"), blocks, stabilized_at, cap, certified: stabilized_at < cap })
}
