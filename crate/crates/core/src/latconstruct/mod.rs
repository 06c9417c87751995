//! Sandwich lattices `S⁻ ⊆ S⁺`, Chevalley-invariant hulls and orbit enumeration.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{floor_div, p_power, valuation};
use crate::exact::{for_each_between, Int, Lattice, Module, QMatrix, Rat, Ring};
use crate::rep::{ChevalleyLatticeData, GradedSpans, Representation, Sign, Weight};

/// Generator lattices `L^±` and highest-weight lattices `J`.
///
/// `plus[k]` scales `x_α` and `minus[k]` scales `x_{-α}` for the k-th positive
/// root; `j` holds `J_ψ` in the coordinates of the block `V_(ψ),ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeData {
    #[serde(with = "crate::serde_util::rat_vec")]
    pub plus: Vec<Rat>,
    #[serde(with = "crate::serde_util::rat_vec")]
    pub minus: Vec<Rat>,
    pub j: Vec<(Weight, Lattice)>,
}

impl EdgeData {
    /// Unit scales and `J_ψ = R^{m_ψ}`.
    pub fn unit(rep: &Representation, ring: Ring) -> Self {
        let np = rep.root_system().num_positive();
        let j = rep
            .highest_weights()
            .iter()
            .map(|(psi, m)| (psi.clone(), Lattice::standard(ring, *m)))
            .collect();
        EdgeData { plus: vec![Rat::one(); np], minus: vec![Rat::one(); np], j }
    }

    pub fn ring(&self) -> Ring {
        self.j.first().map(|(_, l)| l.ring()).unwrap_or(Ring::Integers)
    }

    pub fn j_of(&self, psi: &Weight) -> Option<&Lattice> {
        self.j.iter().find(|(w, _)| w == psi).map(|(_, l)| l)
    }

    pub fn validate(&self, rep: &Representation) -> Result<()> {
        let np = rep.root_system().num_positive();
        if self.plus.len() != np || self.minus.len() != np {
            return Err(Error::Invalid(format!("edge data needs {np} scales per sign")));
        }
        if self.plus.iter().chain(&self.minus).any(Zero::is_zero) {
            return Err(Error::Invalid("edge scales must be nonzero".into()));
        }
        for (psi, m) in rep.highest_weights() {
            let j = self.j_of(psi).ok_or_else(|| Error::Invalid(format!("no J for {psi}")))?;
            if j.ambient_dim() != *m {
                return Err(Error::DimensionMismatch { expected: *m, found: j.ambient_dim() });
            }
            if j.ring() != self.ring() {
                return Err(Error::RingMismatch(j.ring().to_string(), self.ring().to_string()));
            }
        }
        Ok(())
    }

    /// Image under the torus element acting by `s^{<χ, n>}` on weight `χ`.
    pub fn transform_torus(&self, rep: &Representation, s: &Rat, n: &[i64]) -> EdgeData {
        let rs = rep.root_system();
        let pair = |w: &[i64]| w.iter().zip(n).map(|(a, b)| a * b).sum::<i64>();
        let sp = |e: i64| pow(s, e);
        let np = rs.num_positive();
        let plus = (0..np).map(|k| &self.plus[k] * sp(pair(&rs.to_weight(&rs.roots()[k])))).collect();
        let minus = (0..np).map(|k| &self.minus[k] * sp(-pair(&rs.to_weight(&rs.roots()[k])))).collect();
        let j = self.j.iter().map(|(psi, l)| (psi.clone(), l.scale(&sp(pair(&psi.0))))).collect();
        EdgeData { plus, minus, j }
    }

    fn generators(&self, rep: &Representation, sign: Sign) -> Vec<(Vec<i64>, QMatrix)> {
        let rs = rep.root_system();
        (0..rs.num_positive())
            .map(|k| match sign {
                Sign::Plus => (rs.roots()[k].clone(), rep.x(k).scale(&self.plus[k])),
                Sign::Minus => {
                    let nk = rs.negative_of(k);
                    (rs.roots()[nk].clone(), rep.x(nk).scale(&self.minus[k]))
                }
            })
            .collect()
    }
}

fn pow(q: &Rat, e: i64) -> Rat {
    let b = if e < 0 { Rat::one() / q } else { q.clone() };
    (0..e.unsigned_abs()).fold(Rat::one(), |acc, _| acc * &b)
}

/// Diagonal matrix of the torus element used by [`EdgeData::transform_torus`].
pub fn torus_matrix(rep: &Representation, s: &Rat, n: &[i64]) -> QMatrix {
    let d = rep.dim();
    let diag: Vec<Rat> = (0..d).map(|j| pow(s, rep.weight_of(j).0.iter().zip(n).map(|(a, b)| a * b).sum())).collect();
    QMatrix::diagonal(&diag)
}

/// Longest product that can be nonzero on `V`.
fn length_cap(rep: &Representation) -> usize {
    rep.highest_weights()
        .iter()
        .map(|(psi, _)| rep.depth(psi, &rep.lowest_weight(psi).expect("nonempty")) as usize + 2)
        .max()
        .unwrap_or(2)
}

/// `Z`-span (over the edge ring) of scaled products `x_{±α_1}···x_{±α_k}` of total degree `degree`.
pub fn u_span(rep: &Representation, edge: &EdgeData, sign: Sign, degree: &[i64]) -> Result<Vec<QMatrix>> {
    edge.validate(rep)?;
    let cap = length_cap(rep);
    let s: i64 = if sign == Sign::Plus { 1 } else { -1 };
    if degree.iter().any(|&c| c * s < 0) {
        return Ok(vec![]);
    }
    let target = degree.to_vec();
    let keep = move |d: &[i64]| d.iter().zip(&target).all(|(a, t)| a * s >= 0 && a * s <= t * s);
    let spans = GradedSpans::grow(rep, &edge.generators(rep, sign), edge.ring(), cap, &keep);
    if spans.stabilized_at.is_none() {
        return Err(Error::CapExceeded(format!("products of length {cap} still enlarge the span")));
    }
    Ok(spans.matrices(degree))
}

fn block_vector(rep: &Representation, psi: &Weight, v: &[Rat]) -> Vec<Rat> {
    let d = rep.dim();
    let idx = &rep.block(psi, psi).expect("highest-weight block").indices;
    let mut out = vec![Rat::zero(); d];
    for (&i, x) in idx.iter().zip(v) {
        out[i] = x.clone();
    }
    out
}

/// Closure of a module under a set of matrices.
fn close_module(mut m: Module, gens: &[QMatrix], limit: usize) -> Result<Module> {
    for _ in 0..limit {
        let mut new = Vec::new();
        for g in gens {
            for v in m.generators() {
                let w = g.mul_vec(&v);
                if !m.contains(&w) {
                    new.push(w);
                }
            }
        }
        if new.is_empty() {
            return Ok(m);
        }
        m = m.add_vectors(&new);
    }
    Err(Error::NoStabilization(format!("module closure did not stabilize in {limit} rounds")))
}

/// `S⁻(L⁻, J) = Σ_ψ U(L⁻)·J_ψ`.
pub fn s_minus(rep: &Representation, edge: &EdgeData) -> Result<Lattice> {
    edge.validate(rep)?;
    let ring = edge.ring();
    let d = rep.dim();
    let mut start = Vec::new();
    for (psi, _) in rep.highest_weights() {
        for v in edge.j_of(psi).expect("validated").generators() {
            start.push(block_vector(rep, psi, &v));
        }
    }
    let gens: Vec<QMatrix> = edge.generators(rep, Sign::Minus).into_iter().map(|(_, m)| m).collect();
    let m = close_module(Module::from_vectors(ring, d, &start), &gens, length_cap(rep) + 1)?;
    Lattice::from_module(m)
}

/// `S⁺(L⁺, J) = {x : pr_(ψ),ψ(U(L⁺)·x) ⊆ J_ψ for all ψ}`.
pub fn s_plus(rep: &Representation, edge: &EdgeData) -> Result<Lattice> {
    edge.validate(rep)?;
    let ring = edge.ring();
    let cap = length_cap(rep);
    let spans = GradedSpans::grow(rep, &edge.generators(rep, Sign::Plus), ring, cap, &|deg| deg.iter().all(|&c| c >= 0));
    if spans.stabilized_at.is_none() {
        return Err(Error::CapExceeded(format!("products of length {cap} still enlarge U(L+)")));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (psi, _) in rep.highest_weights() {
        let idx = &rep.block(psi, psi).expect("highest-weight block").indices;
        let jinv = edge.j_of(psi).expect("validated").basis().inverse().expect("nonsingular");
        for b in rep.blocks_of(psi) {
            let deg = rep.root_system().weight_to_root_coords(&psi.sub(&b.chi).0).expect("root lattice");
            for u in spans.matrices(&deg) {
                let a = &jinv * &u.select_rows(idx);
                rows.extend(a.to_rows());
            }
        }
    }
    Lattice::preimage(ring, &QMatrix::from_rows(rows)).map_err(|_| Error::Invalid("S+ constraints do not bound V".into()))
}

/// Smallest lattice containing `lat` stable under the Chevalley generators of `data`.
pub fn chevalley_hull(rep: &Representation, lat: &Lattice, data: &ChevalleyLatticeData) -> Result<Lattice> {
    check_dim(rep, lat)?;
    let gens: Vec<QMatrix> = data.generators(rep).into_iter().map(|(_, m)| m).collect();
    let limit = 64 * rep.dim() + 16;
    Lattice::from_module(close_module(lat.as_module().clone(), &gens, limit)?)
}

/// `⊕ pr_(ψ),χ Λ`.
pub fn split_hull(rep: &Representation, lat: &Lattice) -> Result<Lattice> {
    check_dim(rep, lat)?;
    let mut gens = Vec::new();
    for v in lat.generators() {
        for b in rep.blocks() {
            let mut w = vec![Rat::zero(); v.len()];
            for &i in &b.indices {
                w[i] = v[i].clone();
            }
            if w.iter().any(|x| !x.is_zero()) {
                gens.push(w);
            }
        }
    }
    Lattice::from_vectors(lat.ring(), rep.dim(), &gens)
}

fn check_dim(rep: &Representation, lat: &Lattice) -> Result<()> {
    if lat.ambient_dim() != rep.dim() {
        return Err(Error::DimensionMismatch { expected: rep.dim(), found: lat.ambient_dim() });
    }
    Ok(())
}

pub fn is_split(rep: &Representation, lat: &Lattice) -> Result<bool> {
    Ok(&split_hull(rep, lat)? == lat)
}

pub fn is_invariant(rep: &Representation, lat: &Lattice, data: &ChevalleyLatticeData) -> bool {
    let gens = data.generators(rep);
    lat.generators().iter().all(|v| gens.iter().all(|(_, g)| lat.contains(&g.mul_vec(v))))
}

/// `pr_(ψ),ψ Λ` in block coordinates.
pub fn highest_component(rep: &Representation, lat: &Lattice, psi: &Weight) -> Result<Lattice> {
    let idx = &rep.block(psi, psi).ok_or_else(|| Error::NotAWeight(psi.0.clone()))?.indices;
    let gens: Vec<Vec<Rat>> = lat.generators().iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
    Lattice::from_vectors(lat.ring(), idx.len(), &gens)
}

/// Valuation profile of a split lattice and its class modulo the `H`-shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitLatticeProfile {
    pub blocks: Vec<(Weight, Weight)>,
    /// `v_b(Λ) - v_b(reference)` per block.
    pub valuations: Vec<i64>,
    /// Canonical representative of `valuations` modulo the shift lattice.
    pub invariant: Vec<i64>,
}

/// Shift lattice generators: per-`ψ` indicators and, per simple root `j`, the
/// coefficient of `α_j` in `ψ - χ`.
pub fn shift_generators(rep: &Representation) -> Vec<Vec<i64>> {
    let rs = rep.root_system();
    let blocks = rep.blocks();
    let mut out: Vec<Vec<i64>> = rep
        .highest_weights()
        .iter()
        .map(|(psi, _)| blocks.iter().map(|b| i64::from(&b.psi == psi)).collect())
        .collect();
    for j in 0..rs.rank() {
        out.push(
            blocks
                .iter()
                .map(|b| rs.weight_to_root_coords(&b.psi.sub(&b.chi).0).expect("root lattice")[j])
                .collect(),
        );
    }
    out
}

fn block_valuations(rep: &Representation, lat: &Lattice, p: &Int) -> Vec<i64> {
    let gens = lat.generators();
    rep.blocks()
        .iter()
        .map(|b| {
            let i = b.indices[0];
            gens.iter().filter(|v| !v[i].is_zero()).map(|v| valuation(&v[i], p)).min().expect("full rank")
        })
        .collect()
}

/// Profile of a split lattice over `Z_(p)` relative to `reference`.
pub fn normalize_profile(rep: &Representation, lat: &Lattice, reference: &Lattice) -> Result<SplitLatticeProfile> {
    check_dim(rep, lat)?;
    let Ring::Local(p) = lat.ring() else { return Err(Error::DistanceRequiresLocal) };
    if rep.blocks().iter().any(|b| b.indices.len() > 1) {
        return Err(Error::MultiplicityNotFree);
    }
    if !is_split(rep, lat)? || !is_split(rep, reference)? {
        return Err(Error::Invalid("profile requires split lattices".into()));
    }
    let p = Int::from(p);
    let a = block_valuations(rep, lat, &p);
    let r = block_valuations(rep, reference, &p);
    let valuations: Vec<i64> = a.iter().zip(&r).map(|(x, y)| x - y).collect();
    let n = valuations.len();
    let shifts: Vec<Vec<Rat>> =
        shift_generators(rep).iter().map(|g| g.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
    let module = Module::from_vectors(Ring::Integers, n, &shifts);
    let mut v: Vec<Rat> = valuations.iter().map(|&x| Rat::from_integer(x.into())).collect();
    for (k, &row) in module.pivot_rows().iter().enumerate() {
        let piv = module.basis()[(row, k)].to_integer();
        let q = floor_div(&v[row].to_integer(), &piv);
        if !q.is_zero() {
            let qr = Rat::from_integer(q);
            for i in row..n {
                let b = &module.basis()[(i, k)];
                if !b.is_zero() {
                    v[i] -= &qr * b;
                }
            }
        }
    }
    let invariant = v.iter().map(|x| i64::try_from(x.to_integer()).expect("small valuation")).collect();
    Ok(SplitLatticeProfile {
        blocks: rep.blocks().iter().map(|b| (b.psi.clone(), b.chi.clone())).collect(),
        valuations,
        invariant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub prime: u64,
    pub s_minus: Lattice,
    pub s_plus: Lattice,
    /// `#(S⁺/S⁻)`.
    pub sandwich_index: u64,
    pub total_between: u64,
    /// Chevalley-invariant lattices in the sandwich.
    pub invariant: u64,
    /// Invariant, split, with `(ψ,ψ)`-components equal to `J`.
    pub invariant_split: u64,
    /// Classes of invariant split lattices with the prescribed `J`.
    pub orbits: u64,
    pub representatives: Vec<Lattice>,
    pub invariants: Vec<Vec<i64>>,
    /// Classes of `split_hull(Λ)` over all invariant `Λ` in the sandwich.
    pub orbits_split_hull: u64,
}

/// Enumerates the sandwich and groups the Chevalley-invariant lattices by profile class.
pub fn count_invariant_orbits(rep: &Representation, edge: &EdgeData, data: &ChevalleyLatticeData) -> Result<OrbitReport> {
    edge.validate(rep)?;
    let Ring::Local(p) = edge.ring() else { return Err(Error::DistanceRequiresLocal) };
    if rep.blocks().iter().any(|b| b.indices.len() > 1) {
        return Err(Error::MultiplicityNotFree);
    }
    let lo = s_minus(rep, edge)?;
    let hi = s_plus(rep, edge)?;
    let index = lo.index_in(&hi)?;
    let sandwich_index = u64::try_from(index.to_integer()).map_err(|_| Error::QuotientTooLarge { order: index.to_string(), cap: 0 })?;

    let mut total = 0u64;
    let mut invariant = 0u64;
    let mut invariant_split = 0u64;
    let mut classes: BTreeMap<Vec<i64>, Lattice> = BTreeMap::new();
    let mut hull_classes: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    let mut failure = None;
    for_each_between(&lo, &hi, |m| {
        total += 1;
        if failure.is_some() || !is_invariant(rep, &m, data) {
            return;
        }
        invariant += 1;
        let res = (|| -> Result<()> {
            let sh = split_hull(rep, &m)?;
            hull_classes.insert(normalize_profile(rep, &sh, &hi)?.invariant, ());
            if sh != m {
                return Ok(());
            }
            for (psi, _) in rep.highest_weights() {
                if &highest_component(rep, &m, psi)? != edge.j_of(psi).expect("validated") {
                    return Ok(());
                }
            }
            invariant_split += 1;
            let prof = normalize_profile(rep, &m, &hi)?;
            classes.entry(prof.invariant).or_insert(m);
            Ok(())
        })();
        if let Err(e) = res {
            failure = Some(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let (invariants, representatives): (Vec<_>, Vec<_>) = classes.into_iter().unzip();
    Ok(OrbitReport {
        prime: p,
        s_minus: lo,
        s_plus: hi,
        sandwich_index,
        total_between: total,
        invariant,
        invariant_split,
        orbits: representatives.len() as u64,
        representatives,
        invariants,
        orbits_split_hull: hull_classes.len() as u64,
    })
}

/// `p^n` with `n = v_p(r)` for the projector constant `r`: the bound in
/// `p^n ⊕ pr Λ ⊆ Λ` for Chevalley-invariant `Λ`.
pub fn split_hull_bound(r: u64, p: u64) -> u64 {
    let mut n = 0;
    let mut r = r;
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    n
}

/// Scaling of a lattice by `p^k`, used for windows around the sandwich.
pub fn scale_by_prime_power(lat: &Lattice, k: i64) -> Result<Lattice> {
    let p = lat.ring().prime().ok_or(Error::DistanceRequiresLocal)?;
    Ok(lat.scale(&p_power(&p, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lattice::rat_vec;
    use crate::exact::rational::{frac, rat};
    use crate::rep::build_irrep;
    use crate::rootdata::{ChevalleyBasis, Isogeny, TypeLabel};
    use std::sync::Arc;

    fn a1(n: i64) -> Representation {
        let cb = Arc::new(ChevalleyBasis::build(TypeLabel::A, 1, Isogeny::SimplyConnected).unwrap());
        build_irrep(&cb, &Weight::new(&[n])).unwrap()
    }

    fn diag(ring: Ring, d: &[Rat]) -> Lattice {
        Lattice::diagonal(ring, d).unwrap()
    }

    #[test]
    fn standard_sandwich_is_a_point() {
        let v = a1(1);
        let edge = EdgeData::unit(&v, Ring::Local(2));
        let std = Lattice::standard(Ring::Local(2), 2);
        assert_eq!(s_minus(&v, &edge).unwrap(), std);
        assert_eq!(s_plus(&v, &edge).unwrap(), std);
        let rep = count_invariant_orbits(&v, &edge, &ChevalleyLatticeData::unit(v.chevalley())).unwrap();
        assert_eq!((rep.total_between, rep.orbits), (1, 1));
    }

    #[test]
    fn sym2_sandwich() {
        let v = a1(2);
        let r = Ring::Local(2);
        let edge = EdgeData::unit(&v, r);
        assert_eq!(s_minus(&v, &edge).unwrap(), diag(r, &[rat(1), rat(2), rat(2)]));
        assert_eq!(s_plus(&v, &edge).unwrap(), diag(r, &[rat(1), rat(1), frac(1, 2)]));
    }

    #[test]
    fn u_span_examples() {
        let v = a1(2);
        let edge = EdgeData::unit(&v, Ring::Integers);
        let two = u_span(&v, &edge, Sign::Plus, &[2]).unwrap();
        assert_eq!(two, vec![v.e(0) * v.e(0)]);
        let zero = u_span(&v, &edge, Sign::Plus, &[0]).unwrap();
        assert_eq!(zero, vec![QMatrix::identity(3)]);
        assert!(u_span(&v, &edge, Sign::Plus, &[-1]).unwrap().is_empty());
    }

    #[test]
    fn scaling_lowering_scales_components() {
        let v = a1(2);
        let r = Ring::Local(2);
        let mut edge = EdgeData::unit(&v, r);
        edge.minus = vec![rat(2)];
        assert_eq!(s_minus(&v, &edge).unwrap(), diag(r, &[rat(1), rat(4), rat(8)]));
    }

    #[test]
    fn hulls() {
        let v = a1(2);
        let r = Ring::Local(2);
        let data = ChevalleyLatticeData::unit(v.chevalley());
        let prime = diag(r, &[rat(1), rat(2), rat(1)]);
        assert_eq!(chevalley_hull(&v, &prime, &data).unwrap(), prime);
        let narrow = diag(r, &[rat(1), rat(4), rat(1)]);
        assert_eq!(chevalley_hull(&v, &narrow, &data).unwrap(), prime);
        let skew = Lattice::from_vectors(r, 3, &[rat_vec(&[1, 1, 0]), rat_vec(&[0, 2, 0]), rat_vec(&[0, 0, 1])]).unwrap();
        let sh = split_hull(&v, &skew).unwrap();
        assert_eq!(sh, Lattice::standard(r, 3));
        assert!(is_split(&v, &sh).unwrap());
        assert!(!is_split(&v, &skew).unwrap());
    }

    #[test]
    fn sym2_profiles_distinguish_the_two_lattices() {
        let v = a1(2);
        let r = Ring::Local(2);
        let edge = EdgeData::unit(&v, r);
        let sp = s_plus(&v, &edge).unwrap();
        let lam = Lattice::standard(r, 3);
        let lam2 = diag(r, &[rat(1), rat(2), rat(1)]);
        assert_eq!(normalize_profile(&v, &sp, &sp).unwrap().invariant, vec![0, 0, 0]);
        let a = normalize_profile(&v, &lam, &sp).unwrap();
        let b = normalize_profile(&v, &lam2, &sp).unwrap();
        assert_ne!(a.invariant, b.invariant);
        let scaled = normalize_profile(&v, &lam.scale(&rat(2)), &sp).unwrap();
        assert_eq!(scaled.invariant, a.invariant);
    }

    #[test]
    fn multiplicity_blocks_are_rejected() {
        let cb = Arc::new(ChevalleyBasis::build(TypeLabel::A, 2, Isogeny::SimplyConnected).unwrap());
        let ad = build_irrep(&cb, &Weight::new(&[1, 1])).unwrap();
        let lat = Lattice::standard(Ring::Local(2), 8);
        assert!(matches!(normalize_profile(&ad, &lat, &lat), Err(Error::MultiplicityNotFree)));
    }
}
