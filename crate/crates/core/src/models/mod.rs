//! Computable shadows of integral models: the Lie lattice `𝔤 ∩ 𝔤𝔩(Λ)`,
//! necessary isomorphism invariants, and Hopf-order generators.

pub mod hopf;
pub mod poly;

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{p_power, to_string};
use crate::exact::snf::{local_smith, snf_rational};
use crate::exact::{Lattice, QMatrix, Rat, Ring};
use crate::rep::Representation;
use crate::rootdata::ChevalleyBasis;

pub use hopf::{
    hopf_generators, hopf_generators_torus, order_equal_bounded, Certificate, HopfOrderGenerators, OrderComparison,
    Relation, Verdict, DEFAULT_DEGREE_BOUND,
};
pub use poly::Poly;

/// A full-rank lattice in `𝔤` (coordinates in the Chevalley basis) closed under bracket.
#[derive(Clone, Debug)]
pub struct LieLattice {
    cb: Arc<ChevalleyBasis>,
    lattice: Lattice,
    ads: Vec<QMatrix>,
}

impl PartialEq for LieLattice {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}

impl LieLattice {
    /// Validates rank and bracket closure.
    pub fn new(cb: Arc<ChevalleyBasis>, lattice: Lattice) -> Result<Self> {
        if lattice.ambient_dim() != cb.dim() {
            return Err(Error::DimensionMismatch { expected: cb.dim(), found: lattice.ambient_dim() });
        }
        let ads = cb.basis_matrices().iter().map(|b| cb.ad(b)).collect();
        let l = LieLattice { cb, lattice, ads };
        if !l.is_bracket_closed() {
            return Err(Error::Invalid("lattice is not closed under the bracket".into()));
        }
        Ok(l)
    }

    pub fn chevalley(&self) -> &ChevalleyBasis {
        &self.cb
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ring(&self) -> Ring {
        self.lattice.ring()
    }

    /// `[u, v]` in `𝔤`-coordinates.
    pub fn bracket(&self, u: &[Rat]) -> impl Fn(&[Rat]) -> Vec<Rat> + '_ {
        let mut adu = QMatrix::zeros(self.cb.dim(), self.cb.dim());
        for (c, a) in u.iter().zip(&self.ads) {
            if !c.is_zero() {
                adu = &adu + &a.scale(c);
            }
        }
        move |v| adu.mul_vec(v)
    }

    pub fn is_bracket_closed(&self) -> bool {
        let gens = self.lattice.generators();
        gens.iter().enumerate().all(|(i, u)| {
            let br = self.bracket(u);
            gens[i + 1..].iter().all(|v| self.lattice.contains(&br(v)))
        })
    }

    /// `Ad(g) L` for `g` normalizing the image of `𝔤` in `rep`.
    pub fn conjugate(&self, rep: &Representation, g: &QMatrix) -> Result<LieLattice> {
        let gi = g.inverse().ok_or(Error::DegenerateBasis)?;
        let acts = rep.basis_actions();
        let flat = QMatrix::from_columns(rep.dim() * rep.dim(), &acts.iter().map(|m| m.flatten()).collect::<Vec<_>>());
        let mut cols = Vec::new();
        for c in self.lattice.generators() {
            let m = &(g * &rep.action_of(&c)) * &gi;
            let x = flat.solve(&m.flatten()).ok_or_else(|| Error::Invalid("g does not normalize 𝔤".into()))?;
            cols.push(x);
        }
        LieLattice::new(self.cb.clone(), Lattice::from_vectors(self.ring(), self.cb.dim(), &cols)?)
    }
}

/// `{X ∈ 𝔤 : X Λ ⊆ Λ}`.
pub fn lie_model(rep: &Representation, lat: &Lattice) -> Result<LieLattice> {
    let d = rep.dim();
    if lat.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: lat.ambient_dim() });
    }
    let b = lat.basis();
    let bi = b.inverse().ok_or(Error::DegenerateBasis)?;
    let cols: Vec<Vec<Rat>> = rep.basis_actions().iter().map(|m| (&(&bi * m) * b).flatten()).collect();
    let a = QMatrix::from_columns(d * d, &cols);
    if a.rank() < rep.chevalley().dim() {
        return Err(Error::Unfaithful);
    }
    LieLattice::new(rep.chevalley_arc().clone(), Lattice::preimage(lat.ring(), &a)?)
}

/// Elementary divisors of the Killing Gram matrix and of the flattened
/// structure tensor, both in a basis of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieInvariants {
    pub ring: Ring,
    pub killing_divisors: Vec<String>,
    pub structure_divisors: Vec<String>,
}

fn divisors(m: &QMatrix, ring: Ring) -> Vec<String> {
    match ring {
        Ring::Integers => snf_rational(m).divisors.iter().map(to_string).collect(),
        Ring::Local(p) => {
            let p = p.into();
            let mut v = local_smith(m, &p).valuations;
            v.sort_unstable();
            v.iter().map(|&e| to_string(&p_power(&p, e))).collect()
        }
    }
}

pub fn lie_invariants(l: &LieLattice) -> LieInvariants {
    invariants_in_basis(l, l.lattice.basis())
}

/// Same record computed from an arbitrary basis `b` (columns) of `l`.
pub fn invariants_in_basis(l: &LieLattice, b: &QMatrix) -> LieInvariants {
    let n = b.cols();
    let gram = &(&b.transpose() * &l.cb.killing_gram()) * b;
    let bi = b.inverse().expect("full rank");
    let gens = b.columns();
    let mut tensor = QMatrix::zeros(n, n * n);
    for (i, u) in gens.iter().enumerate() {
        let br = l.bracket(u);
        for (j, v) in gens.iter().enumerate() {
            let c = bi.mul_vec(&br(v));
            for (k, x) in c.into_iter().enumerate() {
                tensor[(k, i * n + j)] = x;
            }
        }
    }
    LieInvariants { ring: l.ring(), killing_divisors: divisors(&gram, l.ring()), structure_divisors: divisors(&tensor, l.ring()) }
}
