//! Full-rank lattices in `Q^n` over `Z` or `Z_(p)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::QMatrix;
use super::module::{Module, Ring};
use super::rational::{self, Rat};
use super::snf;
use crate::error::{Error, Result};

/// A full-rank lattice, stored in canonical echelon form.
///
/// Equality is module equality over the declared ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    inner: Module,
}

impl Lattice {
    /// Lattice generated by the columns of `gens` (any number of columns).
    pub fn new(ring: Ring, gens: &QMatrix) -> Result<Self> {
        let n = gens.rows();
        let m = Module::new(ring, gens);
        if m.rank() < n {
            return Err(Error::DegenerateBasis);
        }
        Ok(Lattice { inner: m })
    }

    pub fn from_vectors(ring: Ring, n: usize, gens: &[Vec<Rat>]) -> Result<Self> {
        Lattice::new(ring, &QMatrix::from_columns(n, gens))
    }

    pub fn standard(ring: Ring, n: usize) -> Self {
        Lattice::new(ring, &QMatrix::identity(n)).expect("identity is nonsingular")
    }

    /// Diagonal lattice spanned by `d_i e_i`.
    pub fn diagonal(ring: Ring, d: &[Rat]) -> Result<Self> {
        Lattice::new(ring, &QMatrix::diagonal(d))
    }

    pub fn from_module(m: Module) -> Result<Self> {
        if m.rank() < m.ambient_dim() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Lattice { inner: m })
    }

    pub fn ring(&self) -> Ring {
        self.inner.ring()
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    /// Canonical basis; columns generate the lattice.
    pub fn basis(&self) -> &QMatrix {
        self.inner.basis()
    }

    pub fn as_module(&self) -> &Module {
        &self.inner
    }

    pub fn generators(&self) -> Vec<Vec<Rat>> {
        self.inner.generators()
    }

    /// Determinant of the canonical basis (positive; a p-power over `Z_(p)`).
    pub fn covolume(&self) -> Rat {
        let b = self.basis();
        (0..b.rows()).fold(Rat::one(), |acc, i| acc * &b[(i, i)])
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.inner.contains(v)
    }

    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        self.inner.coordinates(v)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ring() == other.ring()
            && self.ambient_dim() == other.ambient_dim()
            && other.inner.contains_module(&self.inner)
    }

    fn check_compatible(&self, other: &Lattice) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: other.ambient_dim() });
        }
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring().to_string(), other.ring().to_string()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_compatible(other)?;
        Ok(Lattice { inner: self.inner.sum(&other.inner) })
    }

    /// Dual lattice with respect to the standard pairing.
    pub fn dual(&self) -> Lattice {
        let inv = self.basis().inverse().expect("lattice basis is nonsingular");
        Lattice::new(self.ring(), &inv.transpose()).expect("dual is full rank")
    }

    /// `{x : A x ∈ R^m}` for an `m × n` matrix `A` of rank `n`: the dual of the row lattice.
    pub fn preimage(ring: Ring, a: &QMatrix) -> Result<Lattice> {
        let rows = a.to_rows();
        Ok(Lattice::from_vectors(ring, a.cols(), &rows)?.dual())
    }

    /// Intersection through `(A ∩ B)* = A* + B*`.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// `[sup : sub]`; over `Z_(p)` only the p-part is visible.
    pub fn index_in(&self, sup: &Lattice) -> Result<Rat> {
        self.check_compatible(sup)?;
        if !self.is_sublattice_of(sup) {
            return Err(Error::NotSublattice);
        }
        Ok(self.generalized_index(sup))
    }

    /// `covol(self) / covol(other)` without a containment requirement.
    pub fn generalized_index(&self, other: &Lattice) -> Rat {
        self.ring().normalize_size(&(self.covolume() / other.covolume()))
    }

    pub fn scale(&self, c: &Rat) -> Lattice {
        assert!(!c.is_zero(), "scaling by zero");
        Lattice { inner: self.inner.scale(c) }
    }

    /// Image under a nonsingular linear map.
    pub fn transform(&self, g: &QMatrix) -> Result<Lattice> {
        Lattice::new(self.ring(), &(g * self.basis()))
    }

    pub fn with_ring(&self, ring: Ring) -> Lattice {
        Lattice::new(ring, self.basis()).expect("same basis")
    }

    /// Lattice distance `n - m` with `p^n a ⊆ b ⊆ p^m a`, `n` minimal and
    /// `m` maximal, read off the elementary divisors of the change of basis.
    pub fn distance(&self, other: &Lattice) -> Result<u64> {
        self.check_compatible(other)?;
        let Ring::Local(p) = self.ring() else { return Err(Error::DistanceRequiresLocal) };
        let change = &self.basis().inverse().expect("nonsingular") * other.basis();
        let s = snf::local_smith(&change, &p.into());
        let max = *s.valuations.iter().max().expect("nonempty");
        let min = *s.valuations.iter().min().expect("nonempty");
        Ok((max - min) as u64)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            ambient: self.ambient_dim(),
            ring: self.ring(),
            basis: crate::serde_util::matrix::to_rows(self.basis()),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Lattice> {
        let basis = crate::serde_util::matrix::from_rows(&j.basis)?;
        if basis.rows() != j.ambient {
            return Err(Error::DimensionMismatch { expected: j.ambient, found: basis.rows() });
        }
        Lattice::new(j.ring, &basis)
    }
}

/// Wire form: `{"ambient": n, "ring": "Z" | {"Zp": p}, "basis": [[..]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LatticeJson {
    pub ambient: usize,
    pub ring: Ring,
    pub basis: Vec<Vec<String>>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LatticeJson::deserialize(d)?;
        Lattice::from_json(&j).map_err(serde::de::Error::custom)
    }
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rational::rat(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    fn lat(ring: Ring, cols: &[&[i64]]) -> Lattice {
        let n = cols[0].len();
        Lattice::from_vectors(ring, n, &cols.iter().map(|c| rat_vec(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        let err = Lattice::from_vectors(Ring::Integers, 2, &[rat_vec(&[1, 2]), rat_vec(&[2, 4])]);
        assert!(matches!(err, Err(Error::DegenerateBasis)));
    }

    #[test]
    fn identity_is_canonical() {
        let l = Lattice::standard(Ring::Integers, 3);
        assert_eq!(l.basis(), &QMatrix::identity(3));
    }

    #[test]
    fn index_and_intersection() {
        let a = lat(Ring::Integers, &[&[2, 0], &[0, 1]]);
        let b = lat(Ring::Integers, &[&[1, 0], &[0, 2]]);
        let c = lat(Ring::Integers, &[&[2, 0], &[0, 2]]);
        assert_eq!(a.intersect(&b).unwrap(), c);
        assert_eq!(a.sum(&b).unwrap(), Lattice::standard(Ring::Integers, 2));
        let z2 = Lattice::standard(Ring::Integers, 2);
        assert_eq!(z2.scale(&rat(2)).index_in(&z2).unwrap(), rat(4));
        assert!(matches!(z2.index_in(&c), Err(Error::NotSublattice)));
    }

    #[test]
    fn mismatched_rings_error() {
        let a = Lattice::standard(Ring::Integers, 2);
        let b = Lattice::standard(Ring::Local(2), 2);
        assert!(matches!(a.sum(&b), Err(Error::RingMismatch(..))));
        let c = Lattice::standard(Ring::Integers, 3);
        assert!(matches!(a.intersect(&c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn distance_examples() {
        let r = Ring::Local(2);
        let a = Lattice::standard(r, 2);
        assert_eq!(a.distance(&a).unwrap(), 0);
        assert_eq!(a.distance(&a.scale(&rat(2))).unwrap(), 0);
        let b = lat(r, &[&[1, 0], &[0, 4]]);
        assert_eq!(a.distance(&b).unwrap(), 2);
        let g = Lattice::standard(Ring::Integers, 2);
        assert!(matches!(g.distance(&g), Err(Error::DistanceRequiresLocal)));
    }

    #[test]
    fn local_index_is_p_part() {
        let r = Ring::Local(3);
        let sup = Lattice::standard(r, 2);
        let sub = lat(r, &[&[6, 0], &[0, 5]]);
        assert_eq!(sub.index_in(&sup).unwrap(), rat(3));
        assert!(sup.contains(&[frac(1, 2), rat(1)]));
    }

    #[test]
    fn json_round_trip_canonicalizes() {
        let j = r#"{"ambient":2,"ring":{"Zp":2},"basis":[["3/1","0/1"],["0/1","12"]]}"#;
        let l: Lattice = serde_json::from_str(j).unwrap();
        assert_eq!(l, lat(Ring::Local(2), &[&[1, 0], &[0, 4]]));
        let back = serde_json::to_string(&l).unwrap();
        assert_eq!(back, r#"{"ambient":2,"ring":{"Zp":2},"basis":[["1/1","0/1"],["0/1","4/1"]]}"#);
    }
}
