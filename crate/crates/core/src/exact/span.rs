//! Incremental subspaces of `Q^n`.

use num_traits::{One, Zero};

use super::rational::Rat;

/// A subspace kept in reduced row form; remembers the vectors that enlarged it.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    basis: Vec<Vec<Rat>>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: vec![], pivots: vec![], basis: vec![] }
    }

    pub fn from_vectors(dim: usize, vs: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let mut s = Span::new(dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Accepted vectors, in insertion order; a basis of the span.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = Rat::one() / &r[p];
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.basis.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lattice::rat_vec;

    #[test]
    fn rank_and_membership() {
        let mut s = Span::new(3);
        assert!(s.insert(rat_vec(&[1, 1, 0])));
        assert!(s.insert(rat_vec(&[0, 1, 1])));
        assert!(!s.insert(rat_vec(&[1, 2, 1])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&rat_vec(&[2, 0, -2])));
        assert!(!s.contains(&rat_vec(&[0, 0, 1])));
    }
}
