//! Intermediate lattices `low ⊆ M ⊆ high`.

use num_traits::{One, ToPrimitive};

use super::lattice::Lattice;
use super::matrix::QMatrix;
use super::module::Ring;
use super::rational::{self, Rat};
use super::snf;
use crate::error::{Error, Result};

/// Largest quotient order accepted by the enumerators.
pub const QUOTIENT_CAP: u64 = 1 << 20;

/// Lower-triangular integer basis, column-major; column `j` has its pivot in row `j`.
#[derive(Clone, Debug)]
struct Tri {
    n: usize,
    cols: Vec<Vec<i64>>,
}

impl Tri {
    fn contains(&self, w: &[i64]) -> bool {
        let mut w = w.to_vec();
        for j in 0..self.n {
            let c = self.cols[j][j];
            if w[j] % c != 0 {
                return false;
            }
            let q = w[j] / c;
            if q != 0 {
                for (wi, ci) in w.iter_mut().zip(&self.cols[j]).skip(j) {
                    *wi -= q * ci;
                }
            }
        }
        true
    }

    /// Calls `f` for each residue of `Z^n / self`, reduced to the fundamental box.
    fn for_each_residue(&self, f: &mut impl FnMut(&[i64])) {
        let mut v = vec![0i64; self.n];
        loop {
            f(&v);
            let mut k = self.n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                v[k] += 1;
                if v[k] < self.cols[k][k] {
                    break;
                }
                v[k] = 0;
            }
        }
    }
}

fn divisors(d: i64) -> Vec<i64> {
    (1..=d).filter(|h| d % h == 0).collect()
}

/// Every lattice `M'` with `diag(d) Z^n ⊆ M' ⊆ Z^n`, each exactly once.
fn subgroup_lattices(d: &[i64], f: &mut dyn FnMut(&Tri)) {
    let n = d.len();
    if n == 0 {
        f(&Tri { n: 0, cols: vec![] });
        return;
    }
    let d1 = d[0];
    subgroup_lattices(&d[1..], &mut |sub: &Tri| {
        for h in divisors(d1) {
            let k = d1 / h;
            sub.for_each_residue(&mut |v| {
                let kv: Vec<i64> = v.iter().map(|x| x * k).collect();
                if !sub.contains(&kv) {
                    return;
                }
                let mut first = Vec::with_capacity(n);
                first.push(h);
                first.extend_from_slice(v);
                let mut cols = vec![first];
                for c in &sub.cols {
                    let mut col = vec![0];
                    col.extend_from_slice(c);
                    cols.push(col);
                }
                f(&Tri { n, cols });
            });
        }
    });
}

/// Number of subgroups of `⊕ Z/d_i`.
pub fn count_subgroups(d: &[u64]) -> Result<u64> {
    checked_order(d.iter().map(|&x| rational::int(x as i64)))?;
    let d: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    let mut count = 0u64;
    subgroup_lattices(&d, &mut |_| count += 1);
    Ok(count)
}

fn checked_order(d: impl Iterator<Item = rational::Int>) -> Result<u64> {
    let order = d.fold(rational::Int::one(), |a, b| a * b);
    match order.to_u64() {
        Some(o) if o <= QUOTIENT_CAP => Ok(o),
        _ => Err(Error::QuotientTooLarge { order: order.to_string(), cap: QUOTIENT_CAP }),
    }
}

/// Adapted coordinates: `high = B' Z^n` and `low = B' diag(d) Z^n`.
struct Adapted {
    basis: QMatrix,
    diag: Vec<i64>,
}

fn adapt(low: &Lattice, high: &Lattice) -> Result<Adapted> {
    if low.ambient_dim() != high.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: high.ambient_dim(), found: low.ambient_dim() });
    }
    if low.ring() != high.ring() {
        return Err(Error::RingMismatch(low.ring().to_string(), high.ring().to_string()));
    }
    if !low.is_sublattice_of(high) {
        return Err(Error::NotSublattice);
    }
    let hb = high.basis();
    let x = &hb.inverse().expect("nonsingular") * low.basis();
    match high.ring() {
        Ring::Integers => {
            let (xz, den) = x.clear_denominators();
            debug_assert!(den.is_one());
            let s = snf::smith(&xz);
            checked_order(s.diagonal.iter().cloned())?;
            let uinv = QMatrix::from_integer(&s.left).inverse().expect("unimodular");
            Ok(Adapted {
                basis: hb * &uinv,
                diag: s.diagonal.iter().map(|v| v.to_i64().expect("bounded by cap")).collect(),
            })
        }
        Ring::Local(p) => {
            let pi = rational::int(p as i64);
            let s = snf::local_smith(&x, &pi);
            let ds: Vec<rational::Int> = s.valuations.iter().map(|&e| num_traits::pow(pi.clone(), e as usize)).collect();
            checked_order(ds.iter().cloned())?;
            let uinv = s.left.inverse().expect("invertible over Z_(p)");
            Ok(Adapted { basis: hb * &uinv, diag: ds.iter().map(|v| v.to_i64().expect("bounded by cap")).collect() })
        }
    }
}

/// Calls `f` on every lattice `M` with `low ⊆ M ⊆ high`, each exactly once.
pub fn for_each_between(low: &Lattice, high: &Lattice, mut f: impl FnMut(Lattice)) -> Result<()> {
    let a = adapt(low, high)?;
    let ring = high.ring();
    let n = a.diag.len();
    subgroup_lattices(&a.diag, &mut |t: &Tri| {
        let m = QMatrix::from_fn(n, n, |i, j| rational::rat(t.cols[j][i]));
        f(Lattice::new(ring, &(&a.basis * &m)).expect("full rank"));
    });
    Ok(())
}

pub fn enumerate_between(low: &Lattice, high: &Lattice) -> Result<Vec<Lattice>> {
    let mut out = Vec::new();
    for_each_between(low, high, |m| out.push(m))?;
    Ok(out)
}

/// Order of `high / low` (its p-part over `Z_(p)`).
pub fn quotient_order(low: &Lattice, high: &Lattice) -> Result<Rat> {
    low.index_in(high)
}
