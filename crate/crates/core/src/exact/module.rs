//! Finitely generated modules in `Q^n` over `Z` or `Z_(p)`, kept in a
//! canonical column echelon form.
//!
//! The echelon form is lower-staircase: column `k` has its pivot in row
//! `pivot_rows[k]`, is zero above it, and pivot rows are strictly increasing.
//! Over `Z` pivots are positive and the entries to the left of a pivot are
//! reduced into `[0, pivot)`. Over `Z_(p)` pivots are powers `p^e` (any
//! integer `e`) and entries to the left are reduced to the unique element of
//! `Z[1/p] ∩ [0, p^e)` in their class. Two generating sets give the same
//! module iff their echelon forms coincide.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::QMatrix;
use super::rational::{self, Int, Rat};

/// Coefficient ring: the integers, or the integers localized at a prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Local(u64),
}

impl Ring {
    pub fn prime(&self) -> Option<Int> {
        match self {
            Ring::Integers => None,
            Ring::Local(p) => Some(BigInt::from(*p)),
        }
    }

    pub fn contains(&self, q: &Rat) -> bool {
        match self {
            Ring::Integers => rational::is_integral(q),
            Ring::Local(p) => rational::is_p_integral(q, &BigInt::from(*p)),
        }
    }

    /// The part of a positive rational the ring cannot see as a unit:
    /// itself over `Z`, its p-power over `Z_(p)`.
    pub fn normalize_size(&self, q: &Rat) -> Rat {
        match self {
            Ring::Integers => q.abs(),
            Ring::Local(p) => {
                let p = BigInt::from(*p);
                rational::p_power(&p, rational::valuation(q, &p))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Local(p) => write!(f, "Z_({p})"),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ring::Integers => s.serialize_str("Z"),
            Ring::Local(p) => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("Zp", p)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Label(String),
            Local {
                #[serde(rename = "Zp")]
                zp: u64,
            },
        }
        match Repr::deserialize(d)? {
            Repr::Label(s) if s == "Z" => Ok(Ring::Integers),
            Repr::Label(s) => Err(serde::de::Error::custom(format!("unknown ring {s:?}"))),
            Repr::Local { zp } if is_prime(zp) => Ok(Ring::Local(zp)),
            Repr::Local { zp } => Err(serde::de::Error::custom(format!("{zp} is not prime"))),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Result of echelonizing a generating set.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// `n × r` canonical basis.
    pub basis: QMatrix,
    pub pivot_rows: Vec<usize>,
    /// `m × m` invertible transform over the ring with `gens * U = [basis | 0]`.
    pub transform: Option<QMatrix>,
}

/// Canonical echelon form of the module generated by the columns of `gens`.
pub fn echelon(gens: &QMatrix, ring: Ring, track: bool) -> Echelon {
    match ring {
        Ring::Integers => echelon_integral(gens, track),
        Ring::Local(p) => echelon_local(gens, &BigInt::from(p), track),
    }
}

fn identity_columns(m: usize) -> Vec<Vec<Int>> {
    (0..m).map(|j| (0..m).map(|i| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}

fn axpy_int(dst: &mut [Int], q: &Int, src: &[Int]) {
    // dst -= q * src
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn echelon_integral(gens: &QMatrix, track: bool) -> Echelon {
    let n = gens.rows();
    let m = gens.cols();
    let (zm, d) = gens.clear_denominators();
    let mut cols: Vec<Vec<Int>> = zm.columns();
    let mut u = track.then(|| identity_columns(m));
    let mut pivots = Vec::new();
    let mut c = 0;
    for row in 0..n {
        if c == m {
            break;
        }
        loop {
            // smallest nonzero |entry| among remaining columns
            let best = (c..m)
                .filter(|&j| !cols[j][row].is_zero())
                .min_by(|&a, &b| cols[a][row].abs().cmp(&cols[b][row].abs()));
            let Some(b) = best else { break };
            cols.swap(c, b);
            if let Some(u) = u.as_mut() {
                u.swap(c, b);
            }
            let mut done = true;
            for j in c + 1..m {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[c][row]);
                let (pc, pj) = pair_mut(&mut cols, c, j);
                axpy_int(pj, &q, pc);
                if let Some(u) = u.as_mut() {
                    let (uc, uj) = pair_mut(u, c, j);
                    axpy_int(uj, &q, uc);
                }
                if !cols[j][row].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if cols.get(c).is_none_or(|col| col[row].is_zero()) {
            continue;
        }
        if cols[c][row].is_negative() {
            for x in cols[c].iter_mut() {
                *x = -std::mem::take(x);
            }
            if let Some(u) = u.as_mut() {
                for x in u[c].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        for j in 0..c {
            let q = cols[j][row].div_floor(&cols[c][row]);
            if !q.is_zero() {
                let (pc, pj) = pair_mut(&mut cols, c, j);
                axpy_int(pj, &q, pc);
                if let Some(u) = u.as_mut() {
                    let (uc, uj) = pair_mut(u, c, j);
                    axpy_int(uj, &q, uc);
                }
            }
        }
        pivots.push(row);
        c += 1;
    }
    let dq = rational::from_int(d);
    let basis = QMatrix::from_fn(n, c, |i, j| rational::from_int(cols[j][i].clone()) / &dq);
    let transform = u.map(|u| QMatrix::from_fn(m, m, |i, j| rational::from_int(u[j][i].clone())));
    Echelon { basis, pivot_rows: pivots, transform }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

fn axpy_rat(dst: &mut [Rat], q: &Rat, src: &[Rat]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn echelon_local(gens: &QMatrix, p: &Int, track: bool) -> Echelon {
    let n = gens.rows();
    let m = gens.cols();
    let mut cols: Vec<Vec<Rat>> = gens.columns();
    let mut u: Option<Vec<Vec<Rat>>> = track.then(|| {
        (0..m).map(|j| (0..m).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
    });
    let mut pivots = Vec::new();
    let mut c = 0;
    for row in 0..n {
        if c == m {
            break;
        }
        let best = (c..m)
            .filter(|&j| !cols[j][row].is_zero())
            .min_by_key(|&j| rational::valuation(&cols[j][row], p));
        let Some(b) = best else { continue };
        cols.swap(c, b);
        if let Some(u) = u.as_mut() {
            u.swap(c, b);
        }
        let e = rational::valuation(&cols[c][row], p);
        let unit = rational::unit_part(&cols[c][row], p);
        for x in cols[c].iter_mut() {
            *x /= &unit;
        }
        if let Some(u) = u.as_mut() {
            for x in u[c].iter_mut() {
                *x /= &unit;
            }
        }
        let piv = rational::p_power(p, e);
        for j in (0..m).filter(|&j| j != c) {
            if cols[j][row].is_zero() {
                continue;
            }
            let q = if j > c {
                &cols[j][row] / &piv
            } else {
                let r = rational::reduce_mod_p_power(&cols[j][row], p, e);
                (&cols[j][row] - r) / &piv
            };
            if q.is_zero() {
                continue;
            }
            let (pc, pj) = pair_mut(&mut cols, c, j);
            axpy_rat(pj, &q, pc);
            if let Some(u) = u.as_mut() {
                let (uc, uj) = pair_mut(u, c, j);
                axpy_rat(uj, &q, uc);
            }
        }
        pivots.push(row);
        c += 1;
    }
    let basis = QMatrix::from_fn(n, c, |i, j| cols[j][i].clone());
    let transform = u.map(|u| QMatrix::from_fn(m, m, |i, j| u[j][i].clone()));
    Echelon { basis, pivot_rows: pivots, transform }
}

/// A finitely generated submodule of `Q^n` over a [`Ring`], of any rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Module {
    ring: Ring,
    basis: QMatrix,
    pivot_rows: Vec<usize>,
}

impl Module {
    pub fn new(ring: Ring, gens: &QMatrix) -> Self {
        let e = echelon(gens, ring, false);
        Module { ring, basis: e.basis, pivot_rows: e.pivot_rows }
    }

    pub fn from_vectors(ring: Ring, n: usize, gens: &[Vec<Rat>]) -> Self {
        Module::new(ring, &QMatrix::from_columns(n, gens))
    }

    pub fn zero(ring: Ring, n: usize) -> Self {
        Module { ring, basis: QMatrix::zeros(n, 0), pivot_rows: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn generators(&self) -> Vec<Vec<Rat>> {
        self.basis.columns()
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the module.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coeffs = self.span_coordinates(v)?;
        coeffs.iter().all(|c| self.ring.contains(c)).then_some(coeffs)
    }

    /// Coefficients of `v` in the echelon basis over `Q`, if `v` is in the span.
    pub fn span_coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient_dim());
        let mut w = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (k, &row) in self.pivot_rows.iter().enumerate() {
            // entries above the pivot row must already vanish
            let y = &w[row] / &self.basis[(row, k)];
            if !y.is_zero() {
                for i in row..w.len() {
                    let b = &self.basis[(i, k)];
                    if !b.is_zero() {
                        w[i] -= &y * b;
                    }
                }
            }
            coeffs.push(y);
        }
        w.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_module(&self, other: &Module) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Module) -> Module {
        assert_eq!(self.ring, other.ring);
        Module::new(self.ring, &self.basis.hcat(&other.basis))
    }

    pub fn add_vectors(&self, vs: &[Vec<Rat>]) -> Module {
        if vs.is_empty() {
            return self.clone();
        }
        let extra = QMatrix::from_columns(self.ambient_dim(), vs);
        Module::new(self.ring, &self.basis.hcat(&extra))
    }

    pub fn scale(&self, c: &Rat) -> Module {
        Module::new(self.ring, &self.basis.scale(c))
    }
}
