//! Smith normal form over `Z` and over `Z_(p)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{QMatrix, ZMatrix};
use super::rational::{self, Int, Rat};

/// Nonzero elementary divisors, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryDivisors {
    #[serde(with = "crate::serde_util::rat_vec")]
    pub divisors: Vec<Rat>,
}

impl ElementaryDivisors {
    pub fn product(&self) -> Rat {
        self.divisors.iter().fold(Rat::one(), |a, b| a * b)
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<Int>,
    pub left: ZMatrix,
    pub right: ZMatrix,
}

/// Elementary divisors of an integer matrix (any shape).
pub fn snf(a: &ZMatrix) -> ElementaryDivisors {
    let d = smith(a).diagonal;
    ElementaryDivisors {
        divisors: d.into_iter().filter(|x| !x.is_zero()).map(rational::from_int).collect(),
    }
}

/// Elementary divisors of a rational matrix over `Z`.
pub fn snf_rational(a: &QMatrix) -> ElementaryDivisors {
    let (m, d) = a.clear_denominators();
    let dq = rational::from_int(d);
    let mut e = snf(&m);
    for x in e.divisors.iter_mut() {
        *x = &*x / &dq;
    }
    e
}

pub fn smith(a: &ZMatrix) -> SmithDecomposition {
    let n = a.rows();
    let m = a.cols();
    let mut a = a.clone();
    let mut u = ZMatrix::identity(n);
    let mut v = ZMatrix::identity(m);
    let k = n.min(m);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if !a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(a, u, v, k);
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..n {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..m {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let piv = a[(t, t)].clone();
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let minus_one = -Int::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for j in 0..m {
                a[(t, j)] = -a[(t, j)].clone();
            }
            for j in 0..n {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    finish(a, u, v, k)
}

fn finish(a: ZMatrix, u: ZMatrix, v: ZMatrix, k: usize) -> SmithDecomposition {
    SmithDecomposition { diagonal: (0..k).map(|i| a[(i, i)].clone()).collect(), left: u, right: v }
}

// row_dst -= q * row_src
fn row_axpy(a: &mut ZMatrix, dst: usize, src: usize, q: &Int) {
    for j in 0..a.cols() {
        let s = a[(src, j)].clone();
        if !s.is_zero() {
            a[(dst, j)] -= q * s;
        }
    }
}

fn col_axpy(a: &mut ZMatrix, dst: usize, src: usize, q: &Int) {
    for i in 0..a.rows() {
        let s = a[(i, src)].clone();
        if !s.is_zero() {
            a[(i, dst)] -= q * s;
        }
    }
}

/// Smith form over `Z_(p)`: `U * A * V = diag(p^{e_1}, ..., p^{e_r}, 0, ...)`.
#[derive(Clone, Debug)]
pub struct LocalSmith {
    pub valuations: Vec<i64>,
    pub left: QMatrix,
    pub right: QMatrix,
}

pub fn local_smith(a: &QMatrix, p: &Int) -> LocalSmith {
    let n = a.rows();
    let m = a.cols();
    let mut a = a.clone();
    let mut u = QMatrix::identity(n);
    let mut v = QMatrix::identity(m);
    let mut vals = Vec::new();
    for t in 0..n.min(m) {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..n {
            for j in t..m {
                if !a[(i, j)].is_zero() {
                    let e = rational::valuation(&a[(i, j)], p);
                    if best.is_none_or(|b| e < b.2) {
                        best = Some((i, j, e));
                    }
                }
            }
        }
        let Some((bi, bj, e)) = best else { break };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        let unit = rational::unit_part(&a[(t, t)], p);
        for j in 0..m {
            let x = &a[(t, j)] / &unit;
            a[(t, j)] = x;
        }
        for j in 0..n {
            let x = &u[(t, j)] / &unit;
            u[(t, j)] = x;
        }
        let piv = a[(t, t)].clone();
        for i in t + 1..n {
            if a[(i, t)].is_zero() {
                continue;
            }
            let q = &a[(i, t)] / &piv;
            for j in 0..m {
                let x = &a[(i, j)] - &(&q * &a[(t, j)]);
                a[(i, j)] = x;
            }
            for j in 0..n {
                let x = &u[(i, j)] - &(&q * &u[(t, j)]);
                u[(i, j)] = x;
            }
        }
        for j in t + 1..m {
            if a[(t, j)].is_zero() {
                continue;
            }
            let q = &a[(t, j)] / &piv;
            for i in 0..n {
                let x = &a[(i, j)] - &(&q * &a[(i, t)]);
                a[(i, j)] = x;
            }
            for i in 0..m {
                let x = &v[(i, j)] - &(&q * &v[(i, t)]);
                v[(i, j)] = x;
            }
        }
        vals.push(e);
    }
    LocalSmith { valuations: vals, left: u, right: v }
}
