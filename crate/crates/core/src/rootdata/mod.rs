//! Root systems of classical type and Chevalley bases in matrix form.

mod chevalley;

pub use chevalley::{killing_h, ChevalleyBasis, Isogeny};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TypeLabel::A),
            "B" | "b" => Ok(TypeLabel::B),
            "C" | "c" => Ok(TypeLabel::C),
            "D" | "d" => Ok(TypeLabel::D),
            other => Err(Error::UnsupportedType { label: other.to_string(), rank: 0 }),
        }
    }
}

/// Reduced root system with roots in simple-root coordinates.
///
/// `cartan[i][j] = <α_j, h_i>`. Positive roots are sorted by height, then
/// lexicographically; `roots()` lists the positive roots followed by their
/// negatives in the same order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    #[serde(rename = "type")]
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    #[serde(rename = "positive_roots")]
    positive: Vec<Vec<i64>>,
    #[serde(skip)]
    roots: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for RootSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            #[serde(rename = "type")]
            label: TypeLabel,
            rank: usize,
        }
        let w = Wire::deserialize(d)?;
        RootSystem::new(w.label, w.rank).map_err(serde::de::Error::custom)
    }
}

pub fn cartan_matrix(label: TypeLabel, rank: usize) -> Result<Vec<Vec<i64>>> {
    let ok = match label {
        TypeLabel::A => (1..=4).contains(&rank),
        TypeLabel::B | TypeLabel::C => (2..=4).contains(&rank),
        TypeLabel::D => (3..=4).contains(&rank),
    };
    if !ok {
        return Err(Error::UnsupportedType { label: label.to_string(), rank });
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    for i in 0..n - 1 {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match label {
        TypeLabel::A => {}
        TypeLabel::B => a[n - 1][n - 2] = -2,
        TypeLabel::C => a[n - 2][n - 1] = -2,
        TypeLabel::D => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
    }
    Ok(a)
}

impl RootSystem {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(label, rank)?;
        let positive = positive_roots(&cartan);
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let rs = RootSystem { label, rank, cartan, positive, roots };
        let expected = match label {
            TypeLabel::A => rank * (rank + 1),
            TypeLabel::B | TypeLabel::C => 2 * rank * rank,
            TypeLabel::D => 2 * rank * (rank - 1),
        };
        assert_eq!(rs.roots.len(), expected, "root count for {label}{rank}");
        Ok(rs)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == coords)
    }

    /// Index of `-roots()[k]`.
    pub fn negative_of(&self, k: usize) -> usize {
        let p = self.positive.len();
        if k < p {
            k + p
        } else {
            k - p
        }
    }

    pub fn simple_index(&self, i: usize) -> usize {
        self.root_index(&unit(self.rank, i)).expect("simple root present")
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive.len()
    }

    /// `<β, h_i>` for `β` in simple-root coordinates.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        self.cartan[i].iter().zip(beta).map(|(a, m)| a * m).sum()
    }

    /// Fundamental-weight coordinates of a root-lattice element.
    pub fn to_weight(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.pairing(beta, i)).collect()
    }

    pub fn height(beta: &[i64]) -> i64 {
        beta.iter().sum()
    }

    /// Largest `r ≥ 0` with `β - rα` a root (or zero when `β = α`).
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut r = 0;
        loop {
            let next: Vec<i64> = beta.iter().zip(alpha).map(|(b, a)| b - (r + 1) * a).collect();
            if self.root_index(&next).is_some() {
                r += 1;
            } else {
                return r;
            }
        }
    }

    /// For a non-simple positive root `γ = roots()[k]`: the smallest `i` with
    /// `γ - α_i` a positive root, the index of `β = γ - α_i`, and the largest
    /// `r` with `β - rα_i` a root.
    pub fn predecessor(&self, k: usize) -> Option<(usize, usize, i64)> {
        if !self.is_positive(k) || Self::height(&self.roots[k]) == 1 {
            return None;
        }
        let gamma = &self.roots[k];
        let (i, b) = (0..self.rank).find_map(|i| {
            let mut b = gamma.clone();
            b[i] -= 1;
            self.root_index(&b).filter(|&j| self.is_positive(j)).map(|j| (i, j))
        })?;
        let r = self.string_down(&unit(self.rank, i), &self.roots[b]);
        Some((i, b, r))
    }

    /// Simple-root coordinates of a weight given in fundamental-weight
    /// coordinates, if it lies in the root lattice.
    pub fn weight_to_root_coords(&self, w: &[i64]) -> Option<Vec<i64>> {
        use crate::exact::matrix::QMatrix;
        use crate::exact::rational::rat;
        let a = QMatrix::from_fn(self.rank, self.rank, |i, j| rat(self.cartan[i][j]));
        let sol = a.solve(&w.iter().map(|&x| rat(x)).collect::<Vec<_>>())?;
        sol.iter().map(|q| if q.is_integer() { num_traits::ToPrimitive::to_i64(&q.to_integer()) } else { None }).collect()
    }

    pub fn weight_to_rational_root_coords(&self, w: &[i64]) -> Vec<crate::exact::Rat> {
        use crate::exact::matrix::QMatrix;
        use crate::exact::rational::rat;
        let a = QMatrix::from_fn(self.rank, self.rank, |i, j| rat(self.cartan[i][j]));
        a.solve(&w.iter().map(|&x| rat(x)).collect::<Vec<_>>()).expect("Cartan matrix is invertible")
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Positive roots by the string algorithm.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let mut q = 0;
            loop {
                let down: Vec<i64> = beta.iter().enumerate().map(|(j, &b)| if j == i { b - q - 1 } else { b }).collect();
                if roots.contains(&down) {
                    q += 1;
                } else {
                    break;
                }
            }
            let pair: i64 = cartan[i].iter().zip(&beta).map(|(a, m)| a * m).sum();
            if q - pair > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if !roots.contains(&up) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| RootSystem::height(a).cmp(&RootSystem::height(b)).then_with(|| b.cmp(a)));
    roots
}
