//! Imaginary quadratic fields, fractional ideals, multiplier rings and
//! ideal classes as scaling orbits of lattices.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::rat;
use crate::exact::{Lattice, QMatrix, Rat, Ring};

/// `F = Q(√D)` with ring basis `{1, ω}`, `ω = (D + √D)/2`, `ω² = Dω - N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadField {
    disc: i64,
}

fn squarefree(n: i64) -> bool {
    let n = n.abs();
    (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0)
}

impl QuadField {
    pub fn new(disc: i64) -> Result<Self> {
        if disc >= 0 || disc < -10_000 {
            return Err(Error::Invalid(format!("discriminant {disc} outside -10000..0")));
        }
        if disc.rem_euclid(4) > 1 {
            return Err(Error::Invalid(format!("discriminant {disc} is not 0 or 1 mod 4")));
        }
        Ok(QuadField { disc })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_fundamental(&self) -> bool {
        let d = self.disc;
        if d.rem_euclid(4) == 1 {
            squarefree(d)
        } else {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
    }

    /// `N = (D² - D)/4`, the norm of `ω`.
    fn n(&self) -> Rat {
        rat((self.disc * self.disc - self.disc) / 4)
    }

    /// Matrix of multiplication by `a + bω` on the basis `{1, ω}`.
    pub fn mult_matrix(&self, x: &[Rat]) -> QMatrix {
        let (a, b) = (&x[0], &x[1]);
        let d = rat(self.disc);
        QMatrix::from_rows(vec![vec![a.clone(), -(b * self.n())], vec![b.clone(), a + &(b * &d)]])
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.mult_matrix(x).mul_vec(y)
    }

    pub fn norm(&self, x: &[Rat]) -> Rat {
        self.mult_matrix(x).det()
    }

    /// `O_F` as the standard lattice.
    pub fn ring_of_integers(&self) -> Lattice {
        Lattice::standard(Ring::Integers, 2)
    }
}

/// Full-rank lattice in `F ≅ Q²` (coordinates in `{1, ω}`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalIdeal {
    pub lattice: Lattice,
}

impl FractionalIdeal {
    pub fn new(lattice: Lattice) -> Result<Self> {
        if lattice.ambient_dim() != 2 || lattice.ring() != Ring::Integers {
            return Err(Error::Invalid("fractional ideals are rank-2 lattices over Z".into()));
        }
        Ok(FractionalIdeal { lattice })
    }

    pub fn from_generators(gens: &[Vec<Rat>]) -> Result<Self> {
        Self::new(Lattice::from_vectors(Ring::Integers, 2, gens)?)
    }

    pub fn scale(&self, f: &QuadField, x: &[Rat]) -> Result<Self> {
        Self::new(self.lattice.transform(&f.mult_matrix(x))?)
    }
}

/// `{x ∈ F : xΛ ⊆ Λ}`.
pub fn multiplier_ring(f: &QuadField, lam: &FractionalIdeal) -> Result<Lattice> {
    let b = lam.lattice.basis();
    let bi = b.inverse().ok_or(Error::DegenerateBasis)?;
    let cols: Vec<Vec<Rat>> = [[rat(1), rat(0)], [rat(0), rat(1)]]
        .iter()
        .map(|x| (&(&bi * &f.mult_matrix(x)) * b).flatten())
        .collect();
    Lattice::preimage(Ring::Integers, &QMatrix::from_columns(4, &cols))
}

/// Contains 1 and is closed under multiplication.
pub fn is_order(f: &QuadField, lat: &Lattice) -> bool {
    let g = lat.generators();
    lat.contains(&[rat(1), rat(0)]) && g.iter().all(|x| g.iter().all(|y| lat.contains(&f.mul(x, y))))
}

/// `x` with `x Λ₁ = Λ₂`, by solving the norm equation on `(Λ₂ : Λ₁)`.
pub fn scaling_between(f: &QuadField, l1: &FractionalIdeal, l2: &FractionalIdeal) -> Result<Option<Vec<Rat>>> {
    let b1 = l1.lattice.basis();
    let b2i = l2.lattice.basis().inverse().ok_or(Error::DegenerateBasis)?;
    let cols: Vec<Vec<Rat>> = [[rat(1), rat(0)], [rat(0), rat(1)]]
        .iter()
        .map(|x| (&(&b2i * &f.mult_matrix(x)) * b1).flatten())
        .collect();
    let quot = Lattice::preimage(Ring::Integers, &QMatrix::from_columns(4, &cols))?;
    let target = l2.lattice.covolume() / l1.lattice.covolume();
    let q = quot.basis();
    let (u1, u2) = (q.col(0), q.col(1));
    // N(u x + v y) = A u² + B uv + C v²
    let na = f.norm(&u1);
    let nc = f.norm(&u2);
    let sum: Vec<Rat> = u1.iter().zip(&u2).map(|(a, b)| a + b).collect();
    let nb = f.norm(&sum) - &na - &nc;
    let delta = rat(4) * &na * &nc - &nb * &nb;
    if !delta.is_positive() {
        return Err(Error::Invalid("norm form is not positive definite".into()));
    }
    let bound = |lead: &Rat| -> i64 {
        // largest k with k² Δ ≤ 4 · lead · target
        let lim = rat(4) * lead * &target / &delta;
        let mut k = 0i64;
        while rat((k + 1) * (k + 1)) <= lim {
            k += 1;
        }
        k
    };
    let (bu, bv) = (bound(&nc), bound(&na));
    for v in -bv..=bv {
        for u in -bu..=bu {
            let x: Vec<Rat> = u1.iter().zip(&u2).map(|(a, b)| a * rat(u) + b * rat(v)).collect();
            if f.norm(&x) != target {
                continue;
            }
            if l1.scale(f, &x)?.lattice == l2.lattice {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// Sublattices of `Z²` of index `n` in Hermite form: columns `(a, 0)`, `(b, d)`, `ad = n`, `0 ≤ b < a`.
fn sublattices_of_index(n: i64) -> Vec<Lattice> {
    let mut out = Vec::new();
    for a in (1..=n).filter(|a| n % a == 0) {
        let d = n / a;
        for b in 0..a {
            let m = QMatrix::from_rows(vec![vec![rat(a), rat(b)], vec![rat(0), rat(d)]]);
            out.push(Lattice::new(Ring::Integers, &m).expect("full rank"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassGroupReport {
    pub disc: i64,
    pub orbit_count: usize,
    pub minkowski_bound: i64,
    pub ideals_enumerated: usize,
    /// Integral ideals of least norm in each class, ordered by norm.
    pub representatives: Vec<Lattice>,
    pub representative_norms: Vec<i64>,
}

/// Largest `n` with `n ≤ (16/25)·√|D|`, an upper bound for `(2/π)·√|D|`.
pub fn minkowski_bound(disc: i64) -> i64 {
    let d = disc.abs();
    let mut n = 0;
    while 625 * (n + 1) * (n + 1) <= 256 * d {
        n += 1;
    }
    n.max(1)
}

/// Orbits of fractional ideals with multiplier ring `O_F` under `F^×`.
pub fn class_orbit_count(f: &QuadField) -> Result<ClassGroupReport> {
    if !f.is_fundamental() {
        return Err(Error::NonFundamental(f.disc));
    }
    let ok = f.ring_of_integers();
    let bound = minkowski_bound(f.disc);
    let mut reps: Vec<(i64, FractionalIdeal)> = Vec::new();
    let mut enumerated = 0;
    for n in 1..=bound {
        for lat in sublattices_of_index(n) {
            let ideal = FractionalIdeal::new(lat)?;
            if multiplier_ring(f, &ideal)? != ok {
                continue;
            }
            enumerated += 1;
            let mut seen = false;
            for (_, r) in &reps {
                if scaling_between(f, r, &ideal)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                reps.push((n, ideal));
            }
        }
    }
    Ok(ClassGroupReport {
        disc: f.disc,
        orbit_count: reps.len(),
        minkowski_bound: bound,
        ideals_enumerated: enumerated,
        representative_norms: reps.iter().map(|r| r.0).collect(),
        representatives: reps.into_iter().map(|r| r.1.lattice).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[[i64; 2]]) -> FractionalIdeal {
        FractionalIdeal::from_generators(&gens.iter().map(|g| vec![rat(g[0]), rat(g[1])]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn gaussian_multiplier_rings() {
        let f = QuadField::new(-4).unwrap();
        // i = ω + 2
        let full = ideal(&[[1, 0], [2, 1]]);
        assert_eq!(multiplier_ring(&f, &full).unwrap(), f.ring_of_integers());
        let thin = ideal(&[[1, 0], [4, 2]]);
        let r = multiplier_ring(&f, &thin).unwrap();
        assert!(is_order(&f, &r));
        assert_eq!(r.index_in(&f.ring_of_integers()).unwrap(), rat(2));
        assert!(r.contains(&[rat(4), rat(2)]));
        assert!(!r.contains(&[rat(2), rat(1)]));
    }

    #[test]
    fn multiplication_table() {
        let f = QuadField::new(-23).unwrap();
        let w = [rat(0), rat(1)];
        // ω² = Dω - N with N = 138
        assert_eq!(f.mul(&w, &w), vec![rat(-138), rat(-23)]);
        assert_eq!(f.norm(&w), rat(138));
        let (x, y, z) = ([rat(1), rat(2)], [rat(-3), rat(1)], [rat(2), rat(-5)]);
        assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
    }

    #[test]
    fn validation() {
        assert!(QuadField::new(-5).is_err());
        assert!(QuadField::new(5).is_err());
        assert!(!QuadField::new(-16).unwrap().is_fundamental());
        assert!(matches!(class_orbit_count(&QuadField::new(-16).unwrap()), Err(Error::NonFundamental(-16))));
        assert!(QuadField::new(-20).unwrap().is_fundamental());
    }

    #[test]
    fn principal_ideals_are_equivalent_to_the_unit_ideal() {
        let f = QuadField::new(-20).unwrap();
        let ok = FractionalIdeal::new(f.ring_of_integers()).unwrap();
        let x = [rat(3), rat(1)];
        let p = ok.scale(&f, &x).unwrap();
        let found = scaling_between(&f, &ok, &p).unwrap().unwrap();
        assert_eq!(ok.scale(&f, &found).unwrap(), p);
    }
}
