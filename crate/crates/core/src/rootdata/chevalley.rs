use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{RootSystem, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::matrix::QMatrix;
use crate::exact::module::Ring;
use crate::exact::rational::{rat, Rat};
use crate::exact::Lattice;

/// Which integral structure `𝔗₀` the Cartan subalgebra carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    #[default]
    SimplyConnected,
    Adjoint,
}

/// Chevalley basis in the defining matrix realization.
///
/// Basis order of `𝔤`: `h_1..h_l`, then `x_α` for the roots in
/// [`RootSystem::roots`] order.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    isogeny: Isogeny,
    n: usize,
    x: Vec<QMatrix>,
    h: Vec<QMatrix>,
    coroots: Vec<Vec<Rat>>,
    cartan_lattice: Lattice,
    killing_cartan: QMatrix,
    coord_rows: Vec<usize>,
    coord_inverse: QMatrix,
}

fn e(n: usize, i: usize, j: usize) -> QMatrix {
    QMatrix::unit(n, n, i, j)
}

/// Simple root vectors `e_i`, `f_i` of the defining realization.
fn simple_generators(label: TypeLabel, l: usize) -> (usize, Vec<QMatrix>, Vec<QMatrix>) {
    let mut es = Vec::new();
    let mut fs = Vec::new();
    match label {
        TypeLabel::A => {
            let n = l + 1;
            for i in 0..l {
                es.push(e(n, i, i + 1));
                fs.push(e(n, i + 1, i));
            }
            (n, es, fs)
        }
        TypeLabel::C | TypeLabel::D => {
            let n = 2 * l;
            for i in 0..l - 1 {
                es.push(&e(n, i, i + 1) - &e(n, l + i + 1, l + i));
                fs.push(&e(n, i + 1, i) - &e(n, l + i, l + i + 1));
            }
            if label == TypeLabel::C {
                es.push(e(n, l - 1, 2 * l - 1));
                fs.push(e(n, 2 * l - 1, l - 1));
            } else {
                es.push(&e(n, l - 2, 2 * l - 1) - &e(n, l - 1, 2 * l - 2));
                fs.push(&e(n, 2 * l - 1, l - 2) - &e(n, 2 * l - 2, l - 1));
            }
            (n, es, fs)
        }
        TypeLabel::B => {
            // index 0 is the isotropic complement; 1..=l and l+1..=2l are paired
            let n = 2 * l + 1;
            for i in 1..l {
                es.push(&e(n, i, i + 1) - &e(n, l + i + 1, l + i));
                fs.push(&e(n, i + 1, i) - &e(n, l + i, l + i + 1));
            }
            es.push(&e(n, l, 0) - &e(n, 0, 2 * l));
            fs.push((&e(n, 0, l) - &e(n, 2 * l, 0)).scale(&rat(2)));
            (n, es, fs)
        }
    }
}

/// Invariant form of the realization, if any (`Xᵀ S + S X = 0`).
pub(crate) fn invariant_form(label: TypeLabel, l: usize) -> Option<QMatrix> {
    match label {
        TypeLabel::A => None,
        TypeLabel::C => Some(QMatrix::from_fn(2 * l, 2 * l, |i, j| {
            if j == i + l {
                rat(1)
            } else if i == j + l {
                rat(-1)
            } else {
                rat(0)
            }
        })),
        TypeLabel::D => Some(QMatrix::from_fn(2 * l, 2 * l, |i, j| if j == i + l || i == j + l { rat(1) } else { rat(0) })),
        TypeLabel::B => Some(QMatrix::from_fn(2 * l + 1, 2 * l + 1, |i, j| {
            if (i == 0 && j == 0) || (i >= 1 && j == i + l) || (j >= 1 && i == j + l) {
                rat(1)
            } else {
                rat(0)
            }
        })),
    }
}

/// Scalar `c` with `m = c · x`, if one exists.
pub(crate) fn proportionality(m: &QMatrix, x: &QMatrix) -> Option<Rat> {
    let k = x.entries().iter().position(|v| !v.is_zero())?;
    let c = &m.entries()[k] / &x.entries()[k];
    if &x.scale(&c) == m {
        Some(c)
    } else {
        None
    }
}

impl ChevalleyBasis {
    pub fn new(rs: &RootSystem) -> Self {
        Self::with_isogeny(rs, Isogeny::SimplyConnected)
    }

    pub fn build(label: TypeLabel, rank: usize, isogeny: Isogeny) -> Result<Self> {
        Ok(Self::with_isogeny(&RootSystem::new(label, rank)?, isogeny))
    }

    /// Builds and verifies the basis; panics if a Chevalley axiom fails.
    pub fn with_isogeny(rs: &RootSystem, isogeny: Isogeny) -> Self {
        let l = rs.rank();
        let (n, es, fs) = simple_generators(rs.label(), l);
        let h: Vec<QMatrix> = (0..l).map(|i| es[i].commutator(&fs[i])).collect();
        let np = rs.num_positive();
        let mut x: Vec<Option<QMatrix>> = vec![None; 2 * np];
        for i in 0..l {
            let k = rs.simple_index(i);
            x[k] = Some(es[i].clone());
            x[rs.negative_of(k)] = Some(fs[i].clone());
        }
        for k in 0..np {
            if x[k].is_some() {
                continue;
            }
            let (i, bidx, r) = rs.predecessor(k).expect("non-simple positive root has a predecessor");
            let div = rat(r + 1);
            let xb = x[bidx].clone().expect("lower height first");
            let xnb = x[rs.negative_of(bidx)].clone().expect("lower height first");
            x[k] = Some(es[i].commutator(&xb).scale(&(Rat::one() / &div)));
            x[rs.negative_of(k)] = Some(fs[i].commutator(&xnb).scale(&(-Rat::one() / &div)));
        }
        let x: Vec<QMatrix> = x.into_iter().map(|m| m.expect("all roots assigned")).collect();

        // Killing form restricted to the Cartan, in the h_i basis.
        let killing_cartan = QMatrix::from_fn(l, l, |i, j| {
            rat(rs.roots().iter().map(|b| rs.pairing(b, i) * rs.pairing(b, j)).sum::<i64>())
        });
        let coroots: Vec<Vec<Rat>> = rs.roots().iter().map(|g| killing_coroot(rs, &killing_cartan, g)).collect();

        let cartan_basis = match isogeny {
            Isogeny::SimplyConnected => QMatrix::identity(l),
            Isogeny::Adjoint => {
                let a = QMatrix::from_fn(l, l, |i, j| rat(rs.cartan()[i][j]));
                a.inverse().expect("Cartan matrix invertible").transpose()
            }
        };
        let cartan_lattice = Lattice::new(Ring::Integers, &cartan_basis).expect("nonsingular");

        let dim = l + x.len();
        let flat = QMatrix::from_columns(n * n, &h.iter().chain(x.iter()).map(|m| m.entries().to_vec()).collect::<Vec<_>>());
        let rows = flat.transpose().independent_columns();
        assert_eq!(rows.len(), dim, "realization is not faithful");
        let coord_inverse = flat.select_rows(&rows).inverse().expect("independent rows");

        let cb = ChevalleyBasis {
            rs: rs.clone(),
            isogeny,
            n,
            x,
            h,
            coroots,
            cartan_lattice,
            killing_cartan,
            coord_rows: rows,
            coord_inverse,
        };
        if let Err(msg) = cb.verify() {
            panic!("Chevalley construction failed for {}{}: {msg}", rs.label(), l);
        }
        cb
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn defining_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.x.len()
    }

    /// `x_α` for `α = roots()[k]`.
    pub fn x(&self, k: usize) -> &QMatrix {
        &self.x[k]
    }

    pub fn xs(&self) -> &[QMatrix] {
        &self.x
    }

    /// `h_i` for the i-th simple root.
    pub fn h(&self, i: usize) -> &QMatrix {
        &self.h[i]
    }

    pub fn hs(&self) -> &[QMatrix] {
        &self.h
    }

    /// Coordinates of `h_α` in the simple coroot basis.
    pub fn coroot(&self, k: usize) -> &[Rat] {
        &self.coroots[k]
    }

    /// `h_α` as a matrix.
    pub fn coroot_matrix(&self, k: usize) -> QMatrix {
        self.cartan_element(&self.coroots[k])
    }

    pub fn cartan_element(&self, t: &[Rat]) -> QMatrix {
        let mut out = QMatrix::zeros(self.n, self.n);
        for (c, m) in t.iter().zip(&self.h) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `𝔗₀` in coordinates of the simple coroot basis.
    pub fn cartan_lattice(&self) -> &Lattice {
        &self.cartan_lattice
    }

    /// Matrices of a `Z`-basis of `𝔗₀`.
    pub fn cartan_lattice_matrices(&self) -> Vec<QMatrix> {
        self.cartan_lattice.generators().iter().map(|t| self.cartan_element(t)).collect()
    }

    /// Basis of `𝔤` in the documented order.
    pub fn basis_matrices(&self) -> Vec<QMatrix> {
        self.h.iter().chain(self.x.iter()).cloned().collect()
    }

    /// Generators of the Chevalley lattice `𝔗₀ ⊕ ⊕ Z x_α`, as vectors in `𝔤`-coordinates.
    pub fn chevalley_lattice(&self) -> Lattice {
        let l = self.rank();
        let dim = self.dim();
        let mut gens = Vec::new();
        for t in self.cartan_lattice.generators() {
            let mut v = vec![Rat::zero(); dim];
            v[..l].clone_from_slice(&t);
            gens.push(v);
        }
        for k in 0..self.x.len() {
            let mut v = vec![Rat::zero(); dim];
            v[l + k] = Rat::one();
            gens.push(v);
        }
        Lattice::from_vectors(Ring::Integers, dim, &gens).expect("full rank")
    }

    /// Coordinates of a matrix in the basis of `𝔤`, or `None` if it is not in `𝔤`.
    pub fn coordinates(&self, m: &QMatrix) -> Option<Vec<Rat>> {
        let ent = m.entries();
        let sel: Vec<Rat> = self.coord_rows.iter().map(|&r| ent[r].clone()).collect();
        let c = self.coord_inverse.mul_vec(&sel);
        if &self.matrix_of(&c) == m {
            Some(c)
        } else {
            None
        }
    }

    pub fn matrix_of(&self, c: &[Rat]) -> QMatrix {
        let mut out = QMatrix::zeros(self.n, self.n);
        for (ci, b) in c.iter().zip(self.h.iter().chain(self.x.iter())) {
            if !ci.is_zero() {
                out = &out + &b.scale(ci);
            }
        }
        out
    }

    /// Adjoint action matrix in the basis of `𝔤`.
    pub fn ad(&self, m: &QMatrix) -> QMatrix {
        let cols: Vec<Vec<Rat>> = self
            .basis_matrices()
            .iter()
            .map(|b| self.coordinates(&m.commutator(b)).expect("𝔤 is closed under bracket"))
            .collect();
        QMatrix::from_columns(self.dim(), &cols)
    }

    /// `κ(X, Y) = tr(ad X ad Y)` on the basis of `𝔤`.
    pub fn killing_gram(&self) -> QMatrix {
        let ads: Vec<QMatrix> = self.basis_matrices().iter().map(|b| self.ad(b)).collect();
        let d = self.dim();
        QMatrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace())
    }

    /// Killing form on the Cartan in the simple coroot basis.
    pub fn killing_cartan(&self) -> &QMatrix {
        &self.killing_cartan
    }

    /// Structure constant `N` with `[x_α, x_β] = N x_{α+β}`; zero when `α+β` is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> Rat {
        let roots = self.rs.roots();
        let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
        match self.rs.root_index(&s) {
            Some(k) => proportionality(&self.x[a].commutator(&self.x[b]), &self.x[k]).expect("bracket lies in root space"),
            None => Rat::zero(),
        }
    }

    /// Checks every Chevalley-set axiom exactly.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let rs = &self.rs;
        let roots = rs.roots();
        let l = rs.rank();
        if let Some(s) = invariant_form(rs.label(), l) {
            for m in self.basis_matrices() {
                if !(&(&m.transpose() * &s) + &(&s * &m)).is_zero() {
                    return Err("realization leaves the invariant form".into());
                }
            }
        }
        for (k, xa) in self.x.iter().enumerate() {
            for i in 0..l {
                let expect = xa.scale(&rat(rs.pairing(&roots[k], i)));
                if self.h[i].commutator(xa) != expect {
                    return Err(format!("[h_{i}, x_{:?}] is not α(h)·x", roots[k]));
                }
            }
            let nk = rs.negative_of(k);
            if xa.commutator(&self.x[nk]) != self.coroot_matrix(k) {
                return Err(format!("[x_α, x_-α] ≠ h_α for α = {:?}", roots[k]));
            }
            for t in self.cartan_lattice.generators() {
                let v: Rat = t.iter().enumerate().map(|(i, c)| c * rat(rs.pairing(&roots[k], i))).sum();
                if !v.is_integer() {
                    return Err("𝔗₀ does not act integrally".into());
                }
            }
            for (j, xb) in self.x.iter().enumerate() {
                let s: Vec<i64> = roots[k].iter().zip(&roots[j]).map(|(a, b)| a + b).collect();
                let br = xa.commutator(xb);
                if s.iter().all(|&c| c == 0) {
                    continue;
                }
                match rs.root_index(&s) {
                    None => {
                        if !br.is_zero() {
                            return Err(format!("[x_{:?}, x_{:?}] should vanish", roots[k], roots[j]));
                        }
                    }
                    Some(m) => {
                        let r = rs.string_down(&roots[k], &roots[j]);
                        match proportionality(&br, &self.x[m]) {
                            Some(c) if c.abs() == rat(r + 1) => {}
                            other => {
                                return Err(format!(
                                    "[x_{:?}, x_{:?}] has constant {other:?}, expected ±{}",
                                    roots[k],
                                    roots[j],
                                    r + 1
                                ))
                            }
                        }
                    }
                }
            }
        }
        for (k, c) in self.coroots.iter().enumerate() {
            if c.iter().any(|v| !v.is_integer()) {
                return Err(format!("h_α not in the coroot lattice for {:?}", roots[k]));
            }
        }
        Ok(())
    }

    /// Generators of `C(x)` as matrices: a `𝔗₀` basis and all `x_α`.
    pub fn lattice_generators(&self) -> Vec<QMatrix> {
        let mut g = self.cartan_lattice_matrices();
        g.extend(self.x.iter().cloned());
        g
    }
}

/// `h_γ = 2 t_γ / κ(t_γ, t_γ)` where `κ(t_γ, ·) = γ`.
fn killing_coroot(rs: &RootSystem, g: &QMatrix, gamma: &[i64]) -> Vec<Rat> {
    let rhs: Vec<Rat> = (0..rs.rank()).map(|j| rat(rs.pairing(gamma, j))).collect();
    let t = g.solve(&rhs).expect("Killing form nondegenerate on the Cartan");
    let gt = g.mul_vec(&t);
    let norm: Rat = t.iter().zip(&gt).map(|(a, b)| a * b).sum();
    assert!(!norm.is_zero());
    let s = rat(2) / norm;
    t.iter().map(|v| v * &s).collect()
}

/// `h_α` in simple coroot coordinates, computed from the Killing form.
pub fn killing_h(rs: &RootSystem, alpha: &[i64]) -> Result<Vec<Rat>> {
    if rs.root_index(alpha).is_none() {
        return Err(Error::Invalid(format!("{alpha:?} is not a root")));
    }
    let l = rs.rank();
    let g = QMatrix::from_fn(l, l, |i, j| rat(rs.roots().iter().map(|b| rs.pairing(b, i) * rs.pairing(b, j)).sum::<i64>()));
    Ok(killing_coroot(rs, &g, alpha))
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "type")]
    label: TypeLabel,
    rank: usize,
    #[serde(default)]
    isogeny: Isogeny,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    defining_dim: Option<usize>,
    #[serde(default)]
    roots: Vec<Vec<i64>>,
    #[serde(default, with = "crate::serde_util::matrix_vec")]
    x: Vec<QMatrix>,
    #[serde(default, with = "crate::serde_util::matrix_vec")]
    h: Vec<QMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cartan_lattice: Option<Lattice>,
}

impl Serialize for ChevalleyBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            label: self.rs.label(),
            rank: self.rank(),
            isogeny: self.isogeny,
            defining_dim: Some(self.n),
            roots: self.rs.roots().to_vec(),
            x: self.x.clone(),
            h: self.h.clone(),
            cartan_lattice: Some(self.cartan_lattice.clone()),
        }
        .serialize(s)
    }
}

/// Rebuilds the realization from the type data; supplied matrices must agree with it.
impl<'de> Deserialize<'de> for ChevalleyBasis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let cb = ChevalleyBasis::build(w.label, w.rank, w.isogeny).map_err(serde::de::Error::custom)?;
        if (!w.x.is_empty() && w.x != cb.x) || (!w.h.is_empty() && w.h != cb.h) {
            return Err(serde::de::Error::custom("matrices do not match the standard realization"));
        }
        Ok(cb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_realization() {
        let cb = ChevalleyBasis::build(TypeLabel::A, 1, Isogeny::SimplyConnected).unwrap();
        assert_eq!(cb.x(0), &QMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(cb.x(1), &QMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert_eq!(cb.h(0), &QMatrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert_eq!(cb.x(0).commutator(cb.x(1)), *cb.h(0));
    }

    #[test]
    fn a2_constant_is_one() {
        let cb = ChevalleyBasis::build(TypeLabel::A, 2, Isogeny::SimplyConnected).unwrap();
        assert_eq!(cb.structure_constant(0, 1).abs(), rat(1));
    }

    #[test]
    fn c2_has_constant_two() {
        let cb = ChevalleyBasis::build(TypeLabel::C, 2, Isogeny::SimplyConnected).unwrap();
        let np = cb.root_system().num_positive();
        let found = (0..2 * np).any(|a| (0..2 * np).any(|b| cb.structure_constant(a, b).abs() == rat(2)));
        assert!(found);
    }

    #[test]
    fn all_types_verify() {
        for (l, r) in [
            (TypeLabel::A, 1),
            (TypeLabel::A, 3),
            (TypeLabel::A, 4),
            (TypeLabel::B, 2),
            (TypeLabel::B, 3),
            (TypeLabel::B, 4),
            (TypeLabel::C, 3),
            (TypeLabel::C, 4),
            (TypeLabel::D, 3),
            (TypeLabel::D, 4),
        ] {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let cb = ChevalleyBasis::build(l, r, iso).unwrap();
                assert!(cb.verify().is_ok());
            }
        }
    }

    #[test]
    fn killing_coroots() {
        let a1 = RootSystem::new(TypeLabel::A, 1).unwrap();
        assert_eq!(killing_h(&a1, &[1]).unwrap(), vec![rat(1)]);
        let a2 = RootSystem::new(TypeLabel::A, 2).unwrap();
        let h2 = killing_h(&a2, &[0, 1]).unwrap();
        assert_eq!(a2.to_weight(&[1, 0]).iter().zip(&h2).map(|(w, c)| rat(*w) * c).sum::<Rat>(), rat(-1));
        let c2 = RootSystem::new(TypeLabel::C, 2).unwrap();
        let pair = |a: &[i64], b: &[i64]| -> Rat {
            let h = killing_h(&c2, b).unwrap();
            c2.to_weight(a).iter().zip(&h).map(|(w, c)| rat(*w) * c).sum()
        };
        // α₁ short, α₂ long
        assert_eq!(pair(&[1, 0], &[0, 1]), rat(-1));
        assert_eq!(pair(&[0, 1], &[1, 0]), rat(-2));
        assert!(killing_h(&c2, &[3, 0]).is_err());
    }

    #[test]
    fn adjoint_cartan_lattice_is_coweights() {
        let cb = ChevalleyBasis::build(TypeLabel::A, 1, Isogeny::Adjoint).unwrap();
        assert_eq!(cb.cartan_lattice().basis(), &QMatrix::from_rows(vec![vec![crate::exact::rational::frac(1, 2)]]));
    }

    #[test]
    fn json_round_trip() {
        let cb = ChevalleyBasis::build(TypeLabel::C, 2, Isogeny::SimplyConnected).unwrap();
        let s = serde_json::to_string(&cb).unwrap();
        let back: ChevalleyBasis = serde_json::from_str(&s).unwrap();
        assert_eq!(back.xs(), cb.xs());
        let short: ChevalleyBasis = serde_json::from_str(r#"{"type":"A","rank":2}"#).unwrap();
        assert_eq!(short.dim(), 8);
    }
}
