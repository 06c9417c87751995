//! Irreducible representations as quotients of tensor products of exterior powers.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::{highest_weight_vectors, joint_eigenspaces, lowering_closure, Representation, Weight};
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rat, Span};
use crate::rootdata::ChevalleyBasis;

/// Largest tensor product the construction is allowed to build.
const TENSOR_CAP: usize = 1024;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `∧^k X` on the basis `e_S`, `S` ranging over increasing `k`-subsets in lexicographic order.
pub fn exterior_power(x: &QMatrix, k: usize) -> QMatrix {
    let n = x.rows();
    let sets = subsets(n, k);
    let pos = |s: &[usize]| sets.binary_search_by(|t| t.as_slice().cmp(s)).expect("subset present");
    let mut out = QMatrix::zeros(sets.len(), sets.len());
    for (c, s) in sets.iter().enumerate() {
        for (idx, &src) in s.iter().enumerate() {
            for t in 0..n {
                let a = &x[(t, src)];
                if a.is_zero() {
                    continue;
                }
                if t == src {
                    out[(c, c)] += a;
                    continue;
                }
                if s.contains(&t) {
                    continue;
                }
                let mut ns = s.clone();
                ns[idx] = t;
                let between = s.iter().filter(|&&u| (u > src.min(t)) && (u < src.max(t))).count();
                ns.sort_unstable();
                let r = pos(&ns);
                if between % 2 == 0 {
                    out[(r, c)] += a;
                } else {
                    out[(r, c)] -= a;
                }
            }
        }
    }
    out
}

/// Weyl dimension formula `∏_{α>0} <ψ+ρ, h_α> / <ρ, h_α>`.
pub fn weyl_dimension(cb: &ChevalleyBasis, psi: &Weight) -> Rat {
    let rs = cb.root_system();
    let mut num = Rat::one();
    let mut den = Rat::one();
    for k in 0..rs.num_positive() {
        let c = cb.coroot(k);
        let pair = |w: &dyn Fn(usize) -> i64| c.iter().enumerate().fold(Rat::zero(), |acc, (i, ci)| acc + ci * Rat::from_integer(w(i).into()));
        num *= pair(&|i| psi.0[i] + 1);
        den *= pair(&|_| 1);
    }
    num / den
}

struct Atom {
    k: usize,
    weight: Weight,
    dim: usize,
}

/// Highest weights of the exterior powers of the defining realization.
fn atoms(cb: &ChevalleyBasis) -> Vec<Atom> {
    let rs = cb.root_system();
    let n = cb.defining_dim();
    let mut out = Vec::new();
    for k in 1..n {
        let h: Vec<QMatrix> = cb.hs().iter().map(|m| exterior_power(m, k)).collect();
        let es: Vec<QMatrix> = (0..rs.rank()).map(|i| exterior_power(cb.x(rs.simple_index(i)), k)).collect();
        let d = h[0].rows();
        let spaces = joint_eigenspaces(&h, d).expect("exterior powers are representations");
        let er: Vec<&QMatrix> = es.iter().collect();
        for (w, _) in highest_weight_vectors(&er, &spaces, d) {
            if w.0.iter().any(|&c| c != 0) && !out.iter().any(|a: &Atom| a.weight == w) {
                out.push(Atom { k, weight: w, dim: d });
            }
        }
    }
    out
}

/// Cheapest multiset of atoms (by product of dimensions) summing to `psi`.
fn cheapest_word(atoms: &[Atom], psi: &Weight) -> Option<Vec<usize>> {
    fn go(atoms: &[Atom], from: usize, rest: &[i64], cost: usize, cur: &mut Vec<usize>, best: &mut Option<(usize, Vec<usize>)>) {
        if rest.iter().all(|&c| c == 0) {
            if best.as_ref().map_or(true, |(b, _)| cost < *b) {
                *best = Some((cost, cur.clone()));
            }
            return;
        }
        for (i, a) in atoms.iter().enumerate().skip(from) {
            let next: Vec<i64> = rest.iter().zip(&a.weight.0).map(|(r, w)| r - w).collect();
            if next.iter().any(|&c| c < 0) {
                continue;
            }
            let c = cost.saturating_mul(a.dim);
            if best.as_ref().is_some_and(|(b, _)| c >= *b) || c > TENSOR_CAP {
                continue;
            }
            cur.push(i);
            go(atoms, i, &next, c, cur, best);
            cur.pop();
        }
    }
    let mut best = None;
    go(atoms, 0, &psi.0, 1, &mut Vec::new(), &mut best);
    best.map(|(_, w)| w)
}

/// Irreducible representation of highest weight `psi`.
///
/// The highest-weight vector is located in a tensor product of exterior powers
/// of the defining realization; the representation is the quotient by the
/// complement generated by the remaining highest-weight vectors, with basis
/// the images of the first standard tensors that stay independent.
pub fn build_irrep(cb: &Arc<ChevalleyBasis>, psi: &Weight) -> Result<Representation> {
    let rs = cb.root_system();
    if psi.0.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), found: psi.0.len() });
    }
    if !psi.is_dominant() {
        return Err(Error::NotDominant(psi.0.clone()));
    }
    if psi.0.iter().all(|&c| c == 0) {
        return Ok(Representation::trivial(cb.clone()));
    }
    let atoms = atoms(cb);
    let word = cheapest_word(&atoms, psi).ok_or_else(|| Error::UnreachableWeight(psi.0.clone()))?;

    let lift = |m: &QMatrix, k: usize| exterior_power(m, k);
    let mut h: Vec<QMatrix> = Vec::new();
    let mut x: Vec<QMatrix> = Vec::new();
    for (n, &ai) in word.iter().enumerate() {
        let k = atoms[ai].k;
        let ah: Vec<QMatrix> = cb.hs().iter().map(|m| lift(m, k)).collect();
        let ax: Vec<QMatrix> = cb.xs().iter().map(|m| lift(m, k)).collect();
        if n == 0 {
            h = ah;
            x = ax;
            continue;
        }
        let (i1, i2) = (QMatrix::identity(h[0].rows()), QMatrix::identity(ah[0].rows()));
        let t = |p: &QMatrix, q: &QMatrix| &p.kron(&i2) + &i1.kron(q);
        h = h.iter().zip(&ah).map(|(p, q)| t(p, q)).collect();
        x = x.iter().zip(&ax).map(|(p, q)| t(p, q)).collect();
    }
    let t = h[0].rows();
    let l = rs.rank();
    let es: Vec<&QMatrix> = (0..l).map(|i| &x[rs.simple_index(i)]).collect();
    let fs: Vec<&QMatrix> = (0..l).map(|i| &x[rs.negative_of(rs.simple_index(i))]).collect();
    let spaces = joint_eigenspaces(&h, t)?;
    let hws = highest_weight_vectors(&es, &spaces, t);

    let mut complement = Span::new(t);
    for (w, vecs) in &hws {
        let others: Vec<Vec<Rat>> = if w == psi { vecs[1..].to_vec() } else { vecs.clone() };
        if others.is_empty() {
            continue;
        }
        for span in lowering_closure(rs, &fs, w, &others, t).into_values() {
            for v in span.basis() {
                complement.insert(v.clone());
            }
        }
    }
    let d = t - complement.rank();
    let expected = weyl_dimension(cb, psi);
    if Rat::from_integer(d.into()) != expected {
        return Err(Error::Invalid(format!("quotient has dimension {d}, Weyl formula gives {expected}")));
    }

    let mut chosen = Vec::new();
    let mut cols = Vec::new();
    let mut probe = complement.clone();
    for j in 0..t {
        if chosen.len() == d {
            break;
        }
        let mut v = vec![Rat::zero(); t];
        v[j] = Rat::one();
        if probe.insert(v.clone()) {
            chosen.push(j);
            cols.push(v);
        }
    }
    cols.extend(complement.basis().iter().cloned());
    let m = QMatrix::from_columns(t, &cols);
    let top = m.inverse().expect("quotient basis plus complement is a basis").select_rows(&(0..d).collect::<Vec<_>>());
    let act = |a: &QMatrix| &top * &a.select_columns(&chosen);
    let h = h.iter().map(act).collect();
    let x = x.iter().map(act).collect();
    let rep = Representation::from_action(cb.clone(), h, x)?;
    if rep.highest_weights() != [(psi.clone(), 1)] {
        return Err(Error::Invalid("quotient is not irreducible".into()));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::rootdata::{Isogeny, TypeLabel};

    fn cb(t: TypeLabel, n: usize) -> Arc<ChevalleyBasis> {
        Arc::new(ChevalleyBasis::build(t, n, Isogeny::SimplyConnected).unwrap())
    }

    #[test]
    fn exterior_square_of_sl3_is_dual() {
        let c = cb(TypeLabel::A, 2);
        let h: Vec<QMatrix> = c.hs().iter().map(|m| exterior_power(m, 2)).collect();
        let x: Vec<QMatrix> = c.xs().iter().map(|m| exterior_power(m, 2)).collect();
        let rep = Representation::from_action(c, h, x).unwrap();
        assert_eq!(rep.highest_weights(), &[(Weight::new(&[0, 1]), 1)]);
    }

    #[test]
    fn sym2_action_in_monomial_basis() {
        let rep = build_irrep(&cb(TypeLabel::A, 1), &Weight::new(&[2])).unwrap();
        assert_eq!(rep.dim(), 3);
        // basis e1², e1e2, e2²
        assert_eq!(rep.e(0), &QMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 2], &[0, 0, 0]]));
        assert_eq!(rep.f(0), &QMatrix::from_i64(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0]]));
        assert_eq!(rep.h(0), &QMatrix::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]));
        let pr = rep.projector(&Weight::new(&[2]), &Weight::new(&[0]));
        assert_eq!(pr, QMatrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = cb(TypeLabel::A, 2);
        assert_eq!(weyl_dimension(&a2, &Weight::new(&[1, 1])), rat(8));
        assert_eq!(weyl_dimension(&a2, &Weight::new(&[2, 0])), rat(6));
        let c2 = cb(TypeLabel::C, 2);
        assert_eq!(weyl_dimension(&c2, &Weight::new(&[0, 1])), rat(5));
        assert_eq!(weyl_dimension(&c2, &Weight::new(&[1, 0])), rat(4));
        let b2 = cb(TypeLabel::B, 2);
        assert_eq!(weyl_dimension(&b2, &Weight::new(&[0, 1])), rat(4));
    }

    #[test]
    fn adjoint_a2_via_tensor_product() {
        let rep = build_irrep(&cb(TypeLabel::A, 2), &Weight::new(&[1, 1])).unwrap();
        assert_eq!(rep.dim(), 8);
        let zero = rep.block(&Weight::new(&[1, 1]), &Weight::new(&[0, 0])).unwrap();
        assert_eq!(zero.indices.len(), 2);
        rep.check_homomorphism().unwrap();
    }

    #[test]
    fn c2_fundamentals() {
        let c = cb(TypeLabel::C, 2);
        assert_eq!(build_irrep(&c, &Weight::new(&[1, 0])).unwrap().dim(), 4);
        assert_eq!(build_irrep(&c, &Weight::new(&[0, 1])).unwrap().dim(), 5);
    }

    #[test]
    fn errors() {
        let a1 = cb(TypeLabel::A, 1);
        assert!(matches!(build_irrep(&a1, &Weight::new(&[-1])), Err(Error::NotDominant(_))));
        let b2 = cb(TypeLabel::B, 2);
        assert!(matches!(build_irrep(&b2, &Weight::new(&[0, 1])), Err(Error::UnreachableWeight(_))));
        assert_eq!(build_irrep(&a1, &Weight::new(&[0])).unwrap().dim(), 1);
    }
}
