use std::sync::Arc;

use latmodel::exact::rational::{frac, rat};
use latmodel::exact::{Module, QMatrix, Ring};
use latmodel::rep::{
    build_irrep, check_transition_surjectivity, decompose, projector_constant, weyl_dimension, ChevalleyLatticeData,
    Representation, Sign, Weight,
};
use latmodel::rootdata::{ChevalleyBasis, Isogeny, TypeLabel};

fn cb(t: TypeLabel, n: usize) -> Arc<ChevalleyBasis> {
    Arc::new(ChevalleyBasis::build(t, n, Isogeny::SimplyConnected).unwrap())
}

fn sweep() -> Vec<(Arc<ChevalleyBasis>, Weight)> {
    let a1 = cb(TypeLabel::A, 1);
    let a2 = cb(TypeLabel::A, 2);
    let c2 = cb(TypeLabel::C, 2);
    let mut out: Vec<_> = (0..=4).map(|n| (a1.clone(), Weight::new(&[n]))).collect();
    for w in [[1, 0], [0, 1], [1, 1], [2, 0]] {
        out.push((a2.clone(), Weight::new(&w)));
    }
    for w in [[1, 0], [0, 1]] {
        out.push((c2.clone(), Weight::new(&w)));
    }
    out
}

/// Every block weight is `ψ` minus a nonnegative combination of simple roots.
fn weights_below(rep: &Representation, psi: &Weight) -> bool {
    let rs = rep.root_system();
    rep.blocks().iter().all(|b| {
        rs.weight_to_root_coords(&psi.sub(&b.chi).0).is_some_and(|m| m.iter().all(|&c| c >= 0))
    })
}

#[test]
fn irreducibles_satisfy_structure_theorem() {
    for (c, psi) in sweep() {
        let rep = build_irrep(&c, &psi).unwrap();
        assert_eq!(rat(rep.dim() as i64), weyl_dimension(&c, &psi), "{psi}");
        rep.check_homomorphism().unwrap();
        assert_eq!(rep.highest_weights(), &[(psi.clone(), 1)]);
        assert_eq!(rep.block(&psi, &psi).unwrap().indices.len(), 1);
        assert!(weights_below(&rep, &psi));
        for b in rep.blocks() {
            for h in rep.hs().iter().enumerate() {
                for &j in &b.indices {
                    assert_eq!(h.1[(j, j)], rat(b.chi.0[h.0]));
                }
            }
        }
    }
}

#[test]
fn transitions_are_surjective_on_irreducibles() {
    for (c, psi) in sweep() {
        let rep = build_irrep(&c, &psi).unwrap();
        for b in rep.blocks().to_vec() {
            for sign in [Sign::Minus, Sign::Plus] {
                let cert = check_transition_surjectivity(&rep, &psi, &b.chi, sign).unwrap();
                assert!(cert.surjective, "{psi} {} {sign:?}: {cert:?}", b.chi);
            }
        }
    }
}

#[test]
fn adjoint_a2_zero_weight_has_rank_two() {
    let c = cb(TypeLabel::A, 2);
    let rep = build_irrep(&c, &Weight::new(&[1, 1])).unwrap();
    let cert = check_transition_surjectivity(&rep, &Weight::new(&[1, 1]), &Weight::new(&[0, 0]), Sign::Minus).unwrap();
    assert!(cert.surjective);
    assert_eq!((cert.rank, cert.required), (2, 2));
}

#[test]
fn decomposition_round_trips_direct_sums() {
    let c = cb(TypeLabel::A, 2);
    let parts: Vec<Representation> =
        [[1, 0], [0, 1], [1, 0], [0, 0]].iter().map(|w| build_irrep(&c, &Weight::new(w)).unwrap()).collect();
    let sum = Representation::direct_sum(&parts).unwrap();
    let d = decompose(&sum);
    let got: Vec<(Vec<i64>, usize)> = d.iter().map(|i| (i.psi.0.clone(), i.multiplicity)).collect();
    assert_eq!(got, vec![(vec![1, 0], 2), (vec![0, 1], 1), (vec![0, 0], 1)]);
    let total: usize = d.iter().flat_map(|i| &i.blocks).map(|b| b.indices.len()).sum();
    assert_eq!(total, sum.dim());
}

#[test]
fn tensor_of_a1_standard_reps() {
    let c = cb(TypeLabel::A, 1);
    let v = build_irrep(&c, &Weight::new(&[1])).unwrap();
    let t = Representation::tensor(&v, &v).unwrap();
    let got: Vec<_> = decompose(&t).into_iter().map(|i| i.psi.0[0]).collect();
    assert_eq!(got, vec![2, 0]);
}

#[test]
fn projector_constants_are_independent_of_the_chevalley_lattice() {
    for (c, psi) in sweep().into_iter().filter(|(c, _)| c.rank() == 1) {
        let rep = build_irrep(&c, &psi).unwrap();
        let unit = projector_constant(&rep, &ChevalleyLatticeData::unit(&c)).unwrap();
        let scaled = projector_constant(&rep, &ChevalleyLatticeData::torus(&c, &[frac(3, 2)]).unwrap()).unwrap();
        assert!(unit.certified);
        assert_eq!(unit.r, scaled.r, "{psi}");
    }
}

/// Degree-zero products on Sym² written out by hand: diagonals of
/// `1, h, ef, fe, e²f²` are `(1,1,1), (2,0,-2), (2,2,0), (0,2,2), (4,0,0)`.
#[test]
fn sym2_projector_constant_regression() {
    let c = cb(TypeLabel::A, 1);
    let rep = build_irrep(&c, &Weight::new(&[2])).unwrap();
    let pc = projector_constant(&rep, &ChevalleyLatticeData::unit(&c)).unwrap();
    assert_eq!(pc.r, 2);
    assert!(pc.certified);

    let (e, f, h) = (rep.e(0), rep.f(0), rep.h(0));
    let diag = |m: &QMatrix| (0..3).map(|i| m[(i, i)].clone()).collect::<Vec<_>>();
    let prods = [QMatrix::identity(3), h.clone(), e * f, f * e, &(e * e) * &(f * f)];
    let expect = [[1, 1, 1], [2, 0, -2], [2, 2, 0], [0, 2, 2], [4, 0, 0]];
    for (p, x) in prods.iter().zip(expect) {
        assert_eq!(diag(p), x.iter().map(|&v| rat(v)).collect::<Vec<_>>());
    }
    let span = Module::from_vectors(Ring::Integers, 3, &prods.iter().map(diag).collect::<Vec<_>>());
    for k in 0..3 {
        let mut pr = vec![rat(0); 3];
        pr[k] = rat(1);
        assert!(!span.contains(&pr));
        pr[k] = rat(2);
        assert!(span.contains(&pr));
    }
}
