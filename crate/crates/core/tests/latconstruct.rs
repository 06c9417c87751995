use std::sync::Arc;

use latmodel::exact::rational::{frac, rat};
use latmodel::exact::{Lattice, QMatrix, Ring};
use latmodel::latconstruct::{
    chevalley_hull, count_invariant_orbits, is_invariant, is_split, normalize_profile, s_minus, s_plus,
    split_hull, split_hull_bound, torus_matrix, EdgeData,
};
use latmodel::rep::{build_irrep, projector_constant, ChevalleyLatticeData, Representation, Weight};
use latmodel::rootdata::{ChevalleyBasis, Isogeny, TypeLabel};
use proptest::prelude::*;

fn irrep(t: TypeLabel, n: usize, w: &[i64]) -> Representation {
    let cb = Arc::new(ChevalleyBasis::build(t, n, Isogeny::SimplyConnected).unwrap());
    build_irrep(&cb, &Weight::new(w)).unwrap()
}

#[test]
fn sandwich_is_equivariant_under_torus_scalings() {
    let cases = [(TypeLabel::A, 1, vec![2]), (TypeLabel::A, 1, vec![3]), (TypeLabel::A, 2, vec![1, 0]), (TypeLabel::C, 2, vec![0, 1])];
    for (t, n, w) in cases {
        let rep = irrep(t, n, &w);
        let edge = EdgeData::unit(&rep, Ring::Local(2));
        for (s, dir) in [(rat(2), vec![1; n]), (frac(1, 2), vec![0; n]), (rat(4), (0..n as i64).collect::<Vec<_>>())] {
            let moved = edge.transform_torus(&rep, &s, &dir);
            let d = torus_matrix(&rep, &s, &dir);
            assert_eq!(s_minus(&rep, &moved).unwrap(), s_minus(&rep, &edge).unwrap().transform(&d).unwrap());
            assert_eq!(s_plus(&rep, &moved).unwrap(), s_plus(&rep, &edge).unwrap().transform(&d).unwrap());
        }
    }
}

#[test]
fn sandwich_components_match_j() {
    let rep = irrep(TypeLabel::A, 1, &[3]);
    let mut edge = EdgeData::unit(&rep, Ring::Local(3));
    edge.j[0].1 = Lattice::diagonal(Ring::Local(3), &[rat(9)]).unwrap();
    let lo = s_minus(&rep, &edge).unwrap();
    let hi = s_plus(&rep, &edge).unwrap();
    assert!(lo.is_sublattice_of(&hi));
    for l in [&lo, &hi] {
        assert!(is_split(&rep, l).unwrap());
        let top = latmodel::latconstruct::highest_component(&rep, l, &Weight::new(&[3])).unwrap();
        assert_eq!(top, edge.j[0].1);
    }
}

#[test]
fn orbit_counts_regression() {
    // (highest weight, prime, orbits, invariant split lattices in the sandwich)
    for (n, p, orbits, inv) in [(2, 2, 3, 4), (3, 2, 3, 3), (2, 3, 1, 1), (3, 3, 4, 4)] {
        let rep = irrep(TypeLabel::A, 1, &[n]);
        let edge = EdgeData::unit(&rep, Ring::Local(p));
        let r = count_invariant_orbits(&rep, &edge, &ChevalleyLatticeData::unit(rep.chevalley())).unwrap();
        assert_eq!((r.orbits, r.invariant_split), (orbits, inv), "Sym^{n} p={p}");
        assert!(r.orbits_split_hull >= 1);
        assert_eq!(r.representatives.len() as u64, r.orbits);
    }
}

#[test]
fn sym2_lattices_of_the_worked_example_are_in_distinct_classes() {
    let rep = irrep(TypeLabel::A, 1, &[2]);
    let r2 = Ring::Local(2);
    let edge = EdgeData::unit(&rep, r2);
    let report = count_invariant_orbits(&rep, &edge, &ChevalleyLatticeData::unit(rep.chevalley())).unwrap();
    let lam = Lattice::standard(r2, 3);
    let lam2 = Lattice::diagonal(r2, &[rat(1), rat(2), rat(1)]).unwrap();
    let a = normalize_profile(&rep, &lam, &report.s_plus).unwrap().invariant;
    let b = normalize_profile(&rep, &lam2, &report.s_plus).unwrap().invariant;
    assert_ne!(a, b);
    assert!(report.invariants.contains(&a) && report.invariants.contains(&b));
    let data = ChevalleyLatticeData::unit(rep.chevalley());
    assert!(is_invariant(&rep, &lam, &data) && is_invariant(&rep, &lam2, &data));
}

fn sym2_lattice() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(-4i64..=4, 9).prop_filter_map("singular", |e| {
        let m = QMatrix::from_fn(3, 3, |i, j| rat(e[i * 3 + j]));
        Lattice::new(Ring::Local(2), &m).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hull_containments(lat in sym2_lattice()) {
        let rep = irrep(TypeLabel::A, 1, &[2]);
        let data = ChevalleyLatticeData::unit(rep.chevalley());
        let hull = chevalley_hull(&rep, &lat, &data).unwrap();
        prop_assert!(lat.is_sublattice_of(&hull));
        prop_assert!(is_invariant(&rep, &hull, &data));
        prop_assert_eq!(chevalley_hull(&rep, &hull, &data).unwrap(), hull.clone());
        let sh = split_hull(&rep, &hull).unwrap();
        prop_assert!(is_split(&rep, &sh).unwrap());
        let r = projector_constant(&rep, &data).unwrap().r;
        prop_assert!(hull.distance(&sh).unwrap() <= split_hull_bound(r, 2));
    }
}
