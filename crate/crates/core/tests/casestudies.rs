use latmodel::casestudies::{class_orbit_count, is_order, multiplier_ring, pgl2_sym2_report, FractionalIdeal, QuadField, Status};
use latmodel::exact::rational::{frac, rat};
use latmodel::exact::{Lattice, QMatrix, Ring};
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

/// Primitive reduced forms `(a, b, c)`: `b² - 4ac = D`, `|b| ≤ a ≤ c`, `b ≥ 0` when `|b| = a` or `a = c`.
fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || ((b.abs() == a || a == c) && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out
}

#[test]
fn oracle_sanity() {
    assert_eq!(reduced_forms(-4), vec![(1, 0, 1)]);
    assert_eq!(reduced_forms(-20), vec![(1, 0, 5), (2, 2, 3)]);
    assert_eq!(reduced_forms(-23), vec![(1, 1, 6), (2, -1, 3), (2, 1, 3)]);
}

#[test]
fn class_counts_match_reduced_forms() {
    for d in [-3, -4, -7, -8, -15, -20, -23, -24, -47, -56, -71, -84, -163] {
        let f = QuadField::new(d).unwrap();
        let r = class_orbit_count(&f).unwrap();
        assert_eq!(r.orbit_count, reduced_forms(d).len(), "disc {d}");
        for rep in &r.representatives {
            let ideal = FractionalIdeal::new(rep.clone()).unwrap();
            assert_eq!(multiplier_ring(&f, &ideal).unwrap(), f.ring_of_integers());
        }
    }
}

#[test]
fn frozen_class_counts() {
    let got: Vec<usize> =
        [-4, -8, -20, -23, -47].iter().map(|&d| class_orbit_count(&QuadField::new(d).unwrap()).unwrap().orbit_count).collect();
    assert_eq!(got, [1, 1, 2, 3, 5]);
}

#[test]
fn pgl2_report_passes_every_assertion() {
    let r = pgl2_sym2_report().unwrap();
    assert_eq!(r.assertions.len(), 4);
    assert!(r.assertions.iter().all(|a| a.status == Status::Pass));
    assert_eq!(r.assertions[2].detail["primed_index_valuation"], 1);
    assert_eq!(r.assertions[2].detail["pure_index_valuations_mod_3"], serde_json::json!([0]));
    let certs = r.assertions[0].detail["certificates"].as_array().unwrap();
    assert_eq!(certs[1], "x12*x22 = (x11*x12)*(x22^2) - (x12^2)*(x21*x22)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplier_rings_are_orders(
        d in prop::sample::select(vec![-3i64, -4, -7, -8, -15, -20, -23]),
        e in prop::collection::vec(-6i64..=6, 4),
        num in 1i64..5,
        den in 1i64..5,
    ) {
        let m = QMatrix::from_rows(vec![vec![rat(e[0]), rat(e[1])], vec![rat(e[2]), rat(e[3])]]);
        prop_assume!(!m.det().is_zero());
        let f = QuadField::new(d).unwrap();
        let lam = FractionalIdeal::new(Lattice::new(Ring::Integers, &m).unwrap()).unwrap();
        let r = multiplier_ring(&f, &lam).unwrap();
        prop_assert!(is_order(&f, &r));
        prop_assert!(r.is_sublattice_of(&f.ring_of_integers()));
        let scaled = FractionalIdeal::new(lam.lattice.scale(&frac(num, den))).unwrap();
        prop_assert_eq!(multiplier_ring(&f, &scaled).unwrap(), r.clone());
        let x = vec![rat(e[0]), rat(e[1])];
        if !f.norm(&x).is_zero() {
            prop_assert_eq!(multiplier_ring(&f, &lam.scale(&f, &x).unwrap()).unwrap(), r);
        }
    }
}
