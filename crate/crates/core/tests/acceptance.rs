//! Acceptance suite: one PASS/FAIL line per criterion, with its time budget.
//!
//! Run with `cargo test -p latmodel-core --test acceptance -- --nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use latmodel::casestudies::{class_orbit_count, pgl2_sym2_report, QuadField, Status};
use latmodel::exact::rational::{frac, is_integral, p_power, rat};
use latmodel::exact::{for_each_between, Lattice, QMatrix, Ring};
use latmodel::latconstruct::{
    count_invariant_orbits, highest_component, is_invariant, is_split, normalize_profile, s_minus, s_plus, torus_matrix,
    EdgeData,
};
use latmodel::models::{invariants_in_basis, lie_invariants, lie_model};
use latmodel::rep::{
    build_irrep, check_transition_surjectivity, weyl_dimension, ChevalleyLatticeData, Representation, Sign, Weight,
};
use latmodel::rootdata::{ChevalleyBasis, Isogeny, TypeLabel};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn cb(t: TypeLabel, n: usize) -> Arc<ChevalleyBasis> {
    Arc::new(ChevalleyBasis::build(t, n, Isogeny::SimplyConnected).unwrap())
}

fn random_lattice(rng: &mut ChaCha8Rng, n: usize, ring: Ring) -> Lattice {
    loop {
        let b = QMatrix::from_fn(n, n, |_, _| frac(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4)));
        if !b.det().is_zero() {
            return Lattice::new(ring, &b).unwrap();
        }
    }
}

/// `n - m` from the two defining containment searches.
fn distance_oracle(a: &Lattice, b: &Lattice) -> u64 {
    let p = a.ring().prime().unwrap();
    let pw = |e: i64| p_power(&p, e);
    let n = (-60..60).find(|&n| a.scale(&pw(n)).is_sublattice_of(b)).unwrap();
    let m = (-60..60).rev().find(|&m| b.is_sublattice_of(&a.scale(&pw(m)))).unwrap();
    (n - m) as u64
}

fn metric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in 0..100 {
        let p = [2u64, 3, 5][t % 3];
        let ring = Ring::Local(p);
        let n = rng.gen_range(1..=4);
        let (a, b, c) = (random_lattice(&mut rng, n, ring), random_lattice(&mut rng, n, ring), random_lattice(&mut rng, n, ring));
        let d = |x: &Lattice, y: &Lattice| x.distance(y).unwrap();
        ensure!(d(&a, &b) == d(&b, &a), "asymmetric at triple {t}");
        ensure!(d(&a, &c) <= d(&a, &b) + d(&b, &c), "triangle inequality fails at triple {t}");
        ensure!(d(&a, &a) == 0 && d(&a, &a.scale(&rat(p as i64))) == 0, "scalar orbit not at distance 0 at {t}");
        ensure!(d(&a, &b) == distance_oracle(&a, &b), "oracle disagrees at triple {t}");
    }
    Ok("100 triples, p in {2,3,5}, rank 1..4".into())
}

fn chevalley() -> Outcome {
    let mut checked = 0;
    for (t, n) in [(TypeLabel::A, 1), (TypeLabel::A, 2), (TypeLabel::A, 3), (TypeLabel::C, 2)] {
        let c = cb(t, n);
        let rs = c.root_system();
        let roots = rs.roots();
        for a in 0..roots.len() {
            for h in c.hs() {
                let br = h.commutator(c.x(a));
                ensure!(br.is_integral(), "{t}{n}: [h, x] not integral");
            }
            for b in 0..roots.len() {
                let br = c.x(a).commutator(c.x(b));
                let sum: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&s| s == 0) {
                    ensure!(br == c.coroot_matrix(a), "{t}{n}: [x_a, x_-a] != h_a for root {:?}", roots[a]);
                } else if let Some(k) = rs.root_index(&sum) {
                    let nab = c.structure_constant(a, b);
                    let r = rs.string_down(&roots[a], &roots[b]);
                    ensure!(is_integral(&nab), "{t}{n}: N not integral");
                    ensure!(nab == rat(r + 1) || nab == rat(-(r + 1)), "{t}{n}: N = {nab}, r = {r}");
                    ensure!(br == c.x(k).scale(&nab), "{t}{n}: bracket is not N x_(a+b)");
                } else {
                    ensure!(br.is_zero(), "{t}{n}: bracket of non-summable roots is nonzero");
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} root pairs over A1, A2, A3, C2"))
}

fn sweep() -> Vec<Representation> {
    let (a1, a2, c2) = (cb(TypeLabel::A, 1), cb(TypeLabel::A, 2), cb(TypeLabel::C, 2));
    let mut ws: Vec<(Arc<ChevalleyBasis>, Vec<i64>)> = (0..=4).map(|n| (a1.clone(), vec![n])).collect();
    for w in [[1, 0], [0, 1], [1, 1], [2, 0]] {
        ws.push((a2.clone(), w.to_vec()));
    }
    for w in [[1, 0], [0, 1]] {
        ws.push((c2.clone(), w.to_vec()));
    }
    ws.into_iter().map(|(c, w)| build_irrep(&c, &Weight::new(&w)).unwrap()).collect()
}

/// `Π (ψ+ρ, β) / (ρ, β)` over positive roots `β`.
fn weyl_oracle(rep: &Representation, psi: &Weight) -> i64 {
    let rs = rep.root_system();
    let c = rs.cartan();
    let l = rs.rank();
    // (α_i, α_j) = d_i a_ij
    let mut d = vec![0i64; l];
    d[0] = 1;
    for _ in 0..l {
        for i in 0..l {
            for j in 0..l {
                if c[i][j] != 0 && d[i] != 0 && d[j] == 0 {
                    d[j] = d[i] * c[i][j] / c[j][i];
                }
            }
        }
    }
    let mut num = num_bigint::BigInt::from(1);
    let mut den = num_bigint::BigInt::from(1);
    let pair = |beta: &[i64], w: &[i64]| -> i64 { (0..l).map(|i| beta[i] * d[i] * w[i]).sum() };
    let shifted: Vec<i64> = psi.0.iter().map(|x| x + 1).collect();
    for beta in rs.positive_roots() {
        num *= pair(beta, &shifted);
        den *= pair(beta, &vec![1; l]);
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero());
    q.try_into().unwrap()
}

fn representations() -> Outcome {
    let mut pairs = 0;
    for rep in sweep() {
        let psi = rep.highest_weights()[0].0.clone();
        ensure!(rep.highest_weights().len() == 1 && rep.highest_weights()[0].1 == 1, "{psi}: not irreducible");
        ensure!(weyl_dimension(rep.chevalley(), &psi) == rat(rep.dim() as i64), "{psi}: dimension != Weyl formula");
        ensure!(weyl_oracle(&rep, &psi) == rep.dim() as i64, "{psi}: dimension != product-formula oracle");
        ensure!(rep.block(&psi, &psi).unwrap().indices.len() == 1, "{psi}: highest-weight block not 1-dimensional");
        rep.check_homomorphism().map_err(|e| format!("{psi}: {e}"))?;
        for b in rep.blocks().to_vec() {
            for sign in [Sign::Minus, Sign::Plus] {
                let cert = check_transition_surjectivity(&rep, &psi, &b.chi, sign).map_err(|e| e.to_string())?;
                ensure!(cert.surjective, "{psi} -> {} ({sign:?}) not surjective", b.chi);
                pairs += 1;
            }
        }
    }
    Ok(format!("11 irreducibles, {pairs} transition checks"))
}

const SWEEP_LIMIT: i64 = 1 << 12;

fn stable_under(lat: &Lattice, gens: &[QMatrix]) -> bool {
    lat.generators().iter().all(|v| gens.iter().all(|g| lat.contains(&g.mul_vec(v))))
}

fn sandwich() -> Outcome {
    let ring = Ring::Local(2);
    let (mut swept, mut skipped, mut windows, mut examined) = (0, Vec::new(), 0, 0u64);
    for rep in sweep() {
        let psi = rep.highest_weights()[0].0.clone();
        let edge = EdgeData::unit(&rep, ring);
        let (lo, hi) = (s_minus(&rep, &edge).map_err(|e| e.to_string())?, s_plus(&rep, &edge).map_err(|e| e.to_string())?);
        let j = edge.j_of(&psi).unwrap();
        ensure!(lo.is_sublattice_of(&hi), "{psi}: S- not inside S+");
        for l in [&lo, &hi] {
            ensure!(is_split(&rep, l).unwrap(), "{psi}: sandwich end not split");
            ensure!(&highest_component(&rep, l, &psi).unwrap() == j, "{psi}: highest component differs from J");
        }
        let rs = rep.root_system();
        let raise: Vec<QMatrix> = (0..rs.num_positive()).map(|k| rep.x(k).clone()).collect();
        let lower: Vec<QMatrix> = (0..rs.num_positive()).map(|k| rep.x(rs.negative_of(k)).clone()).collect();
        ensure!(stable_under(&lo, &lower) && stable_under(&hi, &raise), "{psi}: sandwich ends not L-stable");
        let index = lo.index_in(&hi).unwrap();
        if index > rat(SWEEP_LIMIT) {
            skipped.push(format!("{psi}"));
            continue;
        }
        swept += 1;
        let mut check = |m: Lattice| -> Result<(), String> {
            examined += 1;
            if !is_split(&rep, &m).unwrap() || &highest_component(&rep, &m, &psi).unwrap() != j {
                return Ok(());
            }
            ensure!(!stable_under(&m, &lower) || lo.is_sublattice_of(&m), "{psi}: L- stable lattice misses S-");
            ensure!(!stable_under(&m, &raise) || m.is_sublattice_of(&hi), "{psi}: L+ stable lattice escapes S+");
            Ok(())
        };
        let mut err = Ok(());
        for_each_between(&lo, &hi, |m| err = err.clone().and_then(|_| check(m))).unwrap();
        err?;
        // widened window [2 S-, S+ / 2]
        let (wlo, whi) = (lo.scale(&rat(2)), hi.scale(&frac(1, 2)));
        if wlo.index_in(&whi).unwrap() <= rat(SWEEP_LIMIT) {
            windows += 1;
            let mut err = Ok(());
            for_each_between(&wlo, &whi, |m| err = err.clone().and_then(|_| check(m))).unwrap();
            err?;
        }
    }
    Ok(format!(
        "{swept} sandwiches swept, {windows} widened windows, {examined} lattices examined; index > 2^12 skipped: {}",
        if skipped.is_empty() { "none".into() } else { skipped.join(" ") }
    ))
}

fn orbits() -> Outcome {
    let mut counts = Vec::new();
    for (n, p) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let rep = build_irrep(&cb(TypeLabel::A, 1), &Weight::new(&[n])).unwrap();
        let edge = EdgeData::unit(&rep, Ring::Local(p));
        let r = count_invariant_orbits(&rep, &edge, &ChevalleyLatticeData::unit(rep.chevalley())).map_err(|e| e.to_string())?;
        counts.push((n, p, r.orbits, r.invariant_split));
    }
    ensure!(counts == [(2, 2, 3, 4), (3, 2, 3, 3), (2, 3, 1, 1), (3, 3, 4, 4)], "orbit counts changed: {counts:?}");
    let rep = build_irrep(&cb(TypeLabel::A, 1), &Weight::new(&[2])).unwrap();
    let r2 = Ring::Local(2);
    let data = ChevalleyLatticeData::unit(rep.chevalley());
    let report = count_invariant_orbits(&rep, &EdgeData::unit(&rep, r2), &data).unwrap();
    let lam = Lattice::standard(r2, 3);
    let lam_p = Lattice::diagonal(r2, &[rat(1), rat(2), rat(1)]).unwrap();
    ensure!(is_invariant(&rep, &lam, &data) && is_invariant(&rep, &lam_p, &data), "worked-example lattices not invariant");
    let a = normalize_profile(&rep, &lam, &report.s_plus).unwrap().invariant;
    let b = normalize_profile(&rep, &lam_p, &report.s_plus).unwrap().invariant;
    ensure!(report.invariants.contains(&a) && report.invariants.contains(&b), "worked-example lattices not enumerated");
    ensure!(a != b, "worked-example lattices share a class");
    Ok(format!("(hw, p, orbits, invariant split) = {counts:?}; Lambda and Lambda' in distinct classes"))
}

fn pgl2() -> Outcome {
    let r = pgl2_sym2_report().map_err(|e| e.to_string())?;
    for a in &r.assertions {
        ensure!(a.status == Status::Pass, "{} failed: {}", a.name, a.detail);
    }
    ensure!(r.assertions[0].detail["displayed_identities_matched"] == true, "certificates differ from the displayed identities");
    ensure!(r.assertions[1].detail["index"] == "2/1", "index is not 2");
    ensure!(r.assertions[2].detail["pure_index_valuations_mod_3"] == serde_json::json!([0]), "pure valuations not 0 mod 3");
    Ok("equal orders at D = 4 with matching certificates; index 2; purity obstruction".into())
}

/// Reduced primitive forms of discriminant `d`.
fn reduced_forms(d: i64) -> usize {
    let mut count = 0;
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
                count += 1;
            }
        }
        a += 1;
    }
    count
}

fn class_groups() -> Outcome {
    let mut got = Vec::new();
    for (d, want) in [(-4, 1), (-8, 1), (-20, 2), (-23, 3)] {
        let n = class_orbit_count(&QuadField::new(d).unwrap()).map_err(|e| e.to_string())?.orbit_count;
        ensure!(n == want && n == reduced_forms(d), "disc {d}: {n} orbits, oracle {}", reduced_forms(d));
        got.push(n);
    }
    Ok(format!("orbit counts {got:?} for discs -4, -8, -20, -23"))
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let mut u = QMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let c = rat(rng.gen_range(-2i64..=2));
            let e = QMatrix::from_fn(n, n, |a, b| if a == b { rat(1) } else if (a, b) == (i, j) { c.clone() } else { rat(0) });
            u = &u * &e;
        }
    }
    if rng.gen_bool(0.5) {
        u.swap_cols(0, n - 1);
    }
    u
}

fn lie_models() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (a1, a2) = (cb(TypeLabel::A, 1), cb(TypeLabel::A, 2));
    let reps = [
        Representation::defining(a1.clone()).unwrap(),
        build_irrep(&a1, &Weight::new(&[2])).unwrap(),
        build_irrep(&a2, &Weight::new(&[1, 0])).unwrap(),
        Representation::defining(cb(TypeLabel::C, 2)).unwrap(),
    ];
    let mut rebasings = 0;
    for rep in &reps {
        for k in 0..20 {
            let ring = if k % 2 == 0 { Ring::Integers } else { Ring::Local(2) };
            let lat = random_lattice(&mut rng, rep.dim(), ring);
            let l = lie_model(rep, &lat).map_err(|e| e.to_string())?;
            ensure!(l.is_bracket_closed(), "model not bracket closed");
            let c = frac(rng.gen_range(1..6), rng.gen_range(1..6));
            ensure!(lie_model(rep, &lat.scale(&c)).unwrap() == l, "model changes under scaling");
            let rank = rep.chevalley().rank();
            let n: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
            let g = torus_matrix(rep, &frac(rng.gen_range(1..4), rng.gen_range(1..4)), &n);
            let moved = lie_model(rep, &lat.transform(&g).unwrap()).unwrap();
            ensure!(moved == l.conjugate(rep, &g).unwrap(), "model not Ad-equivariant");
            if k < 2 {
                let inv = lie_invariants(&l);
                let dim = l.lattice().ambient_dim();
                for _ in 0..50 {
                    let u = random_unimodular(&mut rng, dim);
                    ensure!(invariants_in_basis(&l, &(l.lattice().basis() * &u)) == inv, "invariants depend on the basis");
                    rebasings += 1;
                }
            }
        }
    }
    Ok(format!("4 reps x 20 lattices; {rebasings} unimodular rebasings"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("1 metric", 10, metric),
        ("2 chevalley", 5, chevalley),
        ("3 representations", 30, representations),
        ("4 sandwich", 60, sandwich),
        ("5 orbit finiteness", 60, orbits),
        ("6 pgl2 case study", 30, pgl2),
        ("7 class groups", 30, class_groups),
        ("8 lie models", 60, lie_models),
    ];
    let mut failures = Vec::new();
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match &result {
            Ok(d) if in_budget => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("{status} criterion {name}: {:.2}s / {budget}s; {detail}", elapsed.as_secs_f64());
        if status == "FAIL" {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed: {failures:?}");
}
