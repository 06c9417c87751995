//! Hopf-order generators: matrix coefficients of a representation in a
//! lattice basis, and bounded-degree comparison of the algebras they generate.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::module::echelon;
use crate::exact::rational::{from_int, is_p_integral, rat, to_string};
use crate::exact::{Int, Lattice, QMatrix, Rat, Ring};
use crate::rep::Representation;
use crate::rootdata::TypeLabel;

pub const DEFAULT_DEGREE_BOUND: usize = 4;

/// Relations imposed on the coordinate symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    None,
    /// `x11 x22 - x12 x21 = 1`, used to eliminate `x11 x22`.
    Det2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfOrderGenerators {
    pub variables: Vec<String>,
    pub relation: Relation,
    pub generators: Vec<Poly>,
    pub degree_bound: usize,
}

fn sl2_variables() -> Vec<String> {
    ["x11", "x12", "x21", "x22"].iter().map(|s| s.to_string()).collect()
}

impl HopfOrderGenerators {
    /// Generators in the `SL₂` coordinates `x11, x12, x21, x22` modulo the determinant.
    pub fn sl2(generators: Vec<Poly>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != 4) {
            return Err(Error::DimensionMismatch { expected: 4, found: g.nvars() });
        }
        Ok(HopfOrderGenerators {
            variables: sl2_variables(),
            relation: Relation::Det2,
            generators,
            degree_bound: DEFAULT_DEGREE_BOUND,
        })
    }

    pub fn render(&self, g: &Poly) -> String {
        g.render(&self.variables)
    }

    pub fn reduce(&self, g: &Poly) -> Poly {
        reduce(g, self.relation)
    }
}

/// Normal form: no monomial contains both `x11` and `x22`.
pub fn reduce(g: &Poly, rel: Relation) -> Poly {
    if rel == Relation::None {
        return g.clone();
    }
    let mut out = Poly::zero(4);
    for (e, c) in g.terms() {
        let k = e[0].min(e[3]);
        if k <= 0 {
            out = out.add(&Poly::monomial(4, c.clone(), e));
            continue;
        }
        for i in 0..=k {
            let coef = c * from_int(binomial(BigInt::from(k), BigInt::from(i)));
            let m = [e[0] - k, e[1] + i, e[2] + i, e[3] - k];
            out = out.add(&Poly::monomial(4, coef, &m));
        }
    }
    out
}

/// Matrix coefficients `P⁻¹ ρ P` with `P` the lattice basis, row-major, zeros and repeats dropped.
fn coefficients(rho: &[Vec<Poly>], lat: &Lattice, nvars: usize) -> Result<Vec<Poly>> {
    let d = rho.len();
    if lat.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: lat.ambient_dim() });
    }
    let b = lat.basis();
    let bi = b.inverse().ok_or(Error::DegenerateBasis)?;
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut p = Poly::zero(nvars);
            for k in 0..d {
                if bi[(i, k)].is_zero() {
                    continue;
                }
                for l in 0..d {
                    if !b[(l, j)].is_zero() {
                        p = p.add(&rho[k][l].scale(&(&bi[(i, k)] * &b[(l, j)])));
                    }
                }
            }
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// `SL₂` acting on `Sym^n` of the standard representation, in the monomial
/// basis `e₁^{n-k} e₂^k` with `g e₁ = x11 e₁ + x21 e₂`, `g e₂ = x12 e₁ + x22 e₂`.
pub fn hopf_generators(rep: &Representation, lat: &Lattice) -> Result<HopfOrderGenerators> {
    let rs = rep.root_system();
    if rs.label() != TypeLabel::A || rs.rank() != 1 {
        return Err(Error::UnsupportedPresentation(format!("{:?}{}", rs.label(), rs.rank())));
    }
    let d = rep.dim();
    let n = d as i64 - 1;
    let mono_e = QMatrix::from_fn(d, d, |i, j| if j == i + 1 { rat(j as i64) } else { Rat::zero() });
    let mono_f = QMatrix::from_fn(d, d, |i, j| if i == j + 1 { rat(n - j as i64) } else { Rat::zero() });
    if rep.e(0) != &mono_e || rep.f(0) != &mono_f {
        return Err(Error::UnsupportedPresentation("representation is not Sym^n in the monomial basis".into()));
    }
    let v = |i| Poly::var(4, i);
    let (ge1, ge2) = ([v(0), v(2)], [v(1), v(3)]);
    // g · e₁^{n-j} e₂^j as a polynomial in (e₁, e₂), coefficients in x
    let mut rho = vec![vec![Poly::zero(4); d]; d];
    for j in 0..d {
        let mut col = vec![Poly::one(4)];
        for s in 0..n as usize {
            let lin = if s < n as usize - j { &ge1 } else { &ge2 };
            let mut next = vec![Poly::zero(4); col.len() + 1];
            for (k, c) in col.iter().enumerate() {
                next[k] = next[k].add(&c.mul(&lin[0]));
                next[k + 1] = next[k + 1].add(&c.mul(&lin[1]));
            }
            col = next;
        }
        for (i, c) in col.into_iter().enumerate() {
            rho[i][j] = c;
        }
    }
    Ok(HopfOrderGenerators {
        variables: sl2_variables(),
        relation: Relation::Det2,
        generators: coefficients(&rho, lat, 4)?,
        degree_bound: DEFAULT_DEGREE_BOUND,
    })
}

/// Split torus acting diagonally with the given characters.
pub fn hopf_generators_torus(weights: &[Vec<i64>], lat: &Lattice) -> Result<HopfOrderGenerators> {
    let r = weights.first().map_or(0, |w| w.len());
    if r == 0 || weights.iter().any(|w| w.len() != r) {
        return Err(Error::UnsupportedPresentation("torus characters of inconsistent rank".into()));
    }
    let d = weights.len();
    let mut rho = vec![vec![Poly::zero(r); d]; d];
    for (i, w) in weights.iter().enumerate() {
        let e: Vec<i32> = w.iter().map(|&x| x as i32).collect();
        rho[i][i] = Poly::monomial(r, Rat::one(), &e);
    }
    let variables = if r == 1 { vec!["t".to_string()] } else { (1..=r).map(|i| format!("t{i}")).collect() };
    Ok(HopfOrderGenerators {
        variables,
        relation: Relation::None,
        generators: coefficients(&rho, lat, r)?,
        degree_bound: DEFAULT_DEGREE_BOUND,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    NotEqual,
    Undecided,
}

/// `target = Σ c_m ∏ g_i^{m_i}` modulo the relations; `combination` is keyed
/// by exponent vectors over the generators of the containing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub target_index: usize,
    pub target: Poly,
    pub combination: Poly,
    pub degree: usize,
}

impl Certificate {
    pub fn render(&self, within: &HopfOrderGenerators) -> String {
        let names: Vec<String> = within.generators.iter().map(|g| format!("({})", within.render(g))).collect();
        format!("{} = {}", within.render(&self.target), self.combination.render(&names))
    }
}

/// Non-`p`-integral coefficient of a reduced generator while the other order is `p`-integral.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub first_in_second: bool,
    pub target_index: usize,
    pub monomial: Vec<i32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderComparison {
    pub verdict: Verdict,
    pub degree_bound: usize,
    pub prime: u64,
    pub first_in_second: Vec<Certificate>,
    pub second_in_first: Vec<Certificate>,
    pub witness: Option<Witness>,
    /// `(first_in_second, generator index)` pairs not settled at this bound.
    pub undecided: Vec<(bool, usize)>,
}

impl OrderComparison {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

fn ambient_degree(g: &Poly) -> usize {
    g.terms().keys().map(|e| e.iter().map(|x| x.unsigned_abs() as usize).sum()).max().unwrap_or(0)
}

struct Product {
    exps: Vec<i32>,
    degree: usize,
    poly: Poly,
}

/// Products of generators of total ambient degree at most `bound`, the empty product first.
fn products(g: &HopfOrderGenerators, bound: usize) -> Vec<Product> {
    let n = g.generators.len();
    let degs: Vec<usize> = g.generators.iter().map(ambient_degree).collect();
    let mut out = vec![Product { exps: vec![0; n], degree: 0, poly: Poly::one(g.variables.len()) }];
    for k in (0..n).filter(|&k| degs[k] == 0) {
        let mut exps = vec![0; n];
        exps[k] = 1;
        out.push(Product { exps, degree: 0, poly: reduce(&g.generators[k], g.relation) });
    }
    // (product index, smallest factor index still allowed)
    let mut frontier = vec![(0usize, 0usize)];
    while let Some((pi, from)) = frontier.pop() {
        for k in (from..n).filter(|&k| degs[k] > 0) {
            let degree = out[pi].degree + degs[k];
            if degree > bound {
                continue;
            }
            let mut exps = out[pi].exps.clone();
            exps[k] += 1;
            let poly = reduce(&out[pi].poly.mul(&g.generators[k]), g.relation);
            out.push(Product { exps, degree, poly });
            frontier.push((out.len() - 1, k));
        }
    }
    out.sort_by(|a, b| (a.degree, b.exps.clone()).cmp(&(b.degree, a.exps.clone())));
    out
}

fn combination(prods: &[&Product], coeffs: &[Rat], nvars: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for (pr, c) in prods.iter().zip(coeffs) {
        p = p.add(&Poly::monomial(nvars, c.clone(), &pr.exps));
    }
    p
}

fn solve_small(prods: &[&Product], target: &Poly) -> Option<Vec<Rat>> {
    let mut monos: BTreeSet<&Vec<i32>> = target.terms().keys().collect();
    for p in prods {
        monos.extend(p.poly.terms().keys());
    }
    let monos: Vec<&Vec<i32>> = monos.into_iter().collect();
    let a = QMatrix::from_fn(monos.len(), prods.len(), |i, j| prods[j].poly.coefficient(monos[i]));
    if a.rank() < prods.len() {
        return None;
    }
    let b: Vec<Rat> = monos.iter().map(|m| target.coefficient(m)).collect();
    let x = a.solve(&b)?;
    (a.mul_vec(&x) == b).then_some(x)
}

/// Membership of `target` in the `Z_(p)`-span of `prods`, preferring small
/// supports and unit coefficients.
fn certify(target: &Poly, prods: &[Product], prime: u64, nvars_gen: usize) -> Option<(Poly, usize)> {
    let p: &Int = &prime.into();
    let unit = |c: &Rat| c.is_one() || (-c).is_one();
    let integral = |xs: &[Rat]| xs.iter().all(|c| is_p_integral(c, p));
    let finish = |sel: Vec<&Product>, x: Vec<Rat>| {
        let deg = sel.iter().map(|s| s.degree).max().unwrap_or(0);
        (combination(&sel, &x, nvars_gen), deg)
    };
    if target.is_zero() {
        return Some((Poly::zero(nvars_gen), 0));
    }
    let touches: Vec<usize> = (0..prods.len())
        .filter(|&i| prods[i].poly.terms().keys().any(|m| target.terms().contains_key(m)))
        .collect();
    let mut fallback1 = None;
    for &i in &touches {
        if let Some(x) = solve_small(&[&prods[i]], target) {
            if unit(&x[0]) {
                return Some(finish(vec![&prods[i]], x));
            }
            if fallback1.is_none() && integral(&x) {
                fallback1 = Some((i, x));
            }
        }
    }
    if let Some((i, x)) = fallback1 {
        return Some(finish(vec![&prods[i]], x));
    }
    let mut fallback2 = None;
    for &i in &touches {
        for j in 0..prods.len() {
            if j == i || (touches.contains(&j) && j < i) {
                continue;
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if let Some(x) = solve_small(&[&prods[a], &prods[b]], target) {
                if x.iter().all(unit) {
                    return Some(finish(vec![&prods[a], &prods[b]], x));
                }
                if fallback2.is_none() && integral(&x) {
                    fallback2 = Some((a, b, x));
                }
            }
        }
    }
    if let Some((a, b, x)) = fallback2 {
        return Some(finish(vec![&prods[a], &prods[b]], x));
    }
    // general case: echelon over Z_(p) with a tracked transform
    let mut monos: BTreeSet<&Vec<i32>> = target.terms().keys().collect();
    for pr in prods {
        monos.extend(pr.poly.terms().keys());
    }
    let monos: Vec<&Vec<i32>> = monos.into_iter().collect();
    let gens = QMatrix::from_fn(monos.len(), prods.len(), |i, j| prods[j].poly.coefficient(monos[i]));
    let ech = echelon(&gens, Ring::Local(prime), true);
    let t: Vec<Rat> = monos.iter().map(|m| target.coefficient(m)).collect();
    let y = ech.basis.solve(&t)?;
    if ech.basis.mul_vec(&y) != t || !integral(&y) {
        return None;
    }
    let u = ech.transform?;
    let r = y.len();
    let coeffs: Vec<Rat> = (0..prods.len())
        .map(|i| (0..r).fold(Rat::zero(), |acc, k| acc + &u[(i, k)] * &y[k]))
        .collect();
    let sel: Vec<(&Product, Rat)> = prods.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
    let (ps, cs): (Vec<&Product>, Vec<Rat>) = sel.into_iter().unzip();
    Some(finish(ps, cs))
}

/// Mutual membership of the generators, each order's algebra truncated at
/// ambient degree `bound`, over `Z_(p)`.
pub fn order_equal_bounded(
    g1: &HopfOrderGenerators,
    g2: &HopfOrderGenerators,
    bound: usize,
    p: u64,
) -> Result<OrderComparison> {
    if g1.variables != g2.variables || g1.relation != g2.relation {
        return Err(Error::Invalid("orders live in different coordinate rings".into()));
    }
    if !crate::exact::module::is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let pi: Int = p.into();
    let mut out = OrderComparison {
        verdict: Verdict::Equal,
        degree_bound: bound,
        prime: p,
        first_in_second: Vec::new(),
        second_in_first: Vec::new(),
        witness: None,
        undecided: Vec::new(),
    };
    for first_in_second in [true, false] {
        let (a, b) = if first_in_second { (g1, g2) } else { (g2, g1) };
        let prods = products(b, bound);
        let b_integral = b.generators.iter().all(|g| b.reduce(g).is_p_integral(&pi));
        for (k, g) in a.generators.iter().enumerate() {
            let t = a.reduce(g);
            match certify(&t, &prods, p, b.generators.len()) {
                Some((combination, degree)) => {
                    let c = Certificate { target_index: k, target: g.clone(), combination, degree };
                    if first_in_second {
                        out.first_in_second.push(c);
                    } else {
                        out.second_in_first.push(c);
                    }
                }
                None => {
                    let bad = t.terms().iter().find(|(_, c)| !is_p_integral(c, &pi));
                    match bad {
                        Some((m, c)) if b_integral => {
                            if out.witness.is_none() {
                                out.witness = Some(Witness {
                                    first_in_second,
                                    target_index: k,
                                    monomial: m.clone(),
                                    coefficient: to_string(c),
                                });
                            }
                        }
                        _ => out.undecided.push((first_in_second, k)),
                    }
                }
            }
        }
    }
    out.verdict = if out.witness.is_some() {
        Verdict::NotEqual
    } else if out.undecided.is_empty() {
        Verdict::Equal
    } else {
        Verdict::Undecided
    };
    Ok(out)
}
