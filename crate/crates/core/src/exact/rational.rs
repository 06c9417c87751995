//! Helpers for arbitrary-precision rationals: construction, `num/den` string
//! form, and p-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: Int) -> Rat {
    BigRational::from_integer(n)
}

pub fn is_integral(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Formats as `num/den`, always with an explicit denominator.
pub fn to_string(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(from_int(s.parse().map_err(|_| bad())?)),
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &Int, p: &Int) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(q: &Rat, p: &Int) -> i64 {
    int_valuation(q.numer(), p) - int_valuation(q.denom(), p)
}

/// `p^e` as a rational, for any integer `e`.
pub fn p_power(p: &Int, e: i64) -> Rat {
    let m = num_traits::pow(p.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        from_int(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// True when the rational lies in the localization `Z_(p)`.
pub fn is_p_integral(q: &Rat, p: &Int) -> bool {
    q.is_zero() || !q.denom().is_multiple_of(p)
}

/// Removes the p-power from a nonzero rational, leaving a p-adic unit.
pub fn unit_part(q: &Rat, p: &Int) -> Rat {
    q / p_power(p, valuation(q, p))
}

/// Inverse of `a` modulo `m` (both positive, coprime).
pub fn mod_inverse(a: &Int, m: &Int) -> Int {
    let ext = a.mod_floor(m).extended_gcd(m);
    assert!(ext.gcd.is_one(), "not invertible");
    ext.x.mod_floor(m)
}

/// Canonical representative of `a` modulo `p^e Z_(p)`: the unique element of
/// `Z[1/p]` in the half-open interval `[0, p^e)` congruent to `a`.
pub fn reduce_mod_p_power(a: &Rat, p: &Int, e: i64) -> Rat {
    if a.is_zero() {
        return Rat::zero();
    }
    let k = int_valuation(a.denom(), p);
    if e + k <= 0 {
        return Rat::zero();
    }
    let pk = num_traits::pow(p.clone(), k as usize);
    let unit_den = a.denom() / &pk;
    let modulus = num_traits::pow(p.clone(), (e + k) as usize);
    let r = (a.numer() * mod_inverse(&unit_den, &modulus)).mod_floor(&modulus);
    BigRational::new(r, pk)
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> Int {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn abs(q: &Rat) -> Rat {
    q.abs()
}

/// Floor division of integers with a positive divisor.
pub fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}
