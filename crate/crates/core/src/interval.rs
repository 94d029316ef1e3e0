//! Certified enclosures of real numbers by rational intervals.

use crate::arith::{self, rat, rat_int, Rational};
use crate::mass::Squared;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Closed interval [lo, hi] with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_dyadic(q: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    let n = (q.numer() * &s).div_floor(q.denom());
    Rational::new(n, s)
}

fn ceil_dyadic(q: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    let n = -((-(q.numer() * &s)).div_floor(q.denom()));
    Rational::new(n, s)
}

impl Interval {
    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Outward rounding to multiples of 2^-bits.
    pub fn round(&self, bits: u32) -> Self {
        Interval { lo: floor_dyadic(&self.lo, bits), hi: ceil_dyadic(&self.hi, bits) }
    }

    pub fn add(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Interval) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul(&Interval::point(q.clone()))
    }

    pub fn recip(&self) -> Self {
        assert!(self.lo.is_positive() || self.hi.is_negative(), "interval contains zero");
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    pub fn div(&self, o: &Interval) -> Self {
        self.mul(&o.recip())
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Interval::point(Rational::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Enclosure of √x for an interval of nonnegative numbers.
    pub fn sqrt(&self, bits: u32) -> Self {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        let s2 = pow2(2 * bits);
        let lo_n = (self.lo.numer() * &s2) / self.lo.denom();
        let lo = Rational::new(isqrt_big(&lo_n), pow2(bits));
        let hi_n = (self.hi.numer() * &s2 + self.hi.denom() - 1) / self.hi.denom();
        let r = isqrt_big(&hi_n);
        let r = if &r * &r == hi_n { r } else { r + 1 };
        Interval { lo, hi: Rational::new(r, pow2(bits)) }
    }

    /// Some(true) if every point is ≤ q, Some(false) if every point is > q.
    pub fn le(&self, q: &Rational) -> Option<bool> {
        if &self.hi <= q {
            Some(true)
        } else if &self.lo > q {
            Some(false)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        arith::to_f64(&((&self.lo + &self.hi) / rat(2, 1)))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", arith::to_f64(&self.lo), arith::to_f64(&self.hi))
    }
}

fn isqrt_big(n: &BigInt) -> BigInt {
    n.sqrt()
}

/// arctan(1/k) for an integer k ≥ 2 by its alternating series.
fn arctan_inv(k: i64, bits: u32) -> Interval {
    let x = rat(1, k);
    let x2 = &x * &x;
    let eps = Rational::new(BigInt::one(), pow2(bits + 8));
    let mut sum = Rational::zero();
    let mut pw = x.clone();
    let mut j = 0i64;
    loop {
        let term = &pw / rat_int(2 * j as i128 + 1);
        if term < eps {
            // alternating with decreasing terms: the tail is bounded by this term
            return Interval::new(&sum - &term, &sum + &term).round(bits + 4);
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pw *= &x2;
        j += 1;
    }
}

pub fn pi(bits: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let v = pi_uncached(bits);
    cache.lock().unwrap().insert(bits, v.clone());
    v
}

fn pi_uncached(bits: u32) -> Interval {
    let a = arctan_inv(5, bits + 8).scale(&rat(16, 1));
    let b = arctan_inv(239, bits + 8).scale(&rat(4, 1));
    a.sub(&b).round(bits)
}

/// artanh(y) for 0 ≤ y < 1 rational.
fn artanh(y: &Rational, bits: u32) -> Interval {
    let y2 = y * y;
    let eps = Rational::new(BigInt::one(), pow2(bits + 8));
    let mut sum = Rational::zero();
    let mut pw = y.clone();
    let mut j = 0i64;
    loop {
        let term = &pw / rat_int(2 * j as i128 + 1);
        // tail ≤ term / (1 - y²)
        let tail = &term / (Rational::one() - &y2);
        if tail < eps || pw.is_zero() {
            return Interval::new(sum.clone(), &sum + &tail).round(bits + 4);
        }
        sum += term;
        pw *= &y2;
        j += 1;
    }
}

/// Natural logarithm of a positive rational.
pub fn ln(x: &Rational, bits: u32) -> Interval {
    assert!(x.is_positive());
    // x = 2^k · m with m in [1/2, 2)
    let mut k = 0i64;
    let mut m = x.clone();
    let two = rat(2, 1);
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < rat(1, 2) {
        m *= &two;
        k -= 1;
    }
    let y = (&m - Rational::one()) / (&m + Rational::one());
    let neg = y.is_negative();
    let lm = artanh(&y.abs(), bits + 8).scale(&rat(if neg { -2 } else { 2 }, 1));
    let ln2 = artanh(&rat(1, 3), bits + 8).scale(&rat(2, 1));
    lm.add(&ln2.scale(&rat(k, 1))).round(bits)
}

/// ζ(s) for an integer s ≥ 2 by Euler–Maclaurin summation.
pub fn zeta(s: u64, bits: u32) -> Interval {
    assert!(s >= 2);
    let big_n = 32 * (1 + bits as i64 / 128);
    let nn = rat(big_n, 1);
    let mut sum = Rational::zero();
    for m in 1..big_n {
        sum += arith::rational_pow(&rat(m, 1), -(s as i64));
    }
    let s_r = rat(s as i64, 1);
    sum += arith::rational_pow(&nn, 1 - s as i64) / (&s_r - Rational::one());
    sum += arith::rational_pow(&nn, -(s as i64)) / rat(2, 1);
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let mut poch = s_r.clone();
    let mut fact = Rational::from_integer(BigInt::from(2));
    let terms = 30usize;
    let mut last = Rational::zero();
    for k in 1..=terms + 1 {
        let term = arith::bernoulli(2 * k) / &fact * &poch * arith::rational_pow(&nn, -(s as i64) - 2 * k as i64 + 1);
        if k == terms + 1 {
            last = term.abs();
            break;
        }
        sum += term;
        // advance to the next k
        let a = rat(2 * k as i64 + 1, 1);
        let b = rat(2 * k as i64 + 2, 1);
        fact = fact * &a * &b;
        poch = poch * (&s_r + rat(2 * k as i64 - 1, 1)) * (&s_r + rat(2 * k as i64, 1));
    }
    let err = &last * rat(2, 1);
    Interval::new(&sum - &err, &sum + &err).round(bits)
}

/// Enclosure of rational · π^e.
pub fn with_pi(q: &Rational, e: i64, bits: u32) -> Interval {
    pi(bits + 16).powi(e).scale(q).round(bits)
}

/// Enclosure of the squared value of a [`Squared`].
pub fn squared(v: &Squared, bits: u32) -> Interval {
    with_pi(&v.rational, v.pi_exp, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let p = pi(128);
        let below = Rational::new(BigInt::from(31415926535897932384i128), BigInt::from(10i128.pow(19)));
        let above = Rational::new(BigInt::from(31415926535897932385i128), BigInt::from(10i128.pow(19)));
        assert!(below < p.lo && p.hi < above);
        assert!(p.width() < Rational::new(BigInt::one(), pow2(120)));
        let l = ln(&rat(10, 1), 100);
        assert!((l.midpoint_f64() - 10f64.ln()).abs() < 1e-14);
        let z2 = zeta(2, 128);
        let exact = with_pi(&rat(1, 6), 2, 140);
        assert!(z2.lo <= exact.hi && exact.lo <= z2.hi);
        assert!(z2.width() < Rational::new(BigInt::one(), pow2(100)));
        let z3 = zeta(3, 64);
        assert!((z3.midpoint_f64() - 1.2020569031595942).abs() < 1e-15);
        let r = Interval::point(rat(2, 1)).sqrt(60);
        assert!((r.midpoint_f64() - 2f64.sqrt()).abs() < 1e-15);
    }
}
