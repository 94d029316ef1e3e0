//! Small integer and rational helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn valuation_big(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

/// Prime factorisation by trial division, primes ascending.
pub fn factor(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn mod_pow(mut b: i128, mut e: u128, m: i128) -> i128 {
    let mut r = 1i128.rem_euclid(m);
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn mul_mod(a: i128, b: i128, m: i128) -> i128 {
    match a.checked_mul(b) {
        Some(x) => x.rem_euclid(m),
        None => {
            let x = BigInt::from(a) * BigInt::from(b);
            x.mod_floor(&BigInt::from(m)).to_i128().unwrap()
        }
    }
}

/// Inverse of a modulo m, for gcd(a, m) = 1.
pub fn mod_inv(a: i128, m: i128) -> i128 {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    assert_eq!(g, 1, "{a} not invertible mod {m}");
    x.rem_euclid(m)
}

pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.abs().gcd(&b.abs())
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i128, n: i128) -> i32 {
    assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/n).
pub fn kronecker(a: i128, n: i128) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut res = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            res = -res;
        }
    }
    let v = n.trailing_zeros();
    n >>= v;
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if (r == 3 || r == 5) && v % 2 == 1 {
            res = -res;
        }
    }
    res * jacobi(a, n)
}

/// Legendre symbol for an odd prime p.
pub fn legendre(a: i128, p: u64) -> i32 {
    jacobi(a, p as i128)
}

/// Square class of a 2-adic unit modulo 8 mapped to the Kronecker sign (+1 for ±1, -1 for ±3).
pub fn two_adic_sign(u: i128) -> i32 {
    match u.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => panic!("{u} is not a 2-adic unit"),
    }
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn bernoulli_table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_1 = -1/2 convention.
        let n = 64;
        let mut b: Vec<Rational> = vec![Rational::one()];
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 0..m {
                s += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * &b[k];
            }
            b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Bernoulli number B_k with B_1 = -1/2.
pub fn bernoulli(k: usize) -> Rational {
    bernoulli_table()[k].clone()
}

/// Bernoulli polynomial coefficients: B_k(x) = sum_j binom(k, j) B_j x^{k-j}.
pub fn bernoulli_poly(k: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut pow = Rational::one();
    // Horner-free direct sum, k is small.
    let mut terms = Vec::with_capacity(k + 1);
    for _ in 0..=k {
        terms.push(pow.clone());
        pow *= x;
    }
    for j in 0..=k {
        acc += Rational::from_integer(binomial(k as u64, j as u64)) * bernoulli(j) * &terms[k - j];
    }
    acc
}

pub fn rational_pow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Squarefree part (sign kept) and the square factor: n = core * f^2.
pub fn squarefree_decomposition(n: i128) -> (i128, i128) {
    let sign = if n < 0 { -1 } else { 1 };
    let mut core = sign;
    let mut f = 1;
    for (p, e) in factor(n.unsigned_abs()) {
        let p = p as i128;
        if e % 2 == 1 {
            core *= p;
        }
        f *= p.pow(e / 2);
    }
    (core, f)
}

/// Fundamental discriminant of Q(sqrt(n)) for n not a square; 1 for squares.
pub fn fundamental_discriminant(n: i128) -> i128 {
    let (core, _) = squarefree_decomposition(n);
    if core == 1 {
        1
    } else if core.rem_euclid(4) == 1 {
        core
    } else {
        4 * core
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-1, 2), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(jacobi(2, 15), 1);
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli_poly(2, &rat(1, 2)), rat(-1, 12));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(1848), vec![(2, 3), (3, 1), (7, 1), (11, 1)]);
        assert_eq!(valuation(1848, 2), 3);
        assert_eq!(fundamental_discriminant(-1), -4);
        assert_eq!(fundamental_discriminant(-3), -3);
        assert_eq!(fundamental_discriminant(-8), -8);
        assert_eq!(fundamental_discriminant(9), 1);
    }
}
