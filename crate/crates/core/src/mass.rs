//! The Smith–Minkowski–Siegel mass of a positive definite genus, computed
//! exactly with the Conway–Sloane local factors.
//!
//! Every transcendental piece (Γ at half integers, ζ at even integers, Dirichlet
//! L-values at critical points) is a rational multiple of a half-integral power
//! of π. We therefore work with squares `rational · π^e` throughout and take
//! the exact square root at the end.

use crate::arith::{self, rat, rat_int, Rational};
use crate::genus::{GenusSymbol, LocalConstituent, LocalSymbol};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Div, Mul};

/// A positive real number stored through its square: value² = rational · π^pi_exp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Squared {
    pub rational: Rational,
    pub pi_exp: i64,
}

impl Squared {
    pub fn rational(q: Rational) -> Self {
        Squared { rational: &q * &q, pi_exp: 0 }
    }

    pub fn one() -> Self {
        Squared { rational: Rational::one(), pi_exp: 0 }
    }

    /// Exact value when the π powers cancel and the square is a perfect square.
    pub fn sqrt(&self) -> Option<Rational> {
        if self.pi_exp != 0 {
            return None;
        }
        arith::rational_sqrt(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        (arith::to_f64(&self.rational) * std::f64::consts::PI.powi(self.pi_exp as i32)).sqrt()
    }
}

impl Mul for Squared {
    type Output = Squared;
    fn mul(self, o: Squared) -> Squared {
        Squared { rational: self.rational * o.rational, pi_exp: self.pi_exp + o.pi_exp }
    }
}

impl Div for Squared {
    type Output = Squared;
    fn div(self, o: Squared) -> Squared {
        Squared { rational: self.rational / o.rational, pi_exp: self.pi_exp - o.pi_exp }
    }
}

/// Γ(j/2)².
pub fn gamma_half_squared(j: u64) -> Squared {
    assert!(j >= 1);
    if j.is_multiple_of(2) {
        let f = Rational::from_integer(arith::factorial(j / 2 - 1));
        Squared { rational: &f * &f, pi_exp: 0 }
    } else {
        // Γ(m + 1/2) = (2m)! / (4^m m!) · √π
        let m = (j - 1) / 2;
        let c = Rational::new(
            arith::factorial(2 * m),
            BigInt::from(4).pow(m as u32) * arith::factorial(m),
        );
        Squared { rational: &c * &c, pi_exp: 1 }
    }
}

/// ζ(2k)² for k ≥ 1.
pub fn zeta_even_squared(k: u64) -> Squared {
    let b = arith::bernoulli(2 * k as usize).abs();
    let c = b * Rational::from_integer(BigInt::from(2).pow(2 * k as u32))
        / (rat(2, 1) * Rational::from_integer(arith::factorial(2 * k)));
    Squared { rational: &c * &c, pi_exp: 4 * k as i64 }
}

/// Generalised Bernoulli number B_{k,χ} for the Kronecker character of a fundamental discriminant.
pub fn generalized_bernoulli(k: usize, disc: i128) -> Rational {
    let f = disc.abs();
    if f == 1 {
        return arith::bernoulli(k);
    }
    // power sums S_m = Σ_{a=1}^{f} χ(a) a^m
    let mut sums = vec![BigInt::zero(); k + 1];
    for a in 1..=f {
        let chi = arith::kronecker(disc, a);
        if chi == 0 {
            continue;
        }
        let mut pw = BigInt::one();
        let ab = BigInt::from(a);
        for s in sums.iter_mut() {
            if chi > 0 {
                *s += &pw;
            } else {
                *s -= &pw;
            }
            pw *= &ab;
        }
    }
    let fr = rat_int(f);
    let mut acc = Rational::zero();
    for j in 0..=k {
        let term = Rational::from_integer(arith::binomial(k as u64, j as u64))
            * arith::bernoulli(j)
            * arith::rational_pow(&fr, j as i64 - 1)
            * Rational::from_integer(sums[k - j].clone());
        acc += term;
    }
    acc
}

/// L(k, χ_Δ)² at a critical point k ≥ 1 (χ_Δ(-1) = (-1)^k).
pub fn l_value_squared(k: u64, disc: i128) -> Squared {
    if disc == 1 {
        assert!(k.is_multiple_of(2), "ζ(k) is only computed at even k");
        return zeta_even_squared(k / 2);
    }
    let f = disc.abs();
    let b = generalized_bernoulli(k as usize, disc);
    let fact = Rational::from_integer(arith::factorial(k));
    // (2π)^{2k} f^{1-2k} B² / (4 (k!)²)
    let r = Rational::from_integer(BigInt::from(2).pow(2 * k as u32))
        * arith::rational_pow(&rat_int(f), 1 - 2 * k as i64)
        * &b
        * &b
        / (rat(4, 1) * &fact * &fact);
    Squared { rational: r, pi_exp: 2 * k as i64 }
}

/// ζ_D(s)²: the L-series over odd m of the Jacobi symbol (D/m), at s = rank/2 (rank even).
pub fn zeta_d_squared(s: u64, d_signed: i128) -> Squared {
    let disc = arith::fundamental_discriminant(d_signed);
    let mut v = l_value_squared(s, disc);
    for p in arith::prime_divisors((2 * d_signed).unsigned_abs()) {
        let chi = arith::kronecker(disc, p as i128);
        if chi != 0 {
            let e = Rational::one() - rat_int(chi as i128) * arith::rational_pow(&rat_int(p as i128), -(s as i64));
            v.rational *= &e * &e;
        }
    }
    v
}

/// Conway–Sloane diagonal factor M_p of a species.
pub fn species_factor(species: i64, p: u64) -> Rational {
    if species == 0 {
        return Rational::one();
    }
    let n = species.unsigned_abs();
    let s = n.div_ceil(2);
    let pr = rat_int(p as i128);
    let mut mp = rat(2, 1);
    for k in 1..s {
        mp *= Rational::one() - arith::rational_pow(&pr, -2 * k as i64);
    }
    if n.is_multiple_of(2) {
        mp *= Rational::one() - rat_int(species.signum() as i128) * arith::rational_pow(&pr, -(s as i64));
    }
    mp.recip()
}

/// Species of each constituent (including the padded neighbours at p = 2).
pub fn species_list(local: &LocalSymbol) -> Vec<i64> {
    let p = local.prime;
    if p != 2 {
        return local
            .constituents
            .iter()
            .map(|c| {
                let n = c.dim as i64;
                if n % 2 == 1 {
                    n
                } else {
                    let sq = arith::legendre(if (n / 2) % 2 == 0 { 1 } else { -1 }, p);
                    if c.eps == sq {
                        n
                    } else {
                        -n
                    }
                }
            })
            .collect();
    }
    let cons = &local.constituents;
    if cons.is_empty() {
        return Vec::new();
    }
    let lo = cons[0].scale as i64 - 1;
    let hi = cons.last().unwrap().scale as i64 + 1;
    let dense: Vec<LocalConstituent> = (lo..=hi)
        .map(|k| {
            cons.iter()
                .find(|c| c.scale as i64 == k)
                .cloned()
                .unwrap_or(LocalConstituent { scale: 0, dim: 0, eps: 1, odd: false, oddity: 0 })
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..dense.len() {
        let c = &dense[i];
        let left_odd = i > 0 && dense[i - 1].odd;
        let right_odd = i + 1 < dense.len() && dense[i + 1].odd;
        let free = !left_odd && !right_odd;
        let n = c.dim as i64;
        let t = if !c.odd || n % 2 == 1 { n / 2 } else { n / 2 - 1 };
        let octane = (c.oddity as i64 + if c.eps == -1 { 4 } else { 0 }) % 8;
        let sp = if free && matches!(octane, 0 | 1 | 7) {
            2 * t
        } else if free && matches!(octane, 3..=5) {
            -2 * t
        } else {
            2 * t + 1
        };
        out.push(sp);
    }
    out
}

/// The three local pieces of mass_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMass {
    pub prime: u64,
    /// Δ_p.
    pub diagonal: Rational,
    /// χ_p = p^{cross_doubled/2}.
    pub cross_doubled: u64,
    /// type₂ = 2^type_exp (0 for odd p).
    pub type_exp: i64,
}

impl PMass {
    pub fn squared(&self) -> Rational {
        let p = rat_int(self.prime as i128);
        &self.diagonal
            * &self.diagonal
            * arith::rational_pow(&p, self.cross_doubled as i64)
            * arith::rational_pow(&rat(4, 1), self.type_exp)
    }

    pub fn cross_squared(&self) -> Rational {
        arith::rational_pow(&rat_int(self.prime as i128), self.cross_doubled as i64)
    }
}

fn local_or_unimodular(g: &GenusSymbol, p: u64) -> LocalSymbol {
    g.local(p).cloned().unwrap_or_else(|| LocalSymbol {
        prime: p,
        constituents: if g.rank() == 0 {
            Vec::new()
        } else {
            vec![LocalConstituent {
                scale: 0,
                dim: g.rank(),
                eps: arith::legendre(g.det, p),
                odd: false,
                oddity: 0,
            }]
        },
    })
}

pub fn p_mass(g: &GenusSymbol, p: u64) -> PMass {
    let local = local_or_unimodular(g, p);
    let diagonal = species_list(&local)
        .into_iter()
        .map(|s| species_factor(s, p))
        .fold(Rational::one(), |a, b| a * b);
    let cs = &local.constituents;
    let mut cross = 0u64;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            cross += (cs[j].scale - cs[i].scale) as u64 * (cs[i].dim * cs[j].dim) as u64;
        }
    }
    let type_exp = if p == 2 {
        let n_ii: usize = cs.iter().filter(|c| !c.odd).map(|c| c.dim).sum();
        let n_i_i = cs
            .windows(2)
            .filter(|w| w[0].odd && w[1].odd && w[1].scale == w[0].scale + 1)
            .count();
        n_i_i as i64 - n_ii as i64
    } else {
        0
    };
    PMass { prime: p, diagonal, cross_doubled: cross, type_exp }
}

/// std_p for p | 2d (ε_p = 0) or p ∤ 2d.
pub fn std_p(g: &GenusSymbol, p: u64) -> Rational {
    let n = g.rank() as u64;
    let s = n.div_ceil(2);
    let pr = rat_int(p as i128);
    let mut den = rat(2, 1);
    for k in 1..s {
        den *= Rational::one() - arith::rational_pow(&pr, -2 * k as i64);
    }
    if n.is_multiple_of(2) && (2 * g.det) % p as i128 != 0 {
        let d = if s % 2 == 1 { -g.det } else { g.det };
        den *= Rational::one() - rat_int(arith::legendre(d, p) as i128) * arith::rational_pow(&pr, -(s as i64));
    }
    den.recip()
}

/// Squared standard mass: 2π^{-n(n+1)/4} ΠΓ(j/2) · Π_{p∤2d} 2std_p · Π_{p|2d} 2std_p.
fn standard_mass_squared(g: &GenusSymbol) -> Squared {
    let n = g.rank() as u64;
    let s = n.div_ceil(2);
    let mut v = Squared { rational: rat(4, 1), pi_exp: -((n * (n + 1) / 2) as i64) };
    for j in 1..=n {
        v = v * gamma_half_squared(j);
    }
    for k in 1..s {
        v = v * zeta_even_squared(k);
    }
    if n.is_multiple_of(2) {
        let d = if s % 2 == 1 { -g.det } else { g.det };
        v = v * zeta_d_squared(s, d);
    }
    v
}

/// mass(g)² as `rational · π^e` (e = 0 after simplification).
pub fn mass_squared(g: &GenusSymbol) -> Squared {
    let mut v = standard_mass_squared(g);
    for p in arith::prime_divisors((2 * g.det).unsigned_abs()) {
        let r = p_mass(g, p).squared() / (std_p(g, p) * std_p(g, p));
        v.rational *= r;
    }
    v
}

/// Exact mass of a positive definite genus.
pub fn mass(g: &GenusSymbol) -> Rational {
    assert!(g.is_positive_definite(), "mass needs a positive definite genus");
    match g.rank() {
        0 => Rational::one(),
        1 => rat(1, 2),
        _ => {
            let sq = mass_squared(g);
            assert_eq!(sq.pi_exp, 0, "π powers must cancel");
            arith::rational_sqrt(&sq.rational).expect("squared mass is a rational square")
        }
    }
}

/// mass(add_one(g)) / mass(g).
pub fn mass_ratio(g: &GenusSymbol) -> Rational {
    mass(&g.add_one()) / mass(g)
}

/// The factors A–E of the mass ratio, each stored squared.
#[derive(Clone, Debug)]
pub struct RatioFactors {
    pub a: Rational,
    pub b: Rational,
    pub c: Squared,
    pub d: Rational,
    pub e: Rational,
    /// π^{-(n+1)/2} Γ((n+1)/2), squared.
    pub prefactor: Squared,
}

impl RatioFactors {
    /// The product, squared; equals mass_ratio² for rank ≥ 2.
    pub fn product_squared(&self) -> Squared {
        let sq = |q: &Rational| q * q;
        self.prefactor.clone()
            * self.c.clone()
            * Squared { rational: sq(&self.a) * sq(&self.b) * &self.d * sq(&self.e), pi_exp: 0 }
    }
}

pub fn ratio_factors(g: &GenusSymbol) -> RatioFactors {
    let h = g.add_one();
    let n = g.rank() as u64;
    let primes = arith::prime_divisors((2 * g.det).unsigned_abs());
    let (pg2, ph2) = (p_mass(g, 2), p_mass(&h, 2));
    let a = &ph2.diagonal / &pg2.diagonal;
    let mut b = Rational::one();
    let mut d = Rational::one();
    for &p in &primes {
        let (pg, ph) = (p_mass(g, p), p_mass(&h, p));
        if p != 2 {
            b *= &ph.diagonal / &pg.diagonal;
        }
        d *= ph.cross_squared() / pg.cross_squared();
    }
    let e = arith::rational_pow(&rat(2, 1), ph2.type_exp - pg2.type_exp);
    // factor C: the product of std_p ratios over p ∤ 2d
    let c = if n % 2 == 1 {
        let s = n.div_ceil(2);
        let dd = if s % 2 == 1 { -g.det } else { g.det };
        zeta_d_squared(s, dd)
    } else {
        let s = n / 2;
        let dd = if s % 2 == 1 { -g.det } else { g.det };
        let mut num = zeta_even_squared(s);
        for &p in &primes {
            let f = Rational::one() - arith::rational_pow(&rat_int(p as i128), -2 * s as i64);
            num.rational *= &f * &f;
        }
        if s == 0 {
            Squared::one()
        } else {
            num / zeta_d_squared(s, dd)
        }
    };
    let prefactor = Squared { rational: Rational::one(), pi_exp: -((n + 1) as i64) } * gamma_half_squared(n + 1);
    RatioFactors { a, b, c, d, e, prefactor }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::genus_of;
    use crate::lattice::{e8, IntLattice};

    fn diag(v: &[i64]) -> GenusSymbol {
        genus_of(&IntLattice::diagonal(v).unwrap())
    }

    #[test]
    fn small_masses() {
        assert_eq!(mass(&diag(&[1])), rat(1, 2));
        assert_eq!(mass(&diag(&[1, 1])), rat(1, 8));
        assert_eq!(mass(&diag(&[1, 1, 1])), rat(1, 48));
        // [1]⊕[2] and [1]⊕[3] are alone in their genera with 4 automorphisms
        assert_eq!(mass(&diag(&[1, 2])), rat(1, 4));
        assert_eq!(mass(&diag(&[1, 3])), rat(1, 4) + rat(0, 1));
    }

    #[test]
    fn e8_and_cube() {
        let g = genus_of(&e8().rescale(-1).unwrap());
        assert_eq!(mass(&g), rat(1, 696729600));
        assert_eq!(mass(&diag(&[1; 8])), rat(1, 10321920));
    }

    #[test]
    fn nine_ones() {
        // {9[1], [1]⊕E8}: 1/(2^9 9!) + 1/(2·696729600)
        let want = rat(1, 512 * 362880) + rat(1, 2 * 696729600);
        assert_eq!(mass(&diag(&[1; 9])), want);
    }

    #[test]
    fn generalized_bernoulli_values() {
        // B_{1,χ_{-4}} = -1/2, B_{1,χ_{-3}} = -1/3
        assert_eq!(generalized_bernoulli(1, -4), rat(-1, 2));
        assert_eq!(generalized_bernoulli(1, -3), rat(-1, 3));
        // L(1, χ_{-4}) = π/4
        assert_eq!(l_value_squared(1, -4), Squared { rational: rat(1, 16), pi_exp: 2 });
    }

    #[test]
    fn factors_multiply_to_ratio() {
        for g in [diag(&[1, 1]), diag(&[1, 5]), diag(&[2, 3, 6]), diag(&[1; 8])] {
            let f = ratio_factors(&g);
            let r = mass_ratio(&g);
            assert_eq!(f.product_squared(), Squared { rational: &r * &r, pi_exp: 0 }, "{g}");
        }
    }
}
