//! Candidate determinants, slender genera and the classification of idoneal genera.

use crate::arith::{self, rat, rat_int, Rational};
use crate::error::Result;
use crate::genus::{enumerate_genera, genus_of, twigs, GenusKey, GenusSymbol, ParityFilter};
use crate::interval::{self, Interval};
use crate::lattice::{format_shorthand, IntLattice};
use crate::mass::{gamma_half_squared, mass, zeta_d_squared, zeta_even_squared};
use crate::representatives::{representatives_cached, RepOptions, RepresentativeSet};
use crate::seed::seed_lattice;
use num_traits::One;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    /// odd genera
    I,
    /// even genera
    II,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Initial working precision (bits) for interval comparisons.
    pub precision: u32,
    pub max_precision: u32,
    /// Isometry-test budget per genus.
    pub budget: u64,
    /// Largest determinant scanned for rank 2.
    pub bound2: u64,
    pub cache: Option<PathBuf>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { precision: 128, max_precision: 4096, budget: 1_000_000, bound2: 10_000, cache: None }
    }
}

// ---------------------------------------------------------------------------
// bound functions

fn ceil_half(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

pub fn xi(n: u32, d: u64) -> Rational {
    let mut acc = Rational::one();
    for (p, nu) in arith::factor(d as u128) {
        if p == 2 {
            continue;
        }
        let e = ceil_half(n as i64 - nu as i64).max(0);
        let t = Rational::one() + arith::rational_pow(&rat(p as i64, 1), -e);
        acc /= t;
    }
    acc
}

/// F_P(n, d)², exact.
pub fn f_squared(parity: Parity, n: u32, d: u64) -> Rational {
    let x = xi(n, d);
    let base = &x * &x * rat_int(d as i128);
    match parity {
        Parity::I => base / rat(4, 1),
        Parity::II => {
            let e = (n as i64 - arith::valuation(d as i128, 2) as i64).max(0);
            base * arith::rational_pow(&rat(4, 1), e) / rat(64, 1)
        }
    }
}

/// Enclosure of c_n² (n ≥ 3).
pub fn c_n_squared(n: u32, bits: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(n, bits)) {
        return v.clone();
    }
    let v = c_n_squared_uncached(n, bits);
    cache.lock().unwrap().insert((n, bits), v.clone());
    v
}

fn c_n_squared_uncached(n: u32, bits: u32) -> Interval {
    assert!(n >= 3, "c_n needs s > 1");
    let s = (n as u64).div_ceil(2);
    let g = gamma_half_squared(n as u64 + 1);
    let z2s = zeta_even_squared(s);
    // π^{-(n+1)} Γ² ζ(2s)² as a rational times a power of π
    let r = g.rational * z2s.rational;
    let e = g.pi_exp + z2s.pi_exp - (n as i64 + 1);
    let known = interval::with_pi(&r, e, bits + 16);
    let two_s = Rational::one() + arith::rational_pow(&rat(2, 1), -(s as i64));
    let zs2 = if s.is_multiple_of(2) {
        interval::squared(&zeta_even_squared(s / 2), bits + 16)
    } else {
        let z = interval::zeta(s, bits + 16);
        z.mul(&z)
    };
    known.scale(&(&two_s * &two_s)).div(&zs2).round(bits)
}

/// Enclosure of c_n (n ≥ 3).
pub fn c_n(n: u32, bits: u32) -> Interval {
    c_n_squared(n, bits + 8).sqrt(bits)
}

/// c₂′ = 1/(2π).
pub fn c2_prime(bits: u32) -> Interval {
    interval::pi(bits + 8).scale(&rat(2, 1)).recip().round(bits)
}

/// κ₁ log 4d + κ₂.
pub fn kappa_bound(d: u64, bits: u32) -> Interval {
    interval::ln(&rat_int(4 * d as i128), bits + 8)
        .scale(&rat(3, 2))
        .add(&Interval::point(rat(3, 1)))
        .round(bits)
}

/// Decides x ≤ 1 for a quantity known through enclosures of increasing
/// precision. Unresolved comparisons answer true (keep the candidate).
fn certified_le_one(opts: &ClassifyOptions, enclose: impl Fn(u32) -> Interval) -> bool {
    let mut bits = opts.precision.max(16);
    loop {
        match enclose(bits).le(&Rational::one()) {
            Some(v) => return v,
            None if bits >= opts.max_precision => return true,
            None => bits = (2 * bits).min(opts.max_precision),
        }
    }
}

/// Membership of d in D_n^P (n ≥ 3) or in D̃_2^P (n = 2).
pub fn in_d_set(n: u32, parity: Parity, d: u64, opts: &ClassifyOptions) -> bool {
    let f2 = f_squared(parity, n, d);
    if n >= 3 {
        certified_le_one(opts, |bits| c_n_squared(n, bits).scale(&f2))
    } else {
        // c₂′² F² / (κ₁ log 4d + κ₂)²
        certified_le_one(opts, |bits| {
            let k = kappa_bound(d, bits);
            let c = c2_prime(bits);
            c.mul(&c).scale(&f2).div(&k.mul(&k))
        })
    }
}

/// Steps d → pd along which the bound may decrease.
fn exceptional_step(n: u32, parity: Parity, d: u64, p: u64) -> bool {
    if n == 2 {
        return match parity {
            Parity::I => p == 3 && d <= 39,
            Parity::II => (p == 2 && !d.is_multiple_of(4)) || (p == 3 && d <= 39) || p == 5,
        };
    }
    f_squared(parity, n, p * d) <= f_squared(parity, n, d)
}

/// Upper bound (as f64, generous) on the primes worth trying from d.
fn prime_limit(n: u32, parity: Parity, d: u64, c_lo: f64) -> u64 {
    let f = arith::to_f64(&f_squared(parity, n, d)).sqrt();
    // F(pd) ≥ F(d) · √p / 2 for odd p
    let mut p = 11u64;
    loop {
        let grow = (p as f64).sqrt() / 2.0;
        let denom = if n == 2 { 1.5 * ((4 * d * p) as f64).ln() + 3.0 } else { 1.0 };
        if c_lo * f * grow / denom > 1.05 {
            return p;
        }
        p *= 2;
        if p > 1 << 40 {
            return p;
        }
    }
}

/// D_n^P for n ≥ 3, or D̃_2^P for n = 2, by multiplicative induction from 1.
pub fn compute_d_set(n: u32, parity: Parity, opts: &ClassifyOptions) -> BTreeSet<u64> {
    assert!(n >= 2);
    let c_lo = if n >= 3 {
        c_n(n, 64).midpoint_f64() * 0.99
    } else {
        c2_prime(64).midpoint_f64() * 0.99
    };
    let mut members = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut stack = vec![1u64];
    seen.insert(1u64);
    if in_d_set(n, parity, 1, opts) {
        members.insert(1);
    }
    while let Some(d) = stack.pop() {
        let limit = prime_limit(n, parity, d, c_lo);
        let mut p = 2u64;
        while p <= limit {
            let Some(pd) = p.checked_mul(d) else { break };
            if seen.insert(pd) {
                if in_d_set(n, parity, pd, opts) {
                    members.insert(pd);
                    stack.push(pd);
                } else if exceptional_step(n, parity, d, p) {
                    stack.push(pd);
                } else {
                    seen.remove(&pd);
                }
            }
            p = arith::next_prime(p);
        }
    }
    members
}

/// D_n = D_n^I ∪ D_n^II.
pub fn compute_d_sets(n: u32, opts: &ClassifyOptions) -> (BTreeSet<u64>, BTreeSet<u64>) {
    (compute_d_set(n, Parity::I, opts), compute_d_set(n, Parity::II, opts))
}

/// Sharper rank-2 sieve: c₂′ F_P(2, d) / ζ_D(1) ≤ 1 with D = -d.
pub fn rank2_sieve(parity: Parity, d: u64, opts: &ClassifyOptions) -> bool {
    let f2 = f_squared(parity, 2, d);
    let z = zeta_d_squared(1, -(d as i128));
    certified_le_one(opts, |bits| {
        let c = c2_prime(bits);
        c.mul(&c).scale(&f2).div(&interval::squared(&z, bits + 16)).round(bits)
    })
}

// ---------------------------------------------------------------------------
// slender genera and twig sets

/// mass(g̃) ≤ mass(g).
pub fn is_slender(g: &GenusSymbol) -> bool {
    mass(&g.add_one()) <= mass(g)
}

/// 2·mass(f) ≤ Σ mass(g) over the twigs of f.
pub fn twig_set_mass_filter(f: &GenusSymbol) -> bool {
    let total: Rational = twigs(f).iter().map(mass).sum();
    rat(2, 1) * mass(f) <= total
}

#[derive(Clone, Debug)]
pub enum IdonealVerdict {
    Idoneal(RepresentativeSet),
    /// A class of the genus without vectors of norm 1.
    NotIdoneal(IntLattice),
    BudgetExhausted(RepresentativeSet),
}

/// Decides whether every class of f represents 1.
pub fn is_idoneal(f: &GenusSymbol, opts: &ClassifyOptions) -> Result<IdonealVerdict> {
    if f.is_even() {
        // no vector of odd norm at all
        let seed = seed_lattice(f).ok_or_else(|| crate::Error::NoSeed(f.to_string()))?;
        return Ok(IdonealVerdict::NotIdoneal(seed));
    }
    let ropts = RepOptions { budget: opts.budget, stop_on_nonrepresenting: true, ..RepOptions::default() };
    let set = if opts.cache.is_some() {
        representatives_cached(f, &RepOptions { stop_on_nonrepresenting: false, ..ropts.clone() }, opts.cache.as_deref())?
    } else {
        crate::representatives::representatives(f, &ropts)?
    };
    if let Some(w) = set.witness.clone() {
        return Ok(IdonealVerdict::NotIdoneal(w));
    }
    if !set.is_closed() {
        return Ok(IdonealVerdict::BudgetExhausted(set));
    }
    if let Some(l) = set.representatives.iter().find(|l| !crate::enumeration::represents_one(l)) {
        return Ok(IdonealVerdict::NotIdoneal(l.clone()));
    }
    Ok(IdonealVerdict::Idoneal(set))
}

#[derive(Clone, Debug)]
pub struct IdonealGenus {
    pub genus: GenusSymbol,
    pub twigs: Vec<GenusSymbol>,
    /// One lattice per twig (same order).
    pub twig_representatives: Vec<IntLattice>,
    pub class_number: usize,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub rank: usize,
    pub genera: Vec<IdonealGenus>,
    /// Candidates that passed the mass filter.
    pub candidates: usize,
    /// Candidates whose representative search ran out of budget.
    pub budget_limited: Vec<GenusSymbol>,
    /// Set when completeness rests on an unproved hypothesis.
    pub conditional: Option<String>,
}

impl ClassificationReport {
    pub fn is_complete(&self) -> bool {
        self.budget_limited.is_empty()
    }

    /// One genus per line: rank, ordinal, symbol, determinant, twig representatives.
    pub fn to_ancillary(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.conditional {
            let _ = writeln!(out, "# {c}");
        }
        for g in &self.budget_limited {
            let _ = writeln!(out, "# budget exhausted: {}", g.canonical());
        }
        for (i, ig) in self.genera.iter().enumerate() {
            let reps: Vec<String> = ig.twig_representatives.iter().map(format_shorthand).collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                self.rank,
                i + 1,
                ig.genus.canonical(),
                ig.genus.det,
                reps.join(";")
            );
        }
        out
    }
}

fn describe(f: GenusSymbol, class_number: usize) -> IdonealGenus {
    let ts = twigs(&f);
    let reps = ts
        .iter()
        .map(|t| seed_lattice(t).expect("twig of a nonempty genus has a lattice"))
        .collect();
    IdonealGenus { genus: f, twigs: ts, twig_representatives: reps, class_number }
}

/// Idoneal numbers up to `bound`: d with a single class in the genus of [1] ⊕ [d].
pub fn idoneal_numbers(bound: u64) -> Vec<u64> {
    (1..=bound)
        .into_par_iter()
        .filter(|&d| {
            let g = genus_of(&IntLattice::diagonal(&[1, d as i64]).unwrap());
            let aut = if d == 1 { 8 } else { 4 };
            mass(&g) == rat(1, aut)
        })
        .collect()
}

/// Odd genera of rank r ≥ 3 passing the determinant bounds and the twig mass filter.
pub fn idoneal_candidates(r: usize, opts: &ClassifyOptions) -> Vec<GenusSymbol> {
    let n = r as u32 - 1;
    let (d1, d2) = compute_d_sets(n, opts);
    let (d1, d2): (BTreeSet<u64>, BTreeSet<u64>) = if n == 2 {
        (
            d1.into_iter().filter(|&d| rank2_sieve(Parity::I, d, opts)).collect(),
            d2.into_iter().filter(|&d| rank2_sieve(Parity::II, d, opts)).collect(),
        )
    } else {
        (d1, d2)
    };
    let dets: Vec<u64> = d1.union(&d2).copied().collect();
    // an idoneal genus is g ⊕ [1] for each of its twigs g
    let parents: HashMap<GenusKey, GenusSymbol> = dets
        .par_iter()
        .flat_map_iter(|&d| {
            enumerate_genera(r - 1, d as i128, (r - 1, 0), ParityFilter::Any)
                .into_iter()
                .filter(|g| {
                    let member = if g.is_even() { d2.contains(&d) } else { d1.contains(&d) };
                    member && is_slender(g)
                })
                .map(|g| {
                    let f = g.add_one();
                    (f.key(), f)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut out: Vec<GenusSymbol> = parents
        .into_par_iter()
        .map(|(_, f)| f)
        .filter(twig_set_mass_filter)
        .collect();
    out.sort_by_key(|g| (g.det, g.key()));
    out
}

/// All idoneal genera of rank r.
pub fn classify_idoneal(r: usize, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let mut report =
        ClassificationReport { rank: r, genera: Vec::new(), candidates: 0, budget_limited: Vec::new(), conditional: None };
    match r {
        0 => return Ok(report),
        1 => {
            let g = genus_of(&IntLattice::diagonal(&[1]).unwrap());
            report.candidates = 1;
            report.genera.push(describe(g, 1));
            return Ok(report);
        }
        2 => {
            let ds = idoneal_numbers(opts.bound2);
            report.candidates = ds.len();
            report.genera = ds
                .into_iter()
                .map(|d| describe(genus_of(&IntLattice::diagonal(&[1, d as i64]).unwrap()), 1))
                .collect();
            report.conditional = Some(format!("complete under GRH (determinants scanned up to {})", opts.bound2));
            return Ok(report);
        }
        _ => {}
    }
    let cands = idoneal_candidates(r, opts);
    report.candidates = cands.len();
    let verdicts: Vec<Result<IdonealVerdict>> = cands.par_iter().map(|f| is_idoneal(f, opts)).collect();
    for (f, v) in cands.into_iter().zip(verdicts) {
        match v? {
            IdonealVerdict::Idoneal(set) => report.genera.push(describe(f, set.class_number())),
            IdonealVerdict::NotIdoneal(_) => {}
            IdonealVerdict::BudgetExhausted(_) => report.budget_limited.push(f),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SlenderReport {
    pub n: usize,
    pub genera: Vec<GenusSymbol>,
}

impl SlenderReport {
    pub fn count(&self) -> usize {
        self.genera.len()
    }

    pub fn max_det(&self) -> Option<i128> {
        self.genera.iter().map(|g| g.det).max()
    }
}

/// All slender genera of rank n ≥ 2.
pub fn classify_slender(n: usize, opts: &ClassifyOptions) -> SlenderReport {
    let (d1, d2) = compute_d_sets(n as u32, opts);
    let dets: Vec<u64> = d1.union(&d2).copied().collect();
    let mut genera: Vec<GenusSymbol> = dets
        .par_iter()
        .flat_map_iter(|&d| {
            let parity = match (d1.contains(&d), d2.contains(&d)) {
                (true, true) => ParityFilter::Any,
                (true, false) => ParityFilter::Odd,
                _ => ParityFilter::Even,
            };
            enumerate_genera(n, d as i128, (n, 0), parity).into_iter().filter(is_slender).collect::<Vec<_>>()
        })
        .collect();
    genera.sort_by_key(|g| (g.det, g.key()));
    SlenderReport { n, genera }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_values() {
        assert_eq!(xi(5, 1), Rational::one());
        assert_eq!(xi(2, 3), rat(3, 4));
        assert_eq!(xi(4, 9), rat(3, 4));
    }

    #[test]
    fn f_at_one() {
        for n in 2..10 {
            assert_eq!(f_squared(Parity::I, n, 1), rat(1, 4));
            let v = arith::rational_pow(&rat(2, 1), n as i64 - 3);
            assert_eq!(f_squared(Parity::II, n, 1), &v * &v);
        }
    }

    #[test]
    fn c21_exceeds_eight() {
        assert_eq!(c_n(21, 128).le(&rat(8, 1)), Some(false));
    }

    #[test]
    fn nine_ones_twigs() {
        let g8 = genus_of(&IntLattice::diagonal(&[1; 8]).unwrap());
        let e8 = genus_of(&crate::lattice::e8().rescale(-1).unwrap());
        assert!(is_slender(&g8));
        assert!(!is_slender(&e8));
        assert!(is_slender(&genus_of(&IntLattice::diagonal(&[1]).unwrap())));
        let f = g8.add_one();
        assert!(twig_set_mass_filter(&f));
    }
}
