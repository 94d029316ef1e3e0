//! Class enumeration in a positive definite genus by Kneser neighbours,
//! closed off by the mass formula.

use crate::arith::{self, Rational};
use crate::enumeration::{aut_order, is_isometric, lll, minimum, neighbor, represents_one, theta_prefix};
use crate::error::{Error, Result};
use crate::genus::{genus_of, GenusSymbol};
use crate::lattice::{format_shorthand, parse_shorthand, IntLattice};
use crate::mass::mass;
use crate::seed::seed_lattice;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

const THETA_BOUND: i64 = 4;

#[derive(Clone, Debug)]
pub struct RepOptions {
    /// Maximum number of isometry tests.
    pub budget: u64,
    /// Stop as soon as a class without vectors of norm 1 turns up.
    pub stop_on_nonrepresenting: bool,
    pub seed: Option<IntLattice>,
    pub rng_seed: u64,
}

impl Default for RepOptions {
    fn default() -> Self {
        RepOptions { budget: 1_000_000, stop_on_nonrepresenting: false, seed: None, rng_seed: 0x5eed }
    }
}

#[derive(Clone, Debug)]
pub struct RepresentativeSet {
    pub genus: GenusSymbol,
    pub representatives: Vec<IntLattice>,
    pub aut_orders: Vec<u128>,
    pub accumulated: Rational,
    pub mass: Rational,
    pub isometry_tests: u64,
    /// First class found that does not represent 1 (only with `stop_on_nonrepresenting`).
    pub witness: Option<IntLattice>,
}

impl RepresentativeSet {
    pub fn is_closed(&self) -> bool {
        self.accumulated == self.mass
    }

    pub fn class_number(&self) -> usize {
        self.representatives.len()
    }

    fn push(&mut self, l: IntLattice) -> u128 {
        let a = aut_order(&l);
        self.accumulated += Rational::new(1.into(), a.into());
        assert!(self.accumulated <= self.mass, "accumulated mass exceeds the genus mass");
        self.representatives.push(l);
        self.aut_orders.push(a);
        a
    }

    /// Deterministic order: minimum, theta prefix, shorthand.
    fn sort(&mut self) {
        let mut items: Vec<_> = self
            .representatives
            .drain(..)
            .zip(self.aut_orders.drain(..))
            .map(|(l, a)| ((minimum(&l), theta_prefix(&l, THETA_BOUND), format_shorthand(&l)), l, a))
            .collect();
        items.sort_by(|x, y| x.0.cmp(&y.0));
        for (_, l, a) in items {
            self.representatives.push(l);
            self.aut_orders.push(a);
        }
    }
}

/// Admissible neighbour primes: the three smallest odd primes not dividing d.
fn neighbour_primes(det: i128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while out.len() < 3 {
        p = arith::next_prime(p);
        if det % p as i128 != 0 {
            out.push(p);
        }
    }
    out
}

fn random_isotropic(l: &IntLattice, p: u64, rng: &mut ChaCha8Rng) -> Option<Vec<i64>> {
    let n = l.rank();
    let p = p as i64;
    for _ in 0..(200 * p) {
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        if l.norm(&x).rem_euclid(p as i128) == 0 {
            return Some(x);
        }
    }
    None
}

/// All classes of a positive definite genus of rank 2 from reduced binary forms.
fn binary_classes(g: &GenusSymbol) -> Vec<IntLattice> {
    let d = g.det as i64;
    let mut out: Vec<IntLattice> = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= 4 * d {
        for b in 0..=a / 2 {
            if (d + b * b) % a != 0 {
                continue;
            }
            let c = (d + b * b) / a;
            if c < a {
                continue;
            }
            // (a, b, c) and (a, -b, c) differ by y -> -y
            let l = IntLattice::new(vec![vec![a, b], vec![b, c]]).expect("positive determinant");
            if genus_of(&l) == *g {
                out.push(l);
            }
        }
        a += 1;
    }
    out
}

/// Representatives of every class in a positive definite genus.
///
/// The search stops when the masses 1/|Aut| add up to the genus mass, when
/// the isometry-test budget is spent, or (optionally) at the first class not
/// representing 1. Check [`RepresentativeSet::is_closed`].
pub fn representatives(g: &GenusSymbol, opts: &RepOptions) -> Result<RepresentativeSet> {
    if !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let mut set = RepresentativeSet {
        genus: g.clone(),
        representatives: Vec::new(),
        aut_orders: Vec::new(),
        accumulated: Rational::zero(),
        mass: mass(g),
        isometry_tests: 0,
        witness: None,
    };
    let stop_at = |set: &mut RepresentativeSet, l: &IntLattice| -> bool {
        if opts.stop_on_nonrepresenting && l.rank() > 0 && !represents_one(l) {
            set.witness = Some(l.clone());
            true
        } else {
            false
        }
    };
    if g.rank() == 2 {
        for l in binary_classes(g) {
            set.push(l.clone());
            if stop_at(&mut set, &l) {
                return Ok(set);
            }
        }
        set.sort();
        return Ok(set);
    }
    let seed = match &opts.seed {
        Some(s) => {
            if genus_of(s) != *g {
                return Err(Error::InvalidArgument("seed lattice is not in the genus".into()));
            }
            s.clone()
        }
        None => seed_lattice(g).ok_or_else(|| Error::NoSeed(g.to_string()))?,
    };
    let (seed, _) = lll(&seed);
    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    buckets.entry(theta_prefix(&seed, THETA_BOUND)).or_default().push(0);
    set.push(seed.clone());
    if stop_at(&mut set, &seed) {
        return Ok(set);
    }
    let primes = neighbour_primes(g.det);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let mut step = 0usize;
    while !set.is_closed() && set.isometry_tests < opts.budget {
        let i = step % set.representatives.len();
        let p = primes[(step / set.representatives.len()) % primes.len()];
        step += 1;
        let Some(x) = random_isotropic(&set.representatives[i], p, &mut rng) else { continue };
        let Some(nb) = neighbor(&set.representatives[i], p, &x) else { continue };
        let (nb, _) = lll(&nb);
        let key = theta_prefix(&nb, THETA_BOUND);
        let mut known = false;
        for &j in buckets.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
            set.isometry_tests += 1;
            if is_isometric(&nb, &set.representatives[j]).is_some() {
                known = true;
                break;
            }
        }
        if known {
            continue;
        }
        buckets.entry(key).or_default().push(set.representatives.len());
        set.push(nb.clone());
        if stop_at(&mut set, &nb) {
            return Ok(set);
        }
    }
    set.sort();
    Ok(set)
}

// ---------------------------------------------------------------------------
// persistent cache: one line per genus, tab separated
// canonical symbol, shorthands joined by ';', aut orders joined by ';'

fn cache_key(g: &GenusSymbol) -> String {
    g.canonical().to_string()
}

/// Looks up a closed representative set; entries that fail revalidation are ignored.
pub fn load_cached(path: &Path, g: &GenusSymbol) -> Option<RepresentativeSet> {
    let text = fs::read_to_string(path).ok()?;
    let key = cache_key(g);
    let m = mass(g);
    for line in text.lines() {
        let mut parts = line.split('\t');
        if parts.next() != Some(key.as_str()) {
            continue;
        }
        let (Some(ls), Some(auts)) = (parts.next(), parts.next()) else { continue };
        let reps: Option<Vec<IntLattice>> = ls.split(';').map(|s| parse_shorthand(s).ok()).collect();
        let auts: Option<Vec<u128>> = auts.split(';').map(|s| s.parse().ok()).collect();
        let (Some(reps), Some(auts)) = (reps, auts) else { continue };
        if reps.len() != auts.len() || reps.iter().any(|l| genus_of(l) != *g) {
            continue;
        }
        let acc: Rational = auts.iter().map(|&a| Rational::new(1.into(), a.into())).sum();
        if acc != m {
            continue;
        }
        return Some(RepresentativeSet {
            genus: g.clone(),
            representatives: reps,
            aut_orders: auts,
            accumulated: acc,
            mass: m,
            isometry_tests: 0,
            witness: None,
        });
    }
    None
}

/// Appends a closed set to the cache file.
pub fn store_cached(path: &Path, set: &RepresentativeSet) -> std::io::Result<()> {
    if !set.is_closed() {
        return Ok(());
    }
    let ls: Vec<String> = set.representatives.iter().map(format_shorthand).collect();
    let auts: Vec<String> = set.aut_orders.iter().map(u128::to_string).collect();
    let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{}\t{}\t{}", cache_key(&set.genus), ls.join(";"), auts.join(";"))
}

/// Cached lookup falling back to a fresh enumeration, which is then stored.
pub fn representatives_cached(
    g: &GenusSymbol,
    opts: &RepOptions,
    cache: Option<&Path>,
) -> Result<RepresentativeSet> {
    if let Some(path) = cache {
        if let Some(s) = load_cached(path, g) {
            return Ok(s);
        }
    }
    let set = representatives(g, opts)?;
    if let Some(path) = cache {
        store_cached(path, &set)?;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::e8;

    fn reps_of(l: &IntLattice) -> RepresentativeSet {
        representatives(&genus_of(l), &RepOptions::default()).unwrap()
    }

    #[test]
    fn small_genera() {
        let s = reps_of(&IntLattice::diagonal(&[1]).unwrap());
        assert!(s.is_closed());
        assert_eq!(s.class_number(), 1);
        let s = reps_of(&e8().rescale(-1).unwrap());
        assert!(s.is_closed());
        assert_eq!(s.aut_orders, vec![696729600]);
        let s = reps_of(&IntLattice::diagonal(&[1; 9]).unwrap());
        assert!(s.is_closed());
        assert_eq!(s.class_number(), 2);
        let s = reps_of(&IntLattice::diagonal(&[1, 5]).unwrap());
        assert!(s.is_closed());
        assert_eq!(s.class_number(), 1);
        let s = reps_of(&IntLattice::diagonal(&[1, 1, 1, 1, 7]).unwrap());
        assert!(s.is_closed());
    }

    #[test]
    fn cache_roundtrip() {
        let dir = std::env::temp_dir().join(format!("reps-cache-{}", std::process::id()));
        let _ = fs::remove_file(&dir);
        let g = genus_of(&IntLattice::diagonal(&[1; 9]).unwrap());
        let a = representatives_cached(&g, &RepOptions::default(), Some(&dir)).unwrap();
        let b = load_cached(&dir, &g).unwrap();
        assert_eq!(a.aut_orders, b.aut_orders);
        let _ = fs::remove_file(&dir);
    }

    #[test]
    fn binary_sign_classes() {
        // [11,1,16] and [11,-1,16] are one class
        let s = reps_of(&IntLattice::new(vec![vec![1, 0], vec![0, 175]]).unwrap());
        assert!(s.is_closed());
        assert_eq!(s.aut_orders, vec![4, 2]);
    }
}
