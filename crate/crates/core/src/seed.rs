//! Construction of one lattice in a given genus.

use crate::arith;
use crate::genus::{enumerate_genera, genus_of, GenusKey, GenusSymbol, ParityFilter};
use crate::lattice::{e8, hyperbolic_plane, root_lattice_positive, IntLattice};
use std::collections::HashMap;

/// Some lattice in the genus, or None if the search gives up.
pub fn seed_lattice(g: &GenusSymbol) -> Option<IntLattice> {
    if !g.is_consistent() {
        return None;
    }
    let mut memo = HashMap::new();
    let l = build(g, &mut memo)?;
    assert!(genus_of(&l) == *g, "seed lattice is not in the requested genus");
    Some(l)
}

fn build(g: &GenusSymbol, memo: &mut HashMap<GenusKey, Option<IntLattice>>) -> Option<IntLattice> {
    let key = g.key();
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let r = build_uncached(g, memo);
    memo.insert(key, r.clone());
    r
}

fn build_uncached(g: &GenusSymbol, memo: &mut HashMap<GenusKey, Option<IntLattice>>) -> Option<IntLattice> {
    let n = g.rank();
    let (sp, sm) = g.signature;
    if n == 0 {
        return Some(IntLattice::empty());
    }
    if n == 1 {
        let l = IntLattice::diagonal(&[g.det as i64]).ok()?;
        return (genus_of(&l) == *g).then_some(l);
    }
    if let Some(half) = g.rescale_two(false) {
        if let Some(m) = build(&half, memo) {
            return Some(m.rescale(2).expect("nonzero"));
        }
    }
    let definite = sp == 0 || sm == 0;
    if definite && n <= 3 {
        if let Some(l) = search_definite(g) {
            return Some(l);
        }
    }
    if n == 2 && !definite {
        return search_indefinite_binary(g);
    }
    for piece in pieces(g) {
        let (pp, pm) = piece.signature();
        if pp > sp || pm > sm || piece.rank() > n {
            continue;
        }
        let pd = piece.determinant();
        if g.det % pd != 0 {
            continue;
        }
        let pg = genus_of(&piece);
        if piece.rank() == n {
            if pg == *g {
                return Some(piece);
            }
            continue;
        }
        let rest_sig = (sp - pp, sm - pm);
        for h in enumerate_genera(n - piece.rank(), g.det / pd, rest_sig, ParityFilter::Any) {
            if h.direct_sum(&pg) != *g {
                continue;
            }
            if let Some(m) = build(&h, memo) {
                return Some(piece.direct_sum(&m));
            }
        }
    }
    if definite && n == 4 {
        if let Some(l) = search_definite(g) {
            return Some(l);
        }
    }
    descend(g, memo)
}

/// A lattice in g as an index-p sublattice of a lattice of determinant d/p².
fn descend(g: &GenusSymbol, memo: &mut HashMap<GenusKey, Option<IntLattice>>) -> Option<IntLattice> {
    let n = g.rank();
    for (p, e) in arith::factor(g.det.unsigned_abs()) {
        if e < 2 || (p as f64).powi(n as i32) > 2e6 {
            continue;
        }
        let pp = (p * p) as i128;
        for h in enumerate_genera(n, g.det / pp, g.signature, ParityFilter::Any) {
            let Some(m) = build(&h, memo) else { continue };
            if let Some(l) = index_p_sublattices(&m, p).into_iter().find(|l| genus_of(l) == *g) {
                return Some(l);
            }
        }
    }
    None
}

/// All sublattices of index p, one per line in the dual space mod p.
fn index_p_sublattices(l: &IntLattice, p: u64) -> Vec<IntLattice> {
    let n = l.rank();
    let p = p as i64;
    let mut out = Vec::new();
    let total = p.pow(n as u32);
    for code in 1..total {
        let mut f = vec![0i64; n];
        let mut c = code;
        for fi in f.iter_mut() {
            *fi = c % p;
            c /= p;
        }
        let Some(j) = (0..n).rev().find(|&i| f[i] != 0) else { continue };
        if f[j] != 1 {
            continue;
        }
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0i64; n];
                if i == j {
                    r[j] = p;
                } else {
                    r[i] = 1;
                    r[j] = -f[i];
                }
                r
            })
            .collect();
        if let Ok(s) = l.transform(&rows) {
            out.push(s);
        }
    }
    out
}

/// Small summands to try splitting off, most useful first.
fn pieces(g: &GenusSymbol) -> Vec<IntLattice> {
    let (sp, sm) = g.signature;
    let n = g.rank();
    let mut out = Vec::new();
    let neg = |l: IntLattice| l.rescale(-1).expect("nonzero");
    if sp > 0 && !g.is_even() {
        out.push(IntLattice::diagonal(&[1]).unwrap());
    }
    if sm > 0 && !g.is_even() {
        out.push(IntLattice::diagonal(&[-1]).unwrap());
    }
    if sp > 0 && sm > 0 {
        out.push(hyperbolic_plane());
        out.push(hyperbolic_plane().rescale(2).unwrap());
    }
    if sp >= 8 {
        out.push(neg(e8()));
    }
    if sm >= 8 {
        out.push(e8());
    }
    let mut roots = Vec::new();
    for k in 1..n {
        roots.push(root_lattice_positive('A', k).unwrap());
        if k >= 4 {
            roots.push(root_lattice_positive('D', k).unwrap());
        }
    }
    roots.push(root_lattice_positive('E', 6).unwrap());
    roots.push(root_lattice_positive('E', 7).unwrap());
    for r in roots.into_iter().filter(|r| r.rank() < n) {
        if g.det % r.determinant() != 0 {
            continue;
        }
        if sp >= r.rank() {
            out.push(r.clone());
        }
        if sm >= r.rank() {
            out.push(neg(r));
        }
    }
    let d = g.det.unsigned_abs();
    let mut divisors: Vec<u128> = (2..=arith::isqrt(d)).filter(|a| d.is_multiple_of(*a)).flat_map(|a| [a, d / a]).collect();
    divisors.push(d);
    divisors.sort_unstable();
    divisors.dedup();
    for a in divisors.into_iter().filter(|&a| a > 1) {
        let Ok(a) = i64::try_from(a) else { continue };
        if sp > 0 {
            out.push(IntLattice::diagonal(&[a]).unwrap());
        }
        if sm > 0 {
            out.push(IntLattice::diagonal(&[-a]).unwrap());
        }
    }
    out
}

/// Minkowski-style reduced forms of rank ≤ 4.
fn search_definite(g: &GenusSymbol) -> Option<IntLattice> {
    let n = g.rank();
    let sign: i64 = if g.signature.1 == 0 { 1 } else { -1 };
    let d = g.det.unsigned_abs() as f64;
    let hermite = [1.0, 1.0, 4.0 / 3.0, 2.0, 4.0][n];
    let bound = hermite * d + 1e-9;
    let mut diag = vec![0i64; n];
    let mut budget = 5_000_000u64;
    search_diag(g, sign, bound, 0, 1.0, &mut diag, &mut budget)
}

fn search_diag(
    g: &GenusSymbol,
    sign: i64,
    bound: f64,
    i: usize,
    prod: f64,
    diag: &mut Vec<i64>,
    budget: &mut u64,
) -> Option<IntLattice> {
    let n = diag.len();
    if i == n {
        let mut gram = vec![vec![0i64; n]; n];
        for k in 0..n {
            gram[k][k] = diag[k];
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        return search_off(g, sign, &pairs, 0, &mut gram, budget);
    }
    let start = if i == 0 { 1 } else { diag[i - 1] };
    // remaining diagonal entries are at least a, so prod·a^(n-i) ≤ bound
    let mut a = start;
    while prod * (a as f64).powi((n - i) as i32) <= bound {
        diag[i] = a;
        if let Some(l) = search_diag(g, sign, bound, i + 1, prod * a as f64, diag, budget) {
            return Some(l);
        }
        if *budget == 0 {
            return None;
        }
        a += 1;
    }
    None
}

fn search_off(
    g: &GenusSymbol,
    sign: i64,
    pairs: &[(usize, usize)],
    k: usize,
    gram: &mut Vec<Vec<i64>>,
    budget: &mut u64,
) -> Option<IntLattice> {
    if *budget == 0 {
        return None;
    }
    if k == pairs.len() {
        *budget -= 1;
        let signed: Vec<Vec<i64>> = gram.iter().map(|r| r.iter().map(|x| sign * x).collect()).collect();
        if crate::lattice::determinant(&signed) != g.det {
            return None;
        }
        let l = IntLattice::new(signed).ok()?;
        if l.signature() != g.signature {
            return None;
        }
        return (genus_of(&l) == *g).then_some(l);
    }
    let (a, b) = pairs[k];
    let m = gram[a][a] / 2;
    // first off-diagonal entry of each row may be taken nonnegative
    let lo = if k == 0 { 0 } else { -m };
    for x in lo..=m {
        gram[a][b] = x;
        gram[b][a] = x;
        if let Some(l) = search_off(g, sign, pairs, k + 1, gram, budget) {
            return Some(l);
        }
    }
    None
}

fn search_indefinite_binary(g: &GenusSymbol) -> Option<IntLattice> {
    let d = g.det;
    debug_assert!(d < 0);
    let big_d = -d;
    let try_form = |a: i128, b: i128, c: i128| -> Option<IntLattice> {
        let gram = vec![vec![a as i64, b as i64], vec![b as i64, c as i64]];
        let l = IntLattice::new(gram).ok()?;
        (genus_of(&l) == *g).then_some(l)
    };
    if arith::is_square(big_d) {
        let b = arith::isqrt(big_d as u128) as i128;
        for c in 0..2 * b {
            if let Some(l) = try_form(0, b, c) {
                return Some(l);
            }
        }
    }
    let amax = arith::isqrt(big_d as u128) as i128 + 1;
    for abs_a in 1..=amax {
        for a in [abs_a, -abs_a] {
            for b in 0..abs_a {
                let num = d + b * b;
                if num % a == 0 {
                    if let Some(l) = try_form(a, b, num / a) {
                        return Some(l);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{etilde, lambda_minus};

    fn roundtrip(l: &IntLattice) {
        let g = genus_of(l);
        let s = seed_lattice(&g).unwrap_or_else(|| panic!("no seed for {g}"));
        assert!(genus_of(&s) == g);
    }

    #[test]
    fn seeds_for_known_lattices() {
        roundtrip(&IntLattice::diagonal(&[1; 9]).unwrap());
        roundtrip(&e8().rescale(-1).unwrap());
        roundtrip(&IntLattice::diagonal(&[1, 1848]).unwrap());
        roundtrip(&root_lattice_positive('D', 4).unwrap());
        roundtrip(&IntLattice::new(vec![vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]).unwrap());
        roundtrip(&lambda_minus());
        roundtrip(&etilde());
        roundtrip(&hyperbolic_plane().rescale(3).unwrap());
        roundtrip(&IntLattice::diagonal(&[1, 1, -5, 7]).unwrap());
    }
}
