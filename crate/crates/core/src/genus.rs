//! Genus symbols in the style of Conway and Sloane.
//!
//! Local data is stored raw (each constituent realisable on its own) and only
//! canonicalised when symbols are compared, so a stored symbol can always be
//! turned back into lattices block by block.

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice::{jordan_decomposition, IntLattice};
use crate::torsion::{Block, TorsionForm};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalConstituent {
    pub scale: u32,
    pub dim: usize,
    /// ±1: Legendre class of the unit determinant (p odd) or its Kronecker sign (p = 2).
    pub eps: i32,
    /// p = 2 only: type I.
    pub odd: bool,
    /// p = 2 only.
    pub oddity: u8,
}

impl LocalConstituent {
    pub fn even(scale: u32, dim: usize, eps: i32) -> Self {
        LocalConstituent { scale, dim, eps, odd: false, oddity: 0 }
    }

    /// Local realisability of a 2-adic constituent.
    pub fn is_valid(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        if !self.odd {
            return self.dim.is_multiple_of(2) && self.oddity == 0;
        }
        let o = self.oddity;
        if (o as usize) % 2 != self.dim % 2 {
            return false;
        }
        match self.dim {
            1 => (self.eps == 1) == (o == 1 || o == 7),
            2 => {
                if self.eps == 1 {
                    matches!(o, 0 | 2 | 6)
                } else {
                    matches!(o, 2 | 4 | 6)
                }
            }
            _ => true,
        }
    }
}

fn compartments(c: &[LocalConstituent]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < c.len() {
        if c[i].odd {
            let mut v = c[i].scale;
            let mut comp = Vec::new();
            while i < c.len() && c[i].odd && c[i].scale == v {
                comp.push(i);
                i += 1;
                v += 1;
            }
            out.push(comp);
        } else {
            i += 1;
        }
    }
    out
}

fn trains(c: &[LocalConstituent]) -> Vec<Vec<usize>> {
    if c.is_empty() {
        return Vec::new();
    }
    let mut sym: Vec<(u32, bool)> = c.iter().map(|x| (x.scale, x.odd)).collect();
    sym.push((c.last().unwrap().scale + 1, false));
    let mut out = Vec::new();
    let mut cur = vec![0];
    for i in 1..sym.len() - 1 {
        let (ps, po) = sym[i - 1];
        let (cs, co) = sym[i];
        let gap = cs - ps;
        let breaks = gap > 2 || (gap == 2 && !(po && co)) || (!po && !co);
        if breaks {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(i);
    }
    out.push(cur);
    out
}

/// Canonical 2-adic symbol (oddity fusion and sign walking); input ascending, positive dims.
pub fn canonical_two_adic(c: &[LocalConstituent]) -> Vec<LocalConstituent> {
    let mut s = c.to_vec();
    let comps = compartments(&s);
    for comp in &comps {
        let o: u32 = comp.iter().map(|&i| s[i].oddity as u32).sum();
        for &i in comp {
            s[i].oddity = 0;
        }
        s[comp[0]].oddity = (o % 8) as u8;
    }
    for train in trains(&s) {
        let t = train.len();
        for i in 0..t.saturating_sub(1) {
            let t1 = train[t - i - 1];
            if s[t1].eps == -1 {
                s[t1].eps = 1;
                s[t1 - 1].eps *= -1;
                for comp in &comps {
                    if comp.contains(&(t1 - 1)) || comp.contains(&t1) {
                        let h = comp[0];
                        s[h].oddity = (s[h].oddity + 4) % 8;
                    }
                }
            }
        }
    }
    s
}

#[derive(Clone, Debug)]
pub struct LocalSymbol {
    pub prime: u64,
    /// Positive-dimensional constituents, ascending scale.
    pub constituents: Vec<LocalConstituent>,
}

impl LocalSymbol {
    pub fn canonical(&self) -> Vec<LocalConstituent> {
        if self.prime == 2 {
            canonical_two_adic(&self.constituents)
        } else {
            self.constituents.clone()
        }
    }

    pub fn dim_at(&self, scale: u32) -> usize {
        self.constituents
            .iter()
            .find(|c| c.scale == scale)
            .map_or(0, |c| c.dim)
    }

    pub fn get(&self, scale: u32) -> Option<&LocalConstituent> {
        self.constituents.iter().find(|c| c.scale == scale)
    }

    fn valuation(&self) -> u32 {
        self.constituents.iter().map(|c| c.scale * c.dim as u32).sum()
    }

    /// p-excess (p odd) or oddity (p = 2), mod 8.
    pub fn excess(&self) -> i64 {
        let p = self.prime as i64;
        let mut s = 0i64;
        for c in &self.constituents {
            let odd_scale_neg = c.scale % 2 == 1 && c.eps == -1;
            if p == 2 {
                s += c.oddity as i64 + if odd_scale_neg { 4 } else { 0 };
            } else {
                let q = p.pow(c.scale) % 8;
                s += c.dim as i64 * (q - 1) + if odd_scale_neg { 4 } else { 0 };
            }
        }
        s.rem_euclid(8)
    }

    fn unit_class(&self) -> i32 {
        self.constituents.iter().map(|c| c.eps).product()
    }
}

/// A genus of nondegenerate integral lattices.
#[derive(Clone, Debug)]
pub struct GenusSymbol {
    pub signature: (usize, usize),
    pub det: i128,
    /// One entry per prime dividing 2·det, ascending; the prime 2 is always present.
    pub locals: Vec<LocalSymbol>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenusKey {
    rank: usize,
    det_abs: u128,
    signature: (usize, usize),
    locals: Vec<(u64, Vec<LocalConstituent>)>,
}

impl GenusSymbol {
    pub fn rank(&self) -> usize {
        self.signature.0 + self.signature.1
    }

    pub fn key(&self) -> GenusKey {
        GenusKey {
            rank: self.rank(),
            det_abs: self.det.unsigned_abs(),
            signature: self.signature,
            locals: self.locals.iter().map(|l| (l.prime, l.canonical())).collect(),
        }
    }

    pub fn local(&self, p: u64) -> Option<&LocalSymbol> {
        self.locals.iter().find(|l| l.prime == p)
    }

    pub fn two_adic(&self) -> &LocalSymbol {
        self.local(2).expect("2-adic symbol always present")
    }

    pub fn is_even(&self) -> bool {
        self.two_adic().get(0).is_none_or(|c| !c.odd)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    /// The genus of a lattice.
    pub fn of(l: &IntLattice) -> GenusSymbol {
        let det = l.determinant();
        let mut primes = arith::prime_divisors((2 * det).unsigned_abs());
        primes.sort_unstable();
        let locals = primes
            .into_iter()
            .map(|p| {
                let jd = jordan_decomposition(l, p);
                assert_eq!(
                    jd.weighted_scale_sum(),
                    arith::valuation(det, p),
                    "Jordan decomposition lost precision"
                );
                LocalSymbol {
                    prime: p,
                    constituents: jd
                        .constituents
                        .iter()
                        .map(|c| LocalConstituent {
                            scale: c.scale,
                            dim: c.dim,
                            eps: c.det_class,
                            odd: p == 2 && c.odd,
                            oddity: if p == 2 { c.oddity } else { 0 },
                        })
                        .collect(),
                }
            })
            .collect();
        GenusSymbol { signature: l.signature(), det, locals }
    }

    /// Rank zero genus.
    pub fn empty() -> GenusSymbol {
        GenusSymbol {
            signature: (0, 0),
            det: 1,
            locals: vec![LocalSymbol { prime: 2, constituents: Vec::new() }],
        }
    }

    /// Local validity plus the global oddity and determinant conditions.
    pub fn is_consistent(&self) -> bool {
        let r = self.rank();
        let (sp, sm) = self.signature;
        if self.det == 0 || (self.det < 0) != (sm % 2 == 1) {
            return false;
        }
        let mut expected = arith::prime_divisors((2 * self.det).unsigned_abs());
        expected.sort_unstable();
        if self.locals.iter().map(|l| l.prime).collect::<Vec<_>>() != expected {
            return false;
        }
        let mut excess_sum = 0i64;
        for l in &self.locals {
            let dims: usize = l.constituents.iter().map(|c| c.dim).sum();
            if dims != r || l.valuation() != arith::valuation(self.det, l.prime) {
                return false;
            }
            if l.constituents.windows(2).any(|w| w[0].scale >= w[1].scale) {
                return false;
            }
            let unit = self.det / (l.prime as i128).pow(l.valuation());
            if l.prime == 2 {
                if !l.constituents.iter().all(LocalConstituent::is_valid) {
                    return false;
                }
                if l.unit_class() != arith::two_adic_sign(unit) {
                    return false;
                }
            } else {
                if l.constituents.iter().any(|c| c.dim == 0 || c.eps.abs() != 1) {
                    return false;
                }
                if l.unit_class() != arith::legendre(unit, l.prime) {
                    return false;
                }
                excess_sum += l.excess();
            }
        }
        (sp as i64 - sm as i64 + excess_sum - self.two_adic().excess()).rem_euclid(8) == 0
    }

    /// The genus of `[1] ⊕ L` for L in this genus.
    pub fn add_one(&self) -> GenusSymbol {
        let mut g = self.clone();
        g.signature.0 += 1;
        for l in &mut g.locals {
            let two = l.prime == 2;
            match l.constituents.iter_mut().find(|c| c.scale == 0) {
                Some(c) => {
                    c.dim += 1;
                    if two {
                        c.odd = true;
                        c.oddity = (c.oddity + 1) % 8;
                    }
                }
                None => l.constituents.insert(
                    0,
                    LocalConstituent { scale: 0, dim: 1, eps: 1, odd: two, oddity: two as u8 },
                ),
            }
        }
        g
    }

    /// Genus of L(2) (`up`) or of L with L(2) in this genus (`!up`; needs 2-adic scale ≥ 1 throughout).
    pub fn rescale_two(&self, up: bool) -> Option<GenusSymbol> {
        let r = self.rank() as u32;
        let mut g = self.clone();
        if up {
            g.det *= 1 << r;
        } else {
            if self.two_adic().get(0).is_some() {
                return None;
            }
            g.det /= 1 << r;
        }
        for l in &mut g.locals {
            for c in &mut l.constituents {
                if l.prime == 2 {
                    c.scale = if up { c.scale + 1 } else { c.scale - 1 };
                } else if c.dim % 2 == 1 {
                    c.eps *= arith::legendre(2, l.prime);
                }
            }
        }
        Some(g)
    }

    /// Discriminant form of an even genus.
    pub fn discriminant_form(&self) -> Option<TorsionForm> {
        if !self.is_even() {
            return None;
        }
        let mut blocks = Vec::new();
        for l in &self.locals {
            for c in l.constituents.iter().filter(|c| c.scale > 0) {
                if l.prime == 2 {
                    blocks.extend(crate::torsion::realize_constituent(c)?);
                } else {
                    for _ in 1..c.dim {
                        blocks.push(Block::W(l.prime, c.scale, 1));
                    }
                    blocks.push(Block::W(l.prime, c.scale, c.eps));
                }
            }
        }
        TorsionForm::from_blocks(blocks).ok()
    }

    /// The even genus of signature (s₊, s₋) with discriminant form q, if it exists.
    pub fn from_discriminant_form(q: &TorsionForm, s_plus: usize, s_minus: usize) -> Option<GenusSymbol> {
        if let Some(g) = Self::from_blocks_exact(q, s_plus, s_minus) {
            return Some(g);
        }
        // on ℤ/2 the unit e of w is only defined mod 4
        let mut blocks = q.blocks().to_vec();
        let i = blocks.iter().position(|b| matches!(b, Block::W(2, 1, _)))?;
        if let Block::W(2, 1, e) = blocks[i] {
            blocks[i] = Block::W(2, 1, (e + 4) % 8);
        }
        Self::from_blocks_exact(&TorsionForm::from_blocks(blocks).ok()?, s_plus, s_minus)
    }

    fn from_blocks_exact(q: &TorsionForm, s_plus: usize, s_minus: usize) -> Option<GenusSymbol> {
        let r = s_plus + s_minus;
        let order = q.order() as i128;
        let det = if s_minus % 2 == 1 { -order } else { order };
        let mut primes = arith::prime_divisors((2 * order) as u128);
        primes.sort_unstable();
        let mut locals = Vec::new();
        for p in primes {
            let part = q.p_part(p);
            let mut levels: BTreeMap<u32, Vec<Block>> = BTreeMap::new();
            for b in part.blocks() {
                levels.entry(b.level()).or_default().push(*b);
            }
            let mut cons = Vec::new();
            for (k, bs) in levels {
                let mut c = LocalConstituent::even(k, 0, 1);
                for b in bs {
                    match b {
                        Block::U(_) => c.dim += 2,
                        Block::V(_) => {
                            c.dim += 2;
                            c.eps = -c.eps;
                        }
                        Block::W(_, _, e) => {
                            c.dim += 1;
                            if p == 2 {
                                c.odd = true;
                                c.oddity = ((c.oddity as i32 + e) % 8) as u8;
                                c.eps *= arith::two_adic_sign(e as i128);
                            } else {
                                c.eps *= e;
                            }
                        }
                    }
                }
                cons.push(c);
            }
            let ell = q.ell_p(p);
            if ell > r {
                return None;
            }
            let nu = arith::valuation(order, p);
            let unit = det / (p as i128).pow(nu);
            let want = if p == 2 {
                arith::two_adic_sign(unit)
            } else {
                arith::legendre(unit, p)
            };
            let have: i32 = cons.iter().map(|c| c.eps).product();
            let d0 = r - ell;
            if d0 > 0 {
                if p == 2 && d0 % 2 == 1 {
                    return None;
                }
                cons.insert(0, LocalConstituent::even(0, d0, want * have));
            } else if want != have {
                return None;
            }
            locals.push(LocalSymbol { prime: p, constituents: cons });
        }
        let g = GenusSymbol { signature: (s_plus, s_minus), det, locals };
        g.is_consistent().then_some(g)
    }

    /// Symbol-level orthogonal sum: constituents of equal scale are merged.
    pub fn direct_sum(&self, other: &GenusSymbol) -> GenusSymbol {
        let signature = (self.signature.0 + other.signature.0, self.signature.1 + other.signature.1);
        let det = self.det * other.det;
        let mut primes = arith::prime_divisors((2 * det).unsigned_abs());
        primes.sort_unstable();
        let locals = primes
            .into_iter()
            .map(|p| {
                let mut merged: BTreeMap<u32, LocalConstituent> = BTreeMap::new();
                for g in [self, other] {
                    for c in g.local_or_unimodular(p).constituents {
                        merged
                            .entry(c.scale)
                            .and_modify(|m| {
                                m.dim += c.dim;
                                m.eps *= c.eps;
                                m.odd |= c.odd;
                                m.oddity = (m.oddity + c.oddity) % 8;
                            })
                            .or_insert(c);
                    }
                }
                LocalSymbol { prime: p, constituents: merged.into_values().collect() }
            })
            .collect();
        GenusSymbol { signature, det, locals }
    }

    /// The local symbol at p, also for primes not dividing 2·det.
    fn local_or_unimodular(&self, p: u64) -> LocalSymbol {
        if let Some(l) = self.local(p) {
            return l.clone();
        }
        let r = self.rank();
        let constituents = if r == 0 {
            Vec::new()
        } else {
            vec![LocalConstituent::even(0, r, arith::legendre(self.det, p))]
        };
        LocalSymbol { prime: p, constituents }
    }

    /// Same genus with every local symbol in canonical form.
    pub fn canonical(&self) -> GenusSymbol {
        let mut g = self.clone();
        for l in &mut g.locals {
            l.constituents = l.canonical();
        }
        g
    }

    pub fn primes(&self) -> Vec<u64> {
        self.locals.iter().map(|l| l.prime).collect()
    }
}

impl PartialEq for GenusSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for GenusSymbol {}

impl Hash for GenusSymbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for GenusSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GenusSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

pub fn genus_of(l: &IntLattice) -> GenusSymbol {
    GenusSymbol::of(l)
}

// ---------------------------------------------------------------------------
// enumeration

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityFilter {
    Any,
    Even,
    Odd,
}

/// Dimension vectors (n_0, ..., n_ν) with Σ n_k = r and Σ k n_k = ν.
fn scale_partitions(r: usize, nu: u32) -> Vec<Vec<usize>> {
    fn rec(k: u32, r: usize, nu: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            // remaining dims go to scale 0
            if nu == 0 {
                let mut v = cur.clone();
                v.push(r);
                v.reverse();
                out.push(v);
            }
            return;
        }
        let max = (nu / k) as usize;
        for n in 0..=max.min(r) {
            cur.push(n);
            rec(k - 1, r - n, nu - k * n as u32, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if nu == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nu, r, nu, &mut Vec::new(), &mut out);
    out
}

fn constituent_options(p: u64, scale: u32, dim: usize) -> Vec<LocalConstituent> {
    let mut out = Vec::new();
    for eps in [1, -1] {
        if p != 2 {
            out.push(LocalConstituent { scale, dim, eps, odd: false, oddity: 0 });
            continue;
        }
        let c = LocalConstituent::even(scale, dim, eps);
        if c.is_valid() {
            out.push(c);
        }
        for o in 0..8 {
            let c = LocalConstituent { scale, dim, eps, odd: true, oddity: o };
            if c.is_valid() {
                out.push(c);
            }
        }
    }
    out
}

/// All local symbols of rank r at p with the given determinant, one per canonical class.
pub fn local_symbols(p: u64, r: usize, det: i128) -> Vec<LocalSymbol> {
    let nu = arith::valuation(det, p);
    let unit = det / (p as i128).pow(nu);
    let want = if p == 2 {
        arith::two_adic_sign(unit)
    } else {
        arith::legendre(unit, p)
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for dims in scale_partitions(r, nu) {
        let slots: Vec<(u32, usize)> = dims
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(k, &n)| (k as u32, n))
            .collect();
        let opts: Vec<Vec<LocalConstituent>> =
            slots.iter().map(|&(k, n)| constituent_options(p, k, n)).collect();
        let mut idx = vec![0usize; opts.len()];
        loop {
            let cons: Vec<LocalConstituent> =
                idx.iter().enumerate().map(|(i, &j)| opts[i][j].clone()).collect();
            if cons.iter().map(|c| c.eps).product::<i32>() == want {
                let sym = LocalSymbol { prime: p, constituents: cons };
                if seen.insert(sym.canonical()) {
                    out.push(sym);
                }
            }
            let mut pos = opts.len();
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < opts[pos].len() {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

/// All genera with the given rank, determinant and signature, sorted by canonical key.
pub fn enumerate_genera(
    rank: usize,
    det: i128,
    signature: (usize, usize),
    parity: ParityFilter,
) -> Vec<GenusSymbol> {
    if signature.0 + signature.1 != rank || det == 0 || (det < 0) != (signature.1 % 2 == 1) {
        return Vec::new();
    }
    let mut primes = arith::prime_divisors((2 * det).unsigned_abs());
    primes.sort_unstable();
    let per_prime: Vec<Vec<LocalSymbol>> = primes
        .iter()
        .map(|&p| {
            let mut ls = local_symbols(p, rank, det);
            if p == 2 {
                ls.retain(|l| {
                    let even = l.get(0).is_none_or(|c| !c.odd);
                    match parity {
                        ParityFilter::Any => true,
                        ParityFilter::Even => even,
                        ParityFilter::Odd => !even,
                    }
                });
            }
            ls
        })
        .collect();
    if per_prime.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_prime.len()];
    loop {
        let g = GenusSymbol {
            signature,
            det,
            locals: idx.iter().enumerate().map(|(i, &j)| per_prime[i][j].clone()).collect(),
        };
        if g.is_consistent() {
            out.push(g);
        }
        let mut pos = per_prime.len();
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_prime[pos].len() {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if done {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Genera g of rank one less with add_one(g) = f (positive definite).
pub fn twigs(f: &GenusSymbol) -> Vec<GenusSymbol> {
    let r = f.rank();
    if r == 0 || !f.is_positive_definite() {
        return Vec::new();
    }
    enumerate_genera(r - 1, f.det, (r - 1, 0), ParityFilter::Any)
        .into_iter()
        .filter(|g| &g.add_one() == f)
        .collect()
}

// ---------------------------------------------------------------------------
// text format: "I_(9,0) [2: 1^{+9}_1]"

fn fmt_constituent(p: u64, c: &LocalConstituent) -> String {
    let q = (p as u128).pow(c.scale);
    let sign = if c.eps == 1 { '+' } else { '-' };
    if p == 2 && c.odd {
        format!("{q}^{{{sign}{}}}_{}", c.dim, c.oddity)
    } else {
        format!("{q}^{{{sign}{}}}", c.dim)
    }
}

impl fmt::Display for GenusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parity = if self.is_even() { "II" } else { "I" };
        write!(f, "{parity}_({},{})", self.signature.0, self.signature.1)?;
        for l in &self.locals {
            if l.constituents.is_empty() {
                continue;
            }
            let cs: Vec<String> = l.constituents.iter().map(|c| fmt_constituent(l.prime, c)).collect();
            write!(f, " [{}: {}]", l.prime, cs.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GenusSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_genus(s)
    }
}

pub fn parse_genus(text: &str) -> Result<GenusSymbol> {
    let t = text.trim();
    let bad = |m: &str| Error::Parse(format!("{m} in genus symbol `{t}`"));
    let open = t.find("_(").ok_or_else(|| bad("missing signature"))?;
    let close = t.find(')').ok_or_else(|| bad("missing ')'"))?;
    let parity = &t[..open];
    let sig: Vec<usize> = t[open + 2..close]
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad("bad signature")))
        .collect::<Result<_>>()?;
    if sig.len() != 2 {
        return Err(bad("bad signature"));
    }
    let r = sig[0] + sig[1];
    let mut locals: Vec<LocalSymbol> = Vec::new();
    let mut rest = &t[close + 1..];
    while let Some(a) = rest.find('[') {
        let b = rest[a..].find(']').ok_or_else(|| bad("missing ']'"))? + a;
        let inner = &rest[a + 1..b];
        rest = &rest[b + 1..];
        let (ps, cs) = inner.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let p: u64 = ps.trim().parse().map_err(|_| bad("bad prime"))?;
        if !arith::is_prime(p) {
            return Err(bad("not a prime"));
        }
        let mut cons = Vec::new();
        for tok in cs.split_whitespace() {
            let (q, tail) = tok.split_once("^{").ok_or_else(|| bad("bad constituent"))?;
            let (body, sub) = tail.split_once('}').ok_or_else(|| bad("bad constituent"))?;
            let q: u128 = q.parse().map_err(|_| bad("bad scale"))?;
            let scale = if q == 1 { 0 } else { arith::valuation(q as i128, p) };
            if (p as u128).pow(scale) != q {
                return Err(bad("scale is not a power of the prime"));
            }
            let eps = match body.chars().next() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Err(bad("missing sign")),
            };
            let dim: usize = body[1..].parse().map_err(|_| bad("bad dimension"))?;
            let (odd, oddity) = match sub.strip_prefix('_') {
                Some(o) => (true, o.parse::<u8>().map_err(|_| bad("bad oddity"))? % 8),
                None => (false, 0),
            };
            cons.push(LocalConstituent { scale, dim, eps, odd, oddity });
        }
        locals.push(LocalSymbol { prime: p, constituents: cons });
    }
    if !locals.iter().any(|l| l.prime == 2) {
        // unimodular even symbols may omit the 2-adic part
        let even = parity == "II";
        let mut cons = Vec::new();
        if r > 0 {
            cons.push(LocalConstituent {
                scale: 0,
                dim: r,
                eps: 1,
                odd: !even,
                oddity: if even { 0 } else { (r % 8) as u8 },
            });
        }
        locals.push(LocalSymbol { prime: 2, constituents: cons });
    }
    locals.sort_by_key(|l| l.prime);
    let mut det: i128 = if sig[1] % 2 == 1 { -1 } else { 1 };
    for l in &locals {
        det *= (l.prime as i128).pow(l.valuation());
    }
    // a 2-adic unimodular part must still have the right determinant sign
    let g = GenusSymbol { signature: (sig[0], sig[1]), det, locals };
    if !g.is_consistent() {
        return Err(bad("symbol does not describe a genus"));
    }
    if (parity == "II") != g.is_even() {
        return Err(bad("parity prefix disagrees with the 2-adic data"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e8, named_lattice};

    fn diag(v: &[i64]) -> IntLattice {
        IntLattice::diagonal(v).unwrap()
    }

    fn e8_pos() -> IntLattice {
        e8().rescale(-1).unwrap()
    }

    #[test]
    fn basic_symbols() {
        let g = genus_of(&e8_pos());
        assert!(g.is_even());
        assert!(g.is_consistent());
        assert_eq!(genus_of(&diag(&[1; 9])), genus_of(&diag(&[1]).direct_sum(&e8_pos())));
        let u = named_lattice("U").unwrap();
        assert_ne!(genus_of(&u), genus_of(&diag(&[1, -1])));
        assert!(genus_of(&u).is_consistent());
        assert!(genus_of(&diag(&[1, -1])).is_consistent());
    }

    #[test]
    fn add_one_examples() {
        let g8 = genus_of(&diag(&[1; 8]));
        assert_eq!(g8.add_one(), genus_of(&diag(&[1; 9])));
        assert_eq!(genus_of(&diag(&[1])).add_one(), genus_of(&diag(&[1, 1])));
        assert_eq!(genus_of(&e8_pos()).add_one(), g8.add_one());
        assert_eq!(GenusSymbol::empty().add_one(), genus_of(&diag(&[1])));
    }

    #[test]
    fn twig_examples() {
        let f = genus_of(&diag(&[1; 9]));
        let t = twigs(&f);
        assert_eq!(t.len(), 2);
        assert!(t.contains(&genus_of(&diag(&[1; 8]))));
        assert!(t.contains(&genus_of(&e8_pos())));
        assert_eq!(twigs(&genus_of(&diag(&[1]))), vec![GenusSymbol::empty()]);
        assert!(twigs(&genus_of(&e8_pos())).is_empty());
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_genera(8, 1, (8, 0), ParityFilter::Even);
        assert_eq!(e, vec![genus_of(&e8_pos())]);
        assert_eq!(enumerate_genera(1, 1, (1, 0), ParityFilter::Any).len(), 1);
        let all = enumerate_genera(2, 1848, (2, 0), ParityFilter::Odd);
        assert!(all.contains(&genus_of(&diag(&[1, 1848]))));
        // rank 2 det 3: [1,3] and A2
        assert_eq!(enumerate_genera(2, 3, (2, 0), ParityFilter::Any).len(), 2);
    }

    #[test]
    fn text_round_trip() {
        for l in [diag(&[1; 9]), diag(&[2, 6]), e8_pos(), diag(&[1, 3, 12])] {
            let g = genus_of(&l);
            let s = g.to_string();
            let h = parse_genus(&s).unwrap();
            assert_eq!(g, h, "{s}");
            assert_eq!(h.to_string(), s);
        }
        assert!(parse_genus("II_(8,0)").is_ok());
        assert!(parse_genus("II_(3,0)").is_err());
    }

    #[test]
    fn discriminant_form_conversion() {
        let l = named_lattice("Lminus").unwrap();
        let g = genus_of(&l);
        let q = g.discriminant_form().unwrap();
        assert!(q.is_isomorphic(&TorsionForm::u(1).times(5)));
        let h = GenusSymbol::from_discriminant_form(&q, 2, 10).unwrap();
        assert_eq!(g, h);
        let t = diag(&[2, 2, 6]);
        let g = genus_of(&t);
        assert_eq!(g.rescale_two(false).unwrap(), genus_of(&diag(&[1, 1, 3])));
        assert_eq!(genus_of(&diag(&[1, 1, 3])).rescale_two(true).unwrap(), g);
    }
}
