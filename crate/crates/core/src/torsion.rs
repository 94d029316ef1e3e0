//! Finite quadratic forms written as sums of the elementary blocks
//! `u_k`, `v_k` and `w^ε_{p,k}`.
//!
//! Block conventions:
//! - `u_k` is the discriminant form of `2^k H` (H the even unimodular plane of det -1),
//! - `v_k` the one of `2^k E` with E = [[2,1],[1,2]],
//! - `w^ε_{2,k}` the one of `<ε 2^k>` with ε ∈ {1,3,5,7},
//! - `w^ε_{p,k}` (p odd) the one of `<θ p^k>` with ε = (θ/p).

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::genus::{canonical_two_adic, LocalConstituent};
use crate::lattice::{jordan_decomposition, IntLattice};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    U(u32),
    V(u32),
    /// prime, level exponent, unit class (±1 for odd p, 1/3/5/7 for p = 2)
    W(u64, u32, i32),
}

impl Block {
    pub fn prime(&self) -> u64 {
        match self {
            Block::U(_) | Block::V(_) => 2,
            Block::W(p, _, _) => *p,
        }
    }

    pub fn level(&self) -> u32 {
        match self {
            Block::U(k) | Block::V(k) | Block::W(_, k, _) => *k,
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            Block::U(k) | Block::V(k) => 1u128 << (2 * k),
            Block::W(p, k, _) => (*p as u128).pow(*k),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Block::U(k) | Block::V(k) => k >= 1,
            Block::W(2, k, e) => k >= 1 && matches!(e, 1 | 3 | 5 | 7),
            Block::W(p, k, e) => k >= 1 && arith::is_prime(p) && (e == 1 || e == -1),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid block {self}")))
        }
    }

    fn negated(&self) -> Block {
        match *self {
            Block::W(2, k, e) => Block::W(2, k, (-e).rem_euclid(8)),
            Block::W(p, k, e) => Block::W(p, k, e * arith::legendre(-1, p)),
            b => b,
        }
    }

    /// Wall's table, value mod 8.
    fn signature(&self) -> i64 {
        let s = match *self {
            Block::U(_) => 0,
            Block::V(k) => 4 * (k % 2) as i64,
            Block::W(2, k, e) => e as i64 + if k % 2 == 1 && (e == 3 || e == 5) { 4 } else { 0 },
            Block::W(p, k, e) => {
                let pk = (p as i64).pow(k);
                -((pk - 1) + if k % 2 == 1 && e == -1 { 4 } else { 0 })
            }
        };
        s.rem_euclid(8)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Block::U(k) => write!(f, "u{k}"),
            Block::V(k) => write!(f, "v{k}"),
            Block::W(2, k, e) => write!(f, "w[2,{k},{e}]"),
            Block::W(p, k, e) => write!(f, "w[{p},{k},{}]", if e > 0 { "+1" } else { "-1" }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TorsionForm {
    blocks: Vec<Block>,
}

impl TorsionForm {
    pub fn trivial() -> Self {
        TorsionForm { blocks: Vec::new() }
    }

    pub fn from_blocks(mut blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            b.validate()?;
        }
        blocks.sort();
        Ok(TorsionForm { blocks })
    }

    pub fn elementary(b: Block) -> Result<Self> {
        Self::from_blocks(vec![b])
    }

    pub fn u(k: u32) -> Self {
        TorsionForm { blocks: vec![Block::U(k)] }
    }

    pub fn v(k: u32) -> Self {
        TorsionForm { blocks: vec![Block::V(k)] }
    }

    pub fn w(p: u64, k: u32, eps: i32) -> Result<Self> {
        let eps = if p == 2 { eps.rem_euclid(8) } else { eps };
        Self::elementary(Block::W(p, k, eps))
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sum(&self, other: &TorsionForm) -> TorsionForm {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        blocks.sort();
        TorsionForm { blocks }
    }

    /// `n` copies.
    pub fn times(&self, n: usize) -> TorsionForm {
        let mut blocks = Vec::new();
        for _ in 0..n {
            blocks.extend_from_slice(&self.blocks);
        }
        blocks.sort();
        TorsionForm { blocks }
    }

    /// q(-1).
    pub fn negate(&self) -> TorsionForm {
        let mut blocks: Vec<Block> = self.blocks.iter().map(Block::negated).collect();
        blocks.sort();
        TorsionForm { blocks }
    }

    pub fn order(&self) -> u128 {
        self.blocks.iter().map(Block::order).product()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.blocks.iter().map(Block::prime).collect();
        ps.dedup();
        ps
    }

    /// The p-primary part.
    pub fn p_part(&self, p: u64) -> TorsionForm {
        TorsionForm {
            blocks: self.blocks.iter().copied().filter(|b| b.prime() == p).collect(),
        }
    }

    pub fn ell_p(&self, p: u64) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.prime() == p)
            .map(|b| match b {
                Block::U(_) | Block::V(_) => 2,
                Block::W(..) => 1,
            })
            .sum()
    }

    /// Odd iff the 2-part has a `w` block at level 2.
    pub fn is_odd(&self) -> bool {
        self.blocks.iter().any(|b| matches!(b, Block::W(2, 1, _)))
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }

    pub fn signature_mod8(&self) -> u8 {
        (self.blocks.iter().map(Block::signature).sum::<i64>().rem_euclid(8)) as u8
    }

    /// Discriminant form of an even lattice.
    pub fn of_even_lattice(l: &IntLattice) -> TorsionForm {
        assert!(l.is_even(), "discriminant form needs an even lattice");
        let det = l.determinant();
        let mut blocks = Vec::new();
        for p in arith::prime_divisors(det.unsigned_abs()) {
            let jd = jordan_decomposition(l, p);
            for c in jd.constituents.iter().filter(|c| c.scale > 0) {
                let k = c.scale;
                if p == 2 {
                    blocks.extend(c.units.iter().map(|&u| Block::W(2, k, u.rem_euclid(8) as i32)));
                    blocks.extend(
                        c.even_blocks
                            .iter()
                            .map(|&e| if e == 1 { Block::U(k) } else { Block::V(k) }),
                    );
                } else {
                    blocks.extend(c.units.iter().map(|&u| Block::W(p, k, arith::legendre(u, p))));
                }
            }
        }
        blocks.sort();
        TorsionForm { blocks }
    }

    /// Two-adic symbol of the 2-part, padded by an even unimodular constituent of rank 8.
    fn two_adic_constituents(&self) -> Vec<LocalConstituent> {
        let mut levels: BTreeMap<u32, Vec<Block>> = BTreeMap::new();
        for b in self.blocks.iter().filter(|b| b.prime() == 2) {
            levels.entry(b.level()).or_default().push(*b);
        }
        let mut out = vec![LocalConstituent::even(0, 8, 1)];
        for (k, bs) in levels {
            out.push(constituent_of_blocks(k, &bs));
        }
        out
    }

    fn two_adic_key(&self) -> Vec<LocalConstituent> {
        let mut c = canonical_two_adic(&self.two_adic_constituents());
        c[0].eps = 1;
        c
    }

    /// Per odd prime and level: (count, product of unit classes).
    fn odd_key(&self) -> BTreeMap<(u64, u32), (usize, i32)> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            if let Block::W(p, k, e) = *b {
                if p != 2 {
                    let ent = m.entry((p, k)).or_insert((0usize, 1i32));
                    ent.0 += 1;
                    ent.1 *= e;
                }
            }
        }
        m
    }

    pub fn is_isomorphic(&self, other: &TorsionForm) -> bool {
        self.odd_key() == other.odd_key() && self.two_adic_key() == other.two_adic_key()
    }

    /// Canonical representative: isomorphic forms have equal normal forms.
    pub fn normal_form(&self) -> TorsionForm {
        let mut blocks = Vec::new();
        for ((p, k), (n, e)) in self.odd_key() {
            for _ in 0..n - 1 {
                blocks.push(Block::W(p, k, 1));
            }
            blocks.push(Block::W(p, k, e));
        }
        blocks.extend(self.two_adic_normal_blocks());
        blocks.sort();
        TorsionForm { blocks }
    }

    fn two_adic_normal_blocks(&self) -> Vec<Block> {
        let target = self.two_adic_key();
        let raw = self.two_adic_constituents();
        let levels: Vec<&LocalConstituent> = raw[1..].iter().collect();
        // candidate realisations per level, preferred first
        let options: Vec<Vec<(LocalConstituent, Vec<Block>)>> = levels
            .iter()
            .map(|c| {
                let mut opts: Vec<(LocalConstituent, Vec<Block>)> = local_variants(c)
                    .into_iter()
                    .filter_map(|v| realize_constituent(&v).map(|b| (v, b)))
                    .collect();
                opts.sort_by_key(|a| preference(&a.1));
                opts
            })
            .collect();
        let mut idx = vec![0usize; options.len()];
        loop {
            let mut cand = vec![LocalConstituent::even(0, 8, 1)];
            cand.extend(idx.iter().enumerate().map(|(l, &i)| options[l][i].0.clone()));
            let mut key = canonical_two_adic(&cand);
            key[0].eps = 1;
            if key == target {
                return idx
                    .iter()
                    .enumerate()
                    .flat_map(|(l, &i)| options[l][i].1.clone())
                    .collect();
            }
            // odometer, last level fastest
            let mut pos = options.len();
            loop {
                if pos == 0 {
                    unreachable!("the form itself is among the candidates");
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Generator data for brute-force checks: (cyclic orders, b(x_i,x_j), q(x_i)).
    pub fn generator_data(&self) -> (Vec<u128>, Vec<Vec<Rational>>, Vec<Rational>) {
        let mut orders = Vec::new();
        let mut qs: Vec<Rational> = Vec::new();
        let mut pairs: Vec<(usize, usize, Rational)> = Vec::new();
        for b in &self.blocks {
            let base = orders.len();
            match *b {
                Block::U(k) | Block::V(k) => {
                    let o = 1u128 << k;
                    orders.push(o);
                    orders.push(o);
                    let diag = if matches!(b, Block::U(_)) {
                        Rational::zero()
                    } else {
                        arith::rat(2, 1i64 << k)
                    };
                    qs.push(diag.clone());
                    qs.push(diag);
                    pairs.push((base, base + 1, arith::rat(1, 1i64 << k)));
                }
                Block::W(2, k, e) => {
                    orders.push(1 << k);
                    qs.push(arith::rat(e as i64, 1i64 << k));
                }
                Block::W(p, k, e) => {
                    let pk = (p as i128).pow(k);
                    // θ with (θ/p) = e, q = θ^{-1}/p^k made even in the numerator
                    let theta = if e == 1 { 1 } else { non_residue(p) };
                    let mut c = arith::mod_inv(theta, pk);
                    if c % 2 == 1 {
                        c += pk;
                    }
                    orders.push(pk as u128);
                    qs.push(Rational::new(c.into(), pk.into()));
                }
            }
        }
        let n = orders.len();
        let mut bm = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            bm[i][i] = qs[i].clone();
        }
        for (i, j, v) in pairs {
            bm[i][j] = v.clone();
            bm[j][i] = v;
        }
        (orders, bm, qs)
    }
}

fn non_residue(p: u64) -> i128 {
    (2..p as i128).find(|&a| arith::legendre(a, p) == -1).unwrap()
}

fn constituent_of_blocks(k: u32, bs: &[Block]) -> LocalConstituent {
    let mut dim = 0;
    let mut eps = 1;
    let mut oddity = 0i32;
    let mut odd = false;
    for b in bs {
        match *b {
            Block::U(_) => dim += 2,
            Block::V(_) => {
                dim += 2;
                eps = -eps;
            }
            Block::W(_, _, e) => {
                dim += 1;
                odd = true;
                eps *= arith::two_adic_sign(e as i128);
                oddity += e;
            }
        }
    }
    LocalConstituent {
        scale: k,
        dim,
        eps,
        odd,
        oddity: oddity.rem_euclid(8) as u8,
    }
}

/// All locally valid (ε, oddity) choices with the same scale, dimension and type.
fn local_variants(c: &LocalConstituent) -> Vec<LocalConstituent> {
    let mut out = Vec::new();
    for eps in [1, -1] {
        if c.odd {
            for o in 0..8u8 {
                let v = LocalConstituent { eps, oddity: o, ..c.clone() };
                if v.is_valid() {
                    out.push(v);
                }
            }
        } else {
            out.push(LocalConstituent { eps, ..c.clone() });
        }
    }
    out
}

/// Preferred block realisation of a single valid constituent.
pub fn realize_constituent(c: &LocalConstituent) -> Option<Vec<Block>> {
    let k = c.scale;
    let n = c.dim;
    if !c.odd {
        let mut bs = vec![Block::U(k); n / 2];
        if c.eps == -1 {
            *bs.last_mut()? = Block::V(k);
        }
        bs.sort();
        return Some(bs);
    }
    let start = if n % 2 == 1 { 1 } else { 2 };
    for w in (start..=n).step_by(2) {
        for nv in 0..=1usize {
            if w + 2 * nv > n {
                continue;
            }
            let nu = (n - w - 2 * nv) / 2;
            for eps_list in multisets(w) {
                let sum: i32 = eps_list.iter().sum();
                let sign: i32 = eps_list.iter().map(|&e| arith::two_adic_sign(e as i128)).product();
                let sign = if nv == 1 { -sign } else { sign };
                if sum.rem_euclid(8) as u8 == c.oddity && sign == c.eps {
                    let mut bs = vec![Block::U(k); nu];
                    bs.extend(std::iter::repeat_n(Block::V(k), nv));
                    bs.extend(eps_list.into_iter().map(|e| Block::W(2, k, e)));
                    return Some(bs);
                }
            }
        }
    }
    None
}

/// Nondecreasing lists over {1,3,5,7} of the given length, lexicographic order.
fn multisets(len: usize) -> Vec<Vec<i32>> {
    fn rec(len: usize, min: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in min..4 {
            cur.push([1, 3, 5, 7][i]);
            rec(len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, &mut Vec::new(), &mut out);
    out
}

fn preference(bs: &[Block]) -> (usize, usize, Vec<Block>) {
    let nw = bs.iter().filter(|b| matches!(b, Block::W(..))).count();
    let nv = bs.iter().filter(|b| matches!(b, Block::V(_))).count();
    (nw, nv, bs.to_vec())
}

// ---------------------------------------------------------------------------
// Nikulin's conditions

/// A(s): sign q ≡ s (mod 8).
pub fn check_a(q: &TorsionForm, s: i64) -> bool {
    q.signature_mod8() as i64 == s.rem_euclid(8)
}

/// B(s, s'): conditions at the odd primes.
pub fn check_b(q: &TorsionForm, s: usize, s_prime: usize) -> bool {
    let order = q.order();
    for p in q.primes().into_iter().filter(|&p| p != 2) {
        let l = q.ell_p(p);
        if l > s + s_prime {
            return false;
        }
        if l == s + s_prime {
            let nu = arith::valuation(order as i128, p);
            let unit = (order / (p as u128).pow(nu)) as i128;
            let eps: i32 = q
                .blocks
                .iter()
                .filter_map(|b| match *b {
                    Block::W(bp, _, e) if bp == p => Some(e),
                    _ => None,
                })
                .product();
            let lhs = arith::legendre(unit, p);
            let rhs = arith::legendre(-1, p).pow(s_prime as u32) * eps;
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// C(s): the condition at 2.
pub fn check_c(q: &TorsionForm, s: usize) -> bool {
    let l = q.ell_p(2);
    if l > s {
        return false;
    }
    if l == s && q.is_even() {
        let order = q.order();
        let odd_part = (order >> order.trailing_zeros()) as i128;
        let mut unit = 1i128;
        for b in &q.blocks {
            match b {
                Block::U(_) => unit = -unit,
                Block::V(_) => unit *= 3,
                _ => {}
            }
        }
        let r = (odd_part * unit).rem_euclid(8);
        return r == 1 || r == 7;
    }
    true
}

/// Existence of an even lattice of signature (s₊, s₋) with discriminant form q.
pub fn exists_even_lattice(q: &TorsionForm, s_plus: usize, s_minus: usize) -> bool {
    check_a(q, s_plus as i64 - s_minus as i64)
        && check_b(q, s_plus, s_minus)
        && check_c(q, s_plus + s_minus)
}

// ---------------------------------------------------------------------------
// text syntax: "2u1 + v1 + w[3,1,+1]"

impl fmt::Display for TorsionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.blocks.len() {
            let mut j = i;
            while j < self.blocks.len() && self.blocks[j] == self.blocks[i] {
                j += 1;
            }
            let n = j - i;
            parts.push(if n == 1 {
                self.blocks[i].to_string()
            } else {
                format!("{n}{}", self.blocks[i])
            });
            i = j;
        }
        f.write_str(&parts.join(" + "))
    }
}

impl std::str::FromStr for TorsionForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_form(s)
    }
}

pub fn parse_form(text: &str) -> Result<TorsionForm> {
    let t = text.trim();
    if t == "0" || t.is_empty() {
        return Ok(TorsionForm::trivial());
    }
    let bad = |m: &str| Error::Parse(format!("{m} in form `{t}`"));
    let mut blocks = Vec::new();
    for term in t.split('+').map(str::trim) {
        // "+1" inside brackets splits too; rejoin below
        if term.is_empty() {
            continue;
        }
        blocks.push(term.to_string());
    }
    // re-merge pieces broken inside w[...] brackets
    let mut merged: Vec<String> = Vec::new();
    for piece in blocks {
        if let Some(last) = merged.last_mut() {
            if last.contains('[') && !last.contains(']') {
                last.push('+');
                last.push_str(&piece);
                continue;
            }
        }
        merged.push(piece);
    }
    let mut out = Vec::new();
    for term in merged {
        let term = term.replace(' ', "");
        let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(|| bad("missing block"))?;
        let mult: usize = if split == 0 {
            1
        } else {
            term[..split].parse().map_err(|_| bad("bad multiplicity"))?
        };
        let body = &term[split..];
        let block = if let Some(k) = body.strip_prefix('u') {
            Block::U(k.parse().map_err(|_| bad("bad level"))?)
        } else if let Some(k) = body.strip_prefix('v') {
            Block::V(k.parse().map_err(|_| bad("bad level"))?)
        } else if let Some(rest) = body.strip_prefix("w[") {
            let inner = rest.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
            let f: Vec<&str> = inner.split(',').collect();
            if f.len() != 3 {
                return Err(bad("w block needs three fields"));
            }
            let p: u64 = f[0].parse().map_err(|_| bad("bad prime"))?;
            let k: u32 = f[1].parse().map_err(|_| bad("bad level"))?;
            let e: i32 = f[2].trim_start_matches('+').parse().map_err(|_| bad("bad unit class"))?;
            Block::W(p, k, if p == 2 { e.rem_euclid(8) } else { e })
        } else {
            return Err(bad("unknown block"));
        };
        block.validate()?;
        out.extend(std::iter::repeat_n(block, mult));
    }
    TorsionForm::from_blocks(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{etilde, lambda_minus, named_lattice};

    #[test]
    fn syntax_round_trip() {
        let q: TorsionForm = "2u1 + v1 + w[3,1,+1]".parse().unwrap();
        assert_eq!(q.blocks().len(), 4);
        assert_eq!(q.to_string(), "2u1 + v1 + w[3,1,+1]");
        let w: TorsionForm = "w[2,1,-1]".parse().unwrap();
        assert_eq!(w.blocks(), &[Block::W(2, 1, 7)]);
        assert!(parse_form("x3").is_err());
        assert!(parse_form("w[4,1,+1]").is_err());
    }

    #[test]
    fn basic_invariants() {
        let q = TorsionForm::u(1).sum(&TorsionForm::u(1));
        assert_eq!(q.order(), 16);
        assert_eq!(TorsionForm::u(1).signature_mod8(), 0);
        assert_eq!(TorsionForm::v(1).signature_mod8(), 4);
        assert!(TorsionForm::u(1).times(3).is_even());
        assert_eq!(TorsionForm::u(1).times(5).ell_p(2), 10);
        assert_eq!(TorsionForm::w(3, 1, 1).unwrap().order(), 3);
        assert!(TorsionForm::u(1).negate().is_isomorphic(&TorsionForm::u(1)));
    }

    #[test]
    fn named_forms() {
        let five_u = TorsionForm::u(1).times(5);
        assert!(TorsionForm::of_even_lattice(&lambda_minus()).is_isomorphic(&five_u));
        assert_eq!(five_u.normal_form(), five_u);
        let three_u = TorsionForm::u(1).times(3);
        assert!(TorsionForm::of_even_lattice(&etilde()).is_isomorphic(&three_u));
        assert!(TorsionForm::of_even_lattice(&named_lattice("E8").unwrap()).is_trivial());
    }

    #[test]
    fn relations() {
        let w1 = TorsionForm::w(2, 1, 1).unwrap();
        let w3 = TorsionForm::w(2, 1, 3).unwrap();
        let u1 = TorsionForm::u(1);
        let v1 = TorsionForm::v(1);
        assert!(v1.sum(&v1).is_isomorphic(&u1.sum(&u1)));
        assert!(!v1.is_isomorphic(&u1));
        assert!(w1.is_isomorphic(&TorsionForm::w(2, 1, 5).unwrap()));
        assert!(!w1.is_isomorphic(&w3));
        // three w's collapse
        let lhs = w1.times(3);
        assert_eq!(lhs.normal_form().blocks().len(), 2);
        assert!(lhs.is_isomorphic(&lhs.normal_form()));
    }

    #[test]
    fn nikulin_examples() {
        let five_u = TorsionForm::u(1).times(5);
        assert!(check_a(&five_u, 2 - 10));
        assert!(check_c(&TorsionForm::trivial(), 0));
        assert!(exists_even_lattice(&five_u, 2, 10));
        assert!(exists_even_lattice(&TorsionForm::trivial(), 0, 8));
        assert!(!exists_even_lattice(&TorsionForm::u(1), 1, 0));
        // <6>: q = w[2,1,3]+w[3,1,-1]
        let a2: TorsionForm = "w[3,1,-1]".parse().unwrap();
        assert!(exists_even_lattice(&a2, 2, 0));
        assert!(!exists_even_lattice(&a2, 1, 0));
        let w31: TorsionForm = "w[3,1,+1]".parse().unwrap();
        // rank-1 3-adic lattice <3>: |q| = 3 ≡ discr = 3 only if the unit classes agree
        assert!(check_b(&w31, 1, 0));
        assert!(!check_b(&w31, 0, 1));
    }
}
