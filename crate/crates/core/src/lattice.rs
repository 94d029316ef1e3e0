//! Integral lattices given by Gram matrices.
//!
//! A lattice is stored as its (symmetric, nondegenerate) integer Gram matrix.
//! All invariants are computed exactly; nothing here touches floating point.

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

pub type Gram = Vec<Vec<i64>>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntLattice {
    gram: Gram,
}

impl IntLattice {
    pub fn new(gram: Gram) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::InvalidArgument("Gram matrix is not square".into()));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let l = IntLattice { gram };
        if n > 0 && l.determinant() == 0 {
            return Err(Error::Degenerate);
        }
        Ok(l)
    }

    /// Builds a lattice without the determinant check; callers guarantee nondegeneracy.
    pub(crate) fn from_gram_unchecked(gram: Gram) -> Self {
        IntLattice { gram }
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let mut g = vec![vec![0; n]; n];
        for (i, &e) in entries.iter().enumerate() {
            g[i][i] = e;
        }
        Self::new(g)
    }

    pub fn empty() -> Self {
        IntLattice { gram: Vec::new() }
    }

    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> i128 {
        determinant(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// Signature (s+, s-) by exact rational congruence diagonalisation.
    pub fn signature(&self) -> (usize, usize) {
        let pivots = congruence_diagonal(&self.gram);
        let pos = pivots.iter().filter(|q| q.is_positive()).count();
        (pos, pivots.len() - pos)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().1 == 0
    }

    pub fn rescale(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("rescale factor must be nonzero".into()));
        }
        Ok(IntLattice {
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|&x| x * n).collect())
                .collect(),
        })
    }

    pub fn direct_sum(&self, other: &IntLattice) -> IntLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            g[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        IntLattice { gram: g }
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a IntLattice>) -> IntLattice {
        parts
            .into_iter()
            .fold(IntLattice::empty(), |acc, l| acc.direct_sum(l))
    }

    /// `n` orthogonal copies.
    pub fn times(&self, n: usize) -> IntLattice {
        IntLattice::direct_sum_all(std::iter::repeat_n(self, n))
    }

    /// Gram matrix of the basis given by the rows of `b` (integer coordinates).
    pub fn transform(&self, b: &[Vec<i64>]) -> Result<IntLattice> {
        IntLattice::new(transform_gram(&self.gram, b))
    }

    /// Halves the Gram matrix if all entries are even.
    pub fn halve(&self) -> Option<IntLattice> {
        if self.gram.iter().flatten().all(|x| x % 2 == 0) {
            Some(IntLattice {
                gram: self
                    .gram
                    .iter()
                    .map(|r| r.iter().map(|x| x / 2).collect())
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn norm(&self, v: &[i64]) -> i128 {
        self.inner(v, v)
    }

    pub fn inner(&self, v: &[i64], w: &[i64]) -> i128 {
        let n = self.rank();
        let mut s = 0i128;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut t = 0i128;
            for j in 0..n {
                t += self.gram[i][j] as i128 * w[j] as i128;
            }
            s += v[i] as i128 * t;
        }
        s
    }
}

pub(crate) fn transform_gram(g: &Gram, b: &[Vec<i64>]) -> Gram {
    let n = g.len();
    let m = b.len();
    let mut bg = vec![vec![0i128; n]; m];
    for i in 0..m {
        for k in 0..n {
            if b[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                bg[i][j] += b[i][k] as i128 * g[k][j] as i128;
            }
        }
    }
    let mut out = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut s = 0i128;
            for k in 0..n {
                s += bg[i][k] * b[j][k] as i128;
            }
            out[i][j] = i64::try_from(s).expect("Gram entry overflow");
        }
    }
    out
}

pub fn determinant(g: &Gram) -> i128 {
    let n = g.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<BigInt>> = g
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d: i128 = a[n - 1][n - 1].clone().try_into().expect("determinant overflow");
    sign * d
}

/// Diagonal entries of a rational congruence diagonalisation.
fn congruence_diagonal(g: &Gram) -> Vec<Rational> {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g
        .iter()
        .map(|r| r.iter().map(|&x| arith::rat_int(x as i128)).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k += e_j gives a nonzero pivot 2 a_kj.
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][k] += t;
                }
            } else {
                // row k vanishes: degenerate
                out.push(Rational::zero());
                continue;
            }
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let c = &a[i][k] / &piv;
            for j in k..n {
                let t = &c * &a[k][j];
                a[i][j] -= t;
            }
        }
        for i in k + 1..n {
            a[k][i] = Rational::zero();
        }
        out.push(piv);
    }
    out
}

// ---------------------------------------------------------------------------
// shorthand text format

/// Parses `[b11, b12, b22, b13, b23, b33, ...]` with an optional `(n)` rescale suffix.
pub fn parse_shorthand(text: &str) -> Result<IntLattice> {
    let t = text.trim();
    let open = t
        .find('[')
        .ok_or_else(|| Error::Parse(format!("missing '[' in `{t}`")))?;
    let close = t
        .rfind(']')
        .ok_or_else(|| Error::Parse(format!("missing ']' in `{t}`")))?;
    if open != 0 || close < open {
        return Err(Error::Parse(format!("malformed shorthand `{t}`")));
    }
    let body = &t[1..close];
    let entries: Vec<i64> = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer `{}`", s.trim())))
            })
            .collect::<Result<_>>()?
    };
    let rest = t[close + 1..].trim();
    let scale = if rest.is_empty() {
        1
    } else {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad rescale suffix `{rest}`")))?;
        let s: i64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rescale factor `{inner}`")))?;
        if s == 0 {
            return Err(Error::InvalidArgument("rescale factor must be nonzero".into()));
        }
        s
    };
    let m = entries.len();
    let mut r = 0;
    while r * (r + 1) / 2 < m {
        r += 1;
    }
    if r * (r + 1) / 2 != m || r == 0 {
        return Err(Error::Parse(format!(
            "{m} entries is not a triangular number of a positive rank"
        )));
    }
    let mut g = vec![vec![0i64; r]; r];
    let mut idx = 0;
    for j in 0..r {
        for i in 0..=j {
            g[i][j] = entries[idx] * scale;
            g[j][i] = entries[idx] * scale;
            idx += 1;
        }
    }
    IntLattice::new(g)
}

pub fn format_shorthand(l: &IntLattice) -> String {
    let mut parts = Vec::new();
    for j in 0..l.rank() {
        for i in 0..=j {
            parts.push(l.gram[i][j].to_string());
        }
    }
    format!("[{}]", parts.join(","))
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_shorthand(self))
    }
}

impl std::str::FromStr for IntLattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_shorthand(s)
    }
}

/// Parses an orthogonal sum such as `U + U(2) + E8(2) + [4]`: each term is a
/// shorthand or a named lattice, optionally rescaled by `(n)` and repeated as `k*`.
pub fn parse_lattice(text: &str) -> Result<IntLattice> {
    let t = text.trim();
    let mut parts = Vec::new();
    for term in t.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty summand in `{t}`")));
        }
        let (count, body) = match term.split_once('*') {
            Some((k, b)) => (
                k.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in `{term}`")))?,
                b.trim(),
            ),
            None => (1, term),
        };
        let l = if body.starts_with('[') {
            parse_shorthand(body)?
        } else {
            let (name, scale) = match body.find('(') {
                Some(i) => {
                    let inner = body[i..]
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("bad rescale suffix in `{body}`")))?;
                    let s: i64 = inner.trim().parse().map_err(|_| Error::Parse(format!("bad rescale factor `{inner}`")))?;
                    (&body[..i], s)
                }
                None => (body, 1),
            };
            named_lattice(name)?.rescale(scale)?
        };
        parts.push(l.times(count));
    }
    Ok(IntLattice::direct_sum_all(&parts))
}

/// Reads a catalog: one shorthand per line, `#` starts a comment.
/// Lines holding several lattices separated by `;` yield each of them.
pub fn parse_catalog(text: &str) -> Result<Vec<IntLattice>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for piece in line.split(';') {
            let piece = piece.trim();
            if !piece.is_empty() {
                out.push(parse_shorthand(piece)?);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// named lattices (ADE lattices negative definite)

pub const ETILDE_SHORTHAND: &str =
    "[2,0,2,0,0,2,0,0,0,2,1,1,1,1,4,0,0,0,0,1,2,1,1,1,1,1,-1,4,1,1,1,1,1,-1,2,4](-1)";

fn cartan_from_edges(n: usize, edges: &[(usize, usize)]) -> Gram {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

fn negate(g: Gram) -> Gram {
    g.into_iter()
        .map(|r| r.into_iter().map(|x| -x).collect())
        .collect()
}

/// Positive definite root lattice of the given type, if the name is valid.
pub fn root_lattice_positive(kind: char, n: usize) -> Result<IntLattice> {
    let bad = || Error::UnknownName(format!("{kind}{n}"));
    let g = match kind {
        'A' if n >= 1 => {
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            cartan_from_edges(n, &edges)
        }
        'D' if n >= 2 => {
            // chain 0-1-...-(n-2), and n-1 attached to n-3
            let mut edges: Vec<_> = (0..n.saturating_sub(2)).map(|i| (i, i + 1)).collect();
            if n >= 3 {
                edges.push((n - 3, n - 1));
            }
            cartan_from_edges(n, &edges)
        }
        'E' if (6..=8).contains(&n) => {
            // chain 0-1-...-(n-2), node n-1 attached to node 2
            let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            edges.push((2, n - 1));
            cartan_from_edges(n, &edges)
        }
        _ => return Err(bad()),
    };
    IntLattice::new(g)
}

pub fn hyperbolic_plane() -> IntLattice {
    IntLattice::from_gram_unchecked(vec![vec![0, 1], vec![1, 0]])
}

pub fn e8() -> IntLattice {
    IntLattice::from_gram_unchecked(negate(root_lattice_positive('E', 8).unwrap().gram))
}

pub fn lambda_minus() -> IntLattice {
    let u = hyperbolic_plane();
    u.direct_sum(&u.rescale(2).unwrap())
        .direct_sum(&e8().rescale(2).unwrap())
}

pub fn etilde() -> IntLattice {
    parse_shorthand(ETILDE_SHORTHAND).expect("built-in shorthand")
}

/// Looks up U, A_n, D_n, E6, E7, E8, Lminus, Etilde (ADE negative definite).
pub fn named_lattice(name: &str) -> Result<IntLattice> {
    let name = name.trim();
    match name {
        "U" => return Ok(hyperbolic_plane()),
        "Lminus" | "Λ⁻" => return Ok(lambda_minus()),
        "Etilde" | "Ẽ" => return Ok(etilde()),
        _ => {}
    }
    let mut chars = name.chars();
    let kind = chars
        .next()
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let digits: String = chars.filter(|c| *c != '_').collect();
    let n: usize = digits
        .parse()
        .map_err(|_| Error::UnknownName(name.to_string()))?;
    let pos = root_lattice_positive(kind, n).map_err(|_| Error::UnknownName(name.to_string()))?;
    Ok(IntLattice::from_gram_unchecked(negate(pos.gram)))
}

// ---------------------------------------------------------------------------
// Smith normal form and the discriminant group

/// Smith normal form `U * A * V = D` over the integers; returns (diag, U, V).
pub fn smith_normal_form(a: &Gram) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ident = |n: usize| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i128).collect())
            .collect()
    };
    let mut u = ident(n);
    let mut v = ident(n);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            for r in m.iter_mut() {
                r.swap(t, pj);
            }
            for r in v.iter_mut() {
                r.swap(t, pj);
            }
            let mut done = true;
            for i in t + 1..n {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    for j in 0..n {
                        m[i][j] -= q * m[t][j];
                        u[i][j] -= q * u[t][j];
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..n {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    for i in 0..n {
                        m[i][j] -= q * m[i][t];
                        v[i][j] -= q * v[i][t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // divisibility condition with the remaining block
                let p = m[t][t];
                let mut fix = None;
                'outer: for i in t + 1..n {
                    for j in t + 1..n {
                        if m[i][j] % p != 0 {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        for j in 0..n {
                            m[t][j] += m[i][j];
                            u[t][j] += u[i][j];
                        }
                    }
                    None => break,
                }
            }
        }
        if m[t][t] < 0 {
            for j in 0..n {
                m[t][j] = -m[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    ((0..n).map(|i| m[i][i]).collect(), u, v)
}

/// The discriminant group `L^∨/L`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Elementary divisors greater than one, in increasing divisibility order.
    pub elementary_divisors: Vec<i128>,
    /// Generators of `L^∨` modulo `L`, as rational coordinates in the basis of `L`.
    pub generators: Vec<Vec<Rational>>,
    /// Induced quadratic form when the lattice is even.
    pub form: Option<crate::torsion::TorsionForm>,
    gram: Gram,
}

impl DiscriminantGroup {
    pub fn order(&self) -> i128 {
        self.elementary_divisors.iter().product()
    }

    /// b(x_i, x_j) for the generators, as exact rationals (not reduced).
    pub fn pairing(&self, i: usize, j: usize) -> Rational {
        let x = &self.generators[i];
        let y = &self.generators[j];
        let n = self.gram.len();
        let mut s = Rational::zero();
        for a in 0..n {
            for b in 0..n {
                if self.gram[a][b] != 0 {
                    s += &x[a] * &y[b] * arith::rat_int(self.gram[a][b] as i128);
                }
            }
        }
        s
    }
}

pub fn discriminant_group(l: &IntLattice) -> DiscriminantGroup {
    let (diag, _u, v) = smith_normal_form(&l.gram);
    let n = l.rank();
    let mut divisors = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        if diag[i].abs() > 1 {
            divisors.push(diag[i].abs());
            gens.push(
                (0..n)
                    .map(|r| Rational::new(BigInt::from(v[r][i]), BigInt::from(diag[i])))
                    .collect(),
            );
        }
    }
    let form = if l.is_even() {
        Some(crate::torsion::TorsionForm::of_even_lattice(l))
    } else {
        None
    };
    DiscriminantGroup {
        elementary_divisors: divisors,
        generators: gens,
        form,
        gram: l.gram.clone(),
    }
}

// ---------------------------------------------------------------------------
// p-adic Jordan decomposition

/// One Jordan constituent `p^scale * J` with `J` unimodular over Z_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanConstituent {
    pub scale: u32,
    pub dim: usize,
    /// p odd: Legendre symbol of det J. p = 2: Kronecker sign (+1 for det ≡ ±1 mod 8).
    pub det_class: i32,
    /// p = 2 only: true for type I (odd), false for type II.
    pub odd: bool,
    /// p = 2 only: trace of a diagonalisation mod 8 (0 for type II).
    pub oddity: u8,
    /// Diagonal unit entries (p odd: all entries mod p; p = 2: the 1x1 pieces mod 8).
    pub units: Vec<i128>,
    /// p = 2 only: det classes of the 2x2 even pieces (+1 hyperbolic, -1 the other one).
    pub even_blocks: Vec<i32>,
}

#[derive(Clone, Debug)]
pub struct JordanDecomposition {
    pub prime: u64,
    /// Constituents of positive dimension, ascending scale.
    pub constituents: Vec<JordanConstituent>,
    /// Precision exponent used for the computation.
    pub precision: u32,
}

impl JordanDecomposition {
    pub fn dim_at(&self, scale: u32) -> usize {
        self.constituents
            .iter()
            .find(|c| c.scale == scale)
            .map_or(0, |c| c.dim)
    }

    /// Σ scale·dim, which equals the p-adic valuation of the determinant.
    pub fn weighted_scale_sum(&self) -> u32 {
        self.constituents
            .iter()
            .map(|c| c.scale * c.dim as u32)
            .sum()
    }
}

enum Piece {
    One(u32, i128),
    Two(u32, [i128; 3]),
}

pub fn jordan_decomposition(l: &IntLattice, p: u64) -> JordanDecomposition {
    assert!(arith::is_prime(p), "{p} is not prime");
    let det = l.determinant();
    let precision = arith::valuation(2 * det.max(1).max(-det), p) + 3;
    jordan_with_precision(l, p, precision)
}

pub(crate) fn jordan_with_precision(l: &IntLattice, p: u64, precision: u32) -> JordanDecomposition {
    let n = l.rank();
    let pi = p as i128;
    let modulus = pi.pow(precision);
    let mut a: Vec<Vec<i128>> = l
        .gram
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(modulus)).collect())
        .collect();
    let val = |x: i128| -> u32 {
        if x == 0 {
            precision
        } else {
            arith::valuation(x, p).min(precision)
        }
    };
    let mut active: Vec<usize> = (0..n).collect();
    let mut pieces = Vec::new();
    while !active.is_empty() {
        // minimal valuation, preferring diagonal entries
        let mut best_diag: Option<(u32, usize)> = None;
        let mut best_off: Option<(u32, usize, usize)> = None;
        for (ai, &i) in active.iter().enumerate() {
            let v = val(a[i][i]);
            if best_diag.is_none_or(|(bv, _)| v < bv) {
                best_diag = Some((v, i));
            }
            for &j in &active[ai + 1..] {
                let v = val(a[i][j]);
                if best_off.is_none_or(|(bv, _, _)| v < bv) {
                    best_off = Some((v, i, j));
                }
            }
        }
        let (dv, di) = best_diag.unwrap();
        let use_diag = best_off.is_none_or(|(ov, _, _)| dv <= ov);
        if !use_diag && p != 2 {
            let (_, i, j) = best_off.unwrap();
            // e_i += e_j
            for c in 0..n {
                a[i][c] = (a[i][c] + a[j][c]).rem_euclid(modulus);
            }
            for r in 0..n {
                a[r][i] = (a[r][i] + a[r][j]).rem_euclid(modulus);
            }
            continue;
        }
        if use_diag {
            let i = di;
            let v = dv;
            assert!(v < precision, "precision exhausted in Jordan decomposition");
            let pv = pi.pow(v);
            let rmod = modulus / pv;
            let unit = (a[i][i] / pv).rem_euclid(rmod);
            let inv = arith::mod_inv(unit, rmod);
            for &k in &active {
                if k == i || a[k][i] == 0 {
                    continue;
                }
                let c = arith::mul_mod(a[k][i] / pv, inv, rmod);
                sub_multiple(&mut a, k, i, c, modulus);
            }
            pieces.push(Piece::One(v, unit));
            active.retain(|&k| k != i);
        } else {
            let (v, i, j) = best_off.unwrap();
            assert!(v < precision, "precision exhausted in Jordan decomposition");
            let pv = pi.pow(v);
            let rmod = modulus / pv;
            let b = [
                (a[i][i] / pv).rem_euclid(rmod),
                (a[i][j] / pv).rem_euclid(rmod),
                (a[j][j] / pv).rem_euclid(rmod),
            ];
            let det = (b[0] * b[2] - b[1] * b[1]).rem_euclid(rmod);
            let dinv = arith::mod_inv(det, rmod);
            // inverse of [[b0,b1],[b1,b2]] = dinv * [[b2,-b1],[-b1,b0]]
            let inv = [
                arith::mul_mod(b[2], dinv, rmod),
                arith::mul_mod(-b[1], dinv, rmod),
                arith::mul_mod(b[0], dinv, rmod),
            ];
            for &k in &active {
                if k == i || k == j {
                    continue;
                }
                let x = a[k][i] / pv;
                let y = a[k][j] / pv;
                let c1 = (arith::mul_mod(x, inv[0], rmod) + arith::mul_mod(y, inv[1], rmod))
                    .rem_euclid(rmod);
                let c2 = (arith::mul_mod(x, inv[1], rmod) + arith::mul_mod(y, inv[2], rmod))
                    .rem_euclid(rmod);
                if c1 != 0 {
                    sub_multiple(&mut a, k, i, c1, modulus);
                }
                if c2 != 0 {
                    sub_multiple(&mut a, k, j, c2, modulus);
                }
            }
            pieces.push(Piece::Two(v, b));
            active.retain(|&k| k != i && k != j);
        }
    }
    let mut scales: Vec<u32> = pieces
        .iter()
        .map(|pc| match pc {
            Piece::One(v, _) | Piece::Two(v, _) => *v,
        })
        .collect();
    scales.sort_unstable();
    scales.dedup();
    let constituents = scales
        .into_iter()
        .map(|s| {
            let mut units = Vec::new();
            let mut even_blocks = Vec::new();
            for pc in &pieces {
                match pc {
                    Piece::One(v, u) if *v == s => units.push(*u),
                    Piece::Two(v, b) if *v == s => {
                        let d = (b[0] * b[2] - b[1] * b[1]).rem_euclid(8);
                        even_blocks.push(if d == 7 { 1 } else { -1 });
                    }
                    _ => {}
                }
            }
            let dim = units.len() + 2 * even_blocks.len();
            if p == 2 {
                let units: Vec<i128> = units.iter().map(|u| u.rem_euclid(8)).collect();
                let mut det_sign = units.iter().map(|&u| arith::two_adic_sign(u)).product::<i32>();
                // hyperbolic pieces have det ≡ -1, the others ≡ 3
                det_sign *= even_blocks.iter().product::<i32>();
                let oddity = (units.iter().sum::<i128>().rem_euclid(8)) as u8;
                JordanConstituent {
                    scale: s,
                    dim,
                    det_class: det_sign,
                    odd: !units.is_empty(),
                    oddity,
                    units,
                    even_blocks,
                }
            } else {
                let units: Vec<i128> = units.iter().map(|u| u.rem_euclid(pi)).collect();
                let det_class = units.iter().map(|&u| arith::legendre(u, p)).product();
                JordanConstituent {
                    scale: s,
                    dim,
                    det_class,
                    odd: false,
                    oddity: 0,
                    units,
                    even_blocks,
                }
            }
        })
        .collect();
    JordanDecomposition {
        prime: p,
        constituents,
        precision,
    }
}

/// e_k -= c e_i (rows and columns), modulo `m`.
fn sub_multiple(a: &mut [Vec<i128>], k: usize, i: usize, c: i128, m: i128) {
    let n = a.len();
    for col in 0..n {
        let t = arith::mul_mod(c, a[i][col], m);
        a[k][col] = (a[k][col] - t).rem_euclid(m);
    }
    for row in 0..n {
        let t = arith::mul_mod(c, a[row][i], m);
        a[row][k] = (a[row][k] - t).rem_euclid(m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_read_off() {
        let u = parse_shorthand("[0,1,0]").unwrap();
        assert_eq!(u.gram(), &vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(u.determinant(), -1);
        let two = parse_shorthand("[2]").unwrap();
        assert!(two.is_even());
        assert_eq!(two.determinant(), 2);
        assert_eq!(format_shorthand(&IntLattice::diagonal(&[1, 1]).unwrap()), "[1,0,1]");
        assert_eq!(format_shorthand(&hyperbolic_plane()), "[0,1,0]");
    }

    #[test]
    fn shorthand_errors() {
        assert!(matches!(parse_shorthand("[1,2]"), Err(Error::Parse(_))));
        assert!(matches!(parse_shorthand("[1,1,1]"), Err(Error::Degenerate)));
        assert!(parse_shorthand("1,0,1").is_err());
        assert!(parse_shorthand("[1](0)").is_err());
        assert_eq!(
            parse_shorthand(" [ 1 , 0 , 1 ] (3)").unwrap(),
            IntLattice::diagonal(&[3, 3]).unwrap()
        );
    }

    #[test]
    fn named() {
        let e8 = named_lattice("E8").unwrap();
        assert_eq!(e8.rank(), 8);
        assert_eq!(e8.determinant(), 1);
        assert!(e8.is_even());
        assert_eq!(e8.signature(), (0, 8));
        assert_eq!(named_lattice("A1").unwrap().gram(), &vec![vec![-2]]);
        assert_eq!(named_lattice("D4").unwrap().determinant(), 4);
        assert_eq!(named_lattice("E7").unwrap().determinant(), -2);
        assert_eq!(named_lattice("E6").unwrap().determinant(), 3);
        assert_eq!(named_lattice("A4").unwrap().determinant(), 5);
        let lm = named_lattice("Lminus").unwrap();
        assert_eq!(lm.rank(), 12);
        assert_eq!(lm.signature(), (2, 10));
        assert_eq!(lm.determinant(), 1024);
        assert!(named_lattice("F4").is_err());
    }

    #[test]
    fn etilde_invariants() {
        let e = etilde();
        assert_eq!(e.rank(), 8);
        assert!(e.is_even());
        assert_eq!(e.determinant(), 64);
        assert_eq!(e.signature(), (0, 8));
    }

    #[test]
    fn rescale_and_sum() {
        assert_eq!(
            IntLattice::diagonal(&[1]).unwrap().rescale(2).unwrap(),
            IntLattice::diagonal(&[2]).unwrap()
        );
        let e8_2 = e8().rescale(2).unwrap();
        assert_eq!(e8_2.determinant(), 256);
        assert!(IntLattice::diagonal(&[1]).unwrap().rescale(0).is_err());
        let u = hyperbolic_plane();
        assert_eq!(u.rescale(2).unwrap().determinant(), -4);
    }

    #[test]
    fn snf_divisors() {
        let dg = discriminant_group(&lambda_minus());
        assert_eq!(dg.elementary_divisors, vec![2; 10]);
        let dg = discriminant_group(&etilde());
        assert_eq!(dg.elementary_divisors, vec![2; 6]);
        assert!(discriminant_group(&hyperbolic_plane()).elementary_divisors.is_empty());
        let dg = discriminant_group(&IntLattice::diagonal(&[2, 6]).unwrap());
        assert_eq!(dg.elementary_divisors, vec![2, 6]);
    }

    #[test]
    fn jordan_examples() {
        let u2 = hyperbolic_plane().rescale(2).unwrap();
        let j = jordan_decomposition(&u2, 2);
        assert_eq!(j.constituents.len(), 1);
        assert_eq!((j.constituents[0].scale, j.constituents[0].dim), (1, 2));
        assert!(!j.constituents[0].odd);
        let j = jordan_decomposition(&IntLattice::diagonal(&[1, 3]).unwrap(), 3);
        let shape: Vec<_> = j.constituents.iter().map(|c| (c.scale, c.dim)).collect();
        assert_eq!(shape, vec![(0, 1), (1, 1)]);
        for p in [2, 3, 5] {
            let j = jordan_decomposition(&e8(), p);
            assert_eq!(j.constituents.len(), 1);
            assert_eq!((j.constituents[0].scale, j.constituents[0].dim), (0, 8));
        }
    }
}
