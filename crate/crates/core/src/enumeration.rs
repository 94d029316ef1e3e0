//! Lattice-level computations on positive definite lattices: reduction,
//! short vectors, automorphism group orders, isometry tests and neighbours.

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice::{transform_gram, Gram, IntLattice};
use std::collections::{HashMap, HashSet};

// ---------------------------------------------------------------------------
// LLL reduction

/// LLL-reduced basis (δ = 0.99). Returns the reduced lattice and the
/// transformation (rows are the new basis vectors in old coordinates).
pub fn lll(l: &IntLattice) -> (IntLattice, Vec<Vec<i64>>) {
    let n = l.rank();
    let mut g: Vec<Vec<i128>> = l
        .gram()
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut b: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    if n <= 1 {
        return (l.clone(), b);
    }
    let delta = 0.99;
    let mut k = 1;
    let mut guard = 0u64;
    while k < n {
        guard += 1;
        assert!(guard < 10_000_000, "LLL did not terminate");
        // size reduction of b_k
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&g, k);
            let q = mu[k][j].round();
            if q != 0.0 {
                let q = q as i128;
                sub_row(&mut g, &mut b, k, j, q);
            }
        }
        let (mu, r) = gram_schmidt(&g, k);
        if r[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * r[k - 1] {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            b.swap(k, k - 1);
            k = k.max(2) - 1;
        } else {
            k += 1;
        }
    }
    let gram: Gram = g
        .iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).expect("Gram overflow")).collect())
        .collect();
    (IntLattice::from_gram_unchecked(gram), b)
}

/// b_k -= q b_j, updating the exact Gram matrix.
fn sub_row(g: &mut [Vec<i128>], b: &mut [Vec<i64>], k: usize, j: usize, q: i128) {
    let n = g.len();
    let gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j];
    for i in 0..n {
        if i != k {
            g[k][i] -= q * g[j][i];
            g[i][k] = g[k][i];
        }
    }
    g[k][k] = gkk;
    for c in 0..n {
        b[k][c] -= (q as i64) * b[j][c];
    }
}

/// Gram–Schmidt coefficients μ and squared lengths r for rows 0..=k.
fn gram_schmidt(g: &[Vec<i128>], k: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut mu = vec![vec![0.0; k + 1]; k + 1];
    let mut r = vec![0.0; k + 1];
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..=k {
        for j in 0..=i {
            let mut s = g[i][j] as f64;
            for t in 0..j {
                s -= mu[j][t] * a[i][t];
            }
            a[i][j] = s;
            if j < i {
                mu[i][j] = s / r[j];
            } else {
                r[i] = s;
            }
        }
    }
    (mu, r)
}

// ---------------------------------------------------------------------------
// short vectors

/// Upper-triangular data for Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)².
fn cholesky(g: &Gram) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut q: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

/// All nonzero vectors of norm at most `bound`, one of each ±pair
/// (the last nonzero coordinate is positive), with exact norms.
pub fn short_vectors(l: &IntLattice, bound: i64) -> Vec<(Vec<i64>, i64)> {
    let mut out = Vec::new();
    for_each_short_vector(l, bound, |v, nrm| out.push((v.to_vec(), nrm)));
    out
}

/// Calls `f` on every vector with 0 < norm ≤ bound, one of each ±pair.
pub fn for_each_short_vector(l: &IntLattice, bound: i64, mut f: impl FnMut(&[i64], i64)) {
    let n = l.rank();
    if n == 0 || bound <= 0 {
        return;
    }
    let q = cholesky(l.gram());
    let slack = 1e-6 * (1.0 + bound as f64);
    let mut x = vec![0i64; n];
    let mut rem = vec![0.0f64; n + 1];
    rem[n] = bound as f64 + slack;
    let mut centers = vec![0.0f64; n];
    let mut upper = vec![0i64; n];
    // depth-first from the last coordinate
    let mut i = n - 1;
    let set_bounds = |i: usize, x: &[i64], rem: &[f64], centers: &mut [f64], upper: &mut [i64]| -> i64 {
        let mut c = 0.0;
        for j in i + 1..n {
            c += q[i][j] * x[j] as f64;
        }
        centers[i] = -c;
        let r = (rem[i + 1] / q[i][i]).max(0.0).sqrt();
        upper[i] = (centers[i] + r + 1e-9).floor() as i64;
        (centers[i] - r - 1e-9).ceil() as i64
    };
    let lo = set_bounds(i, &x, &rem, &mut centers, &mut upper);
    x[i] = lo.max(0);
    loop {
        if x[i] > upper[i] {
            if i == n - 1 {
                break;
            }
            i += 1;
            x[i] += 1;
            continue;
        }
        let t = x[i] as f64 - centers[i];
        let used = q[i][i] * t * t;
        if used > rem[i + 1] {
            x[i] += 1;
            continue;
        }
        rem[i] = rem[i + 1] - used;
        if i == 0 {
            // sign normalisation: last nonzero coordinate positive
            if let Some(&last) = x.iter().rev().find(|&&c| c != 0) {
                if last > 0 {
                    let nrm = l.norm(&x);
                    if nrm > 0 && nrm <= bound as i128 {
                        f(&x, nrm as i64);
                    }
                }
            }
            x[i] += 1;
            continue;
        }
        i -= 1;
        let lo = set_bounds(i, &x, &rem, &mut centers, &mut upper);
        x[i] = lo;
        // all higher coordinates zero: only nonnegative values needed at this level
        if x[i + 1..].iter().all(|&c| c == 0) {
            x[i] = x[i].max(0);
        }
    }
}

/// Number of vectors (counting ± separately) of each norm 1..=bound.
pub fn theta_prefix(l: &IntLattice, bound: i64) -> Vec<u64> {
    let mut counts = vec![0u64; bound as usize];
    for_each_short_vector(l, bound, |_, nrm| counts[nrm as usize - 1] += 2);
    counts
}

pub fn minimum(l: &IntLattice) -> i64 {
    let b = (0..l.rank()).map(|i| l.entry(i, i)).min().unwrap_or(0);
    let mut m = b;
    for_each_short_vector(l, b, |_, nrm| m = m.min(nrm));
    m
}

pub fn represents_one(l: &IntLattice) -> bool {
    assert!(l.is_positive_definite(), "represents_one needs a positive definite lattice");
    let (r, _) = lll(l);
    if (0..r.rank()).any(|i| r.entry(i, i) == 1) {
        return true;
    }
    !short_vectors(&r, 1).is_empty()
}

// ---------------------------------------------------------------------------
// automorphisms and isometries

const FINGERPRINT_LIMIT: usize = 12_000;

/// Candidate images for a target Gram matrix inside a lattice.
struct Candidates {
    /// vectors (coordinates) with both signs
    vecs: Vec<Vec<i64>>,
    /// Gram times vector, for fast pairings
    gv: Vec<Vec<i64>>,
    /// per target index: candidate indices with the right norm
    by_level: Vec<Vec<usize>>,
    index: HashMap<Vec<i64>, usize>,
}

impl Candidates {
    fn new(m: &IntLattice, target: &Gram) -> Candidates {
        let norms: HashSet<i64> = (0..target.len()).map(|i| target[i][i]).collect();
        let bound = norms.iter().copied().max().unwrap_or(0);
        let mut vecs = Vec::new();
        for_each_short_vector(m, bound, |v, nrm| {
            if norms.contains(&nrm) {
                vecs.push(v.to_vec());
                vecs.push(v.iter().map(|x| -x).collect());
            }
        });
        let gv: Vec<Vec<i64>> = vecs
            .iter()
            .map(|v| {
                (0..m.rank())
                    .map(|i| (0..m.rank()).map(|j| m.entry(i, j) * v[j]).sum())
                    .collect()
            })
            .collect();
        let by_level = (0..target.len())
            .map(|l| {
                (0..vecs.len())
                    .filter(|&c| dot(&gv[c], &vecs[c]) == target[l][l])
                    .collect()
            })
            .collect();
        let index = vecs.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Candidates { vecs, gv, by_level, index }
    }

    /// Per vector: counts of candidates w by (norm of w, inner product).
    fn fingerprints(&self) -> Option<Vec<Vec<u32>>> {
        let n = self.vecs.len();
        if n > FINGERPRINT_LIMIT {
            return None;
        }
        let norms: Vec<i64> = (0..n).map(|a| self.pair(a, a)).collect();
        let mut distinct = norms.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let maxn = *distinct.last().unwrap_or(&0);
        let width = (2 * maxn + 1) as usize;
        let slot: Vec<usize> = norms.iter().map(|x| distinct.binary_search(x).unwrap() * width).collect();
        Some(
            (0..n)
                .map(|a| {
                    let mut fp = vec![0u32; distinct.len() * width];
                    for b in 0..n {
                        fp[slot[b] + (self.pair(a, b) + maxn) as usize] += 1;
                    }
                    fp
                })
                .collect(),
        )
    }

    /// Keeps only candidates whose fingerprint matches the reference one of each level.
    fn restrict(&mut self, prints: &[Vec<u32>], reference: &[Vec<u32>]) {
        for (l, lvl) in self.by_level.iter_mut().enumerate() {
            lvl.retain(|&c| prints[c] == reference[l]);
        }
    }

    fn unit_index(&self, n: usize, i: usize) -> usize {
        let v: Vec<i64> = (0..n).map(|j| (i == j) as i64).collect();
        self.index[&v]
    }

    fn pair(&self, a: usize, b: usize) -> i64 {
        dot(&self.gv[a], &self.vecs[b])
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Depth-first search for images of levels `assigned.len()..n`, with forward
/// checking and the smallest remaining domain tried first.
fn extend(c: &Candidates, target: &Gram, assigned: &mut Vec<usize>) -> bool {
    let n = target.len();
    let start = assigned.len();
    let mut domains: Vec<Vec<usize>> = Vec::with_capacity(n - start);
    for j in start..n {
        let d: Vec<usize> = c.by_level[j]
            .iter()
            .copied()
            .filter(|&x| assigned.iter().enumerate().all(|(i, &a)| c.pair(a, x) == target[i][j]))
            .collect();
        if d.is_empty() {
            return false;
        }
        domains.push(d);
    }
    let mut slots: Vec<Option<usize>> = vec![None; n - start];
    if !search(c, target, start, &mut slots, &domains) {
        return false;
    }
    assigned.extend(slots.into_iter().map(|s| s.expect("filled")));
    true
}

fn search(c: &Candidates, target: &Gram, start: usize, slots: &mut [Option<usize>], domains: &[Vec<usize>]) -> bool {
    let Some(j) = (0..slots.len()).filter(|&j| slots[j].is_none()).min_by_key(|&j| domains[j].len()) else {
        return true;
    };
    for &x in &domains[j] {
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(domains.len());
        let mut dead = false;
        for (l, d) in domains.iter().enumerate() {
            if slots[l].is_some() || l == j {
                next.push(Vec::new());
                continue;
            }
            let t = target[start + j][start + l];
            let f: Vec<usize> = d.iter().copied().filter(|&y| c.pair(x, y) == t).collect();
            if f.is_empty() {
                dead = true;
                break;
            }
            next.push(f);
        }
        if dead {
            continue;
        }
        slots[j] = Some(x);
        if search(c, target, start, slots, &next) {
            return true;
        }
        slots[j] = None;
    }
    false
}

/// |Aut(L)| for positive definite L, by orbit–stabiliser counting.
pub fn aut_order(l: &IntLattice) -> u128 {
    assert!(l.is_positive_definite(), "aut_order needs a positive definite lattice");
    let (r, _) = lll(l);
    let n = r.rank();
    if n == 0 {
        return 1;
    }
    let target = r.gram().clone();
    let mut cands = Candidates::new(&r, &target);
    let base: Vec<usize> = (0..n).map(|i| cands.unit_index(n, i)).collect();
    if let Some(fp) = cands.fingerprints() {
        let reference: Vec<Vec<u32>> = base.iter().map(|&b| fp[b].clone()).collect();
        cands.restrict(&fp, &reference);
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    for i in (0..n).rev() {
        let prefix = &base[..i];
        let level: Vec<usize> = cands.by_level[i]
            .iter()
            .copied()
            .filter(|&c| prefix.iter().enumerate().all(|(k, &a)| cands.pair(a, c) == target[k][i]))
            .collect();
        let mut orbit: HashSet<usize> = HashSet::new();
        orbit.insert(base[i]);
        close_orbit(&cands, &gens, &mut orbit);
        for &c in &level {
            if orbit.contains(&c) {
                continue;
            }
            let mut assigned: Vec<usize> = prefix.to_vec();
            assigned.push(c);
            if extend(&cands, &target, &mut assigned) {
                gens.push(assigned);
                orbit.insert(c);
                close_orbit(&cands, &gens, &mut orbit);
            }
        }
        order *= orbit.len() as u128;
    }
    order
}

fn apply(cands: &Candidates, g: &[usize], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut out = vec![0i64; n];
    for (k, &coef) in v.iter().enumerate() {
        if coef != 0 {
            for (o, x) in out.iter_mut().zip(&cands.vecs[g[k]]) {
                *o += coef * x;
            }
        }
    }
    out
}

fn close_orbit(cands: &Candidates, gens: &[Vec<usize>], orbit: &mut HashSet<usize>) {
    let mut stack: Vec<usize> = orbit.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = apply(cands, g, &cands.vecs[v]);
            let idx = cands.index[&w];
            if orbit.insert(idx) {
                stack.push(idx);
            }
        }
    }
}

/// An isometry L → M as a matrix W (rows: images of the basis of L in the
/// basis of M), so that W · Gram(M) · Wᵀ = Gram(L).
pub fn is_isometric(l: &IntLattice, m: &IntLattice) -> Option<Vec<Vec<i64>>> {
    if l.rank() != m.rank() || l.determinant() != m.determinant() {
        return None;
    }
    if l.rank() == 0 {
        return Some(Vec::new());
    }
    assert!(l.is_positive_definite() && m.is_positive_definite());
    let (lr, tl) = lll(l);
    let (mr, tm) = lll(m);
    let target = lr.gram().clone();
    let mut cands = Candidates::new(&mr, &target);
    if cands.vecs.len() <= FINGERPRINT_LIMIT {
        let own = Candidates::new(&lr, &target);
        if own.vecs.len() != cands.vecs.len() {
            return None;
        }
        if let (Some(fm), Some(fl)) = (cands.fingerprints(), own.fingerprints()) {
            let n = target.len();
            let reference: Vec<Vec<u32>> = (0..n).map(|i| fl[own.unit_index(n, i)].clone()).collect();
            cands.restrict(&fm, &reference);
        }
    }
    let mut assigned = Vec::new();
    if !extend(&cands, &target, &mut assigned) {
        return None;
    }
    // images of the reduced basis of L in the reduced basis of M
    let img: Vec<Vec<i64>> = assigned.iter().map(|&a| cands.vecs[a].clone()).collect();
    // back to original bases: W = TL^{-1} · img · TM
    let tl_inv = unimodular_inverse(&tl);
    let w = mat_mul(&mat_mul(&tl_inv, &img), &tm);
    debug_assert_eq!(&transform_gram(m.gram(), &w), l.gram());
    Some(w)
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

/// Inverse of an integer matrix of determinant ±1.
pub(crate) fn unimodular_inverse(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut inv: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for col in 0..n {
        // Euclid on column entries below the diagonal
        loop {
            let piv = (col..n).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].abs());
            let Some(p) = piv else { panic!("matrix is singular") };
            m.swap(col, p);
            inv.swap(col, p);
            let mut done = true;
            for r in col + 1..n {
                if m[r][col] != 0 {
                    let q = m[r][col] / m[col][col];
                    for c in 0..n {
                        m[r][c] -= q * m[col][c];
                        inv[r][c] -= q * inv[col][c];
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        assert!(m[col][col].abs() == 1, "matrix is not unimodular");
    }
    for col in (0..n).rev() {
        let s = m[col][col];
        for c in 0..n {
            m[col][c] *= s;
            inv[col][c] *= s;
        }
        for r in 0..col {
            let q = m[r][col];
            if q != 0 {
                for c in 0..n {
                    m[r][c] -= q * m[col][c];
                    inv[r][c] -= q * inv[col][c];
                }
            }
        }
    }
    inv.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

// ---------------------------------------------------------------------------
// Kneser neighbours

/// Hermite normal form basis (rows) of the lattice spanned by the given rows.
pub(crate) fn hnf_rows(rows: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut out = Vec::new();
    let mut start = 0;
    for col in 0..n {
        loop {
            let piv = (start..m.len()).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].abs());
            let Some(p) = piv else { break };
            m.swap(start, p);
            let mut done = true;
            for r in start + 1..m.len() {
                if m[r][col] != 0 {
                    let q = m[r][col].div_euclid(m[start][col]);
                    for c in 0..n {
                        m[r][c] -= q * m[start][c];
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if m[start][col] < 0 {
                    for c in 0..n {
                        m[start][c] = -m[start][c];
                    }
                }
                out.push(m[start].clone());
                start += 1;
                break;
            }
        }
    }
    out
}

/// The p-neighbour of L determined by a vector x with Q(x) ≡ 0 (mod p), x ≢ 0.
pub fn neighbor(l: &IntLattice, p: u64, x: &[i64]) -> Option<IntLattice> {
    let n = l.rank();
    let pi = p as i128;
    let g = l.gram();
    let mut x: Vec<i128> = x.iter().map(|&c| (c as i128).rem_euclid(pi)).collect();
    let gx = |x: &[i128]| -> Vec<i128> {
        (0..n).map(|i| (0..n).map(|j| g[i][j] as i128 * x[j]).sum::<i128>()).collect()
    };
    let q = |x: &[i128]| -> i128 { gx(x).iter().zip(x).map(|(a, b)| a * b).sum() };
    if q(&x).rem_euclid(pi) != 0 {
        return None;
    }
    let f = gx(&x);
    let j = (0..n).find(|&i| f[i].rem_euclid(pi) != 0)?;
    // lift so that Q(x) ≡ 0 mod p²: x += p·t·e_j with Q(x)/p + 2 t f_j ≡ 0
    let qp = (q(&x) / pi).rem_euclid(pi);
    let t = (-qp * arith::mod_inv((2 * f[j]).rem_euclid(pi), pi)).rem_euclid(pi);
    x[j] += pi * t;
    let f = gx(&x);
    let fj_inv = arith::mod_inv(f[j].rem_euclid(pi), pi);
    // generators of p·N: p·(e_i - c_i e_j), p²·e_j, x
    let mut rows = Vec::new();
    for i in 0..n {
        let mut r = vec![0i128; n];
        if i == j {
            r[j] = pi * pi;
        } else {
            let c = (f[i] * fj_inv).rem_euclid(pi);
            r[i] = pi;
            r[j] = -c * pi;
        }
        rows.push(r);
    }
    rows.push(x);
    let basis = hnf_rows(&rows, n);
    assert_eq!(basis.len(), n);
    let mut gram = vec![vec![0i64; n]; n];
    for a in 0..n {
        let ga = gx(&basis[a]);
        for b in 0..n {
            let v: i128 = ga.iter().zip(&basis[b]).map(|(s, t)| s * t).sum();
            assert_eq!(v % (pi * pi), 0, "neighbour is not integral");
            gram[a][b] = i64::try_from(v / (pi * pi)).ok()?;
        }
    }
    Some(IntLattice::from_gram_unchecked(gram))
}

/// All p-neighbours, one per isotropic line mod p (exponential in the rank).
pub fn neighbors(l: &IntLattice, p: u64) -> Result<Vec<IntLattice>> {
    if (2 * l.determinant()) % p as i128 == 0 {
        return Err(Error::InvalidArgument(format!("{p} divides 2·det")));
    }
    let n = l.rank();
    let mut out = Vec::new();
    // projective representatives: last nonzero coordinate equal to 1
    let total = (p as u128).pow(n as u32);
    assert!(total <= 50_000_000, "too many lines to list");
    for code in 1..total {
        let mut x = vec![0i64; n];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = (c % p as u128) as i64;
            c /= p as u128;
        }
        if x.iter().rev().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        if let Some(nb) = neighbor(l, p, &x) {
            out.push(nb);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::genus_of;
    use crate::lattice::e8;

    fn diag(v: &[i64]) -> IntLattice {
        IntLattice::diagonal(v).unwrap()
    }

    #[test]
    fn short_vector_examples() {
        assert_eq!(short_vectors(&diag(&[1]), 1).len(), 1);
        let e8p = e8().rescale(-1).unwrap();
        assert_eq!(short_vectors(&e8p, 2).len(), 120);
        assert!(short_vectors(&diag(&[2, 3]), 1).is_empty());
        assert!(represents_one(&diag(&[1, 1848])));
        assert!(!represents_one(&e8p));
    }

    #[test]
    fn aut_examples() {
        assert_eq!(aut_order(&diag(&[1])), 2);
        assert_eq!(aut_order(&diag(&[1; 4])), 384);
        assert_eq!(aut_order(&diag(&[1; 8])), 10321920);
        assert_eq!(aut_order(&e8().rescale(-1).unwrap()), 696729600);
        assert_eq!(aut_order(&diag(&[1, 2])), 4);
    }

    #[test]
    fn isometry_examples() {
        let e8p = e8().rescale(-1).unwrap();
        assert!(is_isometric(&diag(&[1; 9]), &diag(&[1]).direct_sum(&e8p)).is_none());
        let a = IntLattice::new(vec![vec![2, 1], vec![1, 3]]).unwrap();
        let b = IntLattice::new(vec![vec![3, 1], vec![1, 2]]).unwrap();
        let w = is_isometric(&a, &b).unwrap();
        assert_eq!(&transform_gram(b.gram(), &w), a.gram());
    }

    #[test]
    fn neighbour_examples() {
        let l = diag(&[1, 1]);
        let ns = neighbors(&l, 5).unwrap();
        assert!(!ns.is_empty());
        for nb in &ns {
            assert!(is_isometric(nb, &l).is_some());
        }
        let l = diag(&[1, 1, 1, 3]);
        for nb in neighbors(&l, 5).unwrap() {
            assert_eq!(genus_of(&nb), genus_of(&l));
        }
    }
}
