//! Random lattices and genera shared by the integration tests.

#![allow(dead_code)]

use idoneal::genus::{enumerate_genera, ParityFilter};
use idoneal::{GenusSymbol, IntLattice};
use rand::Rng;

/// An even, nondegenerate lattice of rank 1..=max_rank with |det| ≤ max_det.
pub fn random_even_lattice(rng: &mut impl Rng, max_rank: usize, max_det: i128) -> IntLattice {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            let mut a = 2 * rng.gen_range(1..=3i64);
            if rng.gen_bool(0.4) {
                a = -a;
            }
            g[i][i] = a;
            for j in 0..i {
                let b = rng.gen_range(-1..=1i64);
                g[i][j] = b;
                g[j][i] = b;
            }
        }
        if let Ok(l) = IntLattice::new(g) {
            let d = l.determinant();
            if d != 0 && d.abs() <= max_det {
                return l;
            }
        }
    }
}

/// A positive definite genus picked uniformly among those of a random
/// rank in `ranks` and random determinant up to `max_det`.
pub fn random_genus(rng: &mut impl Rng, ranks: std::ops::RangeInclusive<usize>, max_det: i128) -> GenusSymbol {
    loop {
        let n = rng.gen_range(ranks.clone());
        let d = rng.gen_range(1..=max_det);
        let gs = enumerate_genera(n, d, (n, 0), ParityFilter::Any);
        if !gs.is_empty() {
            return gs[rng.gen_range(0..gs.len())].clone();
        }
    }
}

/// A random unimodular change of basis of size n.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-1..=1i64);
        for k in 0..n {
            b[i][k] += c * b[j][k];
        }
        if rng.gen_bool(0.2) {
            b.swap(i, j);
        }
    }
    b
}
