//! Independent oracles used by the integration tests: exact rank over the
//! rationals at integer placements, and brute-force connectivity.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity::Graph;

pub const COORD_BOUND: i64 = 1_000_000_000;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let h = m.len();
    if h == 0 {
        return 0;
    }
    let w = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..w {
        let Some(p) = (rank..h).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..h {
            for c in col + 1..w {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == h {
            break;
        }
    }
    rank
}

/// Basis of `{ y : y M = 0 }` over the rationals.
pub fn left_kernel(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let h = rows.len();
    let w = if h == 0 { 0 } else { rows[0].len() };
    // Reduce the transpose (w x h) and read off its right kernel.
    let mut m: Vec<Vec<BigRational>> = (0..w)
        .map(|c| (0..h).map(|r| BigRational::from_integer(rows[r][c].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h {
        let Some(p) = (r..w).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..w {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..h {
                    let v = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..h).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); h];
            v[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn random_coords(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-COORD_BOUND..=COORD_BOUND)).collect())
        .collect()
}

pub fn rigidity_rows(g: &Graph, d: usize, p: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![BigInt::zero(); g.n() * d];
            for k in 0..d {
                let diff = BigInt::from(p[u][k]) - BigInt::from(p[v][k]);
                row[u * d + k] = diff.clone();
                row[v * d + k] = -diff;
            }
            row
        })
        .collect()
}

pub fn target(n: usize, d: usize) -> usize {
    if n <= d {
        n * (n - 1) / 2
    } else {
        d * n - d * (d + 1) / 2
    }
}

/// Exact rank of the stress matrix of a random integer combination of the
/// stress basis at placement `p`.
pub fn stress_rank(g: &Graph, d: usize, p: &[Vec<i64>], rng: &mut ChaCha8Rng) -> usize {
    let basis = left_kernel(&rigidity_rows(g, d, p));
    if basis.is_empty() {
        return 0;
    }
    let edges = g.edges();
    let mut w = vec![BigRational::zero(); edges.len()];
    for b in &basis {
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-COORD_BOUND..=COORD_BOUND)));
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi = &*wi + &c * bi;
        }
    }
    // Clear denominators so the rank can be taken over the integers.
    let lcm = w.iter().fold(BigInt::one(), |acc, x| num_integer_lcm(&acc, x.denom()));
    let w: Vec<BigInt> = w
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let n = g.n();
    let mut omega = vec![vec![BigInt::zero(); n]; n];
    for (&(u, v), wi) in edges.iter().zip(&w) {
        omega[u][v] -= wi;
        omega[v][u] -= wi;
        omega[u][u] += wi;
        omega[v][v] += wi;
    }
    int_rank(&omega)
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.abs(), b.abs());
    let prod = &x * &y;
    while !y.is_zero() {
        let t = &x % &y;
        x = y;
        y = t;
    }
    prod / x
}

/// Exact oracle answers at two independent integer placements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub rigid: bool,
    pub redundantly_rigid: bool,
    pub globally_rigid: bool,
    pub connectivity_ok: bool,
}

pub fn oracle(g: &Graph, d: usize, seed: u64) -> Oracle {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = target(n, d);
    let placements: Vec<Vec<Vec<i64>>> = (0..2).map(|_| random_coords(n, d, &mut rng)).collect();
    let rank_of = |h: &Graph| {
        placements
            .iter()
            .map(|p| int_rank(&rigidity_rows(h, d, p)))
            .max()
            .unwrap()
    };
    let rigid = rank_of(g) == t;
    let redundantly_rigid = rigid && g.edges().iter().all(|&(u, v)| rank_of(&g.without_edge(u, v)) == t);
    let globally_rigid = if n <= d + 1 {
        g.is_complete()
    } else {
        rigid && placements.iter().any(|p| stress_rank(g, d, p, &mut rng) == n - d - 1)
    };
    Oracle {
        rigid,
        redundantly_rigid,
        globally_rigid,
        connectivity_ok: brute_connected(g, d + 1),
    }
}

/// `k`-connectivity by trying every vertex set of size below `k`.
pub fn brute_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if g.is_complete() {
        return n > k;
    }
    if n <= k {
        return false;
    }
    for mask in 0u64..(1u64 << n) {
        if (mask.count_ones() as usize) < k {
            let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            if !connected_subset(g, &keep) {
                return false;
            }
        }
    }
    true
}

fn connected_subset(g: &Graph, keep: &[usize]) -> bool {
    if keep.is_empty() {
        return true;
    }
    let allowed: u64 = keep.iter().map(|&v| 1u64 << v).sum();
    let mut seen = 1u64 << keep[0];
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = g.neighbors(v) & allowed & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == allowed
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// All labeled graphs on `n` vertices, as edge masks over the pairs `u < v`.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..(1u64 << pairs.len())).map(move |mask| {
        let mut g = Graph::empty(n).unwrap();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    })
}

/// Generic rank of the rigidity matrix: the larger exact rank at two
/// independent integer placements.
pub fn exact_generic_rank(g: &Graph, d: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..2)
        .map(|_| int_rank(&rigidity_rows(g, d, &random_coords(g.n(), d, &mut rng))))
        .max()
        .unwrap()
}
