//! Independent brute-force oracles shared by the integration tests. None of
//! these call into the library beyond reading lattice data.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use linarr::{Arrangement, IntersectionLattice};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random arrangement with `n` distinct lines and small coefficients.
pub fn random_arrangement(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Arrangement {
    loop {
        let coeffs: Vec<[i64; 3]> = (0..n)
            .map(|_| loop {
                let c = [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)];
                if c != [0, 0, 0] {
                    break c;
                }
            })
            .collect();
        if let Ok(arr) = Arrangement::from_coeffs("random", &coeffs) {
            return arr;
        }
    }
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i128; 3] {
    let [a0, a1, a2] = a.map(i128::from);
    let [b0, b1, b2] = b.map(i128::from);
    [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
}

fn canonical(p: [i128; 3]) -> [i128; 3] {
    let g = p.iter().fold(0i128, |g, &x| {
        let (mut a, mut b) = (g.abs(), x.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    });
    let mut q = p.map(|x| x / g);
    if q.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        q = q.map(|x| -x);
    }
    q
}

/// Lines through each intersection point, from pairwise cross products.
pub fn points_by_cross_products(arr: &Arrangement) -> BTreeMap<[i128; 3], BTreeSet<usize>> {
    let coeffs: Vec<[i64; 3]> = arr.lines().iter().map(|l| l.coeffs()).collect();
    let mut points: BTreeMap<[i128; 3], BTreeSet<usize>> = BTreeMap::new();
    for i in 0..coeffs.len() {
        for j in i + 1..coeffs.len() {
            let p = canonical(cross(coeffs[i], coeffs[j]));
            let through: BTreeSet<usize> = (0..coeffs.len())
                .filter(|&k| (0..3).map(|t| i128::from(coeffs[k][t]) * p[t]).sum::<i128>() == 0)
                .collect();
            points.insert(p, through);
        }
    }
    points
}

pub fn census_of(points: &BTreeMap<[i128; 3], BTreeSet<usize>>) -> BTreeMap<usize, usize> {
    let mut c = BTreeMap::new();
    for s in points.values() {
        *c.entry(s.len()).or_insert(0) += 1;
    }
    c
}

// ---------------------------------------------------------------------------
// Linear algebra mod p

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let f = inv(rows[rank][c]);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| x * f % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] % p != 0 {
                let m = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - m * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// dim H¹(A, a·) over F_p, from the exterior algebra modulo the boundaries
/// of all dependent triples.
pub fn aomoto_h1_bruteforce(lat: &IntersectionLattice, p: u64, a: &[i64]) -> usize {
    let n = lat.n();
    let a: Vec<u64> = a.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    let mut pair = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let k = pair.len();
            pair.insert((i, j), k);
        }
    }
    let m = pair.len();
    let mut relations = Vec::new();
    for f in lat.flats() {
        let l = &f.lines;
        for x in 0..l.len() {
            for y in x + 1..l.len() {
                for z in y + 1..l.len() {
                    let (i, j, k) = (l[x], l[y], l[z]);
                    let mut row = vec![0u64; m];
                    row[pair[&(j, k)]] = 1;
                    row[pair[&(i, k)]] = p - 1;
                    row[pair[&(i, j)]] = 1;
                    relations.push(row);
                }
            }
        }
    }
    let base = rank_mod_p(relations.clone(), p);
    // image of e_j under a ∧ -
    let mut images = relations;
    for j in 0..n {
        let mut row = vec![0u64; m];
        for (i, &ai) in a.iter().enumerate() {
            if i < j {
                row[pair[&(i, j)]] = (row[pair[&(i, j)]] + ai) % p;
            } else if i > j {
                row[pair[&(j, i)]] = (row[pair[&(j, i)]] + p - ai) % p;
            }
        }
        images.push(row);
    }
    let image_rank = rank_mod_p(images, p) - base;
    let kernel = n - image_rank;
    let a_nonzero = a.iter().any(|&x| x != 0);
    kernel - usize::from(a_nonzero)
}

// ---------------------------------------------------------------------------
// Multinet axioms, checked naively

/// Restricted growth strings of length n with exactly k blocks.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..=used.min(k - 1) {
            cur.push(b);
            go(i + 1, n, k, used.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether (block, mult) is a multinet with gcd(mult) = 1.
pub fn is_multinet_naive(lat: &IntersectionLattice, block: &[usize], mult: &[u32], k: usize) -> bool {
    let n = lat.n();
    let g = mult.iter().fold(0u32, |g, &m| {
        let (mut a, mut b) = (g, m);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    });
    if g != 1 {
        return false;
    }
    let mut weight = vec![0u32; k];
    for h in 0..n {
        weight[block[h]] += mult[h];
    }
    if weight.iter().any(|&w| w != weight[0]) {
        return false;
    }
    let base: Vec<bool> = lat
        .flats()
        .iter()
        .map(|f| f.lines.iter().map(|&h| block[h]).collect::<BTreeSet<_>>().len() >= 2)
        .collect();
    for (f, flat) in lat.flats().iter().enumerate() {
        if !base[f] {
            continue;
        }
        let mut nx = vec![0u32; k];
        for &h in &flat.lines {
            nx[block[h]] += mult[h];
        }
        if nx.iter().any(|&v| v != nx[0]) {
            return false;
        }
    }
    for c in 0..k {
        let lines: Vec<usize> = (0..n).filter(|&h| block[h] == c).collect();
        let mut reached = vec![lines[0]];
        let mut frontier = vec![lines[0]];
        while let Some(h) = frontier.pop() {
            for &h2 in &lines {
                if !reached.contains(&h2) && !base[lat.flat_of_pair(h, h2)] {
                    reached.push(h2);
                    frontier.push(h2);
                }
            }
        }
        if reached.len() != lines.len() {
            return false;
        }
    }
    true
}

/// Every multinet with k classes and all m_H ≤ max_mult, as sorted
/// (classes, mult) pairs.
pub fn all_multinets_naive(lat: &IntersectionLattice, k: usize, max_mult: u32) -> BTreeSet<(Vec<Vec<usize>>, Vec<u32>)> {
    let n = lat.n();
    let mut out = BTreeSet::new();
    let total = (max_mult as usize).pow(n as u32);
    for block in set_partitions(n, k) {
        for code in 0..total {
            let mut c = code;
            let mult: Vec<u32> = (0..n)
                .map(|_| {
                    let m = (c % max_mult as usize) as u32 + 1;
                    c /= max_mult as usize;
                    m
                })
                .collect();
            if is_multinet_naive(lat, &block, &mult, k) {
                let mut classes: Vec<Vec<usize>> = (0..k).map(|b| (0..n).filter(|&h| block[h] == b).collect()).collect();
                classes.sort();
                out.insert((classes, mult));
            }
        }
    }
    out
}
