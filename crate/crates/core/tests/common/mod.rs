//! Test-only oracles. Everything here is computed from scratch (plain
//! Gaussian elimination, subset sums, sampling) without calling the
//! library's poset, OS or Lie code.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use hyperarr::arrangement::Arrangement;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for j in c..cols {
                    let v = &m[rank][j] * &f;
                    m[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: u64| {
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
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]);
        for j in c..cols {
            m[rank][j] = m[rank][j] * iv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..cols {
                    m[r][j] = (m[r][j] + p * p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subset_rank(arr: &Arrangement, set: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if let Some(&r) = memo.get(&set) {
        return r;
    }
    let normals = arr.normals().expect("realized");
    let rows: Vec<Vec<BigRational>> =
        (0..arr.n()).filter(|i| set >> i & 1 == 1).map(|i| normals[i].clone()).collect();
    let r = rank_q(&rows);
    memo.insert(set, r);
    r
}

/// chi(t) = sum over subsets S of (-1)^|S| t^(l - rank S), ascending.
pub fn whitney_charpoly(arr: &Arrangement) -> Vec<i64> {
    let l = arr.ambient_dim();
    let mut chi = vec![0i64; l + 1];
    let mut memo = HashMap::new();
    for s in 0..(1u64 << arr.n()) {
        let r = subset_rank(arr, s, &mut memo);
        let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
        chi[l - r] += sign;
    }
    chi
}

/// Deletion-restriction recursion down to the empty arrangement.
pub fn deletion_restriction_charpoly(arr: &Arrangement) -> Vec<i64> {
    let l = arr.ambient_dim();
    if arr.n() == 0 {
        let mut v = vec![0; l + 1];
        v[l] = 1;
        return v;
    }
    let del = deletion_restriction_charpoly(&arr.deletion(arr.n() - 1).unwrap());
    let res = deletion_restriction_charpoly(&arr.restriction(arr.n() - 1).unwrap());
    let mut out = del;
    out.resize(l + 1, 0);
    for (k, c) in res.iter().enumerate() {
        out[k] -= c;
    }
    out
}

/// Distinct flats per rank: closures of every subset.
pub fn brute_flat_counts(arr: &Arrangement) -> Vec<usize> {
    let n = arr.n();
    let mut memo = HashMap::new();
    let mut flats: HashSet<u64> = HashSet::new();
    for s in 0..(1u64 << n) {
        let r = subset_rank(arr, s, &mut memo);
        let closure = (0..n).fold(s, |c, i| {
            if subset_rank(arr, s | 1 << i, &mut memo) == r {
                c | 1 << i
            } else {
                c
            }
        });
        flats.insert(closure);
    }
    let top = subset_rank(arr, (1u64 << n) - 1, &mut memo);
    let mut counts = vec![0; top + 1];
    for f in flats {
        counts[subset_rank(arr, f, &mut memo)] += 1;
    }
    counts
}

/// Distinct sign vectors of `samples` random points: a lower bound on the
/// number of regions that is attained once every chamber is hit.
pub fn sampled_regions(arr: &Arrangement, samples: usize, seed: u64) -> usize {
    let normals: Vec<Vec<f64>> = arr
        .normals()
        .expect("realized")
        .iter()
        .map(|v| v.iter().map(rat_to_f64).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    for _ in 0..samples {
        let x: Vec<f64> = (0..arr.ambient_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sig: Vec<bool> = normals
            .iter()
            .map(|n| n.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() > 0.0)
            .collect();
        seen.insert(sig);
    }
    seen.len()
}

fn rat_to_f64(q: &BigRational) -> f64 {
    let s = if q.is_negative() { -1.0 } else { 1.0 };
    let n: f64 = q.numer().abs().to_string().parse().unwrap();
    let d: f64 = q.denom().to_string().parse().unwrap();
    s * n / d
}

/// Minimal dependent subsets of a realized arrangement.
pub fn circuits(arr: &Arrangement) -> Vec<u64> {
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for s in 1..(1u64 << arr.n()) {
        let k = s.count_ones() as usize;
        if subset_rank(arr, s, &mut memo) != k - 1 {
            continue;
        }
        let minimal = (0..arr.n())
            .filter(|i| s >> i & 1 == 1)
            .all(|i| subset_rank(arr, s & !(1 << i), &mut memo) == k - 1);
        if minimal {
            out.push(s);
        }
    }
    out
}

fn wedge_sign(t: u64, u: u64) -> i64 {
    // e_T e_U = sign e_{T|U}: count pairs (i in T, j in U) with i > j
    let mut inv = 0;
    let mut tt = t;
    while tt != 0 {
        let i = tt.trailing_zeros();
        inv += (u & ((1u64 << i) - 1)).count_ones();
        tt &= tt - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    (0..(1u64 << n)).filter(|s| s.count_ones() as usize == k).collect()
}

/// dim (E / I)^k with I generated by the boundaries of circuits, over F_p.
pub fn os_dims_oracle(arr: &Arrangement, max_k: usize, p: u64) -> Vec<usize> {
    let n = arr.n();
    let circ = circuits(arr);
    let mut dims = Vec::new();
    for k in 0..=max_k {
        let basis = k_subsets(n, k);
        let index: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut rows = Vec::new();
        for &c in &circ {
            let m = c.count_ones() as usize;
            if m > k + 1 {
                continue;
            }
            let boundary: Vec<(u64, i64)> = (0..n)
                .filter(|i| c >> i & 1 == 1)
                .enumerate()
                .map(|(j, i)| (c & !(1 << i), if j % 2 == 0 { 1 } else { -1 }))
                .collect();
            for t in k_subsets(n, k + 1 - m) {
                let mut row = vec![0u64; basis.len()];
                let mut nonzero = false;
                for &(u, s) in &boundary {
                    if t & u != 0 {
                        continue;
                    }
                    let v = s * wedge_sign(t, u);
                    let e = &mut row[index[&(t | u)]];
                    *e = (*e + if v > 0 { 1 } else { p - 1 }) % p;
                    nonzero = true;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let r = if rows.is_empty() { 0 } else { rank_mod_p(rows, p) };
        dims.push(basis.len() - r);
    }
    dims
}

fn mobius_mu(mut k: u64) -> i64 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            k /= d;
            if k % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if k > 1 {
        mu = -mu;
    }
    mu
}

/// Necklace count (1/k) sum_{d | k} mu(k/d) m^d.
pub fn necklace(m: i64, k: u64) -> i64 {
    let s: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius_mu(k / d) * m.pow(d as u32)).sum();
    s / k as i64
}

/// phi_k with prod_k (1 - t^k)^phi_k = prod_i (1 - e_i t).
pub fn lcs_from_exponents(e: &[i64], max_k: u64) -> Vec<i64> {
    (1..=max_k).map(|k| e.iter().map(|&m| necklace(m, k)).sum()).collect()
}
