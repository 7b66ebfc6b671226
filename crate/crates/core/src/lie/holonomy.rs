//! The holonomy Lie algebra h = L(x_1..x_n) / ideal generated by
//! [x_i, sum_{j in X} x_j] for every rank-2 flat X and i in X, computed
//! degree by degree over Q.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use super::free::{lyndon_words, witt_dimension, FreeLie, Word};
use crate::arith::sparse::{add_scaled, SparseEchelon, SparseVec};
use crate::arrangement::{members, IntersectionPoset};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 6;
/// Largest total number of Lyndon words (all degrees) handled.
pub const DEFAULT_WITT_LIMIT: u64 = 250_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieRanks {
    /// phi_1..phi_N
    pub phi: Vec<u64>,
    /// theta_1..theta_N, from h / h''
    pub theta: Vec<u64>,
}

impl LieRanks {
    pub fn phi(&self, k: usize) -> u64 {
        self.phi[k - 1]
    }

    pub fn theta(&self, k: usize) -> u64 {
        self.theta[k - 1]
    }
}

struct Ambient {
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    lie: FreeLie,
}

impl Ambient {
    fn to_sparse(&self, e: &super::free::LieElem, k: usize) -> SparseVec {
        e.iter()
            .map(|(w, &c)| (self.index[k][w], BigRational::from_integer(c.into())))
            .collect()
    }

    /// [P(u), v] for a word u of degree a and v in degree b coordinates.
    fn bracket_with(&mut self, u: &Word, v: &SparseVec, b: usize) -> SparseVec {
        let k = u.len() + b;
        let mut out = SparseVec::new();
        for (&j, c) in v {
            let w = self.words[b][j].clone();
            let r = self.lie.bracket_words(u, &w);
            let s = self.to_sparse(&r, k);
            add_scaled(&mut out, c, &s);
        }
        out
    }
}

/// phi_k = dim h_k and theta_k = dim (h / h'')_k for k = 1..=max_degree.
pub fn lie_ranks(poset: &IntersectionPoset, max_degree: usize, witt_limit: u64) -> Result<LieRanks> {
    let n = poset.n();
    if max_degree == 0 {
        return Ok(LieRanks { phi: Vec::new(), theta: Vec::new() });
    }
    let total: u64 = (1..=max_degree as u32).map(|k| witt_dimension(n as u64, k)).sum();
    if total > witt_limit {
        return Err(Error::Resource(format!(
            "free Lie algebra on {n} generators through degree {max_degree} has {total} basis elements, over the limit of {witt_limit}"
        )));
    }
    let words = lyndon_words(n, max_degree);
    let index = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
        .collect();
    let mut amb = Ambient { words, index, lie: FreeLie::new() };
    let mut ideal: Vec<SparseEchelon> = (0..=max_degree)
        .map(|k| SparseEchelon::new(amb.words[k].len()))
        .collect();
    if max_degree >= 2 {
        for f in poset.flats_of_rank(2) {
            for i in members(f.set) {
                let x = vec![i as u8];
                let mut rel = SparseVec::new();
                for j in members(f.set).filter(|&j| j != i) {
                    let r = amb.lie.bracket_words(&x, &[j as u8]);
                    let s = amb.to_sparse(&r, 2);
                    add_scaled(&mut rel, &BigRational::from_integer(1.into()), &s);
                }
                ideal[2].insert(&rel);
            }
        }
    }
    for k in 3..=max_degree {
        let prev: Vec<SparseVec> = ideal[k - 1].sorted_rows().into_iter().cloned().collect();
        for i in 0..n {
            let x = vec![i as u8];
            for r in &prev {
                let v = amb.bracket_with(&x, r, k - 1);
                ideal[k].insert(&v);
            }
        }
    }
    let phi: Vec<u64> = (1..=max_degree)
        .map(|k| (amb.words[k].len() - ideal[k].rank()) as u64)
        .collect();
    // complement representatives: non-pivot Lyndon words
    let reps: Vec<Vec<Word>> = (0..=max_degree)
        .map(|k| {
            (0..amb.words[k].len())
                .filter(|&j| !ideal[k].is_pivot(j))
                .map(|j| amb.words[k][j].clone())
                .collect()
        })
        .collect();
    let mut theta = phi.clone();
    for k in 4..=max_degree {
        let mut span = ideal[k].clone();
        for a in 2..=k / 2 {
            let b = k - a;
            for u in &reps[a] {
                for v in &reps[b] {
                    let r = amb.lie.bracket_words(u, v);
                    let s = amb.to_sparse(&r, k);
                    span.insert(&s);
                }
            }
        }
        theta[k - 1] = (amb.words[k].len() - span.rank()) as u64;
    }
    Ok(LieRanks { phi, theta })
}
