//! Free Lie algebra on `n` generators in the Lyndon basis. Basis elements are
//! Lyndon words bracketed by their standard factorization.

use std::collections::{BTreeMap, HashMap};

pub type Word = Vec<u8>;
/// Integer combination of Lyndon basis elements of one degree.
pub type LieElem = BTreeMap<Word, i64>;

/// Lyndon words over `0..n` of every length `1..=max_len`, grouped by
/// length and sorted lexicographically (Duval's generation).
pub fn lyndon_words(n: usize, max_len: usize) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new(); max_len + 1];
    if n == 0 || max_len == 0 {
        return out;
    }
    let top = (n - 1) as u8;
    let mut w: Word = vec![0];
    loop {
        out[w.len()].push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    for v in &mut out {
        v.sort();
    }
    out
}

/// Number of Lyndon words of length `k` over `n` letters.
pub fn witt_dimension(n: u64, k: u32) -> u64 {
    (1..=k)
        .filter(|d| k % d == 0)
        .map(|d| mobius(k / d) as i128 * (n as i128).pow(d))
        .sum::<i128>() as u64
        / k as u64
}

fn mobius(mut m: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

/// `w = u v` with `v` the longest proper suffix that is Lyndon.
pub fn standard_factorization(w: &[u8]) -> (Word, Word) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("word of length >= 2");
    (w[..i].to_vec(), w[i..].to_vec())
}

#[derive(Debug, Default)]
pub struct FreeLie {
    memo: HashMap<(Word, Word), LieElem>,
}

fn add_into(target: &mut LieElem, c: i64, v: &LieElem) {
    for (w, x) in v {
        let e = target.entry(w.clone()).or_insert(0);
        *e += c * x;
        if *e == 0 {
            target.remove(w);
        }
    }
}

impl FreeLie {
    pub fn new() -> Self {
        Self::default()
    }

    /// [P(u), P(v)] for Lyndon words `u`, `v`.
    pub fn bracket_words(&mut self, u: &[u8], v: &[u8]) -> LieElem {
        if u == v {
            return LieElem::new();
        }
        if u > v {
            let mut r = self.bracket_words(v, u);
            r.values_mut().for_each(|x| *x = -*x);
            return r;
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let result = if u.len() == 1 {
            LieElem::from([([u, v].concat(), 1)])
        } else {
            let (u1, u2) = standard_factorization(u);
            if u2.as_slice() >= v {
                LieElem::from([([u, v].concat(), 1)])
            } else {
                // [[u1, u2], v] = [[u1, v], u2] + [u1, [u2, v]]
                let a = self.bracket_words(&u1, v);
                let b = self.bracket_words(&u2, v);
                let mut r = self.bracket(&a, &LieElem::from([(u2.clone(), 1)]));
                let s = self.bracket(&LieElem::from([(u1.clone(), 1)]), &b);
                add_into(&mut r, 1, &s);
                r
            }
        };
        self.memo.insert(key, result.clone());
        result
    }

    pub fn bracket(&mut self, x: &LieElem, y: &LieElem) -> LieElem {
        let mut out = LieElem::new();
        for (u, a) in x {
            for (v, b) in y {
                let r = self.bracket_words(u, v);
                add_into(&mut out, a * b, &r);
            }
        }
        out
    }
}
