use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use serde::Serialize;

use super::{members, Arrangement, HSet};

#[derive(Clone, Debug, PartialEq)]
pub struct Flat {
    /// Every hyperplane containing the intersection subspace.
    pub set: HSet,
    /// Codimension of the intersection.
    pub rank: usize,
    /// Basis of the intersection subspace; `None` for abstract matroids.
    pub subspace_basis: Option<Vec<Vec<BigRational>>>,
}

impl Flat {
    pub fn size(&self) -> usize {
        self.set.count_ones() as usize
    }
}

/// The lattice of flats ordered by reverse inclusion of subspaces, i.e. by
/// inclusion of hyperplane sets.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    n: usize,
    ambient_dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
    index: HashMap<HSet, usize>,
    rank_starts: Vec<usize>,
}

/// Shape summary used to compare posets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetFingerprint {
    pub n: usize,
    pub ambient_dim: usize,
    pub rank: usize,
    /// `census[r]` lists the sizes of the rank-`r` flats, sorted.
    pub census: Vec<Vec<usize>>,
    pub mobius: Vec<i64>,
}

/// Builds the intersection poset breadth first: rank-(k+1) flats are closures
/// of rank-k flats extended by one hyperplane.
pub fn build_poset(a: &Arrangement) -> IntersectionPoset {
    let n = a.n();
    let mut levels: Vec<Vec<HSet>> = vec![vec![0]];
    loop {
        let last = levels.last().unwrap();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &f in last {
            for h in 0..n {
                if f >> h & 1 == 1 {
                    continue;
                }
                let c = a.closure(f | 1 << h);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable_by_key(|s| (s.count_ones(), s.reverse_bits()));
        levels.push(next);
    }
    let mut flats = Vec::new();
    let mut rank_starts = Vec::new();
    for (r, level) in levels.into_iter().enumerate() {
        rank_starts.push(flats.len());
        for set in level {
            flats.push(Flat { set, rank: r, subspace_basis: a.subspace_basis(set) });
        }
    }
    rank_starts.push(flats.len());
    let index = flats.iter().enumerate().map(|(i, f)| (f.set, i)).collect();

    // mu(bottom) = 1, mu(X) = -sum_{Y < X} mu(Y)
    let mut mobius = Vec::with_capacity(flats.len());
    for (i, x) in flats.iter().enumerate() {
        if i == 0 {
            mobius.push(1);
            continue;
        }
        let below: i64 = flats[..rank_starts[x.rank]]
            .iter()
            .zip(&mobius)
            .filter(|(y, _)| y.set & !x.set == 0)
            .map(|(_, m)| *m)
            .sum();
        mobius.push(-below);
    }
    IntersectionPoset { n, ambient_dim: a.ambient_dim(), flats, mobius, index, rank_starts }
}

impl IntersectionPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Rank of the arrangement (rank of the top flat).
    pub fn rank(&self) -> usize {
        self.rank_starts.len() - 2
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flats_of_rank(&self, r: usize) -> &[Flat] {
        if r + 1 >= self.rank_starts.len() {
            return &[];
        }
        &self.flats[self.rank_starts[r]..self.rank_starts[r + 1]]
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    pub fn mobius_of(&self, set: HSet) -> Option<i64> {
        self.index.get(&set).map(|&i| self.mobius[i])
    }

    pub fn flat_index(&self, set: HSet) -> Option<usize> {
        self.index.get(&set).copied()
    }

    /// Smallest flat containing `set`.
    pub fn closure(&self, set: HSet) -> &Flat {
        self.flats
            .iter()
            .find(|f| set & !f.set == 0)
            .expect("top flat contains everything")
    }

    pub fn rank_of(&self, set: HSet) -> usize {
        self.closure(set).rank
    }

    pub fn is_independent(&self, set: HSet) -> bool {
        self.rank_of(set) == set.count_ones() as usize
    }

    /// Rank-2 flats with at least `m` hyperplanes.
    pub fn multiple_points(&self, m: usize) -> Vec<HSet> {
        self.flats_of_rank(2)
            .iter()
            .filter(|f| f.size() >= m)
            .map(|f| f.set)
            .collect()
    }

    /// chi(t) = sum_X mu(X) t^{dim X}, ascending coefficients, degree = ambient
    /// dimension.
    pub fn characteristic_polynomial(&self) -> Vec<i64> {
        let mut chi = vec![0i64; self.ambient_dim + 1];
        for (f, m) in self.flats.iter().zip(&self.mobius) {
            chi[self.ambient_dim - f.rank] += m;
        }
        chi
    }

    /// Poincare polynomial sum_X |mu(X)| t^{rank X}.
    pub fn poincare_polynomial(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.rank() + 1];
        for (f, m) in self.flats.iter().zip(&self.mobius) {
            p[f.rank] += m.abs();
        }
        p
    }

    pub fn fingerprint(&self) -> PosetFingerprint {
        let census = (0..=self.rank())
            .map(|r| {
                let mut sizes: Vec<usize> = self.flats_of_rank(r).iter().map(Flat::size).collect();
                sizes.sort_unstable();
                sizes
            })
            .collect();
        let mut mobius = self.mobius.clone();
        mobius.sort_unstable();
        PosetFingerprint { n: self.n, ambient_dim: self.ambient_dim, rank: self.rank(), census, mobius }
    }

    /// Modularity: r(X) + r(Y) = r(X v Y) + r(X ^ Y) for every flat Y.
    pub fn is_modular(&self, x: &Flat) -> bool {
        self.flats.iter().all(|y| {
            let join = self.closure(x.set | y.set).rank;
            let meet = self.rank_of(x.set & y.set);
            x.rank + y.rank == join + meet
        })
    }

    /// Exponents along a maximal chain of modular flats, if one exists.
    pub fn supersolvable(&self) -> Option<Vec<usize>> {
        let r = self.rank();
        let modular: Vec<Vec<usize>> = (0..=r)
            .map(|k| {
                let start = self.rank_starts[k];
                self.flats_of_rank(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| self.is_modular(f))
                    .map(|(i, _)| start + i)
                    .collect()
            })
            .collect();
        // chain search from the top down: each step picks a modular flat of
        // the next lower rank contained in the current one
        fn search(
            poset: &IntersectionPoset,
            modular: &[Vec<usize>],
            current: usize,
            chain: &mut Vec<usize>,
        ) -> bool {
            let rank = poset.flats[current].rank;
            if rank == 0 {
                return true;
            }
            for &cand in &modular[rank - 1] {
                if poset.flats[cand].set & !poset.flats[current].set == 0 {
                    chain.push(cand);
                    if search(poset, modular, cand, chain) {
                        return true;
                    }
                    chain.pop();
                }
            }
            false
        }
        let top = self.flats.len() - 1;
        let mut chain = vec![top];
        if !search(self, &modular, top, &mut chain) {
            return None;
        }
        chain.reverse();
        let mut exps: Vec<usize> = chain
            .windows(2)
            .map(|w| self.flats[w[1]].size() - self.flats[w[0]].size())
            .collect();
        exps.sort_unstable();
        Some(exps)
    }

    /// Hyperplanes of flat `set`, as indices.
    pub fn members(&self, set: HSet) -> Vec<usize> {
        members(set).collect()
    }
}
