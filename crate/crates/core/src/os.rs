//! The Orlik-Solomon algebra A = E/I of an arrangement, with the
//! no-broken-circuit (NBC) monomial basis.
//!
//! Structure constants are integers, so one built algebra serves every field;
//! elements and multiplication matrices are produced over a chosen [`Field`].
//! Monomials are hyperplane bitmasks and `e_S` means the exterior product of
//! the generators in `S` taken in increasing order. Squares of generators
//! vanish in every characteristic.

use std::collections::HashMap;

use crate::arith::{Field, Matrix, MultiPoly};
use crate::arrangement::{members, HSet, IntersectionPoset};

type Expansion = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct OsAlgebra {
    n: usize,
    /// (flat set, rank), ascending by rank: the rank oracle
    flats: Vec<(HSet, usize)>,
    basis: Vec<Vec<HSet>>,
    index: Vec<HashMap<HSet, usize>>,
    /// NBC expansion of every independent monomial, per degree
    normal_forms: Vec<HashMap<HSet, Expansion>>,
    /// `left[k]`: entries (row in A^{k+1}, col in A^k, generator, value) of
    /// left multiplication by the generators
    left: Vec<Vec<(usize, usize, usize, i64)>>,
}

/// Sign of `e_A e_B` relative to `e_{A u B}` for disjoint `A`, `B`.
pub fn merge_sign(a: HSet, b: HSet) -> i64 {
    let mut inversions = 0;
    for j in members(b) {
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OsElement<F: Field> {
    pub degree: usize,
    pub coeffs: Vec<F::Elem>,
}

impl OsAlgebra {
    /// NBC bases and normal forms, using the input order of the hyperplanes.
    pub fn build(poset: &IntersectionPoset) -> Self {
        let flats: Vec<(HSet, usize)> = poset.flats().iter().map(|f| (f.set, f.rank)).collect();
        let n = poset.n();
        let rank = poset.rank();
        let mut alg = OsAlgebra {
            n,
            flats,
            basis: Vec::new(),
            index: Vec::new(),
            normal_forms: Vec::new(),
            left: Vec::new(),
        };

        // independent sets by degree, grown by appending larger elements
        let mut independent: Vec<Vec<HSet>> = vec![vec![0]];
        for k in 1..=rank {
            let mut next = Vec::new();
            for &s in &independent[k - 1] {
                let start = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
                for h in start..n {
                    let t = s | 1 << h;
                    if alg.rank_of(t) == k {
                        next.push(t);
                    }
                }
            }
            independent.push(next);
        }

        for level in &independent {
            let mut nbc: Vec<HSet> = level.iter().copied().filter(|&s| alg.is_nbc(s)).collect();
            nbc.sort_unstable_by_key(|s| lex_key(*s));
            alg.index.push(nbc.iter().enumerate().map(|(i, s)| (*s, i)).collect());
            alg.basis.push(nbc);
        }
        for (k, level) in independent.iter().enumerate() {
            let mut memo: HashMap<HSet, Expansion> = HashMap::new();
            let mut sorted = level.clone();
            sorted.sort_unstable_by_key(|s| lex_key(*s));
            for s in sorted {
                alg.rewrite(k, s, &mut memo);
            }
            alg.normal_forms.push(memo);
        }
        for k in 0..rank {
            let mut entries = Vec::new();
            for (col, &s) in alg.basis[k].iter().enumerate() {
                for i in 0..n {
                    if s >> i & 1 == 1 {
                        continue;
                    }
                    let sign = merge_sign(1 << i, s);
                    for &(row, c) in alg.normal_form(s | 1 << i) {
                        entries.push((row, col, i, sign * c));
                    }
                }
            }
            alg.left.push(entries);
        }
        alg
    }

    fn rank_of(&self, set: HSet) -> usize {
        self.flats
            .iter()
            .find(|(f, _)| set & !f == 0)
            .map(|(_, r)| *r)
            .expect("top flat")
    }

    fn closure(&self, set: HSet) -> HSet {
        self.flats
            .iter()
            .find(|(f, _)| set & !f == 0)
            .map(|(f, _)| *f)
            .expect("top flat")
    }

    fn is_independent(&self, set: HSet) -> bool {
        self.rank_of(set) == set.count_ones() as usize
    }

    /// `S = {s_1 < ... < s_k}` is NBC iff it is independent and each `s_j` is
    /// the least element of the flat spanned by `s_j, ..., s_k`.
    fn is_nbc(&self, set: HSet) -> bool {
        self.is_independent(set) && self.first_broken_tail(set).is_none()
    }

    /// A tail `T = {s_j..s_k}` whose closure has a least element below `s_j`,
    /// together with that element.
    fn first_broken_tail(&self, set: HSet) -> Option<(HSet, usize)> {
        let elems: Vec<usize> = members(set).collect();
        for j in (0..elems.len()).rev() {
            let tail = elems[j..].iter().fold(0u64, |acc, &e| acc | 1 << e);
            let least = self.closure(tail).trailing_zeros() as usize;
            if least < elems[j] {
                return Some((tail, least));
            }
        }
        None
    }

    fn rewrite(&self, k: usize, s: HSet, memo: &mut HashMap<HSet, Expansion>) -> Expansion {
        if let Some(e) = memo.get(&s) {
            return e.clone();
        }
        let out = if let Some(&i) = self.index[k].get(&s) {
            vec![(i, 1)]
        } else {
            let (tail, h) = self.first_broken_tail(s).expect("non-NBC independent set");
            // shrink tail + h to a circuit; every dependent subset contains h
            let mut circuit = tail | 1 << h;
            for t in members(tail) {
                let smaller = circuit & !(1 << t);
                if !self.is_independent(smaller) {
                    circuit = smaller;
                }
            }
            let broken = circuit & !(1 << h);
            let rest = s & !broken;
            let outer = merge_sign(broken, rest);
            // e_broken = sum_{m >= 1} (-1)^{m+1} e_{C - c_m}
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for (m, c) in members(circuit).enumerate().skip(1) {
                let part = circuit & !(1 << c);
                let target = part | rest;
                if !self.is_independent(target) {
                    continue;
                }
                let sign = outer * if m % 2 == 1 { 1 } else { -1 } * merge_sign(part, rest);
                for (idx, coeff) in self.rewrite(k, target, memo) {
                    *acc.entry(idx).or_insert(0) += sign * coeff;
                }
            }
            let mut v: Expansion = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            v.sort_unstable();
            v
        };
        memo.insert(s, out.clone());
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Top nonzero degree (the rank of the arrangement).
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    pub fn basis(&self, k: usize) -> &[HSet] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn basis_index(&self, k: usize, s: HSet) -> Option<usize> {
        self.index.get(k)?.get(&s).copied()
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Expansion of `e_S` in the NBC basis of degree |S|; empty when `S` is
    /// dependent (then `e_S` lies in the ideal).
    pub fn normal_form(&self, s: HSet) -> &[(usize, i64)] {
        let k = s.count_ones() as usize;
        self.normal_forms
            .get(k)
            .and_then(|m| m.get(&s))
            .map_or(&[], Vec::as_slice)
    }

    /// Product of NBC basis monomials `e_S e_T`, expanded in the NBC basis.
    pub fn basis_product(&self, s: HSet, t: HSet) -> Vec<(usize, i64)> {
        if s & t != 0 {
            return Vec::new();
        }
        let sign = merge_sign(s, t);
        self.normal_form(s | t)
            .iter()
            .map(|&(i, c)| (i, sign * c))
            .collect()
    }

    pub fn element<F: Field>(&self, field: &F, degree: usize, coeffs: Vec<F::Elem>) -> OsElement<F> {
        assert_eq!(coeffs.len(), self.dim(degree));
        let _ = field;
        OsElement { degree, coeffs }
    }

    /// The degree-one element sum_i a_i e_i.
    pub fn degree_one<F: Field>(&self, field: &F, a: &[F::Elem]) -> OsElement<F> {
        assert_eq!(a.len(), self.n);
        let mut coeffs = vec![field.zero(); self.dim(1)];
        for (i, x) in a.iter().enumerate() {
            let idx = self.basis_index(1, 1 << i).expect("generators are NBC");
            coeffs[idx] = x.clone();
        }
        OsElement { degree: 1, coeffs }
    }

    pub fn multiply<F: Field>(&self, field: &F, x: &OsElement<F>, y: &OsElement<F>) -> OsElement<F> {
        let degree = x.degree + y.degree;
        let dim = self.dim(degree);
        let mut coeffs = vec![field.zero(); dim];
        if dim == 0 {
            return OsElement { degree, coeffs };
        }
        for (i, a) in x.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            let s = self.basis[x.degree][i];
            for (j, b) in y.coeffs.iter().enumerate() {
                if field.is_zero(b) {
                    continue;
                }
                let ab = field.mul(a, b);
                for (idx, c) in self.basis_product(s, self.basis[y.degree][j]) {
                    let term = field.mul(&ab, &field.from_i64(c));
                    coeffs[idx] = field.add(&coeffs[idx], &term);
                }
            }
        }
        OsElement { degree, coeffs }
    }

    /// Matrix of left multiplication by sum_i a_i e_i from A^k to A^{k+1}.
    pub fn multiplication_matrix<F: Field>(&self, field: &F, a: &[F::Elem], k: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(field.clone(), self.dim(k + 1), self.dim(k));
        if let Some(entries) = self.left.get(k) {
            for &(row, col, g, v) in entries {
                if field.is_zero(&a[g]) {
                    continue;
                }
                let term = field.mul(&a[g], &field.from_i64(v));
                m.add_to(row, col, &term);
            }
        }
        m
    }

    /// Same as [`Self::multiplication_matrix`] with polynomial weights.
    pub fn multiplication_matrix_poly(&self, a: &[MultiPoly], k: usize) -> Vec<Vec<MultiPoly>> {
        let vars = a[0].vars().clone();
        let mut m = vec![vec![MultiPoly::zero(&vars); self.dim(k)]; self.dim(k + 1)];
        if let Some(entries) = self.left.get(k) {
            for &(row, col, g, v) in entries {
                let term = a[g].scale(&crate::arith::qi(v));
                m[row][col] = m[row][col].add(&term);
            }
        }
        m
    }
}

fn lex_key(s: HSet) -> Vec<usize> {
    members(s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Echelon, PrimeField, Rationals};
    use crate::arrangement::{boolean, braid, build_poset, hessian, set_of};

    fn os(a: &crate::arrangement::Arrangement) -> OsAlgebra {
        OsAlgebra::build(&build_poset(a))
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(os(&braid(3).unwrap()).hilbert_series(), vec![1, 3, 2]);
        assert_eq!(os(&braid(4).unwrap()).hilbert_series(), vec![1, 6, 11, 6]);
        assert_eq!(os(&boolean(4).unwrap()).hilbert_series(), vec![1, 4, 6, 4, 1]);
        let one = crate::arrangement::Arrangement::from_i64(2, &[vec![1, 0]]).unwrap();
        assert_eq!(os(&one).hilbert_series(), vec![1, 1]);
        assert_eq!(os(&hessian().unwrap()).hilbert_series(), vec![1, 12, 39, 28]);
    }

    #[test]
    fn square_of_generator_vanishes() {
        let a = os(&braid(3).unwrap());
        let f = Rationals;
        let e1 = a.degree_one(&f, &[f.one(), f.zero(), f.zero()]);
        let sq = a.multiply(&f, &e1, &e1);
        assert!(sq.coeffs.iter().all(|c| f.is_zero(c)));
    }

    #[test]
    fn braid3_rewrite() {
        // hyperplanes (12),(13),(23); e_2 e_3 is not NBC
        let a = os(&braid(3).unwrap());
        assert_eq!(a.basis(2), &[set_of(&[0, 1]), set_of(&[0, 2])]);
        // boundary of e_1e_2e_3 = e_2e_3 - e_1e_3 + e_1e_2 = 0
        let nf = a.normal_form(set_of(&[1, 2]));
        assert_eq!(nf, &[(0, -1), (1, 1)]); // e_2e_3 = e_1e_3 - e_1e_2
    }

    #[test]
    fn product_beyond_top_degree_is_zero() {
        let a = os(&braid(3).unwrap());
        let f = Rationals;
        let x = a.element(&f, 2, vec![f.one(), f.one()]);
        let y = a.degree_one(&f, &[f.one(), f.from_i64(2), f.from_i64(3)]);
        let z = a.multiply(&f, &x, &y);
        assert_eq!(z.degree, 3);
        assert!(z.coeffs.is_empty());
    }

    /// Independent oracle: the OS ideal in degree k spanned by e_T * d(e_C)
    /// for circuits C, computed by brute force over all subsets.
    fn ideal_contains_difference(a: &OsAlgebra, arr: &crate::arrangement::Arrangement) {
        let n = arr.n();
        let f = Rationals;
        let dependent = |s: HSet| arr.rank_of(s) < s.count_ones() as usize;
        let circuits: Vec<HSet> = (1..1u64 << n)
            .filter(|&s| dependent(s) && members(s).all(|i| !dependent(s & !(1 << i))))
            .collect();
        for k in 1..=a.top_degree() {
            let subsets: Vec<HSet> = (0..1u64 << n).filter(|s| s.count_ones() as usize == k).collect();
            let pos: HashMap<HSet, usize> = subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            let mut ideal = Echelon::new(f, subsets.len());
            for &c in &circuits {
                let boundary: Vec<(HSet, i64)> = members(c)
                    .enumerate()
                    .map(|(m, x)| (c & !(1 << x), if m % 2 == 0 { 1 } else { -1 }))
                    .collect();
                let bdeg = c.count_ones() as usize - 1;
                if bdeg > k {
                    continue;
                }
                for t in (0..1u64 << n).filter(|t| t.count_ones() as usize + bdeg == k) {
                    let mut v = vec![f.zero(); subsets.len()];
                    for &(b, sgn) in &boundary {
                        if b & t != 0 {
                            continue;
                        }
                        let i = pos[&(b | t)];
                        v[i] = f.add(&v[i], &f.from_i64(sgn * merge_sign(t, b)));
                    }
                    ideal.insert(&v);
                }
            }
            assert_eq!(subsets.len() - ideal.rank(), a.dim(k), "degree {k} dimension");
            for &s in &subsets {
                let mut v = vec![f.zero(); subsets.len()];
                v[pos[&s]] = f.one();
                for &(idx, c) in a.normal_form(s) {
                    let b = a.basis(k)[idx];
                    v[pos[&b]] = f.sub(&v[pos[&b]], &f.from_i64(c));
                }
                assert!(ideal.contains(&v), "normal form of {s:b} off by an ideal element");
            }
        }
    }

    #[test]
    fn normal_forms_agree_with_brute_force_ideal() {
        for a in [braid(4).unwrap(), crate::arrangement::generic(4, 3).unwrap(), crate::arrangement::cube_symmetry().unwrap()] {
            ideal_contains_difference(&os(&a), &a);
        }
    }

    #[test]
    fn graded_commutativity_mod_p() {
        let arr = braid(4).unwrap();
        let a = os(&arr);
        let f = PrimeField::new(5).unwrap();
        let x = a.degree_one(&f, &[1, 2, 3, 4, 0, 1]);
        let y = a.element(&f, 2, (0..11).map(|i| (i * 3 % 5) as u64).collect());
        let xy = a.multiply(&f, &x, &y);
        let yx = a.multiply(&f, &y, &x);
        assert_eq!(xy, yx); // (-1)^{1*2} = 1
        let z = a.degree_one(&f, &[0, 1, 1, 2, 3, 4]);
        let xz = a.multiply(&f, &x, &z);
        let zx = a.multiply(&f, &z, &x);
        let neg: Vec<u64> = zx.coeffs.iter().map(|c| f.neg(c)).collect();
        assert_eq!(xz.coeffs, neg);
    }
}
