//! Dense matrices over an arbitrary [`Field`] with Gauss-Jordan elimination.

use crate::arith::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share `cols` entries.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self { field, rows: n, cols, data }
    }

    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let conv = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, conv)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// Adds `v` to entry `(r, c)`.
    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: &F::Elem) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| {
                        self.field.add(&acc, &self.field.mul(a, b))
                    })
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if self.field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = self.field.mul(a, other.get(k, c));
                    out.add_to(r, c, &prod);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.eliminate(true, usize::MAX)
    }

    /// Forward elimination (and back substitution when `full`). Stops once
    /// `stop_after` pivots have been found.
    fn eliminate(&mut self, full: bool, stop_after: usize) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows || pivots.len() >= stop_after {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            let start = if full { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub_mul(self.get(i, j), &factor, self.get(r, j));
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        m.eliminate(false, usize::MAX).len()
    }

    /// True when the rank exceeds `bound`; elimination stops as soon as the
    /// answer is known.
    pub fn rank_exceeds(&self, bound: usize) -> bool {
        let mut m = self.clone();
        m.eliminate(false, bound + 1).len() > bound
    }

    /// Rank together with a basis of the right nullspace `{v : m v = 0}`.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(row, free));
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `F^dim`.
///
/// Each stored row has a leading 1 at its pivot column and zeros in the pivot
/// columns of the rows inserted before it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<F::Elem>> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Remainder of `v` after reduction by the stored rows.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub_mul(x, &c, y);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v`; returns true if it was independent of the stored rows.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{PrimeField, Rationals};

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(Rationals, 3);
        let (rank, basis) = m.rank_nullspace();
        assert_eq!(rank, 3);
        assert!(basis.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace() {
        let m = Matrix::zeros(Rationals, 2, 3);
        let (rank, basis) = m.rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn triple_point_incidence_of_braid4() {
        // Rows: the four triple points of the braid arrangement on
        // hyperplanes 12,13,14,23,24,34. Columns: hyperplanes.
        let rows = vec![
            vec![1, 1, 0, 1, 0, 0], // {12,13,23}
            vec![1, 0, 1, 0, 1, 0], // {12,14,24}
            vec![0, 1, 1, 0, 0, 1], // {13,14,34}
            vec![0, 0, 0, 1, 1, 1], // {23,24,34}
        ];
        let m = Matrix::from_i64_rows(Rationals, &rows);
        let (rank, basis) = m.rank_nullspace();
        assert_eq!(rank, 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| *x == Rationals.zero()));
        }
    }

    #[test]
    fn rank_exceeds_early_exit() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64_rows(f, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
        assert_eq!(m.rank(), 2);
        assert!(m.rank_exceeds(1));
        assert!(!m.rank_exceeds(2));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(Rationals, 3);
        assert!(e.insert(&[Rationals.from_i64(1), Rationals.from_i64(2), Rationals.from_i64(0)]));
        assert!(e.insert(&[Rationals.from_i64(0), Rationals.from_i64(1), Rationals.from_i64(1)]));
        assert!(!e.insert(&[Rationals.from_i64(1), Rationals.from_i64(3), Rationals.from_i64(1)]));
        assert!(e.contains(&[Rationals.from_i64(2), Rationals.from_i64(5), Rationals.from_i64(1)]));
        assert_eq!(e.rank(), 2);
    }
}
