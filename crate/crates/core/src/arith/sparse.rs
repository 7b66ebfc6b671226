//! Sparse rational vectors and an incremental echelon basis over them. Used
//! where the ambient dimension is in the thousands but vectors stay short.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

pub type SparseVec = BTreeMap<usize, BigRational>;

pub fn add_scaled(target: &mut SparseVec, c: &BigRational, v: &SparseVec) {
    for (k, x) in v {
        let e = target.entry(*k).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    dim: usize,
    /// pivot column -> row whose smallest column is the pivot, with entry 1
    rows: HashMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Pivot rows in increasing pivot order.
    pub fn sorted_rows(&self) -> Vec<&SparseVec> {
        let mut keys: Vec<_> = self.rows.keys().copied().collect();
        keys.sort_unstable();
        keys.iter().map(|k| &self.rows[k]).collect()
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = next else { break };
            let row = &self.rows[&col];
            add_scaled(&mut v, &(-coeff), row);
            cursor = col + 1;
        }
        v
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseVec = r.iter().map(|(k, x)| (*k, x * &inv)).collect();
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}
