//! Central hyperplane arrangements, realized over the rationals or given by
//! an abstract rank-3 matroid.

mod catalog;
mod format;
mod poset;
mod regions;

pub use catalog::{braid, boolean, catalog, ceva, cube_symmetry, generic, graphic, hessian};
pub use format::{parse_arrangement, write_arrangement};
pub use poset::{build_poset, Flat, IntersectionPoset, PosetFingerprint};
pub use regions::{count_regions, RegionCount};

use num_rational::BigRational;
use num_traits::Zero;
use std::sync::Arc;

use crate::arith::{Field, Matrix, MultiPoly, Rationals};
use crate::error::{Error, Result};

/// Hyperplane index sets are bitmasks; arrangements hold at most 64
/// hyperplanes.
pub type HSet = u64;

pub const MAX_HYPERPLANES: usize = 64;

pub fn members(set: HSet) -> impl Iterator<Item = usize> {
    (0..MAX_HYPERPLANES).filter(move |i| set >> i & 1 == 1)
}

pub fn set_of(indices: &[usize]) -> HSet {
    indices.iter().fold(0, |acc, &i| acc | 1 << i)
}

pub fn full_set(n: usize) -> HSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A simple rank-3 matroid given by its lines: the rank-2 flats with at least
/// three elements. Any other pair of elements spans a flat of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankThreeMatroid {
    n: usize,
    lines: Vec<HSet>,
}

impl RankThreeMatroid {
    pub fn new(n: usize, mut lines: Vec<HSet>) -> Result<Self> {
        if n > MAX_HYPERPLANES {
            return Err(Error::InvalidArrangement(format!(
                "at most {MAX_HYPERPLANES} elements supported"
            )));
        }
        for (i, l) in lines.iter().enumerate() {
            if l.count_ones() < 3 {
                return Err(Error::InvalidArrangement(format!(
                    "dependent flat {} has fewer than three elements",
                    i + 1
                )));
            }
            if *l & !full_set(n) != 0 {
                return Err(Error::InvalidArrangement(format!(
                    "dependent flat {} mentions an element beyond {n}",
                    i + 1
                )));
            }
            for m in &lines[..i] {
                if (l & m).count_ones() > 1 {
                    return Err(Error::InvalidArrangement(
                        "two dependent flats share more than one element".into(),
                    ));
                }
            }
        }
        if n < 3 || lines.iter().any(|&l| l == full_set(n)) {
            return Err(Error::InvalidArrangement(
                "abstract matroid does not have rank 3".into(),
            ));
        }
        lines.sort_unstable();
        Ok(Self { n, lines })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[HSet] {
        &self.lines
    }

    pub fn rank_of(&self, set: HSet) -> usize {
        match set.count_ones() {
            0 => 0,
            1 => 1,
            2 => 2,
            _ if self.lines.iter().any(|&l| set & !l == 0) => 2,
            _ => 3,
        }
    }

    pub fn closure(&self, set: HSet) -> HSet {
        match self.rank_of(set) {
            0 | 1 => set,
            2 => self
                .lines
                .iter()
                .copied()
                .find(|&l| set & !l == 0)
                .unwrap_or(set),
            _ => full_set(self.n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Realization {
    /// Normal vectors in Q^dim; hyperplane i is the kernel of normal i.
    Linear {
        dim: usize,
        normals: Vec<Vec<BigRational>>,
    },
    Matroid(RankThreeMatroid),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    realization: Realization,
    multiplicities: Vec<u32>,
    labels: Vec<String>,
}

impl Arrangement {
    /// A central arrangement in Q^dim. Normals must be nonzero and pairwise
    /// non-proportional.
    pub fn linear(dim: usize, normals: Vec<Vec<BigRational>>) -> Result<Self> {
        if normals.len() > MAX_HYPERPLANES {
            return Err(Error::InvalidArrangement(format!(
                "at most {MAX_HYPERPLANES} hyperplanes supported"
            )));
        }
        for (i, v) in normals.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidArrangement(format!(
                    "normal {} has {} entries, expected {dim}",
                    i + 1,
                    v.len()
                )));
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArrangement(format!(
                    "normal {} is the zero vector",
                    i + 1
                )));
            }
            for (j, w) in normals[..i].iter().enumerate() {
                let m = Matrix::from_rows(Rationals, dim, vec![v.clone(), w.clone()]);
                if m.rank() < 2 {
                    return Err(Error::InvalidArrangement(format!(
                        "normals {} and {} are proportional; use a multiplicity instead",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let n = normals.len();
        Ok(Self {
            realization: Realization::Linear { dim, normals },
            multiplicities: vec![1; n],
            labels: (1..=n).map(|i| format!("H{i}")).collect(),
        })
    }

    pub fn from_i64(dim: usize, normals: &[Vec<i64>]) -> Result<Self> {
        let conv = normals
            .iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect();
        Self::linear(dim, conv)
    }

    pub fn abstract_matroid(m: RankThreeMatroid) -> Self {
        let n = m.n();
        Self {
            realization: Realization::Matroid(m),
            multiplicities: vec![1; n],
            labels: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArrangement("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_multiplicities(mut self, mults: Vec<u32>) -> Result<Self> {
        if mults.len() != self.n() || mults.contains(&0) {
            return Err(Error::InvalidArrangement(
                "multiplicities must be positive, one per hyperplane".into(),
            ));
        }
        self.multiplicities = mults;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        match &self.realization {
            Realization::Linear { normals, .. } => normals.len(),
            Realization::Matroid(m) => m.n(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.realization {
            Realization::Linear { dim, .. } => *dim,
            Realization::Matroid(_) => 3,
        }
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn is_realized(&self) -> bool {
        matches!(self.realization, Realization::Linear { .. })
    }

    pub fn normals(&self) -> Option<&[Vec<BigRational>]> {
        match &self.realization {
            Realization::Linear { normals, .. } => Some(normals),
            Realization::Matroid(_) => None,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn normal_matrix(&self, set: HSet) -> Matrix<Rationals> {
        let normals = self.normals().expect("linear realization");
        let rows: Vec<_> = members(set).map(|i| normals[i].clone()).collect();
        Matrix::from_rows(Rationals, self.ambient_dim(), rows)
    }

    pub fn rank_of(&self, set: HSet) -> usize {
        match &self.realization {
            Realization::Linear { .. } => self.normal_matrix(set).rank(),
            Realization::Matroid(m) => m.rank_of(set),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_of(full_set(self.n()))
    }

    /// Basis of the subspace cut out by the hyperplanes in `set` (realized
    /// arrangements only).
    pub fn subspace_basis(&self, set: HSet) -> Option<Vec<Vec<BigRational>>> {
        self.normals()?;
        if set == 0 {
            let l = self.ambient_dim();
            return Some(
                (0..l)
                    .map(|i| (0..l).map(|j| Rationals.from_i64(i64::from(i == j))).collect())
                    .collect(),
            );
        }
        Some(self.normal_matrix(set).rank_nullspace().1)
    }

    /// All hyperplanes containing the intersection of those in `set`.
    pub fn closure(&self, set: HSet) -> HSet {
        match &self.realization {
            Realization::Linear { normals, .. } => {
                let basis = self.subspace_basis(set).expect("realized");
                let mut out = set;
                for (i, g) in normals.iter().enumerate() {
                    let vanishes = basis.iter().all(|b| {
                        g.iter()
                            .zip(b)
                            .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
                            .is_zero()
                    });
                    if vanishes {
                        out |= 1 << i;
                    }
                }
                out
            }
            Realization::Matroid(m) => m.closure(set),
        }
    }

    /// Defining linear forms over the given coordinate names.
    pub fn linear_forms(&self, vars: &Arc<Vec<String>>) -> Result<Vec<MultiPoly>> {
        let normals = self.normals().ok_or_else(|| {
            Error::Precondition("operation needs a realized arrangement, not an abstract matroid".into())
        })?;
        if vars.len() != self.ambient_dim() {
            return Err(Error::Precondition("coordinate count mismatch".into()));
        }
        Ok(normals.iter().map(|v| MultiPoly::linear_form(vars, v)).collect())
    }

    /// Coordinate names `x, y, z` in dimension 3, `x1..xl` otherwise.
    pub fn coordinate_names(&self) -> Arc<Vec<String>> {
        let l = self.ambient_dim();
        if l == 3 {
            crate::arith::variables(&["x", "y", "z"])
        } else {
            Arc::new((1..=l).map(|i| format!("x{i}")).collect())
        }
    }

    /// The arrangement with hyperplane `i` removed.
    pub fn deletion(&self, i: usize) -> Result<Arrangement> {
        let normals = self
            .normals()
            .ok_or_else(|| Error::Precondition("deletion needs a realized arrangement".into()))?;
        let mut rest = normals.to_vec();
        rest.remove(i);
        let mut labels = self.labels.clone();
        labels.remove(i);
        let mut mults = self.multiplicities.clone();
        mults.remove(i);
        Arrangement::linear(self.ambient_dim(), rest)?
            .with_labels(labels)?
            .with_multiplicities(mults)
    }

    /// The arrangement induced on hyperplane `i`, in coordinates of a basis
    /// of that hyperplane. Coinciding traces are merged.
    pub fn restriction(&self, i: usize) -> Result<Arrangement> {
        let normals = self.normals().ok_or_else(|| {
            Error::Precondition("restriction needs a realized arrangement".into())
        })?;
        let basis = self.subspace_basis(1 << i).expect("realized");
        let mut traces: Vec<Vec<BigRational>> = Vec::new();
        let mut labels = Vec::new();
        for (j, g) in normals.iter().enumerate() {
            if j == i {
                continue;
            }
            let t: Vec<BigRational> = basis
                .iter()
                .map(|b| {
                    g.iter()
                        .zip(b)
                        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
                })
                .collect();
            if t.iter().all(Zero::is_zero) {
                continue;
            }
            let dup = traces.iter().any(|u| {
                Matrix::from_rows(Rationals, t.len(), vec![t.clone(), u.clone()]).rank() < 2
            });
            if !dup {
                traces.push(t);
                labels.push(self.labels[j].clone());
            }
        }
        Arrangement::linear(basis.len(), traces)?.with_labels(labels)
    }
}
