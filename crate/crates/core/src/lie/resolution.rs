//! Minimal graded free resolutions of cyclic modules R/J over a graded
//! algebra R generated in degree one, truncated by internal degree. R is an
//! Orlik-Solomon algebra; the exterior algebra is the Boolean case.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Echelon, Matrix, Rationals};
use crate::arrangement::{boolean, build_poset};
use crate::error::{Error, Result};
use crate::os::OsAlgebra;

/// Largest single graded piece of a free module in a resolution.
pub const DEFAULT_PIECE_LIMIT: usize = 4000;
pub const MAX_EXTERIOR_GENERATORS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `betti[i][d]` = dim Tor_i(M, Q)_d
    pub betti: Vec<Vec<usize>>,
}

impl BettiTable {
    pub fn get(&self, i: usize, d: usize) -> usize {
        self.betti.get(i).and_then(|r| r.get(d)).copied().unwrap_or(0)
    }
}

struct FreeModule {
    /// generator degrees
    degrees: Vec<usize>,
    /// image of each generator in the previous module, in its degree-`deg`
    /// coordinates
    images: Vec<Vec<BigRational>>,
}

impl FreeModule {
    /// Basis of the degree-`d` piece: (generator, ring basis index).
    fn basis(&self, ring: &OsAlgebra, d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (g, &dg) in self.degrees.iter().enumerate() {
            if dg <= d {
                out.extend((0..ring.dim(d - dg)).map(|j| (g, j)));
            }
        }
        out
    }

    fn position(&self, ring: &OsAlgebra, d: usize, g: usize, j: usize) -> usize {
        let before: usize = self.degrees[..g]
            .iter()
            .filter(|&&dg| dg <= d)
            .map(|&dg| ring.dim(d - dg))
            .sum();
        before + j
    }
}

/// Left multiplication of a degree-`d` element of `f` by the ring basis
/// monomial `b` of degree `p`.
fn act(ring: &OsAlgebra, f: &FreeModule, b: u64, p: usize, v: &[BigRational], d: usize) -> Vec<BigRational> {
    let src = f.basis(ring, d);
    let mut out = vec![BigRational::zero(); f.basis(ring, d + p).len()];
    for (x, &(g, j)) in v.iter().zip(&src) {
        if x.is_zero() {
            continue;
        }
        let q = d - f.degrees[g];
        for (idx, c) in ring.basis_product(b, ring.basis(q)[j]) {
            out[f.position(ring, d + p, g, idx)] += x * BigRational::from_integer(c.into());
        }
    }
    out
}

/// Betti numbers of R/J through homological degree `max_hom` and internal
/// degree `max_deg`, where `quotient(d, j)` expands the image of the j-th
/// degree-d basis element of R in the basis of (R/J)_d of size `quotient_dims[d]`.
pub fn resolve_quotient(
    ring: &OsAlgebra,
    quotient: &dyn Fn(usize, usize) -> Vec<(usize, i64)>,
    quotient_dims: &[usize],
    max_hom: usize,
    max_deg: usize,
    piece_limit: usize,
) -> Result<BettiTable> {
    let mut betti = vec![vec![0; max_deg + 1]; max_hom + 1];
    betti[0][0] = 1;
    let mut current = FreeModule { degrees: vec![0], images: vec![Vec::new()] };
    let mut previous: Option<FreeModule> = None;
    for i in 0..max_hom {
        let mut next = FreeModule { degrees: Vec::new(), images: Vec::new() };
        let mut kernel_prev: Vec<Vec<BigRational>> = Vec::new();
        for d in 0..=max_deg {
            let cols = current.basis(ring, d);
            if cols.len() > piece_limit {
                return Err(Error::Resource(format!(
                    "resolution piece of dimension {} at homological degree {i}, internal degree {d} exceeds {piece_limit}",
                    cols.len()
                )));
            }
            // differential out of `current` in degree d
            let m = match &previous {
                None => {
                    let rows = quotient_dims.get(d).copied().unwrap_or(0);
                    let mut m = Matrix::zeros(Rationals, rows, cols.len());
                    for (c, &(_, j)) in cols.iter().enumerate() {
                        for (r, v) in quotient(d, j) {
                            m.add_to(r, c, &BigRational::from_integer(v.into()));
                        }
                    }
                    m
                }
                Some(prev) => {
                    let rows = prev.basis(ring, d).len();
                    let mut m = Matrix::zeros(Rationals, rows, cols.len());
                    for (c, &(g, j)) in cols.iter().enumerate() {
                        let dg = current.degrees[g];
                        let b = ring.basis(d - dg)[j];
                        let col = act(ring, prev, b, d - dg, &current.images[g], dg);
                        for (r, x) in col.into_iter().enumerate() {
                            if !x.is_zero() {
                                m.set(r, c, x);
                            }
                        }
                    }
                    m
                }
            };
            let (_, kernel) = m.rank_nullspace();
            // minimal generators: kernel modulo R_1 times the kernel one degree down
            let mut span = Echelon::new(Rationals, cols.len());
            if d > 0 {
                for t in ring.basis(1) {
                    for v in &kernel_prev {
                        span.insert(&act(ring, &current, *t, 1, v, d - 1));
                    }
                }
            }
            for v in &kernel {
                if span.insert(v) {
                    next.degrees.push(d);
                    next.images.push(v.clone());
                    betti[i + 1][d] += 1;
                }
            }
            kernel_prev = kernel;
        }
        previous = Some(current);
        current = next;
    }
    Ok(BettiTable { betti })
}

/// Resolution of the trivial module Q = A / A_+ over A.
pub fn resolve_trivial(os: &OsAlgebra, max_deg: usize, piece_limit: usize) -> Result<BettiTable> {
    let dims: Vec<usize> = (0..=max_deg).map(|d| usize::from(d == 0)).collect();
    let id = |d: usize, j: usize| if d == 0 { vec![(j, 1)] } else { Vec::new() };
    resolve_quotient(os, &id, &dims, max_deg, max_deg, piece_limit)
}

/// dim Tor^A_i(Q, Q)_i for i = 0..=max_deg.
pub fn diagonal_tor_series(os: &OsAlgebra, max_deg: usize) -> Result<Vec<u64>> {
    let t = resolve_trivial(os, max_deg, DEFAULT_PIECE_LIMIT)?;
    Ok((0..=max_deg).map(|i| t.get(i, i) as u64).collect())
}

/// Resolution of A = E / I over the exterior algebra E on the hyperplanes.
pub fn resolve_over_exterior(os: &OsAlgebra, max_hom: usize, max_deg: usize) -> Result<BettiTable> {
    let n = os.n();
    if n > MAX_EXTERIOR_GENERATORS {
        return Err(Error::Resource(format!(
            "resolutions over the exterior algebra are limited to {MAX_EXTERIOR_GENERATORS} generators, got {n}"
        )));
    }
    let e = OsAlgebra::build(&build_poset(&boolean(n)?));
    let dims: Vec<usize> = (0..=max_deg).map(|d| os.dim(d)).collect();
    let pi = |d: usize, j: usize| os.normal_form(e.basis(d)[j]).to_vec();
    resolve_quotient(&e, &pi, &dims, max_hom, max_deg, DEFAULT_PIECE_LIMIT)
}

/// dim Tor^E_{k-1}(A, Q)_k for k = 2..=max_deg.
pub fn linear_strand_over_exterior(os: &OsAlgebra, max_deg: usize) -> Result<Vec<u64>> {
    if max_deg < 2 {
        return Ok(Vec::new());
    }
    let t = resolve_over_exterior(os, max_deg - 1, max_deg)?;
    Ok((2..=max_deg).map(|k| t.get(k - 1, k) as u64).collect())
}
