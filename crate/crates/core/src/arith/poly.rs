//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in graded-lex order and zero coefficients are never stored.
//! There is no Groebner machinery here; everything downstream reduces to
//! linear algebra on coefficient vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::field::{primitive_integer_vector, Field, Rationals};
use crate::arith::matrix::Matrix;
use crate::error::{Error, Result};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

/// Builds a shared variable list.
pub fn variables(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl MultiPoly {
    pub fn zero(vars: &Arc<Vec<String>>) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Arc<Vec<String>>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial(e), BigRational::one());
        p
    }

    /// The linear form `sum_i coeffs[i] * vars[i]`.
    pub fn linear_form(vars: &Arc<Vec<String>>, coeffs: &[BigRational]) -> Self {
        assert_eq!(coeffs.len(), vars.len());
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                p.terms.insert(Monomial(e), c.clone());
            }
        }
        p
    }

    pub fn from_terms(
        vars: &Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(e.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.vars, BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. The images share a (possibly
    /// different) variable list, which becomes the variable list of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let tm = m.div(&lm);
            let tc = c / &lc;
            let mut term = MultiPoly::zero(&self.vars);
            term.terms.insert(tm, tc);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }
}

fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigRational,
    mono: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in ascending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            fmt_coeff_term(f, k == 0, c, &mono.join("*"))?;
        }
        Ok(())
    }
}

/// Finds a nonzero rational vector `c` with `sum_j c_j * polys[j] = 0`.
///
/// The returned vector is a primitive integer vector (as rationals) whose
/// first nonzero entry is positive, and the identity is re-checked by exact
/// expansion before it is returned.
pub fn poly_linear_dependence(polys: &[MultiPoly]) -> Result<Option<Vec<BigRational>>> {
    if polys.is_empty() {
        return Err(Error::Precondition(
            "linear dependence of an empty polynomial list".into(),
        ));
    }
    for p in &polys[1..] {
        polys[0].check_vars(p);
    }
    let mut monos: Vec<&Monomial> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<BigRational>> = monos
        .iter()
        .map(|m| {
            polys
                .iter()
                .map(|p| p.terms.get(*m).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    let mat = Matrix::from_rows(Rationals, polys.len(), rows);
    let (_, null) = mat.rank_nullspace();
    let Some(v) = null.into_iter().next() else {
        return Ok(None);
    };
    let c: Vec<BigRational> = primitive_integer_vector(&v)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    let combo = polys
        .iter()
        .zip(&c)
        .fold(MultiPoly::zero(polys[0].vars()), |acc, (p, x)| acc.add(&p.scale(x)));
    assert!(combo.is_zero(), "dependency failed exact re-expansion");
    Ok(Some(c))
}

/// Rank of a matrix of polynomials over the fraction field of the polynomial
/// ring, by fraction-free (Bareiss) elimination.
pub fn poly_matrix_rank(mut m: Vec<Vec<MultiPoly>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let vars = m[0]
        .first()
        .map(|p| p.vars().clone())
        .unwrap_or_else(|| Arc::new(Vec::new()));
    let mut prev = MultiPoly::constant(&vars, BigRational::one());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = pivot_row[c].mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            row[c] = MultiPoly::zero(&vars);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Evaluates a univariate integer polynomial (ascending coefficients).
pub fn eval_int_poly(coeffs: &[i64], t: i64) -> i64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
}

/// Field-generic helper used by callers that need a rational vector in
/// another field.
pub fn map_vector<F: Field>(field: &F, v: &[BigRational]) -> Option<Vec<F::Elem>> {
    v.iter().map(|x| field.from_rational(x)).collect()
}
