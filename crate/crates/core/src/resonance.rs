//! Aomoto complexes (A, a) and the resonance varieties
//! R^i_d = { a : dim H^i(A, a) >= d }, over Q and over prime fields.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::field::primitive_integer_vector;
use crate::arith::{poly_matrix_rank, Echelon, Field, MultiPoly, PrimeField, Rationals};
use crate::arrangement::{members, HSet, IntersectionPoset};
use crate::error::{Error, Result};
use crate::os::OsAlgebra;
use crate::par::{self, Parallelism};
use crate::pencils::{self, NeighborlyOptions, Partition};

/// Ranks of mu_a : A^k -> A^{k+1} for k = 0..=top.
fn differential_ranks<F: Field>(os: &OsAlgebra, field: &F, a: &[F::Elem]) -> Vec<usize> {
    (0..=os.top_degree())
        .map(|k| {
            if k == os.top_degree() {
                0
            } else {
                os.multiplication_matrix(field, a, k).rank()
            }
        })
        .collect()
}

/// (h^0, ..., h^top) of the complex (A, a).
pub fn aomoto_cohomology<F: Field>(os: &OsAlgebra, field: &F, a: &[F::Elem]) -> Vec<usize> {
    let r = differential_ranks(os, field, a);
    (0..=os.top_degree())
        .map(|k| os.dim(k) - r[k] - if k > 0 { r[k - 1] } else { 0 })
        .collect()
}

/// Whether h^i(a) >= d, with an early exit on the rank of mu_a on A^i.
pub fn in_resonance<F: Field>(os: &OsAlgebra, field: &F, a: &[F::Elem], i: usize, d: usize) -> bool {
    if i > os.top_degree() {
        return d == 0;
    }
    let dim = os.dim(i);
    if d > dim {
        return false;
    }
    let before = if i == 0 {
        0
    } else if i == 1 {
        usize::from(a.iter().any(|x| !field.is_zero(x)))
    } else {
        os.multiplication_matrix(field, a, i - 1).rank()
    };
    if before + d > dim {
        return false;
    }
    if i == os.top_degree() {
        return true;
    }
    !os.multiplication_matrix(field, a, i).rank_exceeds(dim - d - before)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Local,
    Essential,
    PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub samples: usize,
    pub samples_passed: usize,
    /// Rank of mu_a : A^1 -> A^2 at the generic point of the subspace.
    pub generic_rank: usize,
    pub generic_resonant: bool,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.samples_passed == self.samples && self.generic_resonant
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    pub dimension: usize,
    pub support: Vec<usize>,
    #[serde(serialize_with = "crate::pencils::ser_rat_rows")]
    pub basis: Vec<Vec<BigRational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
    /// Point-set components only: projective representatives over F_p.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<u64>>,
}

impl ResonanceComponent {
    fn linear(kind: ComponentKind, basis: Vec<Vec<BigRational>>, partition: Option<Partition>) -> Self {
        let n = basis.first().map_or(0, Vec::len);
        let support = (0..n).filter(|&i| basis.iter().any(|v| !v[i].is_zero())).collect();
        Self { kind, dimension: basis.len(), support, basis, partition, certification: None, points: Vec::new() }
    }

    pub fn support_set(&self) -> HSet {
        self.support.iter().fold(0, |s, &i| s | 1 << i)
    }

    /// Basis of the reduction mod p (integer-primitive rows reduced).
    pub fn reduce_mod(&self, field: &PrimeField) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|v| primitive_integer_vector(v).iter().map(|x| field.reduce_int(x)).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub parallelism: Parallelism,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { samples: 50, seed: 0x5eed, parallelism: Parallelism::default() }
    }
}

/// Certifies span(basis) in R^1_1: random nonzero integer combinations, then
/// the rank of mu_a over the field of rational functions in the combination
/// coefficients.
pub fn certify(os: &OsAlgebra, basis: &[Vec<BigRational>], opts: &CertifyOptions) -> Certification {
    let n = os.n();
    let bound = n.saturating_sub(2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let combos: Vec<Vec<i64>> = (0..opts.samples)
        .map(|_| loop {
            let c: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-9..=9)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        })
        .collect();
    let passed = par::map_slice(opts.parallelism, &combos, |c| {
        let a: Vec<BigRational> = (0..n)
            .map(|i| {
                basis
                    .iter()
                    .zip(c)
                    .fold(BigRational::zero(), |acc, (v, &ci)| acc + &v[i] * BigRational::from_integer(ci.into()))
            })
            .collect();
        in_resonance(os, &Rationals, &a, 1, 1)
    });
    let generic_rank = generic_rank(os, basis);
    Certification {
        samples: combos.len(),
        samples_passed: passed.into_iter().filter(|&p| p).count(),
        generic_rank,
        // h^1 = n - 1 - rank for a != 0
        generic_resonant: !basis.is_empty() && generic_rank <= bound,
    }
}

fn generic_rank(os: &OsAlgebra, basis: &[Vec<BigRational>]) -> usize {
    if basis.is_empty() || os.top_degree() < 2 {
        return 0;
    }
    let names: Vec<String> = (1..=basis.len()).map(|j| format!("s{j}")).collect();
    let vars = std::sync::Arc::new(names);
    let a: Vec<MultiPoly> = (0..os.n())
        .map(|i| {
            let coeffs: Vec<BigRational> = basis.iter().map(|v| v[i].clone()).collect();
            MultiPoly::linear_form(&vars, &coeffs)
        })
        .collect();
    let mut m = os.multiplication_matrix_poly(&a, 1);
    // zero rows and columns do not affect the rank
    m.retain(|row| row.iter().any(|p| !p.is_zero()));
    if m.is_empty() {
        return 0;
    }
    let keep: Vec<usize> = (0..m[0].len()).filter(|&c| m.iter().any(|r| !r[c].is_zero())).collect();
    let m: Vec<Vec<MultiPoly>> = m.into_iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect();
    poly_matrix_rank(m)
}

/// One (m-1)-dimensional subspace per rank-2 flat with m >= 3 hyperplanes.
pub fn local_components(os: &OsAlgebra, poset: &IntersectionPoset, opts: &CertifyOptions) -> Vec<ResonanceComponent> {
    let n = poset.n();
    poset
        .flats_of_rank(2)
        .iter()
        .filter(|f| f.size() >= 3)
        .map(|f| {
            let idx: Vec<usize> = members(f.set).collect();
            let basis = idx[1..]
                .iter()
                .map(|&j| {
                    let mut v = vec![BigRational::zero(); n];
                    v[idx[0]] = -BigRational::one();
                    v[j] = BigRational::one();
                    v
                })
                .collect();
            let mut c = ResonanceComponent::linear(ComponentKind::Local, basis, None);
            c.certification = Some(certify(os, &c.basis, opts));
            c
        })
        .collect()
}

/// Candidate subspace of a partition: a_H = m_H w_j for H in class j with
/// sum_j w_j = 0, where m are multinet multiplicities when they exist and
/// unit weights otherwise.
fn partition_candidate(poset: &IntersectionPoset, part: &Partition) -> Result<Vec<Vec<BigRational>>> {
    let mults = match pencils::find_multiplicities(poset, part, 4)? {
        Some(net) => net.multiplicities,
        None => vec![1; poset.n()],
    };
    let classes = part.classes();
    Ok(classes[1..]
        .iter()
        .map(|&c| {
            let mut v = vec![BigRational::zero(); poset.n()];
            for i in members(c) {
                v[i] = BigRational::from_integer(mults[i].into());
            }
            for i in members(classes[0]) {
                v[i] = -BigRational::from_integer(mults[i].into());
            }
            v
        })
        .collect())
}

/// The certified component attached to a partition, or `None` when
/// certification fails.
pub fn partition_component(
    os: &OsAlgebra,
    poset: &IntersectionPoset,
    part: &Partition,
    opts: &CertifyOptions,
) -> Result<Option<ResonanceComponent>> {
    if part.support() >> poset.n() != 0 {
        return Err(Error::Precondition("partition mentions hyperplanes outside the arrangement".into()));
    }
    let basis = partition_candidate(poset, part)?;
    let cert = certify(os, &basis, opts);
    if !cert.passed() {
        return Ok(None);
    }
    let mut c = ResonanceComponent::linear(ComponentKind::Essential, basis, Some(part.clone()));
    c.certification = Some(cert);
    Ok(Some(c))
}

fn span_echelon(basis: &[Vec<BigRational>], n: usize) -> Echelon<Rationals> {
    let mut e = Echelon::new(Rationals, n);
    for v in basis {
        e.insert(v);
    }
    e
}

#[derive(Clone, Debug, Serialize)]
pub struct Audit {
    pub prime: u64,
    pub points_checked: usize,
    /// Projective representatives of resonant points outside every reduction.
    pub exceptions: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub components: Vec<ResonanceComponent>,
    pub partitions_examined: usize,
    pub partitions_rejected: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<Audit>,
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub certify: CertifyOptions,
    pub neighborly: NeighborlyOptions,
    pub audit_prime: Option<u64>,
    pub budget: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            certify: CertifyOptions::default(),
            neighborly: NeighborlyOptions::default(),
            audit_prime: Some(5),
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Maximal linear components of R^1_1 over Q for a rank-3 arrangement:
/// local components plus certified partition components, with an optional
/// audit against the F_p enumeration.
pub fn resonance_census_q(os: &OsAlgebra, poset: &IntersectionPoset, opts: &CensusOptions) -> Result<Census> {
    if poset.rank() > 3 {
        return Err(Error::Precondition(format!(
            "component census supports rank <= 3, got rank {}; use membership tests instead",
            poset.rank()
        )));
    }
    let n = poset.n();
    let mut comps = local_components(os, poset, &opts.certify);
    let partitions = if poset.rank() == 3 {
        pencils::enumerate_neighborly(poset, &opts.neighborly)?
    } else {
        Vec::new()
    };
    // distinct candidate subspaces, certified once each
    let mut seen: Vec<Echelon<Rationals>> = comps.iter().map(|c| span_echelon(&c.basis, n)).collect();
    let mut candidates = Vec::new();
    for p in &partitions {
        let basis = partition_candidate(poset, p)?;
        let e = span_echelon(&basis, n);
        if seen.iter().any(|s| same_span(s, &e)) {
            continue;
        }
        seen.push(e);
        candidates.push((p.clone(), basis));
    }
    let certs = par::map_slice(opts.certify.parallelism, &candidates, |(_, b)| {
        certify(os, b, &CertifyOptions { parallelism: Parallelism::Sequential, ..opts.certify })
    });
    let mut rejected = 0;
    for ((p, basis), cert) in candidates.into_iter().zip(certs) {
        if cert.passed() {
            let mut c = ResonanceComponent::linear(ComponentKind::Essential, basis, Some(p));
            c.certification = Some(cert);
            comps.push(c);
        } else {
            rejected += 1;
        }
    }
    comps.retain(|c| c.certification.as_ref().is_some_and(Certification::passed));
    // keep maximal subspaces only
    let spans: Vec<Echelon<Rationals>> = comps.iter().map(|c| span_echelon(&c.basis, n)).collect();
    let keep: Vec<bool> = (0..comps.len())
        .map(|i| {
            !(0..comps.len()).any(|j| {
                j != i && spans[j].rank() > spans[i].rank() && comps[i].basis.iter().all(|v| spans[j].contains(v))
            })
        })
        .collect();
    let components: Vec<ResonanceComponent> =
        comps.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    let audit = match opts.audit_prime {
        Some(p) => Some(audit(os, &components, p, opts.budget, opts.certify.parallelism)?),
        None => None,
    };
    Ok(Census { components, partitions_examined: partitions.len(), partitions_rejected: rejected, audit })
}

fn same_span(a: &Echelon<Rationals>, b: &Echelon<Rationals>) -> bool {
    a.rank() == b.rank() && b.basis().all(|v| a.contains(v))
}

/// Checks every projective F_p point of R^1_1 against the reductions of
/// `components`.
pub fn audit(os: &OsAlgebra, components: &[ResonanceComponent], p: u64, budget: u64, par: Parallelism) -> Result<Audit> {
    let field = PrimeField::new(p)?;
    let opts = EnumerateOptions { budget, projective: true, parallelism: par };
    let fp = match enumerate_fp(os, &field, 1, 1, &opts) {
        Ok(fp) => fp,
        Err(Error::Resource(msg)) => {
            return Ok(Audit { prime: p, points_checked: 0, exceptions: Vec::new(), skipped: Some(msg) })
        }
        Err(e) => return Err(e),
    };
    let reductions: Vec<Vec<Vec<u64>>> = components.iter().map(|c| c.reduce_mod(&field)).collect();
    let exceptions = uncovered(&field, &fp.points, &reductions);
    Ok(Audit { prime: p, points_checked: fp.points.len(), exceptions, skipped: None })
}

fn uncovered(field: &PrimeField, points: &[Vec<u64>], components: &[Vec<Vec<u64>>]) -> Vec<Vec<u64>> {
    let n = points.first().map_or(0, Vec::len);
    let spans: Vec<Echelon<PrimeField>> = components
        .iter()
        .map(|b| {
            let mut e = Echelon::new(*field, n);
            for v in b {
                e.insert(v);
            }
            e
        })
        .collect();
    points
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0) && !spans.iter().any(|s| s.contains(v)))
        .cloned()
        .collect()
}

pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub budget: u64,
    /// One representative per line through the origin (first nonzero
    /// coordinate equal to 1).
    pub projective: bool,
    pub parallelism: Parallelism,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, projective: false, parallelism: Parallelism::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpResonance {
    pub prime: u64,
    pub degree: usize,
    pub depth: usize,
    pub projective: bool,
    pub contains_zero: bool,
    /// All nonzero points, or projective representatives.
    pub points: Vec<Vec<u64>>,
}

impl FpResonance {
    /// Every point of the set, the origin included when it belongs.
    pub fn all_points(&self) -> Vec<Vec<u64>> {
        let n = self.points.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        if self.contains_zero {
            out.push(vec![0; n]);
        }
        for v in &self.points {
            if self.projective {
                for c in 1..self.prime {
                    out.push(v.iter().map(|x| x * c % self.prime).collect());
                }
            } else {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        let scale = if self.projective { self.prime as usize - 1 } else { 1 };
        self.points.len() * scale + usize::from(self.contains_zero)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn decode_affine(mut idx: u64, p: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    for x in v.iter_mut().rev() {
        *x = idx % p;
        idx /= p;
    }
    v
}

fn decode_projective(mut idx: u64, p: u64, n: usize) -> Vec<u64> {
    let mut lead = 0;
    loop {
        let block = p.pow((n - 1 - lead) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut v = vec![0; n];
    v[lead] = 1;
    for x in v[lead + 1..].iter_mut().rev() {
        *x = idx % p;
        idx /= p;
    }
    v
}

/// All a in F_p^n (or one per projective class) with h^i(a) >= d.
pub fn enumerate_fp(os: &OsAlgebra, field: &PrimeField, i: usize, d: usize, opts: &EnumerateOptions) -> Result<FpResonance> {
    let p = field.modulus();
    let n = os.n();
    let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let count = if opts.projective { (total - 1) / (p as u128 - 1) } else { total - 1 };
    if count > opts.budget as u128 {
        let hint = if opts.projective {
            "lower the arrangement size or raise the budget".to_string()
        } else {
            format!("use the projective option ({} classes)", (total - 1) / (p as u128 - 1))
        };
        return Err(Error::Resource(format!(
            "{count} points over F_{p} exceed the budget of {}; {hint}",
            opts.budget
        )));
    }
    let count = count as u64;
    let points = par::filter_map_range(opts.parallelism, 0..count, |idx| {
        let v = if opts.projective { decode_projective(idx, p, n) } else { decode_affine(idx + 1, p, n) };
        in_resonance(os, field, &v, i, d).then_some(v)
    });
    let zero = vec![0; n];
    Ok(FpResonance {
        prime: p,
        degree: i,
        depth: d,
        projective: opts.projective,
        contains_zero: in_resonance(os, field, &zero, i, d),
        points,
    })
}

/// The uncovered points of an F_p enumeration as a point-set component.
pub fn exceptional_component(fp: &FpResonance, components: &[ResonanceComponent]) -> Result<Option<ResonanceComponent>> {
    let field = PrimeField::new(fp.prime)?;
    let reds: Vec<Vec<Vec<u64>>> = components.iter().map(|c| c.reduce_mod(&field)).collect();
    let mut reps = uncovered(&field, &fp.points, &reds);
    if !fp.projective {
        let mut seen = HashSet::new();
        reps = reps.into_iter().map(|v| normalize(&field, &v)).filter(|v| seen.insert(v.clone())).collect();
    }
    if reps.is_empty() {
        return Ok(None);
    }
    let n = reps[0].len();
    let support = (0..n).filter(|&i| reps.iter().any(|v| v[i] != 0)).collect();
    Ok(Some(ResonanceComponent {
        kind: ComponentKind::PointSet,
        dimension: 0,
        support,
        basis: Vec::new(),
        partition: None,
        certification: None,
        points: reps,
    }))
}

fn normalize(field: &PrimeField, v: &[u64]) -> Vec<u64> {
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let inv = field.inv(&lead).expect("nonzero");
    v.iter().map(|x| field.mul(x, &inv)).collect()
}

/// Points `u`, `v` of the set with `u + v` outside it, where `u` lies in no
/// linear component. `points` is the full point set and `components` bases
/// over F_p. `None` when every point lies in some component or no such pair
/// exists.
pub fn nonlinearity_witness(p: u64, points: &[Vec<u64>], components: &[Vec<Vec<u64>>]) -> Option<(Vec<u64>, Vec<u64>)> {
    let field = PrimeField::new(p).ok()?;
    let set: HashSet<&[u64]> = points.iter().map(Vec::as_slice).collect();
    let extras = uncovered(&field, points, components);
    for u in &extras {
        for v in points {
            if v == u {
                continue;
            }
            let w: Vec<u64> = u.iter().zip(v).map(|(a, b)| (a + b) % p).collect();
            if !set.contains(w.as_slice()) {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}
