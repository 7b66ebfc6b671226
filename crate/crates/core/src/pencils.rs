//! Neighborly partitions, multinets, pencils of curves spanned by class
//! products, and critical loci of master functions.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{poly_linear_dependence, Field, Matrix, MultiPoly, Rationals};
use crate::arrangement::{full_set, members, Arrangement, HSet, IntersectionPoset};
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    classes: Vec<HSet>,
}

impl Partition {
    /// At least three disjoint nonempty classes. Classes are stored ordered
    /// by their least element.
    pub fn new(mut classes: Vec<HSet>) -> Result<Self> {
        if classes.len() < 3 {
            return Err(Error::Precondition(format!(
                "a partition needs at least three classes, got {}",
                classes.len()
            )));
        }
        let mut seen = 0;
        for &c in &classes {
            if c == 0 {
                return Err(Error::Precondition("empty class in partition".into()));
            }
            if c & seen != 0 {
                return Err(Error::Precondition("partition classes overlap".into()));
            }
            seen |= c;
        }
        classes.sort_unstable_by_key(|c| c.trailing_zeros());
        Ok(Self { classes })
    }

    /// Parses `"1,2|3,4|5,6"`; entries are labels of `arr`, or 1-based
    /// indices when no label matches.
    pub fn parse(text: &str, arr: &Arrangement) -> Result<Self> {
        let mut classes = Vec::new();
        for part in text.split('|') {
            let mut set = 0u64;
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let idx = match arr.label_index(tok) {
                    Some(i) => i,
                    None => tok
                        .parse::<usize>()
                        .ok()
                        .filter(|&i| i >= 1 && i <= arr.n())
                        .map(|i| i - 1)
                        .ok_or_else(|| {
                            Error::Precondition(format!("`{tok}` is neither a label nor an index"))
                        })?,
                };
                set |= 1 << idx;
            }
            classes.push(set);
        }
        Self::new(classes)
    }

    pub fn classes(&self) -> &[HSet] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn support(&self) -> HSet {
        self.classes.iter().fold(0, |a, c| a | c)
    }

    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c >> i & 1 == 1)
    }

    pub fn describe(&self, labels: &[String]) -> String {
        self.classes
            .iter()
            .map(|&c| members(c).map(|i| labels[i].clone()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

fn check_rank_three(poset: &IntersectionPoset) -> Result<()> {
    if poset.rank() != 3 {
        return Err(Error::Precondition(format!(
            "needs a rank-3 arrangement, got rank {}",
            poset.rank()
        )));
    }
    Ok(())
}

fn check_support(poset: &IntersectionPoset, part: &Partition) -> Result<()> {
    if part.support() & !full_set(poset.n()) != 0 {
        return Err(Error::Precondition("partition mentions hyperplanes outside the arrangement".into()));
    }
    Ok(())
}

/// Whether the restriction of `flat` to `part` has one class meeting it in a
/// single line while every other line lies in one second class.
fn violates_neighborly(part: &Partition, flat: HSet) -> bool {
    let s = flat & part.support();
    let total = s.count_ones();
    if total < 2 {
        return false;
    }
    let counts: Vec<u32> = part.classes.iter().map(|c| (c & s).count_ones()).collect();
    counts.iter().enumerate().any(|(i, &ci)| {
        ci == 1
            && counts
                .iter()
                .enumerate()
                .any(|(j, &cj)| j != i && cj == total - 1)
    })
}

/// No intersection point of the sub-arrangement meets one class in exactly
/// one line while all its other lines belong to a single second class.
pub fn is_neighborly(poset: &IntersectionPoset, part: &Partition) -> Result<bool> {
    check_rank_three(poset)?;
    check_support(poset, part)?;
    Ok(!poset
        .flats_of_rank(2)
        .iter()
        .any(|f| violates_neighborly(part, f.set)))
}

/// The point/line incidence matrix of the sub-arrangement `support`
/// (points of multiplicity >= 3 only) has a nullspace of dimension at least
/// two containing a vector with no zero entry.
pub fn eligible(poset: &IntersectionPoset, support: HSet) -> bool {
    let lines: Vec<usize> = members(support).collect();
    let rows: Vec<Vec<BigRational>> = poset
        .flats_of_rank(2)
        .iter()
        .map(|f| f.set & support)
        .filter(|s| s.count_ones() >= 3)
        .map(|s| {
            lines
                .iter()
                .map(|&i| Rationals.from_i64(i64::from(s >> i & 1 == 1)))
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(Rationals, lines.len(), rows);
    let (_, null) = m.rank_nullspace();
    null.len() >= 2 && (0..lines.len()).all(|c| null.iter().any(|v| !v[c].is_zero()))
}

#[derive(Clone, Copy, Debug)]
pub struct NeighborlyOptions {
    pub max_support: usize,
    pub max_classes: usize,
    /// Abort when more candidate class assignments than this would be tested.
    pub ceiling: u64,
    pub parallelism: Parallelism,
}

impl Default for NeighborlyOptions {
    fn default() -> Self {
        Self {
            max_support: usize::MAX,
            max_classes: 8,
            ceiling: 5_000_000,
            parallelism: Parallelism::default(),
        }
    }
}

/// Blocks of `support` forced into one class: two lines meeting at a double
/// point of the sub-arrangement must share a class.
fn forced_blocks(poset: &IntersectionPoset, support: HSet) -> Vec<HSet> {
    let idx: Vec<usize> = members(support).collect();
    let mut parent: Vec<usize> = (0..64).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for f in poset.flats_of_rank(2) {
        let s = f.set & support;
        if s.count_ones() == 2 {
            let v: Vec<usize> = members(s).collect();
            let (a, b) = (find(&mut parent, v[0]), find(&mut parent, v[1]));
            parent[a] = b;
        }
    }
    let mut blocks: Vec<HSet> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for &i in &idx {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => blocks[k] |= 1 << i,
            None => {
                roots.push(r);
                blocks.push(1 << i);
            }
        }
    }
    blocks
}

/// Number of set partitions of `n` items into `k` blocks.
fn stirling2(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = row[j].saturating_mul(j as u64).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

/// Set partitions of `blocks` into between 3 and `max_classes` classes, via
/// restricted growth strings.
fn block_partitions(blocks: &[HSet], max_classes: usize, out: &mut Vec<Vec<HSet>>) {
    fn rec(blocks: &[HSet], i: usize, max: usize, cur: &mut Vec<HSet>, out: &mut Vec<Vec<HSet>>) {
        if i == blocks.len() {
            if cur.len() >= 3 {
                out.push(cur.clone());
            }
            return;
        }
        // remaining blocks cannot open enough classes
        if cur.len() + (blocks.len() - i) < 3 {
            return;
        }
        for c in 0..cur.len() {
            cur[c] |= blocks[i];
            rec(blocks, i + 1, max, cur, out);
            cur[c] &= !blocks[i];
        }
        if cur.len() < max {
            cur.push(blocks[i]);
            rec(blocks, i + 1, max, cur, out);
            cur.pop();
        }
    }
    rec(blocks, 0, max_classes, &mut Vec::new(), out);
}

/// All neighborly partitions (up to relabeling of classes) of eligible
/// sub-arrangements within the given bounds.
pub fn enumerate_neighborly(poset: &IntersectionPoset, opts: &NeighborlyOptions) -> Result<Vec<Partition>> {
    check_rank_three(poset)?;
    let n = poset.n();
    if n > 24 {
        return Err(Error::Resource(format!(
            "sub-arrangement search over {n} hyperplanes (2^{n} supports) exceeds the search limit"
        )));
    }
    let max_support = opts.max_support.min(n);
    let supports: Vec<HSet> = (0..1u64 << n)
        .filter(|s| (3..=max_support).contains(&(s.count_ones() as usize)))
        .collect();
    // candidate count guard, computed before any partition is built
    let per_support: Vec<(HSet, Vec<HSet>)> = par::map_slice(opts.parallelism, &supports, |&s| {
        let blocks = if eligible(poset, s) { forced_blocks(poset, s) } else { Vec::new() };
        (s, blocks)
    });
    let total: u64 = per_support
        .iter()
        .filter(|(_, b)| b.len() >= 3)
        .map(|(_, b)| {
            (3..=opts.max_classes.min(b.len()))
                .map(|k| stirling2(b.len(), k))
                .fold(0u64, u64::saturating_add)
        })
        .fold(0u64, u64::saturating_add);
    if total > opts.ceiling {
        return Err(Error::Resource(format!(
            "{total} candidate partitions exceed the ceiling of {}",
            opts.ceiling
        )));
    }
    let found: Vec<Vec<Partition>> = par::map_slice(opts.parallelism, &per_support, |(_, blocks)| {
        if blocks.len() < 3 {
            return Vec::new();
        }
        let mut cands = Vec::new();
        block_partitions(blocks, opts.max_classes, &mut cands);
        cands
            .into_iter()
            .filter_map(|classes| {
                let p = Partition::new(classes).ok()?;
                let ok = !poset
                    .flats_of_rank(2)
                    .iter()
                    .any(|f| violates_neighborly(&p, f.set));
                ok.then_some(p)
            })
            .collect()
    });
    let set: BTreeSet<Partition> = found.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub flat: HSet,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultinetReport {
    pub ok: bool,
    pub class_degrees: Vec<u32>,
    pub degree: Option<u32>,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multinet {
    pub partition: Partition,
    /// One entry per hyperplane of the arrangement; only the support is used.
    pub multiplicities: Vec<u32>,
    pub degree: u32,
}

/// Checks equal weighted class degrees and, at every point where lines of
/// different classes meet, equal weighted counts from every class.
pub fn check_multinet(poset: &IntersectionPoset, part: &Partition, mults: &[u32]) -> Result<MultinetReport> {
    check_support(poset, part)?;
    if mults.len() != poset.n() {
        return Err(Error::Precondition("one multiplicity per hyperplane required".into()));
    }
    let weight = |s: HSet| members(s).map(|i| mults[i]).sum::<u32>();
    let class_degrees: Vec<u32> = part.classes.iter().map(|&c| weight(c)).collect();
    let mut violations = Vec::new();
    if class_degrees.windows(2).any(|w| w[0] != w[1]) {
        violations.push(Violation { flat: part.support(), reason: format!("unequal class degrees {class_degrees:?}") });
    }
    for f in poset.flats_of_rank(2) {
        let counts: Vec<u32> = part.classes.iter().map(|&c| weight(c & f.set)).collect();
        if counts.iter().filter(|&&c| c > 0).count() < 2 {
            continue;
        }
        if counts.windows(2).any(|w| w[0] != w[1]) {
            violations.push(Violation {
                flat: f.set,
                reason: format!("weighted class counts {counts:?} differ"),
            });
        }
    }
    let ok = violations.is_empty();
    Ok(MultinetReport { ok, degree: ok.then(|| class_degrees[0]), class_degrees, violations })
}

/// Searches multiplicities making `part` a multinet: unit weights first, then
/// the solution space of the linear multinet conditions, then a bounded
/// search with entries up to `max_mult`.
pub fn find_multiplicities(poset: &IntersectionPoset, part: &Partition, max_mult: u32) -> Result<Option<Multinet>> {
    let n = poset.n();
    let support: Vec<usize> = members(part.support()).collect();
    let wrap = |mults: Vec<u32>| -> Result<Option<Multinet>> {
        let rep = check_multinet(poset, part, &mults)?;
        Ok(rep.ok.then(|| Multinet { partition: part.clone(), multiplicities: mults, degree: rep.degree.unwrap() }))
    };
    let mut unit = vec![1u32; n];
    if let Some(m) = wrap(unit.clone())? {
        return Ok(Some(m));
    }
    // linear conditions on the support weights
    let col = |i: usize| support.iter().position(|&s| s == i).unwrap();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut push_diff = |a: HSet, b: HSet| {
        let mut r = vec![BigRational::zero(); support.len()];
        for i in members(a) {
            r[col(i)] += BigRational::one();
        }
        for i in members(b) {
            r[col(i)] -= BigRational::one();
        }
        rows.push(r);
    };
    let classes = part.classes();
    for c in &classes[1..] {
        push_diff(*c, classes[0]);
    }
    for f in poset.flats_of_rank(2) {
        let meets = classes.iter().filter(|&&c| c & f.set != 0).count();
        if meets >= 2 {
            for c in &classes[1..] {
                push_diff(c & f.set, classes[0] & f.set);
            }
        }
    }
    let (_, null) = Matrix::from_rows(Rationals, support.len(), rows.clone()).rank_nullspace();
    if null.len() == 1 {
        let v = crate::arith::field::primitive_integer_vector(&null[0]);
        use num_traits::ToPrimitive;
        let vals: Option<Vec<u32>> = v.iter().map(|x| x.to_u32().filter(|&m| m >= 1)).collect();
        if let Some(vals) = vals {
            for (k, &i) in support.iter().enumerate() {
                unit[i] = vals[k];
            }
            return wrap(unit);
        }
        return Ok(None);
    }
    if null.is_empty() {
        return Ok(None);
    }
    let space = (max_mult as u64).checked_pow(support.len() as u32);
    if space.is_none_or(|s| s > 1 << 22) {
        return Ok(None);
    }
    let mut digits = vec![1u32; support.len()];
    loop {
        let ok = rows.iter().all(|r| {
            r.iter()
                .zip(&digits)
                .fold(BigRational::zero(), |acc, (a, &d)| acc + a * BigRational::from_integer(d.into()))
                .is_zero()
        });
        if ok {
            let mut m = vec![1u32; n];
            for (k, &i) in support.iter().enumerate() {
                m[i] = digits[k];
            }
            if let Some(mn) = wrap(m)? {
                return Ok(Some(mn));
            }
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(None);
            }
            digits[k] += 1;
            if digits[k] <= max_mult {
                break;
            }
            digits[k] = 1;
            k += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PencilCertificate {
    #[serde(serialize_with = "ser_polys")]
    pub class_polys: Vec<MultiPoly>,
    /// Basis of the linear relations among the class polynomials.
    #[serde(serialize_with = "ser_rat_rows")]
    pub dependencies: Vec<Vec<BigRational>>,
    pub span_dim: usize,
}

fn ser_polys<S: serde::Serializer>(v: &[MultiPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

pub(crate) fn ser_rat_rows<S: serde::Serializer>(v: &[Vec<BigRational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

/// Class products Q_j = prod_{H in class j} alpha_H^{m_H} and their span,
/// without checking the multinet conditions.
pub fn pencil_from_classes(arr: &Arrangement, part: &Partition, mults: &[u32]) -> Result<PencilCertificate> {
    let vars = arr.coordinate_names();
    let forms = arr.linear_forms(&vars)?;
    let class_polys: Vec<MultiPoly> = part
        .classes()
        .iter()
        .map(|&c| {
            members(c).fold(MultiPoly::constant(&vars, BigRational::one()), |acc, i| {
                acc.mul(&forms[i].pow(mults[i]))
            })
        })
        .collect();
    let mut monos: Vec<&crate::arith::Monomial> = class_polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<BigRational>> = monos
        .iter()
        .map(|m| class_polys.iter().map(|p| p.coeff(&m.0)).collect())
        .collect();
    let (span_dim, null) = Matrix::from_rows(Rationals, class_polys.len(), rows).rank_nullspace();
    for i in 0..class_polys.len() {
        for j in 0..i {
            if poly_linear_dependence(&[class_polys[i].clone(), class_polys[j].clone()])?.is_some() {
                return Err(Error::Precondition(format!(
                    "degenerate pencil: class products {} and {} are proportional",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    if span_dim != 2 {
        return Err(Error::Precondition(format!(
            "no pencil: class products span a space of dimension {span_dim}"
        )));
    }
    let dependencies = null
        .iter()
        .map(|v| {
            crate::arith::field::primitive_integer_vector(v)
                .into_iter()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();
    Ok(PencilCertificate { class_polys, dependencies, span_dim })
}

/// Certificate that the multinet's class curves lie in one pencil.
pub fn pencil_certificate(arr: &Arrangement, poset: &IntersectionPoset, net: &Multinet) -> Result<PencilCertificate> {
    if !arr.is_realized() {
        return Err(Error::Precondition("pencil certificates need a realized arrangement".into()));
    }
    let rep = check_multinet(poset, &net.partition, &net.multiplicities)?;
    if !rep.ok {
        return Err(Error::Precondition(format!(
            "not a multinet: {} violation(s)",
            rep.violations.len()
        )));
    }
    pencil_from_classes(arr, &net.partition, &net.multiplicities)
}

/// Pencil parameters `(a, b)` with `Q_j = a*Q_1 + b*Q_2`, one per class.
pub fn singular_fibers(cert: &PencilCertificate) -> Vec<(BigRational, BigRational)> {
    let (q1, q2) = (&cert.class_polys[0], &cert.class_polys[1]);
    cert.class_polys
        .iter()
        .map(|qj| {
            // qj, q1, q2 are dependent: c0*qj + c1*q1 + c2*q2 = 0 with c0 != 0
            let dep = poly_linear_dependence(&[qj.clone(), q1.clone(), q2.clone()])
                .expect("nonempty")
                .expect("class product lies in the pencil");
            let c0 = dep[0].clone();
            (-&dep[1] / &c0, -&dep[2] / &c0)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalReport {
    pub holds: bool,
    #[serde(serialize_with = "ser_polys")]
    pub residuals: Vec<MultiPoly>,
}

/// Substitutes a parametrized family into the cleared-denominator critical
/// equations of Phi = prod alpha_H^{lambda_H m_H}:
/// N_v = sum_H lambda_H m_H (d alpha_H / d v) prod_{H' != H} alpha_H'.
/// Holds iff every N_v vanishes identically in the parameters.
pub fn critical_locus_check(arr: &Arrangement, weights: &[MultiPoly], family: &[MultiPoly]) -> Result<CriticalReport> {
    let normals = arr
        .normals()
        .ok_or_else(|| Error::Precondition("critical loci need a realized arrangement".into()))?;
    if weights.len() != arr.n() {
        return Err(Error::Precondition("one weight per hyperplane required".into()));
    }
    if family.len() != arr.ambient_dim() {
        return Err(Error::Precondition("candidate family must give every coordinate".into()));
    }
    let params = family[0].vars().clone();
    if weights.iter().chain(family).any(|p| p.vars() != &params) {
        return Err(Error::Precondition(
            "weights and candidate family must be polynomials in one parameter list".into(),
        ));
    }
    let mults = arr.multiplicities();
    let total = weights
        .iter()
        .zip(mults)
        .fold(MultiPoly::zero(&params), |acc, (w, &m)| acc.add(&w.scale(&BigRational::from_integer(m.into()))));
    if !total.is_zero() {
        return Err(Error::Precondition(format!(
            "weights are not resonant: sum of lambda_H m_H is {total}, not 0"
        )));
    }
    let forms: Vec<MultiPoly> = normals
        .iter()
        .map(|nv| {
            nv.iter()
                .zip(family)
                .fold(MultiPoly::zero(&params), |acc, (c, f)| acc.add(&f.scale(c)))
        })
        .collect();
    let n = forms.len();
    let one = MultiPoly::constant(&params, BigRational::one());
    let mut prefix = vec![one.clone(); n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i].mul(&forms[i]);
    }
    let mut suffix = vec![one; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1].mul(&forms[i]);
    }
    let others: Vec<MultiPoly> = (0..n).map(|i| prefix[i].mul(&suffix[i + 1])).collect();
    let residuals: Vec<MultiPoly> = (0..arr.ambient_dim())
        .map(|v| {
            (0..n).fold(MultiPoly::zero(&params), |acc, h| {
                let c = &normals[h][v] * BigRational::from_integer(mults[h].into());
                if c.is_zero() || weights[h].is_zero() {
                    return acc;
                }
                acc.add(&weights[h].mul(&others[h]).scale(&c))
            })
        })
        .collect();
    Ok(CriticalReport { holds: residuals.iter().all(MultiPoly::is_zero), residuals })
}
