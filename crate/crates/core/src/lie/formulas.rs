//! Generating-function identities between LCS ranks, Chen ranks, Tor
//! dimensions and resonance, each reported as a verdict with the compared
//! truncations.

use serde::Serialize;

use super::holonomy::{lie_ranks, LieRanks, DEFAULT_WITT_LIMIT};
use super::resolution::{diagonal_tor_series, linear_strand_over_exterior};
use crate::arith::series::{self, Series};
use crate::arrangement::IntersectionPoset;
use crate::error::{Error, Result};
use crate::os::OsAlgebra;
use crate::resonance::{resonance_census_q, CensusOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    HypothesisNotMet,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub lhs: Series,
    pub rhs: Series,
    pub equal: bool,
}

impl SeriesCheck {
    fn new(lhs: Series, rhs: Series) -> Self {
        let equal = lhs == rhs;
        Self { lhs, rhs, equal }
    }
}

fn as_usize(v: &[u64]) -> Vec<usize> {
    v.iter().map(|&x| x as usize).collect()
}

/// prod_{k >= start} (1 - t^k)^{phi_k} modulo t^{N+1}, N = phi.len().
pub fn lcs_series(phi: &[u64], start: usize) -> Series {
    series::lcs_product(&as_usize(phi), start, phi.len() + 1)
}

/// Recovers phi_1..phi_N from a series P = prod_k (1 - t^k)^{phi_k}.
pub fn ranks_from_product(p: &[i128], max_degree: usize) -> Vec<i128> {
    let len = max_degree + 1;
    let mut rest = series::truncate(p, len);
    let mut phi = Vec::with_capacity(max_degree);
    for k in 1..=max_degree {
        // rest = (1 - t^k)^{phi_k} * (terms of order > k), so its t^k
        // coefficient is -phi_k
        let r = -rest.get(k).copied().unwrap_or(0);
        phi.push(r);
        let inv = series::inverse(&series::one_minus_power(1, k, r as i64, len), len);
        rest = series::mul(&rest, &inv, len);
    }
    phi
}

/// Koszul LCS identity for supersolvable arrangements:
/// prod_k (1 - t^k)^{phi_k} = Hilb(A, -t).
pub fn koszul_lcs_check(poset: &IntersectionPoset, os: &OsAlgebra, phi: &[u64]) -> Result<SeriesCheck> {
    if poset.supersolvable().is_none() {
        return Err(Error::Precondition("arrangement is not supersolvable".into()));
    }
    let len = phi.len() + 1;
    let rhs: Series = (0..len)
        .map(|i| {
            let d = os.dim(i) as i128;
            if i % 2 == 0 { d } else { -d }
        })
        .collect();
    Ok(SeriesCheck::new(lcs_series(phi, 1), rhs))
}

/// sum_i dim Tor^A_i(Q,Q)_i t^i against the inverse of prod (1 - t^k)^{phi_k}.
pub fn tor_diagonal_check(phi: &[u64], tor: &[u64]) -> SeriesCheck {
    let len = phi.len() + 1;
    let lhs = series::inverse(&lcs_series(phi, 1), len);
    let rhs = tor.iter().take(len).map(|&x| x as i128).collect();
    SeriesCheck::new(lhs, rhs)
}

/// (k - 1) * sum_i C(k + d_i - 2, k).
pub fn chen_formula(dims: &[usize], k: usize) -> i128 {
    let k = k as i128;
    (k - 1) * dims.iter().map(|&d| binom(k + d as i128 - 2, k)).sum::<i128>()
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChenRow {
    pub k: usize,
    pub theta: u64,
    pub formula: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChenCheck {
    pub rows: Vec<ChenRow>,
    /// Smallest k from which equality holds through the top computed degree.
    pub equal_from: Option<usize>,
    /// theta_k >= formula at every computed k >= 3.
    pub lower_bound: bool,
}

pub fn chen_check(theta: &[u64], dims: &[usize]) -> ChenCheck {
    let rows: Vec<ChenRow> = (2..=theta.len())
        .map(|k| ChenRow { k, theta: theta[k - 1], formula: chen_formula(dims, k) })
        .collect();
    let mut equal_from = None;
    for r in rows.iter().rev() {
        if r.theta as i128 != r.formula {
            break;
        }
        equal_from = Some(r.k);
    }
    let lower_bound = rows.iter().filter(|r| r.k >= 3).all(|r| r.theta as i128 >= r.formula);
    ChenCheck { rows, equal_from, lower_bound }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceLcsCheck {
    pub series: SeriesCheck,
    /// phi_4 == theta_4, when degree 4 was computed.
    pub hypothesis: Option<bool>,
    pub verdict: Verdict,
}

/// prod_{k >= 2} (1 - t^k)^{phi_k} against prod_i (1 - d_i t) / (1 - t)^{d_i},
/// conditional on phi_4 = theta_4.
pub fn resonance_lcs_check(ranks: &LieRanks, dims: &[usize]) -> ResonanceLcsCheck {
    let len = ranks.phi.len() + 1;
    let lhs = lcs_series(&ranks.phi, 2);
    let mut rhs = series::one(len);
    for &d in dims {
        let num = series::one_minus_power(d as i128, 1, 1, len);
        let den = series::one_minus_power(1, 1, -(d as i64), len);
        rhs = series::mul(&series::mul(&rhs, &num, len), &den, len);
    }
    let series = SeriesCheck::new(lhs, rhs);
    let hypothesis = (ranks.phi.len() >= 4).then(|| ranks.phi(4) == ranks.theta(4));
    let verdict = match hypothesis {
        None => Verdict::Skipped,
        Some(false) => Verdict::HypothesisNotMet,
        Some(true) if series.equal => Verdict::Holds,
        Some(true) => Verdict::Fails,
    };
    ResonanceLcsCheck { series, hypothesis, verdict }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaVerdict {
    pub name: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub max_degree: usize,
    pub ranks: LieRanks,
    pub resonance_dims: Option<Vec<usize>>,
    pub verdicts: Vec<FormulaVerdict>,
}

fn fmt_series(s: &[i128]) -> String {
    format!("{s:?}")
}

/// Runs every identity through degree `max_degree`. Identities whose inputs
/// are unavailable (no supersolvable chain, no census, resource guards) are
/// reported as skipped with the reason.
pub fn formula_report(
    poset: &IntersectionPoset,
    os: &OsAlgebra,
    max_degree: usize,
    census: &CensusOptions,
) -> Result<FormulaReport> {
    let ranks = lie_ranks(poset, max_degree, DEFAULT_WITT_LIMIT)?;
    let mut verdicts = Vec::new();
    let skipped = |name, e: Error| FormulaVerdict { name, verdict: Verdict::Skipped, detail: e.to_string() };

    verdicts.push(match linear_strand_over_exterior(os, max_degree) {
        Ok(strand) => {
            let theta: Vec<u64> = ranks.theta.iter().skip(1).copied().collect();
            let ok = strand == theta;
            FormulaVerdict {
                name: "chen-tor-strand",
                verdict: if ok { Verdict::Holds } else { Verdict::Fails },
                detail: format!("k = 2..{max_degree}: strand {strand:?}, theta {theta:?}"),
            }
        }
        Err(e) => skipped("chen-tor-strand", e),
    });

    verdicts.push(match diagonal_tor_series(os, max_degree) {
        Ok(tor) => {
            let c = tor_diagonal_check(&ranks.phi, &tor);
            FormulaVerdict {
                name: "lcs-tor-diagonal",
                verdict: if c.equal { Verdict::Holds } else { Verdict::Fails },
                detail: format!("1/prod {} vs Tor {}", fmt_series(&c.lhs), fmt_series(&c.rhs)),
            }
        }
        Err(e) => skipped("lcs-tor-diagonal", e),
    });

    verdicts.push(match koszul_lcs_check(poset, os, &ranks.phi) {
        Ok(c) => FormulaVerdict {
            name: "lcs-koszul",
            verdict: if c.equal { Verdict::Holds } else { Verdict::Fails },
            detail: format!("prod {} vs Hilb(A,-t) {}", fmt_series(&c.lhs), fmt_series(&c.rhs)),
        },
        Err(e) => skipped("lcs-koszul", e),
    });

    let dims = resonance_census_q(os, poset, &CensusOptions { audit_prime: None, ..*census })
        .map(|c| c.components.iter().map(|x| x.dimension).collect::<Vec<_>>());
    match &dims {
        Ok(dims) => {
            let r = resonance_lcs_check(&ranks, dims);
            let hyp = match r.hypothesis {
                Some(true) => "phi_4 = theta_4".to_string(),
                Some(false) => format!("phi_4 = {} != theta_4 = {}", ranks.phi(4), ranks.theta(4)),
                None => "degree 4 not computed".to_string(),
            };
            verdicts.push(FormulaVerdict {
                name: "lcs-resonance",
                verdict: r.verdict,
                detail: format!(
                    "{hyp}; prod {} vs {} (equal: {})",
                    fmt_series(&r.series.lhs),
                    fmt_series(&r.series.rhs),
                    r.series.equal
                ),
            });
            let c = chen_check(&ranks.theta, dims);
            let rows: Vec<String> = c.rows.iter().map(|r| format!("k={}: {} vs {}", r.k, r.theta, r.formula)).collect();
            verdicts.push(FormulaVerdict {
                name: "chen-resonance",
                verdict: if c.equal_from.is_some() { Verdict::Holds } else { Verdict::Fails },
                detail: match c.equal_from {
                    Some(k0) => format!("equal for k = {k0}..{max_degree}; {}", rows.join(", ")),
                    None => format!("unequal at k = {max_degree}; {}", rows.join(", ")),
                },
            });
        }
        Err(e) => {
            verdicts.push(FormulaVerdict { name: "lcs-resonance", verdict: Verdict::Skipped, detail: e.to_string() });
            verdicts.push(FormulaVerdict { name: "chen-resonance", verdict: Verdict::Skipped, detail: e.to_string() });
        }
    }
    Ok(FormulaReport { max_degree, ranks, resonance_dims: dims.ok(), verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, braid, build_poset, catalog, generic};

    #[test]
    fn rank_inversion_recovers_free_group_ranks() {
        // 1 - 2t is the product for a free group of rank 2
        assert_eq!(ranks_from_product(&[1, -2], 6), vec![2, 1, 2, 3, 6, 9]);
        let braid = series::mul(&series::mul(&[1, -1], &[1, -2], 8), &[1, -3], 8);
        assert_eq!(ranks_from_product(&braid, 5), vec![6, 4, 10, 21, 54]);
    }

    #[test]
    fn chen_formula_values() {
        assert_eq!(chen_formula(&[2; 5], 4), 15);
        assert_eq!(chen_formula(&[2; 5], 2), 5);
        assert_eq!(chen_formula(&[], 7), 0);
        // a free group of rank 3: (k-1) C(k+1, k)
        assert_eq!(chen_formula(&[3], 3), 8);
    }

    #[test]
    fn chen_equality_onset() {
        let c = chen_check(&[6, 4, 10, 15, 20], &[2; 5]);
        assert_eq!(c.equal_from, Some(3));
        assert!(c.lower_bound);
        assert_eq!(c.rows[0], ChenRow { k: 2, theta: 4, formula: 5 });
        assert!(chen_check(&[4, 0, 0], &[]).lower_bound);
    }

    #[test]
    fn koszul_identity_on_supersolvable() {
        let a = braid(4).unwrap();
        let p = build_poset(&a);
        let os = OsAlgebra::build(&p);
        let c = koszul_lcs_check(&p, &os, &[6, 4, 10, 21, 54]).unwrap();
        assert!(c.equal);
        assert_eq!(c.rhs, vec![1, -6, 11, -6, 0, 0]);
        let g = build_poset(&generic(4, 3).unwrap());
        assert!(koszul_lcs_check(&g, &OsAlgebra::build(&g), &[4, 0]).is_err());
    }

    #[test]
    fn boolean_tor_diagonal() {
        let c = tor_diagonal_check(&[4, 0, 0, 0], &[1, 4, 10, 20, 35]);
        assert!(c.equal);
    }

    #[test]
    fn resonance_lcs_verdicts() {
        let k4 = LieRanks { phi: vec![6, 4, 10, 21, 54], theta: vec![6, 4, 10, 15, 20] };
        let r = resonance_lcs_check(&k4, &[2; 5]);
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
        assert!(!r.series.equal);
        let kme = LieRanks { phi: vec![5, 2, 4, 6, 12], theta: vec![5, 2, 4, 6, 8] };
        assert_eq!(resonance_lcs_check(&kme, &[2, 2]).verdict, Verdict::Holds);
        let abelian = LieRanks { phi: vec![4, 0, 0, 0, 0], theta: vec![4, 0, 0, 0, 0] };
        let r = resonance_lcs_check(&abelian, &[]);
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.series.rhs, series::one(6));
    }

    #[test]
    fn full_report_for_braid() {
        let p = build_poset(&braid(4).unwrap());
        let os = OsAlgebra::build(&p);
        let r = formula_report(&p, &os, 4, &CensusOptions::default()).unwrap();
        let v: Vec<(&str, Verdict)> = r.verdicts.iter().map(|f| (f.name, f.verdict.clone())).collect();
        assert_eq!(
            v,
            vec![
                ("chen-tor-strand", Verdict::Holds),
                ("lcs-tor-diagonal", Verdict::Holds),
                ("lcs-koszul", Verdict::Holds),
                ("lcs-resonance", Verdict::HypothesisNotMet),
                ("chen-resonance", Verdict::Holds),
            ]
        );
        let c = build_poset(&catalog("cycle(4)").unwrap());
        let r = formula_report(&c, &OsAlgebra::build(&c), 4, &CensusOptions::default()).unwrap();
        assert!(r.verdicts.iter().all(|f| f.verdict != Verdict::Fails), "{:?}", r.verdicts);
        let b = build_poset(&boolean(3).unwrap());
        let r = formula_report(&b, &OsAlgebra::build(&b), 3, &CensusOptions::default()).unwrap();
        assert_eq!(r.verdicts[0].verdict, Verdict::Holds);
    }
}
