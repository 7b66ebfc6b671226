//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code with the rendered report.

use std::path::PathBuf;
use std::rc::Rc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{variables, MultiPoly, PrimeField};
use crate::arrangement::{
    build_poset, catalog, count_regions, members, parse_arrangement, write_arrangement, Arrangement,
    IntersectionPoset,
};
use crate::error::{Error, Result};
use crate::lie::formulas::{chen_check, formula_report, koszul_lcs_check};
use crate::lie::holonomy::{lie_ranks, DEFAULT_MAX_DEGREE, DEFAULT_WITT_LIMIT};
use crate::os::OsAlgebra;
use crate::par::{self, Parallelism};
use crate::pencils::{
    check_multinet, critical_locus_check, enumerate_neighborly, find_multiplicities, is_neighborly,
    pencil_certificate, singular_fibers, Multinet, NeighborlyOptions, Partition,
};
use crate::resonance::{
    enumerate_fp, exceptional_component, nonlinearity_witness, resonance_census_q, CensusOptions,
    CertifyOptions, EnumerateOptions, DEFAULT_BUDGET,
};

pub const DEFAULT_SEED: u64 = 0x5eed;

const CATALOG: &[&str] = &[
    "braid(l)",
    "boolean(n)",
    "generic(n,l)",
    "ceva(n)",
    "hessian",
    "cube_symmetry",
    "complete(v)",
    "cycle(v)",
    "complete_minus_edge(v)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Poset,
    Charpoly,
    Regions,
    Os,
    Resonance,
    Neighborly,
    Multinet,
    Pencil,
    Critical,
    Lcs,
    Chen,
    Formulas,
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldChoice {
    Q,
    Fp,
}

#[derive(Debug, Parser)]
#[command(name = "hyperarr", version, about = "Hyperplane arrangement invariants")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Arrangement file
    file: Option<PathBuf>,
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long, value_enum, default_value = "q")]
    field: FieldChoice,
    /// Prime for F_p computations and the census audit
    #[arg(long)]
    p: Option<u64>,
    /// Partition classes, e.g. "1,2|3,4|5,6" (labels or 1-based indices)
    #[arg(long)]
    classes: Option<String>,
    /// Comma-separated multiplicities, one per hyperplane
    #[arg(long)]
    mults: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Serialize)]
struct Summary {
    n: usize,
    ambient_dim: usize,
    rank: usize,
    flats_per_rank: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Debug, Serialize)]
struct RunReport {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    arrangement: Option<Summary>,
    seed: u64,
    result: Value,
    checks: Vec<Check>,
    #[serde(skip)]
    lines: Vec<String>,
}

struct Ctx {
    args: Args,
    arr: Option<Arrangement>,
    poset: Option<Rc<IntersectionPoset>>,
    lines: Vec<String>,
    checks: Vec<Check>,
}

impl Ctx {
    fn arrangement(&self) -> Result<&Arrangement> {
        self.arr
            .as_ref()
            .ok_or_else(|| Error::Precondition("an arrangement file or --catalog is required".into()))
    }

    fn poset(&self) -> Result<Rc<IntersectionPoset>> {
        self.arrangement()?;
        Ok(self.poset.clone().expect("built with the arrangement"))
    }

    fn labels(&self) -> Vec<String> {
        self.arr.as_ref().map(|a| a.labels().to_vec()).unwrap_or_default()
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn certify(&self) -> CertifyOptions {
        CertifyOptions { seed: self.args.seed, ..CertifyOptions::default() }
    }

    fn census_options(&self) -> CensusOptions {
        CensusOptions {
            certify: self.certify(),
            audit_prime: Some(self.args.p.unwrap_or(5)),
            budget: self.args.budget,
            ..CensusOptions::default()
        }
    }

    fn partition(&self) -> Result<Partition> {
        let text = self
            .args
            .classes
            .as_deref()
            .ok_or_else(|| Error::Precondition("--classes is required".into()))?;
        Partition::parse(text, self.arrangement()?)
    }

    fn mults(&self) -> Result<Option<Vec<u32>>> {
        let Some(s) = self.args.mults.as_deref() else { return Ok(None) };
        let v: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Precondition(format!("bad multiplicity `{t}`"))))
            .collect::<Result<_>>()?;
        if v.len() != self.arrangement()?.n() {
            return Err(Error::Precondition("--mults needs one entry per hyperplane".into()));
        }
        Ok(Some(v))
    }

    fn multinet(&self) -> Result<Multinet> {
        let part = self.partition()?;
        let poset = &*self.poset()?;
        let given = self.mults()?;
        let mults = given.unwrap_or_else(|| self.arrangement().map(|a| a.multiplicities().to_vec()).unwrap_or_default());
        let rep = check_multinet(poset, &part, &mults)?;
        if rep.ok {
            return Ok(Multinet { partition: part, multiplicities: mults, degree: rep.degree.unwrap() });
        }
        if self.args.mults.is_none() {
            if let Some(m) = find_multiplicities(poset, &part, 4)? {
                return Ok(m);
            }
        }
        Err(Error::Precondition(format!(
            "not a multinet: {}",
            rep.violations.iter().map(|v| v.reason.clone()).collect::<Vec<_>>().join("; ")
        )))
    }
}

fn set_labels(labels: &[String], s: u64) -> String {
    members(s).map(|i| labels[i].clone()).collect::<Vec<_>>().join(",")
}

/// Univariate integer polynomial in `t`, ascending degree.
pub fn format_univariate(coeffs: &[i64], var: &str) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let mag = c.unsigned_abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            mono
        } else {
            format!("{mag}{mono}")
        };
        if out.is_empty() {
            out = if c < 0 { format!("-{body}") } else { body };
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn poset_cmd(cx: &mut Ctx) -> Result<Value> {
    let p = &*cx.poset()?;
    let labels = cx.labels();
    let fp = p.fingerprint();
    let mut lines = vec![format!("mobius (sorted): {:?}", fp.mobius)];
    let mut multiple = Vec::new();
    for f in p.flats_of_rank(2).iter().filter(|f| f.size() >= 3) {
        multiple.push(json!({"hyperplanes": set_labels(&labels, f.set), "mobius": p.mobius_of(f.set)}));
        lines.push(format!("multiple flat {{{}}} mu = {}", set_labels(&labels, f.set), p.mobius_of(f.set).unwrap()));
    }
    let ss = p.supersolvable();
    lines.push(match &ss {
        Some(e) => format!("supersolvable, exponents {e:?}"),
        None => "not supersolvable".into(),
    });
    for l in lines {
        cx.line(l);
    }
    Ok(json!({"fingerprint": fp, "multiple_rank2_flats": multiple, "exponents": ss}))
}

fn charpoly_cmd(cx: &mut Ctx) -> Result<Value> {
    let chi = cx.poset()?.characteristic_polynomial();
    cx.line(format!("chi(t) = {}", format_univariate(&chi, "t")));
    let a = cx.arrangement()?.clone();
    if a.is_realized() && a.n() > 0 {
        let del = build_poset(&a.deletion(0)?).characteristic_polynomial();
        let res = build_poset(&a.restriction(0)?).characteristic_polynomial();
        let mut rhs = del.clone();
        for (k, c) in res.iter().enumerate() {
            rhs[k] -= c;
        }
        cx.check("deletion-restriction", rhs == chi, format!("chi(A\\H) - chi(A^H) = {}", format_univariate(&rhs, "t")));
    }
    Ok(json!({"coefficients": chi, "polynomial": format_univariate(&chi, "t")}))
}

fn regions_cmd(cx: &mut Ctx) -> Result<Value> {
    let r = count_regions(cx.arrangement()?)?;
    cx.line(format!("regions: {}", r.regions));
    cx.line(format!("bounded: {}", r.bounded));
    Ok(serde_json::to_value(r).expect("serializable"))
}

fn os_cmd(cx: &mut Ctx) -> Result<Value> {
    let p = &*cx.poset()?;
    let os = OsAlgebra::build(p);
    let h = os.hilbert_series();
    let poin = p.poincare_polynomial();
    let hi: Vec<i64> = h.iter().map(|&x| x as i64).collect();
    cx.line(format!("Hilb(A, t) = {}", format_univariate(&hi, "t")));
    cx.check("hilbert-vs-poincare", hi == poin, format!("Poincare polynomial {}", format_univariate(&poin, "t")));
    let labels = cx.labels();
    let basis: Vec<Vec<String>> = (0..=os.top_degree())
        .map(|k| os.basis(k).iter().map(|&s| set_labels(&labels, s)).collect())
        .collect();
    Ok(json!({"hilbert_series": h, "nbc_basis": basis}))
}

fn resonance_cmd(cx: &mut Ctx) -> Result<Value> {
    let p = &*cx.poset()?;
    let os = OsAlgebra::build(p);
    match cx.args.field {
        FieldChoice::Q => {
            let census = resonance_census_q(&os, p, &cx.census_options())?;
            let labels = cx.labels();
            let mut lines = Vec::new();
            for c in &census.components {
                let cert = c.certification.as_ref().unwrap();
                lines.push(format!(
                    "{:?} dim {} on {{{}}}: samples {}/{}, generic rank {}",
                    c.kind,
                    c.dimension,
                    c.support.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>().join(","),
                    cert.samples_passed,
                    cert.samples,
                    cert.generic_rank
                ));
            }
            lines.push(format!("components: {}", census.components.len()));
            if let Some(a) = &census.audit {
                match &a.skipped {
                    Some(why) => lines.push(format!("F_{} audit skipped: {why}", a.prime)),
                    None => lines.push(format!(
                        "F_{} audit: {} projective points, {} exceptions",
                        a.prime,
                        a.points_checked,
                        a.exceptions.len()
                    )),
                }
            }
            for l in lines {
                cx.line(l);
            }
            if let Some(a) = census.audit.as_ref().filter(|a| a.skipped.is_none()) {
                cx.check("fp-audit", a.exceptions.is_empty(), format!("{} uncovered points", a.exceptions.len()));
            }
            Ok(serde_json::to_value(&census).expect("serializable"))
        }
        FieldChoice::Fp => {
            let prime = cx.args.p.unwrap_or(3);
            let field = PrimeField::new(prime)?;
            let opts = EnumerateOptions { budget: cx.args.budget, projective: true, parallelism: Parallelism::default() };
            let fp = enumerate_fp(&os, &field, 1, 1, &opts)?;
            cx.line(format!("F_{prime}: {} resonant projective points ({} points)", fp.points.len(), fp.len()));
            let mut out = json!({"prime": prime, "projective_points": fp.points.len(), "points": fp.len()});
            if p.rank() <= 3 {
                let census = resonance_census_q(&os, p, &CensusOptions { audit_prime: None, ..cx.census_options() })?;
                let reds: Vec<_> = census.components.iter().map(|c| c.reduce_mod(&field)).collect();
                let extra = exceptional_component(&fp, &census.components)?;
                let witness = nonlinearity_witness(prime, &fp.all_points(), &reds);
                let n_extra = extra.as_ref().map_or(0, |e| e.points.len());
                cx.line(format!("outside the reductions of {} Q-components: {n_extra}", census.components.len()));
                match &witness {
                    Some((u, v)) => cx.line(format!("nonlinearity witness: u = {u:?}, v = {v:?}")),
                    None => cx.line("no nonlinearity witness"),
                }
                out["q_components"] = json!(census.components.len());
                out["exceptional"] = serde_json::to_value(&extra).expect("serializable");
                out["witness"] = json!(witness);
            }
            Ok(out)
        }
    }
}

fn neighborly_cmd(cx: &mut Ctx) -> Result<Value> {
    let labels = cx.labels();
    if cx.args.classes.is_some() {
        let part = cx.partition()?;
        let ok = is_neighborly(&*cx.poset()?, &part)?;
        cx.line(format!("{}: {}", part.describe(&labels), if ok { "neighborly" } else { "not neighborly" }));
        return Ok(json!({"partition": part.describe(&labels), "neighborly": ok}));
    }
    let found = enumerate_neighborly(&*cx.poset()?, &NeighborlyOptions::default())?;
    let described: Vec<String> = found.iter().map(|p| p.describe(&labels)).collect();
    for d in &described {
        cx.line(d.clone());
    }
    cx.line(format!("neighborly partitions: {}", found.len()));
    Ok(json!({"partitions": described}))
}

fn multinet_cmd(cx: &mut Ctx) -> Result<Value> {
    let part = cx.partition()?;
    let labels = cx.labels();
    let mults = match cx.mults()? {
        Some(m) => m,
        None => match find_multiplicities(&*cx.poset()?, &part, 4)? {
            Some(m) => m.multiplicities,
            None => cx.arrangement()?.multiplicities().to_vec(),
        },
    };
    let rep = check_multinet(&*cx.poset()?, &part, &mults)?;
    cx.line(format!("{} with multiplicities {mults:?}: {}", part.describe(&labels), if rep.ok { "multinet" } else { "not a multinet" }));
    for v in &rep.violations {
        cx.line(format!("violation at {{{}}}: {}", set_labels(&labels, v.flat), v.reason));
    }
    Ok(serde_json::to_value(&rep).expect("serializable"))
}

fn fmt_q(x: &BigRational) -> String {
    x.to_string()
}

fn pencil_cmd(cx: &mut Ctx) -> Result<Value> {
    let net = cx.multinet()?;
    let cert = pencil_certificate(cx.arrangement()?, &*cx.poset()?, &net)?;
    for (j, q) in cert.class_polys.iter().enumerate() {
        cx.line(format!("Q{} = {q}", j + 1));
    }
    let deps: Vec<String> = cert
        .dependencies
        .iter()
        .map(|d| format!("({})", d.iter().map(fmt_q).collect::<Vec<_>>().join(", ")))
        .collect();
    cx.line(format!("pencil of degree {} spanned by Q1, Q2; dependencies {}", net.degree, deps.join(" ")));
    let fibers = singular_fibers(&cert);
    for (j, (a, b)) in fibers.iter().enumerate() {
        cx.line(format!("fiber {}: (a, b) = ({}, {}) in a Q1 + b Q2", j + 1, fmt_q(a), fmt_q(b)));
    }
    Ok(json!({
        "degree": net.degree,
        "multiplicities": net.multiplicities,
        "certificate": cert,
        "fibers": fibers.iter().map(|(a, b)| [fmt_q(a), fmt_q(b)]).collect::<Vec<_>>(),
    }))
}

/// Critical set of the master function with class weights alpha, beta,
/// gamma = -alpha - beta, for a three-class conic pencil: the conic
/// beta Q1 - alpha Q2 = 0 is parametrized from a base point of the pencil.
fn critical_cmd(cx: &mut Ctx) -> Result<Value> {
    let net = cx.multinet()?;
    let arr = cx.arrangement()?.clone();
    let poset = &*cx.poset()?;
    if net.partition.num_classes() != 3 || net.degree != 2 || arr.ambient_dim() != 3 {
        return Err(Error::Precondition(
            "critical-set parametrization needs a three-class pencil of conics in three coordinates".into(),
        ));
    }
    let cert = pencil_certificate(&arr, poset, &net)?;
    let classes = net.partition.classes();
    let base = poset
        .flats_of_rank(2)
        .iter()
        .find(|f| classes.iter().all(|&c| c & f.set != 0))
        .and_then(|f| f.subspace_basis.clone())
        .and_then(|b| b.into_iter().next())
        .ok_or_else(|| Error::Precondition("pencil has no rational base point".into()))?;
    let v = variables(&["alpha", "beta", "s", "t"]);
    let (al, be) = (MultiPoly::var(&v, 0), MultiPoly::var(&v, 1));
    let ga = al.add(&be).neg();
    let class_weight = [al.clone(), be.clone(), ga];
    let weights: Vec<MultiPoly> = (0..arr.n())
        .map(|i| match net.partition.class_of(i) {
            Some(j) => class_weight[j].scale(&BigRational::from_integer(net.multiplicities[i].into())),
            None => MultiPoly::zero(&v),
        })
        .collect();
    let pivot = base.iter().position(|c| !c.is_zero()).unwrap();
    let free: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let (s, t) = (MultiPoly::var(&v, 2), MultiPoly::var(&v, 3));
    let mut dir = vec![MultiPoly::zero(&v); 3];
    dir[free[0]] = s;
    dir[free[1]] = t;
    let point: Vec<MultiPoly> = base.iter().map(|c| MultiPoly::constant(&v, c.clone())).collect();
    // conic beta Q1 - alpha Q2 through the base point; the second
    // intersection with the line base + lambda dir is
    // F(dir) base - 2 B(base, dir) dir, with 2B(base, dir) = F(base + dir) - F(dir)
    let f_at = |x: &[MultiPoly]| -> MultiPoly {
        let q1 = cert.class_polys[0].compose(x);
        let q2 = cert.class_polys[1].compose(x);
        be.mul(&q1).sub(&al.mul(&q2))
    };
    let fd = f_at(&dir);
    let sum: Vec<MultiPoly> = point.iter().zip(&dir).map(|(a, b)| a.add(b)).collect();
    let two_b = f_at(&sum).sub(&fd);
    let family: Vec<MultiPoly> = point
        .iter()
        .zip(&dir)
        .map(|(p, d)| fd.mul(p).sub(&two_b.mul(d)))
        .collect();
    let rep = critical_locus_check(&arr, &weights, &family)?;
    for (i, x) in family.iter().enumerate() {
        cx.line(format!("family coordinate {}: {x}", i + 1));
    }
    cx.line(format!(
        "critical equations vanish on the family: {}",
        if rep.holds { "yes" } else { "no" }
    ));
    cx.check("critical-residuals-zero", rep.holds, format!("{} residuals", rep.residuals.len()));
    Ok(json!({
        "family": family.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "holds": rep.holds,
        "residuals": rep.residuals.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    }))
}

fn max_degree(cx: &Ctx, default: usize) -> usize {
    cx.args.max_degree.unwrap_or(default)
}

fn lcs_cmd(cx: &mut Ctx) -> Result<Value> {
    let n = max_degree(cx, DEFAULT_MAX_DEGREE);
    let p = &*cx.poset()?;
    let ranks = lie_ranks(p, n, DEFAULT_WITT_LIMIT)?;
    cx.line(format!("phi (holonomy): {:?}", ranks.phi));
    let os = OsAlgebra::build(p);
    if let Ok(c) = koszul_lcs_check(p, &os, &ranks.phi) {
        cx.check("lcs-koszul", c.equal, format!("prod {:?} vs Hilb(A,-t) {:?}", c.lhs, c.rhs));
    }
    Ok(json!({"phi": ranks.phi, "source": "holonomy"}))
}

fn chen_cmd(cx: &mut Ctx) -> Result<Value> {
    let n = max_degree(cx, DEFAULT_MAX_DEGREE);
    let p = &*cx.poset()?;
    let ranks = lie_ranks(p, n, DEFAULT_WITT_LIMIT)?;
    cx.line(format!("theta (holonomy): {:?}", ranks.theta));
    let os = OsAlgebra::build(p);
    let mut out = json!({"theta": ranks.theta, "source": "holonomy"});
    if let Ok(census) = resonance_census_q(&os, p, &CensusOptions { audit_prime: None, ..cx.census_options() }) {
        let dims: Vec<usize> = census.components.iter().map(|c| c.dimension).collect();
        let c = chen_check(&ranks.theta, &dims);
        for r in &c.rows {
            cx.line(format!("k={}: theta {} formula {}", r.k, r.theta, r.formula));
        }
        cx.line(match c.equal_from {
            Some(k) => format!("equality from k = {k} through {n}"),
            None => format!("no equality at k = {n}"),
        });
        cx.check("chen-lower-bound", c.lower_bound, "theta_k >= formula for k >= 3");
        out["resonance_dims"] = json!(dims);
        out["comparison"] = serde_json::to_value(&c).expect("serializable");
    }
    Ok(out)
}

fn formulas_cmd(cx: &mut Ctx) -> Result<Value> {
    let n = max_degree(cx, 5);
    let p = &*cx.poset()?;
    let os = OsAlgebra::build(p);
    let report = formula_report(p, &os, n, &cx.census_options())?;
    cx.line(format!("phi: {:?}", report.ranks.phi));
    cx.line(format!("theta: {:?}", report.ranks.theta));
    for v in &report.verdicts {
        cx.line(format!("{:<18} {:<20} {}", v.name, v.verdict.to_string(), v.detail));
    }
    Ok(serde_json::to_value(&report).expect("serializable"))
}

fn catalog_cmd(cx: &mut Ctx) -> Result<Value> {
    match &cx.arr {
        Some(a) => {
            let text = write_arrangement(a);
            for l in text.lines() {
                cx.lines.push(l.to_string());
            }
            Ok(json!({"file": text}))
        }
        None => {
            for name in CATALOG {
                cx.line(*name);
            }
            Ok(json!({"names": CATALOG}))
        }
    }
}

fn load(args: &Args) -> Result<Option<Arrangement>> {
    match (&args.file, &args.catalog) {
        (Some(_), Some(_)) => Err(Error::Precondition("give either a file or --catalog, not both".into())),
        (Some(path), None) => Ok(Some(parse_arrangement(&std::fs::read_to_string(path)?)?)),
        (None, Some(name)) => Ok(Some(catalog(name)?)),
        (None, None) => Ok(None),
    }
}

fn execute(args: Args) -> Result<RunReport> {
    let arr = load(&args)?;
    let poset = arr.as_ref().map(|a| Rc::new(build_poset(a)));
    let arrangement = poset.as_ref().map(|p| Summary {
        n: p.n(),
        ambient_dim: p.ambient_dim(),
        rank: p.rank(),
        flats_per_rank: (0..=p.rank()).map(|r| p.flats_of_rank(r).len()).collect(),
    });
    let command = format!("{:?}", args.command).to_lowercase();
    let mut cx = Ctx { args, arr, poset, lines: Vec::new(), checks: Vec::new() };
    let result = match cx.args.command {
        Command::Poset => poset_cmd(&mut cx),
        Command::Charpoly => charpoly_cmd(&mut cx),
        Command::Regions => regions_cmd(&mut cx),
        Command::Os => os_cmd(&mut cx),
        Command::Resonance => resonance_cmd(&mut cx),
        Command::Neighborly => neighborly_cmd(&mut cx),
        Command::Multinet => multinet_cmd(&mut cx),
        Command::Pencil => pencil_cmd(&mut cx),
        Command::Critical => critical_cmd(&mut cx),
        Command::Lcs => lcs_cmd(&mut cx),
        Command::Chen => chen_cmd(&mut cx),
        Command::Formulas => formulas_cmd(&mut cx),
        Command::Catalog => catalog_cmd(&mut cx),
    }?;
    Ok(RunReport { command, arrangement, seed: cx.args.seed, result, checks: cx.checks, lines: cx.lines })
}

fn render_text(r: &RunReport) -> String {
    let mut out = format!("command: {}\n", r.command);
    if let Some(a) = &r.arrangement {
        out += &format!("arrangement: n = {}, ambient dim = {}, rank = {}, flats per rank = {:?}\n", a.n, a.ambient_dim, a.rank, a.flats_per_rank);
    }
    out += &format!("seed: {}\n", r.seed);
    for l in &r.lines {
        out += l;
        out.push('\n');
    }
    for c in &r.checks {
        out += &format!("check {}: {} ({})\n", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
    }
    out
}

/// Runs the CLI on `argv` (including the program name). Returns the exit
/// code and the text written to stdout (or the error message).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    let json_out = args.json;
    let threads = args.threads;
    let start = Instant::now();
    let res = par::with_threads(threads, || execute(args));
    let ms = start.elapsed().as_millis();
    match res {
        Ok(report) => {
            let body = if json_out {
                let mut v = serde_json::to_value(&report).expect("serializable");
                v["timing_ms"] = json!(ms);
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            } else {
                render_text(&report) + &format!("time: {ms} ms\n")
            };
            (0, body)
        }
        Err(e) => {
            let code = if matches!(e, Error::Resource(_)) { 2 } else { 1 };
            (code, format!("error: {e}\n"))
        }
    }
}
