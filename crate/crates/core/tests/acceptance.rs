//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion fails in a way that is not recorded as a known
//! defect of the criterion itself.

mod common;

use std::time::{Duration, Instant};

use common::{deletion_restriction_charpoly, lcs_from_exponents, sampled_regions};
use hyperarr::arith::{qi, variables, Field, MultiPoly, PrimeField, Rationals};
use hyperarr::arrangement::{build_poset, catalog, count_regions, set_of};
use hyperarr::lie::formulas::{chen_check, ranks_from_product, resonance_lcs_check, tor_diagonal_check, Verdict};
use hyperarr::lie::holonomy::lie_ranks;
use hyperarr::lie::resolution::{diagonal_tor_series, linear_strand_over_exterior};
use hyperarr::os::OsAlgebra;
use hyperarr::pencils::{
    critical_locus_check, find_multiplicities, pencil_certificate, singular_fibers, Multinet, Partition,
};
use hyperarr::resonance::{
    aomoto_cohomology, enumerate_fp, exceptional_component, in_resonance, nonlinearity_witness,
    resonance_census_q, CensusOptions, ComponentKind, EnumerateOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Status {
    Pass,
    Fail,
    /// The criterion asks for something the mathematics rules out; the
    /// computed answer was checked instead.
    Unattainable,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn falling_factorial(l: usize) -> Vec<i64> {
    // t (t - 1) ... (t - l + 1), ascending
    let mut p = vec![1i64];
    for j in 0..l as i64 {
        let mut q = vec![0; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            q[k + 1] += c;
            q[k] -= j * c;
        }
        p = q;
    }
    p
}

fn combinatorics() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for l in 3..=5usize {
        let a = catalog(&format!("braid({l})")).unwrap();
        let chi = build_poset(&a).characteristic_polynomial();
        let regions = count_regions(&a).unwrap().regions as usize;
        let fact: usize = (1..=l).product();
        let sampled = sampled_regions(&a, 60_000, l as u64);
        let this = chi == falling_factorial(l)
            && chi == deletion_restriction_charpoly(&a)
            && regions == fact
            && sampled == fact;
        ok &= this;
        notes.push(format!("braid({l}): {regions} regions"));
    }
    outcome(ok, notes.join(", "))
}

fn os_algebra() -> Outcome {
    let p = build_poset(&catalog("braid(4)").unwrap());
    let h = OsAlgebra::build(&p).hilbert_series();
    let mobius: Vec<usize> = (0..=p.rank())
        .map(|r| p.flats_of_rank(r).iter().map(|f| p.mobius_of(f.set).unwrap().unsigned_abs() as usize).sum())
        .collect();
    let e = p.supersolvable().unwrap_or_default();
    let mut prod = vec![1usize];
    for &x in &e {
        let mut q = vec![0; prod.len() + 1];
        for (k, &c) in prod.iter().enumerate() {
            q[k] += c;
            q[k + 1] += c * x;
        }
        prod = q;
    }
    let ok = h == [1, 6, 11, 6] && h == mobius && h == prod && e == [1, 2, 3];
    outcome(ok, format!("Hilb = {h:?}, exponents {e:?}"))
}

fn check_complex<F: Field>(os: &OsAlgebra, field: &F, rng: &mut ChaCha8Rng, reps: usize) -> bool {
    let chi: i64 = (0..=os.top_degree()).map(|k| if k % 2 == 0 { 1 } else { -1 } * os.dim(k) as i64).sum();
    (0..reps).all(|_| {
        let a: Vec<F::Elem> = (0..os.n()).map(|_| field.from_i64(rng.gen_range(-5..=5))).collect();
        let squares = (0..os.top_degree()).all(|k| {
            os.multiplication_matrix(field, &a, k + 1).mul(&os.multiplication_matrix(field, &a, k)).is_zero()
        });
        let h = aomoto_cohomology(os, field, &a);
        let e: i64 = h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        squares && e == chi
    })
}

fn aomoto() -> Outcome {
    let names = [
        "braid(3)", "braid(4)", "boolean(3)", "generic(4,3)", "ceva(2)", "ceva(3)", "cube_symmetry", "hessian",
        "cycle(4)", "complete_minus_edge(4)",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let f3 = PrimeField::new(3).unwrap();
    let f5 = PrimeField::new(5).unwrap();
    let mut ok = true;
    for name in names {
        let os = OsAlgebra::build(&build_poset(&catalog(name).unwrap()));
        ok &= check_complex(&os, &Rationals, &mut rng, 200);
        ok &= check_complex(&os, &f3, &mut rng, 200);
        ok &= check_complex(&os, &f5, &mut rng, 200);
    }
    outcome(ok, format!("{} arrangements x 3 fields x 200 weights", names.len()))
}

fn opposite_pairs() -> Partition {
    // labels 12 13 14 23 24 34
    Partition::new(vec![set_of(&[0, 5]), set_of(&[1, 4]), set_of(&[2, 3])]).unwrap()
}

fn census() -> Outcome {
    let p = build_poset(&catalog("braid(4)").unwrap());
    let os = OsAlgebra::build(&p);
    let c = resonance_census_q(&os, &p, &CensusOptions::default()).unwrap();
    let local = c.components.iter().filter(|x| x.kind == ComponentKind::Local).count();
    let essential: Vec<_> = c.components.iter().filter(|x| x.kind == ComponentKind::Essential).collect();
    let certified = c.components.iter().all(|x| x.certification.as_ref().is_some_and(|c| c.passed()));
    let audit = c.audit.as_ref().unwrap();
    let ok = c.components.len() == 5
        && c.components.iter().all(|x| x.dimension == 2)
        && local == 4
        && essential.len() == 1
        && essential[0].partition.as_ref() == Some(&opposite_pairs())
        && certified
        && audit.prime == 5
        && audit.skipped.is_none()
        && audit.exceptions.is_empty();
    outcome(ok, format!("{} components ({local} local), F_5 exceptions {}", c.components.len(), audit.exceptions.len()))
}

fn pencils() -> Outcome {
    let a = catalog("braid(4)").unwrap();
    let p = build_poset(&a);
    let net = find_multiplicities(&p, &opposite_pairs(), 2).unwrap().unwrap();
    let cert = pencil_certificate(&a, &p, &net).unwrap();
    let unit = cert.dependencies.len() == 1
        && cert.dependencies[0].iter().all(|x| *x == qi(1) || *x == qi(-1));
    let fibers = singular_fibers(&cert);
    let conics = net.degree == 2 && cert.class_polys.iter().all(|q| q.total_degree() == Some(2));
    // planar model: the forms x +- y etc. give exactly (1, 1, 1)
    let c2 = catalog("ceva(2)").unwrap();
    let pc = build_poset(&c2);
    let part = Partition::new(vec![set_of(&[0, 1]), set_of(&[2, 3]), set_of(&[4, 5])]).unwrap();
    let net2 = find_multiplicities(&pc, &part, 2).unwrap().unwrap();
    let cert2 = pencil_certificate(&c2, &pc, &net2).unwrap();
    let planar = cert2.dependencies == vec![vec![qi(1), qi(1), qi(1)]];

    let cube = catalog("cube_symmetry").unwrap();
    let pq = build_poset(&cube);
    let cube_part = Partition::new(vec![set_of(&[0, 5, 6]), set_of(&[1, 7, 8]), set_of(&[2, 3, 4])]).unwrap();
    let cube_net = Multinet { partition: cube_part, multiplicities: cube.multiplicities().to_vec(), degree: 4 };
    let quartics = pencil_certificate(&cube, &pq, &cube_net).is_ok_and(|c| {
        c.dependencies.len() == 1 && c.class_polys.iter().all(|q| q.total_degree() == Some(4))
    });
    let ok = unit && conics && fibers.len() == 3 && planar && quartics;
    outcome(ok, format!("braid(4) conic pencil {:?}, ceva(2) (1,1,1): {planar}, cube quartics: {quartics}", cert.dependencies[0].iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn critical() -> Outcome {
    let arr = catalog("ceva(2)").unwrap();
    let v = variables(&["alpha", "beta", "s", "t"]);
    let (al, be) = (MultiPoly::var(&v, 0), MultiPoly::var(&v, 1));
    let ga = al.add(&be).neg();
    let weights = vec![al.clone(), al.clone(), be.clone(), be.clone(), ga.clone(), ga.clone()];
    let c = |k: i64| MultiPoly::constant(&v, qi(k));
    let sq = |p: &MultiPoly| p.mul(p);
    let q = |x: &[MultiPoly]| [sq(&x[0]).sub(&sq(&x[1])), sq(&x[1]).sub(&sq(&x[2])), sq(&x[2]).sub(&sq(&x[0]))];
    // lines through the base point (1, 1, 1) meet the conic beta Q1 = alpha Q2 again at
    // F(D) P - (F(P + D) - F(D)) D
    let f = |x: &[MultiPoly]| {
        let [q1, q2, _] = q(x);
        be.mul(&q1).sub(&al.mul(&q2))
    };
    let point = [c(1), c(1), c(1)];
    let dir = [c(0), MultiPoly::var(&v, 2), MultiPoly::var(&v, 3)];
    let sum: Vec<MultiPoly> = point.iter().zip(&dir).map(|(a, b)| a.add(b)).collect();
    let fd = f(&dir);
    let two_b = f(&sum).sub(&fd);
    let family: Vec<MultiPoly> = point.iter().zip(&dir).map(|(p, d)| fd.mul(p).sub(&two_b.mul(d))).collect();
    let rep = critical_locus_check(&arr, &weights, &family).unwrap();
    let [q1, q2, q3] = q(&family);
    let ratios = be.mul(&q1).sub(&al.mul(&q2)).is_zero() && ga.mul(&q2).sub(&be.mul(&q3)).is_zero();
    let nondegenerate = !q1.is_zero();
    outcome(
        rep.holds && ratios && nondegenerate,
        format!("residuals zero: {}, [Q1:Q2:Q3] = [alpha:beta:gamma]: {ratios}", rep.holds),
    )
}

fn mod_p() -> Outcome {
    let p = build_poset(&catalog("hessian").unwrap());
    let os = OsAlgebra::build(&p);
    let f3 = PrimeField::new(3).unwrap();
    let fp = enumerate_fp(&os, &f3, 1, 1, &EnumerateOptions { projective: true, ..EnumerateOptions::default() }).unwrap();
    let c = resonance_census_q(&os, &p, &CensusOptions { audit_prime: None, ..CensusOptions::default() }).unwrap();
    let reds: Vec<_> = c.components.iter().map(|x| x.reduce_mod(&f3)).collect();
    let extra = exceptional_component(&fp, &c.components).unwrap();
    let Some((u, w)) = nonlinearity_witness(3, &fp.all_points(), &reds) else {
        return outcome(false, "no witness found");
    };
    let sum: Vec<u64> = u.iter().zip(&w).map(|(a, b)| (a + b) % 3).collect();
    let verified = in_resonance(&os, &f3, &u, 1, 1) && in_resonance(&os, &f3, &w, 1, 1) && !in_resonance(&os, &f3, &sum, 1, 1);
    let n_extra = extra.as_ref().map_or(0, |e| e.points.len());
    outcome(
        verified && n_extra > 0,
        format!("{} projective classes, {n_extra} outside the Q-components, witness u = {u:?}, v = {w:?}", fp.points.len()),
    )
}

fn lcs_chen() -> Outcome {
    let p = build_poset(&catalog("braid(4)").unwrap());
    let r = lie_ranks(&p, 5, 250_000).unwrap();
    let witt = ranks_from_product(&[1, -6, 11, -6], 5);
    let oracle = lcs_from_exponents(&[1, 2, 3], 5);
    let phi_ok = r.phi == [6, 4, 10, 21, 54]
        && r.phi.iter().zip(&witt).all(|(a, b)| *a as i128 == *b)
        && r.phi.iter().zip(&oracle).all(|(a, b)| *a as i64 == *b);
    let chen = chen_check(&r.theta, &[2; 5]);
    let theta_ok = r.theta[1..] == [4, 10, 15, 20]
        && chen.rows.iter().all(|row| (row.k == 2) == (row.theta as i128 != row.formula))
        && chen.equal_from == Some(3);
    outcome(phi_ok && theta_ok, format!("phi = {:?}, theta = {:?}, k = 2 mismatch 4 vs 5 as expected", r.phi, r.theta))
}

fn tor() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for name in ["braid(3)", "braid(4)", "boolean(4)"] {
        let p = build_poset(&catalog(name).unwrap());
        let os = OsAlgebra::build(&p);
        let r = lie_ranks(&p, 4, 250_000).unwrap();
        let t = diagonal_tor_series(&os, 4).unwrap();
        let c = tor_diagonal_check(&r.phi, &t);
        ok &= c.equal;
        notes.push(format!("{name} diagonal {t:?}"));
    }
    for name in ["braid(3)", "braid(4)", "generic(4,3)"] {
        let p = build_poset(&catalog(name).unwrap());
        let os = OsAlgebra::build(&p);
        let r = lie_ranks(&p, 4, 250_000).unwrap();
        let strand = linear_strand_over_exterior(&os, 4).unwrap();
        ok &= strand[..] == r.theta[1..4];
        notes.push(format!("{name} strand {strand:?}"));
    }
    outcome(ok, notes.join("; "))
}

fn graphic() -> Outcome {
    let mut contract = true;
    let mut hypothesis_everywhere = true;
    let mut notes = Vec::new();
    for name in ["complete(4)", "cycle(4)", "complete_minus_edge(4)"] {
        let p = build_poset(&catalog(name).unwrap());
        let os = OsAlgebra::build(&p);
        let r = lie_ranks(&p, 5, 250_000).unwrap();
        let c = resonance_census_q(&os, &p, &CensusOptions::default()).unwrap();
        let dims: Vec<usize> = c.components.iter().map(|x| x.dimension).collect();
        let lcs = resonance_lcs_check(&r, &dims);
        let chen = chen_check(&r.theta, &dims);
        let chen_ok = chen.lower_bound && chen.equal_from.is_some_and(|k| k <= 3);
        let lcs_ok = match name {
            // phi_4 = 21 but theta_4 = 15: the hypothesis fails
            "complete(4)" => lcs.verdict == Verdict::HypothesisNotMet && r.phi(4) == 21 && r.theta(4) == 15,
            _ => lcs.verdict == Verdict::Holds,
        };
        hypothesis_everywhere &= lcs.hypothesis == Some(true);
        contract &= chen_ok && lcs_ok;
        notes.push(format!("{name}: phi {:?} theta {:?} lcs {}", r.phi, r.theta, lcs.verdict));
    }
    let detail = notes.join("; ");
    match (contract, hypothesis_everywhere) {
        (true, true) => outcome(true, detail),
        (true, false) => Outcome {
            status: Status::Unattainable,
            detail: format!("hypothesis phi_4 = theta_4 is false for K4; {detail}"),
        },
        (false, _) => outcome(false, detail),
    }
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("combinatorics of braid(3..5)", 5, combinatorics),
        ("OS algebra Hilbert series", 1, os_algebra),
        ("Aomoto complex d^2 = 0 and Euler characteristic", 30, aomoto),
        ("resonance census of braid(4)", 120, census),
        ("pencils of conics and quartics", 10, pencils),
        ("critical locus of the conic master function", 10, critical),
        ("mod-3 nonlinearity for the Hessian", 300, mod_p),
        ("LCS and Chen ranks of braid(4)", 120, lcs_chen),
        ("Tor identities", 300, tor),
        ("graphic arrangements K4, C4, K4-e", 300, graphic),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| outcome(false, "panicked"));
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let label = match (&out.status, in_time) {
            (Status::Pass, true) => "PASS",
            (Status::Unattainable, true) => "FAIL (known, see notes)",
            _ => {
                failed += 1;
                "FAIL"
            }
        };
        println!(
            "criterion {:>2}: {label} {name} [{:.2}s / {limit}s] {}",
            i + 1,
            took.as_secs_f64(),
            out.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
