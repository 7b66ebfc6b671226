use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperarr::arith::PrimeField;
use hyperarr::arrangement::{build_poset, catalog};
use hyperarr::os::OsAlgebra;
use hyperarr::par::Parallelism;
use hyperarr::resonance::{enumerate_fp, resonance_census_q, CensusOptions, CertifyOptions, EnumerateOptions};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("rayon", Parallelism::Rayon)];

fn fp_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_fp");
    g.sample_size(10);
    for (name, p) in [("braid(4)", 5u64), ("ceva(3)", 3)] {
        let os = OsAlgebra::build(&build_poset(&catalog(name).unwrap()));
        let field = PrimeField::new(p).unwrap();
        for (mode, parallelism) in MODES {
            let opts = EnumerateOptions { projective: true, parallelism, ..EnumerateOptions::default() };
            g.bench_with_input(BenchmarkId::new(mode, format!("{name} mod {p}")), &opts, |b, opts| {
                b.iter(|| enumerate_fp(&os, &field, 1, 1, opts).unwrap())
            });
        }
    }
    g.finish();
}

fn census_certification(c: &mut Criterion) {
    let mut g = c.benchmark_group("resonance_census");
    g.sample_size(10);
    let p = build_poset(&catalog("ceva(3)").unwrap());
    let os = OsAlgebra::build(&p);
    for (mode, parallelism) in MODES {
        let opts = CensusOptions {
            certify: CertifyOptions { parallelism, ..CertifyOptions::default() },
            audit_prime: None,
            ..CensusOptions::default()
        };
        g.bench_function(BenchmarkId::new(mode, "ceva(3)"), |b| b.iter(|| resonance_census_q(&os, &p, &opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, fp_enumeration, census_certification);
criterion_main!(benches);
