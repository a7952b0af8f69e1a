use criterion::{criterion_group, criterion_main, Criterion};
use sr_duality::corpus::corpus_entry;
use sr_duality::graded::{random_lsop, DEFAULT_LSOP_ATTEMPTS};
use sr_duality::homology::betti_of;
use sr_duality::sigma::SigmaModule;
use sr_duality::{FieldSpec, Matrix, RelativeComplex, SimplicialComplex};
use std::hint::black_box;

fn fp() -> FieldSpec {
    FieldSpec::prime(32003).unwrap()
}

fn complex(name: &str) -> SimplicialComplex {
    corpus_entry(name).unwrap().complex
}

fn quotient_hilbert(k: &SimplicialComplex, field: FieldSpec) -> Vec<i64> {
    let lsop = random_lsop(k, field, 0, DEFAULT_LSOP_ATTEMPTS).unwrap();
    SigmaModule::new(&RelativeComplex::absolute(k.clone()), &lsop)
        .unwrap()
        .quotient_hilbert()
}

fn sigma(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma");
    g.sample_size(10);
    for name in ["torus7", "rp2-6", "boundary-simplex-5"] {
        let k = complex(name);
        g.bench_function(format!("{name}/F_32003"), |b| {
            b.iter(|| quotient_hilbert(black_box(&k), fp()))
        });
    }
    let k = complex("torus7");
    g.bench_function("torus7/Q", |b| {
        b.iter(|| quotient_hilbert(black_box(&k), FieldSpec::rationals()))
    });
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    for name in ["torus7", "bary-mobius5"] {
        let k = complex(name);
        for (label, field) in [
            ("F_2", FieldSpec::prime(2).unwrap()),
            ("Q", FieldSpec::rationals()),
        ] {
            g.bench_function(format!("{name}/{label}"), |b| {
                b.iter(|| betti_of(black_box(&k), field))
            });
        }
    }
    g.finish();
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    let n = 60;
    let entries: Vec<i64> = (0..n * n)
        .map(|i| ((i * 7919 + 13) % 201) as i64 - 100)
        .collect();
    for (label, field) in [("F_32003", fp()), ("Q", FieldSpec::rationals())] {
        let m = Matrix::from_i64(field, n, n, &entries).unwrap();
        g.bench_function(format!("{n}x{n}/{label}"), |b| {
            b.iter(|| black_box(&m).rank())
        });
    }
    g.finish();
}

criterion_group!(benches, sigma, homology, rank);
criterion_main!(benches);
