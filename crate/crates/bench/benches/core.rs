use apexobs_core::cacti::generate_z;
use apexobs_core::obstruction::builtin_catalog;
use apexobs_core::{
    canonical_form, is_minor, make_named, min_apex_size, solve_system, verify_catalog, ClassId,
    MinorTester,
};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn canon(c: &mut Criterion) {
    let zs = generate_z(4).unwrap();
    c.bench_function("canonical_form Z_4", |b| {
        b.iter(|| {
            zs.iter()
                .map(|z| canonical_form(black_box(&z.graph)).len())
                .sum::<usize>()
        })
    });
}

fn minor(c: &mut Criterion) {
    let cat = builtin_catalog(1).unwrap();
    let h = make_named("K4_minus").unwrap();
    c.bench_function("minor K4- in catalog, cold memo", |b| {
        b.iter(|| {
            let t = MinorTester::new();
            cat.records
                .iter()
                .filter(|r| t.is_minor(&h, &r.graph))
                .count()
        })
    });
    let z = make_named("Z").unwrap();
    c.bench_function("minor Z in catalog, shared memo", |b| {
        b.iter(|| {
            cat.records
                .iter()
                .filter(|r| is_minor(&z, &r.graph))
                .count()
        })
    });
}

fn apex(c: &mut Criterion) {
    let zs = generate_z(4).unwrap();
    c.bench_function("min_apex_size Z_4 sub-unicyclic", |b| {
        b.iter(|| {
            zs.iter()
                .map(|z| min_apex_size(&z.graph, ClassId::SubUnicyclic))
                .sum::<usize>()
        })
    });
}

fn catalog(c: &mut Criterion) {
    c.bench_function("verify catalog k=1", |b| {
        b.iter(|| {
            let mut cat = builtin_catalog(1).unwrap();
            verify_catalog(&mut cat).verified
        })
    });
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_system");
    g.sample_size(10);
    for n in [64, 256] {
        g.bench_function(format!("N={n}"), |b| {
            b.iter(|| solve_system(black_box(n)).unwrap().order())
        });
    }
    g.finish();
}

criterion_group!(benches, canon, minor, apex, catalog, series);
criterion_main!(benches);
