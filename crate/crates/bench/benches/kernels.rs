use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use g4maxwell::catalog::frame;
use g4maxwell::sampling::{random_alpha, random_point, sample_metric, stream, SignatureClass};
use g4maxwell::{maxwell_matrix, nullspace, pde_residual, scan_classify, structure_constants, GroupId, ScanConfig};

fn kernels(c: &mut Criterion) {
    let g = GroupId::G4III { alpha: 1.0 };
    let mut rng = stream(1, 0, 0);
    let p = random_point(&g, &mut rng);
    let eta = sample_metric(&mut rng, SignatureClass::Lorentzian);
    let a = random_alpha(&mut rng);
    let cs = structure_constants(&g);

    c.bench_function("frame G4-III", |b| b.iter(|| frame(black_box(&g), black_box(&p))));
    c.bench_function("pde_residual G4-III", |b| b.iter(|| pde_residual(&g, black_box(&eta), &a, black_box(&p))));
    c.bench_function("maxwell_matrix + nullspace", |b| {
        b.iter(|| nullspace(&maxwell_matrix(black_box(&cs), black_box(&eta)).m, 1e-9))
    });
    let cfg = ScanConfig { count: 1000, workers: 1, ..ScanConfig::default() };
    c.bench_function("scan 1000 G4-I:c=0.5", |b| b.iter(|| scan_classify(&GroupId::G4I { c: 0.5 }, black_box(&cfg))));
}

criterion_group!(benches, kernels);
criterion_main!(benches);
