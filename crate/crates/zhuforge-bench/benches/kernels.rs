//! Benchmarks for the computational kernels: example construction, the
//! quotient presentation pipeline, tensor table filling, bimodule assembly,
//! fusion dimensions, and the full axiom sweep.

use criterion::{criterion_group, criterion_main, Criterion};
use zhuforge_core::{
    build_bimodule, build_fock, build_heisenberg, build_virasoro, check_axioms, fusion_dim,
    o_span, regular_module, star, tensor_voa, zhu_algebra, AssocAlgebra, Bimod, CheckBounds,
    Scalar, SparseVec, Windowed,
};

fn half() -> Scalar {
    "1/2".parse().expect("scalar literal")
}

fn bench_builders(c: &mut Criterion) {
    c.bench_function("build_heisenberg_5", |b| {
        b.iter(|| build_heisenberg(5).expect("builds"))
    });
    c.bench_function("build_virasoro_half_5", |b| {
        b.iter(|| build_virasoro(5, half()).expect("builds"))
    });
    let h4 = build_heisenberg(4).expect("builds");
    c.bench_function("build_fock_1_over_h4", |b| {
        b.iter(|| build_fock(&h4, Scalar::from(1), 4).expect("builds"))
    });
}

fn bench_quotient_pipeline(c: &mut Criterion) {
    let h5 = build_heisenberg(5).expect("builds");
    c.bench_function("o_span_heisenberg_5", |b| b.iter(|| o_span(&h5).expect("spans")));
    c.bench_function("zhu_algebra_heisenberg_5", |b| {
        b.iter(|| zhu_algebra(&h5).expect("presents"))
    });

    // The product kernel alone, over every ambient basis pair at cutoff 4.
    let h4 = build_heisenberg(4).expect("builds");
    let n = h4.total_dim();
    let units: Vec<SparseVec> = (0..n).map(|i| SparseVec::unit(n, i)).collect();
    c.bench_function("star_all_pairs_heisenberg_4", |b| {
        b.iter(|| {
            let mut in_window = 0usize;
            for x in &units {
                for y in &units {
                    if let Windowed::In(_) = star(&h4, x, y) {
                        in_window += 1;
                    }
                }
            }
            in_window
        })
    });
}

fn bench_tensor_and_bimodule(c: &mut Criterion) {
    let h3 = build_heisenberg(3).expect("builds");
    c.bench_function("tensor_voa_h3_h3", |b| {
        b.iter(|| tensor_voa(&h3, &h3).expect("tensors"))
    });

    let pres = zhu_algebra(&h3).expect("presents");
    let f1 = build_fock(&h3, Scalar::from(1), 3).expect("builds");
    c.bench_function("bimodule_fock1_over_h3", |b| {
        b.iter(|| build_bimodule(&h3, &pres, &f1).expect("assembles"))
    });
}

fn bench_fusion(c: &mut Criterion) {
    let ground = AssocAlgebra::ground();
    let alg = AssocAlgebra::direct_sum(&ground, &ground);
    let bim = Bimod::regular(&alg);
    let m = regular_module(&alg);
    c.bench_function("fusion_dim_two_sector_regular", |b| {
        b.iter(|| fusion_dim(&alg, &bim, &m, &m).expect("computes"))
    });
}

fn bench_axioms(c: &mut Criterion) {
    let h3 = build_heisenberg(3).expect("builds");
    let bounds = CheckBounds::for_cutoff(3);
    let mut group = c.benchmark_group("axioms");
    group.sample_size(20);
    group.bench_function("check_axioms_heisenberg_3", |b| {
        b.iter(|| check_axioms(&h3, &bounds))
    });
    group.finish();
}

criterion_group!(
    kernels,
    bench_builders,
    bench_quotient_pipeline,
    bench_tensor_and_bimodule,
    bench_fusion,
    bench_axioms
);
criterion_main!(kernels);
