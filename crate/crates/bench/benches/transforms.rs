use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gvbps_bench::dense_bps;
use gvbps_core::gvtransform::{gv_from_gw, gw_from_gv};

fn transforms(c: &mut Criterion) {
    let mut g = c.benchmark_group("gv_transform");
    g.sample_size(10);
    for degree in [3u64, 5] {
        let bps = dense_bps(degree, 4);
        let gw = gw_from_gv(&bps, 6, degree).unwrap();
        g.bench_with_input(BenchmarkId::new("gw_from_gv", degree), &bps, |b, bps| {
            b.iter(|| gw_from_gv(bps, 6, degree).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("gv_from_gw", degree), &gw, |b, gw| {
            b.iter(|| gv_from_gw(gw, 6, degree).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, transforms);
criterion_main!(benches);
