use criterion::{criterion_group, criterion_main, Criterion};

use deltaknot::identify::load_reference;
use deltaknot::tabulate::{
    dedupe_mirrors, enumerate_assignments, filter_knot_projections, read_tb, run_pipeline, FingerprintCache,
    PipelineConfig,
};
use deltaknot::tangles::max_disjoint_counts;
use deltaknot_bench::data_dir;

fn pipeline(c: &mut Criterion) {
    let data = data_dir();
    let table = load_reference(&data.join("reference/knots.csv")).unwrap();
    let tb4 = filter_knot_projections(&read_tb(&data, 4).unwrap());

    c.bench_function("enumerate_dedupe_tb4", |b| {
        b.iter(|| tb4.iter().map(|p| dedupe_mirrors(&enumerate_assignments(p)).len()).sum::<usize>())
    });
    c.bench_function("tangle_selection_tb4", |b| {
        b.iter(|| tb4.iter().map(|p| max_disjoint_counts(&p.planar_map()).t1).sum::<usize>())
    });
    let mut g = c.benchmark_group("tabulate");
    g.sample_size(10);
    g.bench_function("max_n_3_cold", |b| {
        let cfg = PipelineConfig { tb_dir: data.clone(), max_n: 3 };
        b.iter(|| run_pipeline(&cfg, &table, &mut FingerprintCache::in_memory()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
