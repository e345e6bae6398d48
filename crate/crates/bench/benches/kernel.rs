use criterion::{black_box, criterion_group, criterion_main, Criterion};
use modal_bench::corpus;
use modal_core::kernel::Kernel;

fn check_files(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    for (name, file) in corpus() {
        group.bench_function(name, |b| b.iter(|| Kernel::new().check_file(black_box(&file))));
    }
    group.finish();
}

fn normal_forms(c: &mut Criterion) {
    let files = corpus();
    let mut kernel = Kernel::new();
    let (_, localize) = files.iter().find(|(n, _)| *n == "localize.mtt").unwrap();
    assert!(kernel.check_file(localize).ok());
    let names: Vec<&str> = localize.names().collect();
    c.bench_function("normalize localize.mtt", |b| {
        b.iter(|| {
            for n in &names {
                black_box(kernel.normal_form(n));
            }
        })
    });
}

criterion_group!(benches, check_files, normal_forms);
criterion_main!(benches);
