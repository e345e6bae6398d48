use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use modal_bench::presheaves;
use modal_core::nuclei::{coframe_check, downset_frame, enumerate_nuclei, FinitePoset};
use modal_core::sheaves::{factorize, fracture_check, sheafify, PresheafMap, Subterminal, Topology};

fn nuclei(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_nuclei");
    for n in 2..=4 {
        let frames: Vec<_> = FinitePoset::all_up_to_iso(n).iter().map(|p| downset_frame(p).unwrap()).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &frames, |b, frames| {
            b.iter(|| frames.iter().map(|f| enumerate_nuclei(f).unwrap().len()).sum::<usize>())
        });
    }
    group.finish();
    let frames: Vec<_> = FinitePoset::all_up_to_iso(3).iter().map(|p| downset_frame(p).unwrap()).collect();
    c.bench_function("coframe_check 3", |b| b.iter(|| frames.iter().all(|f| coframe_check(f).unwrap().is_none())));
}

fn sheaves(c: &mut Criterion) {
    let cases = presheaves(3, 2);
    c.bench_function("sheafify 3 points, stalks <= 2, all nuclei", |b| {
        b.iter(|| {
            for (p, xs) in &cases {
                let f = downset_frame(p).unwrap();
                for j in enumerate_nuclei(&f).unwrap() {
                    let top = Topology::new(&f, &j);
                    for x in xs {
                        black_box(sheafify(x, top));
                    }
                }
            }
        })
    });
    c.bench_function("fracture_check 3 points, stalks <= 2", |b| {
        b.iter(|| {
            for (p, xs) in &cases {
                for bits in 0..=p.full() {
                    if let Ok(q) = Subterminal::new(p, bits) {
                        for x in xs {
                            black_box(fracture_check(q, x).verdict);
                        }
                    }
                }
            }
        })
    });
    let small = presheaves(2, 2);
    c.bench_function("factorize to the terminal, 2 points", |b| {
        b.iter(|| {
            for (p, xs) in &small {
                let f = downset_frame(p).unwrap();
                let one = modal_core::sheaves::Presheaf::terminal(p.clone());
                for j in enumerate_nuclei(&f).unwrap() {
                    let top = Topology::new(&f, &j);
                    for x in xs {
                        black_box(factorize(&PresheafMap::to_terminal(x), x, &one, top));
                    }
                }
            }
        })
    });
}

criterion_group!(benches, nuclei, sheaves);
criterion_main!(benches);
