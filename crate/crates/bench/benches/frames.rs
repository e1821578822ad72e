use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use sympcoh::dedekind::{build_frame, pushforward_apartment, ClassGroup, QuadraticOrder};
use sympcoh::ClassPair;

fn frames(c: &mut Criterion) {
    let mut group = c.benchmark_group("frames");
    group.sample_size(10);
    for disc in [-20, -23] {
        let order = QuadraticOrder::new(disc).unwrap();
        let cg = ClassGroup::for_order(&order);
        let e = |i| cg.element(i).unwrap();
        let pairs = vec![ClassPair::new(e(1), e(0)), ClassPair::new(e(0), e(1))];
        group.bench_function(format!("build_frame_n2_d{}", -disc), |b| b.iter(|| build_frame(&order, black_box(&pairs)).unwrap()));
        let frame = build_frame(&order, &pairs).unwrap();
        group.bench_function(format!("pushforward_n2_d{}", -disc), |b| b.iter(|| pushforward_apartment(black_box(&frame)).unwrap()));
    }
    let order = QuadraticOrder::new(-20).unwrap();
    let cg = ClassGroup::for_order(&order);
    let e = |i| cg.element(i).unwrap();
    let pairs = vec![ClassPair::new(e(1), e(0)); 3];
    group.bench_function("build_frame_n3_d20", |b| b.iter(|| build_frame(&order, black_box(&pairs)).unwrap()));
    group.finish();
}

criterion_group!(benches, frames);
criterion_main!(benches);
