use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use sympcoh::dedekind::{complement_in, rank_one_summand_with_class, ClassGroup, QuadraticOrder, RLattice};
use sympcoh::linalg::from_i64;

fn sample(order: &QuadraticOrder) -> RLattice {
    let rows = from_i64(&[
        vec![2, 1, 0, 3, -1, 0, 1, 2, 0, 1, -2, 1],
        vec![0, 3, 1, -1, 2, 2, 0, 1, 1, 0, 0, 2],
        vec![1, -2, 2, 0, 0, 1, 3, -1, 2, 0, 1, 1],
    ]);
    RLattice::from_integer_rows(order, 3, &rows)
}

fn lattice(c: &mut Criterion) {
    let order = QuadraticOrder::new(-20).unwrap();
    let l = sample(&order);
    let u = l.saturate().unwrap();
    let free = RLattice::free(&order, 3);
    let p = ClassGroup::for_order(&order).element(1).unwrap();

    c.bench_function("saturate_rank3_n3", |b| b.iter(|| black_box(&l).saturate().unwrap()));
    c.bench_function("orthogonal_complement_n3", |b| b.iter(|| black_box(&u).orthogonal_complement().unwrap()));
    c.bench_function("complement_in_free_n3", |b| b.iter(|| complement_in(black_box(&u), &free).unwrap()));
    c.bench_function("rank_one_summand_nontrivial_class", |b| {
        b.iter(|| rank_one_summand_with_class(black_box(&free), &p).unwrap())
    });
}

criterion_group!(benches, lattice);
criterion_main!(benches);
