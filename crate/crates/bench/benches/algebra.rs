use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use disord_bench::{counting, polynomial, SCRIPT};
use disord_core::script::{run_script, Options};
use disord_core::{parse_mvp, print_mvp, BinaryOp, Disord, Reduction, StorageOrder, Value};

fn mvp_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("mvp_mul");
    for terms in [8, 32, 128] {
        let (p, q) = (polynomial(1, terms), polynomial(2, terms));
        group.bench_with_input(BenchmarkId::from_parameter(terms), &terms, |b, _| {
            b.iter(|| black_box(&p).mul(black_box(&q)))
        });
    }
    group.finish();
}

fn mvp_text(c: &mut Criterion) {
    let p = polynomial(7, 64);
    let printed = print_mvp(&p);
    let body = &printed[printed.find('\n').unwrap() + 1..];
    c.bench_function("mvp_print_64", |b| b.iter(|| print_mvp(black_box(&p))));
    c.bench_function("mvp_parse_64", |b| b.iter(|| parse_mvp(black_box(body)).unwrap()));
}

fn disord_ops(c: &mut Criterion) {
    let d = counting(10_000);
    let sq = Disord::elementwise_binary(BinaryOp::Mul, &d, &d).unwrap();
    let mask = Disord::elementwise_binary(BinaryOp::Gt, &d, Value::Number(5_000.0)).unwrap();
    c.bench_function("disord_elementwise_10k", |b| {
        b.iter(|| Disord::elementwise_binary(BinaryOp::Add, black_box(&d), black_box(&sq)).unwrap())
    });
    c.bench_function("disord_sum_10k", |b| b.iter(|| black_box(&d).reduce(Reduction::Sum).unwrap()));
    c.bench_function("disord_mask_roundtrip_10k", |b| {
        b.iter(|| {
            let part = d.extract_bool(black_box(&mask)).unwrap();
            d.replace_bool(&mask, part).unwrap()
        })
    });
}

fn script(c: &mut Criterion) {
    for (name, order) in [("insertion", StorageOrder::Insertion), ("shuffle", StorageOrder::Shuffle(1))] {
        c.bench_function(&format!("script_{name}"), |b| {
            b.iter(|| run_script(black_box(SCRIPT), Options::with_order(order)))
        });
    }
}

criterion_group!(benches, mvp_mul, mvp_text, disord_ops, script);
criterion_main!(benches);
