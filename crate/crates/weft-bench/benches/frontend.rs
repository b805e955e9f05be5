//! Parsing and compiling surface terms of growing length.

use std::fmt::Write;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use weft_core::{compile, parse};

/// A source file declaring `n` chained generators and one term using them
/// all: f1 ; f2 ; ... interleaved with tensored identity padding.
fn chain_source(n: usize) -> String {
    let mut src = String::from("ob t\n");
    for i in 1..=n {
        writeln!(src, "hom f{i} : t -> t").unwrap();
    }
    src.push_str("term big = ");
    for i in 1..=n {
        if i > 1 {
            src.push_str(" ; ");
        }
        write!(src, "(f{i} * id[t]) ; braid[t|t]").unwrap();
    }
    src.push('\n');
    src
}

fn bench_frontend(c: &mut Criterion) {
    let mut group = c.benchmark_group("frontend");
    for n in [4usize, 16, 64] {
        let src = chain_source(n);

        group.bench_with_input(BenchmarkId::new("parse", n), &src, |b, src| {
            b.iter(|| parse(black_box(src)).unwrap());
        });

        let (sig, terms) = parse(&src).unwrap();
        group.bench_with_input(BenchmarkId::new("compile", n), &terms[0].1, |b, e| {
            b.iter(|| compile(black_box(e), &sig).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_frontend);
criterion_main!(benches);
