//! Substitution cost on both engines: graph splicing versus the span
//! composition formula, plus the one-off presentation conversion.

use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use weft_core::{
    compose_formula, random_diagram, random_diagram_with_signature, substitute, wd_to_span,
    GenConfig, WiringDiagram,
};
use weft_core::diagram::VertexId;

struct Pair {
    host: WiringDiagram,
    at: VertexId,
    slot: usize,
    sub: WiringDiagram,
}

/// One host of at least three quarters of `boxes` boxes with a size-matched
/// replacement for a randomly chosen slot.
fn pair(boxes: usize, seed: u64) -> Pair {
    let cfg = GenConfig { max_boxes: boxes, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let host = loop {
        let d = random_diagram(&mut rng, &cfg);
        if d.box_count() * 4 >= boxes * 3 {
            break d;
        }
    };
    let slot = rng.random_range(0..host.box_count());
    let at = host.box_ids().nth(slot).unwrap();
    let b = host.get_box(at).unwrap().clone();
    let sub = random_diagram_with_signature(&mut rng, &cfg, &b.inputs, &b.outputs);
    Pair { host, at, slot, sub }
}

fn bench_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("substitution");
    for boxes in [4usize, 8, 16, 32] {
        let p = pair(boxes, 0xb1ab);
        let host_span = wd_to_span(&p.host).unwrap();
        let sub_span = wd_to_span(&p.sub).unwrap();

        group.bench_with_input(BenchmarkId::new("graph", boxes), &p, |b, p| {
            let targets: BTreeMap<_, _> = [(p.at, &p.sub)].into();
            b.iter(|| substitute(black_box(&p.host), black_box(&targets)).unwrap());
        });
        group.bench_with_input(
            BenchmarkId::new("span_formula", boxes),
            &(&sub_span, p.slot, &host_span),
            |b, (sub, slot, host)| {
                b.iter(|| compose_formula(black_box(sub), *slot, black_box(host)).unwrap());
            },
        );
        group.bench_with_input(BenchmarkId::new("to_span", boxes), &p.host, |b, host| {
            b.iter(|| wd_to_span(black_box(host)).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_engines);
criterion_main!(benches);
