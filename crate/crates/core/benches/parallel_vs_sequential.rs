use std::hint::black_box;

use autalg_core::cascade::wreath_semigroup_with;
use autalg_core::first_type::{check_first_axioms_with, semigroupify, SemigroupAutomatonFirst};
use autalg_core::sample;
use autalg_core::second_type::{quotient_construct_with, GeneratorHom, PureAutomatonSecond};
use autalg_core::{Execution, DEFAULT_CAP};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

/// First seed whose closure lands in `lo..=hi` elements.
fn automaton_with_order(states: usize, inputs: usize, lo: usize, hi: usize) -> SemigroupAutomatonFirst {
    (0u64..)
        .find_map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = sample::random_pure_first(&mut rng, states, inputs, 2);
            let g = semigroupify(&m, hi).ok()?;
            (g.gamma().order() >= lo).then_some(g)
        })
        .unwrap()
}

fn axioms(c: &mut Criterion) {
    let m = automaton_with_order(5, 2, 300, 800);
    let mut group = c.benchmark_group("first_type_axioms");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, m.gamma().order()), &m, |b, m| {
            b.iter(|| black_box(check_first_axioms_with(m, exec)))
        });
    }
    group.finish();
}

fn associativity(c: &mut Criterion) {
    let m = automaton_with_order(5, 2, 300, 800);
    let table = m.gamma().clone();
    let mut group = c.benchmark_group("associativity_exhaustive");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, table.order()), &table, |b, t| {
            b.iter(|| black_box(t.find_non_associative_exhaustive(exec)))
        });
    }
    group.finish();
}

fn wreath(c: &mut Criterion) {
    let m1 = automaton_with_order(2, 2, 5, 8);
    let m2 = automaton_with_order(3, 1, 3, 6);
    let mut group = c.benchmark_group("wreath_build");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(wreath_semigroup_with(m1.gamma(), m2.states(), m2.next(), m2.gamma(), DEFAULT_CAP, exec).unwrap()))
        });
    }
    group.finish();
}

fn quotient(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // every start state is explored independently
    let m: PureAutomatonSecond = sample::random_pure_second(&mut rng, 4000, 3, 2);
    let mu = sample::random_generator_hom(&mut rng, 3, 4, 64);
    let nu = GeneratorHom::new(2, autalg_core::SemigroupTable::trivial(), vec![0, 0]).unwrap();
    let mut group = c.benchmark_group("quotient");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(quotient_construct_with(&m, &mu, &nu, exec).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, axioms, associativity, wreath, quotient);
criterion_main!(benches);
