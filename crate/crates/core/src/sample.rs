//! Exhaustive enumerations of tiny objects and random generators of valid ones,
//! for tests, benchmarks and the acceptance suite.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{all_functions, generate_semigroup, SemigroupTable, Table, Transformation};
use crate::cascade::{wreath_subsemigroup, CascadeTripleSemigroup, WreathElement};
use crate::error::{Error, Result};
use crate::first_type::{check_first_axioms, semigroupify, PureAutomatonFirst, SemigroupAutomatonFirst};
use crate::group::MealyMachine;
use crate::second_type::{check_second_axioms, GeneratorHom, PureAutomatonSecond, SemigroupAutomatonSecond};
use crate::FiniteSet;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    all_functions(n, n)
        .into_iter()
        .filter(|p| p.iter().collect::<HashSet<_>>().len() == n)
        .collect()
}

fn is_associative(rows: &[Vec<usize>]) -> bool {
    let n = rows.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| rows[rows[x][y]][z] == rows[x][rows[y][z]])))
}

/// One representative of every isomorphism class of semigroups of the given
/// order, each the lexicographically least table of its class. Brute force,
/// so only practical up to order 3.
pub fn semigroups_up_to_iso(order: usize) -> Vec<SemigroupTable> {
    assert!((1..=3).contains(&order), "enumeration is only practical for order 1..=3");
    let perms = permutations(order);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for flat in all_functions(order * order, order) {
        let rows: Vec<Vec<usize>> = flat.chunks(order).map(<[usize]>::to_vec).collect();
        if !is_associative(&rows) {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                // relabel x -> p[x]
                let mut inv = vec![0; order];
                for (x, &px) in p.iter().enumerate() {
                    inv[px] = x;
                }
                (0..order)
                    .map(|i| (0..order).map(|j| p[rows[inv[i]][inv[j]]]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap();
        if seen.insert(canonical.clone()) {
            out.push(SemigroupTable::new(canonical, vec![], None).expect("associative table"));
        }
    }
    out
}

/// Every right action `states × Γ → states` of `g`.
pub fn all_actions(g: &SemigroupTable, states: usize) -> Vec<Table> {
    let n = g.order();
    all_functions(states * n, states)
        .into_iter()
        .map(|flat| Table::from_fn(states, n, states, |a, x| flat[a * n + x]))
        .filter(|t| (0..states).all(|a| (0..n).all(|x| (0..n).all(|y| t.get(a, g.mul(x, y)) == t.get(t.get(a, x), y)))))
        .collect()
}

/// Every first-type automaton over `g` with the given state and output counts.
pub fn all_first_automata(g: &SemigroupTable, states: usize, outputs: usize) -> Vec<SemigroupAutomatonFirst> {
    let n = g.order();
    let (a, b) = (FiniteSet::new(states).unwrap(), FiniteSet::new(outputs).unwrap());
    let outs = all_functions(states * n, outputs);
    let mut found = Vec::new();
    for next in all_actions(g, states) {
        for flat in &outs {
            let out = Table::from_fn(states, n, outputs, |s, x| flat[s * n + x]);
            let m = SemigroupAutomatonFirst::new(a.clone(), g.clone(), b.clone(), next.clone(), out).unwrap();
            if check_first_axioms(&m).is_pass() {
                found.push(m);
            }
        }
    }
    found
}

/// Every second-type automaton `(A, Γ, Σ)` with `|A| = states`.
pub fn all_second_automata(g: &SemigroupTable, sigma: &SemigroupTable, states: usize) -> Vec<SemigroupAutomatonSecond> {
    let n = g.order();
    let a = FiniteSet::new(states).unwrap();
    let outs = all_functions(states * n, sigma.order());
    let mut found = Vec::new();
    for next in all_actions(g, states) {
        for flat in &outs {
            let out = Table::from_fn(states, n, sigma.order(), |s, x| flat[s * n + x]);
            let m = SemigroupAutomatonSecond::new(a.clone(), g.clone(), sigma.clone(), next.clone(), out).unwrap();
            if check_second_axioms(&m).is_pass() {
                found.push(m);
            }
        }
    }
    found
}

fn random_table<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, codomain: usize) -> Table {
    let flat: Vec<usize> = (0..rows * cols).map(|_| rng.gen_range(0..codomain)).collect();
    Table::from_fn(rows, cols, codomain, |r, c| flat[r * cols + c])
}

pub fn random_pure_first<R: Rng + ?Sized>(rng: &mut R, states: usize, inputs: usize, outputs: usize) -> PureAutomatonFirst {
    PureAutomatonFirst::new(
        FiniteSet::new(states).unwrap(),
        FiniteSet::new(inputs).unwrap(),
        FiniteSet::new(outputs).unwrap(),
        random_table(rng, states, inputs, states),
        random_table(rng, states, inputs, outputs),
    )
    .unwrap()
}

pub fn random_pure_second<R: Rng + ?Sized>(rng: &mut R, states: usize, inputs: usize, outputs: usize) -> PureAutomatonSecond {
    PureAutomatonSecond::new(
        FiniteSet::new(states).unwrap(),
        FiniteSet::new(inputs).unwrap(),
        FiniteSet::new(outputs).unwrap(),
        random_table(rng, states, inputs, states),
        random_table(rng, states, inputs, outputs),
    )
    .unwrap()
}

/// Random semigroup automaton obtained by closing a random pure one.
pub fn random_first_semigroup<R: Rng + ?Sized>(
    rng: &mut R,
    states: usize,
    inputs: usize,
    outputs: usize,
    cap: usize,
) -> Result<SemigroupAutomatonFirst> {
    semigroupify(&random_pure_first(rng, states, inputs, outputs), cap)
}

/// A surjection from the free semigroup on `alphabet` letters onto the
/// semigroup generated by random transformations of `points` points. Retries
/// until the image has at most `max_order` elements.
pub fn random_generator_hom<R: Rng + ?Sized>(rng: &mut R, alphabet: usize, points: usize, max_order: usize) -> GeneratorHom {
    loop {
        let gens: Vec<Transformation> = (0..alphabet)
            .map(|_| Transformation::new((0..points).map(|_| rng.gen_range(0..points)).collect()).unwrap())
            .collect();
        match generate_semigroup(&gens, |x, y| x.compose(y).unwrap(), max_order) {
            Ok(cl) => return GeneratorHom::new(alphabet, cl.table.clone(), cl.table.generators().to_vec()).unwrap(),
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => panic!("closure of transformations failed: {e}"),
        }
    }
}

pub fn random_mealy<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: usize) -> MealyMachine {
    MealyMachine::new(
        FiniteSet::new(states).unwrap(),
        FiniteSet::new(alphabet).unwrap(),
        random_table(rng, states, alphabet, states),
        random_table(rng, states, alphabet, alphabet),
    )
    .unwrap()
}

/// Random machine whose every state permutes the alphabet.
pub fn random_invertible_mealy<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: usize) -> MealyMachine {
    let next = random_table(rng, states, alphabet, states);
    let mut out = Table::from_fn(states, alphabet, alphabet, |_, x| x);
    for q in 0..states {
        let mut perm: Vec<usize> = (0..alphabet).collect();
        perm.shuffle(rng);
        for (x, &y) in perm.iter().enumerate() {
            out.set(q, x, y).unwrap();
        }
    }
    MealyMachine::new(FiniteSet::new(states).unwrap(), FiniteSet::new(alphabet).unwrap(), next, out).unwrap()
}

/// A valid cascade triple for `(m1, m2)`: `Γ` is the subsemigroup of the
/// wreath product generated by `gens` random elements, with `α` and `β` read
/// off the coordinates.
pub fn random_cascade_triple<R: Rng + ?Sized>(
    rng: &mut R,
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
    gens: usize,
    cap: usize,
) -> Result<CascadeTripleSemigroup> {
    let a2 = m2.states().size();
    let elements: Vec<WreathElement> = (0..gens)
        .map(|_| WreathElement {
            bar: (0..a2).map(|_| rng.gen_range(0..m1.gamma().order())).collect(),
            gamma2: rng.gen_range(0..m2.gamma().order()),
        })
        .collect();
    let cl = wreath_subsemigroup(m1.gamma(), m2.states(), m2.next(), m2.gamma(), &elements, cap)?;
    let n = cl.table.order();
    let alpha = Table::from_fn(a2, n, m1.gamma().order(), |a, g| cl.elements[g].bar[a]);
    let beta = cl.elements.iter().map(|e| e.gamma2).collect();
    CascadeTripleSemigroup::new(cl.table, alpha, beta)
}

/// A triple with arbitrary tables over a random `Γ`; usually violates the laws.
pub fn random_unchecked_triple<R: Rng + ?Sized>(
    rng: &mut R,
    gamma: SemigroupTable,
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
) -> CascadeTripleSemigroup {
    let n = gamma.order();
    let alpha = random_table(rng, m2.states().size(), n, m1.gamma().order());
    let beta = (0..n).map(|_| rng.gen_range(0..m2.gamma().order())).collect();
    CascadeTripleSemigroup::new(gamma, alpha, beta).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::check_semigroup_triple;
    use crate::DEFAULT_CAP;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn semigroup_counts_up_to_isomorphism() {
        assert_eq!(semigroups_up_to_iso(1).len(), 1);
        assert_eq!(semigroups_up_to_iso(2).len(), 5);
        assert_eq!(semigroups_up_to_iso(3).len(), 24);
    }

    #[test]
    fn actions_of_the_trivial_semigroup_are_idempotents() {
        // a ∘ e = (a ∘ e) ∘ e, so the action is an idempotent map
        let idempotents = all_functions(3, 3)
            .into_iter()
            .filter(|f| (0..3).all(|a| f[f[a]] == f[a]))
            .count();
        assert_eq!(all_actions(&SemigroupTable::trivial(), 3).len(), idempotents);
        assert_eq!(idempotents, 10);
    }

    #[test]
    fn enumerated_automata_satisfy_the_axioms() {
        for g in semigroups_up_to_iso(2) {
            let ms = all_first_automata(&g, 2, 2);
            assert!(!ms.is_empty());
            assert!(ms.iter().all(|m| check_first_axioms(m).is_pass()));
        }
        let z2 = SemigroupTable::new(vec![vec![0, 1], vec![1, 0]], vec![], None).unwrap();
        assert!(all_second_automata(&z2, &z2, 2).iter().all(|m| check_second_axioms(m).is_pass()));
    }

    #[test]
    fn random_generators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let h = random_generator_hom(&mut rng, 3, 3, 4);
            assert!(h.target().order() <= 4);
            let m = random_invertible_mealy(&mut rng, 3, 2);
            assert!(m.is_invertible());
            let m1 = random_first_semigroup(&mut rng, 2, 2, 2, DEFAULT_CAP).unwrap();
            let m2 = random_first_semigroup(&mut rng, 2, 1, 2, DEFAULT_CAP).unwrap();
            let t = random_cascade_triple(&mut rng, &m1, &m2, 2, DEFAULT_CAP).unwrap();
            assert!(check_semigroup_triple(&t, &m1, &m2).unwrap().is_pass());
        }
    }
}
