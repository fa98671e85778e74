//! Automata of the second type: outputs form a semigroup and accumulate along
//! a run by the cocycle law `a∗(γ₁γ₂) = (a∗γ₁)·((a∘γ₁)∗γ₂)`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::algebra::{FiniteSet, SemigroupTable, Table, Word};
use crate::error::{check_index, check_size, Error, Result};
use crate::par::{self, Execution};
use crate::verdict::Verdict;

/// `(A, X, Y)` with `∘: A×X→A` and `∗: A×X→Y`. No law is imposed on the pure object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureAutomatonSecond {
    pub(crate) states: FiniteSet,
    pub(crate) inputs: FiniteSet,
    pub(crate) outputs: FiniteSet,
    pub(crate) next: Table,
    pub(crate) out: Table,
}

impl PureAutomatonSecond {
    pub fn new(states: FiniteSet, inputs: FiniteSet, outputs: FiniteSet, next: Table, out: Table) -> Result<Self> {
        next.expect_shape("next", states.size(), inputs.size(), states.size())?;
        out.expect_shape("out", states.size(), inputs.size(), outputs.size())?;
        Ok(Self {
            states,
            inputs,
            outputs,
            next,
            out,
        })
    }

    pub fn from_rows(outputs: usize, next: Vec<Vec<usize>>, out: Vec<Vec<usize>>) -> Result<Self> {
        let a = next.len();
        let x = next.first().map_or(0, Vec::len);
        let states = FiniteSet::new(a)?;
        let inputs = FiniteSet::new(x)?;
        let outputs = FiniteSet::new(outputs)?;
        let next = Table::from_rows("next", next, x, a)?;
        let out = Table::from_rows("out", out, x, outputs.size())?;
        Self::new(states, inputs, outputs, next, out)
    }

    pub fn states(&self) -> &FiniteSet {
        &self.states
    }
    pub fn inputs(&self) -> &FiniteSet {
        &self.inputs
    }
    pub fn outputs(&self) -> &FiniteSet {
        &self.outputs
    }
    pub fn next(&self) -> &Table {
        &self.next
    }
    pub fn out(&self) -> &Table {
        &self.out
    }
}

/// `(A, Γ, Σ)` with `∘: A×Γ→A` and `∗: A×Γ→Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupAutomatonSecond {
    pub(crate) states: FiniteSet,
    pub(crate) gamma: SemigroupTable,
    pub(crate) sigma: SemigroupTable,
    pub(crate) next: Table,
    pub(crate) out: Table,
}

impl SemigroupAutomatonSecond {
    /// Checks table shapes only; the axioms are checked by [`check_second_axioms`].
    pub fn new(states: FiniteSet, gamma: SemigroupTable, sigma: SemigroupTable, next: Table, out: Table) -> Result<Self> {
        next.expect_shape("next", states.size(), gamma.order(), states.size())?;
        out.expect_shape("out", states.size(), gamma.order(), sigma.order())?;
        Ok(Self {
            states,
            gamma,
            sigma,
            next,
            out,
        })
    }

    pub fn states(&self) -> &FiniteSet {
        &self.states
    }
    pub fn gamma(&self) -> &SemigroupTable {
        &self.gamma
    }
    pub fn sigma(&self) -> &SemigroupTable {
        &self.sigma
    }
    pub fn next(&self) -> &Table {
        &self.next
    }
    pub fn out(&self) -> &Table {
        &self.out
    }

    pub fn with_out_entry(mut self, a: usize, g: usize, v: usize) -> Result<Self> {
        self.out.set(a, g, v)?;
        Ok(self)
    }

    pub fn with_next_entry(mut self, a: usize, g: usize, v: usize) -> Result<Self> {
        self.next.set(a, g, v)?;
        Ok(self)
    }
}

/// A letter assignment `X → T` whose image generates `T`, i.e. the surjection `F(X) → T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorHom {
    alphabet_size: usize,
    target: SemigroupTable,
    assignment: Vec<usize>,
}

impl GeneratorHom {
    pub fn new(alphabet_size: usize, target: SemigroupTable, assignment: Vec<usize>) -> Result<Self> {
        check_size("assignment length", assignment.len(), alphabet_size)?;
        if alphabet_size == 0 {
            return Err(Error::Empty("alphabet".into()));
        }
        for (x, &t) in assignment.iter().enumerate() {
            check_index(|| format!("assignment[{x}]"), t, target.order())?;
        }
        let reached = target.generated_by(&assignment);
        if let Some(missing) = reached.iter().position(|r| !r) {
            return Err(Error::NotGenerated { missing });
        }
        Ok(Self {
            alphabet_size,
            target,
            assignment,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
    pub fn target(&self) -> &SemigroupTable {
        &self.target
    }
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image_of_letter(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `u ↦ u^μ`.
    pub fn eval(&self, u: &Word) -> usize {
        let mut it = u.letters().iter().map(|&x| self.assignment[x]);
        let first = it.next().expect("words are non-empty");
        it.fold(first, |acc, t| self.target.mul(acc, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SecondAxiom {
    /// `a∘(γ₁γ₂) = (a∘γ₁)∘γ₂`
    Transition,
    /// `a∗(γ₁γ₂) = (a∗γ₁)·((a∘γ₁)∗γ₂)`
    Output,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondViolation {
    pub axiom: SecondAxiom,
    pub state: usize,
    pub g1: usize,
    pub g2: usize,
    pub lhs: usize,
    pub rhs: usize,
}

pub fn check_second_axioms(m: &SemigroupAutomatonSecond) -> Verdict<SecondViolation> {
    check_second_axioms_with(m, Execution::default())
}

pub fn check_second_axioms_with(m: &SemigroupAutomatonSecond, exec: Execution) -> Verdict<SecondViolation> {
    let n = m.gamma.order();
    let hit = par::find_first(exec, m.states.size() * n, |ag| {
        let (a, g1) = (ag / n, ag % n);
        let a1 = m.next.get(a, g1);
        let s1 = m.out.get(a, g1);
        (0..n).find_map(|g2| {
            let g12 = m.gamma.mul(g1, g2);
            let (lhs, rhs) = (m.next.get(a, g12), m.next.get(a1, g2));
            if lhs != rhs {
                return Some(SecondViolation {
                    axiom: SecondAxiom::Transition,
                    state: a,
                    g1,
                    g2,
                    lhs,
                    rhs,
                });
            }
            let (lhs, rhs) = (m.out.get(a, g12), m.sigma.mul(s1, m.out.get(a1, g2)));
            (lhs != rhs).then_some(SecondViolation {
                axiom: SecondAxiom::Output,
                state: a,
                g1,
                g2,
                lhs,
                rhs,
            })
        })
    });
    hit.into()
}

/// Letter-by-letter run of a transducer: final state and the output letters.
pub(crate) fn transduce(next: &Table, out: &Table, a: usize, letters: &[usize]) -> (usize, Vec<usize>) {
    let mut state = a;
    let mut word = Vec::with_capacity(letters.len());
    for &x in letters {
        word.push(out.get(state, x));
        state = next.get(state, x);
    }
    (state, word)
}

/// Final state `a∘u` of a run.
pub fn run_state(m: &PureAutomatonSecond, a: usize, u: &Word) -> Result<usize> {
    check_index(|| "state".into(), a, m.states.size())?;
    check_size("word alphabet", u.alphabet_size(), m.inputs.size())?;
    Ok(u.letters().iter().fold(a, |s, &x| m.next.get(s, x)))
}

/// `a∗u` in the free extension `(A, F(X), F(Y))`.
pub fn free_extension_out(m: &PureAutomatonSecond, a: usize, u: &Word) -> Result<Word> {
    check_index(|| "state".into(), a, m.states.size())?;
    check_size("word alphabet", u.alphabet_size(), m.inputs.size())?;
    let (_, letters) = transduce(&m.next, &m.out, a, u.letters());
    Word::new(letters, m.outputs.size())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Conflict {
    /// `a∘u ≠ a∘v`
    Transition { lhs: usize, rhs: usize },
    /// `(a∗u)^ν ≠ (a∗v)^ν`
    Output { lhs: usize, rhs: usize },
}

/// Two words with `u^μ = v^μ` whose behaviour from `state` differs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientWitness {
    pub state: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub image: usize,
    pub conflict: Conflict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quotient {
    WellDefined(SemigroupAutomatonSecond),
    Incompatible(QuotientWitness),
}

pub fn quotient_construct(m: &PureAutomatonSecond, mu: &GeneratorHom, nu: &GeneratorHom) -> Result<Quotient> {
    quotient_construct_with(m, mu, nu, Execution::default())
}

/// Decides whether `(A, F(X), F(Y))` descends along `μ: F(X)→Γ`, `ν: F(Y)→Σ`.
///
/// From each start state `a` the reachable triples `(u^μ, a∘u, (a∗u)^ν)` are
/// explored breadth-first. The quotient exists iff the first coordinate
/// determines the other two, so at most one triple per `γ` is ever stored and
/// the search is bounded by `|Γ|` nodes per state.
pub fn quotient_construct_with(
    m: &PureAutomatonSecond,
    mu: &GeneratorHom,
    nu: &GeneratorHom,
    exec: Execution,
) -> Result<Quotient> {
    check_size("μ alphabet vs inputs", mu.alphabet_size(), m.inputs.size())?;
    check_size("ν alphabet vs outputs", nu.alphabet_size(), m.outputs.size())?;
    let gamma = mu.target();
    let sigma = nu.target();
    let per_state = par::map_range(exec, m.states.size(), |a| explore_from(m, mu, nu, a));

    let mut next_rows = Vec::with_capacity(per_state.len());
    let mut out_rows = Vec::with_capacity(per_state.len());
    for row in per_state {
        match row {
            Err(w) => return Ok(Quotient::Incompatible(w)),
            Ok((next, out)) => {
                next_rows.push(next);
                out_rows.push(out);
            }
        }
    }
    let next = Table::from_rows("next", next_rows, gamma.order(), m.states.size())?;
    let out = Table::from_rows("out", out_rows, gamma.order(), sigma.order())?;
    let aut = SemigroupAutomatonSecond::new(m.states.clone(), gamma.clone(), sigma.clone(), next, out)?;
    if let Some(v) = check_second_axioms_with(&aut, exec).into_witness() {
        return Err(Error::Invalid(format!(
            "quotient automaton violates the second-type axioms at {v:?}"
        )));
    }
    Ok(Quotient::WellDefined(aut))
}

/// Bounded check: every pair of words of length `≤ max_len` with the same
/// `μ` image agrees on `a∘u` and `(a∗u)^ν` from every state.
pub fn compatible_up_to(m: &PureAutomatonSecond, mu: &GeneratorHom, nu: &GeneratorHom, max_len: usize) -> Result<bool> {
    check_size("μ alphabet vs inputs", mu.alphabet_size(), m.inputs.size())?;
    check_size("ν alphabet vs outputs", nu.alphabet_size(), m.outputs.size())?;
    for a in 0..m.states.size() {
        let mut seen: HashMap<usize, (usize, usize)> = HashMap::new();
        for u in Word::all_up_to(m.inputs.size(), max_len) {
            let (state, out) = transduce(&m.next, &m.out, a, u.letters());
            let val = (state, nu.target().product_of(&out.iter().map(|&y| nu.image_of_letter(y)).collect::<Vec<_>>()));
            if *seen.entry(mu.eval(&u)).or_insert(val) != val {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

type Row = (Vec<usize>, Vec<usize>);

fn explore_from(m: &PureAutomatonSecond, mu: &GeneratorHom, nu: &GeneratorHom, a: usize) -> Result<Row, QuotientWitness> {
    let order = mu.target().order();
    let gamma = mu.target();
    let sigma = nu.target();
    // rep[γ] = (a∘u, (a∗u)^ν, u) for the first u found with u^μ = γ
    let mut rep: Vec<Option<(usize, usize, Vec<usize>)>> = vec![None; order];
    let mut queue: VecDeque<usize> = VecDeque::new();

    let visit = |rep: &mut Vec<Option<(usize, usize, Vec<usize>)>>,
                     queue: &mut VecDeque<usize>,
                     g: usize,
                     state: usize,
                     s: usize,
                     word: Vec<usize>|
     -> Result<(), QuotientWitness> {
        match &rep[g] {
            None => {
                rep[g] = Some((state, s, word));
                queue.push_back(g);
                Ok(())
            }
            Some((st, so, w)) if *st != state || *so != s => Err(QuotientWitness {
                state: a,
                u: w.clone(),
                v: word,
                image: g,
                conflict: if *st != state {
                    Conflict::Transition { lhs: *st, rhs: state }
                } else {
                    Conflict::Output { lhs: *so, rhs: s }
                },
            }),
            Some(_) => Ok(()),
        }
    };

    for x in 0..m.inputs.size() {
        let g = mu.image_of_letter(x);
        let s = nu.image_of_letter(m.out.get(a, x));
        visit(&mut rep, &mut queue, g, m.next.get(a, x), s, vec![x])?;
    }
    while let Some(g) = queue.pop_front() {
        let (state, s, word) = rep[g].clone().expect("queued nodes are set");
        for x in 0..m.inputs.size() {
            let g2 = gamma.mul(g, mu.image_of_letter(x));
            let s2 = sigma.mul(s, nu.image_of_letter(m.out.get(state, x)));
            let mut w2 = word.clone();
            w2.push(x);
            visit(&mut rep, &mut queue, g2, m.next.get(state, x), s2, w2)?;
        }
    }
    let mut next = Vec::with_capacity(order);
    let mut out = Vec::with_capacity(order);
    for r in rep {
        let (state, s, _) = r.expect("μ is surjective, so every γ is reached");
        next.push(state);
        out.push(s);
    }
    Ok((next, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{generate_semigroup, Transformation};

    fn odometer() -> PureAutomatonSecond {
        // state 0 adds one, state 1 is the identity
        PureAutomatonSecond::from_rows(2, vec![vec![1, 0], vec![1, 1]], vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    fn w(v: &[usize], n: usize) -> Word {
        Word::new(v.to_vec(), n).unwrap()
    }

    fn trivial_hom(n: usize) -> GeneratorHom {
        GeneratorHom::new(n, SemigroupTable::trivial(), vec![0; n]).unwrap()
    }

    #[test]
    fn trivial_second_type_automaton_passes() {
        let m = SemigroupAutomatonSecond::new(
            FiniteSet::new(1).unwrap(),
            SemigroupTable::trivial(),
            SemigroupTable::trivial(),
            Table::from_fn(1, 1, 1, |_, _| 0),
            Table::from_fn(1, 1, 1, |_, _| 0),
        )
        .unwrap();
        assert!(check_second_axioms(&m).is_pass());
    }

    #[test]
    fn free_extension_examples() {
        let m = odometer();
        assert_eq!(free_extension_out(&m, 0, &w(&[0], 2)).unwrap(), w(&[1], 2));
        assert_eq!(free_extension_out(&m, 0, &w(&[1, 1], 2)).unwrap(), w(&[0, 0], 2));
        let u = w(&[1, 0, 1, 1, 0], 2);
        let full = free_extension_out(&m, 0, &u).unwrap();
        for k in 1..u.len() {
            let (u1, u2) = u.split_at(k).unwrap();
            let left = free_extension_out(&m, 0, &u1).unwrap();
            let mid = run_state(&m, 0, &u1).unwrap();
            let right = free_extension_out(&m, mid, &u2).unwrap();
            assert_eq!(left.concat(&right).unwrap(), full);
        }
    }

    #[test]
    fn quotient_to_trivial_semigroups() {
        let m = PureAutomatonSecond::from_rows(2, vec![vec![0, 0]], vec![vec![0, 1]]).unwrap();
        match quotient_construct(&m, &trivial_hom(2), &trivial_hom(2)).unwrap() {
            Quotient::WellDefined(q) => {
                assert_eq!(q.gamma().order(), 1);
                assert!(check_second_axioms(&q).is_pass());
            }
            Quotient::Incompatible(w) => panic!("unexpected witness {w:?}"),
        }
    }

    fn constant_output_swap() -> (PureAutomatonSecond, GeneratorHom) {
        // one input swapping two states, single output letter
        let m = PureAutomatonSecond::from_rows(1, vec![vec![1], vec![0]], vec![vec![0], vec![0]]).unwrap();
        let cl = generate_semigroup(&[Transformation::new(vec![1, 0]).unwrap()], |a, b| a.compose(b).unwrap(), 10).unwrap();
        let mu = GeneratorHom::new(1, cl.table.clone(), cl.table.generators().to_vec()).unwrap();
        (m, mu)
    }

    fn cyclic(n: usize) -> GeneratorHom {
        let z = generate_semigroup(&[1 % n], |a, b| (a + b) % n, 10).unwrap();
        GeneratorHom::new(1, z.table.clone(), vec![z.table.generators()[0]]).unwrap()
    }

    #[test]
    fn bounded_compatibility() {
        let (m, mu) = constant_output_swap();
        assert!(compatible_up_to(&m, &mu, &cyclic(2), 6).unwrap());
        assert!(!compatible_up_to(&m, &mu, &cyclic(3), 6).unwrap());
        assert!(compatible_up_to(&m, &mu, &trivial_hom(2), 3).is_err());
    }

    #[test]
    fn quotient_with_constant_output_and_matching_period() {
        let (m, mu) = constant_output_swap();
        let nu = cyclic(2);
        assert!(brute_force_compatible(&m, &mu, &nu, 6));
        let Quotient::WellDefined(q) = quotient_construct(&m, &mu, &nu).unwrap() else {
            panic!("parity of the output length is determined by the swap image");
        };
        assert!(check_second_axioms(&q).is_pass());
        assert!(matches!(quotient_construct(&m, &mu, &trivial_hom(1)).unwrap(), Quotient::WellDefined(_)));
    }

    #[test]
    fn quotient_with_constant_output_can_still_fail() {
        // x and xxx have the same transition image but outputs y and yyy differ in Z3
        let (m, mu) = constant_output_swap();
        let nu = cyclic(3);
        assert!(!brute_force_compatible(&m, &mu, &nu, 6));
        match quotient_construct(&m, &mu, &nu).unwrap() {
            Quotient::Incompatible(w) => {
                assert_eq!(w.u, vec![0]);
                assert_eq!(w.v, vec![0, 0, 0]);
                assert!(matches!(w.conflict, Conflict::Output { .. }));
            }
            Quotient::WellDefined(_) => panic!("expected a witness"),
        }
    }

    #[test]
    fn quotient_witness_for_identified_inputs_with_different_outputs() {
        let m = PureAutomatonSecond::from_rows(2, vec![vec![0, 0]], vec![vec![0, 1]]).unwrap();
        let mu = GeneratorHom::new(2, SemigroupTable::trivial(), vec![0, 0]).unwrap();
        // ν injective on letters: left-zero semigroup on {0,1} is generated by both letters
        let lz = SemigroupTable::new(vec![vec![0, 0], vec![1, 1]], vec![0, 1], None).unwrap();
        let nu = GeneratorHom::new(2, lz, vec![0, 1]).unwrap();
        match quotient_construct(&m, &mu, &nu).unwrap() {
            Quotient::Incompatible(w) => {
                assert_eq!((w.u.as_slice(), w.v.as_slice()), (&[0][..], &[1][..]));
                assert_eq!(w.conflict, Conflict::Output { lhs: 0, rhs: 1 });
            }
            Quotient::WellDefined(_) => panic!("expected a witness"),
        }
    }

    #[test]
    fn generator_hom_requires_surjectivity() {
        let lz = SemigroupTable::new(vec![vec![0, 0], vec![1, 1]], vec![], None).unwrap();
        assert_eq!(
            GeneratorHom::new(2, lz, vec![0, 0]),
            Err(Error::NotGenerated { missing: 1 })
        );
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let m = odometer();
        assert!(quotient_construct(&m, &trivial_hom(3), &trivial_hom(2)).is_err());
    }

    #[test]
    fn corrupting_a_quotient_is_detected() {
        let (m, mu) = constant_output_swap();
        let Quotient::WellDefined(q) = quotient_construct(&m, &mu, &cyclic(2)).unwrap() else {
            panic!("parity quotient should exist");
        };
        for a in 0..2 {
            for g in 0..2 {
                let flipped = 1 - q.out().get(a, g);
                let bad = q.clone().with_out_entry(a, g, flipped).unwrap();
                assert!(!check_second_axioms(&bad).is_pass(), "out({a},{g})");
            }
        }
    }

    /// Compares `(a∘u, (a∗u)^ν)` across all word pairs with equal `μ` image.
    fn brute_force_compatible(m: &PureAutomatonSecond, mu: &GeneratorHom, nu: &GeneratorHom, max_len: usize) -> bool {
        for a in 0..m.states().size() {
            let mut seen: std::collections::HashMap<usize, (usize, usize)> = Default::default();
            for u in Word::all_up_to(m.inputs().size(), max_len) {
                let key = mu.eval(&u);
                let val = (run_state(m, a, &u).unwrap(), nu.eval(&free_extension_out(m, a, &u).unwrap()));
                if *seen.entry(key).or_insert(val) != val {
                    return false;
                }
            }
        }
        true
    }
}
