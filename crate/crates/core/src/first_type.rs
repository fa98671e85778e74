//! Automata of the first type: outputs carry no algebra and only the last
//! output of a run is observed, `a∗(γ₁γ₂) = (a∘γ₁)∗γ₂`.

use serde::Serialize;

use crate::algebra::{generate_semigroup_with, Closure, FiniteSet, FunMap, PairElement, SemigroupTable, Table, Transformation, Word};
use crate::error::{check_index, check_size, Result};
use crate::par::{self, Execution};
use crate::verdict::Verdict;

/// `(A, X, B)` with `∘: A×X→A` (`next`) and `∗: A×X→B` (`out`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureAutomatonFirst {
    pub(crate) states: FiniteSet,
    pub(crate) inputs: FiniteSet,
    pub(crate) outputs: FiniteSet,
    pub(crate) next: Table,
    pub(crate) out: Table,
}

impl PureAutomatonFirst {
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

    /// Convenience constructor from row-major tables over unlabeled carriers.
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

/// `(A, Γ, B)` with `Γ` a finite semigroup acting on `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupAutomatonFirst {
    pub(crate) states: FiniteSet,
    pub(crate) gamma: SemigroupTable,
    pub(crate) outputs: FiniteSet,
    pub(crate) next: Table,
    pub(crate) out: Table,
}

impl SemigroupAutomatonFirst {
    /// Checks table shapes only; the axioms are checked by [`check_first_axioms`].
    pub fn new(states: FiniteSet, gamma: SemigroupTable, outputs: FiniteSet, next: Table, out: Table) -> Result<Self> {
        next.expect_shape("next", states.size(), gamma.order(), states.size())?;
        out.expect_shape("out", states.size(), gamma.order(), outputs.size())?;
        Ok(Self {
            states,
            gamma,
            outputs,
            next,
            out,
        })
    }

    /// A semiautomaton `(A, Γ)`: one-point output set.
    pub fn semiautomaton(states: FiniteSet, gamma: SemigroupTable, next: Table) -> Result<Self> {
        let out = Table::from_fn(states.size(), gamma.order(), 1, |_, _| 0);
        Self::new(states, gamma, FiniteSet::new(1)?, next, out)
    }

    pub fn states(&self) -> &FiniteSet {
        &self.states
    }
    pub fn gamma(&self) -> &SemigroupTable {
        &self.gamma
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

    /// Replaces one `next` entry; used to build failing instances in tests and tooling.
    pub fn with_next_entry(mut self, a: usize, g: usize, v: usize) -> Result<Self> {
        self.next.set(a, g, v)?;
        Ok(self)
    }

    pub fn with_out_entry(mut self, a: usize, g: usize, v: usize) -> Result<Self> {
        self.out.set(a, g, v)?;
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FirstAxiom {
    /// `a∘(γ₁γ₂) = (a∘γ₁)∘γ₂`
    Transition,
    /// `a∗(γ₁γ₂) = (a∘γ₁)∗γ₂`
    Output,
}

/// A violating triple with both sides of the failing law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstViolation {
    pub axiom: FirstAxiom,
    pub state: usize,
    pub g1: usize,
    pub g2: usize,
    pub lhs: usize,
    pub rhs: usize,
}

pub fn check_first_axioms(m: &SemigroupAutomatonFirst) -> Verdict<FirstViolation> {
    check_first_axioms_with(m, Execution::default())
}

/// Exhaustive over `A × Γ × Γ`; reports the lexicographically first violation.
pub fn check_first_axioms_with(m: &SemigroupAutomatonFirst, exec: Execution) -> Verdict<FirstViolation> {
    let n = m.gamma.order();
    let hit = par::find_first(exec, m.states.size() * n, |ag| {
        let (a, g1) = (ag / n, ag % n);
        let a1 = m.next.get(a, g1);
        (0..n).find_map(|g2| {
            let g12 = m.gamma.mul(g1, g2);
            let (lhs, rhs) = (m.next.get(a, g12), m.next.get(a1, g2));
            if lhs != rhs {
                return Some(FirstViolation {
                    axiom: FirstAxiom::Transition,
                    state: a,
                    g1,
                    g2,
                    lhs,
                    rhs,
                });
            }
            let (lhs, rhs) = (m.out.get(a, g12), m.out.get(a1, g2));
            (lhs != rhs).then_some(FirstViolation {
                axiom: FirstAxiom::Output,
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

/// `x ↦ (σₓ, φₓ)` with `σₓ(a) = a∘x`, `φₓ(a) = a∗x`: the map `X → S_{A,B}`.
pub fn to_universal(m: &PureAutomatonFirst) -> Vec<PairElement> {
    let b = m.outputs.size();
    (0..m.inputs.size())
        .map(|x| {
            let sigma: Vec<usize> = (0..m.states.size()).map(|a| m.next.get(a, x)).collect();
            let phi: Vec<usize> = (0..m.states.size()).map(|a| m.out.get(a, x)).collect();
            PairElement::new(
                Transformation::new(sigma).expect("next table in range"),
                FunMap::new(phi, b).expect("out table in range"),
            )
            .expect("matching sizes")
        })
        .collect()
}

/// The faithful semigroup automaton of a pure automaton: `Γ` is the image of
/// `F(X)` in `S_{A,B}`, which is `F(X)` modulo the kernel of that map.
pub fn semigroupify(m: &PureAutomatonFirst, cap: usize) -> Result<SemigroupAutomatonFirst> {
    semigroupify_with(m, cap, Execution::default()).map(|(aut, _)| aut)
}

/// Same as [`semigroupify`], also returning the concrete `(σ, φ)` elements of `Γ`.
pub fn semigroupify_with(
    m: &PureAutomatonFirst,
    cap: usize,
    exec: Execution,
) -> Result<(SemigroupAutomatonFirst, Closure<PairElement>)> {
    let gens = to_universal(m);
    let closure = generate_semigroup_with(&gens, |p, q| p.multiply(q).expect("same carriers"), cap, exec)?;
    let order = closure.table.order();
    let els = &closure.elements;
    let next = Table::from_fn(m.states.size(), order, m.states.size(), |a, g| els[g].sigma().apply(a));
    let out = Table::from_fn(m.states.size(), order, m.outputs.size(), |a, g| els[g].phi().apply(a));
    let aut = SemigroupAutomatonFirst {
        states: m.states.clone(),
        gamma: closure.table.clone(),
        outputs: m.outputs.clone(),
        next,
        out,
    };
    Ok((aut, closure))
}

/// Iterated action of a word; returns the final state and the output of the last step.
pub trait ActWord {
    fn act_word(&self, a: usize, w: &Word) -> Result<(usize, usize)>;
}

fn fold_word(next: &Table, out: &Table, a: usize, w: &Word) -> Result<(usize, usize)> {
    check_index(|| "state".into(), a, next.rows())?;
    check_size("word alphabet", w.alphabet_size(), next.cols())?;
    let mut state = a;
    let mut last = 0;
    for &x in w.letters() {
        last = out.get(state, x);
        state = next.get(state, x);
    }
    Ok((state, last))
}

impl ActWord for PureAutomatonFirst {
    fn act_word(&self, a: usize, w: &Word) -> Result<(usize, usize)> {
        fold_word(&self.next, &self.out, a, w)
    }
}

/// Letters index elements of `Γ`.
impl ActWord for SemigroupAutomatonFirst {
    fn act_word(&self, a: usize, w: &Word) -> Result<(usize, usize)> {
        fold_word(&self.next, &self.out, a, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_CAP;

    fn swap_automaton() -> PureAutomatonFirst {
        PureAutomatonFirst::from_rows(2, vec![vec![1], vec![0]], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn trivial_automaton_passes() {
        let m = SemigroupAutomatonFirst::new(
            FiniteSet::new(1).unwrap(),
            SemigroupTable::new(vec![vec![0, 1], vec![1, 1]], vec![], None).unwrap(),
            FiniteSet::new(1).unwrap(),
            Table::from_fn(1, 2, 1, |_, _| 0),
            Table::from_fn(1, 2, 1, |_, _| 0),
        )
        .unwrap();
        assert!(check_first_axioms(&m).is_pass());
    }

    #[test]
    fn universal_map_reads_tables() {
        let u = to_universal(&swap_automaton());
        assert_eq!(u.len(), 1);
        assert_eq!(u[0].sigma().image(), &[1, 0]);
        assert_eq!(u[0].phi().image(), &[0, 1]);

        let c = PureAutomatonFirst::from_rows(3, vec![vec![1, 1], vec![1, 1]], vec![vec![2, 2], vec![2, 2]]).unwrap();
        let u = to_universal(&c);
        assert_eq!(u[0], u[1]);
        assert_eq!(u[0].sigma(), &Transformation::constant(2, 1));
    }

    #[test]
    fn semigroupify_swap_and_reset() {
        let g = semigroupify(&swap_automaton(), DEFAULT_CAP).unwrap();
        assert_eq!(g.gamma().order(), 2);
        assert!(check_first_axioms(&g).is_pass());

        let reset = PureAutomatonFirst::from_rows(1, vec![vec![0], vec![0]], vec![vec![0], vec![0]]).unwrap();
        assert_eq!(semigroupify(&reset, DEFAULT_CAP).unwrap().gamma().order(), 1);
    }

    #[test]
    fn semigroupify_full_transformation_monoid_generators() {
        // cycle, transposition, and a rank-2 map generate all 27 maps of a 3-set
        let m = PureAutomatonFirst::from_rows(
            2,
            vec![vec![1, 1, 0], vec![2, 0, 0], vec![0, 2, 2]],
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let g = semigroupify(&m, DEFAULT_CAP).unwrap();
        assert!(g.gamma().order() <= 27 * 8);
        assert!(check_first_axioms(&g).is_pass());
        let sigmas: std::collections::HashSet<Vec<usize>> =
            (0..g.gamma().order()).map(|e| g.next().to_rows().iter().map(|r| r[e]).collect()).collect();
        assert_eq!(sigmas.len(), 27);
    }

    #[test]
    fn corrupted_next_entry_is_caught() {
        let g = semigroupify(&swap_automaton(), DEFAULT_CAP).unwrap();
        let bad = g.with_next_entry(0, 1, 1).unwrap();
        let w = check_first_axioms(&bad).into_witness().unwrap();
        assert_eq!(w.axiom, FirstAxiom::Transition);
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn corrupted_out_entry_is_caught() {
        let g = semigroupify(&swap_automaton(), DEFAULT_CAP).unwrap();
        // out(1, xx) is 0; 1 contradicts the output of the last step
        let bad = g.with_out_entry(1, 1, 1).unwrap();
        let w = check_first_axioms(&bad).into_witness().unwrap();
        assert_eq!(w.axiom, FirstAxiom::Output);
    }

    #[test]
    fn act_word_examples() {
        let m = swap_automaton();
        let w1 = Word::new(vec![0], 1).unwrap();
        assert_eq!(m.act_word(0, &w1).unwrap(), (1, 0));
        for len in [2, 4, 6] {
            let w = Word::new(vec![0; len], 1).unwrap();
            assert_eq!(m.act_word(1, &w).unwrap().0, 1);
        }
        assert!(m.act_word(2, &w1).is_err());
        assert!(m.act_word(0, &Word::new(vec![1], 2).unwrap()).is_err());
    }

    #[test]
    fn faithfulness_of_semigroupify() {
        let m = PureAutomatonFirst::from_rows(2, vec![vec![0, 1], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let g = semigroupify(&m, DEFAULT_CAP).unwrap();
        let cols: Vec<(Vec<usize>, Vec<usize>)> = (0..g.gamma().order())
            .map(|e| {
                (
                    (0..2).map(|a| g.next().get(a, e)).collect(),
                    (0..2).map(|a| g.out().get(a, e)).collect(),
                )
            })
            .collect();
        for i in 0..cols.len() {
            for j in 0..i {
                assert_ne!(cols[i], cols[j]);
            }
        }
    }
}
