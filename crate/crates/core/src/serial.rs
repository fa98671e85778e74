//! Serial connections `(A, Γ) → (B, Σ)`, the second-type automaton they
//! induce, and automaton mappings `ā: u ↦ a∗u` with their inverses on words.

use serde::Serialize;

use crate::algebra::{FiniteSet, Table, Word};
use crate::cascade::CascadeTripleSemigroup;
use crate::error::{check_index, check_size, Error, Result};
use crate::first_type::{check_first_axioms_with, FirstViolation, SemigroupAutomatonFirst};
use crate::par::{self, Execution};
use crate::second_type::{run_state, transduce, PureAutomatonSecond, SemigroupAutomatonSecond};
use crate::verdict::Verdict;

/// The semiautomaton `(A, Γ)` steers `(B, Σ)` through `α: A×Γ→Σ`.
///
/// Both components are first-type automata with a one-point output set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerialConnection {
    first: SemigroupAutomatonFirst,
    second: SemigroupAutomatonFirst,
    alpha: Table,
}

impl SerialConnection {
    /// Range and shape checks; the laws are checked by [`check_serial`].
    pub fn new(first: SemigroupAutomatonFirst, second: SemigroupAutomatonFirst, alpha: Table) -> Result<Self> {
        check_size("first component outputs", first.outputs().size(), 1)?;
        check_size("second component outputs", second.outputs().size(), 1)?;
        alpha.expect_shape("alpha", first.states().size(), first.gamma().order(), second.gamma().order())?;
        Ok(Self { first, second, alpha })
    }

    /// Views `(A, Γ, Σ)` as the serial connection of `(A, Γ)` with `Σ`
    /// acting on itself by right multiplication.
    pub fn from_second_type(m: &SemigroupAutomatonSecond) -> Result<Self> {
        let first = SemigroupAutomatonFirst::semiautomaton(m.states().clone(), m.gamma().clone(), m.next().clone())?;
        let sigma = m.sigma();
        let right_mult = Table::from_fn(sigma.order(), sigma.order(), sigma.order(), |s, t| sigma.mul(s, t));
        let second = SemigroupAutomatonFirst::semiautomaton(FiniteSet::new(sigma.order())?, sigma.clone(), right_mult)?;
        Self::new(first, second, m.out().clone())
    }

    pub fn first(&self) -> &SemigroupAutomatonFirst {
        &self.first
    }
    pub fn second(&self) -> &SemigroupAutomatonFirst {
        &self.second
    }
    pub fn alpha(&self) -> &Table {
        &self.alpha
    }

    /// The same connection as a cascade triple with `β` the identity.
    ///
    /// In cascade terms the steering component `(A, Γ)` is the second factor
    /// and `(B, Σ)` the first, so product states are `(b, a)`.
    pub fn to_cascade_triple(&self) -> CascadeTripleSemigroup {
        let gamma = self.first.gamma().clone();
        let beta = (0..gamma.order()).collect();
        CascadeTripleSemigroup::new(gamma, self.alpha.clone(), beta).expect("shapes checked on construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum SerialViolation {
    /// `(A, Γ)` is not a semiautomaton.
    FirstComponent(FirstViolation),
    /// `(B, Σ)` is not a semiautomaton.
    SecondComponent(FirstViolation),
    /// `α(a, γ₁γ₂) ≠ α(a, γ₁)·α(a∘γ₁, γ₂)`
    Cocycle {
        state: usize,
        g1: usize,
        g2: usize,
        lhs: usize,
        rhs: usize,
    },
}

pub fn check_serial(s: &SerialConnection) -> Verdict<SerialViolation> {
    check_serial_with(s, Execution::default())
}

/// Both components must be semiautomata and `α` must satisfy the cocycle law.
pub fn check_serial_with(s: &SerialConnection, exec: Execution) -> Verdict<SerialViolation> {
    if let Verdict::Fail(v) = check_first_axioms_with(&s.first, exec) {
        return Verdict::Fail(SerialViolation::FirstComponent(v));
    }
    if let Verdict::Fail(v) = check_first_axioms_with(&s.second, exec) {
        return Verdict::Fail(SerialViolation::SecondComponent(v));
    }
    let gamma = s.first.gamma();
    let sigma = s.second.gamma();
    let n = gamma.order();
    par::find_first(exec, s.first.states().size() * n, |ag| {
        let (a, g1) = (ag / n, ag % n);
        let shifted = s.first.next().get(a, g1);
        let head = s.alpha.get(a, g1);
        (0..n).find_map(|g2| {
            let lhs = s.alpha.get(a, gamma.mul(g1, g2));
            let rhs = sigma.mul(head, s.alpha.get(shifted, g2));
            (lhs != rhs).then_some(SerialViolation::Cocycle {
                state: a,
                g1,
                g2,
                lhs,
                rhs,
            })
        })
    })
    .into()
}

/// `(a, b)∘γ = (a∘γ, b∘(a∗γ))` with `a∗γ = α(a, γ)`.
pub fn serial_action(s: &SerialConnection, a: usize, b: usize, g: usize) -> Result<(usize, usize)> {
    check_index(|| "state a".into(), a, s.first.states().size())?;
    check_index(|| "state b".into(), b, s.second.states().size())?;
    check_index(|| "element γ".into(), g, s.first.gamma().order())?;
    Ok((s.first.next().get(a, g), s.second.next().get(b, s.alpha.get(a, g))))
}

/// The second-type automaton `(A, Γ, Σ)` of a serial connection: `∘` from the
/// first component, `∗ := α`.
pub fn derive_second_type(s: &SerialConnection) -> SemigroupAutomatonSecond {
    SemigroupAutomatonSecond::new(
        s.first.states().clone(),
        s.first.gamma().clone(),
        s.second.gamma().clone(),
        s.first.next().clone(),
        s.alpha.clone(),
    )
    .expect("shapes checked on construction")
}

/// `ā: Γ → Σ`, `γ ↦ a∗γ`, as a table.
pub fn mapping_table(m: &SemigroupAutomatonSecond, a: usize) -> Vec<usize> {
    m.out().row(a).to_vec()
}

/// The automaton mapping `ā` of a state of a pure second-type automaton.
#[derive(Debug, Clone, Copy)]
pub struct AutomatonMapping<'a> {
    base: &'a PureAutomatonSecond,
    state: usize,
}

impl<'a> AutomatonMapping<'a> {
    pub fn new(base: &'a PureAutomatonSecond, state: usize) -> Result<Self> {
        check_index(|| "mapping state".into(), state, base.states().size())?;
        Ok(Self { base, state })
    }

    pub fn base(&self) -> &'a PureAutomatonSecond {
        self.base
    }

    pub fn state(&self) -> usize {
        self.state
    }
}

/// `ā(u) = a∗u`. Length-preserving; `ā(u₁u₂) = ā(u₁)·(a∘u₁)‾(u₂)`.
pub fn apply_mapping(f: &AutomatonMapping<'_>, u: &Word) -> Result<Word> {
    check_size("word alphabet", u.alphabet_size(), f.base.inputs().size())?;
    let (_, letters) = transduce(f.base.next(), f.base.out(), f.state, u.letters());
    Word::new(letters, f.base.outputs().size())
}

/// States reachable from `a` (including `a`), in breadth-first order.
pub(crate) fn reachable(next: &Table, a: usize) -> Vec<usize> {
    let mut seen = vec![false; next.rows()];
    let mut order = vec![a];
    seen[a] = true;
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for &r in next.row(q) {
            if !seen[r] {
                seen[r] = true;
                order.push(r);
            }
        }
    }
    order
}

/// Fails with the first reachable state whose letter map `x ↦ a′∗x` is not a bijection `X → Y`.
pub fn check_statewise_bijective(f: &AutomatonMapping<'_>) -> Result<()> {
    let base = f.base;
    for q in reachable(base.next(), f.state) {
        let row = base.out().row(q);
        let mut seen = vec![false; base.outputs().size()];
        let bijective = row.len() == seen.len() && row.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
        if !bijective {
            return Err(Error::NotBijective { state: q });
        }
    }
    Ok(())
}

/// The unique `u` with `ā(u) = w`, decoded letter by letter.
pub fn decode_mapping(f: &AutomatonMapping<'_>, w: &Word) -> Result<Word> {
    check_statewise_bijective(f)?;
    let base = f.base;
    check_size("word alphabet", w.alphabet_size(), base.outputs().size())?;
    let mut state = f.state;
    let mut letters = Vec::with_capacity(w.len());
    for &y in w.letters() {
        let x = base
            .out()
            .row(state)
            .iter()
            .position(|&o| o == y)
            .expect("letter map is a bijection");
        letters.push(x);
        state = base.next().get(state, x);
    }
    Word::new(letters, base.inputs().size())
}

/// `a∘u` for a mapping's state; convenience for the `ā(u₁u₂)` decomposition.
pub fn mapping_after<'a>(f: &AutomatonMapping<'a>, u: &Word) -> Result<AutomatonMapping<'a>> {
    let state = run_state(f.base, f.state, u)?;
    AutomatonMapping::new(f.base, state)
}
