//! Invertible letter-to-letter machines and the groups generated by their
//! initialized states.
//!
//! Composition is left-acts-first: `compose(e1, e2)` maps `u` to `e2(e1(u))`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::algebra::{FiniteSet, Table, Word};
use crate::error::{check_index, check_size, Error, Result};
use crate::second_type::{transduce, PureAutomatonSecond};
use crate::serial::{apply_mapping, AutomatonMapping};

/// Composed powers are minimized once they grow past this many states.
const MINIMIZE_THRESHOLD: usize = 32;

/// A Mealy machine over one alphabet, `next: Q×X→Q`, `out: Q×X→X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    states: FiniteSet,
    alphabet: FiniteSet,
    next: Table,
    out: Table,
}

impl MealyMachine {
    pub fn new(states: FiniteSet, alphabet: FiniteSet, next: Table, out: Table) -> Result<Self> {
        next.expect_shape("next", states.size(), alphabet.size(), states.size())?;
        out.expect_shape("out", states.size(), alphabet.size(), alphabet.size())?;
        Ok(Self {
            states,
            alphabet,
            next,
            out,
        })
    }

    pub fn from_rows(next: Vec<Vec<usize>>, out: Vec<Vec<usize>>) -> Result<Self> {
        let q = next.len();
        let x = next.first().map_or(0, Vec::len);
        Self::new(
            FiniteSet::new(q)?,
            FiniteSet::new(x)?,
            Table::from_rows("next", next, x, q)?,
            Table::from_rows("out", out, x, x)?,
        )
    }

    fn unlabeled(states: usize, alphabet: &FiniteSet, next: Table, out: Table) -> Self {
        Self {
            states: FiniteSet::new(states).expect("at least one state"),
            alphabet: alphabet.clone(),
            next,
            out,
        }
    }

    pub fn states(&self) -> &FiniteSet {
        &self.states
    }
    pub fn alphabet(&self) -> &FiniteSet {
        &self.alphabet
    }
    pub fn next(&self) -> &Table {
        &self.next
    }
    pub fn out(&self) -> &Table {
        &self.out
    }

    /// First state whose output letters are not a permutation of the alphabet.
    pub fn non_invertible_state(&self) -> Option<usize> {
        (0..self.states.size()).find(|&q| {
            let mut seen = vec![false; self.alphabet.size()];
            !self.out.row(q).iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.non_invertible_state().is_none()
    }

    /// The same machine as a pure second-type automaton `(Q, X, X)`.
    pub fn to_second_type(&self) -> PureAutomatonSecond {
        PureAutomatonSecond::new(
            self.states.clone(),
            self.alphabet.clone(),
            self.alphabet.clone(),
            self.next.clone(),
            self.out.clone(),
        )
        .expect("same shapes")
    }

    /// Coarsest partition of the states into classes with equal transductions.
    pub fn equivalence_classes(&self) -> Vec<usize> {
        refine(&self.next, &self.out)
    }
}

/// Moore-style partition refinement for Mealy machines: states start grouped
/// by their output row and are split by the classes of their successors until
/// stable. Class ids are numbered in order of first appearance.
fn refine(next: &Table, out: &Table) -> Vec<usize> {
    let n = next.rows();
    let mut class = number_by(n, |q| out.row(q).to_vec());
    let mut count = class.iter().max().map_or(0, |m| m + 1);
    loop {
        let refined = number_by(n, |q| {
            let mut sig = vec![class[q]];
            sig.extend(next.row(q).iter().map(|&r| class[r]));
            sig
        });
        let new_count = refined.iter().max().map_or(0, |m| m + 1);
        class = refined;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

fn number_by(n: usize, key: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    (0..n)
        .map(|q| {
            let next_id = ids.len();
            *ids.entry(key(q)).or_insert(next_id)
        })
        .collect()
}

/// An initialized machine: the automaton mapping of one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyElement {
    machine: MealyMachine,
    initial: usize,
}

impl MealyElement {
    pub fn new(machine: MealyMachine, initial: usize) -> Result<Self> {
        check_index(|| "initial state".into(), initial, machine.states.size())?;
        Ok(Self { machine, initial })
    }

    /// The one-state identity machine.
    pub fn identity(alphabet: &FiniteSet) -> Self {
        let n = alphabet.size();
        let machine = MealyMachine::unlabeled(1, alphabet, Table::from_fn(1, n, 1, |_, _| 0), Table::from_fn(1, n, n, |_, x| x));
        Self { machine, initial: 0 }
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.machine.states.size()
    }

    pub fn alphabet_size(&self) -> usize {
        self.machine.alphabet.size()
    }
}

pub fn element_apply(e: &MealyElement, u: &Word) -> Result<Word> {
    let base = e.machine.to_second_type();
    let f = AutomatonMapping::new(&base, e.initial)?;
    apply_mapping(&f, u)
}

/// Output letters of a run, without word wrappers; used by the hot loops.
pub fn run_letters(e: &MealyElement, letters: &[usize]) -> Vec<usize> {
    transduce(&e.machine.next, &e.machine.out, e.initial, letters).1
}

/// `e1` first, then `e2`, on the reachable part of the pair machine.
pub fn element_compose(e1: &MealyElement, e2: &MealyElement) -> Result<MealyElement> {
    check_size("alphabets", e1.alphabet_size(), e2.alphabet_size())?;
    let (m1, m2) = (&e1.machine, &e2.machine);
    let k = e1.alphabet_size();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(e1.initial, e2.initial)];
    index.insert(pairs[0], 0);
    let mut next = Vec::new();
    let mut out = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (q1, q2) = pairs[head];
        head += 1;
        for x in 0..k {
            let y = m1.out.get(q1, x);
            let target = (m1.next.get(q1, x), m2.next.get(q2, y));
            let id = *index.entry(target).or_insert_with(|| {
                pairs.push(target);
                pairs.len() - 1
            });
            next.push(id);
            out.push(m2.out.get(q2, y));
        }
    }
    let n = pairs.len();
    let machine = MealyMachine::unlabeled(
        n,
        &m1.alphabet,
        Table::from_fn(n, k, n, |q, x| next[q * k + x]),
        Table::from_fn(n, k, k, |q, x| out[q * k + x]),
    );
    Ok(MealyElement { machine, initial: 0 })
}

/// `out′(q, y) = out(q,·)⁻¹(y)`, `next′(q, y) = next(q, out(q,·)⁻¹(y))`.
pub fn element_invert(e: &MealyElement) -> Result<MealyElement> {
    let m = &e.machine;
    if let Some(state) = m.non_invertible_state() {
        return Err(Error::NotInvertible { state });
    }
    let k = m.alphabet.size();
    let inv = |q: usize, y: usize| m.out.row(q).iter().position(|&o| o == y).expect("permutation");
    let machine = MealyMachine {
        states: m.states.clone(),
        alphabet: m.alphabet.clone(),
        next: Table::from_fn(m.states.size(), k, m.states.size(), |q, y| m.next.get(q, inv(q, y))),
        out: Table::from_fn(m.states.size(), k, k, inv),
    };
    Ok(MealyElement {
        machine,
        initial: e.initial,
    })
}

/// Exact equality of the transductions of two initialized machines, decided
/// by partition refinement on the disjoint union of their state sets.
pub fn element_equal(e1: &MealyElement, e2: &MealyElement) -> Result<bool> {
    check_size("alphabets", e1.alphabet_size(), e2.alphabet_size())?;
    let (n1, n2) = (e1.state_count(), e2.state_count());
    let k = e1.alphabet_size();
    let (m1, m2) = (&e1.machine, &e2.machine);
    let next = Table::from_fn(n1 + n2, k, n1 + n2, |q, x| {
        if q < n1 {
            m1.next.get(q, x)
        } else {
            n1 + m2.next.get(q - n1, x)
        }
    });
    let out = Table::from_fn(n1 + n2, k, k, |q, x| {
        if q < n1 {
            m1.out.get(q, x)
        } else {
            m2.out.get(q - n1, x)
        }
    });
    let class = refine(&next, &out);
    Ok(class[e1.initial] == class[n1 + e2.initial])
}

/// A shortest word on which the two transductions differ, or `None` if equal.
pub fn distinguishing_word(e1: &MealyElement, e2: &MealyElement) -> Result<Option<Word>> {
    check_size("alphabets", e1.alphabet_size(), e2.alphabet_size())?;
    let k = e1.alphabet_size();
    let (m1, m2) = (&e1.machine, &e2.machine);
    let start = (e1.initial, e2.initial);
    // parent links of the breadth-first tree over reachable state pairs
    type Pair = (usize, usize);
    let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some((q1, q2)) = queue.pop_front() {
        for x in 0..k {
            if m1.out.get(q1, x) != m2.out.get(q2, x) {
                let mut letters = vec![x];
                let mut cur = (q1, q2);
                while let Some(Some((prev, y))) = parent.get(&cur) {
                    letters.push(*y);
                    cur = *prev;
                }
                letters.reverse();
                return Word::new(letters, k).map(Some);
            }
            let target = (m1.next.get(q1, x), m2.next.get(q2, x));
            if let Entry::Vacant(slot) = parent.entry(target) {
                slot.insert(Some(((q1, q2), x)));
                queue.push_back(target);
            }
        }
    }
    Ok(None)
}

/// Quotient of the reachable part by transduction equivalence, states
/// renumbered breadth-first from the initial one.
pub fn element_minimize(e: &MealyElement) -> MealyElement {
    let m = &e.machine;
    let class = m.equivalence_classes();
    let k = m.alphabet.size();
    let mut id: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([e.initial]);
    id.insert(class[e.initial], 0);
    reps.push(e.initial);
    while let Some(q) = queue.pop_front() {
        for x in 0..k {
            let r = m.next.get(q, x);
            if let Entry::Vacant(slot) = id.entry(class[r]) {
                slot.insert(reps.len());
                reps.push(r);
                queue.push_back(r);
            }
        }
    }
    let n = reps.len();
    let machine = MealyMachine::unlabeled(
        n,
        &m.alphabet,
        Table::from_fn(n, k, n, |i, x| id[&class[m.next.get(reps[i], x)]]),
        Table::from_fn(n, k, k, |i, x| m.out.get(reps[i], x)),
    );
    MealyElement { machine, initial: 0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderOutcome {
    /// Smallest `k ≥ 1` with `e^k` equal to the identity.
    Finite(usize),
    /// No identity power up to `max_power`.
    ExceedsPower { reached: usize },
    /// A power needed more than `max_states` states even after minimization.
    ExceedsStates { power: usize, states: usize },
}

/// Smallest `k ≤ max_power` with `e^k = 1`, searching powers by repeated composition.
pub fn element_order_bounded(e: &MealyElement, max_power: usize, max_states: usize) -> Result<OrderOutcome> {
    if let Some(state) = e.machine.non_invertible_state() {
        return Err(Error::NotInvertible { state });
    }
    let identity = MealyElement::identity(&e.machine.alphabet);
    let mut power = element_minimize(e);
    for k in 1..=max_power {
        if k > 1 {
            power = element_compose(&power, e)?;
            if power.state_count() > MINIMIZE_THRESHOLD {
                power = element_minimize(&power);
            }
        }
        if power.state_count() > max_states {
            return Ok(OrderOutcome::ExceedsStates {
                power: k,
                states: power.state_count(),
            });
        }
        if element_equal(&power, &identity)? {
            return Ok(OrderOutcome::Finite(k));
        }
    }
    Ok(OrderOutcome::ExceedsPower { reached: max_power })
}

/// Reference machines for tests and demos.
pub mod fixtures {
    use super::*;

    /// Binary adding machine: state 0 adds one to least-significant-first words, state 1 is the identity.
    pub fn odometer_machine() -> MealyMachine {
        MealyMachine::from_rows(vec![vec![1, 0], vec![1, 1]], vec![vec![1, 0], vec![0, 1]]).expect("valid table")
    }

    pub fn odometer() -> MealyElement {
        MealyElement::new(odometer_machine(), 0).expect("valid state")
    }

    /// The standard 5-state Grigorchuk machine: states a, b, c, d, e (identity) with
    /// `a = σ`, `b = (a, c)`, `c = (a, d)`, `d = (e, b)`.
    pub fn grigorchuk_machine() -> MealyMachine {
        let labels = ["a", "b", "c", "d", "e"].map(String::from).to_vec();
        MealyMachine::new(
            FiniteSet::with_labels(labels).expect("distinct labels"),
            FiniteSet::new(2).expect("non-empty"),
            Table::from_rows(
                "next",
                vec![vec![4, 4], vec![0, 2], vec![0, 3], vec![4, 1], vec![4, 4]],
                2,
                5,
            )
            .expect("valid table"),
            Table::from_rows(
                "out",
                vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1]],
                2,
                2,
            )
            .expect("valid table"),
        )
        .expect("valid machine")
    }

    /// Grigorchuk generator by name: one of `a`, `b`, `c`, `d`.
    pub fn grigorchuk(name: char) -> MealyElement {
        let state = match name {
            'a' => 0,
            'b' => 1,
            'c' => 2,
            'd' => 3,
            _ => panic!("unknown Grigorchuk generator {name}"),
        };
        MealyElement::new(grigorchuk_machine(), state).expect("valid state")
    }
}
