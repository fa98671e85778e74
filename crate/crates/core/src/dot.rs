//! Graphviz export: states are nodes, each input contributes one edge
//! labelled `input/output`.

use std::fmt::Write;

use crate::algebra::{FiniteSet, SemigroupTable, Table};
use crate::first_type::{PureAutomatonFirst, SemigroupAutomatonFirst};
use crate::group::MealyMachine;
use crate::second_type::{PureAutomatonSecond, SemigroupAutomatonSecond};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render(
    name: &str,
    states: &FiniteSet,
    next: &Table,
    edge_label: impl Fn(usize, usize) -> String,
    initial: Option<usize>,
) -> String {
    let mut s = String::new();
    writeln!(s, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  node [shape=circle];").unwrap();
    if let Some(i) = initial {
        writeln!(s, "  __start [shape=point];").unwrap();
        writeln!(s, "  __start -> \"{}\";", escape(&states.label(i))).unwrap();
    }
    for a in 0..states.size() {
        writeln!(s, "  \"{}\";", escape(&states.label(a))).unwrap();
    }
    for a in 0..states.size() {
        for x in 0..next.cols() {
            writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&states.label(a)),
                escape(&states.label(next.get(a, x))),
                escape(&edge_label(a, x))
            )
            .unwrap();
        }
    }
    s.push_str("}\n");
    s
}

fn element_name(t: &SemigroupTable, g: usize) -> String {
    match t.names() {
        Some(n) => n[g].iter().map(|x| format!("x{x}")).collect(),
        None => format!("g{g}"),
    }
}

pub fn first_pure(m: &PureAutomatonFirst) -> String {
    render(
        "first-pure",
        m.states(),
        m.next(),
        |a, x| format!("{}/{}", m.inputs().label(x), m.outputs().label(m.out().get(a, x))),
        None,
    )
}

/// Semigroup elements are labelled by their shortest generator word when known.
pub fn first_semigroup(m: &SemigroupAutomatonFirst) -> String {
    render(
        "first-semigroup",
        m.states(),
        m.next(),
        |a, g| {
            format!("{}/{}", element_name(m.gamma(), g), m.outputs().label(m.out().get(a, g)))
        },
        None,
    )
}

pub fn second_pure(m: &PureAutomatonSecond) -> String {
    render(
        "second-pure",
        m.states(),
        m.next(),
        |a, x| format!("{}/{}", m.inputs().label(x), m.outputs().label(m.out().get(a, x))),
        None,
    )
}

/// Output labels are elements of `Σ`, named like those of `Γ`.
pub fn second_semigroup(m: &SemigroupAutomatonSecond) -> String {
    render(
        "second-semigroup",
        m.states(),
        m.next(),
        |a, g| format!("{}/{}", element_name(m.gamma(), g), element_name(m.sigma(), m.out().get(a, g))),
        None,
    )
}

pub fn mealy(m: &MealyMachine, initial: Option<usize>) -> String {
    render(
        "mealy",
        m.states(),
        m.next(),
        |a, x| format!("{}/{}", m.alphabet().label(x), m.alphabet().label(m.out().get(a, x))),
        initial,
    )
}
