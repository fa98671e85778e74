//! Finite automata over semigroups: first- and second-type automata, cascade
//! and wreath products, serial connections and automaton groups.
//!
//! All finite sets are `0..n`; semigroups are explicit Cayley tables.

pub mod algebra;
pub mod cascade;
pub mod dot;
pub mod error;
pub mod first_type;
pub mod group;
pub mod par;
pub mod sample;
pub mod schema;
pub mod second_type;
pub mod serial;
pub mod verdict;

pub use algebra::{FiniteSet, SemigroupTable, Table, Transformation, Word, DEFAULT_CAP};
pub use error::{Error, Result};
pub use par::Execution;
pub use verdict::Verdict;
