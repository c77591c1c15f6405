//! Finite-state machines minimized as "observable quotient of the
//! reachable part".
//!
//! The same reach/observe factorization drives three families:
//!
//! - deterministic machines with arbitrary outputs ([`DetMachine`], with
//!   acceptors as [`Dfa`]), minimized by Moore partition refinement;
//! - relational automata ([`Nfa`]), minimized by Brzozowski's
//!   determinize-of-codeterminize;
//! - subsequential transducers ([`SubseqTransducer`]), minimized by making
//!   them onward and merging states, following Choffrut.
//!
//! The [`oracle`] module holds brute-force references used by the tests,
//! [`format`] reads and writes the line-based machine files, and
//! [`random`] generates machines for property tests and benches.

pub mod alphabet;
pub mod dfa;
mod error;
pub mod format;
pub mod kleisli;
pub mod machine;
pub mod nfa;
pub mod oracle;
pub mod random;

pub use alphabet::{words_up_to, Alphabet, Symbol, Word};
pub use dfa::{Dfa, Partition};
pub use error::{Error, Result};
pub use format::{parse, print, AnyMachine};
pub use kleisli::{KleisliMorphism, KleisliValue, SubseqTransducer};
pub use machine::{
    check_morphism, isomorphic, minimize_by_factorization, run, DetAutomaton, DetMachine,
    Factorize, MachineMorphism,
};
pub use nfa::Nfa;
