//! Partial word-producing maps and subsequential transducers.
//!
//! A value of `T X = B* × X + 1` is either undefined ([`KleisliValue::Bot`])
//! or an output word paired with an element of `X`. Maps `X → T Y` compose
//! by concatenating words, which makes a subsequential transducer the same
//! thing as an initial map `1 → T Q`, one map `Q → T Q` per input letter and
//! a termination map `Q → T 1`.

mod morphism;
mod table;
mod transducer;

pub use morphism::{
    diagonal_fill, factorize, is_epi, is_mono, kleisli_compose, Factorization, KleisliMorphism,
    KleisliValue,
};
pub use table::{lcp, pstar, reduce, BehaviorTable};
pub use transducer::{
    choffrut_minimize, class_map, free_transducer, is_onward, is_trimmed, lift_to_set,
    maximal_outputs, normalize, transduce, transducer_distinguishing_word, transducer_equiv,
    transducer_isomorphic, trim, LiftedTransducer, SubseqTransducer, TransducerMorphism,
};
