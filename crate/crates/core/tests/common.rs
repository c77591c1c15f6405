#![allow(dead_code)]

use fsa_core::random::{random_dfa, random_nfa, random_transducer, TransducerShape};
use fsa_core::{Dfa, Nfa, SubseqTransducer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const SMALL_TRANSDUCER: TransducerShape = TransducerShape {
    max_states: 5,
    input_size: 2,
    output_size: 2,
    max_word_len: 3,
};

pub fn dfa(seed: u64, max_states: usize) -> Dfa {
    random_dfa(&mut rng(seed), max_states, 2)
}

pub fn nfa(seed: u64, max_states: usize) -> Nfa {
    random_nfa(&mut rng(seed), max_states, 2, 0.3)
}

pub fn transducer(seed: u64) -> SubseqTransducer {
    random_transducer(&mut rng(seed), SMALL_TRANSDUCER)
}
