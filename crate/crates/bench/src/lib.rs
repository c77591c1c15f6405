//! Seeded machine pools shared by the criterion benches.

use fsa_core::random::{random_dfa, random_nfa, random_transducer, TransducerShape};
use fsa_core::{Dfa, Nfa, SubseqTransducer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn dfa_pool(seed: u64, count: usize, max_states: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dfa(&mut rng, max_states, 2)).collect()
}

pub fn nfa_pool(seed: u64, count: usize, max_states: usize) -> Vec<Nfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_nfa(&mut rng, max_states, 2, 0.3)).collect()
}

pub fn transducer_pool(seed: u64, count: usize, max_states: usize) -> Vec<SubseqTransducer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = TransducerShape {
        max_states,
        input_size: 2,
        output_size: 2,
        max_word_len: 3,
    };
    (0..count).map(|_| random_transducer(&mut rng, shape)).collect()
}
