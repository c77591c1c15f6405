//! Random generators used by the tests and benches.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::Dfa;
use crate::kleisli::{BehaviorTable, KleisliMorphism, KleisliValue, SubseqTransducer};
use crate::machine::{default_names, DetMachine};
use crate::nfa::Nfa;

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet_size: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Symbol(rng.gen_range(0..alphabet_size))).collect()
}

/// A DFA with between 1 and `max_states` states over `{a, b, ...}`.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, max_states: usize, alphabet_size: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let delta = (0..n)
        .map(|_| (0..alphabet_size).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let out = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let init = rng.gen_range(0..n);
    DetMachine::new(Alphabet::letters(alphabet_size), default_names(n), init, delta, out)
        .expect("generated machine is valid")
}

/// An NFA with between 1 and `max_states` states where each possible edge
/// is present with probability `density`.
pub fn random_nfa<R: Rng + ?Sized>(rng: &mut R, max_states: usize, alphabet_size: usize, density: f64) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut edges = Vec::new();
    for p in 0..n {
        for a in 0..alphabet_size {
            for q in 0..n {
                if rng.gen_bool(density) {
                    edges.push((p, Symbol(a), q));
                }
            }
        }
    }
    let init = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    let finals = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    Nfa::new(Alphabet::letters(alphabet_size), default_names(n), init, finals, edges)
        .expect("generated machine is valid")
}

/// Output alphabet `{x, y, ...}` with `size` symbols, disjoint from the
/// input letters so the two are easy to tell apart in printed machines.
pub fn output_alphabet(size: usize) -> Alphabet {
    assert!((1..=3).contains(&size));
    Alphabet::new(["x", "y", "z"].into_iter().take(size)).expect("valid alphabet")
}

#[derive(Debug, Clone, Copy)]
pub struct TransducerShape {
    pub max_states: usize,
    pub input_size: usize,
    pub output_size: usize,
    pub max_word_len: usize,
}

pub fn random_transducer<R: Rng + ?Sized>(rng: &mut R, shape: TransducerShape) -> SubseqTransducer {
    let n = rng.gen_range(1..=shape.max_states);
    let word = |rng: &mut R| random_word(rng, shape.output_size, shape.max_word_len);
    let init = if rng.gen_bool(0.05) {
        KleisliValue::Bot
    } else {
        KleisliValue::Pair(word(rng), rng.gen_range(0..n))
    };
    let term = (0..n)
        .map(|_| {
            if rng.gen_bool(0.4) {
                KleisliValue::Bot
            } else {
                KleisliValue::Pair(word(rng), ())
            }
        })
        .collect();
    let trans = (0..n)
        .map(|_| {
            (0..shape.input_size)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        KleisliValue::Bot
                    } else {
                        KleisliValue::Pair(word(rng), rng.gen_range(0..n))
                    }
                })
                .collect()
        })
        .collect();
    SubseqTransducer::new(
        Alphabet::letters(shape.input_size),
        output_alphabet(shape.output_size),
        default_names(n),
        init,
        term,
        trans,
    )
    .expect("generated machine is valid")
}

/// Adds `copies` duplicated states (each incoming edge of the original is
/// randomly redirected to the copy) and one unreachable junk state. The
/// realized function does not change.
pub fn duplicate_states<R: Rng + ?Sized>(rng: &mut R, t: &SubseqTransducer, copies: usize) -> SubseqTransducer {
    let k = t.input().len();
    let mut term: Vec<KleisliValue<()>> = (0..t.num_states()).map(|q| t.term(q).clone()).collect();
    let mut trans: Vec<Vec<KleisliValue<usize>>> = (0..t.num_states())
        .map(|q| t.input().symbols().map(|a| t.trans(q, a).clone()).collect())
        .collect();
    let mut init = t.init().clone();
    if t.num_states() > 0 {
        for _ in 0..copies {
            let original = rng.gen_range(0..t.num_states());
            let copy = term.len();
            term.push(term[original].clone());
            trans.push(trans[original].clone());
            for v in trans.iter_mut().flatten().chain(std::iter::once(&mut init)) {
                if let KleisliValue::Pair(_, q) = v {
                    if *q == original && rng.gen_bool(0.5) {
                        *q = copy;
                    }
                }
            }
        }
    }
    let n = term.len() + 1;
    term.push(KleisliValue::Pair(random_word(rng, t.output().len(), 2), ()));
    trans.push(
        (0..k)
            .map(|_| KleisliValue::Pair(random_word(rng, t.output().len(), 2), rng.gen_range(0..n)))
            .collect(),
    );
    SubseqTransducer::new(t.input().clone(), t.output().clone(), default_names(n), init, term, trans)
        .expect("duplicated machine is valid")
}

/// An equivalent transducer that holds back the last output symbol until
/// the next step. States are pairs of an original state and the held
/// symbol, so the result is neither onward nor minimal.
pub fn delay_outputs(t: &SubseqTransducer) -> SubseqTransducer {
    type Held = (usize, Option<Symbol>);
    let split = |w: Word| -> (Word, Option<Symbol>) {
        match w.as_slice().split_last() {
            Some((&last, rest)) => (rest.iter().copied().collect(), Some(last)),
            None => (w, None),
        }
    };
    let with_held = |held: Option<Symbol>, w: &Word| -> Word {
        held.into_iter().collect::<Word>().concat(w)
    };
    let (u0, q0) = match t.init().as_pair() {
        Some((u, &q)) => (u.clone(), q),
        None => return t.clone(),
    };
    let (emit0, held0) = split(u0);
    let mut ids: HashMap<Held, usize> = HashMap::from([((q0, held0), 0)]);
    let mut states: Vec<Held> = vec![(q0, held0)];
    let mut queue = VecDeque::from([0usize]);
    let mut trans: Vec<Vec<KleisliValue<usize>>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (q, held) = states[i];
        let mut row = Vec::new();
        for a in t.input().symbols() {
            row.push(match t.trans(q, a).as_pair() {
                None => KleisliValue::Bot,
                Some((w, &r)) => {
                    let (emit, keep) = split(with_held(held, w));
                    let j = *ids.entry((r, keep)).or_insert_with(|| {
                        states.push((r, keep));
                        queue.push_back(states.len() - 1);
                        states.len() - 1
                    });
                    KleisliValue::Pair(emit, j)
                }
            });
        }
        trans.push(row);
    }
    let term = states
        .iter()
        .map(|&(q, held)| match t.term(q).word() {
            Some(w) => KleisliValue::Pair(with_held(held, w), ()),
            None => KleisliValue::Bot,
        })
        .collect();
    SubseqTransducer::new(
        t.input().clone(),
        t.output().clone(),
        default_names(states.len()),
        KleisliValue::Pair(emit0, 0),
        term,
        trans,
    )
    .expect("delayed machine is valid")
}

fn random_value<R: Rng + ?Sized>(rng: &mut R, codomain: usize, output_size: usize, max_len: usize) -> KleisliValue<usize> {
    if codomain == 0 || rng.gen_bool(0.25) {
        KleisliValue::Bot
    } else {
        KleisliValue::Pair(random_word(rng, output_size, max_len), rng.gen_range(0..codomain))
    }
}

/// An arbitrary map `X ⇸ Y`.
pub fn random_kleisli<R: Rng + ?Sized>(
    rng: &mut R,
    domain: usize,
    codomain: usize,
    output_size: usize,
    max_len: usize,
) -> KleisliMorphism {
    let map = (0..domain)
        .map(|_| random_value(rng, codomain, output_size, max_len))
        .collect();
    KleisliMorphism::new(codomain, map).expect("generated morphism is valid")
}

/// A map in E_Kl: every element of the codomain is hit. Needs
/// `domain ≥ codomain`.
pub fn random_epi<R: Rng + ?Sized>(
    rng: &mut R,
    domain: usize,
    codomain: usize,
    output_size: usize,
    max_len: usize,
) -> KleisliMorphism {
    assert!(domain >= codomain);
    let mut order: Vec<usize> = (0..domain).collect();
    order.shuffle(rng);
    let mut map = vec![KleisliValue::Bot; domain];
    for (i, &x) in order.iter().enumerate() {
        map[x] = if i < codomain {
            KleisliValue::Pair(random_word(rng, output_size, max_len), i)
        } else {
            random_value(rng, codomain, output_size, max_len)
        };
    }
    KleisliMorphism::new(codomain, map).expect("generated morphism is valid")
}

/// A map in M_Kl: an injection producing no output. Needs
/// `domain ≤ codomain`.
pub fn random_mono<R: Rng + ?Sized>(rng: &mut R, domain: usize, codomain: usize) -> KleisliMorphism {
    assert!(domain <= codomain);
    let mut targets: Vec<usize> = (0..codomain).collect();
    targets.shuffle(rng);
    let map = targets[..domain].iter().map(|&y| KleisliValue::unit(y)).collect();
    KleisliMorphism::new(codomain, map).expect("generated morphism is valid")
}

/// A table over all input words of length ≤ `bound` with at least one
/// defined entry. A random common prefix is mixed in so that tables are
/// often reducible.
pub fn random_table<R: Rng + ?Sized>(
    rng: &mut R,
    input_size: usize,
    bound: usize,
    output_size: usize,
    max_len: usize,
) -> BehaviorTable {
    let shared = random_word(rng, output_size, 2);
    loop {
        let entries: Vec<(Word, KleisliValue<()>)> = crate::alphabet::words_up_to(input_size, bound)
            .into_iter()
            .map(|u| {
                let v = if rng.gen_bool(0.3) {
                    KleisliValue::Bot
                } else {
                    KleisliValue::Pair(shared.concat(&random_word(rng, output_size, max_len)), ())
                };
                (u, v)
            })
            .collect();
        if entries.iter().any(|(_, v)| !v.is_bot()) {
            return BehaviorTable::new(entries);
        }
    }
}
