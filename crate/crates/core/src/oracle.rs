//! Brute-force references for the test suites.
//!
//! Nothing here calls into the algorithms it is used to check. Each
//! reference is written out again with its own traversal.

use std::collections::{HashSet, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::kleisli::{transducer_equiv, KleisliValue, SubseqTransducer};
use crate::machine::DetAutomaton;
use crate::nfa::Nfa;

/// Outputs on every word of length at most `bound`, in length-then-
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageTable<O> {
    pub alphabet: Alphabet,
    pub bound: usize,
    pub entries: Vec<(Word, O)>,
}

impl<O> LanguageTable<O> {
    pub fn get(&self, w: &Word) -> Option<&O> {
        self.entries.iter().find(|(u, _)| u == w).map(|(_, o)| o)
    }
}

/// Extends each word of `layer` by every letter, in order.
fn next_layer<S: Clone>(layer: &[(Word, S)], k: usize, step: impl Fn(&S, Symbol) -> S) -> Vec<(Word, S)> {
    let mut next = Vec::with_capacity(layer.len() * k);
    for (w, s) in layer {
        for a in (0..k).map(Symbol) {
            let mut u = w.clone();
            u.push(a);
            next.push((u, step(s, a)));
        }
    }
    next
}

fn tabulate<S: Clone, O>(
    alphabet: &Alphabet,
    bound: usize,
    start: S,
    step: impl Fn(&S, Symbol) -> S,
    out: impl Fn(&S) -> O,
) -> LanguageTable<O> {
    let mut layer = vec![(Word::empty(), start)];
    let mut entries = Vec::new();
    for depth in 0..=bound {
        entries.extend(layer.iter().map(|(w, s)| (w.clone(), out(s))));
        if depth < bound {
            layer = next_layer(&layer, alphabet.len(), &step);
        }
    }
    LanguageTable {
        alphabet: alphabet.clone(),
        bound,
        entries,
    }
}

/// Tabulates any deterministic machine.
pub fn enumerate<M: DetAutomaton>(m: &M, bound: usize) -> LanguageTable<M::Output> {
    tabulate(m.alphabet(), bound, m.initial(), |q, a| m.step(q, a), |q| m.output(q))
}

/// Tabulates acceptance of a relational automaton by tracking the set of
/// live states directly.
pub fn enumerate_nfa(n: &Nfa, bound: usize) -> LanguageTable<bool> {
    let start: Vec<bool> = (0..n.num_states()).map(|q| n.init().contains(&q)).collect();
    tabulate(
        n.alphabet(),
        bound,
        start,
        |live, a| {
            let mut next = vec![false; live.len()];
            for p in (0..live.len()).filter(|&p| live[p]) {
                for &q in n.succ(p, a) {
                    next[q] = true;
                }
            }
            next
        },
        |live| n.finals().iter().any(|&q| live[q]),
    )
}

/// Tabulates a transducer by evaluating its defining formula letter by
/// letter: the initial word, one production per letter, then the
/// termination word.
pub fn enumerate_transducer(t: &SubseqTransducer, bound: usize) -> LanguageTable<KleisliValue<()>> {
    let start: Option<(Word, usize)> = t.init().as_pair().map(|(u, &q)| (u.clone(), q));
    tabulate(
        t.input(),
        bound,
        start,
        |s, a| {
            let (out, q) = s.as_ref()?;
            let (w, &r) = t.trans(*q, a).as_pair()?;
            Some((out.concat(w), r))
        },
        |s| match s {
            Some((out, q)) => match t.term(*q).word() {
                Some(w) => KleisliValue::Pair(out.concat(w), ()),
                None => KleisliValue::Bot,
            },
            None => KleisliValue::Bot,
        },
    )
}

/// States of `m` reachable from its initial state (depth-first).
fn reachable_states(m: &Dfa) -> Vec<usize> {
    let mut seen = vec![false; m.num_states()];
    let mut stack = vec![m.init()];
    seen[m.init()] = true;
    while let Some(q) = stack.pop() {
        for a in m.alphabet().symbols() {
            let r = m.succ(q, a);
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    (0..m.num_states()).filter(|&q| seen[q]).collect()
}

/// Whether the residual languages at `p` and `q` coincide.
fn same_residual(m: &Dfa, p: usize, q: usize) -> bool {
    let mut seen = HashSet::from([(p, q)]);
    let mut queue = VecDeque::from([(p, q)]);
    while let Some((x, y)) = queue.pop_front() {
        if m.out(x) != m.out(y) {
            return false;
        }
        for a in m.alphabet().symbols() {
            let pair = (m.succ(x, a), m.succ(y, a));
            if seen.insert(pair) {
                queue.push_back(pair);
            }
        }
    }
    true
}

/// Number of distinct residual languages `w⁻¹L` over reachable prefixes.
pub fn nerode_count(m: &Dfa) -> usize {
    let mut representatives: Vec<usize> = Vec::new();
    for q in reachable_states(m) {
        if !representatives.iter().any(|&r| same_residual(m, r, q)) {
            representatives.push(q);
        }
    }
    representatives.len()
}

pub const PARTITION_SEARCH_LIMIT: usize = 5;

/// Calls `visit` with every set partition of `0..n` as a block labelling
/// (restricted growth strings).
fn for_each_partition(n: usize, visit: &mut impl FnMut(&[usize], usize)) {
    fn go(labels: &mut Vec<usize>, n: usize, blocks: usize, visit: &mut impl FnMut(&[usize], usize)) {
        if labels.len() == n {
            visit(labels, blocks);
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            go(labels, n, blocks.max(b + 1), visit);
            labels.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, 0, visit);
}

/// The quotient of `t` by `labels`, if every block agrees on termination,
/// on production words and on the blocks of successors.
fn quotient_by(t: &SubseqTransducer, labels: &[usize], blocks: usize) -> Option<SubseqTransducer> {
    let mut rep: Vec<Option<usize>> = vec![None; blocks];
    for (q, &b) in labels.iter().enumerate() {
        rep[b].get_or_insert(q);
    }
    let lift = |v: &KleisliValue<usize>| match v {
        KleisliValue::Pair(w, r) => KleisliValue::Pair(w.clone(), labels[*r]),
        KleisliValue::Bot => KleisliValue::Bot,
    };
    for (q, &b) in labels.iter().enumerate() {
        let r = rep[b]?;
        if t.term(q) != t.term(r) {
            return None;
        }
        if t.input().symbols().any(|a| lift(t.trans(q, a)) != lift(t.trans(r, a))) {
            return None;
        }
    }
    let reps: Vec<usize> = rep.into_iter().collect::<Option<_>>()?;
    SubseqTransducer::new(
        t.input().clone(),
        t.output().clone(),
        (0..blocks).map(|i| format!("b{i}")).collect(),
        lift(t.init()),
        reps.iter().map(|&r| t.term(r).clone()).collect(),
        reps.iter()
            .map(|&r| t.input().symbols().map(|a| lift(t.trans(r, a))).collect())
            .collect(),
    )
    .ok()
}

/// Fewest blocks of any partition of `t`'s states whose quotient is a
/// well-defined transducer equivalent to `t`.
pub fn partition_search_min(t: &SubseqTransducer) -> Result<usize> {
    let n = t.num_states();
    if n > PARTITION_SEARCH_LIMIT {
        return Err(Error::TooManyStates {
            found: n,
            limit: PARTITION_SEARCH_LIMIT,
        });
    }
    let mut best = n;
    let mut failure = None;
    for_each_partition(n, &mut |labels, blocks| {
        if blocks >= best || failure.is_some() {
            return;
        }
        if let Some(q) = quotient_by(t, labels, blocks) {
            match transducer_equiv(t, &q) {
                Ok(true) => best = blocks,
                Ok(false) => {}
                Err(e) => failure = Some(e),
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}
