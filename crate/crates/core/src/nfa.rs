//! Nondeterministic automata: transposition, the powerset construction,
//! its mirror image, and Brzozowski's double-reversal minimization.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::machine::{check_names, DetMachine};

/// A relational automaton: sets of initial and final states and one
/// transition relation per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    init: Vec<usize>,
    finals: Vec<usize>,
    // sorted, duplicate-free successor lists indexed by q * |A| + a
    delta: Vec<Vec<usize>>,
}

fn normalize_set(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        init: Vec<usize>,
        finals: Vec<usize>,
        transitions: impl IntoIterator<Item = (usize, Symbol, usize)>,
    ) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let k = alphabet.len();
        let out_of_range = |q: usize| Error::InvalidMachine(format!("state {q} out of range"));
        if let Some(&q) = init.iter().chain(&finals).find(|&&q| q >= n) {
            return Err(out_of_range(q));
        }
        let mut delta = vec![Vec::new(); n * k];
        for (p, a, q) in transitions {
            if p >= n || q >= n {
                return Err(out_of_range(p.max(q)));
            }
            if !alphabet.contains(a) {
                return Err(Error::UnknownSymbol { symbol: a.0, size: k });
            }
            delta[p * k + a.0].push(q);
        }
        Ok(Nfa {
            alphabet,
            names,
            init: normalize_set(init),
            finals: normalize_set(finals),
            delta: delta.into_iter().map(normalize_set).collect(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn init(&self) -> &[usize] {
        &self.init
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn succ(&self, q: usize, a: Symbol) -> &[usize] {
        &self.delta[q * self.alphabet.len() + a.0]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.binary_search(&q).is_ok()
    }

    /// All transitions as `(source, symbol, target)` in (state, symbol,
    /// target) order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        (0..self.num_states()).flat_map(move |p| {
            self.alphabet
                .symbols()
                .flat_map(move |a| self.succ(p, a).iter().map(move |&q| (p, a, q)))
        })
    }

    /// Relational image of a (sorted) set of states under one letter.
    pub fn image(&self, set: &[usize], a: Symbol) -> Vec<usize> {
        let mut mark = vec![false; self.num_states()];
        for &p in set {
            for &q in self.succ(p, a) {
                mark[q] = true;
            }
        }
        (0..self.num_states()).filter(|&q| mark[q]).collect()
    }

    /// Single initial state and exactly one successor per (state, letter).
    pub fn is_deterministic(&self) -> bool {
        self.init.len() == 1 && self.delta.iter().all(|s| s.len() == 1)
    }
}

/// Reverses every edge and swaps initial and final states.
pub fn transpose(n: &Nfa) -> Nfa {
    let k = n.alphabet.len();
    let mut delta = vec![Vec::new(); n.delta.len()];
    for (p, a, q) in n.transitions() {
        delta[q * k + a.0].push(p);
    }
    Nfa {
        alphabet: n.alphabet.clone(),
        names: n.names.clone(),
        init: n.finals.clone(),
        finals: n.init.clone(),
        // sources are visited in increasing order, so each list is sorted
        delta,
    }
}

/// Powerset construction restricted to the subsets reachable from the
/// initial set, discovered breadth-first in letter order. Each subset
/// state is named `{p,q,...}`; the empty subset appears only if reached.
pub fn determinize(n: &Nfa) -> Dfa {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = vec![n.init.clone()];
    ids.insert(n.init.clone(), 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(n.alphabet.len());
        for a in n.alphabet.symbols() {
            let img = n.image(&subsets[i], a);
            let j = match ids.get(&img) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    ids.insert(img.clone(), j);
                    subsets.push(img);
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        if delta.len() <= i {
            delta.resize(i + 1, Vec::new());
        }
        delta[i] = row;
    }
    let names = subsets
        .iter()
        .map(|s| {
            let inner: Vec<&str> = s.iter().map(|&q| n.name(q)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let out = subsets
        .iter()
        .map(|s| s.iter().any(|&q| n.is_final(q)))
        .collect();
    DetMachine::new(n.alphabet.clone(), names, 0, delta, out)
        .expect("subset construction yields a valid machine")
}

/// A deterministic acceptor seen as a relational automaton.
pub fn embed(m: &Dfa) -> Nfa {
    let transitions: Vec<_> = (0..m.num_states())
        .flat_map(|q| m.alphabet().symbols().map(move |a| (q, a, m.succ(q, a))))
        .collect();
    Nfa::new(
        m.alphabet().clone(),
        m.names().to_vec(),
        vec![m.init()],
        (0..m.num_states()).filter(|&q| *m.out(q)).collect(),
        transitions,
    )
    .expect("embedding of a valid machine is valid")
}

/// An automaton whose transpose is deterministic and reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeterministic(Nfa);

impl Codeterministic {
    pub fn as_nfa(&self) -> &Nfa {
        &self.0
    }

    pub fn into_nfa(self) -> Nfa {
        self.0
    }

    /// The deterministic machine running backwards.
    pub fn backward(&self) -> Dfa {
        determinize(&transpose(&self.0))
    }
}

/// `transpose ∘ embed ∘ determinize ∘ transpose`.
pub fn codeterminize(n: &Nfa) -> Codeterministic {
    Codeterministic(transpose(&embed(&determinize(&transpose(n)))))
}

/// Brzozowski's minimization: determinize the codeterminized automaton.
pub fn brzozowski(n: &Nfa) -> Dfa {
    determinize(codeterminize(n).as_nfa())
}

/// Whether the relational image of the initial set under `w` meets the
/// final set.
pub fn accepts(n: &Nfa, w: &Word) -> Result<bool> {
    n.alphabet.check_word(w)?;
    let current = w.iter().fold(n.init.clone(), |set, a| n.image(&set, *a));
    Ok(current.iter().any(|&q| n.is_final(q)))
}
