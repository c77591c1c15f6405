//! Reachability, observability quotients and minimization of finite
//! deterministic machines. Acceptors (`Dfa`) are the `bool`-output case.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::machine::{run_from, DetMachine, MachineMorphism};

/// Deterministic acceptor: the output of a state says whether it accepts.
pub type Dfa = DetMachine<bool>;

/// A partition of the states of a machine into blocks.
///
/// Blocks are numbered by their least member, so `blocks[0]` contains
/// state 0 and block indices increase with their least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Renumbers an arbitrary labelling into canonical blocks.
    pub fn from_labels<L: Eq + Hash>(labels: &[L]) -> Self {
        let mut ids: HashMap<&L, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let block_of = labels
            .iter()
            .enumerate()
            .map(|(q, l)| {
                let next = ids.len();
                let b = *ids.entry(l).or_insert(next);
                if b == blocks.len() {
                    blocks.push(Vec::new());
                }
                blocks[b].push(q);
                b
            })
            .collect();
        Partition { blocks, block_of }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, q: usize) -> usize {
        self.block_of[q]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }
}

/// Restriction of `m` to the states reachable from its initial state.
/// State names and their relative order are kept.
pub fn reach<O: Clone>(m: &DetMachine<O>) -> DetMachine<O> {
    let mut keep = m.bfs_order();
    keep.sort_unstable();
    m.restrict(&keep, false)
}

/// Coarsest partition compatible with outputs and transitions, computed by
/// Moore's iterated refinement.
pub fn observation_partition<O: Eq + Hash>(m: &DetMachine<O>) -> Partition {
    let mut part = Partition::from_labels(m.outputs());
    loop {
        let signatures: Vec<Vec<usize>> = (0..m.num_states())
            .map(|q| {
                std::iter::once(part.block_of(q))
                    .chain(m.alphabet().symbols().map(|a| part.block_of(m.succ(q, a))))
                    .collect()
            })
            .collect();
        let refined = Partition::from_labels(&signatures);
        if refined.num_blocks() == part.num_blocks() {
            return refined;
        }
        part = refined;
    }
}

/// Quotient of `m` by its observation partition, together with the
/// partition. Each block is named after its least member.
pub fn obs<O: Clone + Eq + Hash>(m: &DetMachine<O>) -> (DetMachine<O>, Partition) {
    let part = observation_partition(m);
    (quotient(m, &part), part)
}

pub(crate) fn quotient<O: Clone>(m: &DetMachine<O>, part: &Partition) -> DetMachine<O> {
    let delta = part
        .blocks()
        .iter()
        .map(|b| {
            m.alphabet()
                .symbols()
                .map(|a| part.block_of(m.succ(b[0], a)))
                .collect()
        })
        .collect();
    DetMachine::new(
        m.alphabet().clone(),
        part.blocks().iter().map(|b| m.name(b[0]).to_string()).collect(),
        part.block_of(m.init()),
        delta,
        part.blocks().iter().map(|b| m.out(b[0]).clone()).collect(),
    )
    .expect("quotient of a valid machine is valid")
}

/// The minimal machine with the same behavior, renumbered `q0..` in BFS
/// order from the initial state.
pub fn minimize<O: Clone + Eq + Hash>(m: &DetMachine<O>) -> DetMachine<O> {
    obs(&reach(m)).0.canonical()
}

/// `m` re-rooted at the state reached by `w`; it accepts `w⁻¹L`.
pub fn residual<O: Clone>(m: &DetMachine<O>, w: &Word) -> Result<DetMachine<O>> {
    let q = run_from(m, m.init(), w)?;
    Ok(m.with_init(q))
}

/// A shortest word on which `m1` and `m2` produce different outputs, or
/// `None` when they are equivalent.
pub fn distinguishing_word<O: PartialEq>(
    m1: &DetMachine<O>,
    m2: &DetMachine<O>,
) -> Result<Option<Word>> {
    if m1.alphabet() != m2.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{{{}}} vs {{{}}}",
            m1.alphabet(),
            m2.alphabet()
        )));
    }
    let n2 = m2.num_states();
    let key = |p: usize, q: usize| p * n2 + q;
    let mut parent: HashMap<usize, Option<(usize, Symbol)>> = HashMap::new();
    let start = (m1.init(), m2.init());
    parent.insert(key(start.0, start.1), None);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if m1.out(p) != m2.out(q) {
            let mut letters = Vec::new();
            let mut k = key(p, q);
            while let Some(&Some((prev, a))) = parent.get(&k) {
                letters.push(a);
                k = prev;
            }
            letters.reverse();
            return Ok(Some(letters.into()));
        }
        for a in m1.alphabet().symbols() {
            let next = (m1.succ(p, a), m2.succ(q, a));
            let nk = key(next.0, next.1);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(nk) {
                e.insert(Some((key(p, q), a)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Language equality, by synchronized BFS over the reachable product.
pub fn equiv<O: PartialEq>(m1: &DetMachine<O>, m2: &DetMachine<O>) -> Result<bool> {
    Ok(distinguishing_word(m1, m2)?.is_none())
}

/// The surjective morphism from the reachable part of `b` onto its
/// minimization, sending each state to its observation class.
pub fn min_divides<O: Clone + Eq + Hash>(b: &DetMachine<O>) -> MachineMorphism<O> {
    let source = reach(b);
    let (quot, part) = obs(&source);
    let order = quot.bfs_order();
    let mut position = vec![0; quot.num_states()];
    for (i, &blk) in order.iter().enumerate() {
        position[blk] = i;
    }
    let map = (0..source.num_states())
        .map(|q| position[part.block_of(q)])
        .collect();
    MachineMorphism {
        target: quot.canonical(),
        source,
        map,
    }
}

/// Whether every state is reachable from the initial state.
pub fn is_reachable<O: Clone>(m: &DetMachine<O>) -> bool {
    m.bfs_order().len() == m.num_states()
}

/// Whether no two distinct states are observationally equivalent.
pub fn is_observable<O: Eq + Hash>(m: &DetMachine<O>) -> bool {
    observation_partition(m).num_blocks() == m.num_states()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{words_up_to, Alphabet};
    use crate::machine::tests::{constant, parity};
    use crate::machine::{check_morphism, isomorphic, run};

    /// Acceptance of every path of length ≤ 3, written out independently.
    fn visited_by_paths(m: &Dfa, bound: usize) -> Vec<bool> {
        let mut seen = vec![false; m.num_states()];
        for w in words_up_to(m.alphabet().len(), bound) {
            let mut q = m.init();
            seen[q] = true;
            for a in &w {
                q = m.succ(q, *a);
                seen[q] = true;
            }
        }
        seen
    }

    fn ends_with_a_redundant() -> Dfa {
        // 4 states over {a, b}; 0 and 2 are "last letter not a", 1 and 3 are "last letter a"
        let ab = Alphabet::letters(2);
        DetMachine::from_fn(
            ab,
            4,
            0,
            |q, a| match (q, a.0) {
                (0, 0) => 1,
                (0, _) => 2,
                (1, 0) => 3,
                (1, _) => 0,
                (2, 0) => 3,
                (2, _) => 2,
                (_, 0) => 1,
                (_, _) => 2,
            },
            |q| q == 1 || q == 3,
        )
        .unwrap()
    }

    #[test]
    fn reach_examples() {
        let a = Alphabet::letters(1);
        let m = DetMachine::from_fn(a, 3, 0, |q, _| if q == 2 { 0 } else { 1 }, |q| q == 1).unwrap();
        let r = reach(&m);
        assert_eq!(r.num_states(), 2);
        assert_eq!(r.names(), &["q0".to_string(), "q1".to_string()]);
        let seen = visited_by_paths(&m, 3);
        assert_eq!(seen, vec![true, true, false]);

        let p = parity();
        assert_eq!(reach(&p), p);
    }

    #[test]
    fn reach_drops_isolated_state() {
        let a = Alphabet::letters(2);
        let m = DetMachine::from_fn(a, 3, 1, |q, _| if q == 0 { 0 } else { q }, |q| q == 2).unwrap();
        let r = reach(&m);
        assert_eq!(r.names(), &["q1".to_string()]);
    }

    #[test]
    fn obs_examples() {
        let a = Alphabet::letters(1);
        let flat = DetMachine::from_fn(a.clone(), 3, 0, |q, _| (q + 1) % 3, |_| true).unwrap();
        assert_eq!(obs(&flat).1.num_blocks(), 1);

        let (q, part) = obs(&parity());
        assert_eq!(part.num_blocks(), 2);
        assert!(isomorphic(&q, &parity()).is_some());

        // q1 and q2 accept and both loop to q1
        let m = DetMachine::from_fn(a, 3, 0, |q, _| if q == 0 { 2 } else { 1 }, |q| q != 0).unwrap();
        let (q, part) = obs(&m);
        assert_eq!(q.num_states(), 2);
        assert_eq!(part.blocks(), &[vec![0], vec![1, 2]]);
        assert!(equiv(&m.with_init(1), &m.with_init(2)).unwrap());
    }

    #[test]
    fn minimize_examples() {
        let p = parity();
        assert!(isomorphic(&minimize(&p), &p).is_some());

        let m = ends_with_a_redundant();
        let min = minimize(&m);
        assert_eq!(min.num_states(), 2);
        assert!(equiv(&m, &min).unwrap());

        let empty = DetMachine::from_fn(Alphabet::letters(2), 3, 0, |q, _| (q + 1) % 3, |_| false).unwrap();
        let min = minimize(&empty);
        assert_eq!(min.num_states(), 1);
        assert!(!*min.out(0));
    }

    #[test]
    fn residual_examples() {
        let p = parity();
        assert_eq!(residual(&p, &Word::empty()).unwrap(), p);
        let r = residual(&p, &Word::from_indices([0])).unwrap();
        assert!(run(&r, &Word::empty()).unwrap());

        let m = ends_with_a_redundant();
        for u in words_up_to(2, 2) {
            for v in words_up_to(2, 2) {
                let lhs = residual(&residual(&m, &u).unwrap(), &v).unwrap();
                assert_eq!(lhs, residual(&m, &u.concat(&v)).unwrap());
            }
        }
    }

    #[test]
    fn equiv_examples() {
        let p = parity();
        assert!(equiv(&p, &p).unwrap());
        let w = distinguishing_word(&constant(false), &constant(true)).unwrap();
        assert_eq!(w, Some(Word::empty()));
        let w = distinguishing_word(&p, &constant(false)).unwrap().unwrap();
        assert_eq!(w, Word::from_indices([0]));
        assert!(equiv(&p, &DetMachine::from_fn(Alphabet::letters(2), 1, 0, |_, _| 0, |_| true).unwrap()).is_err());
    }

    #[test]
    fn min_divides_examples() {
        let p = parity();
        let h = min_divides(&p);
        assert!(check_morphism(&h));
        assert_eq!(h.map, vec![0, 1]);

        // parity with q1 duplicated as q2
        let dup = DetMachine::from_fn(Alphabet::letters(1), 3, 0, |q, _| if q == 0 { 2 } else { 0 }, |q| q != 0).unwrap();
        let h = min_divides(&dup);
        assert!(check_morphism(&h) && h.is_surjective());
        assert_eq!(h.source.num_states(), 2);

        let dup = DetMachine::from_fn(
            Alphabet::letters(2),
            3,
            0,
            |q, a| match (q, a.0) {
                (0, 0) => 1,
                (0, _) => 2,
                _ => 0,
            },
            |q| q != 0,
        )
        .unwrap();
        let h = min_divides(&dup);
        assert!(check_morphism(&h));
        assert_eq!(h.map, vec![0, 1, 1]);

        let junk = DetMachine::from_fn(Alphabet::letters(1), 3, 0, |q, _| if q == 2 { 1 } else { 1 - q }, |q| q == 1).unwrap();
        let h = min_divides(&junk);
        assert_eq!(h.source.num_states(), 2);
        assert!(h.source.state_index("q2").is_none());
    }
}
