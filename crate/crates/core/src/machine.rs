//! The deterministic machine shape shared by every instance: an initial
//! state, one total step function per letter, and an output map.

use std::collections::VecDeque;
use std::hash::Hash;

use crate::alphabet::{check_identifier, Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// A deterministic machine presented by its init/step/output maps.
///
/// The state type may be infinite (see
/// [`lift_to_set`](crate::kleisli::lift_to_set)); finite machines are
/// [`DetMachine`]s.
pub trait DetAutomaton {
    type State: Clone;
    type Output;

    fn alphabet(&self) -> &Alphabet;
    fn initial(&self) -> Self::State;
    fn step(&self, q: &Self::State, a: Symbol) -> Self::State;
    fn output(&self, q: &Self::State) -> Self::Output;
}

/// Folds `step` over `w` starting from `q`.
pub fn run_from<M: DetAutomaton + ?Sized>(m: &M, q: M::State, w: &Word) -> Result<M::State> {
    m.alphabet().check_word(w)?;
    Ok(w.iter().fold(q, |q, a| m.step(&q, *a)))
}

/// The output of `m` after reading `w` from its initial state.
pub fn run<M: DetAutomaton + ?Sized>(m: &M, w: &Word) -> Result<M::Output> {
    let q = run_from(m, m.initial(), w)?;
    Ok(m.output(&q))
}

/// A finite, total deterministic machine with outputs in `O`.
///
/// States are the indices `0..num_states()`, each carrying a display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetMachine<O> {
    alphabet: Alphabet,
    names: Vec<String>,
    init: usize,
    // successor of state q on symbol a lives at q * |A| + a
    delta: Vec<usize>,
    out: Vec<O>,
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

pub(crate) fn check_names(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        check_identifier(n).map_err(|e| Error::InvalidMachine(format!("state name: {e}")))?;
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidMachine(format!("duplicate state `{n}`")));
        }
    }
    Ok(())
}

impl<O> DetMachine<O> {
    /// Builds a machine from a successor table (`delta[q][a]`) and outputs.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        init: usize,
        delta: Vec<Vec<usize>>,
        out: Vec<O>,
    ) -> Result<Self> {
        let n = names.len();
        check_names(&names)?;
        if n == 0 {
            return Err(Error::InvalidMachine("a deterministic machine needs a state".into()));
        }
        if init >= n {
            return Err(Error::InvalidMachine(format!("initial state {init} out of range")));
        }
        if delta.len() != n || out.len() != n {
            return Err(Error::InvalidMachine(
                "transition table and outputs must cover every state".into(),
            ));
        }
        let k = alphabet.len();
        let mut flat = Vec::with_capacity(n * k);
        for (q, row) in delta.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidMachine(format!(
                    "state `{}` has {} transitions, expected {k}",
                    names[q],
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidMachine(format!("successor {bad} out of range")));
            }
            flat.extend_from_slice(row);
        }
        Ok(DetMachine {
            alphabet,
            names,
            init,
            delta: flat,
            out,
        })
    }

    /// Builds an `n`-state machine named `q0..` from closures.
    pub fn from_fn(
        alphabet: Alphabet,
        n: usize,
        init: usize,
        step: impl Fn(usize, Symbol) -> usize,
        out: impl Fn(usize) -> O,
    ) -> Result<Self> {
        let delta = (0..n)
            .map(|q| alphabet.symbols().map(|a| step(q, a)).collect())
            .collect();
        let outs = (0..n).map(out).collect();
        DetMachine::new(alphabet.clone(), default_names(n), init, delta, outs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn succ(&self, q: usize, a: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + a.0]
    }

    pub fn out(&self, q: usize) -> &O {
        &self.out[q]
    }

    pub fn outputs(&self) -> &[O] {
        &self.out
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same machine started from `q`.
    pub fn with_init(&self, q: usize) -> Self
    where
        O: Clone,
    {
        assert!(q < self.num_states());
        DetMachine {
            init: q,
            ..self.clone()
        }
    }

    /// Same transition structure with outputs mapped through `f`.
    pub fn map_outputs<P>(&self, f: impl Fn(&O) -> P) -> DetMachine<P> {
        DetMachine {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            init: self.init,
            delta: self.delta.clone(),
            out: self.out.iter().map(f).collect(),
        }
    }

    /// States in breadth-first discovery order from `init`, exploring
    /// symbols in alphabet order.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.init];
        seen[self.init] = true;
        let mut queue = VecDeque::from([self.init]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let r = self.succ(q, a);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                    queue.push_back(r);
                }
            }
        }
        order
    }

    /// Restriction to `keep` (listed in the order the result should use).
    /// Every successor of a kept state must be kept.
    pub(crate) fn restrict(&self, keep: &[usize], rename: bool) -> Self
    where
        O: Clone,
    {
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            new_id[q] = i;
        }
        let k = self.alphabet.len();
        let mut delta = Vec::with_capacity(keep.len() * k);
        for &q in keep {
            for a in self.alphabet.symbols() {
                let r = new_id[self.succ(q, a)];
                debug_assert!(r != usize::MAX, "restriction is not closed");
                delta.push(r);
            }
        }
        DetMachine {
            alphabet: self.alphabet.clone(),
            names: if rename {
                default_names(keep.len())
            } else {
                keep.iter().map(|&q| self.names[q].clone()).collect()
            },
            init: new_id[self.init],
            delta,
            out: keep.iter().map(|&q| self.out[q].clone()).collect(),
        }
    }

    /// Reachable part renumbered `q0..` in BFS discovery order.
    pub fn canonical(&self) -> Self
    where
        O: Clone,
    {
        self.restrict(&self.bfs_order(), true)
    }
}

impl<O: Clone> DetAutomaton for DetMachine<O> {
    type State = usize;
    type Output = O;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> usize {
        self.init
    }

    fn step(&self, q: &usize, a: Symbol) -> usize {
        self.succ(*q, a)
    }

    fn output(&self, q: &usize) -> O {
        self.out[*q].clone()
    }
}

/// A candidate machine morphism: a state map between two machines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineMorphism<O> {
    pub source: DetMachine<O>,
    pub target: DetMachine<O>,
    pub map: Vec<usize>,
}

impl<O: PartialEq> MachineMorphism<O> {
    /// Whether `map` preserves the initial state, every transition and
    /// every output. Checked exhaustively over states × symbols.
    pub fn is_valid(&self) -> bool {
        check_morphism(self)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.num_states()];
        for &t in &self.map {
            if let Some(h) = hit.get_mut(t) {
                *h = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

pub fn check_morphism<O: PartialEq>(h: &MachineMorphism<O>) -> bool {
    let (s, t) = (&h.source, &h.target);
    if s.alphabet != t.alphabet || h.map.len() != s.num_states() {
        return false;
    }
    if h.map.iter().any(|&q| q >= t.num_states()) {
        return false;
    }
    if h.map[s.init] != t.init {
        return false;
    }
    (0..s.num_states()).all(|q| {
        let image = h.map[q];
        t.out(image) == s.out(q)
            && s.alphabet.symbols().all(|a| h.map[s.succ(q, a)] == t.succ(image, a))
    })
}

/// Extends `map`/`inverse` by synchronized BFS from the pair `(p, q)`.
/// Returns false (leaving partial assignments behind) on any clash.
fn sync_bfs<O: PartialEq>(
    m1: &DetMachine<O>,
    m2: &DetMachine<O>,
    p: usize,
    q: usize,
    map: &mut [Option<usize>],
    inverse: &mut [Option<usize>],
) -> bool {
    let mut queue = VecDeque::new();
    let mut bind = |x: usize, y: usize, queue: &mut VecDeque<(usize, usize)>| -> bool {
        match (map[x], inverse[y]) {
            (Some(y0), Some(x0)) => y0 == y && x0 == x,
            (None, None) if m1.out(x) == m2.out(y) => {
                map[x] = Some(y);
                inverse[y] = Some(x);
                queue.push_back((x, y));
                true
            }
            _ => false,
        }
    };
    if !bind(p, q, &mut queue) {
        return false;
    }
    while let Some((x, y)) = queue.pop_front() {
        for a in m1.alphabet.symbols() {
            if !bind(m1.succ(x, a), m2.succ(y, a), &mut queue) {
                return false;
            }
        }
    }
    true
}

/// A bijection `m1 → m2` that is a machine morphism, if one exists.
///
/// On the reachable parts the bijection is forced and found by one
/// synchronized BFS. Unreachable states of `m1` are then matched in
/// declaration order against the first still-free state of `m2` that
/// extends the partial bijection consistently.
pub fn isomorphic<O: PartialEq>(m1: &DetMachine<O>, m2: &DetMachine<O>) -> Option<Vec<usize>> {
    if m1.alphabet != m2.alphabet || m1.num_states() != m2.num_states() {
        return None;
    }
    let n = m1.num_states();
    let mut map = vec![None; n];
    let mut inverse = vec![None; n];
    if !sync_bfs(m1, m2, m1.init, m2.init, &mut map, &mut inverse) {
        return None;
    }
    for x in 0..n {
        if map[x].is_some() {
            continue;
        }
        let mut matched = false;
        for y in (0..n).filter(|&y| inverse[y].is_none()) {
            let (mut m_try, mut i_try) = (map.clone(), inverse.clone());
            if sync_bfs(m1, m2, x, y, &mut m_try, &mut i_try) {
                map = m_try;
                inverse = i_try;
                matched = true;
                break;
            }
        }
        if !matched {
            return None;
        }
    }
    Some(map.into_iter().map(|y| y.expect("total")).collect())
}

/// Minimization as the observable quotient of the reachable part.
///
/// Each machine family supplies its own `Reach`, `Obs` and canonical
/// renumbering; [`minimize_by_factorization`] composes them.
pub trait Factorize: Sized {
    /// The sub-machine of states reachable from the initial state.
    fn reach(&self) -> Self;
    /// The quotient identifying observationally equivalent states.
    fn observe(&self) -> Self;
    /// A renumbering fixed by the machine's behavior alone.
    fn canonicalize(&self) -> Self;
}

pub fn minimize_by_factorization<M: Factorize>(m: &M) -> M {
    m.reach().observe().canonicalize()
}

/// Minimization with the factors applied in the opposite order.
pub fn minimize_observe_first<M: Factorize>(m: &M) -> M {
    m.observe().reach().canonicalize()
}

impl<O: Clone + Eq + Hash> Factorize for DetMachine<O> {
    fn reach(&self) -> Self {
        crate::dfa::reach(self)
    }

    fn observe(&self) -> Self {
        crate::dfa::obs(self).0
    }

    fn canonicalize(&self) -> Self {
        self.canonical()
    }
}
