use std::collections::{HashMap, VecDeque};

use super::{kleisli_compose, lcp, KleisliMorphism, KleisliValue};
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::{observation_partition, Partition};
use crate::error::{Error, Result};
use crate::machine::{check_names, default_names, DetAutomaton, DetMachine, Factorize};

/// A deterministic transducer computing a partial function `A* ⇀ B*`.
///
/// `init` carries the initialization word with the initial state, `term`
/// the termination word of each state, and `trans` the production word
/// together with the successor. A production word exists exactly when the
/// successor does, since both live in one [`KleisliValue`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubseqTransducer {
    input: Alphabet,
    output: Alphabet,
    names: Vec<String>,
    init: KleisliValue<usize>,
    term: Vec<KleisliValue<()>>,
    // indexed by q * |A| + a
    trans: Vec<KleisliValue<usize>>,
}

impl SubseqTransducer {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        names: Vec<String>,
        init: KleisliValue<usize>,
        term: Vec<KleisliValue<()>>,
        trans: Vec<Vec<KleisliValue<usize>>>,
    ) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let k = input.len();
        if term.len() != n || trans.len() != n {
            return Err(Error::InvalidMachine(
                "termination and transition tables must cover every state".into(),
            ));
        }
        if trans.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidMachine(format!(
                "every state needs exactly {k} transition entries"
            )));
        }
        let trans: Vec<_> = trans.into_iter().flatten().collect();
        let targets = std::iter::once(&init).chain(&trans);
        if let Some(q) = targets.filter_map(KleisliValue::value).find(|&&q| q >= n) {
            return Err(Error::InvalidMachine(format!("state {q} out of range")));
        }
        let words = init
            .word()
            .into_iter()
            .chain(term.iter().filter_map(KleisliValue::word))
            .chain(trans.iter().filter_map(KleisliValue::word));
        for w in words {
            output.check_word(w)?;
        }
        Ok(SubseqTransducer {
            input,
            output,
            names,
            init,
            term,
            trans,
        })
    }

    /// The transducer with no states and no initial state.
    pub fn nowhere_defined(input: Alphabet, output: Alphabet) -> Self {
        SubseqTransducer {
            input,
            output,
            names: Vec::new(),
            init: KleisliValue::Bot,
            term: Vec::new(),
            trans: Vec::new(),
        }
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
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

    pub fn init(&self) -> &KleisliValue<usize> {
        &self.init
    }

    pub fn term(&self, q: usize) -> &KleisliValue<()> {
        &self.term[q]
    }

    pub fn trans(&self, q: usize, a: Symbol) -> &KleisliValue<usize> {
        &self.trans[q * self.input.len() + a.0]
    }

    /// The initial state and initialization word as a map `1 ⇸ Q`.
    pub fn init_morphism(&self) -> KleisliMorphism {
        KleisliMorphism::new(self.num_states(), vec![self.init.clone()]).expect("validated")
    }

    /// The transitions on `a` as a map `Q ⇸ Q`.
    pub fn letter_morphism(&self, a: Symbol) -> KleisliMorphism {
        let map = (0..self.num_states()).map(|q| self.trans(q, a).clone()).collect();
        KleisliMorphism::new(self.num_states(), map).expect("validated")
    }

    /// The termination function as a map `Q ⇸ 1`.
    pub fn term_morphism(&self) -> KleisliMorphism {
        let map = self
            .term
            .iter()
            .map(|t| t.bind(|_| KleisliValue::unit(0)))
            .collect();
        KleisliMorphism::new(1, map).expect("validated")
    }

    fn successors(&self, q: usize) -> impl Iterator<Item = (Symbol, &Word, usize)> + '_ {
        self.input.symbols().filter_map(move |a| {
            self.trans(q, a).as_pair().map(|(w, &r)| (a, w, r))
        })
    }

    fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        if let Some(&q0) = self.init.value() {
            seen[q0] = true;
            let mut queue = VecDeque::from([q0]);
            while let Some(q) = queue.pop_front() {
                for (_, _, r) in self.successors(q) {
                    if !seen[r] {
                        seen[r] = true;
                        queue.push_back(r);
                    }
                }
            }
        }
        seen
    }

    fn predecessors(&self) -> Vec<Vec<(usize, Symbol)>> {
        let mut preds = vec![Vec::new(); self.num_states()];
        for p in 0..self.num_states() {
            for (a, _, r) in self.successors(p) {
                preds[r].push((p, a));
            }
        }
        preds
    }

    /// States from which some termination is reachable.
    fn coreachable(&self) -> Vec<bool> {
        let preds = self.predecessors();
        let mut seen: Vec<bool> = self.term.iter().map(|t| !t.is_bot()).collect();
        let mut queue: VecDeque<usize> = (0..self.num_states()).filter(|&q| seen[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &(p, _) in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Keeps the states listed in `keep`, in that order, redirecting
    /// transitions into dropped states to `Bot`.
    fn restrict(&self, keep: &[usize], rename: bool) -> SubseqTransducer {
        let mut new_id = vec![None; self.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            new_id[q] = Some(i);
        }
        let relabel = |v: &KleisliValue<usize>| match v {
            KleisliValue::Pair(w, q) => match new_id[*q] {
                Some(i) => KleisliValue::Pair(w.clone(), i),
                None => KleisliValue::Bot,
            },
            KleisliValue::Bot => KleisliValue::Bot,
        };
        SubseqTransducer {
            input: self.input.clone(),
            output: self.output.clone(),
            names: if rename {
                default_names(keep.len())
            } else {
                keep.iter().map(|&q| self.names[q].clone()).collect()
            },
            init: relabel(&self.init),
            term: keep.iter().map(|&q| self.term[q].clone()).collect(),
            trans: keep
                .iter()
                .flat_map(|&q| self.input.symbols().map(move |a| (q, a)))
                .map(|(q, a)| relabel(self.trans(q, a)))
                .collect(),
        }
    }

    /// States in BFS discovery order from the initial state.
    fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut seen = vec![false; self.num_states()];
        if let Some(&q0) = self.init.value() {
            seen[q0] = true;
            order.push(q0);
            let mut i = 0;
            while i < order.len() {
                let q = order[i];
                i += 1;
                for (_, _, r) in self.successors(q) {
                    if !seen[r] {
                        seen[r] = true;
                        order.push(r);
                    }
                }
            }
        }
        order
    }

    /// Reachable part renumbered `q0..` in BFS order.
    pub fn canonical(&self) -> SubseqTransducer {
        self.restrict(&self.bfs_order(), true)
    }

    /// A shortest input word leading from `q` to a defined termination.
    fn shortest_completion(&self, q: usize) -> Option<Word> {
        let mut parent: HashMap<usize, Option<(usize, Symbol)>> = HashMap::from([(q, None)]);
        let mut queue = VecDeque::from([q]);
        while let Some(p) = queue.pop_front() {
            if !self.term[p].is_bot() {
                return Some(trace_back(&parent, p));
            }
            for (a, _, r) in self.successors(p) {
                parent.entry(r).or_insert_with(|| {
                    queue.push_back(r);
                    Some((p, a))
                });
            }
        }
        None
    }

    /// An input word whose output from `q` is defined and does not start
    /// with `first`.
    fn completion_avoiding(&self, q: usize, first: Symbol) -> Option<Word> {
        let avoids = |w: &Word| w.as_slice().first() != Some(&first);
        // only states reached while the output is still empty are explored
        let mut parent: HashMap<usize, Option<(usize, Symbol)>> = HashMap::from([(q, None)]);
        let mut queue = VecDeque::from([q]);
        while let Some(p) = queue.pop_front() {
            if self.term[p].word().is_some_and(avoids) {
                return Some(trace_back(&parent, p));
            }
            for (a, w, r) in self.successors(p) {
                if w.is_empty() {
                    parent.entry(r).or_insert_with(|| {
                        queue.push_back(r);
                        Some((p, a))
                    });
                } else if avoids(w) {
                    if let Some(rest) = self.shortest_completion(r) {
                        let mut prefix = trace_back(&parent, p);
                        prefix.push(a);
                        return Some(prefix.concat(&rest));
                    }
                }
            }
        }
        None
    }
}

fn trace_back(parent: &HashMap<usize, Option<(usize, Symbol)>>, mut q: usize) -> Word {
    let mut letters = Vec::new();
    while let Some(&Some((p, a))) = parent.get(&q) {
        letters.push(a);
        q = p;
    }
    letters.reverse();
    letters.into()
}

/// `⟦t⟧(w)`: the composite `term ∘ δ_{aₙ} ∘ ⋯ ∘ δ_{a₁} ∘ init` applied to
/// the unique element of `1`.
pub fn transduce(t: &SubseqTransducer, w: &Word) -> Result<KleisliValue<()>> {
    t.input.check_word(w)?;
    let mut acc = t.init_morphism();
    for &a in w {
        if acc.apply(0).is_bot() {
            break;
        }
        acc = kleisli_compose(&t.letter_morphism(a), &acc)?;
    }
    let done = kleisli_compose(&t.term_morphism(), &acc)?;
    Ok(done.apply(0).bind(|_| KleisliValue::unit(())))
}

/// `t` viewed as a deterministic machine on `B* × Q + 1`, with outputs in
/// `B* + 1`.
#[derive(Debug, Clone, Copy)]
pub struct LiftedTransducer<'a> {
    t: &'a SubseqTransducer,
}

pub fn lift_to_set(t: &SubseqTransducer) -> LiftedTransducer<'_> {
    LiftedTransducer { t }
}

impl DetAutomaton for LiftedTransducer<'_> {
    type State = KleisliValue<usize>;
    type Output = KleisliValue<()>;

    fn alphabet(&self) -> &Alphabet {
        &self.t.input
    }

    fn initial(&self) -> Self::State {
        self.t.init.clone()
    }

    fn step(&self, q: &Self::State, a: Symbol) -> Self::State {
        q.bind(|&p| self.t.trans(p, a).clone())
    }

    fn output(&self, q: &Self::State) -> Self::Output {
        q.bind(|&p| self.t.term[p].clone())
    }
}

/// The transducer with the same states as `m` whose transitions produce
/// nothing and whose termination is `m`'s output.
pub fn free_transducer(m: &DetMachine<KleisliValue<()>>, output: Alphabet) -> Result<SubseqTransducer> {
    let trans = (0..m.num_states())
        .map(|q| {
            m.alphabet()
                .symbols()
                .map(|a| KleisliValue::unit(m.succ(q, a)))
                .collect()
        })
        .collect();
    SubseqTransducer::new(
        m.alphabet().clone(),
        output,
        m.names().to_vec(),
        KleisliValue::unit(m.init()),
        m.outputs().to_vec(),
        trans,
    )
}

/// Keeps the states that are reachable and from which some termination is
/// reachable. Names and relative order are preserved.
pub fn trim(t: &SubseqTransducer) -> SubseqTransducer {
    let fwd = t.forward_reachable();
    let bwd = t.coreachable();
    let keep: Vec<usize> = (0..t.num_states()).filter(|&q| fwd[q] && bwd[q]).collect();
    t.restrict(&keep, false)
}

pub fn is_trimmed(t: &SubseqTransducer) -> bool {
    let fwd = t.forward_reachable();
    let bwd = t.coreachable();
    (0..t.num_states()).all(|q| fwd[q] && bwd[q])
}

fn require_trimmed(t: &SubseqTransducer) -> Result<()> {
    let fwd = t.forward_reachable();
    let bwd = t.coreachable();
    match (0..t.num_states()).find(|&q| !(fwd[q] && bwd[q])) {
        Some(q) => Err(Error::NotTrimmed(t.names[q].clone())),
        None => Ok(()),
    }
}

/// For every state, the longest common prefix of all outputs produced from
/// it.
///
/// Each state is seeded with the output of one shortest completion, then
/// `m(q) = lcp({term(q)} ∪ {(q*a)·m(q·a)})` is iterated. Every round can
/// only shorten the words, so the iteration stops.
pub fn maximal_outputs(t: &SubseqTransducer) -> Result<Vec<Word>> {
    require_trimmed(t)?;
    let n = t.num_states();
    let preds = t.predecessors();
    let mut seed: Vec<Option<Word>> = t.term.iter().map(|v| v.word().cloned()).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&q| seed[q].is_some()).collect();
    while let Some(q) = queue.pop_front() {
        for &(p, a) in &preds[q] {
            if seed[p].is_none() {
                let w = t.trans(p, a).word().expect("predecessor edge is defined");
                seed[p] = Some(w.concat(seed[q].as_ref().expect("seeded")));
                queue.push_back(p);
            }
        }
    }
    let mut m: Vec<Word> = seed
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Internal("trimmed state without completion".into())))
        .collect::<Result<_>>()?;

    loop {
        let mut changed = false;
        for q in 0..n {
            let candidates: Vec<Word> = t.term[q]
                .word()
                .cloned()
                .into_iter()
                .chain(t.successors(q).map(|(_, w, r)| w.concat(&m[r])))
                .collect();
            let next = lcp(candidates.iter().chain(std::iter::once(&m[q])))?;
            if next != m[q] {
                m[q] = next;
                changed = true;
            }
        }
        if !changed {
            return Ok(m);
        }
    }
}

fn strip(word: &Word, prefix: &Word, what: &str) -> Result<Word> {
    word.strip_prefix(prefix)
        .ok_or_else(|| Error::Internal(format!("{what} does not start with its state's common output")))
}

/// Pushes every state's common output prefix towards the initial state.
/// The result realizes the same function and is onward.
pub fn normalize(t: &SubseqTransducer) -> Result<SubseqTransducer> {
    let m = maximal_outputs(t)?;
    let init = match &t.init {
        KleisliValue::Bot => KleisliValue::Bot,
        KleisliValue::Pair(u0, q0) => KleisliValue::Pair(u0.concat(&m[*q0]), *q0),
    };
    let term = (0..t.num_states())
        .map(|q| match &t.term[q] {
            KleisliValue::Bot => Ok(KleisliValue::Bot),
            KleisliValue::Pair(w, ()) => Ok(KleisliValue::Pair(strip(w, &m[q], "termination")?, ())),
        })
        .collect::<Result<Vec<_>>>()?;
    let trans = (0..t.num_states())
        .map(|q| {
            t.input
                .symbols()
                .map(|a| match t.trans(q, a) {
                    KleisliValue::Bot => Ok(KleisliValue::Bot),
                    KleisliValue::Pair(w, r) => {
                        Ok(KleisliValue::Pair(strip(&w.concat(&m[*r]), &m[q], "transition")?, *r))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubseqTransducer {
        input: t.input.clone(),
        output: t.output.clone(),
        names: t.names.clone(),
        init,
        term,
        trans: trans.into_iter().flatten().collect(),
    })
}

/// Whether every state's common output prefix is empty.
pub fn is_onward(t: &SubseqTransducer) -> Result<bool> {
    Ok(maximal_outputs(t)?.iter().all(Word::is_empty))
}

/// What a state of an onward transducer shows to the outside: its
/// termination and, per letter, the production word if defined.
type LocalView = Option<(KleisliValue<()>, Vec<Option<Word>>)>;

/// The transducer as a total machine over `Q + {sink}` whose outputs are
/// the local views; undefined transitions lead to the sink.
fn local_view_machine(t: &SubseqTransducer) -> DetMachine<LocalView> {
    let n = t.num_states();
    DetMachine::from_fn(
        t.input.clone(),
        n + 1,
        t.init.value().copied().unwrap_or(n),
        |q, a| {
            if q == n {
                n
            } else {
                t.trans(q, a).value().copied().unwrap_or(n)
            }
        },
        |q| {
            (q < n).then(|| {
                let words = t.input.symbols().map(|a| t.trans(q, a).word().cloned()).collect();
                (t.term[q].clone(), words)
            })
        },
    )
    .expect("local view machine is valid")
}

/// Partition of an onward transducer's states into behavior classes.
fn merge_partition(t: &SubseqTransducer) -> Partition {
    let part = observation_partition(&local_view_machine(t));
    // the sink is alone in its block, which is the last one
    Partition::from_labels(&part.labels()[..t.num_states()])
}

fn merge(t: &SubseqTransducer) -> SubseqTransducer {
    let part = merge_partition(t);
    let relabel = |v: &KleisliValue<usize>| match v {
        KleisliValue::Pair(w, q) => KleisliValue::Pair(w.clone(), part.block_of(*q)),
        KleisliValue::Bot => KleisliValue::Bot,
    };
    let reps: Vec<usize> = part.blocks().iter().map(|b| b[0]).collect();
    SubseqTransducer {
        input: t.input.clone(),
        output: t.output.clone(),
        names: reps.iter().map(|&q| t.names[q].clone()).collect(),
        init: relabel(&t.init),
        term: reps.iter().map(|&q| t.term[q].clone()).collect(),
        trans: reps
            .iter()
            .flat_map(|&q| t.input.symbols().map(move |a| (q, a)))
            .map(|(q, a)| relabel(t.trans(q, a)))
            .collect(),
    }
}

impl Factorize for SubseqTransducer {
    fn reach(&self) -> Self {
        trim(self)
    }

    fn observe(&self) -> Self {
        let trimmed = trim(self);
        merge(&normalize(&trimmed).expect("normalizing a trimmed transducer cannot fail"))
    }

    fn canonicalize(&self) -> Self {
        self.canonical()
    }
}

/// Choffrut's minimal transducer. The trimmed machine is made onward and
/// then states with the same local behavior are merged.
pub fn choffrut_minimize(t: &SubseqTransducer) -> SubseqTransducer {
    crate::machine::minimize_by_factorization(t)
}

fn check_alphabets(t1: &SubseqTransducer, t2: &SubseqTransducer) -> Result<()> {
    if t1.input != t2.input || t1.output != t2.output {
        return Err(Error::AlphabetMismatch(format!(
            "{{{}}} → {{{}}} vs {{{}}} → {{{}}}",
            t1.input, t1.output, t2.input, t2.output
        )));
    }
    Ok(())
}

/// Builds a witness once the two sides have produced different outputs
/// `o1 ≠ o2` after `prefix` and sit in onward states `r1`, `r2`.
fn lag_witness(
    n1: &SubseqTransducer,
    n2: &SubseqTransducer,
    prefix: Word,
    (o1, r1): (&Word, usize),
    (o2, r2): (&Word, usize),
) -> Result<Word> {
    let suffix = if o1.is_prefix_of(o2) {
        let ahead = o2.as_slice()[o1.len()];
        n1.completion_avoiding(r1, ahead)
    } else if o2.is_prefix_of(o1) {
        let ahead = o1.as_slice()[o2.len()];
        n2.completion_avoiding(r2, ahead)
    } else {
        n1.shortest_completion(r1)
    };
    suffix
        .map(|s| prefix.concat(&s))
        .ok_or_else(|| Error::Internal("onward state has a common output prefix".into()))
}

/// An input word on which `t1` and `t2` differ, or `None` if they realize
/// the same partial function.
///
/// Both sides are trimmed and made onward first. Equivalent onward
/// transducers produce identical words edge by edge from matched states,
/// so the product search only has to track the lag between the two
/// outputs until it becomes nonzero, at which point a witness is built.
pub fn transducer_distinguishing_word(
    t1: &SubseqTransducer,
    t2: &SubseqTransducer,
) -> Result<Option<Word>> {
    check_alphabets(t1, t2)?;
    let n1 = normalize(&trim(t1))?;
    let n2 = normalize(&trim(t2))?;
    let complete = |n: &SubseqTransducer, p: Word, q: usize| -> Result<Word> {
        n.shortest_completion(q)
            .map(|s| p.concat(&s))
            .ok_or_else(|| Error::Internal("trimmed state without completion".into()))
    };
    let (q1, q2) = match (&n1.init, &n2.init) {
        (KleisliValue::Bot, KleisliValue::Bot) => return Ok(None),
        (KleisliValue::Pair(_, q), KleisliValue::Bot) => return complete(&n1, Word::empty(), *q).map(Some),
        (KleisliValue::Bot, KleisliValue::Pair(_, q)) => return complete(&n2, Word::empty(), *q).map(Some),
        (KleisliValue::Pair(u1, q1), KleisliValue::Pair(u2, q2)) => {
            if u1 != u2 {
                return lag_witness(&n1, &n2, Word::empty(), (u1, *q1), (u2, *q2)).map(Some);
            }
            (*q1, *q2)
        }
    };

    let mut prefix_of: HashMap<(usize, usize), Word> = HashMap::from([((q1, q2), Word::empty())]);
    let mut queue = VecDeque::from([(q1, q2)]);
    while let Some((r1, r2)) = queue.pop_front() {
        let p = prefix_of[&(r1, r2)].clone();
        if n1.term[r1] != n2.term[r2] {
            return Ok(Some(p));
        }
        for a in n1.input.symbols() {
            let mut pa = p.clone();
            pa.push(a);
            match (n1.trans(r1, a), n2.trans(r2, a)) {
                (KleisliValue::Bot, KleisliValue::Bot) => {}
                (KleisliValue::Pair(_, s), KleisliValue::Bot) => return complete(&n1, pa, *s).map(Some),
                (KleisliValue::Bot, KleisliValue::Pair(_, s)) => return complete(&n2, pa, *s).map(Some),
                (KleisliValue::Pair(w1, s1), KleisliValue::Pair(w2, s2)) => {
                    if w1 != w2 {
                        return lag_witness(&n1, &n2, pa, (w1, *s1), (w2, *s2)).map(Some);
                    }
                    prefix_of.entry((*s1, *s2)).or_insert_with(|| {
                        queue.push_back((*s1, *s2));
                        pa
                    });
                }
            }
        }
    }
    Ok(None)
}

/// Whether `t1` and `t2` realize the same partial function.
pub fn transducer_equiv(t1: &SubseqTransducer, t2: &SubseqTransducer) -> Result<bool> {
    Ok(transducer_distinguishing_word(t1, t2)?.is_none())
}

/// Follows both transducers in lockstep from their initial states and
/// returns the induced state map `source → target`, provided initial words,
/// terminations and production words agree everywhere on the way. States
/// of `source` not reachable from its initial state map to `None`.
pub fn class_map(source: &SubseqTransducer, target: &SubseqTransducer) -> Option<Vec<Option<usize>>> {
    if source.input != target.input || source.output != target.output {
        return None;
    }
    let mut map = vec![None; source.num_states()];
    let (p0, q0) = match (&source.init, &target.init) {
        (KleisliValue::Bot, KleisliValue::Bot) => return Some(map),
        (KleisliValue::Pair(u, p), KleisliValue::Pair(v, q)) if u == v => (*p, *q),
        _ => return None,
    };
    map[p0] = Some(q0);
    let mut queue = VecDeque::from([p0]);
    while let Some(p) = queue.pop_front() {
        let q = map[p].expect("queued states are mapped");
        if source.term[p] != target.term[q] {
            return None;
        }
        for a in source.input.symbols() {
            match (source.trans(p, a), target.trans(q, a)) {
                (KleisliValue::Bot, KleisliValue::Bot) => {}
                (KleisliValue::Pair(w1, s1), KleisliValue::Pair(w2, s2)) if w1 == w2 => match map[*s1] {
                    Some(existing) if existing != *s2 => return None,
                    Some(_) => {}
                    None => {
                        map[*s1] = Some(*s2);
                        queue.push_back(*s1);
                    }
                },
                _ => return None,
            }
        }
    }
    Some(map)
}

/// A structure-preserving bijection between two transducers whose states
/// are all reachable.
pub fn transducer_isomorphic(t1: &SubseqTransducer, t2: &SubseqTransducer) -> Option<Vec<usize>> {
    if t1.num_states() != t2.num_states() {
        return None;
    }
    let forward = class_map(t1, t2)?;
    let backward = class_map(t2, t1)?;
    let map: Vec<usize> = forward.into_iter().collect::<Option<_>>()?;
    let inverse: Vec<usize> = backward.into_iter().collect::<Option<_>>()?;
    map.iter()
        .enumerate()
        .all(|(p, &q)| inverse[q] == p)
        .then_some(map)
}

/// A state map between transducers that should commute with the
/// initialization, every transition and the termination, with no output
/// words of its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransducerMorphism {
    pub source: SubseqTransducer,
    pub target: SubseqTransducer,
    pub map: Vec<usize>,
}

impl TransducerMorphism {
    pub fn is_valid(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if s.input != t.input || s.output != t.output || self.map.len() != s.num_states() {
            return false;
        }
        if self.map.iter().any(|&q| q >= t.num_states()) {
            return false;
        }
        let push = |v: &KleisliValue<usize>| match v {
            KleisliValue::Pair(w, q) => KleisliValue::Pair(w.clone(), self.map[*q]),
            KleisliValue::Bot => KleisliValue::Bot,
        };
        push(&s.init) == t.init
            && (0..s.num_states()).all(|q| {
                let image = self.map[q];
                s.term[q] == t.term[image]
                    && s.input.symbols().all(|a| push(s.trans(q, a)) == *t.trans(image, a))
            })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.num_states()];
        for &q in &self.map {
            if let Some(h) = hit.get_mut(q) {
                *h = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}
