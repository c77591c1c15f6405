//! The line-based machine file format.
//!
//! ```text
//! kind: subseq          # dfa | nfa | subseq
//! input: a b
//! output: x y           # subseq only
//! states: q0 q1
//! init: q0 / x          # dfa: one state; nfa: any number; subseq: `q / word` or `-`
//! final: q1 / _         # dfa/nfa: one line of states; subseq: one `q / word` line per state
//! q0 a -> y q1          # subseq: production word then successor
//! q1 b -> _ q0
//! ```
//!
//! `#` starts a comment and `_` is the empty word. Output words are written
//! as one token (see [`Alphabet::parse_word`]). [`print`] emits the
//! canonical form: header lines in the order above, then transitions sorted
//! by state and symbol in declaration order, LF line endings.

use std::collections::HashMap;
use std::fmt::Write;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::kleisli::{KleisliValue, SubseqTransducer};
use crate::machine::DetMachine;
use crate::nfa::Nfa;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMachine {
    Dfa(Dfa),
    Nfa(Nfa),
    Subseq(SubseqTransducer),
}

impl AnyMachine {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyMachine::Dfa(_) => "dfa",
            AnyMachine::Nfa(_) => "nfa",
            AnyMachine::Subseq(_) => "subseq",
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            AnyMachine::Dfa(m) => m.num_states(),
            AnyMachine::Nfa(m) => m.num_states(),
            AnyMachine::Subseq(m) => m.num_states(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Dfa,
    Nfa,
    Subseq,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Header<'a> {
    line: usize,
    values: Vec<&'a str>,
}

struct Transition<'a> {
    line: usize,
    lhs: Vec<&'a str>,
    rhs: Vec<&'a str>,
}

#[derive(Default)]
struct Raw<'a> {
    input: Option<Header<'a>>,
    output: Option<Header<'a>>,
    states: Option<Header<'a>>,
    init: Option<Header<'a>>,
    finals: Vec<Header<'a>>,
    transitions: Vec<Transition<'a>>,
    last_line: usize,
}

struct Context {
    input: Alphabet,
    states: HashMap<String, usize>,
    names: Vec<String>,
    states_line: usize,
}

impl Context {
    fn state(&self, name: &str, line: usize) -> Result<usize> {
        self.states
            .get(name)
            .copied()
            .ok_or_else(|| err(line, format!("undeclared state {name}")))
    }

    fn symbol(&self, name: &str, line: usize) -> Result<Symbol> {
        self.input
            .lookup(name)
            .ok_or_else(|| err(line, format!("undeclared symbol {name}")))
    }
}

fn split_lines(text: &str) -> Result<(Kind, Raw<'_>)> {
    let mut kind = None;
    let mut raw = Raw::default();
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        raw.last_line = number;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((lhs, rhs)) = line.split_once("->") {
            if kind.is_none() {
                return Err(err(number, "expected `kind:` before any transition"));
            }
            raw.transitions.push(Transition {
                line: number,
                lhs: lhs.split_whitespace().collect(),
                rhs: rhs.split_whitespace().collect(),
            });
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err(number, format!("expected `key: values` or a transition, found `{line}`")))?;
        let header = Header {
            line: number,
            values: rest.split_whitespace().collect(),
        };
        let key = key.trim();
        if key == "kind" {
            if kind.is_some() {
                return Err(err(number, "duplicate `kind:` declaration"));
            }
            kind = Some(match header.values.as_slice() {
                ["dfa"] => Kind::Dfa,
                ["nfa"] => Kind::Nfa,
                ["subseq"] => Kind::Subseq,
                other => return Err(err(number, format!("unknown kind `{}`", other.join(" ")))),
            });
            continue;
        }
        let Some(k) = kind else {
            return Err(err(number, "expected `kind:` as the first declaration"));
        };
        let slot = match key {
            "input" => &mut raw.input,
            "output" if k == Kind::Subseq => &mut raw.output,
            "output" => return Err(err(number, "`output:` is only valid for subseq machines")),
            "states" => &mut raw.states,
            "init" => &mut raw.init,
            "final" if k == Kind::Subseq => {
                raw.finals.push(header);
                continue;
            }
            "final" if !raw.finals.is_empty() => {
                return Err(err(number, "duplicate `final:` declaration"));
            }
            "final" => {
                raw.finals.push(header);
                continue;
            }
            other => return Err(err(number, format!("unknown declaration `{other}:`"))),
        };
        if slot.is_some() {
            return Err(err(number, format!("duplicate `{key}:` declaration")));
        }
        *slot = Some(header);
    }
    let kind = kind.ok_or_else(|| err(raw.last_line.max(1), "missing `kind:` declaration"))?;
    Ok((kind, raw))
}

fn required<'a, 'b>(h: &'b Option<Header<'a>>, key: &str, last: usize) -> Result<&'b Header<'a>> {
    h.as_ref()
        .ok_or_else(|| err(last.max(1), format!("missing `{key}:` declaration")))
}

fn alphabet(h: &Header<'_>) -> Result<Alphabet> {
    Alphabet::new(h.values.iter().copied()).map_err(|e| err(h.line, e.to_string()))
}

fn context(raw: &Raw<'_>) -> Result<Context> {
    let input = alphabet(required(&raw.input, "input", raw.last_line)?)?;
    let states = required(&raw.states, "states", raw.last_line)?;
    let names: Vec<String> = states.values.iter().map(|s| s.to_string()).collect();
    crate::machine::check_names(&names).map_err(|e| err(states.line, e.to_string()))?;
    Ok(Context {
        input,
        states: names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect(),
        names,
        states_line: states.line,
    })
}

fn simple_transition(ctx: &Context, t: &Transition<'_>) -> Result<(usize, Symbol, usize)> {
    match (t.lhs.as_slice(), t.rhs.as_slice()) {
        ([p, a], [q]) => Ok((ctx.state(p, t.line)?, ctx.symbol(a, t.line)?, ctx.state(q, t.line)?)),
        _ => Err(err(t.line, "expected `state symbol -> state`")),
    }
}

fn parse_dfa(raw: &Raw<'_>) -> Result<Dfa> {
    let ctx = context(raw)?;
    let init_h = required(&raw.init, "init", raw.last_line)?;
    let init = match init_h.values.as_slice() {
        [q] => ctx.state(q, init_h.line)?,
        _ => return Err(err(init_h.line, "a dfa has exactly one initial state")),
    };
    let mut out = vec![false; ctx.names.len()];
    for h in &raw.finals {
        for q in &h.values {
            out[ctx.state(q, h.line)?] = true;
        }
    }
    let k = ctx.input.len();
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; k]; ctx.names.len()];
    for t in &raw.transitions {
        let (p, a, q) = simple_transition(&ctx, t)?;
        if delta[p][a.0].replace(q).is_some() {
            return Err(err(
                t.line,
                format!("duplicate transition for ({}, {})", ctx.names[p], ctx.input.name(a)),
            ));
        }
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(p, row)| {
            row.into_iter()
                .enumerate()
                .map(|(a, q)| {
                    q.ok_or_else(|| {
                        err(
                            ctx.states_line,
                            format!("missing transition for ({}, {})", ctx.names[p], ctx.input.name(Symbol(a))),
                        )
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DetMachine::new(ctx.input, ctx.names, init, delta, out).map_err(|e| err(ctx.states_line, e.to_string()))
}

fn parse_nfa(raw: &Raw<'_>) -> Result<Nfa> {
    let ctx = context(raw)?;
    let init_h = required(&raw.init, "init", raw.last_line)?;
    let init = init_h
        .values
        .iter()
        .map(|q| ctx.state(q, init_h.line))
        .collect::<Result<Vec<_>>>()?;
    let mut finals = Vec::new();
    for h in &raw.finals {
        for q in &h.values {
            finals.push(ctx.state(q, h.line)?);
        }
    }
    let transitions = raw
        .transitions
        .iter()
        .map(|t| simple_transition(&ctx, t))
        .collect::<Result<Vec<_>>>()?;
    Nfa::new(ctx.input, ctx.names, init, finals, transitions).map_err(|e| err(ctx.states_line, e.to_string()))
}

fn parse_subseq(raw: &Raw<'_>) -> Result<SubseqTransducer> {
    let ctx = context(raw)?;
    let output = alphabet(required(&raw.output, "output", raw.last_line)?)?;
    let word = |token: &str, line: usize| {
        output
            .parse_word(token)
            .map_err(|e| err(line, format!("bad output word `{token}`: {e}")))
    };
    // `q / w`, or just `q` for an empty word
    let state_word = |values: &[&str], line: usize| -> Result<(usize, Word)> {
        match values {
            [q] => Ok((ctx.state(q, line)?, Word::empty())),
            [q, "/", w] => Ok((ctx.state(q, line)?, word(w, line)?)),
            _ => Err(err(line, "expected `state / word`")),
        }
    };
    let init_h = required(&raw.init, "init", raw.last_line)?;
    let init = match init_h.values.as_slice() {
        ["-"] => KleisliValue::Bot,
        values => {
            let (q, w) = state_word(values, init_h.line)?;
            KleisliValue::Pair(w, q)
        }
    };
    let n = ctx.names.len();
    let mut term = vec![KleisliValue::Bot; n];
    for h in &raw.finals {
        let (q, w) = state_word(&h.values, h.line)?;
        if !term[q].is_bot() {
            return Err(err(h.line, format!("duplicate termination for {}", ctx.names[q])));
        }
        term[q] = KleisliValue::Pair(w, ());
    }
    let mut trans = vec![vec![KleisliValue::Bot; ctx.input.len()]; n];
    for t in &raw.transitions {
        let (p, a) = match t.lhs.as_slice() {
            [p, a] => (ctx.state(p, t.line)?, ctx.symbol(a, t.line)?),
            _ => return Err(err(t.line, "expected `state symbol -> word state`")),
        };
        let (w, q) = match t.rhs.as_slice() {
            [w, q] => (word(w, t.line)?, ctx.state(q, t.line)?),
            _ => {
                return Err(err(
                    t.line,
                    "a transducer transition needs both a production word and a successor (write `_` for the empty word)",
                ))
            }
        };
        if !trans[p][a.0].is_bot() {
            return Err(err(
                t.line,
                format!("duplicate transition for ({}, {})", ctx.names[p], ctx.input.name(a)),
            ));
        }
        trans[p][a.0] = KleisliValue::Pair(w, q);
    }
    SubseqTransducer::new(ctx.input, output, ctx.names, init, term, trans)
        .map_err(|e| err(ctx.states_line, e.to_string()))
}

/// Parses one machine file.
pub fn parse(text: &str) -> Result<AnyMachine> {
    let (kind, raw) = split_lines(text)?;
    Ok(match kind {
        Kind::Dfa => AnyMachine::Dfa(parse_dfa(&raw)?),
        Kind::Nfa => AnyMachine::Nfa(parse_nfa(&raw)?),
        Kind::Subseq => AnyMachine::Subseq(parse_subseq(&raw)?),
    })
}

fn line(out: &mut String, key: &str, values: &[&str]) {
    out.push_str(key);
    out.push(':');
    for v in values {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
}

fn names(all: &[String], pick: impl IntoIterator<Item = usize>) -> Vec<&str> {
    pick.into_iter().map(|q| all[q].as_str()).collect()
}

pub fn print_dfa(m: &Dfa) -> String {
    let mut out = String::new();
    line(&mut out, "kind", &["dfa"]);
    line(&mut out, "input", &m.alphabet().names().iter().map(String::as_str).collect::<Vec<_>>());
    line(&mut out, "states", &names(m.names(), 0..m.num_states()));
    line(&mut out, "init", &[m.name(m.init())]);
    line(&mut out, "final", &names(m.names(), (0..m.num_states()).filter(|&q| *m.out(q))));
    for q in 0..m.num_states() {
        for a in m.alphabet().symbols() {
            writeln!(out, "{} {} -> {}", m.name(q), m.alphabet().name(a), m.name(m.succ(q, a))).unwrap();
        }
    }
    out
}

pub fn print_nfa(n: &Nfa) -> String {
    let mut out = String::new();
    line(&mut out, "kind", &["nfa"]);
    line(&mut out, "input", &n.alphabet().names().iter().map(String::as_str).collect::<Vec<_>>());
    line(&mut out, "states", &names(n.names(), 0..n.num_states()));
    line(&mut out, "init", &names(n.names(), n.init().iter().copied()));
    line(&mut out, "final", &names(n.names(), n.finals().iter().copied()));
    for (p, a, q) in n.transitions() {
        writeln!(out, "{} {} -> {}", n.name(p), n.alphabet().name(a), n.name(q)).unwrap();
    }
    out
}

pub fn print_subseq(t: &SubseqTransducer) -> String {
    let mut out = String::new();
    let word = |w: &Word| t.output().format_word(w);
    line(&mut out, "kind", &["subseq"]);
    line(&mut out, "input", &t.input().names().iter().map(String::as_str).collect::<Vec<_>>());
    line(&mut out, "output", &t.output().names().iter().map(String::as_str).collect::<Vec<_>>());
    line(&mut out, "states", &names(t.names(), 0..t.num_states()));
    match t.init().as_pair() {
        Some((u, &q)) => line(&mut out, "init", &[t.name(q), "/", &word(u)]),
        None => line(&mut out, "init", &["-"]),
    }
    for q in 0..t.num_states() {
        if let Some(w) = t.term(q).word() {
            line(&mut out, "final", &[t.name(q), "/", &word(w)]);
        }
    }
    for q in 0..t.num_states() {
        for a in t.input().symbols() {
            if let Some((w, &r)) = t.trans(q, a).as_pair() {
                writeln!(out, "{} {} -> {} {}", t.name(q), t.input().name(a), word(w), t.name(r)).unwrap();
            }
        }
    }
    out
}

/// Canonical text of a machine.
pub fn print(m: &AnyMachine) -> String {
    match m {
        AnyMachine::Dfa(m) => print_dfa(m),
        AnyMachine::Nfa(n) => print_nfa(n),
        AnyMachine::Subseq(t) => print_subseq(t),
    }
}
