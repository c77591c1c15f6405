//! Finite alphabets and words over them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub usize);

/// An ordered set of symbol names, never empty.
///
/// Symbol names are identifiers: nonempty, no whitespace, and none of the
/// characters reserved by the text format (`#`, `.`, `/`). The names `_`,
/// `-` and `->` are reserved as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn check_identifier(name: &str) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty identifier".into());
    }
    if matches!(name, "_" | "-" | "->") {
        return Err(format!("`{name}` is reserved"));
    }
    if let Some(c) = name
        .chars()
        .find(|c| c.is_whitespace() || matches!(c, '#' | '.' | '/' | ':'))
    {
        return Err(format!("`{name}` contains the reserved character {c:?}"));
    }
    Ok(())
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            check_identifier(s).map_err(Error::InvalidAlphabet)?;
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// `{a, b, ...}` with single-letter names, handy in tests.
    pub fn letters(n: usize) -> Self {
        assert!((1..=26).contains(&n));
        Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(Symbol)
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s.0]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied().map(Symbol)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.0 < self.symbols.len()
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(Error::UnknownSymbol {
                symbol: s.0,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// Parses a single word token. `_` is the empty word. When every symbol
    /// name is one character long the token is split per character,
    /// otherwise symbols are separated by `.`.
    pub fn parse_word(&self, token: &str) -> Result<Word> {
        if token == "_" {
            return Ok(Word::empty());
        }
        let lookup = |name: &str| {
            self.lookup(name)
                .ok_or_else(|| Error::UnknownSymbolName(name.to_string()))
        };
        if self.single_chars() {
            let mut buf = [0u8; 4];
            token
                .chars()
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect()
        } else {
            token.split('.').map(lookup).collect()
        }
    }

    /// Inverse of [`Alphabet::parse_word`].
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "_".to_string();
        }
        let sep = if self.single_chars() { "" } else { "." };
        w.iter()
            .map(|s| self.name(*s))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbols.join(" "))
    }
}

/// A finite sequence of symbols, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Word(it.into_iter().map(Symbol).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `self` with `prefix` removed, if `prefix` is a prefix of `self`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// Longest common prefix of two words.
    pub fn common_prefix(&self, other: &Word) -> Word {
        let n = self
            .0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count();
        Word(self.0[..n].to_vec())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// All words of length at most `bound` over an alphabet of `size` symbols,
/// in length-then-lexicographic order.
pub fn words_up_to(size: usize, bound: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..bound {
        let mut next = Vec::with_capacity(layer.len() * size);
        for w in &layer {
            for a in 0..size {
                let mut v = w.clone();
                v.push(Symbol(a));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
