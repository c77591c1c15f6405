use std::collections::BTreeMap;

use super::KleisliValue;
use crate::alphabet::Word;
use crate::error::{Error, Result};

/// Longest common prefix of a nonempty collection of words.
pub fn lcp<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Result<Word> {
    let mut it = words.into_iter();
    let first = it.next().ok_or(Error::EmptyLcp)?.clone();
    Ok(it.fold(first, |acc, w| acc.common_prefix(w)))
}

/// A finite window of a partial function from input words to output words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BehaviorTable {
    entries: BTreeMap<Word, KleisliValue<()>>,
}

impl BehaviorTable {
    pub fn new(entries: impl IntoIterator<Item = (Word, KleisliValue<()>)>) -> Self {
        BehaviorTable {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn get(&self, u: &Word) -> Option<&KleisliValue<()>> {
        self.entries.get(u)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &KleisliValue<()>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn defined_outputs(&self) -> impl Iterator<Item = &Word> {
        self.entries.values().filter_map(KleisliValue::word)
    }

    pub fn is_nowhere_defined(&self) -> bool {
        self.defined_outputs().next().is_none()
    }

    pub fn lcp(&self) -> Result<Word> {
        lcp(self.defined_outputs()).map_err(|_| Error::NowhereDefined)
    }

    pub fn is_irreducible(&self) -> bool {
        self.lcp().is_ok_and(|p| p.is_empty())
    }
}

/// `v ⋆ K`: `v` prepended to every defined entry.
pub fn pstar(v: &Word, table: &BehaviorTable) -> BehaviorTable {
    BehaviorTable {
        entries: table
            .entries
            .iter()
            .map(|(u, k)| (u.clone(), k.prepend(v)))
            .collect(),
    }
}

/// `(lcp K, red K)`: the common prefix and the table with it stripped.
pub fn reduce(table: &BehaviorTable) -> Result<(Word, BehaviorTable)> {
    let prefix = table.lcp()?;
    let entries = table
        .entries
        .iter()
        .map(|(u, k)| {
            let stripped = match k {
                KleisliValue::Bot => KleisliValue::Bot,
                KleisliValue::Pair(w, ()) => KleisliValue::Pair(
                    w.strip_prefix(&prefix)
                        .ok_or_else(|| Error::Internal("lcp is not a common prefix".into()))?,
                    (),
                ),
            };
            Ok((u.clone(), stripped))
        })
        .collect::<Result<_>>()?;
    Ok((prefix, BehaviorTable { entries }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn b(s: &str) -> Word {
        Alphabet::letters(4).parse_word(s).unwrap()
    }

    fn out(s: &str) -> KleisliValue<()> {
        KleisliValue::Pair(b(s), ())
    }

    #[test]
    fn lcp_examples() {
        assert_eq!(lcp([&b("abc"), &b("abd")]).unwrap(), b("ab"));
        assert_eq!(lcp([&b("d")]).unwrap(), b("d"));
        assert_eq!(lcp([&b("ab"), &b("_")]).unwrap(), Word::empty());
        assert_eq!(lcp(std::iter::empty::<&Word>()), Err(Error::EmptyLcp));
    }

    #[test]
    fn pstar_examples() {
        let k = BehaviorTable::new([(b("_"), out("b")), (b("a"), KleisliValue::Bot)]);
        assert_eq!(pstar(&Word::empty(), &k), k);
        let shifted = pstar(&b("c"), &k);
        assert_eq!(shifted.get(&b("_")), Some(&out("cb")));
        assert_eq!(shifted.get(&b("a")), Some(&KleisliValue::Bot));
        assert!(b("c").is_prefix_of(&shifted.lcp().unwrap()));
    }

    #[test]
    fn reduce_examples() {
        let k = BehaviorTable::new([(b("_"), out("ab")), (b("a"), out("abc"))]);
        let (p, red) = reduce(&k).unwrap();
        assert_eq!(p, b("ab"));
        assert_eq!(red, BehaviorTable::new([(b("_"), out("_")), (b("a"), out("c"))]));
        assert!(red.is_irreducible());

        let irr = BehaviorTable::new([(b("_"), out("a")), (b("a"), out("b"))]);
        assert_eq!(reduce(&irr).unwrap(), (Word::empty(), irr.clone()));

        let nowhere = BehaviorTable::new([(b("_"), KleisliValue::Bot)]);
        assert_eq!(reduce(&nowhere), Err(Error::NowhereDefined));
    }
}
