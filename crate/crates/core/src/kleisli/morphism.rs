use crate::alphabet::Word;
use crate::error::{Error, Result};

/// An element of `B* × X + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KleisliValue<X> {
    Bot,
    Pair(Word, X),
}

impl<X> KleisliValue<X> {
    /// The monad unit `x ↦ (ε, x)`.
    pub fn unit(x: X) -> Self {
        KleisliValue::Pair(Word::empty(), x)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, KleisliValue::Bot)
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            KleisliValue::Pair(w, _) => Some(w),
            KleisliValue::Bot => None,
        }
    }

    pub fn value(&self) -> Option<&X> {
        match self {
            KleisliValue::Pair(_, x) => Some(x),
            KleisliValue::Bot => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Word, &X)> {
        match self {
            KleisliValue::Pair(w, x) => Some((w, x)),
            KleisliValue::Bot => None,
        }
    }

    /// Kleisli extension: the word already produced is kept as a prefix.
    pub fn bind<Y>(&self, f: impl FnOnce(&X) -> KleisliValue<Y>) -> KleisliValue<Y> {
        match self {
            KleisliValue::Bot => KleisliValue::Bot,
            KleisliValue::Pair(u, x) => match f(x) {
                KleisliValue::Bot => KleisliValue::Bot,
                KleisliValue::Pair(w, y) => KleisliValue::Pair(u.concat(&w), y),
            },
        }
    }

    /// `v ⋆ -`: prepends `v` to the word, leaving `Bot` alone.
    pub fn prepend(&self, v: &Word) -> Self
    where
        X: Clone,
    {
        match self {
            KleisliValue::Bot => KleisliValue::Bot,
            KleisliValue::Pair(w, x) => KleisliValue::Pair(v.concat(w), x.clone()),
        }
    }
}

/// A map `X → B* × Y + 1` between finite sets `X = 0..n`, `Y = 0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KleisliMorphism {
    codomain: usize,
    map: Vec<KleisliValue<usize>>,
}

impl KleisliMorphism {
    pub fn new(codomain: usize, map: Vec<KleisliValue<usize>>) -> Result<Self> {
        if let Some(&y) = map.iter().filter_map(KleisliValue::value).find(|&&y| y >= codomain) {
            return Err(Error::DomainMismatch {
                expected: codomain,
                found: y + 1,
            });
        }
        Ok(KleisliMorphism { codomain, map })
    }

    /// The unit `η`: every element to itself with the empty word.
    pub fn identity(n: usize) -> Self {
        KleisliMorphism {
            codomain: n,
            map: (0..n).map(KleisliValue::unit).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.map.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn apply(&self, x: usize) -> &KleisliValue<usize> {
        &self.map[x]
    }

    pub fn values(&self) -> &[KleisliValue<usize>] {
        &self.map
    }
}

/// `g ∘ f`: the word produced by `f` comes first.
pub fn kleisli_compose(g: &KleisliMorphism, f: &KleisliMorphism) -> Result<KleisliMorphism> {
    if f.codomain != g.domain() {
        return Err(Error::DomainMismatch {
            expected: f.codomain,
            found: g.domain(),
        });
    }
    Ok(KleisliMorphism {
        codomain: g.codomain,
        map: f.map.iter().map(|v| v.bind(|&y| g.map[y].clone())).collect(),
    })
}

/// `π₂(f)` hits every element of the codomain.
pub fn is_epi(f: &KleisliMorphism) -> bool {
    first_missed(f).is_none()
}

fn first_missed(f: &KleisliMorphism) -> Option<usize> {
    let mut hit = vec![false; f.codomain];
    for &y in f.map.iter().filter_map(KleisliValue::value) {
        hit[y] = true;
    }
    hit.iter().position(|h| !h)
}

/// `π₁(f)` is constantly `ε` and `π₂(f)` is injective.
pub fn is_mono(f: &KleisliMorphism) -> bool {
    mono_violation(f).is_none()
}

fn mono_violation(f: &KleisliMorphism) -> Option<String> {
    let mut seen = vec![false; f.codomain];
    for (x, v) in f.map.iter().enumerate() {
        match v {
            KleisliValue::Bot => return Some(format!("element {x} is undefined")),
            KleisliValue::Pair(w, _) if !w.is_empty() => {
                return Some(format!("element {x} produces a nonempty word"))
            }
            KleisliValue::Pair(_, y) => {
                if std::mem::replace(&mut seen[*y], true) {
                    return Some(format!("element {y} of the codomain is hit twice"));
                }
            }
        }
    }
    None
}

/// `f = mono ∘ epi` with `epi: X ⇸ Z` and `mono: Z ⇸ Y`, where `Z` is the
/// set of elements `f` reaches, listed in `image` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub image: Vec<usize>,
    pub epi: KleisliMorphism,
    pub mono: KleisliMorphism,
}

pub fn factorize(f: &KleisliMorphism) -> Factorization {
    let mut in_image = vec![false; f.codomain];
    for &y in f.map.iter().filter_map(KleisliValue::value) {
        in_image[y] = true;
    }
    let image: Vec<usize> = (0..f.codomain).filter(|&y| in_image[y]).collect();
    let mut position = vec![usize::MAX; f.codomain];
    for (i, &y) in image.iter().enumerate() {
        position[y] = i;
    }
    let epi = KleisliMorphism {
        codomain: image.len(),
        map: f
            .map
            .iter()
            .map(|v| match v {
                KleisliValue::Bot => KleisliValue::Bot,
                KleisliValue::Pair(u, y) => KleisliValue::Pair(u.clone(), position[*y]),
            })
            .collect(),
    };
    let mono = KleisliMorphism {
        codomain: f.codomain,
        map: image.iter().map(|&y| KleisliValue::unit(y)).collect(),
    };
    Factorization { image, epi, mono }
}

/// The diagonal `d: Y ⇸ Z` of a commuting square `g ∘ e = m ∘ f` with
/// `e: X ⇸ Y` in E_Kl and `m: Z ⇸ W` in M_Kl, satisfying `d ∘ e = f` and
/// `m ∘ d = g`.
pub fn diagonal_fill(
    e: &KleisliMorphism,
    f: &KleisliMorphism,
    g: &KleisliMorphism,
    m: &KleisliMorphism,
) -> Result<KleisliMorphism> {
    let dims = [
        (e.domain(), f.domain()),
        (e.codomain, g.domain()),
        (f.codomain, m.domain()),
        (g.codomain, m.codomain),
    ];
    if let Some(&(expected, found)) = dims.iter().find(|(a, b)| a != b) {
        return Err(Error::DomainMismatch { expected, found });
    }
    if let Some(y) = first_missed(e) {
        return Err(Error::NotEpi(y));
    }
    if let Some(why) = mono_violation(m) {
        return Err(Error::NotMono(why));
    }
    let top = kleisli_compose(g, e)?;
    let bottom = kleisli_compose(m, f)?;
    if let Some(x) = (0..e.domain()).find(|&x| top.map[x] != bottom.map[x]) {
        return Err(Error::NonCommutingSquare(x));
    }

    let mut preimage = vec![usize::MAX; e.codomain];
    for (x, v) in e.map.iter().enumerate().rev() {
        if let Some(&y) = v.value() {
            preimage[y] = x;
        }
    }
    let map = (0..e.codomain)
        .map(|y| match &g.map[y] {
            KleisliValue::Bot => Ok(KleisliValue::Bot),
            KleisliValue::Pair(v, _) => match &f.map[preimage[y]] {
                KleisliValue::Pair(_, z) => Ok(KleisliValue::Pair(v.clone(), *z)),
                KleisliValue::Bot => Err(Error::Internal(format!(
                    "commuting square leaves f undefined above defined g({y})"
                ))),
            },
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KleisliMorphism {
        codomain: f.codomain,
        map,
    })
}
