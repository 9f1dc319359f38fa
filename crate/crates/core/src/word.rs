//! Freely reduced words in a free group, stored run-length encoded.
//!
//! A [`Word`] is a sequence of syllables `g^e` with `e != 0` and no two
//! adjacent syllables on the same generator. Every constructor reduces, so a
//! `Word` value is always in normal form and structural equality is equality
//! in the free group.

use std::fmt;

use crate::error::{Error, Result};

/// One run `generator^exponent` of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i64,
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Freely reduce a raw sequence of `(generator, exponent)` pairs.
///
/// Zero exponents are dropped and adjacent runs on the same generator are
/// merged, cancelling when their exponents sum to zero.
pub fn reduce<I>(raw: I) -> Word
where
    I: IntoIterator<Item = (u32, i64)>,
{
    let mut out: Vec<Syllable> = Vec::new();
    for (generator, exponent) in raw {
        push_syllable(&mut out, generator, exponent);
    }
    Word { syllables: out }
}

fn push_syllable(stack: &mut Vec<Syllable>, generator: u32, exponent: i64) {
    if exponent == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.generator == generator => {
            top.exponent = top
                .exponent
                .checked_add(exponent)
                .expect("word exponent overflowed i64");
            if top.exponent == 0 {
                stack.pop();
            }
        }
        _ => stack.push(Syllable {
            generator,
            exponent,
        }),
    }
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(generator: u32) -> Self {
        Self::power_of(generator, 1)
    }

    /// The single-syllable word `generator^exponent`.
    pub fn power_of(generator: u32, exponent: i64) -> Self {
        reduce([(generator, exponent)])
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables.
    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_syllable(&mut out, s.generator, s.exponent);
        }
        Word { syllables: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().mul(self).mul(g)
    }

    /// `self^n`, by repeated squaring.
    pub fn pow(&self, n: i64) -> Word {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Word::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Expand into letters. Generator `g` becomes column `2g`, its inverse
    /// column `2g + 1`; this is the column layout used by coset tables.
    pub fn letters(&self) -> impl Iterator<Item = u32> + '_ {
        self.syllables.iter().flat_map(|s| {
            let column = if s.exponent > 0 {
                2 * s.generator
            } else {
                2 * s.generator + 1
            };
            std::iter::repeat_n(column, s.exponent.unsigned_abs() as usize)
        })
    }

    /// Exponent sum of each generator, for abelianization.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for s in &self.syllables {
            let slot = &mut sums[s.generator as usize];
            *slot = slot
                .checked_add(s.exponent)
                .expect("exponent sum overflowed i64");
        }
        sums
    }

    /// Parse whitespace-separated tokens `name` or `name^k`; the token `1`
    /// denotes the identity.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        Self::parse_at(text, names, 0)
    }

    pub(crate) fn parse_at(text: &str, names: &[String], line: usize) -> Result<Word> {
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exponent) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exponent: i64 = exp.parse().map_err(|_| Error::Parse {
                        line,
                        token: token.to_string(),
                        message: "exponent is not an integer".into(),
                    })?;
                    if exponent == 0 {
                        return Err(Error::Parse {
                            line,
                            token: token.to_string(),
                            message: "exponent must be nonzero".into(),
                        });
                    }
                    (name, exponent)
                }
                None => (token, 1),
            };
            let index = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse {
                    line,
                    token: token.to_string(),
                    message: format!("unknown generator {name:?}"),
                })?;
            raw.push((index as u32, exponent));
        }
        Ok(reduce(raw))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Renders a word with generator names, in the same token syntax that
/// [`Word::parse`] accepts.
pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let fallback;
            let name = match self.names.get(s.generator as usize) {
                Some(n) => n.as_str(),
                None => {
                    fallback = format!("g{}", s.generator);
                    &fallback
                }
            };
            if s.exponent == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

/// `g⁻¹ h⁻¹ g h`.
pub fn commutator(g: &Word, h: &Word) -> Word {
    g.inverse().mul(&h.inverse()).mul(g).mul(h)
}

/// Concatenate and reduce a sequence of words.
pub fn product<'a, I>(words: I) -> Word
where
    I: IntoIterator<Item = &'a Word>,
{
    words
        .into_iter()
        .fold(Word::identity(), |acc, w| acc.mul(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;

    fn names() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cancellation() {
        let w = reduce([(A, 1), (A, -1)]);
        assert!(w.is_identity());
    }

    #[test]
    fn already_reduced_word_is_fixed() {
        let raw = [(C, 4), (B, 2), (A, 1), (B, -2), (C, -4), (A, 1)];
        let w = reduce(raw);
        assert_eq!(w.syllable_len(), 6);
        assert_eq!(w.display(&names()).to_string(), "c^4 b^2 a b^-2 c^-4 a");
    }

    #[test]
    fn inverse_of_product() {
        let ab = reduce([(A, 1), (B, 1)]);
        assert_eq!(ab.inverse(), reduce([(B, -1), (A, -1)]));
    }

    #[test]
    fn cascading_cancellation() {
        let w = reduce([(A, 2), (B, 1), (C, 3), (C, -3), (B, -1), (A, -1)]);
        assert_eq!(w, Word::generator(A));
    }

    #[test]
    fn commutator_conjugate_power() {
        let a = Word::generator(A);
        let b = Word::generator(B);
        let c = Word::generator(C);
        assert!(commutator(&a, &a).is_identity());
        assert_eq!(c.pow(4), Word::power_of(C, 4));
        assert_eq!(a.conjugate(&b), reduce([(B, -1), (A, 1), (B, 1)]));
        let ab = a.mul(&b);
        assert_eq!(ab.pow(-2), reduce([(B, -1), (A, -1), (B, -1), (A, -1)]));
        assert!(ab.pow(0).is_identity());
    }

    #[test]
    fn letters_expand_columns() {
        let w = reduce([(A, 2), (B, -1)]);
        assert_eq!(w.letters().collect::<Vec<_>>(), vec![0, 0, 3]);
        assert_eq!(w.letter_len(), 3);
    }

    #[test]
    fn parse_and_display() {
        let n = names();
        let w = Word::parse("c^4 b^2 a b^-2 c^-4 a", &n).unwrap();
        assert_eq!(w.display(&n).to_string(), "c^4 b^2 a b^-2 c^-4 a");
        assert!(Word::parse("1", &n).unwrap().is_identity());
        assert!(Word::parse("a a^-1", &n).unwrap().is_identity());
        assert!(matches!(Word::parse("d", &n), Err(Error::Parse { .. })));
        assert!(matches!(Word::parse("a^0", &n), Err(Error::Parse { .. })));
        assert!(matches!(Word::parse("a^x", &n), Err(Error::Parse { .. })));
    }
}
