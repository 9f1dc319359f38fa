//! Finite presentations and their text format.
//!
//! ```text
//! # comment
//! a, b, c
//! a^2
//! b^3
//! c^7
//! a b c
//! !fixed-knot: c^4 b^2 a b^-2 c^-4 a
//! ```
//!
//! The first non-comment line lists the generators (blank for none). Every
//! later non-empty, non-`#` line is one relator, unless it starts with `!`,
//! in which case it marks a distinguished element as `!label: word`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{commutator, Word};

pub const MERIDIAN: &str = "meridian";
pub const LONGITUDE: &str = "longitude";
pub const FIXED_KNOT: &str = "fixed-knot";
pub const CENTER: &str = "center";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    marked: BTreeMap<String, Word>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name.starts_with('!')
        && !name.starts_with('#')
        && name
            .chars()
            .all(|c| !c.is_whitespace() && c != '^' && c != ',' && c != ':')
}

impl Presentation {
    pub fn new<S: Into<String>>(generators: Vec<S>, relators: Vec<Word>) -> Result<Self> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(Error::InvalidGeneratorName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let p = Self {
            generators,
            relators,
            marked: BTreeMap::new(),
        };
        for r in &p.relators {
            p.check_word(r)?;
        }
        Ok(p)
    }

    /// Free group on the given generators.
    pub fn free<S: Into<String>>(generators: Vec<S>) -> Result<Self> {
        Self::new(generators, Vec::new())
    }

    pub fn with_marked(mut self, label: impl Into<String>, word: Word) -> Result<Self> {
        self.check_word(&word)?;
        self.marked.insert(label.into(), word);
        Ok(self)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g as usize >= self.generators.len() => Err(Error::GeneratorOutOfRange {
                index: g,
                rank: self.generators.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn marked(&self, label: &str) -> Option<&Word> {
        self.marked.get(label)
    }

    pub fn marked_elements(&self) -> &BTreeMap<String, Word> {
        &self.marked
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as u32)
    }

    pub fn generator_words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.rank() as u32).map(Word::generator)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    /// Add one relator `[gᵢ, w]` per generator, presenting `P / [P, w]`.
    pub fn centralize(&self, w: &Word) -> Result<Self> {
        self.check_word(w)?;
        let commutators: Vec<Word> = self.generator_words().map(|g| commutator(&g, w)).collect();
        self.quotient_by_normal_closure(&commutators)
    }

    /// Append the given words as relators.
    pub fn quotient_by_normal_closure(&self, words: &[Word]) -> Result<Self> {
        for w in words {
            self.check_word(w)?;
        }
        let mut out = self.clone();
        out.relators.extend(words.iter().cloned());
        Ok(out)
    }

    /// Parse the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'));

        let (gen_line, header) = lines.next().unwrap_or((1, ""));
        let generators: Vec<String> = if header.is_empty() {
            Vec::new()
        } else {
            header.split(',').map(|s| s.trim().to_string()).collect()
        };
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(Error::Parse {
                    line: gen_line,
                    token: g.clone(),
                    message: "invalid generator name".into(),
                });
            }
            if generators[..i].contains(g) {
                return Err(Error::Parse {
                    line: gen_line,
                    token: g.clone(),
                    message: "duplicate generator name".into(),
                });
            }
        }

        let mut relators = Vec::new();
        let mut marked = BTreeMap::new();
        for (line, content) in lines {
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('!') {
                let (label, body) = rest.split_once(':').ok_or_else(|| Error::Parse {
                    line,
                    token: content.to_string(),
                    message: "marked element must have the form `!label: word`".into(),
                })?;
                let label = label.trim();
                if label.is_empty() {
                    return Err(Error::Parse {
                        line,
                        token: content.to_string(),
                        message: "empty marked label".into(),
                    });
                }
                marked.insert(label.to_string(), Word::parse_at(body, &generators, line)?);
            } else {
                relators.push(Word::parse_at(content, &generators, line)?);
            }
        }
        Ok(Self {
            generators,
            relators,
            marked,
        })
    }

    pub(crate) fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.show(r)).collect(),
            marked: self
                .marked
                .iter()
                .map(|(k, w)| (k.clone(), self.show(w)))
                .collect(),
        }
    }

    pub(crate) fn from_doc(doc: &PresentationDoc) -> Result<Self> {
        let mut p = Self::new(doc.generators.clone(), Vec::new())?;
        for r in &doc.relators {
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        for (k, w) in &doc.marked {
            let w = p.parse_word(w)?;
            p.marked.insert(k.clone(), w);
        }
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    /// Writes the text format; `Presentation::parse` reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.generators.join(", "))?;
        for r in &self.relators {
            writeln!(f, "{}", self.show(r))?;
        }
        for (label, w) in &self.marked {
            writeln!(f, "!{label}: {}", self.show(w))?;
        }
        Ok(())
    }
}

/// Serialized form: words as text in the presentation's own generator names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct PresentationDoc {
    generators: Vec<String>,
    relators: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    marked: BTreeMap<String, String>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PresentationDoc::deserialize(d)?;
        Presentation::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DELTA_237: &str =
        "# triangle group\na, b, c\na^2\nb^3\nc^7\na b c\n!fixed-knot: c^4 b^2 a b^-2 c^-4 a\n";

    #[test]
    fn parse_round_trip() {
        let p = Presentation::parse(DELTA_237).unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.relators().len(), 4);
        assert_eq!(
            p.show(p.marked(FIXED_KNOT).unwrap()),
            "c^4 b^2 a b^-2 c^-4 a"
        );
        let again = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn parse_errors_report_line_and_token() {
        let err = Presentation::parse("a, b\na^2\nb^3 d\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                token: "d".into(),
                message: "unknown generator \"d\"".into()
            }
        );
        let err = Presentation::parse("a, a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Presentation::parse("a\n!meridian a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn empty_generator_line_is_trivial_presentation() {
        let p = Presentation::parse("\n").unwrap();
        assert_eq!(p.rank(), 0);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn out_of_range_words_rejected() {
        let p = Presentation::free(vec!["a"]).unwrap();
        assert!(matches!(
            p.centralize(&Word::generator(3)),
            Err(Error::GeneratorOutOfRange { index: 3, rank: 1 })
        ));
        assert!(Presentation::new(vec!["a"], vec![Word::generator(1)]).is_err());
    }

    #[test]
    fn centralize_matches_commutator_quotient() {
        let p = Presentation::parse(DELTA_237).unwrap();
        let y = p.marked(FIXED_KNOT).unwrap().clone();
        let c = p.centralize(&y).unwrap();
        let comms: Vec<Word> = p.generator_words().map(|g| commutator(&g, &y)).collect();
        assert_eq!(c, p.quotient_by_normal_closure(&comms).unwrap());
        assert_eq!(c.relators().len(), 7);
    }
}
