use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::coset_table::CosetTable;
use super::todd_coxeter::WorkStats;
use crate::abelian::abelianization;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

/// Fixed conventions, echoed into every certificate and by `--version`.
pub const CONVENTIONS: &[&str] = &[
    "brieskorn reading: b^q = z^-b2 and c^r = z^-b3, with a^p = z^-b1 and abc = z^-e",
    "seifert normalization: 0 <= b1 < p, 0 <= b2 < q, 0 <= b3 < r",
    "fixed-knot lift: the k = 0 lift of y is centralized; the result does not depend on k because z is central",
    "odd twist sign: mu = lambda^(sign*n) takes the sign as a parameter; neither sign is canonical",
    "geometry: Poincare disk, rotations counterclockwise-positive, words act on the right",
    "coset tables: standardized, cosets act on the right, column 2g is g and 2g+1 is g^-1",
];

pub fn conventions() -> Vec<String> {
    CONVENTIONS.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    Trivial,
    FiniteOrder { order: u64 },
    NonabelianWitness { degree: usize },
    WeightElement,
    NotWeightElement { quotient_order: u64 },
    HomotopySphere,
    TopologicallyUnknotted,
    Knotted { group_order: u64 },
    GeometryVerified,
    GeometryMismatch,
    Inconclusive { reason: String },
}

impl Claim {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Claim::Inconclusive { .. })
    }

    /// Claims that refute what was asked rather than confirm it.
    pub fn is_refutation(&self) -> bool {
        matches!(
            self,
            Claim::NotWeightElement { .. } | Claim::Knotted { .. } | Claim::GeometryMismatch
        )
    }

    pub fn summary(&self) -> String {
        match self {
            Claim::Trivial => "trivial group".into(),
            Claim::FiniteOrder { order } => format!("finite of order {order}"),
            Claim::NonabelianWitness { degree } => {
                format!("non-abelian (witness of degree {degree})")
            }
            Claim::WeightElement => "weight element".into(),
            Claim::NotWeightElement { quotient_order } => {
                format!("not a weight element (centralized quotient has order {quotient_order})")
            }
            Claim::HomotopySphere => "homotopy 4-sphere branched cover".into(),
            Claim::TopologicallyUnknotted => "topologically unknotted".into(),
            Claim::Knotted { group_order } => {
                format!("knotted (group of order {group_order} instead of 2)")
            }
            Claim::GeometryVerified => "geometry verified".into(),
            Claim::GeometryMismatch => "geometry mismatch".into(),
            Claim::Inconclusive { reason } => format!("inconclusive: {reason}"),
        }
    }
}

/// One numeric check: `passed` iff `deviation <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation,
            tolerance,
            passed: deviation <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Evidence {
    None,
    /// A closed coset table for the subgroup generated by `subgroup`.
    CosetAction {
        subgroup: Vec<String>,
        table: CosetTable,
    },
    /// Generator images satisfying every relator, with a non-commuting pair.
    Witness {
        images: Vec<Vec<u32>>,
        pair: (usize, usize),
    },
    Reference {
        statement: String,
    },
    Geometry {
        checks: Vec<Check>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub statistics: Option<WorkStats>,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Certificate>,
    #[serde(default)]
    pub convention_notes: Vec<String>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

impl Certificate {
    pub fn new(claim: Claim, subject: impl Into<String>) -> Self {
        Self {
            claim,
            subject: subject.into(),
            presentation: None,
            parameters: BTreeMap::new(),
            statistics: None,
            evidence: Evidence::None,
            steps: Vec::new(),
            convention_notes: conventions(),
        }
    }

    pub fn with_presentation(mut self, p: &Presentation) -> Self {
        self.presentation = Some(p.clone());
        self
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_evidence(mut self, evidence: Evidence) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn with_step(mut self, step: Certificate) -> Self {
        self.steps.push(step);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.convention_notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(e.to_string()))
    }

    /// Re-checks the evidence, recursing into steps, without repeating any
    /// search. A coset table shows the claimed action exists; that no larger
    /// quotient exists rests on the enumeration that produced it.
    pub fn verify(&self) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            step.verify()
                .map_err(|e| invalid(format!("step {i} ({}): {e}", step.subject)))?;
        }
        match &self.claim {
            Claim::Trivial => {
                self.verify_order(1)?;
                let p = self.require_presentation()?;
                if !abelianization(p)?.is_trivial() {
                    return Err(invalid("trivial claim but abelianization is nontrivial"));
                }
                Ok(())
            }
            Claim::FiniteOrder { order } => self.verify_order(*order),
            Claim::NonabelianWitness { degree } => self.verify_witness(*degree),
            Claim::WeightElement => {
                let step = self.centralized_step()?;
                match step.claim {
                    Claim::Trivial => Ok(()),
                    _ => Err(invalid("weight claim needs a trivial centralized quotient")),
                }
            }
            Claim::NotWeightElement { quotient_order } => {
                let step = self.centralized_step()?;
                match step.claim {
                    Claim::FiniteOrder { order } if order == *quotient_order && order > 1 => Ok(()),
                    _ => Err(invalid(
                        "non-weight claim needs a nontrivial finite quotient",
                    )),
                }
            }
            Claim::HomotopySphere => {
                if matches!(self.evidence, Evidence::Reference { .. }) {
                    return Ok(());
                }
                if self.steps.is_empty()
                    || !self
                        .steps
                        .iter()
                        .all(|s| matches!(s.claim, Claim::Trivial | Claim::WeightElement))
                {
                    return Err(invalid(
                        "homotopy sphere claim needs trivial quotients in every step",
                    ));
                }
                Ok(())
            }
            Claim::TopologicallyUnknotted => {
                if matches!(self.evidence, Evidence::Reference { .. }) {
                    return Ok(());
                }
                if self
                    .steps
                    .iter()
                    .any(|s| s.claim == Claim::FiniteOrder { order: 2 })
                {
                    Ok(())
                } else {
                    Err(invalid("unknotted claim needs a quotient of order 2"))
                }
            }
            Claim::Knotted { group_order } => {
                if *group_order != 2
                    && self.steps.iter().any(|s| match s.claim {
                        Claim::FiniteOrder { order } => order == *group_order,
                        Claim::Trivial => *group_order == 1,
                        _ => false,
                    })
                {
                    Ok(())
                } else {
                    Err(invalid(
                        "knotted claim needs a finite group of order other than 2",
                    ))
                }
            }
            Claim::GeometryVerified | Claim::GeometryMismatch => {
                let Evidence::Geometry { checks } = &self.evidence else {
                    return Err(invalid("geometry claim without geometry evidence"));
                };
                for c in checks {
                    if c.passed != (c.deviation <= c.tolerance) {
                        return Err(invalid(format!(
                            "check {} is marked inconsistently",
                            c.name
                        )));
                    }
                }
                let all = checks.iter().all(|c| c.passed);
                if all == (self.claim == Claim::GeometryVerified) {
                    Ok(())
                } else {
                    Err(invalid("geometry verdict disagrees with its checks"))
                }
            }
            Claim::Inconclusive { .. } => Ok(()),
        }
    }

    fn require_presentation(&self) -> Result<&Presentation> {
        self.presentation
            .as_ref()
            .ok_or_else(|| invalid("claim requires a presentation"))
    }

    fn verify_order(&self, order: u64) -> Result<()> {
        let p = self.require_presentation()?;
        let Evidence::CosetAction { subgroup, table } = &self.evidence else {
            return Err(invalid("order claim without a coset table"));
        };
        if !subgroup.is_empty() {
            return Err(invalid("order claim must use the trivial subgroup"));
        }
        if table.rank() != p.rank() {
            return Err(invalid("table rank differs from presentation rank"));
        }
        table.validate(p.relators(), &[])?;
        if table.degree() as u64 != order {
            return Err(invalid(format!(
                "table has {} cosets but the claim is order {order}",
                table.degree()
            )));
        }
        Ok(())
    }

    fn verify_witness(&self, degree: usize) -> Result<()> {
        let p = self.require_presentation()?;
        let Evidence::Witness { images, pair } = &self.evidence else {
            return Err(invalid("witness claim without permutation images"));
        };
        if images.len() != p.rank() {
            return Err(invalid("one image per generator is required"));
        }
        let table = CosetTable::from_permutations(images)?;
        if table.degree() != degree {
            return Err(invalid("witness degree mismatch"));
        }
        table.validate(p.relators(), &[])?;
        let (g, h) = *pair;
        if g >= p.rank() || h >= p.rank() {
            return Err(invalid("witness pair out of range"));
        }
        if table.generators_commute(g, h) {
            return Err(invalid("the exhibited images commute"));
        }
        Ok(())
    }

    /// The order step of a weight claim, checked against the parent's
    /// presentation centralized by the recorded word.
    fn centralized_step(&self) -> Result<&Certificate> {
        let p = self.require_presentation()?;
        let word = self
            .parameters
            .get("word")
            .ok_or_else(|| invalid("weight claim without a word parameter"))?;
        let w: Word = p.parse_word(word)?;
        let step = self
            .steps
            .first()
            .ok_or_else(|| invalid("weight claim without an order step"))?;
        if step.presentation.as_ref() != Some(&p.centralize(&w)?) {
            return Err(invalid("order step is not the centralized presentation"));
        }
        Ok(step)
    }
}
