use std::ops::ControlFlow;

use super::certificate::{Certificate, Claim, Evidence};
use super::low_index::for_each_table;
use super::todd_coxeter::{enumerate, Verdict};
use crate::abelian::abelianization;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

/// Order of the presented group by enumeration over the trivial subgroup.
pub fn order(p: &Presentation, cap: usize) -> Result<Certificate> {
    order_of(p, "presentation", cap)
}

pub fn order_of(p: &Presentation, subject: &str, cap: usize) -> Result<Certificate> {
    let out = enumerate(p, &[], cap)?;
    let cert = Certificate::new(Claim::Trivial, subject)
        .with_presentation(p)
        .with_parameter("cap", cap);
    let mut cert = match out.verdict {
        Verdict::Finite { index, table } => {
            let claim = if index == 1 {
                if !abelianization(p)?.is_trivial() {
                    return Err(Error::InvalidTable(
                        "enumeration closed at one coset but the abelianization is nontrivial"
                            .into(),
                    ));
                }
                Claim::Trivial
            } else {
                Claim::FiniteOrder {
                    order: index as u64,
                }
            };
            Certificate { claim, ..cert }.with_evidence(Evidence::CosetAction {
                subgroup: Vec::new(),
                table,
            })
        }
        Verdict::CapExceeded { cosets_defined } => Certificate {
            claim: Claim::Inconclusive {
                reason: format!("coset enumeration exceeded the cap of {cap} cosets"),
            },
            ..cert
        }
        .with_parameter("cosets_defined", cosets_defined),
    };
    cert.statistics = Some(out.work);
    Ok(cert)
}

/// Whether `w` normally generates the group. The group must be perfect, in
/// which case `w` is a weight element exactly when centralizing it kills
/// the group.
pub fn weight_check(p: &Presentation, w: &Word, cap: usize) -> Result<Certificate> {
    p.check_word(w)?;
    let ab = abelianization(p)?;
    if !ab.is_trivial() {
        return Err(Error::NotPerfect(ab.to_string()));
    }
    let centralized = p.centralize(w)?;
    let step = order_of(&centralized, "centralized quotient", cap)?;
    let claim = match &step.claim {
        Claim::Trivial => Claim::WeightElement,
        Claim::FiniteOrder { order } => Claim::NotWeightElement {
            quotient_order: *order,
        },
        Claim::Inconclusive { reason } => Claim::Inconclusive {
            reason: reason.clone(),
        },
        other => unreachable!("order certificate with claim {other:?}"),
    };
    let mut cert = Certificate::new(claim, "weight check")
        .with_presentation(p)
        .with_parameter("word", p.show(w))
        .with_parameter("cap", cap)
        .with_step(step);
    if w.is_identity() {
        cert = cert.with_note("the identity is a weight element only of the trivial group");
    }
    Ok(cert)
}

/// Smallest-degree transitive action in which two generator images fail to
/// commute, searching degrees `1..=max_degree` in turn.
pub fn nonabelian_witness(p: &Presentation, max_degree: usize) -> Result<Certificate> {
    if max_degree == 0 {
        return Err(Error::params("max degree must be at least 1"));
    }
    for degree in 1..=max_degree {
        let found = for_each_table(p, degree, true, |t| {
            for g in 0..t.rank() {
                for h in g + 1..t.rank() {
                    if !t.generators_commute(g, h) {
                        return ControlFlow::Break((t.permutations(), (g, h)));
                    }
                }
            }
            ControlFlow::Continue(())
        })?;
        if let Some((images, pair)) = found {
            log::debug!("non-abelian witness at degree {degree}");
            return Ok(
                Certificate::new(Claim::NonabelianWitness { degree }, "presentation")
                    .with_presentation(p)
                    .with_parameter("max_degree", max_degree)
                    .with_evidence(Evidence::Witness { images, pair }),
            );
        }
    }
    Ok(Certificate::new(
        Claim::Inconclusive {
            reason: format!(
                "no transitive action of degree at most {max_degree} has non-commuting generator images"
            ),
        },
        "presentation",
    )
    .with_presentation(p)
    .with_parameter("max_degree", max_degree))
}
