use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::knots::torus_knot_group;
use super::triangle::{brieskorn_pi1, seifert_invariants, triangle_group, TriangleParams};
use super::words::{fixed_knot_word, fixed_knot_word_formula};
use crate::abelian::abelianization;
use crate::enumeration::{order_of, Certificate, Claim, Evidence};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, FIXED_KNOT};
use crate::word::Word;

/// Certify that the branched double cover associated with `Δ(2, q, r)` is a
/// homotopy 4-sphere, by two independent pipelines:
///
/// * quotient of `Δ(2, q, r)` by the fixed-knot word is trivial, and the
///   Brieskorn group is perfect;
/// * the Brieskorn group with the (k = 0 lift of the) fixed-knot word made
///   central is trivial.
pub fn sphere_check(q: i64, r: i64, cap: usize) -> Result<Certificate> {
    let y = fixed_knot_word(q, r)?;
    Ok(run_pipelines(
        q,
        r,
        &y,
        cap,
        format!("sphere-check q={q} r={r}"),
    ))
}

fn run_pipelines(q: i64, r: i64, y: &Word, cap: usize, subject: String) -> Certificate {
    let t = TriangleParams::new(2, q, r).expect("pipeline parameters validated by caller");
    let delta = triangle_group(&t);
    let pi = brieskorn_pi1(&t);
    let s = seifert_invariants(&t);

    let quotient = delta
        .quotient_by_normal_closure(std::slice::from_ref(y))
        .expect("fixed-knot word lies over a, b, c");
    let step_a = order_of(&quotient, &format!("triangle 2 {q} {r} / <<y>>"), cap)
        .expect("cap already validated");
    let pi_ab = abelianization(&pi).expect("brieskorn relation matrix is small");
    let centralized = pi.centralize(y).expect("fixed-knot word lies over a, b, c");
    let step_b = order_of(
        &centralized,
        &format!("brieskorn 2 {q} {r} with y central"),
        cap,
    )
    .expect("cap already validated");

    let a_ok = step_a.claim == Claim::Trivial && pi_ab.is_trivial();
    let b_ok = step_b.claim == Claim::Trivial;
    let claim = if a_ok && b_ok {
        Claim::HomotopySphere
    } else {
        let reason = match (&step_a.claim, &step_b.claim) {
            (Claim::Inconclusive { .. }, _) | (_, Claim::Inconclusive { .. }) => {
                "at least one pipeline did not close within the cap".to_string()
            }
            _ if !pi_ab.is_trivial() => format!("Brieskorn group has abelianization {pi_ab}"),
            (a, b) => format!(
                "pipelines disagree or find a nontrivial group: {} / {}",
                a.summary(),
                b.summary()
            ),
        };
        Claim::Inconclusive { reason }
    };
    log::info!("{subject}: {}", claim.summary());

    Certificate::new(claim, subject)
        .with_parameter("q", q)
        .with_parameter("r", r)
        .with_parameter("cap", cap)
        .with_parameter("fixed_knot_word", delta.show(y))
        .with_parameter("lift", 0)
        .with_parameter(
            "seifert",
            format!("b1={} b2={} b3={} e={}", s.b1, s.b2, s.b3, s.e),
        )
        .with_parameter("brieskorn_abelianization", pi_ab)
        .with_step(step_a)
        .with_step(step_b)
}

/// How the Montesinos knot `K(2, 3, |6s+1|)` is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum MontesinosCase {
    /// `s = 0`: the unknot.
    Unknot,
    /// `s = -1`: the torus knot `T(3, 5)`.
    TorusKnot { p: i64, q: i64 },
    /// Otherwise the hyperbolic triangle `(2, 3, |6s+1|)`.
    Hyperbolic { q: i64, r: i64 },
}

pub fn montesinos_param(s: i64) -> MontesinosCase {
    match s {
        0 => MontesinosCase::Unknot,
        -1 => MontesinosCase::TorusKnot { p: 3, q: 5 },
        _ => MontesinosCase::Hyperbolic {
            q: 3,
            r: (6 * s + 1).abs(),
        },
    }
}

/// `sphere_check` routed through `montesinos_param`.
pub fn montesinos_sphere_check(s: i64, cap: usize) -> Result<Certificate> {
    if s.unsigned_abs() > 100_000 {
        return Err(Error::params("|s| above 10^5 is not supported"));
    }
    let subject = format!("sphere-check s={s}");
    let cert = match montesinos_param(s) {
        MontesinosCase::Unknot => Certificate::new(Claim::HomotopySphere, subject)
            .with_evidence(Evidence::Reference {
                statement: "K_0 is the unknot; every twist-roll spin of the unknot is the \
                            unknotted 2-sphere, whose branched double cover is S^4"
                    .into(),
            })
            .with_note("special case: no enumeration performed"),
        MontesinosCase::TorusKnot { p, q } => {
            let corroboration = run_pipelines(
                p,
                q,
                &fixed_knot_word_formula(p, q),
                cap,
                format!("corroborating pipelines q={p} r={q}"),
            );
            Certificate::new(Claim::HomotopySphere, subject)
                .with_evidence(Evidence::Reference {
                    statement: format!(
                        "K_-1 is the torus knot T({p},{q}); the branched double cover of a \
                         roll-spun torus knot is diffeomorphic to S^4"
                    ),
                })
                .with_note("special case: certified by the torus-knot argument; the (3,5) pipelines below corroborate it")
                .with_step(corroboration)
        }
        MontesinosCase::Hyperbolic { q, r } => {
            let mut c = sphere_check(q, r, cap)?;
            c.subject = subject;
            c
        }
    };
    Ok(cert.with_parameter("s", s))
}

/// Built-in group descriptors: `triangle p q r`, `brieskorn p q r`,
/// `torus p q`, `montesinos-s s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Triangle(i64, i64, i64),
    Brieskorn(i64, i64, i64),
    Torus(i64, i64),
    MontesinosS(i64),
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let bad = || Error::params(format!("unrecognised descriptor {text:?}"));
        let nums: Vec<i64> = tokens
            .iter()
            .skip(1)
            .map(|t| t.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (tokens.first().copied(), nums.as_slice()) {
            (Some("triangle"), &[p, q, r]) => Ok(Self::Triangle(p, q, r)),
            (Some("brieskorn"), &[p, q, r]) => Ok(Self::Brieskorn(p, q, r)),
            (Some("torus"), &[p, q]) => Ok(Self::Torus(p, q)),
            (Some("montesinos-s"), &[s]) => Ok(Self::MontesinosS(s)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Triangle(p, q, r) => write!(f, "triangle {p} {q} {r}"),
            Self::Brieskorn(p, q, r) => write!(f, "brieskorn {p} {q} {r}"),
            Self::Torus(p, q) => write!(f, "torus {p} {q}"),
            Self::MontesinosS(s) => write!(f, "montesinos-s {s}"),
        }
    }
}

impl Descriptor {
    /// The presented group. Triangle groups with odd `q, r` carry the
    /// fixed-knot word as a marked element; torus knots carry their
    /// meridian and longitude; `montesinos-s` gives the Brieskorn group of
    /// the branched double cover (the trivial group for `s = 0`).
    pub fn presentation(&self) -> Result<Presentation> {
        match *self {
            Self::Triangle(p, q, r) => {
                let t = TriangleParams::new(p, q, r)?;
                let g = triangle_group(&t);
                if p == 2 && q % 2 == 1 && r % 2 == 1 {
                    g.with_marked(FIXED_KNOT, fixed_knot_word_formula(q, r))
                } else {
                    Ok(g)
                }
            }
            Self::Brieskorn(p, q, r) => {
                let t = TriangleParams::new(p, q, r)?;
                let g = brieskorn_pi1(&t);
                if p == 2 && q % 2 == 1 && r % 2 == 1 {
                    g.with_marked(FIXED_KNOT, fixed_knot_word_formula(q, r))
                } else {
                    Ok(g)
                }
            }
            Self::Torus(p, q) => Ok(torus_knot_group(p, q)?.presentation().clone()),
            Self::MontesinosS(s) => match montesinos_param(s) {
                MontesinosCase::Unknot => Presentation::free(Vec::<String>::new()),
                MontesinosCase::TorusKnot { p, q } => Self::Brieskorn(2, p, q).presentation(),
                MontesinosCase::Hyperbolic { q, r } => Self::Brieskorn(2, q, r).presentation(),
            },
        }
    }
}
