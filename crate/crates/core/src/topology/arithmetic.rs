use serde::{Deserialize, Serialize};

use crate::abelian::AbelianInvariants;
use crate::error::{Error, Result};

/// Twist count `m`, roll count `n` and the determinant of the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinParams {
    pub m: i64,
    pub n: i64,
    pub det: u64,
}

impl SpinParams {
    pub fn new(m: i64, n: i64, det: u64) -> Result<Self> {
        if det == 0 || det.is_multiple_of(2) {
            return Err(Error::params(format!(
                "knot determinant must be odd and positive, got {det}"
            )));
        }
        Ok(Self { m, n, det })
    }
}

/// First homology of the branched double cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedCoverH1 {
    pub order: u64,
    /// Invariant factors, when determined: always for the trivial group,
    /// for squarefree orders (forced cyclic), or when supplied.
    pub invariants: Option<AbelianInvariants>,
}

impl BranchedCoverH1 {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

fn squarefree(mut n: u64) -> bool {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        if n.is_multiple_of(d) {
            n /= d;
        }
        d += 1;
    }
    true
}

/// Trivial when `m` is odd, otherwise `H₁` of the 3-fold branched along the
/// knot, of order `det`. `sigma_h1` supplies that group's structure when
/// known; it must have order `det`.
pub fn h1_branched_cover(
    sp: &SpinParams,
    sigma_h1: Option<&AbelianInvariants>,
) -> Result<BranchedCoverH1> {
    if sp.m % 2 != 0 || sp.det == 1 {
        return Ok(BranchedCoverH1 {
            order: 1,
            invariants: Some(AbelianInvariants::trivial()),
        });
    }
    let invariants = match sigma_h1 {
        Some(h) => {
            if h.order() != Some(sp.det) {
                return Err(Error::params(format!(
                    "supplied homology {h} does not have order {}",
                    sp.det
                )));
            }
            Some(h.clone())
        }
        None if squarefree(sp.det) => Some(AbelianInvariants::cyclic(sp.det)),
        None => None,
    };
    Ok(BranchedCoverH1 {
        order: sp.det,
        invariants,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub m_from: i64,
    pub m_to: i64,
    pub n: i64,
    pub gluck_count: i64,
    pub parity: Parity,
    pub notes: Vec<String>,
}

/// Gluck twists relating the branched double covers for twist counts
/// `m_from` and `m_to`.
pub fn gluck_ledger(m_from: i64, m_to: i64, n: i64) -> Result<LedgerRecord> {
    let diff = m_to
        .checked_sub(m_from)
        .ok_or(Error::Overflow("gluck ledger"))?;
    if diff % 2 != 0 {
        return Err(Error::params(format!(
            "twist counts {m_from} and {m_to} have different parity"
        )));
    }
    let k = diff / 2;
    let parity = if k % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    let mut notes = Vec::new();
    if k == 0 {
        notes.push("identity: same twist count".to_string());
    }
    match parity {
        Parity::Even => notes.push(format!(
            "diffeomorphic: k = {k} is even, so the branched double covers are diffeomorphic"
        )),
        Parity::Odd => notes.push(format!(
            "single Gluck twist class: k = {k} is odd, so the cover for m = {m_to} is a Gluck twist of the cover for m = {m_from}"
        )),
    }
    if m_from % 2 != 0 && n == 0 {
        notes.push("odd twist-spin: cover is standard S^4".to_string());
    }
    Ok(LedgerRecord {
        m_from,
        m_to,
        n,
        gluck_count: k,
        parity,
        notes,
    })
}

/// `|deg|` for `K(2, 3, |6s+1|)`: with `N = |6s+1|`, it is `4j − 1` when
/// `N ∈ {12j − 1, 12j − 5}` and `4j + 1` when `N ∈ {12j + 1, 12j + 5}`.
pub fn miyazawa_degree(s: i64) -> u64 {
    let n = (6 * s as i128 + 1).unsigned_abs();
    let j = match n % 12 {
        11 => (n + 1) / 12,
        7 => (n + 5) / 12,
        1 => (n - 1) / 12,
        5 => (n - 5) / 12,
        _ => unreachable!("6s+1 is congruent to 1 or 5 mod 6"),
    };
    let d = match n % 12 {
        11 | 7 => 4 * j - 1,
        _ => 4 * j + 1,
    };
    u64::try_from(d).expect("degree fits in u64")
}
