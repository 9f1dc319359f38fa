//! Abelianization via the Smith normal form of the exponent-sum matrix
//! (rows are relators, columns are generators).

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::smith::{invariant_factors, to_u64, Matrix};

/// `ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` with `t₁ | t₂ | … | t_k`, all `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self {
            free_rank: 0,
            torsion: if order > 1 { vec![order] } else { Vec::new() },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `ℤ`, the abelianization of a knot group.
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u64, |acc, &t| acc.checked_mul(t))
    }

    /// Checks the divisibility chain and the `tᵢ ≥ 2` bound.
    pub fn is_well_formed(&self) -> bool {
        self.torsion.iter().all(|&t| t >= 2) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// From a Smith diagonal of a matrix with `cols` columns.
    pub fn from_diagonal(diagonal: &[BigInt], cols: usize) -> Result<Self> {
        let nonzero = diagonal.iter().filter(|d| **d != BigInt::from(0)).count();
        let mut torsion = Vec::new();
        for d in diagonal {
            if *d > BigInt::one() {
                torsion.push(to_u64(d, "abelian invariant")?);
            }
        }
        Ok(Self {
            free_rank: cols - nonzero,
            torsion,
        })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" x "))
    }
}

/// Rows = relators, columns = generators.
pub fn relation_matrix(p: &Presentation) -> Matrix<i64> {
    let rows = p
        .relators()
        .iter()
        .map(|r| r.exponent_sums(p.rank()))
        .collect();
    Matrix::from_rows(rows, p.rank())
}

pub fn abelianization(p: &Presentation) -> Result<AbelianInvariants> {
    let m = relation_matrix(p);
    AbelianInvariants::from_diagonal(&invariant_factors(&m), m.cols())
        .map_err(|_| Error::Overflow("abelianization"))
}
