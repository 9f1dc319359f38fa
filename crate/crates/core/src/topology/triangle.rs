use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, CENTER};
use crate::word::{commutator, product, Word};

pub const A: u32 = 0;
pub const B: u32 = 1;
pub const C: u32 = 2;
pub const Z: u32 = 3;

/// Exponents `(p, q, r)` of a triangle group, pairwise coprime and each at
/// least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleParams {
    p: i64,
    q: i64,
    r: i64,
}

impl TriangleParams {
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        if p < 2 || q < 2 || r < 2 {
            return Err(Error::params(format!(
                "triangle exponents must be at least 2, got ({p}, {q}, {r})"
            )));
        }
        if p.gcd(&q) != 1 || p.gcd(&r) != 1 || q.gcd(&r) != 1 {
            return Err(Error::params(format!(
                "triangle exponents ({p}, {q}, {r}) are not pairwise coprime"
            )));
        }
        // Keeps p*q*r and the Seifert identity comfortably inside i128/i64.
        if p.max(q).max(r) > 1_000_000 {
            return Err(Error::params(
                "triangle exponents above 10^6 are not supported",
            ));
        }
        Ok(Self { p, q, r })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// `1/p + 1/q + 1/r < 1`.
    pub fn is_hyperbolic(&self) -> bool {
        let (p, q, r) = (self.p as i128, self.q as i128, self.r as i128);
        q * r + p * r + p * q < p * q * r
    }
}

/// Seifert invariants with `b₁qr + b₂pr + b₃pq = 1 + e·pqr`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub b1: i64,
    pub b2: i64,
    pub b3: i64,
    pub e: i64,
}

impl SeifertData {
    /// `b₁qr + b₂pr + b₃pq − e·pqr`, which is 1 for valid data.
    pub fn defect(&self, t: &TriangleParams) -> i128 {
        let (p, q, r) = (t.p as i128, t.q as i128, t.r as i128);
        self.b1 as i128 * q * r + self.b2 as i128 * p * r + self.b3 as i128 * p * q
            - self.e as i128 * p * q * r
    }
}

fn inverse_mod(x: i64, m: i64) -> i64 {
    let g = x.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m)
}

/// The solution with `0 ≤ b₁ < p`, `0 ≤ b₂ < q`, `0 ≤ b₃ < r`.
pub fn seifert_invariants(t: &TriangleParams) -> SeifertData {
    let (p, q, r) = (t.p, t.q, t.r);
    let b1 = inverse_mod((q * r) % p, p);
    let b2 = inverse_mod((p * r) % q, q);
    let b3 = inverse_mod((p * q) % r, r);
    let (pw, qw, rw) = (p as i128, q as i128, r as i128);
    let lhs = b1 as i128 * qw * rw + b2 as i128 * pw * rw + b3 as i128 * pw * qw - 1;
    let pqr = pw * qw * rw;
    debug_assert_eq!(lhs % pqr, 0);
    SeifertData {
        b1,
        b2,
        b3,
        e: (lhs / pqr) as i64,
    }
}

/// `⟨a, b, c | a^p, b^q, c^r, abc⟩`.
pub fn triangle_group(t: &TriangleParams) -> Presentation {
    Presentation::new(
        vec!["a", "b", "c"],
        vec![
            Word::power_of(A, t.p),
            Word::power_of(B, t.q),
            Word::power_of(C, t.r),
            abc(),
        ],
    )
    .expect("triangle presentation is well formed")
}

fn abc() -> Word {
    product(&[Word::generator(A), Word::generator(B), Word::generator(C)])
}

/// Fundamental group of the Brieskorn sphere `Σ(p, q, r)`: `z` central,
/// `a^p = z^-b₁`, `b^q = z^-b₂`, `c^r = z^-b₃`, `abc = z^-e`. The central
/// generator is marked as `center`.
pub fn brieskorn_pi1(t: &TriangleParams) -> Presentation {
    let s = seifert_invariants(t);
    let z = Word::generator(Z);
    let relators = vec![
        commutator(&Word::generator(A), &z),
        commutator(&Word::generator(B), &z),
        commutator(&Word::generator(C), &z),
        Word::power_of(A, t.p).mul(&z.pow(s.b1)),
        Word::power_of(B, t.q).mul(&z.pow(s.b2)),
        Word::power_of(C, t.r).mul(&z.pow(s.b3)),
        abc().mul(&z.pow(s.e)),
    ];
    Presentation::new(vec!["a", "b", "c", "z"], relators)
        .and_then(|p| p.with_marked(CENTER, z))
        .expect("brieskorn presentation is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TriangleParams::new(2, 4, 6).is_err());
        assert!(TriangleParams::new(1, 3, 5).is_err());
        assert!(TriangleParams::new(2, 3, 7).unwrap().is_hyperbolic());
        assert!(!TriangleParams::new(2, 3, 5).unwrap().is_hyperbolic());
    }

    #[test]
    fn seifert_values() {
        let t = TriangleParams::new(2, 3, 7).unwrap();
        assert_eq!(
            seifert_invariants(&t),
            SeifertData {
                b1: 1,
                b2: 2,
                b3: 6,
                e: 2
            }
        );
        let t = TriangleParams::new(2, 3, 5).unwrap();
        let s = seifert_invariants(&t);
        assert_eq!((s.b1, s.b2, s.b3, s.e), (1, 1, 1, 1));
        assert_eq!(s.defect(&t), 1);
    }

    #[test]
    fn presentations() {
        let t = TriangleParams::new(2, 3, 7).unwrap();
        assert_eq!(
            triangle_group(&t).to_string(),
            "a, b, c\na^2\nb^3\nc^7\na b c\n"
        );
        let pi = brieskorn_pi1(&t);
        assert_eq!(pi.relators().len(), 7);
        assert_eq!(pi.show(&pi.relators()[5]), "c^7 z^6");
        assert_eq!(pi.show(&pi.relators()[6]), "a b c z^2");
        assert_eq!(pi.marked(CENTER), Some(&Word::generator(Z)));
    }
}
