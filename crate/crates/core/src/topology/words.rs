use num_integer::Integer;

use super::triangle::{TriangleParams, A, B, C};
use crate::error::{Error, Result};
use crate::word::{reduce, Word};

/// `c^((r+1)/2) b^((q+1)/2) a b^-((q+1)/2) c^-((r+1)/2) a` in `Δ(2, q, r)`,
/// for odd coprime `q, r` with the triangle hyperbolic.
pub fn fixed_knot_word(q: i64, r: i64) -> Result<Word> {
    if q % 2 == 0 || r % 2 == 0 {
        return Err(Error::params(format!(
            "q = {q} and r = {r} must both be odd"
        )));
    }
    let t = TriangleParams::new(2, q, r)?;
    if !t.is_hyperbolic() {
        return Err(Error::params(format!(
            "(2, {q}, {r}) is not hyperbolic; the fixed-knot word needs 1/2 + 1/q + 1/r < 1"
        )));
    }
    Ok(fixed_knot_word_formula(q, r))
}

/// The same formula without the hyperbolicity check, for the spherical
/// case `(3, 5)`.
pub fn fixed_knot_word_formula(q: i64, r: i64) -> Word {
    let (h, k) = ((q + 1) / 2, (r + 1) / 2);
    reduce([(C, k), (B, h), (A, 1), (B, -h), (C, -k), (A, 1)])
}

/// `c^((r+3)/2) a c^-((r+3)/2) a`, equal to the fixed-knot word when q = 3.
pub fn fixed_knot_word_simplified_q3(r: i64) -> Result<Word> {
    if r < 7 || r.gcd(&6) != 1 {
        return Err(Error::params(format!(
            "r = {r} must be at least 7 and coprime to 6"
        )));
    }
    let k = (r + 3) / 2;
    Ok(reduce([(C, k), (A, 1), (C, -k), (A, 1)]))
}

/// `(b⁻¹a)⁵ a (b⁻¹a)⁻⁵ a⁻¹` in the trefoil group `⟨a, b | a² b⁻³⟩`.
pub fn torus_section_word() -> Word {
    let t = reduce([(B, -1), (A, 1)]).pow(5);
    t.mul(&Word::generator(A))
        .mul(&t.inverse())
        .mul(&Word::power_of(A, -1))
}
