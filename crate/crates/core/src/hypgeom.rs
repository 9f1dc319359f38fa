//! Numeric cross-check of the fixed-knot word in the Poincaré disk.
//!
//! Isometries are matrices `[[α, β], [β̄, ᾱ]]` with `|α|² − |β|² = 1`,
//! acting by `z ↦ (αz + β)/(β̄z + ᾱ)` and compared up to sign. Words act on
//! the right, so `x₁x₂…xₙ` evaluates to `M(xₙ)…M(x₂)M(x₁)`.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::enumeration::{Certificate, Check, Claim, Evidence};
use crate::error::{Error, Result};
use crate::topology::{
    fixed_knot_word, fixed_knot_word_simplified_q3, triangle_group, TriangleParams,
};
use crate::word::{reduce, Word};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// For comparisons against `±identity` and between matrices.
    pub identity: f64,
    /// For translation lengths.
    pub length: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-9,
            length: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskIsometry {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl DiskIsometry {
    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// `|α|² − |β|²`, which is 1 for a disk isometry.
    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.alpha.re
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }

    /// Complex derivative of the Möbius map at `z`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let d = self.beta.conj() * z + self.alpha.conj();
        (d * d).inv()
    }

    /// Largest entry difference from `other` or from `−other`, whichever is
    /// smaller.
    pub fn distance_up_to_sign(&self, other: &Self) -> f64 {
        let plus = (self.alpha - other.alpha)
            .norm()
            .max((self.beta - other.beta).norm());
        let minus = (self.alpha + other.alpha)
            .norm()
            .max((self.beta + other.beta).norm());
        plus.min(minus)
    }

    pub fn distance_to_identity(&self) -> f64 {
        self.distance_up_to_sign(&Self::identity())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| base * acc)
    }
}

impl Mul for DiskIsometry {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self {
            alpha: self.alpha * o.alpha + self.beta * o.beta.conj(),
            beta: self.alpha * o.beta + self.beta * o.alpha.conj(),
        }
    }
}

/// The hyperbolic translation taking 0 to `p`.
pub fn translation(p: Complex64) -> Result<DiskIsometry> {
    let s = 1.0 - p.norm_sqr();
    if s.is_nan() || s <= 0.0 {
        return Err(Error::OutsideDisk(format!("{p}")));
    }
    let k = s.sqrt().recip();
    Ok(DiskIsometry {
        alpha: Complex64::new(k, 0.0),
        beta: p * k,
    })
}

/// Counterclockwise rotation by `angle` about `center`.
pub fn rotation_about(center: Complex64, angle: f64) -> Result<DiskIsometry> {
    let t = translation(center)?;
    let r = DiskIsometry {
        alpha: Complex64::from_polar(1.0, angle / 2.0),
        beta: Complex64::new(0.0, 0.0),
    };
    Ok(t * r * t.inverse())
}

/// The triangle with angles `π/2`, `π/q`, `π/r`: right angle at the origin,
/// the `π/q` vertex on the positive imaginary axis, the `π/r` vertex on the
/// positive real axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleGeometry {
    pub q: i64,
    pub r: i64,
    pub angles: [f64; 3],
    /// Between the `π/2` and `π/q` vertices.
    pub side_a: f64,
    /// Between the `π/2` and `π/r` vertices.
    pub side_b: f64,
    /// Between the `π/q` and `π/r` vertices.
    pub side_c: f64,
    pub vertex_right: (f64, f64),
    pub vertex_q: (f64, f64),
    pub vertex_r: (f64, f64),
}

/// `cosh` of the side between the vertices with angles `x` and `y`, opposite
/// the angle `z`.
fn cosh_side(x: f64, y: f64, z: f64) -> f64 {
    (x.cos() * y.cos() + z.cos()) / (x.sin() * y.sin())
}

pub fn triangle_sides(q: i64, r: i64) -> Result<TriangleGeometry> {
    if q < 2 || r < 2 || (q - 2) * (r - 2) <= 4 {
        return Err(Error::params(format!("(2, {q}, {r}) is not hyperbolic")));
    }
    let (right, aq, ar) = (PI / 2.0, PI / q as f64, PI / r as f64);
    let side_a = cosh_side(right, aq, ar).acosh();
    let side_b = cosh_side(right, ar, aq).acosh();
    let side_c = cosh_side(aq, ar, right).acosh();
    Ok(TriangleGeometry {
        q,
        r,
        angles: [right, aq, ar],
        side_a,
        side_b,
        side_c,
        vertex_right: (0.0, 0.0),
        vertex_q: (0.0, (side_a / 2.0).tanh()),
        vertex_r: ((side_b / 2.0).tanh(), 0.0),
    })
}

impl TriangleGeometry {
    pub fn perimeter(&self) -> f64 {
        self.side_a + self.side_b + self.side_c
    }

    fn point(v: (f64, f64)) -> Complex64 {
        Complex64::new(v.0, v.1)
    }

    /// Rotations `a` (order 2, origin), `b` (order q) and `c` (order r).
    pub fn generators(&self) -> [DiskIsometry; 3] {
        let rot = |v, n: i64| {
            rotation_about(Self::point(v), 2.0 * PI / n as f64)
                .expect("triangle vertices lie inside the disk")
        };
        [
            rot(self.vertex_right, 2),
            rot(self.vertex_q, self.q),
            rot(self.vertex_r, self.r),
        ]
    }
}

pub fn generators(q: i64, r: i64) -> Result<[DiskIsometry; 3]> {
    Ok(triangle_sides(q, r)?.generators())
}

/// Right-action evaluation: each letter multiplies on the left.
pub fn evaluate_word(w: &Word, assignment: &[DiskIsometry]) -> Result<DiskIsometry> {
    let mut m = DiskIsometry::identity();
    for s in w.syllables() {
        let x = assignment
            .get(s.generator as usize)
            .ok_or(Error::GeneratorOutOfRange {
                index: s.generator,
                rank: assignment.len(),
            })?;
        m = x.pow(s.exponent) * m;
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum IsometryClass {
    Elliptic { angle: f64 },
    Parabolic,
    Hyperbolic { translation_length: f64 },
}

/// Classification by `|trace|`; `±identity` is elliptic of angle 0.
pub fn classify(m: &DiskIsometry, tol: f64) -> IsometryClass {
    if m.distance_to_identity() <= tol {
        return IsometryClass::Elliptic { angle: 0.0 };
    }
    let t = m.trace().abs();
    if (t - 2.0).abs() <= tol {
        IsometryClass::Parabolic
    } else if t < 2.0 {
        IsometryClass::Elliptic {
            angle: 2.0 * (t / 2.0).acos(),
        }
    } else {
        IsometryClass::Hyperbolic {
            translation_length: translation_length(m),
        }
    }
}

/// `2·arccosh(|trace|/2)`, or 0 when `|trace| ≤ 2`.
pub fn translation_length(m: &DiskIsometry) -> f64 {
    2.0 * (m.trace().abs() / 2.0).max(1.0).acosh()
}

/// Largest imaginary part of `α`, `β`; zero exactly when the real diameter
/// is mapped to itself.
pub fn real_axis_deviation(m: &DiskIsometry) -> f64 {
    m.alpha.im.abs().max(m.beta.im.abs())
}

pub fn preserves_real_axis(m: &DiskIsometry, tol: f64) -> bool {
    real_axis_deviation(m) <= tol
}

/// The mirror image of the fixed-knot word, with the exponents of the outer
/// conjugator negated.
pub fn mirror_fixed_knot_word(q: i64, r: i64) -> Word {
    let (h, k) = ((q + 1) / 2, (r + 1) / 2);
    reduce([(2, -k), (1, -h), (0, 1), (1, h), (2, k), (0, 1)])
}

/// Numeric checks of the fixed-knot word for `Δ(2, q, r)`:
///
/// 1. each relator evaluates to `±identity`;
/// 2. `y = g⁻¹aga` with `g = b^((q−1)/2) c^((r−1)/2)`;
/// 3. `y` is hyperbolic;
/// 4. its translation length is `2(A + B + C)`;
/// 5. it preserves the real axis;
/// 6. for `q = 3`, `y` equals the simplified word.
pub fn verify_fixed_word(q: i64, r: i64, tol: Tolerances) -> Result<Certificate> {
    if !(tol.identity > 0.0 && tol.length > 0.0) {
        return Err(Error::params("tolerances must be positive"));
    }
    let y = fixed_knot_word(q, r)?;
    let geom = triangle_sides(q, r)?;
    let gens = geom.generators();
    let delta = triangle_group(&TriangleParams::new(2, q, r)?);
    let mut checks = Vec::new();

    for rel in delta.relators() {
        let m = evaluate_word(rel, &gens)?;
        checks.push(Check::new(
            format!("relator {} is identity", delta.show(rel)),
            m.distance_to_identity(),
            tol.identity,
        ));
    }

    let my = evaluate_word(&y, &gens)?;
    let g = reduce([(1, (q - 1) / 2), (2, (r - 1) / 2)]);
    let conj = g
        .inverse()
        .mul(&Word::generator(0))
        .mul(&g)
        .mul(&Word::generator(0));
    let mconj = evaluate_word(&conj, &gens)?;
    checks.push(Check::new(
        "y equals g^-1 a g a",
        my.distance_up_to_sign(&mconj),
        tol.identity,
    ));

    let trace = my.trace().abs();
    checks.push(Check::new(
        "y is hyperbolic",
        (2.0 + tol.identity - trace).max(0.0),
        0.0,
    ));

    let length = translation_length(&my);
    let expected = 2.0 * geom.perimeter();
    checks.push(Check::new(
        "translation length equals 2(A+B+C)",
        (length - expected).abs(),
        tol.length,
    ));
    checks.push(Check::new(
        "y preserves the real axis",
        real_axis_deviation(&my),
        tol.identity,
    ));

    if q == 3 {
        let simple = fixed_knot_word_simplified_q3(r)?;
        let ms = evaluate_word(&simple, &gens)?;
        checks.push(Check::new(
            "y equals the simplified q = 3 word",
            my.distance_up_to_sign(&ms),
            tol.identity,
        ));
    }

    let mirror = evaluate_word(&mirror_fixed_knot_word(q, r), &gens)?;
    let passed = checks.iter().all(|c| c.passed);
    let claim = if passed {
        Claim::GeometryVerified
    } else {
        Claim::GeometryMismatch
    };
    let mut cert = Certificate::new(claim, format!("geom-verify q={q} r={r}"))
        .with_parameter("q", q)
        .with_parameter("r", r)
        .with_parameter("fixed_knot_word", delta.show(&y))
        .with_parameter("tolerance_identity", tol.identity)
        .with_parameter("tolerance_length", tol.length)
        .with_parameter("side_a", geom.side_a)
        .with_parameter("side_b", geom.side_b)
        .with_parameter("side_c", geom.side_c)
        .with_parameter("expected_length", expected)
        .with_parameter("measured_length", length)
        .with_parameter(
            "diagnostic_mirror_word",
            delta.show(&mirror_fixed_knot_word(q, r)),
        )
        .with_parameter("diagnostic_mirror_length", translation_length(&mirror))
        .with_parameter(
            "diagnostic_mirror_axis_deviation",
            real_axis_deviation(&mirror),
        )
        .with_evidence(Evidence::Geometry { checks });
    if !passed {
        cert = cert.with_note(
            "diagnostic: the mirror word (outer conjugator exponents negated) is evaluated for comparison; it is not part of the verdict",
        );
    }
    Ok(cert)
}
