//! Smith normal form over the integers.
//!
//! The reduction runs in checked `i64` arithmetic; any overflow aborts with
//! [`Error::Overflow`]. [`invariant_factors`] retries such inputs in
//! arbitrary precision, so callers that only need the diagonal never see the
//! overflow.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.mul_checked(&other[(k, j)])?;
                    out[(i, j)] = out[(i, j)].add_checked(&prod)?;
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) -> Result<()> {
        for j in 0..self.cols {
            let delta = self[(source, j)].mul_checked(factor)?;
            self[(target, j)] = self[(target, j)].add_checked(&delta)?;
        }
        Ok(())
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) -> Result<()> {
        for i in 0..self.rows {
            let delta = self[(i, source)].mul_checked(factor)?;
            self[(i, target)] = self[(i, target)].add_checked(&delta)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].neg_checked()?;
        }
        Ok(())
    }
}

impl Matrix<i64> {
    pub fn to_big(&self) -> Matrix<BigInt> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Integer arithmetic the reduction needs. Fixed-width implementations
/// report overflow instead of wrapping.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Absolute value, used only for pivot comparison.
    fn magnitude(&self) -> BigInt;
    fn add_checked(&self, other: &Self) -> Result<Self>;
    fn mul_checked(&self, other: &Self) -> Result<Self>;
    fn neg_checked(&self) -> Result<Self>;
    /// Truncating quotient and remainder.
    fn div_rem_checked(&self, other: &Self) -> Result<(Self, Self)>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn magnitude(&self) -> BigInt {
        BigInt::from(*self).abs()
    }
    fn add_checked(&self, other: &Self) -> Result<Self> {
        self.checked_add(*other)
            .ok_or(Error::Overflow("smith normal form"))
    }
    fn mul_checked(&self, other: &Self) -> Result<Self> {
        self.checked_mul(*other)
            .ok_or(Error::Overflow("smith normal form"))
    }
    fn neg_checked(&self) -> Result<Self> {
        self.checked_neg()
            .ok_or(Error::Overflow("smith normal form"))
    }
    fn div_rem_checked(&self, other: &Self) -> Result<(Self, Self)> {
        let q = self
            .checked_div(*other)
            .ok_or(Error::Overflow("smith normal form"))?;
        let r = self
            .checked_rem(*other)
            .ok_or(Error::Overflow("smith normal form"))?;
        Ok((q, r))
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude(&self) -> BigInt {
        self.abs()
    }
    fn add_checked(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn mul_checked(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn neg_checked(&self) -> Result<Self> {
        Ok(-self)
    }
    fn div_rem_checked(&self, other: &Self) -> Result<(Self, Self)> {
        Ok((self / other, self % other))
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Smith normal form in checked 64-bit arithmetic.
pub fn smith_normal_form(m: &Matrix<i64>) -> Result<SmithForm<i64>> {
    reduce_generic(m.clone())
}

/// Smith normal form in arbitrary precision; never fails.
pub fn smith_normal_form_big(m: &Matrix<BigInt>) -> SmithForm<BigInt> {
    reduce_generic(m.clone()).expect("arbitrary-precision arithmetic cannot overflow")
}

/// Diagonal of the Smith normal form, falling back to arbitrary precision
/// when 64-bit arithmetic overflows.
pub fn invariant_factors(m: &Matrix<i64>) -> Vec<BigInt> {
    match smith_normal_form(m) {
        Ok(snf) => snf.diagonal().into_iter().map(BigInt::from).collect(),
        Err(_) => smith_normal_form_big(&m.to_big()).diagonal(),
    }
}

fn reduce_generic<T: Scalar>(mut a: Matrix<T>) -> Result<SmithForm<T>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut u = Matrix::<T>::identity(rows);
    let mut v = Matrix::<T>::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero() {
                        let m = a[(i, j)].magnitude();
                        if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                            best = Some((i, j, m));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return Ok(SmithForm { d: a, u, v });
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, t)].div_rem_checked(&pivot)?;
                let f = q.neg_checked()?;
                a.add_row_multiple(i, t, &f)?;
                u.add_row_multiple(i, t, &f)?;
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(t, j)].div_rem_checked(&pivot)?;
                let f = q.neg_checked()?;
                a.add_col_multiple(j, t, &f)?;
                v.add_col_multiple(j, t, &f)?;
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into row t and reduce again.
            let mut offending = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    let (_, r) = a[(i, j)].div_rem_checked(&pivot)?;
                    if !r.is_zero() {
                        offending = Some(i);
                        break 'scan;
                    }
                }
            }
            match offending {
                Some(i) => {
                    a.add_row_multiple(t, i, &T::one())?;
                    u.add_row_multiple(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    Ok(SmithForm { d: a, u, v })
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return <BigInt as One>::one();
    }
    let mut a = m.clone();
    let mut sign = <BigInt as One>::one();
    let mut prev = <BigInt as One>::one();
    for k in 0..n - 1 {
        if Zero::is_zero(&a[(k, k)]) {
            match (k + 1..n).find(|&i| !Zero::is_zero(&a[(i, k)])) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return <BigInt as Zero>::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Convert a nonnegative big integer to `u64`, signalling overflow.
pub(crate) fn to_u64(x: &BigInt, context: &'static str) -> Result<u64> {
    x.to_u64().ok_or(Error::Overflow(context))
}
