//! Exact rational scalars and small dense matrices over ℚ.
//!
//! Everything downstream (companion matrices, invariant forms, change of
//! basis, unipotent witnesses) is computed with these types, so no value is
//! ever rounded. Matrices are plain values: every operation returns a new
//! matrix and leaves its inputs untouched.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse(0, "empty rational"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n.trim())?;
        let d = parse_int(d.trim())?;
        if d.is_zero() {
            return Err(Error::parse(0, format!("zero denominator in {t:?}")));
        }
        Ok(Rational::new(n, d))
    } else {
        Ok(Rational::from_integer(parse_int(t)?))
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(0, format!("not an integer: {s:?}")));
    }
    BigInt::from_str(s).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A rational that may be written in JSON either as an integer or a `"p/q"` string.
#[derive(Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Int(i64),
    Text(String),
}

impl JsonScalar {
    fn into_rational<E: de::Error>(self) -> std::result::Result<Rational, E> {
        match self {
            JsonScalar::Int(n) => Ok(q(n)),
            JsonScalar::Text(s) => parse_rational(&s).map_err(E::custom),
        }
    }
}

/// Serde adapter for a single rational stored as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        JsonScalar::deserialize(d)?.into_rational()
    }
}

/// Column vector over ℚ with a fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorQ(Vec<Rational>);

impl VectorQ {
    pub fn new(entries: Vec<Rational>) -> Self {
        VectorQ(entries)
    }

    pub fn zeros(n: usize) -> Self {
        VectorQ(vec![Rational::zero(); n])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        VectorQ(entries.iter().map(|&x| q(x)).collect())
    }

    /// The `i`-th standard basis vector (0-based) of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn scale(&self, k: &Rational) -> VectorQ {
        VectorQ(self.0.iter().map(|x| x * k).collect())
    }

    /// Rescales by a positive rational so the entries are coprime integers.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> VectorQ {
        match primitive_scale(&self.0) {
            Some(k) => self.scale(&k),
            None => self.clone(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

/// Positive scalar that turns `xs` into coprime integers, or `None` if all are zero.
pub(crate) fn primitive_scale(xs: &[Rational]) -> Option<Rational> {
    if xs.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm_den = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let gcd_num = xs
        .iter()
        .map(|x| (x * Rational::from_integer(lcm_den.clone())).to_integer())
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    Some(Rational::new(lcm_den, gcd_num))
}

impl Index<usize> for VectorQ {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &VectorQ {
    type Output = VectorQ;
    fn add(self, rhs: &VectorQ) -> VectorQ {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        VectorQ(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &VectorQ {
    type Output = VectorQ;
    fn sub(self, rhs: &VectorQ) -> VectorQ {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        VectorQ(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for VectorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for VectorQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for x in &self.0 {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for VectorQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<JsonScalar>::deserialize(d)?;
        raw.into_iter()
            .map(JsonScalar::into_rational)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(VectorQ)
    }
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(MatrixQ { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(MatrixQ {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[VectorQ]) -> Result<Self> {
        let n = cols.first().map_or(0, VectorQ::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i].clone();
            }
        }
        Ok(m)
    }

    /// `I + value * E_{row,col}` (0-based indices).
    pub fn elementary(n: usize, row: usize, col: usize, value: Rational) -> Self {
        let mut m = Self::identity(n);
        m.data[row * n + col] += value;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> VectorQ {
        VectorQ((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn with_entry(&self, r: usize, c: usize, value: Rational) -> Self {
        let mut m = self.clone();
        m.data[r * self.cols + c] = value;
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        m.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &VectorQ) -> Result<VectorQ> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(VectorQ(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.entries())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// First position (row-major, 0-based) where the two matrices differ.
    pub fn first_difference(&self, other: &MatrixQ) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// Reduced row echelon form and the pivot columns. Pivots are chosen
    /// leftmost column first, topmost usable row first.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let x = &m.data[r * m.cols + j] * &inv;
                m.data[r * m.cols + j] = x;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let t = &factor * m.get(r, j);
                    m.data[i * m.cols + j] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order, each with a 1 in its free coordinate.
    pub fn nullspace(&self) -> Vec<VectorQ> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                VectorQ(v)
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) / &pivot;
                for j in c..n {
                    let t = &factor * m.get(c, j);
                    m.data[i * n + j] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        self.pow_bounded(k, u64::MAX)
    }

    /// Like [`MatrixQ::pow`], but fails with [`Error::EntryTooLarge`] as soon
    /// as an intermediate entry needs more than `max_bits` bits.
    pub fn pow_bounded(&self, k: i64, max_bits: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
                check_bits(&result, max_bits)?;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
                check_bits(&base, max_bits)?;
            }
        }
        Ok(result)
    }

    /// Bits in the largest numerator or denominator.
    pub fn max_entry_bits(&self) -> u64 {
        self.data
            .iter()
            .map(|x| x.numer().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &MatrixQ, b: &MatrixQ) -> Result<Self> {
        let ab = a.mul(b)?;
        ab.mul(&a.inverse()?)?.mul(&b.inverse()?)
    }

    /// `t⁻¹ m t`.
    pub fn conjugate_by(&self, t: &MatrixQ) -> Result<Self> {
        t.inverse()?.mul(self)?.mul(t)
    }

    /// `ᵀm · g · m`.
    pub fn congruence(&self, g: &MatrixQ) -> Result<Self> {
        self.transpose().mul(g)?.mul(self)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

impl Mul for &MatrixQ {
    type Output = MatrixQ;

    /// Panics on a dimension mismatch; use [`MatrixQ::mul`] for a fallible product.
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        MatrixQ::mul(self, rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &MatrixQ {
    type Output = MatrixQ;
    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix dimensions must agree"
        );
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MatrixQ {
    type Output = MatrixQ;
    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix dimensions must agree"
        );
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &MatrixQ {
    type Output = MatrixQ;
    fn neg(self) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for MatrixQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<JsonScalar>>::deserialize(d)?;
        let rows = raw
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(JsonScalar::into_rational)
                    .collect::<std::result::Result<Vec<_>, D::Error>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MatrixQ::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Exact product `a · b`.
fn check_bits(m: &MatrixQ, max_bits: u64) -> Result<()> {
    let bits = m.max_entry_bits();
    if bits > max_bits {
        return Err(Error::EntryTooLarge(bits));
    }
    Ok(())
}

pub fn mat_mul(a: &MatrixQ, b: &MatrixQ) -> Result<MatrixQ> {
    a.mul(b)
}

/// Exact inverse; fails with [`Error::Singular`] when `det m = 0`.
pub fn mat_inverse(m: &MatrixQ) -> Result<MatrixQ> {
    m.inverse()
}

/// Kernel basis in the deterministic order of [`MatrixQ::nullspace`].
pub fn solve_nullspace(m: &MatrixQ) -> Vec<VectorQ> {
    m.nullspace()
}

/// Smallest nonzero integers `(m, n)` with `m·a + n·b = 0`, `n > 0`. Requires `a ≠ 0`.
pub(crate) fn cancelling_pair(a: &Rational, b: &Rational) -> Option<(BigInt, BigInt)> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    // m = -(b/a)·n
    let r = -(b / a);
    Some((r.numer().clone(), r.denom().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_a() -> MatrixQ {
        MatrixQ::from_i64(&[[0, 0, 0, -1], [1, 0, 0, -3], [0, 1, 0, -4], [0, 0, 1, -3]]).unwrap()
    }

    fn sample_b() -> MatrixQ {
        MatrixQ::from_i64(&[[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, -2], [0, 0, 1, 0]]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = sample_a();
        assert_eq!(mat_mul(&MatrixQ::identity(4), &a).unwrap(), a);
        assert_eq!(mat_mul(&a, &MatrixQ::identity(4)).unwrap(), a);
    }

    #[test]
    fn inverse_round_trip() {
        let a = sample_a();
        let inv = mat_inverse(&a).unwrap();
        assert!(mat_mul(&a, &inv).unwrap().is_identity());
        let b = sample_b();
        assert!(mat_mul(&b, &mat_inverse(&b).unwrap())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn a_inverse_b_has_expected_last_column() {
        let c = &mat_inverse(&sample_a()).unwrap() * &sample_b();
        let expected =
            MatrixQ::from_i64(&[[1, 0, 0, 3], [0, 1, 0, 2], [0, 0, 1, 3], [0, 0, 0, 1]]).unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn sign_involution_is_its_own_inverse() {
        let s = MatrixQ::diagonal(&[q(1), q(-1), q(1), q(-1)]);
        assert_eq!(mat_inverse(&s).unwrap(), s);
        assert_eq!(
            mat_inverse(&MatrixQ::identity(4)).unwrap(),
            MatrixQ::identity(4)
        );
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let m = MatrixQ::from_i64(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let a = MatrixQ::zeros(2, 3);
        let b = MatrixQ::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            MatrixQ::new(2, 2, vec![q(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn nullspace_edge_cases() {
        assert_eq!(solve_nullspace(&MatrixQ::zeros(2, 2)).len(), 2);
        assert!(solve_nullspace(&MatrixQ::identity(4)).is_empty());
        let m = MatrixQ::from_i64(&[[1, 2, 3], [2, 4, 6]]).unwrap();
        let ker = solve_nullspace(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
        assert_eq!(ker[0], VectorQ::from_i64(&[-2, 1, 0]));
    }

    #[test]
    fn determinant_of_companion_is_constant_term() {
        assert_eq!(sample_a().determinant().unwrap(), q(1));
        let m = MatrixQ::from_i64(&[[2, 1], [7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(1));
    }

    #[test]
    fn negative_powers() {
        let a = sample_a();
        let p = a.pow(-3).unwrap();
        assert!((&p * &a.pow(3).unwrap()).is_identity());
        assert!(a.pow(0).unwrap().is_identity());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-2/3").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/-").is_err());
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn primitive_rescaling() {
        let v = VectorQ::new(vec![ratio(2, 3), q(-4), ratio(1, 3)]);
        assert_eq!(v.primitive(), VectorQ::from_i64(&[2, -12, 1]));
        assert_eq!(VectorQ::zeros(3).primitive(), VectorQ::zeros(3));
    }

    #[test]
    fn json_accepts_ints_and_strings() {
        let m: MatrixQ = serde_json::from_str(r#"[[1, "2/4"], ["-3", 0]]"#).unwrap();
        assert_eq!(*m.get(0, 1), ratio(1, 2));
        let back = serde_json::to_string(&m).unwrap();
        assert_eq!(back, r#"[["1","1/2"],["-3","0"]]"#);
        assert!(serde_json::from_str::<MatrixQ>(r#"[[1, 2], [3]]"#).is_err());
    }

    #[test]
    fn cancelling_pairs() {
        let (m, n) = cancelling_pair(&q(-36), &q(72)).unwrap();
        assert_eq!(
            Rational::from_integer(m) * q(-36) + Rational::from_integer(n.clone()) * q(72),
            q(0)
        );
        assert!(n > BigInt::zero());
        assert!(cancelling_pair(&q(0), &q(1)).is_none());
    }
}
