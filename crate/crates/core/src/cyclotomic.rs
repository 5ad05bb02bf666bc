//! Integer polynomials assembled from cyclotomic factors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};

/// Polynomial with integer coefficients, stored in ascending degree with no
/// trailing zeros. The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `X - c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    /// `X^n + c`.
    pub fn binomial(n: usize, c: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] += c;
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Content: gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Accepts either `X^4 + 3X^3 - 2X + 1` (terms in any order, `*` optional,
/// `x` or `X`) or an ascending comma-separated list `1, 3, 4, 3, 1`.
impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        if !t.contains(['x', 'X']) {
            return parse_coefficient_list(t);
        }
        parse_terms(t)
    }
}

fn parse_coefficient_list(t: &str) -> Result<IntPolynomial> {
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(t);
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for part in inner.split(',') {
        let p = part.trim();
        let c = BigInt::from_str(p)
            .map_err(|_| Error::parse(offset, format!("bad coefficient {p:?}")))?;
        coeffs.push(c);
        offset += part.len() + 1;
    }
    Ok(IntPolynomial::new(coeffs))
}

fn parse_terms(t: &str) -> Result<IntPolynomial> {
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let start = i;
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(Error::parse(i, "expected '+' or '-' between terms"));
        }
        first = false;
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > digits_start {
            BigInt::from_str(&t[digits_start..i])
                .map_err(|e| Error::parse(digits_start, e.to_string()))?
        } else {
            BigInt::one()
        };
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            skip_ws(&mut i);
        }
        let mut power = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            power = 1;
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                skip_ws(&mut i);
                let braced = i < bytes.len() && bytes[i] == b'{';
                if braced {
                    i += 1;
                }
                let p_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == p_start {
                    return Err(Error::parse(i, "expected an exponent"));
                }
                power = t[p_start..i]
                    .parse()
                    .ok()
                    .filter(|&p: &usize| p <= 1024)
                    .ok_or_else(|| Error::parse(p_start, "exponent out of range"))?;
                if braced {
                    if i < bytes.len() && bytes[i] == b'}' {
                        i += 1;
                    } else {
                        return Err(Error::parse(i, "expected '}'"));
                    }
                }
            }
        } else if i == digits_start {
            return Err(Error::parse(start, "expected a term"));
        }
        let entry = acc.entry(power).or_default();
        if negative {
            *entry -= coeff;
        } else {
            *entry += coeff;
        }
    }
    let deg = acc.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (p, c) in acc {
        coeffs[p] = c;
    }
    Ok(IntPolynomial::new(coeffs))
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64_vec() {
            Some(v) => v.serialize(s),
            None => self
                .coeffs
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Ok(IntPolynomial::from_i64(&v))
    }
}

/// The `n`-th cyclotomic polynomial, by dividing `X^n - 1` by `Φ_d` for each
/// proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u32) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = IntPolynomial::binomial(n as usize, -1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (quot, rem) = p
                .div_rem_monic(&cyclotomic_poly(d))
                .expect("cyclotomic polynomials are monic");
            debug_assert!(rem.is_zero());
            p = quot;
        }
    }
    p
}

/// Multiset of rational exponents in `[0, 1)`, closed under `x ↦ 1 - x (mod 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    entries: Vec<Rational>,
}

impl ExponentVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidExponents("no entries".into()));
        }
        for e in &entries {
            if e.is_negative() || *e >= Rational::one() {
                return Err(Error::InvalidExponents(format!(
                    "{} is outside [0, 1)",
                    format_rational(e)
                )));
            }
        }
        let mut sorted: Vec<Rational> = entries.clone();
        sorted.sort();
        let mut conj: Vec<Rational> = entries.iter().map(conjugate_exponent).collect();
        conj.sort();
        if sorted != conj {
            return Err(Error::InvalidExponents(
                "multiset is not closed under x -> 1 - x".into(),
            ));
        }
        Ok(ExponentVector { entries })
    }

    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let entries = items
            .iter()
            .map(|s| {
                parse_rational(s.as_ref()).map_err(|_| {
                    Error::InvalidExponents(format!("not a rational: {:?}", s.as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(format_rational).collect()
    }
}

/// A comma or whitespace separated list such as `1/2, 1/2, 1/3, 2/3`.
impl FromStr for ExponentVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix(['(', '['])
            .and_then(|r| r.strip_suffix([')', ']']))
            .unwrap_or(inner);
        let items: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        Self::parse(&items)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        ExponentVector::parse(&raw).map_err(serde::de::Error::custom)
    }
}

fn conjugate_exponent(e: &Rational) -> Rational {
    if e.is_zero() {
        e.clone()
    } else {
        Rational::one() - e
    }
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// `∏ (X - e^{2πi e_j})`, assembled from whole Galois orbits. Each denominator
/// `n` must contribute every primitive `n`-th root equally often.
pub fn from_exponents(e: &ExponentVector) -> Result<IntPolynomial> {
    let mut by_denominator: BTreeMap<u32, BTreeMap<u32, u32>> = BTreeMap::new();
    for x in e.entries() {
        let n = x
            .denom()
            .to_u32()
            .ok_or_else(|| Error::InvalidExponents("denominator too large".into()))?;
        let k = x.numer().to_u32().unwrap_or(0);
        *by_denominator.entry(n).or_default().entry(k).or_default() += 1;
    }
    let mut product = IntPolynomial::one();
    for (n, numerators) in by_denominator {
        // A whole orbit has φ(n) ≥ √(n/2) members.
        if u64::from(n) > 2 * (e.len() as u64).pow(2) {
            return Err(Error::InvalidExponents(format!(
                "too few exponents for a whole Galois orbit of denominator {n}"
            )));
        }
        let orbit: Vec<u32> = if n == 1 {
            vec![0]
        } else {
            (1..n).filter(|k| k.gcd(&n) == 1).collect()
        };
        debug_assert_eq!(orbit.len() as u32, euler_phi(n));
        let mult = numerators.get(&orbit[0]).copied().unwrap_or(0);
        let complete = orbit
            .iter()
            .all(|k| numerators.get(k).copied().unwrap_or(0) == mult)
            && numerators.len() == orbit.len();
        if !complete {
            return Err(Error::InvalidExponents(format!(
                "exponents with denominator {n} do not form whole Galois orbits, so the product has non-integer coefficients"
            )));
        }
        product = product.mul(&cyclotomic_poly(n).pow(mult));
    }
    Ok(product)
}

fn nonzero_index_gcd(p: &IntPolynomial) -> usize {
    p.coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(0usize, |acc, (i, _)| acc.gcd(&i))
}

/// `false` exactly when some `k ≥ 2` makes both `f` and `g` polynomials in `X^k`.
pub fn is_primitive_pair(f: &IntPolynomial, g: &IntPolynomial) -> bool {
    nonzero_index_gcd(f).gcd(&nonzero_index_gcd(g)) == 1
}

/// `f(-X)` scaled to stay monic: odd-degree coefficients change sign when the
/// degree is even, even-degree ones when it is odd.
pub fn negate_variable(f: &IntPolynomial) -> IntPolynomial {
    let deg = f.degree();
    IntPolynomial::new(
        f.coefficients()
            .iter()
            .enumerate()
            .map(|(i, c)| if (deg - i) % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// `f - g`, its leading coefficient and the gcd of its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceData {
    pub poly: IntPolynomial,
    pub lead: BigInt,
    pub vgcd: BigInt,
}

pub fn difference_data(f: &IntPolynomial, g: &IntPolynomial) -> Result<DifferenceData> {
    let poly = f.sub(g);
    if poly.is_zero() {
        return Err(Error::EqualPolynomials);
    }
    Ok(DifferenceData {
        lead: poly.leading(),
        vgcd: poly.content(),
        poly,
    })
}

/// Whether `gcd(f, g)` over ℚ has positive degree.
pub fn have_common_root(f: &IntPolynomial, g: &IntPolynomial) -> bool {
    if f.is_zero() || g.is_zero() {
        return true;
    }
    let mut a: Vec<Rational> = to_rational(f);
    let mut b: Vec<Rational> = to_rational(g);
    while !b.is_empty() {
        let r = rational_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() > 1
}

fn to_rational(p: &IntPolynomial) -> Vec<Rational> {
    p.coefficients()
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}

fn rational_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("divisor is nonzero").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonempty") / &lead;
        for (j, bc) in b.iter().enumerate() {
            let t = &factor * bc;
            r[shift + j] -= t;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}
