//! Levelt generators and words in them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{have_common_root, is_primitive_pair, IntPolynomial};
use crate::error::{Error, Result};
use crate::exact::{MatrixQ, Rational, VectorQ};
use crate::expr::Expr;

/// Longest word (in letters) that parsing or expansion will build.
pub const MAX_WORD_LETTERS: usize = 1 << 20;

/// Companion matrix with 1s below the diagonal and the negated lower
/// coefficients `-c_0, …, -c_{n-1}` down the last column.
pub fn companion(f: &IntPolynomial) -> Result<MatrixQ> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::Degree {
            expected: 4,
            found: f.degree(),
        });
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree();
    let mut m = MatrixQ::zeros(n, n);
    for i in 1..n {
        m = m.with_entry(i, i - 1, Rational::from_integer(1.into()));
    }
    for i in 0..n {
        m = m.with_entry(i, n - 1, Rational::from_integer(-f.coeff(i)));
    }
    Ok(m)
}

/// `A`, `B`, `C = A⁻¹B` and the last column `v` of `C - I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyTriple {
    pub f: IntPolynomial,
    pub g: IntPolynomial,
    pub a: MatrixQ,
    pub b: MatrixQ,
    pub c: MatrixQ,
    pub v: VectorQ,
    a_inv: MatrixQ,
    b_inv: MatrixQ,
}

impl MonodromyTriple {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn generator(&self, g: Generator) -> &MatrixQ {
        match g {
            Generator::A => &self.a,
            Generator::B => &self.b,
        }
    }

    pub fn generator_inverse(&self, g: Generator) -> &MatrixQ {
        match g {
            Generator::A => &self.a_inv,
            Generator::B => &self.b_inv,
        }
    }

    /// `g^k` for a single letter.
    pub fn letter_matrix(&self, letter: Letter) -> MatrixQ {
        let base = if letter.exp < 0 {
            self.generator_inverse(letter.gen)
        } else {
            self.generator(letter.gen)
        };
        base.pow(i64::try_from(letter.exp.unsigned_abs()).unwrap_or(i64::MAX))
            .expect("generators are square")
    }
}

/// Builds the triple for a pair of monic polynomials of equal degree.
pub fn levelt_triple(f: &IntPolynomial, g: &IntPolynomial) -> Result<MonodromyTriple> {
    if f.degree() != g.degree() {
        return Err(Error::Degree {
            expected: f.degree(),
            found: g.degree(),
        });
    }
    if f == g {
        return Err(Error::EqualPolynomials);
    }
    if have_common_root(f, g) {
        return Err(Error::InvalidPair(format!("{f} and {g} share a root")));
    }
    if !is_primitive_pair(f, g) {
        return Err(Error::InvalidPair(format!(
            "{f} and {g} are both polynomials in X^k for some k >= 2"
        )));
    }
    let a = companion(f)?;
    let b = companion(g)?;
    let a_inv = a.inverse()?;
    let b_inv = b.inverse()?;
    let c = a_inv.mul(&b)?;
    let n = a.rows();
    let v = (&c - &MatrixQ::identity(n)).column(n - 1);
    Ok(MonodromyTriple {
        f: f.clone(),
        g: g.clone(),
        a,
        b,
        c,
        v,
        a_inv,
        b_inv,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
}

impl Generator {
    pub fn other(self) -> Self {
        match self {
            Generator::A => Generator::B,
            Generator::B => Generator::A,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::A => "A",
            Generator::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: Generator, exp: i64) -> Self {
        Letter { gen, exp }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^{}", self.gen, self.exp)
        }
    }
}

/// Reduced word in `A`, `B`: no zero exponents and no two adjacent letters on
/// the same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(gen: Generator, exp: i64) -> Self {
        let mut w = Self::identity();
        w.push(Letter::new(gen, exp))
            .expect("single letter cannot overflow");
        w
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = Self::identity();
        for l in letters {
            w.push(l)?;
        }
        Ok(w)
    }

    /// `A⁻¹B`, the expansion of the macro `C`.
    pub fn c_macro() -> Self {
        GroupWord {
            letters: vec![Letter::new(Generator::A, -1), Letter::new(Generator::B, 1)],
        }
    }

    fn push(&mut self, l: Letter) -> Result<()> {
        if l.exp == 0 {
            return Ok(());
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == l.gen => {
                last.exp = last.exp.checked_add(l.exp).ok_or(Error::Overflow)?;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(l),
        }
        Ok(())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l)?;
        }
        Ok(w)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.gen, -l.exp))
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Result<GroupWord> {
        if let [l] = self.letters.as_slice() {
            let exp = l.exp.checked_mul(k).ok_or(Error::Overflow)?;
            return GroupWord::from_letters([Letter::new(l.gen, exp)]);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base)?;
            if w.len() > MAX_WORD_LETTERS {
                return Err(Error::WordTooLong(MAX_WORD_LETTERS));
            }
        }
        Ok(w)
    }

    /// Conjugate `self⁻¹ · inner · self`.
    pub fn conjugate(&self, inner: &GroupWord) -> Result<GroupWord> {
        self.inverse().concat(inner)?.concat(self)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses words such as `A^-7 B^3 C B^-3 A^7`. `C` stands for `A⁻¹B`, and
/// parentheses and commutators are expanded. `1` or the empty string is the
/// identity.
impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(GroupWord::identity());
        }
        let e: Expr = t.parse()?;
        e.expand(&generator_macro, MAX_WORD_LETTERS)
    }
}

fn generator_macro(name: &str) -> Option<GroupWord> {
    match name {
        "A" => Some(GroupWord::letter(Generator::A, 1)),
        "B" => Some(GroupWord::letter(Generator::B, 1)),
        "C" => Some(GroupWord::c_macro()),
        _ => None,
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Exact matrix of a word.
pub fn evaluate_word(t: &MonodromyTriple, w: &GroupWord) -> MatrixQ {
    w.letters()
        .iter()
        .fold(MatrixQ::identity(t.dim()), |acc, &l| {
            &acc * &t.letter_matrix(l)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    pub(crate) fn section_one() -> MonodromyTriple {
        levelt_triple(
            &"X^4+3X^3+4X^2+3X+1".parse().unwrap(),
            &"X^4+2X^2+1".parse().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn companion_layout() {
        let a = companion(&"X^4+3X^3+4X^2+3X+1".parse().unwrap()).unwrap();
        let expected =
            MatrixQ::from_i64(&[[0, 0, 0, -1], [1, 0, 0, -3], [0, 1, 0, -4], [0, 0, 1, -3]])
                .unwrap();
        assert_eq!(a, expected);
        let b = companion(&"X^4+2X^2+1".parse().unwrap()).unwrap();
        assert_eq!(b.column(3), VectorQ::from_i64(&[-1, 0, -2, 0]));
        let u = companion(&"X^4-4X^3+6X^2-4X+1".parse().unwrap()).unwrap();
        assert_eq!(u.column(3), VectorQ::from_i64(&[-1, 4, -6, 4]));
        assert_eq!(companion(&"2X^4+1".parse().unwrap()), Err(Error::NotMonic));
    }

    #[test]
    fn triple_for_first_example() {
        let t = section_one();
        assert_eq!(t.c.column(3), VectorQ::from_i64(&[3, 2, 3, 1]));
        assert_eq!(t.v, VectorQ::from_i64(&[3, 2, 3, 0]));
        let t2 = levelt_triple(
            &"X^4+2X^3+3X^2+2X+1".parse().unwrap(),
            &"X^4-2X^3+2X^2-2X+1".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(t2.v, VectorQ::from_i64(&[4, 1, 4, 0]));
    }

    #[test]
    fn equal_polynomials_rejected() {
        let f: IntPolynomial = "X^4+2X^2+1".parse().unwrap();
        assert_eq!(levelt_triple(&f, &f), Err(Error::EqualPolynomials));
    }

    #[test]
    fn words_normalize() {
        let w: GroupWord = "A^2 A^-2 B A B^-1".parse().unwrap();
        assert_eq!(w.to_string(), "B A B^-1");
        let c: GroupWord = "C^-2".parse().unwrap();
        assert_eq!(c.to_string(), "B^-1 A B^-1 A");
        assert_eq!("1".parse::<GroupWord>().unwrap(), GroupWord::identity());
        assert!("A D".parse::<GroupWord>().is_err());
        assert!("(A B)^100000000".parse::<GroupWord>().is_err());
        assert_eq!("A^4000000000000".parse::<GroupWord>().unwrap().len(), 1);
    }

    #[test]
    fn word_evaluation() {
        let t = section_one();
        assert!(evaluate_word(&t, &GroupWord::identity()).is_identity());
        assert_eq!(evaluate_word(&t, &"A^-1 B".parse().unwrap()), t.c);
        let w: GroupWord = "A^-7 B^3 C B^-3 A^7".parse().unwrap();
        let m = evaluate_word(&t, &w);
        assert_eq!(m.determinant().unwrap(), q(1));
    }
}
