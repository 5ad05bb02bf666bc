//! Expression language for group elements.
//!
//! ```text
//! product := factor+
//! factor  := primary ( '^' exponent )*
//! primary := NAME | '(' product ')' | '[' product ',' product ']'
//! exponent:= INT | '{' INT '}'
//! ```
//!
//! Juxtaposition is multiplication and `[a,b]` is `a b a⁻¹ b⁻¹`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::MatrixQ;
use crate::monodromy::GroupWord;

/// Deepest bracket nesting accepted by the parser.
pub const MAX_DEPTH: usize = 64;

/// Largest numerator or denominator, in bits, that evaluation will produce.
pub const MAX_ENTRY_BITS: u64 = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Name(String),
    /// Two or more factors, none of which is itself a product.
    Product(Vec<Expr>),
    Group(Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Name(String),
    Int(i64),
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let simple = match b {
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b'[' => Some(Token::LBracket),
            b']' => Some(Token::RBracket),
            b'{' => Some(Token::LBrace),
            b'}' => Some(Token::RBrace),
            b',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if b.is_ascii_whitespace() {
            i += 1;
        } else if b.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Name(src[start..i].to_string())));
        } else if b.is_ascii_digit() || b == b'-' || b == b'+' {
            i += 1;
            let digits = if b == b'-' || b == b'+' { i } else { start };
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == digits {
                return Err(Error::parse(start, "sign without digits"));
            }
            let n: i64 = src[start..i]
                .parse()
                .map_err(|_| Error::parse(start, "integer does not fit in 64 bits"))?;
            out.push((start, Token::Int(n)));
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return Err(Error::parse(start, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.offset(), format!("expected {what}")))
        }
    }

    fn product(&mut self, depth: usize) -> Result<Expr> {
        let mut factors = Vec::new();
        while matches!(
            self.peek(),
            Some(Token::Name(_) | Token::LParen | Token::LBracket)
        ) {
            factors.push(self.factor(depth)?);
        }
        match factors.len() {
            0 => Err(Error::parse(self.offset(), "expected a name, '(' or '['")),
            1 => Ok(factors.pop().expect("one factor")),
            _ => Ok(Expr::Product(factors)),
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Expr> {
        let mut e = self.primary(depth)?;
        while self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let braced = self.peek() == Some(&Token::LBrace);
            if braced {
                self.pos += 1;
            }
            let k = match self.peek() {
                Some(Token::Int(k)) => *k,
                _ => return Err(Error::parse(self.offset(), "expected an integer exponent")),
            };
            self.pos += 1;
            if braced {
                self.expect(Token::RBrace, "'}'")?;
            }
            e = Expr::Power(Box::new(e), k);
        }
        Ok(e)
    }

    fn primary(&mut self, depth: usize) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Name(n)) => {
                self.pos += 1;
                Ok(Expr::Name(n))
            }
            Some(Token::LParen) => {
                if depth >= MAX_DEPTH {
                    return Err(Error::parse(at, "nesting too deep"));
                }
                self.pos += 1;
                let inner = self.product(depth + 1)?;
                self.expect(Token::RParen, "')'")?;
                Ok(Expr::Group(Box::new(inner)))
            }
            Some(Token::LBracket) => {
                if depth >= MAX_DEPTH {
                    return Err(Error::parse(at, "nesting too deep"));
                }
                self.pos += 1;
                let a = self.product(depth + 1)?;
                self.expect(Token::Comma, "','")?;
                let b = self.product(depth + 1)?;
                self.expect(Token::RBracket, "']'")?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            _ => Err(Error::parse(at, "expected a name, '(' or '['")),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut p = Parser {
            tokens: lex(src)?,
            pos: 0,
            end: src.len(),
        };
        let e = p.product(0)?;
        if p.pos != p.tokens.len() {
            return Err(Error::parse(p.offset(), "unexpected trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Expr::Group(inner) => write!(f, "({inner})"),
            Expr::Commutator(a, b) => write!(f, "[{a},{b}]"),
            Expr::Power(base, k) => match **base {
                Expr::Product(_) => write!(f, "({base})^{k}"),
                _ => write!(f, "{base}^{k}"),
            },
        }
    }
}

impl Expr {
    pub fn name(n: &str) -> Self {
        Expr::Name(n.to_string())
    }

    pub fn pow(self, k: i64) -> Self {
        Expr::Power(Box::new(self), k)
    }

    /// Every name referenced, in order of first appearance.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Name(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n);
                }
            }
            Expr::Product(fs) => fs.iter().for_each(|x| x.collect_names(out)),
            Expr::Group(inner) => inner.collect_names(out),
            Expr::Commutator(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Expr::Power(base, _) => base.collect_names(out),
        }
    }

    /// Exact value, looking names up in `env`. Powers whose entries would
    /// exceed [`MAX_ENTRY_BITS`] bits fail instead of running away.
    pub fn evaluate(&self, env: &BTreeMap<String, MatrixQ>) -> Result<MatrixQ> {
        match self {
            Expr::Name(n) => env
                .get(n)
                .cloned()
                .ok_or_else(|| Error::UnknownName(n.clone())),
            Expr::Product(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().expect("products are nonempty").evaluate(env)?;
                for x in it {
                    acc = acc.mul(&x.evaluate(env)?)?;
                }
                Ok(acc)
            }
            Expr::Group(inner) => inner.evaluate(env),
            Expr::Commutator(a, b) => MatrixQ::commutator(&a.evaluate(env)?, &b.evaluate(env)?),
            Expr::Power(base, k) => base.evaluate(env)?.pow_bounded(*k, MAX_ENTRY_BITS),
        }
    }

    /// Expands to a word in the generators, resolving names through `resolve`.
    /// Fails once the unreduced expansion would exceed `max_letters` letters.
    pub fn expand(
        &self,
        resolve: &dyn Fn(&str) -> Option<GroupWord>,
        max_letters: usize,
    ) -> Result<GroupWord> {
        let w = match self {
            Expr::Name(n) => resolve(n).ok_or_else(|| Error::UnknownName(n.clone()))?,
            Expr::Product(fs) => {
                let mut acc = GroupWord::identity();
                for x in fs {
                    acc = acc.concat(&x.expand(resolve, max_letters)?)?;
                    check_len(&acc, max_letters)?;
                }
                acc
            }
            Expr::Group(inner) => inner.expand(resolve, max_letters)?,
            Expr::Commutator(a, b) => {
                let a = a.expand(resolve, max_letters)?;
                let b = b.expand(resolve, max_letters)?;
                check_total(2 * (a.len() + b.len()), max_letters)?;
                a.concat(&b)?.concat(&a.inverse())?.concat(&b.inverse())?
            }
            Expr::Power(base, k) => {
                let w = base.expand(resolve, max_letters)?;
                match w.len() {
                    0 => w,
                    1 => w.pow(*k)?,
                    n => {
                        let total = (n as u128).saturating_mul(u128::from(k.unsigned_abs()));
                        check_total(usize::try_from(total).unwrap_or(usize::MAX), max_letters)?;
                        w.pow(*k)?
                    }
                }
            }
        };
        check_len(&w, max_letters)?;
        Ok(w)
    }
}

fn check_len(w: &GroupWord, max: usize) -> Result<()> {
    check_total(w.len(), max)
}

fn check_total(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::WordTooLong(max))
    } else {
        Ok(())
    }
}

/// All single-exponent perturbations of `e`: each explicit `^k` becomes
/// `^(k-1)` and `^(k+1)`, and each name, group or commutator carrying the
/// implicit exponent 1 is raised to `^0` and `^2`.
pub fn exponent_mutations(e: &Expr) -> Vec<Expr> {
    let mut out = Vec::new();
    mutations(e, true, &mut out);
    out
}

fn mutations(e: &Expr, implicit_site: bool, out: &mut Vec<Expr>) {
    if implicit_site && !matches!(e, Expr::Power(..) | Expr::Product(_)) {
        out.push(e.clone().pow(0));
        out.push(e.clone().pow(2));
    }
    match e {
        Expr::Name(_) => {}
        Expr::Product(fs) => {
            for (i, x) in fs.iter().enumerate() {
                let mut inner = Vec::new();
                mutations(x, true, &mut inner);
                for m in inner {
                    let mut fs2 = fs.clone();
                    fs2[i] = m;
                    out.push(Expr::Product(flatten(fs2)));
                }
            }
        }
        Expr::Group(inner) => {
            let mut sub = Vec::new();
            mutations(inner, true, &mut sub);
            out.extend(sub.into_iter().map(|m| Expr::Group(Box::new(m))));
        }
        Expr::Commutator(a, b) => {
            let mut sub = Vec::new();
            mutations(a, true, &mut sub);
            out.extend(
                sub.into_iter()
                    .map(|m| Expr::Commutator(Box::new(m), b.clone())),
            );
            let mut sub = Vec::new();
            mutations(b, true, &mut sub);
            out.extend(
                sub.into_iter()
                    .map(|m| Expr::Commutator(a.clone(), Box::new(m))),
            );
        }
        Expr::Power(base, k) => {
            for d in [-1i64, 1] {
                if let Some(k2) = k.checked_add(d) {
                    out.push(Expr::Power(base.clone(), k2));
                }
            }
            let mut sub = Vec::new();
            mutations(base, false, &mut sub);
            out.extend(sub.into_iter().map(|m| Expr::Power(Box::new(m), *k)));
        }
    }
}

fn flatten(fs: Vec<Expr>) -> Vec<Expr> {
    fs.into_iter()
        .flat_map(|x| match x {
            Expr::Product(inner) => inner,
            other => vec![other],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn parse(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn parses_printed_words() {
        let e = parse("A^-7 B^3 C B^-3 A^7");
        assert_eq!(e.names(), vec!["A", "B", "C"]);
        assert_eq!(e.to_string(), "A^-7 B^3 C B^-3 A^7");
        assert_eq!(parse("(E^-1 F)^2 x").to_string(), "(E^-1 F)^2 x");
        assert_eq!(
            parse("[E,F]"),
            Expr::Commutator(Box::new(Expr::name("E")), Box::new(Expr::name("F")))
        );
        assert_eq!(parse("A^{-7}"), parse("A^-7"));
        assert_eq!(parse("[ T , S ]").to_string(), "[T,S]");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        for (src, offset) in [
            ("A^", 2),
            ("(A", 2),
            ("[A B]", 4),
            ("A $", 2),
            ("", 0),
            ("A)", 1),
        ] {
            match src.parse::<Expr>() {
                Err(Error::Parse { offset: o, .. }) => assert_eq!(o, offset, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        assert!("A^99999999999999999999".parse::<Expr>().is_err());
        let deep = format!(
            "{}A{}",
            "(".repeat(MAX_DEPTH + 1),
            ")".repeat(MAX_DEPTH + 1)
        );
        assert!(deep.parse::<Expr>().is_err());
    }

    #[test]
    fn evaluates_commutators() {
        let mut env = BTreeMap::new();
        env.insert("a".to_string(), MatrixQ::elementary(4, 0, 1, q(1)));
        env.insert("b".to_string(), MatrixQ::elementary(4, 1, 3, q(1)));
        let c = parse("[a,b]").evaluate(&env).unwrap();
        assert_eq!(c, MatrixQ::elementary(4, 0, 3, q(1)));
        assert!(matches!(
            parse("a c").evaluate(&env),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn mutation_sites() {
        let ms: Vec<String> = exponent_mutations(&parse("u^-576 x^17856"))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            ms,
            [
                "u^-577 x^17856",
                "u^-575 x^17856",
                "u^-576 x^17855",
                "u^-576 x^17857"
            ]
        );
        let ms: Vec<String> = exponent_mutations(&parse("[E,F]"))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            ms,
            ["[E,F]^0", "[E,F]^2", "[E^0,F]", "[E^2,F]", "[E,F^0]", "[E,F^2]"]
        );
        assert_eq!(
            exponent_mutations(&parse("(E^-1 F)^2 x")).len(),
            2 + 2 + 2 + 2
        );
    }
}
