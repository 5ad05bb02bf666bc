//! Positive root groups of Sp₄ in anti-diagonal coordinates.
//!
//! With the Gram matrix anti-diagonal, the unipotent upper-triangular
//! symplectic matrices form the radical `U` of a Borel subgroup, and the
//! four positive root groups are recognised by the support of `m - I`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::AntiDiagonalGram;
use crate::error::{Error, Result};
use crate::exact::{MatrixQ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootLabel {
    ShortSimple,
    LongSimple,
    SecondHighest,
    Highest,
    Trivial,
    NotSingleRoot,
}

impl RootLabel {
    pub const POSITIVE: [RootLabel; 4] = [
        RootLabel::ShortSimple,
        RootLabel::LongSimple,
        RootLabel::SecondHighest,
        RootLabel::Highest,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RootLabel::ShortSimple => "short-simple",
            RootLabel::LongSimple => "long-simple",
            RootLabel::SecondHighest => "second-highest",
            RootLabel::Highest => "highest",
            RootLabel::Trivial => "trivial",
            RootLabel::NotSingleRoot => "not-single-root",
        }
    }

    /// Positions (0-based) of the nonzero entries of `m - I` for this root group.
    pub fn support(self) -> &'static [(usize, usize)] {
        match self {
            RootLabel::ShortSimple => &[(0, 1), (2, 3)],
            RootLabel::LongSimple => &[(1, 2)],
            RootLabel::SecondHighest => &[(0, 2), (1, 3)],
            RootLabel::Highest => &[(0, 3)],
            RootLabel::Trivial | RootLabel::NotSingleRoot => &[],
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RootLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            RootLabel::ShortSimple,
            RootLabel::LongSimple,
            RootLabel::SecondHighest,
            RootLabel::Highest,
            RootLabel::Trivial,
            RootLabel::NotSingleRoot,
        ]
        .into_iter()
        .find(|l| l.as_str() == s)
        .ok_or_else(|| Error::parse(0, format!("unknown root label {s:?}")))
    }
}

/// Upper triangular, unipotent and symplectic for the anti-diagonal Gram matrix.
pub fn is_in_u(m: &MatrixQ, gram: &AntiDiagonalGram) -> bool {
    if m.rows() != 4 || m.cols() != 4 {
        return false;
    }
    let shape = (0..4).all(|i| m.get(i, i).is_one() && (0..i).all(|j| m.get(i, j).is_zero()));
    let g = gram.matrix();
    shape && m.congruence(&g).is_ok_and(|x| x == g)
}

fn support(m: &MatrixQ) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            let off = if i == j { !x.is_one() } else { !x.is_zero() };
            if off {
                out.push((i, j));
            }
        }
    }
    out
}

/// Root group containing `m`, judged by the support of `m - I`.
pub fn classify_unipotent(m: &MatrixQ, gram: &AntiDiagonalGram) -> Result<RootLabel> {
    if !is_in_u(m, gram) {
        return Err(Error::NotUnipotent);
    }
    let s = support(m);
    if s.is_empty() {
        return Ok(RootLabel::Trivial);
    }
    Ok(RootLabel::POSITIVE
        .into_iter()
        .find(|l| l.support() == s.as_slice())
        .unwrap_or(RootLabel::NotSingleRoot))
}

/// For a two-entry root with support `(i₁, j₁), (i₂, j₂)`, the ratio `a/b`
/// forced on `I + a·E_{i₁j₁} + b·E_{i₂j₂}` by the symplectic condition, found
/// as the kernel of the linearised condition `Nᵀ G + G N = 0`. `None` for
/// single-entry roots.
pub fn linkage_ratio(gram: &AntiDiagonalGram, label: RootLabel) -> Option<Rational> {
    let [(i1, j1), (i2, j2)] = *label.support() else {
        return None;
    };
    let g = gram.matrix();
    let condition = |i: usize, j: usize| {
        let n = &MatrixQ::elementary(4, i, j, Rational::one()) - &MatrixQ::identity(4);
        &(&n.transpose() * &g) + &(&g * &n)
    };
    let (c1, c2) = (condition(i1, j1), condition(i2, j2));
    let rows: Vec<Vec<Rational>> = (0..4)
        .flat_map(|r| (0..4).map(move |c| (r, c)))
        .map(|(r, c)| vec![c1.get(r, c).clone(), c2.get(r, c).clone()])
        .collect();
    let kernel = MatrixQ::from_rows(rows).ok()?.nullspace();
    match kernel.as_slice() {
        [k] if !k[1].is_zero() => Some(&k[0] / &k[1]),
        _ => None,
    }
}

/// Witnesses for each positive root found among a list of matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RootCoverage {
    pub found: BTreeMap<RootLabel, MatrixQ>,
}

impl RootCoverage {
    pub fn has(&self, label: RootLabel) -> bool {
        self.found.contains_key(&label)
    }

    /// All four positive roots are witnessed.
    pub fn complete(&self) -> bool {
        RootLabel::POSITIVE.iter().all(|l| self.has(*l))
    }

    /// Highest and second-highest roots are both witnessed.
    pub fn venkataramana(&self) -> bool {
        self.has(RootLabel::Highest) && self.has(RootLabel::SecondHighest)
    }

    pub fn labels(&self) -> Vec<RootLabel> {
        self.found.keys().copied().collect()
    }

    /// Records `m` under its label if it is a nontrivial single-root element
    /// and the label has no witness yet.
    pub fn add(&mut self, m: &MatrixQ, gram: &AntiDiagonalGram) -> Option<RootLabel> {
        let label = classify_unipotent(m, gram).ok()?;
        if RootLabel::POSITIVE.contains(&label) {
            self.found.entry(label).or_insert_with(|| m.clone());
            Some(label)
        } else {
            None
        }
    }
}

/// Classifies every witness; the first one for each root is kept.
pub fn coverage(witnesses: &[MatrixQ], gram: &AntiDiagonalGram) -> RootCoverage {
    let mut cov = RootCoverage::default();
    for m in witnesses {
        cov.add(m, gram);
    }
    cov
}
