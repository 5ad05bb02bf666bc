//! Bases in which the invariant form is anti-diagonal.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, MatrixQ, Rational, VectorQ};
use crate::form::SymplecticForm;

/// Order in which the basis vectors are used as coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `(ε₁, ε₂, ε₂*, ε₁*)`.
    #[default]
    Standard,
    /// `(ε₁*, ε₂*, ε₂, ε₁)`.
    Reversed,
}

/// Ordered basis `(ε₁, ε₂, ε₂*, ε₁*)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticBasis {
    pub eps1: VectorQ,
    pub eps2: VectorQ,
    pub eps2_star: VectorQ,
    pub eps1_star: VectorQ,
    #[serde(default)]
    pub orientation: Orientation,
}

/// The two independent Gram entries `c₁ = Ω(ε₁, ε₁*)`, `c₂ = Ω(ε₂, ε₂*)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiDiagonalGram {
    #[serde(with = "crate::exact::serde_rational")]
    pub c1: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub c2: Rational,
}

impl AntiDiagonalGram {
    pub fn new(c1: Rational, c2: Rational) -> Self {
        AntiDiagonalGram { c1, c2 }
    }

    pub fn matrix(&self) -> MatrixQ {
        MatrixQ::zeros(4, 4)
            .with_entry(0, 3, self.c1.clone())
            .with_entry(3, 0, -&self.c1)
            .with_entry(1, 2, self.c2.clone())
            .with_entry(2, 1, -&self.c2)
    }

    /// Gram constants of the reversed basis `(ε₁*, ε₂*, ε₂, ε₁)`.
    pub fn reversed(&self) -> Self {
        AntiDiagonalGram::new(-&self.c1, -&self.c2)
    }
}

impl SymplecticBasis {
    pub fn new(vectors: [VectorQ; 4]) -> Self {
        let [eps1, eps2, eps2_star, eps1_star] = vectors;
        SymplecticBasis {
            eps1,
            eps2,
            eps2_star,
            eps1_star,
            orientation: Orientation::Standard,
        }
    }

    pub fn from_i64(vectors: [[i64; 4]; 4]) -> Self {
        Self::new(vectors.map(|v| VectorQ::from_i64(&v)))
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn vectors(&self) -> [&VectorQ; 4] {
        [&self.eps1, &self.eps2, &self.eps2_star, &self.eps1_star]
    }

    /// Change-of-basis matrix with columns `ε₁, ε₂, ε₂*, ε₁*`.
    pub fn matrix(&self) -> MatrixQ {
        let cols: Vec<VectorQ> = self.vectors().into_iter().cloned().collect();
        MatrixQ::from_columns(&cols).expect("basis vectors share a length")
    }

    pub fn is_reversed(&self) -> bool {
        self.orientation == Orientation::Reversed
    }
}

/// Gram matrix of `basis` under `form`, checked to be anti-diagonal and
/// nondegenerate.
pub fn verify_basis(form: &SymplecticForm, basis: &SymplecticBasis) -> Result<AntiDiagonalGram> {
    let vs = basis.vectors();
    if vs.iter().any(|v| v.len() != form.dim()) || form.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "basis vectors must have length 4".into(),
        ));
    }
    let t = basis.matrix();
    if t.determinant()?.is_zero() {
        return Err(Error::DegenerateBasis(
            "basis vectors are linearly dependent".into(),
        ));
    }
    let g = form.gram(&t)?;
    for i in 0..4 {
        for j in 0..4 {
            if i + j != 3 && !g.get(i, j).is_zero() {
                return Err(Error::NotAntiDiagonal {
                    row: i + 1,
                    col: j + 1,
                    value: format_rational(g.get(i, j)),
                });
            }
        }
    }
    let gram = AntiDiagonalGram::new(g.get(0, 3).clone(), g.get(1, 2).clone());
    if gram.c1.is_zero() || gram.c2.is_zero() {
        return Err(Error::DegenerateBasis(
            "zero anti-diagonal Gram entry".into(),
        ));
    }
    Ok(gram)
}

/// Projection onto the Ω-complement of the hyperbolic pair `(e, f)`.
fn complement_projector<'a>(
    form: &'a SymplecticForm,
    e: &VectorQ,
    f: &VectorQ,
) -> impl Fn(&VectorQ) -> VectorQ + 'a {
    let c = form.pair(e, f);
    let (e, f) = (e.clone(), f.clone());
    move |w: &VectorQ| {
        let a = form.pair(w, &f) / &c;
        let b = form.pair(w, &e) / &c;
        &(w - &e.scale(&a)) + &f.scale(&b)
    }
}

fn first_partner(form: &SymplecticForm, u: &VectorQ, candidates: &[VectorQ]) -> Option<VectorQ> {
    candidates
        .iter()
        .find(|w| !form.pair(u, w).is_zero())
        .cloned()
}

/// Deterministic symplectic Gram–Schmidt with `ε₂ = seed`: `ε₂*` is the first
/// standard vector pairing nontrivially with the seed, and `ε₁, ε₁*` are
/// found the same way among the projections of the standard vectors to the
/// complement of `span(ε₂, ε₂*)`. Vectors other than the seed are scaled to
/// primitive integers.
pub fn build_basis(form: &SymplecticForm, seed: &VectorQ) -> Result<SymplecticBasis> {
    let n = form.dim();
    if n != 4 || seed.len() != 4 {
        return Err(Error::DimensionMismatch(
            "build_basis works in dimension 4".into(),
        ));
    }
    if seed.is_zero() {
        return Err(Error::DegenerateBasis("seed is zero".into()));
    }
    let units: Vec<VectorQ> = (0..n).map(|i| VectorQ::unit(n, i)).collect();
    let eps2 = seed.clone();
    let eps2_star = first_partner(form, &eps2, &units)
        .ok_or_else(|| Error::DegenerateBasis("seed pairs trivially with every vector".into()))?;
    let proj = complement_projector(form, &eps2, &eps2_star);
    let projected: Vec<VectorQ> = units.iter().map(&proj).filter(|w| !w.is_zero()).collect();
    let eps1 = projected
        .first()
        .cloned()
        .ok_or_else(|| Error::DegenerateBasis("complement is zero".into()))?;
    let eps1_star = first_partner(form, &eps1, &projected)
        .ok_or_else(|| Error::DegenerateBasis("complement is isotropic".into()))?;
    let basis = SymplecticBasis::new([
        eps1.primitive(),
        eps2,
        eps2_star.primitive(),
        eps1_star.primitive(),
    ]);
    verify_basis(form, &basis)?;
    Ok(basis)
}

/// Basis adapted to a conjugator `γ`: `ε₂ = v`, `ε₂* = γ⁻¹v`, `ε₁` the
/// projection of `γv` to the complement of `span(ε₂, ε₂*)`, and `ε₁*` the
/// first projected standard vector pairing nontrivially with `ε₁`.
pub fn adapted_basis(
    form: &SymplecticForm,
    v: &VectorQ,
    gamma: &MatrixQ,
) -> Result<SymplecticBasis> {
    let n = form.dim();
    let eps2 = v.primitive();
    let eps2_star = gamma.inverse()?.mul_vec(&eps2)?.primitive();
    if form.pair(&eps2, &eps2_star).is_zero() {
        return Err(Error::DegenerateBasis(
            "v and its image under the inverse conjugator pair trivially".into(),
        ));
    }
    let proj = complement_projector(form, &eps2, &eps2_star);
    let eps1 = proj(&gamma.mul_vec(&eps2)?);
    if eps1.is_zero() {
        return Err(Error::DegenerateBasis(
            "conjugate of v lies in span(v, its inverse image)".into(),
        ));
    }
    let projected: Vec<VectorQ> = (0..n).map(|i| proj(&VectorQ::unit(n, i))).collect();
    let eps1_star = first_partner(form, &eps1, &projected)
        .ok_or_else(|| Error::DegenerateBasis("complement is isotropic".into()))?;
    let basis = SymplecticBasis::new([eps1.primitive(), eps2, eps2_star, eps1_star.primitive()]);
    verify_basis(form, &basis)?;
    Ok(basis)
}

/// `T⁻¹ m T` with `T` the matrix whose columns are `ε₁, ε₂, ε₂*, ε₁*`.
pub fn to_basis_coords(m: &MatrixQ, basis: &SymplecticBasis) -> Result<MatrixQ> {
    m.conjugate_by(&basis.matrix())
}

/// `J m J` with `J` the anti-identity: coordinates in the reversed order.
pub fn reverse_coords(m: &MatrixQ) -> MatrixQ {
    let n = m.rows();
    let mut out = MatrixQ::zeros(n, m.cols());
    for i in 0..n {
        for j in 0..m.cols() {
            out = out.with_entry(n - 1 - i, m.cols() - 1 - j, m.get(i, j).clone());
        }
    }
    out
}

/// Coordinates in the basis order named by its orientation.
pub fn to_oriented_coords(m: &MatrixQ, basis: &SymplecticBasis) -> Result<MatrixQ> {
    let c = to_basis_coords(m, basis)?;
    Ok(if basis.is_reversed() {
        reverse_coords(&c)
    } else {
        c
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, ratio};
    use crate::form::{invariant_form, Normalization};
    use crate::monodromy::levelt_triple;

    fn first_form() -> SymplecticForm {
        let omega = MatrixQ::from_rows(vec![
            vec![q(0), q(1), ratio(-2, 3), q(-1)],
            vec![q(-1), q(0), q(1), ratio(-2, 3)],
            vec![ratio(2, 3), q(-1), q(0), q(1)],
            vec![q(1), ratio(2, 3), q(-1), q(0)],
        ])
        .unwrap();
        SymplecticForm::new(omega, Normalization::Printed).unwrap()
    }

    fn first_basis() -> SymplecticBasis {
        SymplecticBasis::from_i64([[3, 0, 1, 0], [3, 2, 3, 0], [3, 4, 3, 2], [1, 0, 0, 0]])
    }

    #[test]
    fn printed_basis_gram() {
        let gram = verify_basis(&first_form(), &first_basis()).unwrap();
        assert_eq!(gram, AntiDiagonalGram::new(ratio(2, 3), ratio(-8, 3)));
        let g = first_form().gram(&first_basis().matrix()).unwrap();
        assert_eq!(g, gram.matrix());
    }

    #[test]
    fn standard_basis_is_not_anti_diagonal() {
        let std =
            SymplecticBasis::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        match verify_basis(&first_form(), &std) {
            Err(Error::NotAntiDiagonal { row, col, .. }) => assert_eq!((row, col), (1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn built_basis_verifies() {
        let t = levelt_triple(
            &"X^4+3X^3+4X^2+3X+1".parse().unwrap(),
            &"X^4+2X^2+1".parse().unwrap(),
        )
        .unwrap();
        let form = invariant_form(&t).unwrap();
        let b = build_basis(&form, &t.v).unwrap();
        assert_eq!(b.eps2, t.v);
        assert!(verify_basis(&form, &b).is_ok());
        assert!(build_basis(&form, &VectorQ::zeros(4)).is_err());
    }

    #[test]
    fn c_becomes_long_root_transvection() {
        let t = levelt_triple(
            &"X^4+3X^3+4X^2+3X+1".parse().unwrap(),
            &"X^4+2X^2+1".parse().unwrap(),
        )
        .unwrap();
        let p = to_basis_coords(&t.c, &first_basis()).unwrap();
        assert_eq!(p, MatrixQ::elementary(4, 1, 2, q(2)));
        let id =
            SymplecticBasis::from_i64([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(to_basis_coords(&t.a, &id).unwrap(), t.a);
    }

    #[test]
    fn reversal_is_an_involution() {
        let m = MatrixQ::elementary(4, 0, 3, q(5));
        let r = reverse_coords(&m);
        assert_eq!(r, MatrixQ::elementary(4, 3, 0, q(5)));
        assert_eq!(reverse_coords(&r), m);
        let g = AntiDiagonalGram::new(q(2), q(3));
        assert_eq!(reverse_coords(&g.matrix()), g.reversed().matrix());
    }
}
