//! The alternating form preserved by `A` and `B`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{primitive_scale, MatrixQ, Rational, VectorQ};
use crate::monodromy::MonodromyTriple;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Coprime integer entries, first nonzero entry (row-major) positive.
    PrimitiveInteger,
    /// Scaled as some external source prints it.
    Printed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticForm {
    pub omega: MatrixQ,
    pub normalization: Normalization,
}

impl SymplecticForm {
    /// Wraps an antisymmetric nondegenerate matrix.
    pub fn new(omega: MatrixQ, normalization: Normalization) -> Result<Self> {
        if !omega.is_square() {
            return Err(Error::DimensionMismatch("form must be square".into()));
        }
        if !omega.is_antisymmetric() {
            return Err(Error::Certificate("form is not antisymmetric".into()));
        }
        if omega.determinant()?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(SymplecticForm {
            omega,
            normalization,
        })
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    /// `Ω(u, w) = uᵀ Ω w`.
    pub fn pair(&self, u: &VectorQ, w: &VectorQ) -> Rational {
        let ow = self.omega.mul_vec(w).expect("vector length matches form");
        u.entries()
            .iter()
            .zip(ow.entries())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Gram matrix of the columns of `t`, i.e. `tᵀ Ω t`.
    pub fn gram(&self, t: &MatrixQ) -> Result<MatrixQ> {
        t.congruence(&self.omega)
    }

    /// This form rescaled to the primitive integer normalization.
    pub fn normalized(&self) -> SymplecticForm {
        SymplecticForm {
            omega: normalize(&self.omega),
            normalization: Normalization::PrimitiveInteger,
        }
    }
}

fn normalize(m: &MatrixQ) -> MatrixQ {
    let Some(mut k) = primitive_scale(m.entries()) else {
        return m.clone();
    };
    if m.entries()
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(Signed::is_negative)
    {
        k = -k;
    }
    m.scale(&k)
}

/// `s` with `a = s · b`, if the two matrices are proportional.
pub fn proportionality(a: &MatrixQ, b: &MatrixQ) -> Option<Rational> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let (i, bx) = b.entries().iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let s = &a.entries()[i] / bx;
    if s.is_zero() {
        return None;
    }
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(x, y)| *x == &s * y)
        .then_some(s)
}

/// Linear system whose kernel is the space of antisymmetric `X` with
/// `Mᵀ X M = X` for every generator `M`. Unknowns are the entries `X[i][j]`,
/// `i < j`, in row-major order.
pub fn invariance_system(generators: &[&MatrixQ]) -> MatrixQ {
    let n = generators.first().map_or(0, |m| m.rows());
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let basis: Vec<MatrixQ> = pairs
        .iter()
        .map(|&(i, j)| {
            let one = Rational::from_integer(1.into());
            MatrixQ::zeros(n, n)
                .with_entry(i, j, one.clone())
                .with_entry(j, i, -one)
        })
        .collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for m in generators {
        let images: Vec<MatrixQ> = basis
            .iter()
            .map(|x| &m.congruence(x).expect("square generator") - x)
            .collect();
        for r in 0..n {
            for c in 0..n {
                rows.push(images.iter().map(|im| im.get(r, c).clone()).collect());
            }
        }
    }
    MatrixQ::from_rows(rows).expect("rows have equal length")
}

/// The invariant form of the group generated by `A` and `B`, in primitive
/// integer normalization. Fails unless the invariant alternating forms make
/// up a line.
pub fn invariant_form(t: &MonodromyTriple) -> Result<SymplecticForm> {
    let n = t.dim();
    let system = invariance_system(&[&t.a, &t.b]);
    let kernel = system.nullspace();
    if kernel.len() != 1 {
        return Err(Error::FormDimension(kernel.len()));
    }
    let x = &kernel[0];
    let mut omega = MatrixQ::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            omega = omega
                .with_entry(i, j, x[k].clone())
                .with_entry(j, i, -&x[k]);
            k += 1;
        }
    }
    let form = SymplecticForm::new(normalize(&omega), Normalization::PrimitiveInteger)?;
    Ok(form)
}

/// `mᵀ Ω m = Ω`.
pub fn check_symplectic(m: &MatrixQ, form: &SymplecticForm) -> bool {
    m.rows() == form.dim()
        && m.cols() == form.dim()
        && m.congruence(&form.omega).is_ok_and(|g| g == form.omega)
}
