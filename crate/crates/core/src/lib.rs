//! Exact arithmetic for hypergeometric groups in `Sp₄(ℤ)`.
//!
//! The crate builds the Levelt generators `A`, `B` of a pair of cyclotomic
//! quartics, finds their invariant symplectic form, puts it in anti-diagonal
//! shape and checks word recipes whose values fall into the positive root
//! groups. All computations use arbitrary precision rationals.

pub mod basis;
pub mod certificate;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod expr;
pub mod form;
pub mod monodromy;
pub mod roots;
pub mod search;
pub mod tables;

pub use basis::{
    adapted_basis, build_basis, verify_basis, AntiDiagonalGram, Orientation, SymplecticBasis,
};
pub use certificate::{builtin_certificates, verify_certificate, Certificate, VerificationReport};
pub use cyclotomic::{from_exponents, ExponentVector, IntPolynomial};
pub use error::{Error, Result};
pub use exact::{MatrixQ, Rational, VectorQ};
pub use expr::Expr;
pub use form::{check_symplectic, invariant_form, SymplecticForm};
pub use monodromy::{evaluate_word, levelt_triple, Generator, GroupWord, Letter, MonodromyTriple};
pub use roots::{classify_unipotent, coverage, RootCoverage, RootLabel};
pub use search::{
    derive_witnesses, find_gamma, gamma_candidates, gcd_obstruction, Derivation, GammaResult, GammaStatus,
};
pub use tables::{dataset, validate_tables, RowRef, TableRow};
