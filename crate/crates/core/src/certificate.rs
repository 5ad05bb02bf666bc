//! Arithmeticity certificates: word recipes whose values land in the positive
//! root groups, together with the matrices they are expected to produce.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::basis::{
    reverse_coords, to_basis_coords, verify_basis, AntiDiagonalGram, Orientation, SymplecticBasis,
};
use crate::cyclotomic::{from_exponents, ExponentVector};
use crate::error::{Error, Result};
use crate::exact::{format_rational, MatrixQ, Rational, VectorQ};
use crate::expr::{exponent_mutations, Expr};
use crate::form::{invariant_form, proportionality, Normalization, SymplecticForm};
use crate::monodromy::levelt_triple;
use crate::roots::{classify_unipotent, is_in_u, RootCoverage, RootLabel};

pub const CERTIFICATES_FORMAT: &str = "sp4-monodromy/certificates@1";

const GENERATOR_NAMES: [&str; 3] = ["A", "B", "C"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definition {
    pub name: String,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub root: RootLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Table row as `table:row`.
    pub example_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sv_example: Option<u32>,
    pub alpha: ExponentVector,
    pub beta: ExponentVector,
    /// The form as printed, if any; only its line matters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<MatrixQ>,
    /// Printed `[c₁, c₂]`, checked against `omega` when both are present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<VectorQ>,
    /// `ε₁, ε₂, ε₂*, ε₁*` in the coordinates of the companion matrices.
    pub basis: Vec<VectorQ>,
    /// Classify witnesses in the order `ε₁*, ε₂*, ε₂, ε₁`.
    #[serde(default)]
    pub reversed_basis: bool,
    pub definitions: Vec<Definition>,
    #[serde(default)]
    pub expected: BTreeMap<String, MatrixQ>,
    pub witnesses: Vec<Witness>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CertificateFile {
    Collection {
        format: String,
        certificates: Vec<Certificate>,
    },
    Single(Box<Certificate>),
}

#[derive(Serialize)]
struct CollectionOut<'a> {
    format: &'a str,
    certificates: &'a [Certificate],
}

impl Certificate {
    pub fn from_json(src: &str) -> Result<Certificate> {
        let cert: Certificate = serde_json::from_str(src)?;
        cert.validate()?;
        Ok(cert)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn symplectic_basis(&self) -> Result<SymplecticBasis> {
        let vs: [VectorQ; 4] = self
            .basis
            .clone()
            .try_into()
            .map_err(|_| Error::Certificate("basis must have exactly 4 vectors".into()))?;
        if vs.iter().any(|v| v.len() != 4) {
            return Err(Error::Certificate(
                "basis vectors must have length 4".into(),
            ));
        }
        let orientation = if self.reversed_basis {
            Orientation::Reversed
        } else {
            Orientation::Standard
        };
        Ok(SymplecticBasis::new(vs).with_orientation(orientation))
    }

    pub fn printed_gram(&self) -> Result<Option<AntiDiagonalGram>> {
        match &self.gram {
            None => Ok(None),
            Some(v) if v.len() == 2 => Ok(Some(AntiDiagonalGram::new(v[0].clone(), v[1].clone()))),
            Some(_) => Err(Error::Certificate(
                "gram must list exactly c1 and c2".into(),
            )),
        }
    }

    /// Parsed definitions, in order.
    pub fn parsed_definitions(&self) -> Result<Vec<(String, Expr)>> {
        self.definitions
            .iter()
            .map(|d| {
                d.expr
                    .parse::<Expr>()
                    .map(|e| (d.name.clone(), e))
                    .map_err(|e| Error::Certificate(format!("definition of {}: {e}", d.name)))
            })
            .collect()
    }

    /// Structural checks: names are fresh identifiers, every definition uses
    /// only earlier names, expected matrices are integral 4×4 and refer to
    /// defined names, and witnesses are defined.
    pub fn validate(&self) -> Result<()> {
        self.symplectic_basis()?;
        self.printed_gram()?;
        if let Some(o) = &self.omega {
            if o.rows() != 4 || o.cols() != 4 {
                return Err(Error::Certificate("omega must be 4x4".into()));
            }
        }
        let mut known: BTreeSet<String> = GENERATOR_NAMES.iter().map(|s| s.to_string()).collect();
        for (name, e) in self.parsed_definitions()? {
            let ident = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ident {
                return Err(Error::Certificate(format!("{name:?} is not a valid name")));
            }
            if known.contains(&name) {
                return Err(Error::Certificate(format!(
                    "{name} is defined twice or shadows a generator"
                )));
            }
            if let Some(unknown) = e.names().into_iter().find(|n| !known.contains(*n)) {
                return Err(Error::Certificate(format!(
                    "definition of {name} uses {unknown} before it is defined"
                )));
            }
            known.insert(name);
        }
        for (name, m) in &self.expected {
            if !known.contains(name) {
                return Err(Error::Certificate(format!(
                    "expected matrix for undefined name {name}"
                )));
            }
            if m.rows() != 4 || m.cols() != 4 || !m.is_integral() {
                return Err(Error::Certificate(format!(
                    "expected matrix for {name} must be an integral 4x4 matrix"
                )));
            }
        }
        for w in &self.witnesses {
            if !known.contains(&w.name) {
                return Err(Error::Certificate(format!(
                    "witness {} is not defined",
                    w.name
                )));
            }
        }
        Ok(())
    }
}

/// Reads either one certificate or a `{format, certificates: [...]}` collection.
pub fn parse_certificates(src: &str) -> Result<Vec<Certificate>> {
    let certs = match serde_json::from_str::<CertificateFile>(src) {
        Ok(CertificateFile::Collection {
            format,
            certificates,
        }) => {
            if format != CERTIFICATES_FORMAT {
                return Err(Error::Certificate(format!("unsupported format {format:?}")));
            }
            certificates
        }
        Ok(CertificateFile::Single(c)) => vec![*c],
        Err(_) => {
            // Re-parse as a single certificate for a precise error message.
            vec![serde_json::from_str::<Certificate>(src)?]
        }
    };
    for c in &certs {
        c.validate()?;
    }
    Ok(certs)
}

pub fn certificates_to_json(certs: &[Certificate]) -> String {
    serde_json::to_string_pretty(&CollectionOut {
        format: CERTIFICATES_FORMAT,
        certificates: certs,
    })
    .expect("certificates serialize")
}

/// The eight certificates shipped with the crate, ordered by table row.
pub fn builtin_certificates() -> &'static [Certificate] {
    static CERTS: OnceLock<Vec<Certificate>> = OnceLock::new();
    CERTS.get_or_init(|| {
        parse_certificates(include_str!("../data/certificates.json"))
            .expect("bundled certificates are well formed")
    })
}

/// Built-in certificate for row `3:n`.
pub fn builtin_certificate(n: usize) -> Option<&'static Certificate> {
    let id = format!("3:{n}");
    builtin_certificates().iter().find(|c| c.example_id == id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub name: String,
    pub expr: String,
    /// Value in basis coordinates `(ε₁, ε₂, ε₂*, ε₁*)`.
    pub matrix: MatrixQ,
    /// `None` when nothing was printed for this name.
    pub matches_expected: Option<bool>,
    pub symplectic: bool,
    /// Member of the unipotent radical in the certificate's orientation.
    pub unipotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub name: String,
    pub claimed: RootLabel,
    pub found: Option<RootLabel>,
}

impl WitnessCheck {
    pub fn ok(&self) -> bool {
        self.found == Some(self.claimed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub example_id: String,
    /// Recomputed form in primitive integer normalization.
    pub form: Option<SymplecticForm>,
    /// `s` with printed form `= s ·` recomputed form.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub scalar: Option<Rational>,
    /// Gram constants of the basis under the form used for the checks.
    pub gram: Option<AntiDiagonalGram>,
    pub steps: Vec<Step>,
    pub witnesses: Vec<WitnessCheck>,
    pub coverage: RootCoverage,
    pub complete: bool,
    pub venkataramana: bool,
    pub arithmetic_certified: bool,
    pub failures: Vec<String>,
    pub assumptions: Vec<String>,
}

fn serialize_opt_rational<S: serde::Serializer>(
    x: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_some(&format_rational(r)),
        None => s.serialize_none(),
    }
}

impl VerificationReport {
    fn new(example_id: &str) -> Self {
        VerificationReport {
            example_id: example_id.to_string(),
            form: None,
            scalar: None,
            gram: None,
            steps: Vec::new(),
            witnesses: Vec::new(),
            coverage: RootCoverage::default(),
            complete: false,
            venkataramana: false,
            arithmetic_certified: false,
            failures: Vec::new(),
            assumptions: vec![
                "the group generated by A and B is Zariski dense in Sp4 (assumed, not checked)"
                    .into(),
            ],
        }
    }

    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Step> {
        self.steps
            .iter()
            .filter(|s| s.matches_expected == Some(false))
    }
}

fn describe_mismatch(name: &str, got: &MatrixQ, want: &MatrixQ) -> String {
    match got.first_difference(want) {
        Some((i, j)) if got.rows() == want.rows() && got.cols() == want.cols() => format!(
            "{name}: entry ({},{}) is {}, expected {}",
            i + 1,
            j + 1,
            format_rational(got.get(i, j)),
            format_rational(want.get(i, j))
        ),
        _ => format!("{name}: matrix has the wrong shape"),
    }
}

/// Recomputes everything a certificate claims. Problems are reported in
/// `failures`; this never panics on bad input.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let mut report = VerificationReport::new(&cert.example_id);
    if let Err(e) = run_verification(cert, &mut report) {
        report.failures.push(e.to_string());
    }
    report.complete = report.coverage.complete();
    report.venkataramana = report.coverage.venkataramana();
    report.arithmetic_certified =
        report.failures.is_empty() && report.complete && report.venkataramana;
    report
}

fn run_verification(cert: &Certificate, report: &mut VerificationReport) -> Result<()> {
    cert.validate()?;
    let f = from_exponents(&cert.alpha)?;
    let g = from_exponents(&cert.beta)?;
    let triple = levelt_triple(&f, &g)?;
    let form = invariant_form(&triple)?;
    report.form = Some(form.clone());

    let reference = match &cert.omega {
        Some(printed) => {
            match proportionality(printed, &form.omega) {
                Some(s) => report.scalar = Some(s),
                None => report
                    .failures
                    .push("printed form is not proportional to the invariant form".into()),
            }
            SymplecticForm::new(printed.clone(), Normalization::Printed)?
        }
        None => form.clone(),
    };

    let basis = cert.symplectic_basis()?;
    let gram = verify_basis(&reference, &basis)?;
    if let Some(printed) = cert.printed_gram()? {
        if printed != gram {
            report.failures.push(format!(
                "Gram constants are ({}, {}), printed ({}, {})",
                format_rational(&gram.c1),
                format_rational(&gram.c2),
                format_rational(&printed.c1),
                format_rational(&printed.c2)
            ));
        }
    }
    report.gram = Some(gram.clone());
    let g_matrix = gram.matrix();
    let oriented_gram = if basis.is_reversed() {
        gram.reversed()
    } else {
        gram.clone()
    };

    let mut env: BTreeMap<String, MatrixQ> = BTreeMap::new();
    env.insert("A".into(), to_basis_coords(&triple.a, &basis)?);
    env.insert("B".into(), to_basis_coords(&triple.b, &basis)?);
    env.insert("C".into(), to_basis_coords(&triple.c, &basis)?);

    let orient = |m: &MatrixQ| {
        if basis.is_reversed() {
            reverse_coords(m)
        } else {
            m.clone()
        }
    };

    for (name, e) in cert.parsed_definitions()? {
        let m = e.evaluate(&env)?;
        let matches_expected = cert.expected.get(&name).map(|want| {
            let ok = &m == want;
            if !ok {
                report.failures.push(describe_mismatch(&name, &m, want));
            }
            ok
        });
        let symplectic = m.congruence(&g_matrix).is_ok_and(|x| x == g_matrix);
        if !symplectic {
            report
                .failures
                .push(format!("{name} does not preserve the form"));
        }
        report.steps.push(Step {
            name: name.clone(),
            expr: e.to_string(),
            unipotent: is_in_u(&orient(&m), &oriented_gram),
            matrix: m.clone(),
            matches_expected,
            symplectic,
        });
        env.insert(name, m);
    }

    for w in &cert.witnesses {
        let m = orient(&env[&w.name]);
        let found = classify_unipotent(&m, &oriented_gram).ok();
        let check = WitnessCheck {
            name: w.name.clone(),
            claimed: w.root,
            found,
        };
        if check.ok() {
            report.coverage.add(&m, &oriented_gram);
        } else {
            report.failures.push(format!(
                "witness {} is {}, claimed {}",
                w.name,
                found.map_or("not unipotent upper triangular", RootLabel::as_str),
                w.root
            ));
        }
        report.witnesses.push(check);
    }
    if report.steps.iter().all(|s| s.matches_expected.is_none()) && !cert.expected.is_empty() {
        report
            .failures
            .push("no expected matrix was compared".into());
    }
    Ok(())
}

/// A certificate with one exponent perturbed.
#[derive(Clone, Debug)]
pub struct Mutant {
    pub definition: String,
    pub original: String,
    pub mutated: String,
    pub certificate: Certificate,
}

/// Every single-exponent perturbation of every definition.
pub fn certificate_mutants(cert: &Certificate) -> Result<Vec<Mutant>> {
    let mut out = Vec::new();
    for (i, (name, e)) in cert.parsed_definitions()?.into_iter().enumerate() {
        for m in exponent_mutations(&e) {
            let mut c = cert.clone();
            c.definitions[i].expr = m.to_string();
            out.push(Mutant {
                definition: name.clone(),
                original: cert.definitions[i].expr.clone(),
                mutated: m.to_string(),
                certificate: c,
            });
        }
    }
    Ok(out)
}
