//! The 51 hypergeometric pairs of the four tables, with their revalidation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::builtin_certificates;
use crate::cyclotomic::{
    from_exponents, have_common_root, is_primitive_pair, negate_variable, ExponentVector,
    IntPolynomial,
};
use crate::error::{Error, Result};
use crate::exact::{MatrixQ, Rational, VectorQ};
use crate::monodromy::{companion, levelt_triple};

pub const TABLES_FORMAT: &str = "sp4-monodromy/tables@1";

/// Rows per table.
pub const TABLE_SIZES: [usize; 4] = [12, 13, 15, 11];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "arithmetic-ss-sv")]
    ArithmeticSsSv,
    #[serde(rename = "thin-bt")]
    ThinBt,
    #[serde(rename = "arithmetic-new")]
    ArithmeticNew,
    #[serde(rename = "unknown")]
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ArithmeticSsSv => "arithmetic-ss-sv",
            Status::ThinBt => "thin-bt",
            Status::ArithmeticNew => "arithmetic-new",
            Status::Unknown => "unknown",
        }
    }

    /// Status shared by every row of a table.
    pub fn of_table(table: u8) -> Option<Status> {
        match table {
            1 => Some(Status::ArithmeticSsSv),
            2 => Some(Status::ThinBt),
            3 => Some(Status::ArithmeticNew),
            4 => Some(Status::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `table:row`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowRef {
    pub table: u8,
    pub row: u16,
}

impl RowRef {
    pub fn new(table: u8, row: u16) -> Self {
        RowRef { table, row }
    }
}

impl fmt::Display for RowRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.table, self.row)
    }
}

impl FromStr for RowRef {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("expected table:row, found {s:?}"));
        let (t, r) = s.trim().split_once(':').ok_or_else(bad)?;
        let table: u8 = t.trim().parse().map_err(|_| bad())?;
        let row: u16 = r.trim().parse().map_err(|_| bad())?;
        if table == 0 || row == 0 {
            return Err(bad());
        }
        Ok(RowRef { table, row })
    }
}

impl Serialize for RowRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RowRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub row: u16,
    pub alpha: ExponentVector,
    pub beta: ExponentVector,
    pub f: IntPolynomial,
    pub g: IntPolynomial,
    /// `f - g` as printed, ascending.
    pub diff: IntPolynomial,
    pub status: Status,
    /// Row holding `(f(-X), g(-X))` up to order.
    pub partner: RowRef,
    /// Example number in the earlier numbering, where one exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sv_example: Option<u32>,
}

impl TableRow {
    pub fn id(&self) -> RowRef {
        RowRef::new(self.table, self.row)
    }
}

#[derive(Serialize, Deserialize)]
struct DatasetFile {
    format: String,
    rows: Vec<TableRow>,
}

/// Parses a `{format, rows}` document.
pub fn parse_dataset(src: &str) -> Result<Vec<TableRow>> {
    let file: DatasetFile = serde_json::from_str(src)?;
    if file.format != TABLES_FORMAT {
        return Err(Error::Dataset(format!(
            "unsupported format {:?}",
            file.format
        )));
    }
    Ok(file.rows)
}

pub fn dataset_to_json(rows: &[TableRow]) -> String {
    serde_json::to_string_pretty(&DatasetFile {
        format: TABLES_FORMAT.to_string(),
        rows: rows.to_vec(),
    })
    .expect("rows serialize")
}

pub fn load(path: &Path) -> Result<Vec<TableRow>> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Dataset(format!("{}: {e}", path.display())))?;
    parse_dataset(&src)
}

/// The bundled rows.
pub fn dataset() -> &'static [TableRow] {
    static ROWS: OnceLock<Vec<TableRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        parse_dataset(include_str!("../data/tables.json")).expect("bundled tables parse")
    })
}

pub fn find_row(rows: &[TableRow], id: RowRef) -> Option<&TableRow> {
    rows.iter().find(|r| r.id() == id)
}

/// Row with the given earlier example number.
pub fn find_sv(rows: &[TableRow], sv: u32) -> Option<&TableRow> {
    rows.iter().find(|r| r.sv_example == Some(sv))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<RowRef>,
    pub check: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Some(r) => write!(f, "{r} [{}] {}", self.check, self.message),
            None => write!(f, "[{}] {}", self.check, self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: usize,
    pub per_table: BTreeMap<u8, usize>,
    pub counts: BTreeMap<Status, usize>,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Checker {
    checks: usize,
    violations: Vec<Violation>,
}

impl Checker {
    fn check(
        &mut self,
        row: Option<RowRef>,
        name: &'static str,
        ok: bool,
        message: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                row,
                check: name,
                message: message(),
            });
        }
    }
}

fn sorted_pair(a: &IntPolynomial, b: &IntPolynomial) -> [Vec<BigInt>; 2] {
    let mut p = [a.coefficients().to_vec(), b.coefficients().to_vec()];
    p.sort();
    p
}

fn sorted_exponents(e: &ExponentVector) -> Vec<Rational> {
    let mut v = e.entries().to_vec();
    v.sort();
    v
}

/// `diag(1, -1, 1, -1, …)`.
pub fn sign_matrix(n: usize) -> MatrixQ {
    MatrixQ::diagonal(
        &(0..n)
            .map(|i| Rational::from_integer(if i % 2 == 0 { 1 } else { -1 }.into()))
            .collect::<Vec<_>>(),
    )
}

/// Checks for `S⁻¹(-A)S = A(f(-X))`, `S⁻¹(-B)S = B(g(-X))` and
/// `S⁻¹CS = C(f(-X), g(-X))`.
pub fn sign_conjugation_holds(f: &IntPolynomial, g: &IntPolynomial) -> Result<[bool; 3]> {
    let t = levelt_triple(f, g)?;
    let (fm, gm) = (negate_variable(f), negate_variable(g));
    let s = sign_matrix(t.dim());
    let s_inv = s.inverse()?;
    let conj = |m: &MatrixQ| -> Result<MatrixQ> { s_inv.mul(m)?.mul(&s) };
    let a_ok = conj(&-&t.a)? == companion(&fm)?;
    let b_ok = conj(&-&t.b)? == companion(&gm)?;
    let c_under = companion(&fm)?.inverse()?.mul(&companion(&gm)?)?;
    let c_ok = conj(&t.c)? == c_under;
    Ok([a_ok, b_ok, c_ok])
}

/// `(d₁, d₂, d₃, 0)` for `f - g = d₃X³ + d₂X² + d₁X`, the expected last
/// column of `C - I`.
pub fn expected_v(diff: &IntPolynomial, n: usize) -> VectorQ {
    VectorQ::new(
        (0..n)
            .map(|i| {
                if i + 1 < n {
                    Rational::from_integer(diff.coeff(i + 1))
                } else {
                    Rational::from_integer(0.into())
                }
            })
            .collect(),
    )
}

/// Revalidates every stored column and cross-reference.
pub fn validate_tables(rows: &[TableRow]) -> TableReport {
    let mut c = Checker {
        checks: 0,
        violations: Vec::new(),
    };
    let mut per_table: BTreeMap<u8, usize> = BTreeMap::new();
    let mut counts: BTreeMap<Status, usize> = BTreeMap::new();
    let index: BTreeMap<RowRef, &TableRow> = rows.iter().map(|r| (r.id(), r)).collect();
    c.check(None, "unique-ids", index.len() == rows.len(), || {
        "duplicate table:row ids".into()
    });

    for r in rows {
        let id = Some(r.id());
        *per_table.entry(r.table).or_default() += 1;
        *counts.entry(r.status).or_default() += 1;

        for (side, e, p) in [("alpha", &r.alpha, &r.f), ("beta", &r.beta, &r.g)] {
            match from_exponents(e) {
                Ok(q) => c.check(id, "exponents", &q == p, || {
                    format!("{side} gives {q}, stored {p}")
                }),
                Err(err) => c.check(id, "exponents", false, || format!("{side}: {err}")),
            }
        }
        c.check(
            id,
            "degree",
            r.f.degree() == 4 && r.g.degree() == 4 && r.f.is_monic() && r.g.is_monic(),
            || "f and g must be monic quartics".into(),
        );
        let diff = r.f.sub(&r.g);
        c.check(id, "diff", diff == r.diff, || {
            format!("stored {}, f - g is {diff}", r.diff)
        });
        c.check(id, "lead", diff.leading().abs() >= BigInt::from(3), || {
            format!("leading coefficient of f - g is {}", diff.leading())
        });
        c.check(
            id,
            "constant-terms",
            r.f.constant_term() == r.g.constant_term(),
            || "f and g have different constant terms".into(),
        );
        c.check(id, "primitive", is_primitive_pair(&r.f, &r.g), || {
            "pair is not primitive".into()
        });
        c.check(id, "common-root", !have_common_root(&r.f, &r.g), || {
            "f and g share a root".into()
        });
        c.check(
            id,
            "status",
            Status::of_table(r.table) == Some(r.status),
            || format!("status {} in table {}", r.status, r.table),
        );

        match levelt_triple(&r.f, &r.g) {
            Ok(t) => {
                let want = expected_v(&diff, t.dim());
                c.check(id, "v-pattern", t.v == want, || {
                    format!("v = {}, expected {want}", t.v)
                });
            }
            Err(e) => c.check(id, "v-pattern", false, || e.to_string()),
        }
        match sign_conjugation_holds(&r.f, &r.g) {
            Ok(flags) => {
                for (ok, what) in flags.into_iter().zip(["A", "B", "C"]) {
                    c.check(id, "sign-conjugation", ok, || {
                        format!("identity fails for {what}")
                    });
                }
            }
            Err(e) => c.check(id, "sign-conjugation", false, || e.to_string()),
        }

        c.check(id, "partner-table", r.partner.table == r.table, || {
            format!("partner {} lies in another table", r.partner)
        });
        match index.get(&r.partner) {
            None => c.check(id, "partner", false, || {
                format!("partner {} does not exist", r.partner)
            }),
            Some(p) => {
                c.check(id, "partner-involution", p.partner == r.id(), || {
                    format!("partner {} points to {}", r.partner, p.partner)
                });
                let neg = sorted_pair(&negate_variable(&r.f), &negate_variable(&r.g));
                c.check(id, "partner-pair", neg == sorted_pair(&p.f, &p.g), || {
                    format!("(f(-X), g(-X)) differs from the pair of {}", r.partner)
                });
            }
        }
    }

    for (k, &want) in TABLE_SIZES.iter().enumerate() {
        let t = k as u8 + 1;
        let got = per_table.get(&t).copied().unwrap_or(0);
        c.check(None, "table-size", got == want, || {
            format!("table {t} has {got} rows, expected {want}")
        });
        let status = Status::of_table(t).expect("tables 1 to 4");
        let n = counts.get(&status).copied().unwrap_or(0);
        c.check(None, "status-count", n == want, || {
            format!("{n} rows marked {status}, expected {want}")
        });
    }

    for cert in builtin_certificates() {
        let Ok(id) = cert.example_id.parse::<RowRef>() else {
            continue;
        };
        match index.get(&id) {
            None => c.check(Some(id), "certificate-row", false, || {
                "certificate row missing".into()
            }),
            Some(r) => {
                let same = sorted_exponents(&r.alpha) == sorted_exponents(&cert.alpha)
                    && sorted_exponents(&r.beta) == sorted_exponents(&cert.beta);
                c.check(Some(id), "certificate-row", same, || {
                    "exponents differ from the certificate".into()
                });
                c.check(
                    Some(id),
                    "certificate-row",
                    r.sv_example == cert.sv_example,
                    || "example number differs from the certificate".into(),
                );
            }
        }
    }

    TableReport {
        rows: rows.len(),
        per_table,
        counts,
        checks: c.checks,
        violations: c.violations,
    }
}
