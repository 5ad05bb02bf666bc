//! `sp4mono`: command-line front end for the `sp4-monodromy` library.
//!
//! # Exit codes
//!
//! - 0: success, every check passed
//! - 1: a verification failed
//! - 2: invalid input
//! - 3: search exhausted its bounds
//!
//! A batch reports its worst outcome, ranked 2 > 1 > 3 > 0.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sp4_monodromy::certificate::{parse_certificates, Certificate};
use sp4_monodromy::form::proportionality;
use sp4_monodromy::search::{find_gamma_with_progress, gamma_candidates, Derivation, Progress};
use sp4_monodromy::tables::{self, dataset_to_json, find_row, find_sv, RowRef, TableRow};
use sp4_monodromy::{
    adapted_basis, build_basis, builtin_certificates, derive_witnesses, evaluate_word,
    from_exponents, invariant_form, levelt_triple, validate_tables, verify_basis,
    verify_certificate, ExponentVector, GammaStatus, GroupWord, IntPolynomial, MonodromyTriple, Rational,
    SymplecticBasis, VerificationReport,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exit {
    Success,
    Exhausted,
    VerificationFailed,
    InvalidInput,
}

impl Exit {
    fn code(self) -> u8 {
        match self {
            Exit::Success => 0,
            Exit::VerificationFailed => 1,
            Exit::InvalidInput => 2,
            Exit::Exhausted => 3,
        }
    }

    fn severity(self) -> u8 {
        match self {
            Exit::Success => 0,
            Exit::Exhausted => 1,
            Exit::VerificationFailed => 2,
            Exit::InvalidInput => 3,
        }
    }

    fn worst(self, other: Exit) -> Exit {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sp4mono", version, about = "Exact monodromy computations for symplectic hypergeometric groups")]
struct Cli {
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Directory holding tables.json and/or certificates.json
    #[arg(long, global = true, value_name = "DIR", env = "SP4MONO_DATA_DIR")]
    data: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate or export the bundled tables
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// Verify arithmeticity certificates
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Compute the invariant form and an anti-diagonal basis
    Form(FormArgs),
    /// Search for a conjugator and derive root-group witnesses
    Search(SearchArgs),
    /// Summary across all rows
    Report(ReportArgs),
}

#[derive(Debug, Subcommand)]
enum TablesAction {
    /// Run every consistency check
    Validate,
    /// Write the dataset as JSON
    Export {
        /// Output file; stdout when absent
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CertAction {
    /// Recompute a certificate's claims
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct VerifyArgs {
    /// Built-in certificate for row 3:N
    #[arg(long, value_name = "N")]
    example: Option<usize>,
    /// Every built-in certificate
    #[arg(long)]
    all: bool,
    /// Certificate file: one certificate or a certificate collection
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FormArgs {
    /// Exponents of f, e.g. "[1/2,1/2,1/3,2/3]"
    #[arg(long, requires = "beta", conflicts_with_all = ["f", "row"], allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Exponents of g
    #[arg(long, requires = "alpha", allow_hyphen_values = true)]
    beta: Option<String>,
    /// Polynomial f, e.g. "X^4+2X^3+3X^2+2X+1" or "[1,2,3,2,1]"
    #[arg(long, requires = "g", conflicts_with = "row", allow_hyphen_values = true)]
    f: Option<String>,
    /// Polynomial g
    #[arg(long, requires = "f", allow_hyphen_values = true)]
    g: Option<String>,
    /// Table row as T:N
    #[arg(long, value_name = "T:N")]
    row: Option<String>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Table row as T:N
    #[arg(long, value_name = "T:N", conflicts_with = "sv", required_unless_present = "sv")]
    row: Option<String>,
    /// Row by its example number in the earlier numbering
    #[arg(long, value_name = "N")]
    sv: Option<u32>,
    /// Longest word tried
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    /// Largest exponent per letter
    #[arg(long, default_value_t = 8)]
    max_exp: u32,
    /// Largest template parameter tried when deriving witnesses
    #[arg(long, default_value_t = 32)]
    budget: u32,
    /// Stream progress as JSON lines on stderr
    #[arg(long)]
    progress: bool,
    /// Write the derived certificate here when coverage is complete
    #[arg(long, value_name = "PATH")]
    emit_cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Longest word tried per row
    #[arg(long, default_value_t = 1)]
    max_len: usize,
    /// Largest exponent per letter
    #[arg(long, default_value_t = 8)]
    max_exp: u32,
    /// Largest template parameter tried when deriving witnesses
    #[arg(long, default_value_t = 16)]
    budget: u32,
}

struct Data {
    rows: Vec<TableRow>,
    certs: Vec<Certificate>,
}

impl Data {
    fn load(dir: Option<&Path>) -> anyhow::Result<Data> {
        let mut data = Data {
            rows: tables::dataset().to_vec(),
            certs: builtin_certificates().to_vec(),
        };
        let Some(dir) = dir else {
            return Ok(data);
        };
        if !dir.is_dir() {
            bail!("data directory {} does not exist", dir.display());
        }
        let t = dir.join("tables.json");
        if t.exists() {
            data.rows = tables::load(&t).with_context(|| format!("reading {}", t.display()))?;
        }
        let c = dir.join("certificates.json");
        if c.exists() {
            let src = std::fs::read_to_string(&c).with_context(|| format!("reading {}", c.display()))?;
            data.certs = parse_certificates(&src).with_context(|| format!("parsing {}", c.display()))?;
        }
        Ok(data)
    }

    fn row(&self, id: &str) -> anyhow::Result<&TableRow> {
        let r: RowRef = id.parse()?;
        find_row(&self.rows, r).ok_or_else(|| anyhow!("no row {r} in the dataset"))
    }

    fn sv(&self, n: u32) -> anyhow::Result<&TableRow> {
        find_sv(&self.rows, n).ok_or_else(|| anyhow!("no row carries example number {n}"))
    }
}

struct Ctx {
    json: bool,
    data: Data,
}

impl Ctx {
    fn emit(&self, value: Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        let mut out = std::io::stdout().lock();
        if self.json {
            let mut value = value;
            if let Value::Object(m) = &mut value {
                m.insert("schema_version".into(), json!(SCHEMA_VERSION));
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        } else {
            writeln!(out, "{}", text())?;
        }
        Ok(())
    }
}

fn q(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn tables_validate(ctx: &Ctx) -> anyhow::Result<Exit> {
    let report = validate_tables(&ctx.data.rows);
    let exit = if report.ok() { Exit::Success } else { Exit::VerificationFailed };
    ctx.emit(serde_json::to_value(&report)?, || {
        let mut s = format!(
            "{} rows in {} tables, {} checks, {} violations",
            report.rows,
            report.per_table.len(),
            report.checks,
            report.violations.len()
        );
        for (status, n) in &report.counts {
            s += &format!("\n  {:<20} {n}", status.as_str());
        }
        for v in &report.violations {
            s += &format!("\n  {v}");
        }
        s
    })?;
    Ok(exit)
}

fn tables_export(ctx: &Ctx, output: Option<&Path>) -> anyhow::Result<Exit> {
    let text = dataset_to_json(&ctx.data.rows);
    match output {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(Exit::Success)
}

fn report_text(r: &VerificationReport, detailed: bool) -> String {
    let verdict = if r.arithmetic_certified { "certified" } else { "NOT certified" };
    let mut s = format!("{}: {verdict}", r.example_id);
    if let Some(sc) = &r.scalar {
        s += &format!("\n  printed form = {} x recomputed form", q(sc));
    }
    if let Some(g) = &r.gram {
        s += &format!("\n  gram (c1, c2) = ({}, {})", q(&g.c1), q(&g.c2));
    }
    let labels: Vec<&str> = r.coverage.labels().iter().map(|l| l.as_str()).collect();
    s += &format!("\n  coverage: {}", if labels.is_empty() { "none".into() } else { labels.join(", ") });
    if detailed {
        for step in &r.steps {
            let mark = match step.matches_expected {
                Some(true) => " (matches printed)",
                Some(false) => " (DIFFERS from printed)",
                None => "",
            };
            s += &format!("\n  {} = {}{mark}\n", step.name, step.expr);
            for line in step.matrix.to_string().lines() {
                s += &format!("    {line}\n");
            }
            s.pop();
        }
        for w in &r.witnesses {
            let found = w.found.map_or("not in a root group", |l| l.as_str());
            s += &format!("\n  witness {}: claimed {}, found {found}", w.name, w.claimed.as_str());
        }
    }
    for f in &r.failures {
        s += &format!("\n  failure: {f}");
    }
    s
}

fn certificates_from_file(path: &Path) -> anyhow::Result<Vec<Certificate>> {
    let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match Certificate::from_json(&src) {
        Ok(c) => Ok(vec![c]),
        Err(single) => parse_certificates(&src)
            .map_err(|many| anyhow!("{}: not a certificate ({single}) nor a collection ({many})", path.display())),
    }
}

fn cert_verify(ctx: &Ctx, args: &VerifyArgs) -> anyhow::Result<Exit> {
    let certs: Vec<Certificate> = if let Some(n) = args.example {
        let id = format!("3:{n}");
        let c = ctx.data.certs.iter().find(|c| c.example_id == id);
        vec![c.ok_or_else(|| anyhow!("no built-in certificate for row {id}"))?.clone()]
    } else if let Some(p) = &args.file {
        certificates_from_file(p)?
    } else {
        ctx.data.certs.clone()
    };
    let reports: Vec<VerificationReport> = certs.iter().map(verify_certificate).collect();
    let exit = if reports.iter().all(|r| r.arithmetic_certified) {
        Exit::Success
    } else {
        Exit::VerificationFailed
    };
    let detailed = reports.len() == 1;
    ctx.emit(json!({ "reports": reports }), || {
        let mut parts: Vec<String> = reports.iter().map(|r| report_text(r, detailed)).collect();
        let ok = reports.iter().filter(|r| r.arithmetic_certified).count();
        parts.push(format!("{ok} of {} certificates verified", reports.len()));
        parts.join("\n")
    })?;
    Ok(exit)
}

fn parse_polynomial(s: &str) -> anyhow::Result<IntPolynomial> {
    s.parse().with_context(|| format!("invalid polynomial {s:?}"))
}

fn parse_exponents(s: &str) -> anyhow::Result<ExponentVector> {
    s.parse().with_context(|| format!("invalid exponent vector {s:?}"))
}

fn sorted(e: &ExponentVector) -> Vec<Rational> {
    let mut v = e.entries().to_vec();
    v.sort();
    v
}

fn form(ctx: &Ctx, args: &FormArgs) -> anyhow::Result<Exit> {
    let (f, g, exps) = if let (Some(a), Some(b)) = (&args.alpha, &args.beta) {
        let (a, b) = (parse_exponents(a)?, parse_exponents(b)?);
        (from_exponents(&a)?, from_exponents(&b)?, Some((a, b)))
    } else if let (Some(f), Some(g)) = (&args.f, &args.g) {
        (parse_polynomial(f)?, parse_polynomial(g)?, None)
    } else if let Some(id) = &args.row {
        let r = ctx.data.row(id)?;
        (r.f.clone(), r.g.clone(), Some((r.alpha.clone(), r.beta.clone())))
    } else {
        bail!("give --alpha/--beta, --f/--g or --row");
    };
    let t = levelt_triple(&f, &g)?;
    let form = invariant_form(&t)?;
    let basis = build_basis(&form, &t.v)?;
    let gram = verify_basis(&form, &basis)?;
    let invariant = [&t.a, &t.b].map(|m| sp4_monodromy::check_symplectic(m, &form));
    let printed = exps.as_ref().and_then(|(a, b)| {
        ctx.data.certs.iter().find_map(|c| {
            let same = sorted(&c.alpha) == sorted(a) && sorted(&c.beta) == sorted(b);
            let omega = c.omega.as_ref().filter(|_| same)?;
            Some((c.example_id.clone(), proportionality(omega, &form.omega)))
        })
    });
    let value = json!({
        "f": f,
        "g": g,
        "v": t.v,
        "omega": form.omega,
        "basis": basis.vectors(),
        "gram": [q(&gram.c1), q(&gram.c2)],
        "invariant_under": { "A": invariant[0], "B": invariant[1] },
        "printed": printed.as_ref().map(|(id, s)| json!({
            "example_id": id,
            "proportional": s.is_some(),
            "scalar": s.as_ref().map(q),
        })),
    });
    let exit = if invariant.iter().all(|&b| b) { Exit::Success } else { Exit::VerificationFailed };
    ctx.emit(value, || {
        let mut s = format!("f = {f}\ng = {g}\nv = {}\nOmega =\n{}", t.v, form.omega);
        s += "\nbasis (e1, e2, e2*, e1*):";
        for b in basis.vectors() {
            s += &format!("\n  {b}");
        }
        s += &format!("\ngram (c1, c2) = ({}, {})", q(&gram.c1), q(&gram.c2));
        s += &format!("\ninvariant under A: {}, B: {}", invariant[0], invariant[1]);
        if let Some((id, sc)) = &printed {
            match sc {
                Some(sc) => s += &format!("\nprinted form for {id} = {} x Omega", q(sc)),
                None => s += &format!("\nprinted form for {id} is NOT proportional to Omega"),
            }
        }
        s
    })?;
    Ok(exit)
}

/// Conjugators tried, in search order, before settling for a partial recipe.
const CANDIDATE_LIMIT: usize = 16;

/// Derives witnesses from `first`, moving on to later search hits while the
/// adapted basis degenerates or coverage stays incomplete. Returns the first
/// complete recipe, else the widest one seen.
fn derive_from_candidates(
    t: &MonodromyTriple,
    form: &sp4_monodromy::SymplecticForm,
    first: &GroupWord,
    max_len: usize,
    max_exp: u32,
    budget: u32,
) -> sp4_monodromy::Result<(GroupWord, SymplecticBasis, Derivation)> {
    let mut best: Option<(GroupWord, SymplecticBasis, Derivation)> = None;
    let mut last_err = None;
    let later = gamma_candidates(t, max_len, max_exp, CANDIDATE_LIMIT)
        .into_iter()
        .map(|(w, _)| w)
        .filter(|w| w != first);
    for gamma in std::iter::once(first.clone()).chain(later) {
        let attempt = adapted_basis(form, &t.v, &evaluate_word(t, &gamma))
            .and_then(|basis| Ok((derive_witnesses(t, form, &basis, &gamma, budget)?, basis)));
        match attempt {
            Ok((d, basis)) => {
                if d.is_complete() {
                    return Ok((gamma, basis, d));
                }
                let wider = best.as_ref().is_none_or(|(_, _, b)| d.coverage.found.len() > b.coverage.found.len());
                if wider {
                    best = Some((gamma, basis, d));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match (best, last_err) {
        (Some(b), _) => Ok(b),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("at least one conjugator is tried"),
    }
}

struct SearchOutcome {
    value: Value,
    text: String,
    exit: Exit,
    certificate: Option<Certificate>,
}

fn run_search(
    row: &TableRow,
    t: &MonodromyTriple,
    max_len: usize,
    max_exp: u32,
    budget: u32,
    progress: impl FnMut(Progress),
) -> anyhow::Result<SearchOutcome> {
    let res = find_gamma_with_progress(t, max_len, max_exp, progress);
    let mut value = json!({ "row": row.id(), "status": row.status, "gamma": res });
    let mut text = format!("{}: {:?}, explored {}", row.id(), res.status, res.explored);
    let mut certificate = None;
    match res.status {
        GammaStatus::Obstructed => {
            let g = res.obstruction_gcd.as_ref().map(ToString::to_string).unwrap_or_default();
            text += &format!("\n  gcd of v is {g}; no word can reach e4 coefficient 1 or 2");
        }
        GammaStatus::Exhausted => {
            text += &format!("\n  nothing within length {max_len} and exponent {max_exp}");
        }
        GammaStatus::Found => {
            let gamma = res.gamma.clone().expect("found result carries a word");
            let coeff = res.e4_coeff.as_ref().map(ToString::to_string).unwrap_or_default();
            text += &format!("\n  gamma = {gamma}, e4 coefficient of gamma v is {coeff}");
            let form = invariant_form(t)?;
            let derived = derive_from_candidates(t, &form, &gamma, max_len, max_exp, budget);
            match derived {
                Ok((used, basis, d)) => {
                    let gram = verify_basis(&form, &basis)?;
                    let labels: Vec<&str> = d.coverage.labels().iter().map(|l| l.as_str()).collect();
                    if used != gamma {
                        text += &format!("\n  witnesses derived from later conjugator {used}");
                    }
                    text += &format!(
                        "\n  gram (c1, c2) = ({}, {})\n  coverage: {}{}",
                        q(&gram.c1),
                        q(&gram.c2),
                        if labels.is_empty() { "none".into() } else { labels.join(", ") },
                        if d.is_complete() { " (complete)" } else { "" }
                    );
                    for def in &d.definitions {
                        text += &format!("\n  {} = {}", def.name, def.expr);
                    }
                    value["derivation_gamma"] = json!(used);
                    value["basis"] = json!(basis.vectors());
                    value["gram"] = json!([q(&gram.c1), q(&gram.c2)]);
                    value["complete"] = json!(d.is_complete());
                    value["derivation"] = serde_json::to_value(&d)?;
                    if d.is_complete() {
                        certificate = Some(d.certificate(&row.id().to_string(), &row.alpha, &row.beta, &basis));
                    }
                }
                Err(e) => {
                    text += &format!("\n  no witnesses derived: {e}");
                    value["derivation_error"] = json!(e.to_string());
                }
            }
        }
    }
    let exit = if res.status == GammaStatus::Exhausted { Exit::Exhausted } else { Exit::Success };
    Ok(SearchOutcome { value, text, exit, certificate })
}

fn search(ctx: &Ctx, args: &SearchArgs) -> anyhow::Result<Exit> {
    let row = match (&args.row, args.sv) {
        (Some(id), _) => ctx.data.row(id)?,
        (None, Some(n)) => ctx.data.sv(n)?,
        (None, None) => bail!("give --row or --sv"),
    };
    let t = levelt_triple(&row.f, &row.g)?;
    let show = args.progress;
    let out = run_search(row, &t, args.max_len, args.max_exp, args.budget, |p| {
        if show {
            eprintln!("{}", json!({ "depth": p.depth, "level_size": p.level_size, "explored": p.explored }));
        }
    })?;
    let mut exit = out.exit;
    let mut value = out.value;
    let mut text = out.text;
    if let Some(path) = &args.emit_cert {
        match &out.certificate {
            Some(c) => {
                std::fs::write(path, c.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
                let check = verify_certificate(c);
                if !check.arithmetic_certified {
                    exit = exit.worst(Exit::VerificationFailed);
                }
                value["certificate_path"] = json!(path.display().to_string());
                text += &format!("\n  certificate written to {}", path.display());
            }
            None => eprintln!("no complete derivation; {} not written", path.display()),
        }
    }
    ctx.emit(value, || text)?;
    Ok(exit)
}

fn report(ctx: &Ctx, args: &ReportArgs) -> anyhow::Result<Exit> {
    let tables = validate_tables(&ctx.data.rows);
    let certs: Vec<VerificationReport> = ctx.data.certs.iter().map(verify_certificate).collect();
    let mut rows = Vec::new();
    let mut lines = vec![format!(
        "tables: {} rows, {} violations",
        tables.rows,
        tables.violations.len()
    )];
    for r in &ctx.data.rows {
        let t = levelt_triple(&r.f, &r.g)?;
        let out = run_search(r, &t, args.max_len, args.max_exp, args.budget, |_| {})?;
        let gamma = &out.value["gamma"];
        let complete = out.value.get("complete").and_then(Value::as_bool);
        let cert = certs.iter().find(|c| c.example_id == r.id().to_string());
        lines.push(format!(
            "{:<5} {:<18} {:<10} {:<8} {:<10} {}",
            r.id().to_string(),
            r.status.as_str(),
            gamma["status"].as_str().unwrap_or(""),
            gamma["gamma"].as_str().unwrap_or("-"),
            match complete {
                Some(true) => "complete",
                Some(false) => "partial",
                None if out.value.get("derivation_error").is_some() => "no basis",
                None => "-",
            },
            cert.map_or("", |c| if c.arithmetic_certified { "certified" } else { "NOT certified" })
        ));
        rows.push(json!({
            "row": r.id(),
            "status": r.status,
            "gamma": gamma,
            "complete": complete,
            "certified": cert.map(|c| c.arithmetic_certified),
        }));
    }
    let ok = certs.iter().filter(|c| c.arithmetic_certified).count();
    lines.push(format!("certificates: {ok} of {} verified", certs.len()));
    let mut exit = if tables.ok() { Exit::Success } else { Exit::VerificationFailed };
    if ok < certs.len() {
        exit = exit.worst(Exit::VerificationFailed);
    }
    let value = json!({
        "tables": { "rows": tables.rows, "violations": tables.violations },
        "certificates": certs.iter().map(|c| json!({
            "example_id": c.example_id,
            "arithmetic_certified": c.arithmetic_certified,
        })).collect::<Vec<_>>(),
        "rows": rows,
        "bounds": { "max_len": args.max_len, "max_exp": args.max_exp, "budget": args.budget },
    });
    ctx.emit(value, || lines.join("\n"))?;
    Ok(exit)
}

fn run(cli: Cli) -> anyhow::Result<Exit> {
    let ctx = Ctx {
        json: cli.json,
        data: Data::load(cli.data.as_deref())?,
    };
    match &cli.command {
        Command::Tables { action: TablesAction::Validate } => tables_validate(&ctx),
        Command::Tables { action: TablesAction::Export { output } } => tables_export(&ctx, output.as_deref()),
        Command::Cert { action: CertAction::Verify(args) } => cert_verify(&ctx, args),
        Command::Form(args) => form(&ctx, args),
        Command::Search(args) => search(&ctx, args),
        Command::Report(args) => report(&ctx, args),
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::InvalidInput.code() } else { 0 });
        }
    };
    match run(cli) {
        Ok(exit) => ExitCode::from(exit.code()),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Exit::InvalidInput.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::Exit;

    #[test]
    fn worst_outcome_wins() {
        use Exit::*;
        let all = [Success, Exhausted, VerificationFailed, InvalidInput];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                assert_eq!(a.worst(*b), all[i.max(j)]);
            }
        }
        assert_eq!([Success, VerificationFailed, InvalidInput, Exhausted].map(Exit::code), [0, 1, 2, 3]);
    }
}
