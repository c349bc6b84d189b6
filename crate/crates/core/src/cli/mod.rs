//! Command-line front end: `verify`, `apply`, `matrix` and `groupinfo`.
//!
//! Exit codes: 0 when every assertion passes, 1 on a failed assertion or an
//! evaluation error (e.g. an operator that is not degree preserving), 2 on
//! usage, parse and scope errors.

mod input;
mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::clifford::Blade;
use crate::clifford::{CliffordElement, Signature};
use crate::exactfield::{ParamScalar, RadicalComplex, Rational};
use crate::group::{
    generate_group, orbit_check, pin_group, pin_product, tilde_lift, PinElement, PresetName, RootSystemPreset, Weights,
    DEFAULT_CLOSURE_BUDGET,
};
use crate::matrixrep::{matrix_of_with, ExactMatrix, GradedBasis, MatrixError};
use crate::operators::{basis_up_to_degree, bracket, equal_on_basis, Catalogue, Evaluator, Operator, G2_ONLY_NAMES};
use crate::poly::Monomial;
use crate::relations::{
    coxeter_order, select, verify_many_on, RelationError, RelationKind, ReportVerdict, VerificationReport,
};

pub use input::parse_spinor;
pub use parse::{parse, render, Expr, ParseError, Scalar, ScalarName};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Relation(_) | CliError::Usage(_) => 2,
            CliError::Matrix(_) | CliError::Evaluation(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dunkl-sym",
    version,
    about = "Exact verification of Dirac-Dunkl symmetry algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the relation registry, or `expr = 0`, on all basis elements up to a degree.
    Verify(VerifyArgs),
    /// Apply an operator expression to a spinor polynomial.
    Apply(ApplyArgs),
    /// Matrix of a degree-preserving operator on a graded piece.
    Matrix(MatrixArgs),
    /// Reflection group, root orbits and Pin double covers.
    Groupinfo(GroupArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, default_value = "g2", value_parser = parse_preset)]
    group: PresetName,
    /// Clifford signature, +1 or -1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
    epsilon: Option<Signature>,
    /// Instantiate kappa1 (requires --kappa2); symbolic otherwise.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    kappa1: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    kappa2: Option<Rational>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Check `EXPR = 0` instead of (or in addition to) registry relations.
    #[arg(long)]
    expr: Option<String>,
    /// Relation name or family, e.g. `R8` or `R8a`.
    #[arg(long)]
    relation: Option<String>,
    /// Check only this many basis elements, drawn with --seed.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock times; reports are otherwise reproducible byte for byte.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct ApplyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    expr: String,
    /// Spinor polynomial, e.g. `x1^2*e12 - 1/2*x3`.
    #[arg(long)]
    input: String,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    expr: String,
    #[arg(long, default_value_t = 0)]
    degree: u32,
    /// Also print the characteristic polynomial in `l`.
    #[arg(long)]
    charpoly: bool,
}

#[derive(Debug, Args)]
struct GroupArgs {
    #[arg(long, default_value = "g2", value_parser = parse_preset)]
    group: PresetName,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
    epsilon: Option<Signature>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_preset(s: &str) -> Result<PresetName, String> {
    s.parse::<PresetName>().map_err(|e| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<Signature, String> {
    match s {
        "+1" | "1" => Ok(Signature::PLUS),
        "-1" => Ok(Signature::MINUS),
        _ => Err(format!("epsilon must be +1 or -1, got {s:?}")),
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

impl Common {
    fn kappa(&self) -> Result<Option<(Rational, Rational)>, CliError> {
        match (&self.kappa1, &self.kappa2) {
            (Some(a), Some(b)) => Ok(Some((a.clone(), b.clone()))),
            (None, None) => Ok(None),
            _ => Err(CliError::Usage("--kappa1 and --kappa2 must be given together".into())),
        }
    }

    fn signatures(&self) -> Vec<Signature> {
        self.epsilon
            .map_or_else(|| vec![Signature::PLUS, Signature::MINUS], |s| vec![s])
    }

    /// Single signature for commands that need one; +1 by default.
    fn signature(&self) -> Signature {
        self.epsilon.unwrap_or(Signature::PLUS)
    }

    fn weights(&self) -> Result<Weights, CliError> {
        Ok(match self.kappa()? {
            Some((a, b)) => Weights::rational(a, b),
            None => Weights::symbolic(),
        })
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
    }

    fn reject_csv(&self, command: &str) -> Result<(), CliError> {
        if self.format == Format::Csv {
            return Err(CliError::Usage(format!(
                "--format csv is only available for matrix, not {command}"
            )));
        }
        Ok(())
    }
}

/// Builds the operator denoted by `e`; kappa literals take the given values
/// when `kappa` is set.
pub fn build_operator(e: &Expr, cat: &Catalogue, kappa: Option<&(Rational, Rational)>) -> Result<Operator, CliError> {
    Ok(match e {
        Expr::Scalar(s) => Operator::scalar(scalar_of(s, kappa)),
        Expr::Name(n) => {
            if cat.preset.name != PresetName::G2 && G2_ONLY_NAMES.contains(&n.as_str()) {
                return Err(RelationError::ScopeMismatch {
                    relation: n.clone(),
                    preset: cat.preset.name.to_string(),
                }
                .into());
            }
            cat.lookup(n)
                .ok_or_else(|| CliError::Usage(format!("{n} is not defined for preset {}", cat.preset.name)))?
        }
        Expr::Call(kind, a, b) => bracket(&build_operator(a, cat, kappa)?, &build_operator(b, cat, kappa)?, *kind),
        Expr::Paren(a) => build_operator(a, cat, kappa)?,
        Expr::Neg(a) => -build_operator(a, cat, kappa)?,
        Expr::Product(v) => Operator::compose(
            v.iter()
                .map(|f| build_operator(f, cat, kappa))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Expr::Sum(first, rest) => {
            let mut terms = vec![build_operator(first, cat, kappa)?];
            for (minus, t) in rest {
                let op = build_operator(t, cat, kappa)?;
                terms.push(if *minus { -op } else { op });
            }
            Operator::sum(terms)
        }
    })
}

fn scalar_of(s: &Scalar, kappa: Option<&(Rational, Rational)>) -> ParamScalar {
    let v = match s {
        Scalar::Rational(r) => ParamScalar::rational(r.clone()),
        Scalar::Named(n) => input::scalar_value(*n),
    };
    match kappa {
        Some((k1, k2)) => ParamScalar::constant(v.instantiate(k1, k2)),
        None => v,
    }
}

/// Runs the command line `args` (program name first), writing reports to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => run_verify(&a, out),
        Command::Apply(a) => run_apply(&a, out),
        Command::Matrix(a) => run_matrix(&a, out),
        Command::Groupinfo(a) => run_groupinfo(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn io(e: std::io::Error) -> CliError {
    CliError::Evaluation(format!("cannot write output: {e}"))
}

fn sample_basis(n: u32, sample: Option<usize>, seed: u64) -> Vec<(Monomial, Blade)> {
    let full = basis_up_to_degree(n);
    let Some(k) = sample else {
        return full;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, full.len(), k.min(full.len())).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| full[i]).collect()
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let c = &a.common;
    c.reject_csv("verify")?;
    let kappa = c.kappa()?;
    let preset = RootSystemPreset::by_name(c.group);
    let relations = match &a.relation {
        Some(sel) => {
            let found = select(sel)?;
            if !found.iter().any(|r| r.in_scope(c.group)) {
                return Err(RelationError::ScopeMismatch {
                    relation: sel.clone(),
                    preset: c.group.to_string(),
                }
                .into());
            }
            found
        }
        None if a.expr.is_some() => Vec::new(),
        None => crate::relations::registry(),
    };
    let expr = a.expr.as_deref().map(parse).transpose()?;
    let basis = sample_basis(a.max_degree, a.sample, a.seed);
    let pool = c.pool()?;
    let mut reports = Vec::new();
    for s in c.signatures() {
        if let Some(e) = &expr {
            let cat = Catalogue::new(&preset, s, c.weights()?);
            let op = build_operator(e, &cat, kappa.as_ref())?;
            let start = std::time::Instant::now();
            let cmp = pool.install(|| equal_on_basis(&Evaluator::new(), &op, &Operator::zero(), &basis));
            reports.push(VerificationReport {
                name: "expr".into(),
                group: "expr".into(),
                statement: format!("{} = 0", render(e)),
                citation: String::new(),
                preset: c.group.to_string(),
                epsilon: s.epsilon(),
                kind: RelationKind::Assert,
                degree: a.max_degree,
                basis_size: cmp.basis_size,
                verdict: if cmp.verdict.is_pass() {
                    ReportVerdict::Pass
                } else {
                    ReportVerdict::Fail
                },
                witness: cmp.verdict.witness().cloned(),
                millis: Some(start.elapsed().as_millis()),
            });
        }
        reports.extend(pool.install(|| verify_many_on(&relations, a.max_degree, s, &preset, kappa.as_ref(), &basis)));
    }
    if !a.timing {
        reports.iter_mut().for_each(|r| r.millis = None);
    }
    for r in &reports {
        let line = match c.format {
            Format::Json => r.to_json_line(),
            _ => r.to_text(),
        };
        writeln!(out, "{line}").map_err(io)?;
    }
    let failed = reports.iter().filter(|r| !r.is_ok()).count();
    if c.format == Format::Text {
        let probes = reports.iter().filter(|r| r.kind == RelationKind::Probe).count();
        let passed = reports.len() - failed - probes;
        writeln!(out, "summary: {passed} passed, {failed} failed, {probes} probes").map_err(io)?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn run_apply(a: &ApplyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let c = &a.common;
    c.reject_csv("apply")?;
    let kappa = c.kappa()?;
    let s = c.signature();
    let preset = RootSystemPreset::by_name(c.group);
    let cat = Catalogue::new(&preset, s, c.weights()?);
    let e = parse(&a.expr)?;
    let op = build_operator(&e, &cat, kappa.as_ref())?;
    let v = parse_spinor(&a.input, s)?;
    let v = match &kappa {
        Some((k1, k2)) => v.instantiate(k1, k2),
        None => v,
    };
    let r = c
        .pool()?
        .install(|| op.apply(&v))
        .map_err(|e| CliError::Evaluation(e.to_string()))?;
    match c.format {
        Format::Json => {
            let j = json!({
                "expr": render(&e),
                "input": v.to_string(),
                "epsilon": s.epsilon(),
                "result": r.to_string(),
            });
            writeln!(out, "{j}").map_err(io)?;
        }
        _ => writeln!(out, "{r}").map_err(io)?,
    }
    Ok(0)
}

enum AnyMatrix {
    Symbolic(ExactMatrix<ParamScalar>),
    Constant(ExactMatrix<RadicalComplex>),
}

impl AnyMatrix {
    fn rows(&self) -> Vec<Vec<String>> {
        match self {
            AnyMatrix::Symbolic(m) => m.rows_text(),
            AnyMatrix::Constant(m) => m.rows_text(),
        }
    }

    fn csv(&self) -> String {
        match self {
            AnyMatrix::Symbolic(m) => m.to_csv(),
            AnyMatrix::Constant(m) => m.to_csv(),
        }
    }

    fn charpoly(&self) -> String {
        match self {
            AnyMatrix::Symbolic(m) => m.charpoly().to_string(),
            AnyMatrix::Constant(m) => m.charpoly().factored(),
        }
    }
}

fn run_matrix(a: &MatrixArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let c = &a.common;
    let kappa = c.kappa()?;
    let s = c.signature();
    let preset = RootSystemPreset::by_name(c.group);
    let cat = Catalogue::new(&preset, s, c.weights()?);
    let e = parse(&a.expr)?;
    let op = build_operator(&e, &cat, kappa.as_ref())?;
    let m = c.pool()?.install(|| matrix_of_with(&Evaluator::new(), &op, a.degree))?;
    let constant = (0..m.dim()).all(|i| (0..m.dim()).all(|j| m.get(i, j).as_constant().is_some()));
    let m = if constant {
        AnyMatrix::Constant(m.map(|x| x.as_constant().expect("checked constant")))
    } else {
        AnyMatrix::Symbolic(m)
    };
    let basis = GradedBasis::new(a.degree);
    let charpoly = a.charpoly.then(|| m.charpoly());
    match c.format {
        Format::Csv => {
            write!(out, "{}", m.csv()).map_err(io)?;
            if let Some(p) = &charpoly {
                writeln!(out, "# charpoly: {p}").map_err(io)?;
            }
        }
        Format::Json => {
            let j = json!({
                "expr": render(&e),
                "degree": a.degree,
                "epsilon": s.epsilon(),
                "kappa": kappa.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
                "dimension": basis.len(),
                "basis": basis.labels(),
                "rows": m.rows(),
                "charpoly": charpoly,
            });
            writeln!(out, "{j}").map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "basis: {}", basis.labels().join(", ")).map_err(io)?;
            for row in m.rows() {
                writeln!(out, "[{}]", row.join(", ")).map_err(io)?;
            }
            if let Some(p) = &charpoly {
                writeln!(out, "charpoly: {p}").map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn word_text(w: &[usize], names: &[String]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join("*")
    }
}

fn sign_of(p: &PinElement) -> Option<i64> {
    if !p.matrix.is_identity() {
        return None;
    }
    if p.spinor == CliffordElement::one() {
        Some(1)
    } else if p.spinor == CliffordElement::one().neg() {
        Some(-1)
    } else {
        None
    }
}

fn run_groupinfo(a: &GroupArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.format == Format::Csv {
        return Err(CliError::Usage(
            "--format csv is only available for matrix, not groupinfo".into(),
        ));
    }
    let preset = RootSystemPreset::by_name(a.group);
    let evaluation = |e: crate::group::GroupError| CliError::Evaluation(e.to_string());
    let gen_names: Vec<String> = preset.simple.iter().map(|k| format!("sig{}", k + 1)).collect();
    let group = generate_group(&preset.simple_reflections(), DEFAULT_CLOSURE_BUDGET).map_err(evaluation)?;
    let orbits = orbit_check(&preset).map_err(evaluation)?;
    let elements: Vec<(String, Vec<Vec<String>>)> = group
        .elements
        .iter()
        .zip(&group.words)
        .map(|(g, w)| {
            let rows = (0..3)
                .map(|i| (0..3).map(|j| g.entry(i, j).to_string()).collect())
                .collect();
            (word_text(w, &gen_names), rows)
        })
        .collect();
    let m = coxeter_order(&preset);
    let signatures = a
        .epsilon
        .map_or_else(|| vec![Signature::PLUS, Signature::MINUS], |s| vec![s]);
    let mut covers = Vec::new();
    for s in signatures {
        let cover = pin_group(&preset, s).map_err(evaluation)?;
        let involutions = cover
            .elements
            .iter()
            .filter(|g| sign_of(g) != Some(1) && sign_of(&pin_product(g, g, s)) == Some(1))
            .count();
        let squares_ok = preset.roots.iter().all(|r| {
            let l = tilde_lift(&r.vector);
            sign_of(&pin_product(&l, &l, s)) == Some(s.epsilon())
        });
        let l1 = tilde_lift(&preset.roots[preset.simple[0]].vector);
        let l2 = tilde_lift(&preset.roots[preset.simple[1]].vector);
        let p = pin_product(&l1, &l2, s);
        let mut power = PinElement::identity();
        for _ in 0..m {
            power = pin_product(&power, &p, s);
        }
        covers.push(json!({
            "epsilon": s.epsilon(),
            "order": cover.order(),
            "kind": if involutions == 1 { "dicyclic" } else { "dihedral" },
            "involutions": involutions,
            "lift_squares_equal_epsilon": squares_ok,
            "braid": format!("(t{}*t{})^{m}", gen_names[0], gen_names[1]),
            "braid_value": sign_of(&power),
        }));
    }
    let orbit_list: Vec<_> = orbits
        .orbits
        .iter()
        .zip(&orbits.orbit_classes)
        .map(|(o, c)| json!({"class": format!("{c:?}").to_lowercase(), "roots": o}))
        .collect();
    if a.format == Format::Json {
        let j = json!({
            "group": a.group.to_string(),
            "order": group.order(),
            "generators": gen_names,
            "coxeter_order": m,
            "elements": elements.iter().map(|(w, rows)| json!({"word": w, "matrix": rows})).collect::<Vec<_>>(),
            "orbits": orbit_list,
            "double_covers": covers,
        });
        writeln!(out, "{j}").map_err(io)?;
        return Ok(0);
    }
    let mut text = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(text, "group: {}", a.group);
    let _ = writeln!(text, "order: {}", group.order());
    let _ = writeln!(text, "generators: {} (coxeter order {m})", gen_names.join(", "));
    let _ = writeln!(text, "elements:");
    for (w, rows) in &elements {
        let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
        let _ = writeln!(text, "  {w}: [{}]", rows.join(", "));
    }
    let _ = writeln!(text, "orbits:");
    for o in &orbit_list {
        let roots: Vec<&str> = o["roots"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(|v| v.as_str())
            .collect();
        let _ = writeln!(text, "  {}: {}", o["class"].as_str().unwrap_or(""), roots.join(" "));
    }
    for cv in &covers {
        let braid = match cv["braid_value"].as_i64() {
            Some(v) => format!("{v:+}"),
            None => "not central".into(),
        };
        let _ = writeln!(
            text,
            "double cover (eps={:+}): order {}, {}, {} involution(s), tsig^2 = eps for every root: {}, {} = {}",
            cv["epsilon"].as_i64().unwrap_or(0),
            cv["order"],
            cv["kind"].as_str().unwrap_or(""),
            cv["involutions"],
            if cv["lift_squares_equal_epsilon"].as_bool() == Some(true) {
                "yes"
            } else {
                "no"
            },
            cv["braid"].as_str().unwrap_or(""),
            braid,
        );
    }
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(0)
}

#[cfg(test)]
mod tests;
