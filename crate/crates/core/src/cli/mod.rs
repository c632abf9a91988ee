//! Command-line front end: `check`, `analyze`, `prolong`, `extend-form` and
//! `quotient` on algebra files.
//!
//! Exit codes: 0 on success, 1 when a requested property fails or a
//! library precondition is violated, 2 on usage, I/O or parse errors.

mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::Value;

pub use report::Report;

use crate::check::{Check, Witness};
use crate::error::Error;
use crate::format::{export_algebra, parse_form, parse_spec, parse_vector, FormEntry};
use crate::forms::{extend_form, supersymmetric_completion, BilinearForm, ExtensionVerdict, SignConvention};
use crate::grading::{grading_report, is_simple, structural_criteria, SimplicityVerdict};
use crate::prolong::{prolong_minimal, Convention, LocalAlgebra, TensorWindow};
use crate::ratlin::{format_scalar, Matrix, Scalar, Subspace};
use crate::repth::IrreducibilityVerdict;
use crate::structure::{derived_and_center, quotient};
use crate::superalgebra::{check_axioms, format_combination, load_algebra, HomLieSuperalgebra};

#[derive(Debug, Parser)]
#[command(name = "homlie", version, about = "Exact computations with hom-Lie superalgebras")]
pub struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Verbatim,
    Koszul,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the hom-Lie superalgebra axioms.
    Check { file: PathBuf },
    /// Center, derived algebra, grading diagnostics and simplicity.
    Analyze { file: PathBuf },
    /// Realize the minimal graded algebra of a local part.
    Prolong {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        tensor_cap: usize,
        /// Sign convention for the tensor representation; tried in turn
        /// when omitted.
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
        /// Defaults to `<input>.prolonged.hls`.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Extend a local bilinear form degree by degree.
    ExtendForm {
        file: PathBuf,
        /// File with a `[form]` section; defaults to the algebra file's own.
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long)]
        max_degree: i64,
    },
    /// Quotient by a hom-ideal given as comma-separated combinations.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Defaults to `<input>.quotient.hls`.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Failure of a command, with its exit code.
struct Failure {
    code: i32,
    report: Report,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            _ => 1,
        };
        let mut r = Report::new();
        let mut inner = Report::new();
        inner.insert("message", e.to_string());
        if let Some(w) = e.witness() {
            inner.insert_serialized("witness", w);
        }
        r.insert("error", inner);
        Failure { code, report: r }
    }
}

fn usage_failure(message: String) -> Failure {
    let mut r = Report::new();
    let mut inner = Report::new();
    inner.insert("message", message);
    r.insert("error", inner);
    Failure { code: 2, report: r }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage_failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage_failure(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(HomLieSuperalgebra, Option<Vec<FormEntry>>), Failure> {
    let text = read(path)?;
    let spec = parse_spec(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.report.insert("file", path.display().to_string());
        f
    })?;
    let g = load_algebra(&spec.algebra).map_err(|e| Failure {
        code: 2,
        ..Failure::from(e)
    })?;
    Ok((g, spec.form))
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.hls"))
}

fn vector_text(g: &HomLieSuperalgebra, v: &[Scalar]) -> String {
    g.format_vector(v)
}

fn basis_texts(names: &[String], s: &Subspace) -> Vec<String> {
    s.basis_vectors().iter().map(|v| format_combination(names, v)).collect()
}

fn witness_text(g: &HomLieSuperalgebra, w: &Witness) -> Value {
    let l = |i: usize| g.label(i).to_string();
    match w {
        Witness::Basis(i) => l(*i).into(),
        Witness::Pair(i, j) => format!("({}, {})", l(*i), l(*j)).into(),
        Witness::Triple(i, j, k) => format!("({}, {}, {})", l(*i), l(*j), l(*k)).into(),
        Witness::Vector(v) => vector_text(g, v).into(),
        Witness::Vectors(vs) => vs.iter().map(|v| vector_text(g, v)).collect::<Vec<_>>().into(),
        Witness::Subspace(s) => basis_texts(g.names(), s).into(),
        Witness::Note(n) => n.clone().into(),
    }
}

/// Flags as `"pass"`/`"fail"` plus a map of witnesses for the failures.
fn checks(g: &HomLieSuperalgebra, items: &[(&str, &Check)]) -> Report {
    let mut flags = Report::new();
    let mut witnesses = Report::new();
    for (name, c) in items {
        flags.insert(name, if c.passed() { "pass" } else { "fail" });
        if let Some(w) = c.witness() {
            witnesses.insert(name, witness_text(g, w));
        }
    }
    if witnesses != Report::new() {
        flags.insert("witnesses", witnesses);
    }
    flags
}

fn subspace_report(names: &[String], s: &Subspace) -> Report {
    let mut r = Report::new();
    r.insert("dim", s.dim()).insert("basis", basis_texts(names, s));
    r
}

fn dims_text(dims: &std::collections::BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = dims.iter().map(|(k, d)| format!("{k}:{d}")).collect();
    format!("({})", parts.join(", "))
}

fn run_check(path: &Path) -> Result<(i32, Report), Failure> {
    let (g, _) = load(path)?;
    let a = check_axioms(&g);
    let mut items = vec![
        ("parity_graded", &a.parity_graded),
        ("supersymmetric", &a.supersymmetric),
        ("hom_jacobi", &a.hom_jacobi),
        ("multiplicative", &a.multiplicative),
        ("regular", &a.regular),
        ("alpha_idempotent", &a.alpha_idempotent),
    ];
    if let Some(z) = &a.z_grading_compatible {
        items.push(("z_grading_compatible", z));
    }
    let mut r = Report::new();
    r.insert("algebra", g.name())
        .insert("dim", g.dim())
        .insert("axioms", checks(&g, &items))
        .insert("hom_lie_superalgebra", a.is_hom_lie_superalgebra());
    Ok((if a.is_hom_lie_superalgebra() { 0 } else { 1 }, r))
}

fn simplicity_report(g: &HomLieSuperalgebra, v: &SimplicityVerdict) -> Report {
    let mut r = Report::new();
    r.insert("simple", v.simple)
        .insert("derived_nonzero", v.derived_nonzero)
        .insert("reason", v.reason.clone());
    if let Some(w) = &v.witness {
        r.insert("witness", basis_texts(g.names(), w));
    }
    if let Some(c) = &v.certificate {
        r.insert("certificate", c.clone());
    }
    r
}

fn verdict_report(names: &[String], v: &IrreducibilityVerdict) -> Report {
    let mut r = Report::new();
    match v {
        IrreducibilityVerdict::Irreducible { certificate } => {
            r.insert("status", "irreducible")
                .insert("certificate", certificate.clone());
        }
        IrreducibilityVerdict::Reducible { witness } => {
            r.insert("status", "reducible")
                .insert("witness", basis_texts(names, witness));
        }
        IrreducibilityVerdict::Inconclusive { reason } => {
            r.insert("status", "inconclusive").insert("reason", reason.clone());
        }
    }
    r
}

fn run_analyze(path: &Path) -> Result<(i32, Report), Failure> {
    let (g, _) = load(path)?;
    let names = g.names();
    let (derived, center) = derived_and_center(&g);
    let simplicity = is_simple(&g);
    let mut r = Report::new();
    r.insert("algebra", g.name())
        .insert("dim", g.dim())
        .insert("abelian", g.is_abelian())
        .insert("center", subspace_report(names, &center))
        .insert("derived", subspace_report(names, &derived))
        .insert("simple", simplicity.simple())
        .insert("simplicity", simplicity_report(&g, &simplicity.ungraded));
    if let Some(graded) = &simplicity.graded {
        r.insert("graded_simplicity", simplicity_report(&g, graded));
    }
    if g.is_graded() {
        let gr = grading_report(&g)?;
        let mut items = vec![("compatible", &gr.compatible), ("consistent", &gr.consistent)];
        for (name, c) in [
            ("transitive", &gr.transitive),
            ("bitransitive", &gr.bitransitive),
            ("local_generates", &gr.local_generates),
        ] {
            if let Some(c) = c {
                items.push((name, c));
            }
        }
        let mut grading = checks(&g, &items);
        let dims: std::collections::BTreeMap<String, usize> =
            gr.dims_per_degree.iter().map(|(k, d)| (k.to_string(), *d)).collect();
        grading.insert_serialized("dims_per_degree", &dims);
        grading.insert_serialized("degree_range", &gr.degree_range);
        if let Some(v) = &gr.graded_irreducible {
            let minus: Vec<String> = g.degree_indices(-1).iter().map(|&i| names[i].clone()).collect();
            grading.insert("graded_irreducible", verdict_report(&minus, v));
        }
        r.insert("grading", grading);
    }
    let criteria = structural_criteria(&g);
    r.insert_serialized("structural_criteria", &criteria);
    r.insert("alarms", criteria.alarms());
    Ok((0, r))
}

fn run_prolong(
    path: &Path,
    max_degree: usize,
    tensor_cap: usize,
    convention: Option<ConventionArg>,
    output: Option<PathBuf>,
) -> Result<(i32, Report), Failure> {
    let (g, _) = load(path)?;
    let local = LocalAlgebra::new(g)?;
    let window = TensorWindow::new(&local, tensor_cap)?;
    let convention = convention.map(|c| match c {
        ConventionArg::Verbatim => Convention::Verbatim,
        ConventionArg::Koszul => Convention::Koszul,
    });
    let p = prolong_minimal(&local, max_degree, &window, convention)?;
    let out = output.unwrap_or_else(|| sibling(path, "prolonged"));
    write(&out, &export_algebra(&p.algebra))?;
    let mut r = Report::new();
    r.insert("algebra", p.algebra.name())
        .insert("dim", p.algebra.dim())
        .insert("dims", dims_text(&p.dims))
        .insert_serialized("recovery", &p.recovery)
        .insert_serialized("convention", &p.relations.convention)
        .insert("closed", p.closed)
        .insert("ideal_dim", p.ideal_dim)
        .insert("output", out.display().to_string());
    let rel = &p.relations;
    let lg = local.algebra();
    r.insert(
        "relations",
        checks(
            lg,
            &[
                ("minus_zero", &rel.minus_zero),
                ("plus_minus", &rel.plus_minus),
                ("zero_plus", &rel.zero_plus),
            ],
        ),
    );
    if let Some(c) = &p.local_part {
        r.insert("local_part", checks(lg, &[("brackets", c)]));
    }
    Ok((0, r))
}

fn gram_from_entries(g: &HomLieSuperalgebra, entries: &[FormEntry]) -> Matrix {
    let n = g.dim();
    let mut m = Matrix::zeros(n, n);
    for e in entries {
        let i = g.index_of(&e.left).expect("labels were validated");
        let j = g.index_of(&e.right).expect("labels were validated");
        m.set(i, j, e.value.clone());
    }
    m
}

fn run_extend_form(path: &Path, form: Option<PathBuf>, max_degree: i64) -> Result<(i32, Report), Failure> {
    let (g, own) = load(path)?;
    let entries = match form {
        Some(f) => parse_form(&read(&f)?, g.names())?,
        None => own.ok_or_else(|| usage_failure(format!("{} has no [form] section", path.display())))?,
    };
    let local = supersymmetric_completion(
        &g,
        &BilinearForm::new(gram_from_entries(&g, &entries)),
        SignConvention::Classical,
    )?;
    let ext = extend_form(&g, &local, max_degree)?;
    let mut values = Report::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let v = ext.form.gram.get(i, j);
            if !v.is_zero() {
                values.insert(&format!("{},{}", g.label(i), g.label(j)), format_scalar(v));
            }
        }
    }
    let rep = &ext.report;
    let mut r = Report::new();
    r.insert_serialized("verdict", &ext.verdict)
        .insert("form", values)
        .insert(
            "properties",
            checks(
                &g,
                &[
                    ("consistent", &rep.consistent),
                    ("supersymmetric", &rep.supersymmetric),
                    ("invariant", &rep.invariant),
                    ("alpha_invariant", &rep.alpha_invariant),
                    ("nondegenerate", &rep.nondegenerate),
                ],
            ),
        );
    let free: std::collections::BTreeMap<String, usize> = ext.free.iter().map(|(k, d)| (k.to_string(), *d)).collect();
    r.insert_serialized("free_unknowns", &free);
    if let Some(k) = ext.inconsistent_level {
        r.insert("inconsistent_level", k);
    }
    let code = if ext.verdict == ExtensionVerdict::Inconsistent {
        1
    } else {
        0
    };
    Ok((code, r))
}

fn run_quotient(path: &Path, ideal: &str, output: Option<PathBuf>) -> Result<(i32, Report), Failure> {
    let (g, _) = load(path)?;
    let vectors = ideal
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_vector(t, g.names()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure {
            code: 2,
            ..Failure::from(e)
        })?;
    let span = Subspace::span(g.dim(), vectors)?;
    let q = quotient(&g, &span)?;
    let out = output.unwrap_or_else(|| sibling(path, "quotient"));
    write(&out, &export_algebra(&q))?;
    let mut r = Report::new();
    r.insert("algebra", q.name())
        .insert("dim", q.dim())
        .insert("basis", q.names().to_vec())
        .insert("ideal", subspace_report(g.names(), &span))
        .insert("output", out.display().to_string());
    Ok((0, r))
}

/// Parse the arguments, run the command and render the report. Returns the
/// exit code and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let outcome = match cli.command {
        Command::Check { file } => run_check(&file),
        Command::Analyze { file } => run_analyze(&file),
        Command::Prolong {
            file,
            max_degree,
            tensor_cap,
            convention,
            output,
        } => run_prolong(&file, max_degree, tensor_cap, convention, output),
        Command::ExtendForm { file, form, max_degree } => run_extend_form(&file, form, max_degree),
        Command::Quotient { file, ideal, output } => run_quotient(&file, &ideal, output),
    };
    let (code, report) = match outcome {
        Ok(ok) => ok,
        Err(f) => (f.code, f.report),
    };
    let text = match cli.format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    (code, text)
}
