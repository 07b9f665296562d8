//! Command-line front end: load a model, run a command, render a report.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use stringbv::algebra::{GeneratorKind, Side, Window};
use stringbv::bv::{
    bracket, compare_operators, BvModel, OperatorComparison, Sweep, VerificationReport,
};
use stringbv::catalog;
use stringbv::error::{Error, Result};
use stringbv::expr::parse_element_in;
use stringbv::model_file::{load_model, ModelKind, ModelSpec};
use stringbv::models::{
    build_lie_group_hepworth_model, check_sub_bv, decomposition_check, DecompositionReport,
    EmbeddingReport,
};
use stringbv::semidirect::{
    check_group_like_bracket, check_morphism_into_model, check_semidirect_axioms, SemidirectReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Summarize the model: generators, manifold classes, window size.
    Build,
    /// B of the element given by --a.
    ApplyB,
    /// The bracket {a, b}.
    Bracket,
    /// B on every basis monomial of the window.
    Table,
    /// Every identity sweep and structural check that applies to the model.
    Verify,
    /// Conjugate the tensor-product decomposition onto the Lie-group model.
    Decompose,
    /// The semidirect-product morphism and the group-like bracket identity.
    SemidirectCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Everything one invocation needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Model file path or catalog name.
    pub model: String,
    pub window: i64,
    pub group_exponent: i64,
    pub format: Format,
    pub seed: u64,
    /// Sample this many pairs and triples instead of sweeping all of them.
    pub samples: Option<usize>,
    pub a: Option<String>,
    pub b: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command, model: impl Into<String>) -> Self {
        RunConfig {
            command,
            model: model.into(),
            window: Window::DEFAULT_DEGREE,
            group_exponent: Window::DEFAULT_GROUP_EXPONENT,
            format: Format::Text,
            seed: 0,
            samples: None,
            a: None,
            b: None,
        }
    }

    fn window(&self) -> Window {
        Window::new(self.window).with_group_exponent(self.group_exponent)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "stringbv",
    version,
    about = "Exact BV algebras of free loop homology"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Summarize a model
    Build(Args),
    /// Apply B to --a
    ApplyB(Args),
    /// Bracket of --a and --b
    Bracket(Args),
    /// B on every window monomial
    Table(Args),
    /// Run every check on a model
    Verify(Args),
    /// Check the tensor-product decomposition
    Decompose(Args),
    /// Check the semidirect-product morphism
    SemidirectCheck(Args),
    /// List the built-in groups.
    Catalog,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Model file or catalog group (S1, SU(2), SO(3), U(2), SU(3), T2, T3).
    #[arg(long)]
    pub model: String,
    /// Degree bound D.
    #[arg(long, default_value_t = Window::DEFAULT_DEGREE)]
    pub window: i64,
    /// Bound on |group exponents| in the window.
    #[arg(long, default_value_t = Window::DEFAULT_GROUP_EXPONENT)]
    pub group_exponent: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample this many pairs and triples instead of an exhaustive sweep.
    #[arg(long)]
    pub samples: Option<usize>,
    /// First element, e.g. `x1^3 * sx2^2 * d1*d2`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Second element.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
}

impl CliCommand {
    /// `None` for `catalog`.
    pub fn into_config(self) -> Option<RunConfig> {
        let (command, args) = match self {
            CliCommand::Build(a) => (Command::Build, a),
            CliCommand::ApplyB(a) => (Command::ApplyB, a),
            CliCommand::Bracket(a) => (Command::Bracket, a),
            CliCommand::Table(a) => (Command::Table, a),
            CliCommand::Verify(a) => (Command::Verify, a),
            CliCommand::Decompose(a) => (Command::Decompose, a),
            CliCommand::SemidirectCheck(a) => (Command::SemidirectCheck, a),
            CliCommand::Catalog => return None,
        };
        Some(RunConfig {
            command,
            model: args.model,
            window: args.window,
            group_exponent: args.group_exponent,
            format: args.format,
            seed: args.seed,
            samples: args.samples,
            a: args.a,
            b: args.b,
        })
    }
}

/// Exit status and rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub kind: GeneratorKind,
    pub degree: i64,
    pub side: Side,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_order: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub model: String,
    pub kind: String,
    pub rule: String,
    pub generators: Vec<GeneratorRow>,
    pub manifold_classes: Vec<String>,
    pub window: i64,
    pub group_exponent: i64,
    pub basis_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueReport {
    pub model: String,
    pub inputs: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub monomial: String,
    pub degree: i64,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub model: String,
    pub window: i64,
    pub group_exponent: i64,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidirectBundle {
    pub model: String,
    pub checks: Vec<SemidirectReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub sampled: Option<usize>,
    pub seed: u64,
    pub axioms: VerificationReport,
    pub embedding: EmbeddingReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coproduct_formula: Option<OperatorComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub semidirect: Vec<SemidirectReport>,
}

impl VerifyReport {
    fn passed(&self) -> bool {
        self.axioms.passed()
            && self.embedding.passed()
            && self.coproduct_formula.as_ref().is_none_or(|c| c.passed())
            && self.decomposition.as_ref().is_none_or(|d| d.passed())
            && self.semidirect.iter().all(|s| s.passed())
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Build(BuildReport),
    ApplyB(ValueReport),
    Bracket(ValueReport),
    Table(TableReport),
    Verify(Box<VerifyReport>),
    Decompose(DecompositionReport),
    SemidirectCheck(SemidirectBundle),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Verify(v) => v.passed(),
            Report::Decompose(d) => d.passed(),
            Report::SemidirectCheck(s) => s.checks.iter().all(SemidirectReport::passed),
            _ => true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut o = String::new();
        match self {
            Report::Build(b) => {
                let _ = writeln!(o, "model: {} ({}, rule {})", b.model, b.kind, b.rule);
                let _ = writeln!(o, "generators:");
                for g in &b.generators {
                    let order = g
                        .torsion_order
                        .map(|n| format!(", order {n}"))
                        .unwrap_or_default();
                    let _ = writeln!(
                        o,
                        "  {:<8} degree {:>3}  {:?} / {:?}{order}",
                        g.name, g.degree, g.kind, g.side
                    );
                }
                let _ = writeln!(o, "manifold classes: {}", b.manifold_classes.join(", "));
                let _ = writeln!(
                    o,
                    "window D={} E={}: {} basis monomials",
                    b.window, b.group_exponent, b.basis_size
                );
            }
            Report::ApplyB(v) => {
                let _ = writeln!(o, "B({}) = {}", v.inputs[0], v.value);
            }
            Report::Bracket(v) => {
                let _ = writeln!(o, "{{{}, {}}} = {}", v.inputs[0], v.inputs[1], v.value);
            }
            Report::Table(t) => {
                let _ = writeln!(
                    o,
                    "B on {} (D={}, E={})",
                    t.model, t.window, t.group_exponent
                );
                for r in &t.rows {
                    let _ = writeln!(o, "{:>4}  B({}) = {}", r.degree, r.monomial, r.value);
                }
            }
            Report::Verify(v) => {
                let a = &v.axioms;
                let _ = writeln!(
                    o,
                    "model: {} ({}), window D={} E={}, {} basis monomials",
                    a.model, a.rule, a.window, a.group_exponent, a.basis_size
                );
                if let Some(n) = v.sampled {
                    let _ = writeln!(o, "sampled {n} pairs and triples, seed {}", v.seed);
                }
                for r in &a.identities {
                    let _ = writeln!(
                        o,
                        "  {:<30} checked {:>9}  {}",
                        r.name,
                        r.checked,
                        verdict(r.passed())
                    );
                    if let Some(c) = &r.counterexample {
                        let _ = writeln!(o, "    inputs: {}", c.inputs.join(", "));
                        let _ = writeln!(o, "    lhs: {}", c.lhs);
                        let _ = writeln!(o, "    rhs: {}", c.rhs);
                    }
                }
                let e = &v.embedding;
                let _ = writeln!(
                    o,
                    "  {:<30} checked {:>9}  {}",
                    "sub-BV embeddings",
                    e.loop_checked + e.manifold_checked,
                    verdict(e.passed())
                );
                if let Some(f) = &e.failure {
                    let _ = writeln!(
                        o,
                        "    {} at {}: got {}, expected {}",
                        f.check, f.monomial, f.got, f.expected
                    );
                }
                if let Some(c) = &v.coproduct_formula {
                    let _ = writeln!(
                        o,
                        "  {:<30} checked {:>9}  {}",
                        "coproduct formula agrees",
                        c.checked,
                        verdict(c.passed())
                    );
                    mismatch_lines(&mut o, c.mismatch.as_ref());
                }
                if let Some(d) = &v.decomposition {
                    decomposition_text(&mut o, d);
                }
                for s in &v.semidirect {
                    semidirect_text(&mut o, s);
                }
                let _ = writeln!(o, "result: {}", if v.passed() { "PASS" } else { "FAIL" });
            }
            Report::Decompose(d) => {
                let _ = writeln!(
                    o,
                    "group: {}, window D={} E={}",
                    d.group, d.window, d.group_exponent
                );
                decomposition_text(&mut o, d);
                if d.passed() {
                    let _ = writeln!(o, "Θ conjugation matches on {} monomials", d.checked);
                }
                let _ = writeln!(o, "result: {}", if d.passed() { "PASS" } else { "FAIL" });
            }
            Report::SemidirectCheck(s) => {
                let _ = writeln!(o, "model: {}", s.model);
                for c in &s.checks {
                    semidirect_text(&mut o, c);
                }
                let ok = self.passed();
                let _ = writeln!(o, "result: {}", if ok { "PASS" } else { "FAIL" });
            }
        }
        o
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn mismatch_lines(o: &mut String, c: Option<&stringbv::bv::Counterexample>) {
    if let Some(c) = c {
        let _ = writeln!(o, "    at {}: {} vs {}", c.inputs.join(", "), c.lhs, c.rhs);
    }
}

fn decomposition_text(o: &mut String, d: &DecompositionReport) {
    let _ = writeln!(
        o,
        "  {:<30} checked {:>9}  {}",
        "decomposition (Θ conjugation)",
        d.checked,
        verdict(d.passed())
    );
    if !d.theta_bijective {
        let _ = writeln!(o, "    Θ is not a bijection of window bases");
    }
    if let Some(m) = &d.mismatch {
        let _ = writeln!(
            o,
            "    at {}: Θ B Θ⁻¹ = {}, B = {}",
            m.monomial, m.conjugated, m.direct
        );
    }
}

fn semidirect_text(o: &mut String, s: &SemidirectReport) {
    let _ = writeln!(
        o,
        "  {:<30} checked {:>9}  {}",
        format!("semidirect {}", s.check),
        s.checked,
        verdict(s.passed())
    );
    if let Some(f) = &s.failure {
        let _ = writeln!(o, "    inputs: {}", f.inputs.join(", "));
        let _ = writeln!(o, "    lhs: {}", f.lhs);
        let _ = writeln!(o, "    rhs: {}", f.rhs);
    }
}

/// A file path when one exists, a catalog group otherwise.
pub fn resolve_model(model: &str) -> Result<ModelSpec> {
    if Path::new(model).is_file() {
        load_model(model)
    } else {
        catalog::lookup(model)
    }
}

fn element_arg(
    model: &BvModel,
    field: &str,
    value: &Option<String>,
) -> Result<stringbv::algebra::Element> {
    let text = value
        .as_deref()
        .ok_or_else(|| Error::schema(field, "required for this command"))?;
    parse_element_in(model.signature(), field, text)
}

fn sampled_sweep<'m>(
    model: &'m BvModel,
    window: Window,
    samples: Option<usize>,
    seed: u64,
) -> Sweep<'m> {
    let sweep = Sweep::exhaustive(model, window);
    let Some(n) = samples else {
        return sweep;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |len: usize| -> Vec<usize> {
        let mut idx = sample(&mut rng, len, n.min(len)).into_vec();
        idx.sort_unstable();
        idx
    };
    let pairs: Vec<_> = pick(sweep.pairs().len())
        .into_iter()
        .map(|i| sweep.pairs()[i])
        .collect();
    let triples: Vec<_> = pick(sweep.triples().len())
        .into_iter()
        .map(|i| sweep.triples()[i])
        .collect();
    sweep.with_pairs(pairs).with_triples(triples)
}

fn semidirect_checks(
    spec: &ModelSpec,
    model: &BvModel,
    window: &Window,
) -> Result<Vec<SemidirectReport>> {
    let s = spec.semidirect()?;
    let mut out = vec![check_morphism_into_model(model, &s, window)?];
    if !s.group_generators.is_empty() {
        out.push(check_group_like_bracket(model, &s)?);
    }
    out.extend(check_semidirect_axioms(&s)?);
    Ok(out)
}

/// Builds the report for one configuration.
pub fn report(config: &RunConfig) -> Result<Report> {
    if config.window < 1 {
        return Err(Error::schema("window", "D must be at least 1"));
    }
    if config.group_exponent < 0 {
        return Err(Error::schema("group-exponent", "must be at least 0"));
    }
    let spec = resolve_model(&config.model)?;
    let window = config.window();
    let model = spec.build(&window)?;
    let sig = model.signature();
    Ok(match config.command {
        Command::Build => Report::Build(BuildReport {
            model: model.name().to_string(),
            kind: spec.kind.to_string(),
            rule: model.rule().kind().to_string(),
            generators: sig
                .generators()
                .iter()
                .map(|g| GeneratorRow {
                    name: g.name.clone(),
                    kind: g.kind,
                    degree: g.degree,
                    side: g.side,
                    torsion_order: g.torsion_order,
                })
                .collect(),
            manifold_classes: sig
                .manifold_basis()
                .iter()
                .map(|m| sig.format_monomial(m))
                .collect(),
            window: window.degree,
            group_exponent: window.group_exponent,
            basis_size: sig.basis_window(&window).len(),
        }),
        Command::ApplyB => {
            let a = element_arg(&model, "a", &config.a)?;
            Report::ApplyB(ValueReport {
                model: model.name().to_string(),
                inputs: vec![sig.format(&a)],
                value: sig.format(&model.apply_b(&a)?),
            })
        }
        Command::Bracket => {
            let a = element_arg(&model, "a", &config.a)?;
            let b = element_arg(&model, "b", &config.b)?;
            Report::Bracket(ValueReport {
                model: model.name().to_string(),
                inputs: vec![sig.format(&a), sig.format(&b)],
                value: sig.format(&bracket(&model, &a, &b)?),
            })
        }
        Command::Table => {
            let mut basis = sig.basis_window(&window);
            basis.sort_by_key(|m| sig.degree(m));
            let rows = basis
                .iter()
                .map(|m| {
                    Ok(TableRow {
                        monomial: sig.format_monomial(m),
                        degree: sig.degree(m),
                        value: sig.format(&model.apply_b_monomial(m)?),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Report::Table(TableReport {
                model: model.name().to_string(),
                window: window.degree,
                group_exponent: window.group_exponent,
                rows,
            })
        }
        Command::Verify => {
            let axioms = sampled_sweep(&model, window, config.samples, config.seed).run()?;
            let embedding = check_sub_bv(&model, &window)?;
            let (coproduct_formula, decomposition) = match spec.lie_group() {
                Some(d) => {
                    let hep = build_lie_group_hepworth_model(d, &window)?;
                    (
                        Some(compare_operators(&model, &hep, &window)?),
                        Some(decomposition_check(d, &window)?),
                    )
                }
                None => (None, None),
            };
            let semidirect = if matches!(spec.kind, ModelKind::SphereAction) {
                Vec::new()
            } else {
                semidirect_checks(&spec, &model, &window)?
            };
            Report::Verify(Box::new(VerifyReport {
                model: model.name().to_string(),
                sampled: config.samples,
                seed: config.seed,
                axioms,
                embedding,
                coproduct_formula,
                decomposition,
                semidirect,
            }))
        }
        Command::Decompose => {
            let d = spec.lie_group().ok_or_else(|| {
                Error::InvalidModel(format!(
                    "decompose needs a lie_group model, got `{}`",
                    spec.kind
                ))
            })?;
            let mut r = decomposition_check(d, &window)?;
            r.group = model.name().to_string();
            Report::Decompose(r)
        }
        Command::SemidirectCheck => Report::SemidirectCheck(SemidirectBundle {
            model: model.name().to_string(),
            checks: semidirect_checks(&spec, &model, &window)?,
        }),
    })
}

/// Runs one command; exit 0 on success, 1 on a failed check, 2 on an input error.
pub fn run(config: &RunConfig) -> Outcome {
    match report(config) {
        Ok(r) => Outcome {
            exit_code: if r.passed() { 0 } else { 1 },
            output: r.render(config.format),
        },
        Err(e) => Outcome {
            exit_code: 2,
            output: match config.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(
                        &serde_json::json!({ "error": e.to_string() }),
                    )
                    .expect("error serializes");
                    s.push('\n');
                    s
                }
                Format::Text => format!("error: {e}\n"),
            },
        },
    }
}

pub fn catalog_listing() -> String {
    let mut o = String::new();
    for n in catalog::names() {
        let spec = catalog::lookup(n).expect("catalog entries parse");
        let d = spec.lie_group().expect("catalog entries are Lie groups");
        let _ = writeln!(
            o,
            "{n:<6} free rank {}, torsion {:?}, odd degrees {:?}",
            d.free_rank, d.torsion, d.odd_degrees
        );
    }
    o
}
