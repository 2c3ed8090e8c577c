//! The `.afo` input format and the command-line driver.
//!
//! One `.afo` file carries the lattice, the semantic map and the framework.
//! Directives are whitespace separated, one per line; `#` starts a comment.
//!
//! ```text
//! node <id>
//! cover <child> <parent>
//! general <node>
//! expr <symbol>
//! map <symbol> <node>
//! arglet <arg> <symbol>
//! attack <arg>.<symbol> <arg>.<symbol>
//! attack <arg> <arg>            # every arglet pair, with warning W001
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::abstraction::ConservativityReport;
use crate::af::{ArgLet, Framework};
use crate::galois::{Ontology, SemanticMap};
use crate::lattice::{FiniteLattice, LatticeError, UpperSet};
use crate::pipeline::{self, AbstractionResult, DerivedFramework, SharpeningReport};
use crate::semantics::{self, oracle, ExtensionSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A value with the position it was read from. Equality ignores the span.
#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub value: T,
    pub span: Span,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

fn spanned<T>(value: T, span: Span) -> Spanned<T> {
    Spanned { value, span }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfoError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: unknown reference: {message}")]
    UnknownReference { span: Span, message: String },
    #[error("{span}: duplicate declaration: {message}")]
    DuplicateDeclaration { span: Span, message: String },
    #[error("invalid lattice: {0}")]
    Lattice(LatticeError),
    #[error("invalid document: {0}")]
    Model(String),
}

impl AfoError {
    fn span(&self) -> Span {
        match self {
            AfoError::Syntax { span, .. }
            | AfoError::UnknownReference { span, .. }
            | AfoError::DuplicateDeclaration { span, .. } => *span,
            _ => Span::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub code: &'static str,
    pub span: Span,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning[{}] {}: {}", self.code, self.span, self.message)
    }
}

/// A parsed and reference-checked `.afo` file.
///
/// Argument-level `attack` sugar is already expanded into `attacks`.
#[derive(Debug, Clone, Default)]
pub struct AfoDocument {
    pub nodes: Vec<Spanned<String>>,
    pub covers: Vec<Spanned<(String, String)>>,
    pub generals: Vec<Spanned<String>>,
    pub exprs: Vec<Spanned<String>>,
    pub maps: Vec<Spanned<(String, String)>>,
    pub arglets: Vec<Spanned<ArgLet>>,
    pub attacks: Vec<Spanned<(ArgLet, ArgLet)>>,
    pub warnings: Vec<Warning>,
}

impl PartialEq for AfoDocument {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.covers == other.covers
            && self.generals == other.generals
            && self.exprs == other.exprs
            && self.maps == other.maps
            && self.arglets == other.arglets
            && self.attacks == other.attacks
    }
}

impl Eq for AfoDocument {}

/// Everything the library needs from one document.
#[derive(Debug, Clone)]
pub struct Instance {
    pub ontology: Ontology,
    pub framework: Framework,
    pub upper: UpperSet,
}

enum Directive {
    Node(String),
    Cover(String, String),
    General(String),
    Expr(String),
    Map(String, String),
    Arglet(String, String),
    Attack(ArgLet, ArgLet),
    AttackArgs(String, String),
}

/// Tokens of one line with their 1-based columns, comments stripped.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in code.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &code[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &code[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (code[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_line(line_no: usize, line: &str) -> Result<Option<(Directive, Vec<Span>)>, AfoError> {
    let toks = tokenize(line);
    let Some(&(kw_col, kw)) = toks.first() else {
        return Ok(None);
    };
    let at = |col| Span {
        line: line_no,
        column: col,
    };
    let syntax = |col, message: String| AfoError::Syntax {
        span: at(col),
        message,
    };
    let arity = match kw {
        "node" | "general" | "expr" => 1,
        "cover" | "map" | "arglet" | "attack" => 2,
        other => return Err(syntax(kw_col, format!("unknown directive `{other}`"))),
    };
    if toks.len() != arity + 1 {
        return Err(syntax(
            kw_col,
            format!("`{kw}` takes {arity} argument(s), found {}", toks.len() - 1),
        ));
    }
    let spans: Vec<Span> = toks[1..].iter().map(|&(c, _)| at(c)).collect();
    let a = toks[1].1.to_string();
    let b = toks.get(2).map(|t| t.1.to_string());
    let directive = match kw {
        "node" => Directive::Node(a),
        "general" => Directive::General(a),
        "expr" => Directive::Expr(a),
        "cover" => Directive::Cover(a, b.unwrap_or_default()),
        "map" => Directive::Map(a, b.unwrap_or_default()),
        "arglet" => {
            if a.contains('.') {
                return Err(syntax(toks[1].0, format!("argument id `{a}` must not contain `.`")));
            }
            Directive::Arglet(a, b.unwrap_or_default())
        }
        _ => {
            let b = b.unwrap_or_default();
            match (a.split_once('.'), b.split_once('.')) {
                (Some((xa, xe)), Some((ya, ye))) => {
                    for (col, part) in [(toks[1].0, xa), (toks[1].0, xe), (toks[2].0, ya), (toks[2].0, ye)] {
                        if part.is_empty() {
                            return Err(syntax(col, "empty component in `<arg>.<symbol>`".into()));
                        }
                    }
                    Directive::Attack(ArgLet::new(xa, xe), ArgLet::new(ya, ye))
                }
                (None, None) => Directive::AttackArgs(a, b),
                _ => {
                    return Err(syntax(
                        toks[1].0,
                        "attack endpoints must both be `<arg>.<symbol>` or both `<arg>`".into(),
                    ))
                }
            }
        }
    };
    Ok(Some((directive, spans)))
}

/// Parses and reference-checks a `.afo` document. Reports the earliest
/// error by position.
pub fn parse_afo(text: &str) -> Result<AfoDocument, AfoError> {
    let mut parsed = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(d) = parse_line(i + 1, line)? {
            parsed.push(d);
        }
    }

    let mut errors: Vec<AfoError> = Vec::new();
    let dup = |span: Span, message: String| AfoError::DuplicateDeclaration { span, message };
    let unknown = |span: Span, message: String| AfoError::UnknownReference { span, message };

    // declarations
    let mut doc = AfoDocument::default();
    let mut node_set = BTreeSet::new();
    let mut mapped: BTreeMap<String, String> = BTreeMap::new();
    let mut expr_set = BTreeSet::new();
    let mut arglet_set = BTreeSet::new();
    for (d, spans) in &parsed {
        match d {
            Directive::Node(n) => {
                if !node_set.insert(n.clone()) {
                    errors.push(dup(spans[0], format!("node `{n}`")));
                } else {
                    doc.nodes.push(spanned(n.clone(), spans[0]));
                }
            }
            Directive::Expr(e) => {
                if !expr_set.insert(e.clone()) {
                    errors.push(dup(spans[0], format!("expression `{e}`")));
                } else {
                    doc.exprs.push(spanned(e.clone(), spans[0]));
                }
            }
            Directive::Map(e, n) => {
                if mapped.contains_key(e) {
                    errors.push(dup(spans[0], format!("map for expression `{e}`")));
                } else {
                    mapped.insert(e.clone(), n.clone());
                    doc.maps.push(spanned((e.clone(), n.clone()), spans[0]));
                }
            }
            Directive::Arglet(a, e) => {
                let l = ArgLet::new(a.clone(), e.clone());
                if !arglet_set.insert(l.clone()) {
                    errors.push(dup(spans[0], format!("argument-let `{l}`")));
                } else {
                    doc.arglets.push(spanned(l, spans[0]));
                }
            }
            _ => {}
        }
    }

    // references
    let mut cover_set = BTreeSet::new();
    let mut general_set = BTreeSet::new();
    let mut attack_set = BTreeSet::new();
    for (d, spans) in &parsed {
        match d {
            Directive::Cover(c, p) => {
                let mut ok = true;
                for (n, span) in [(c, spans[0]), (p, spans[1])] {
                    if !node_set.contains(n) {
                        errors.push(unknown(span, format!("node `{n}`")));
                        ok = false;
                    }
                }
                if ok {
                    if cover_set.insert((c.clone(), p.clone())) {
                        doc.covers.push(spanned((c.clone(), p.clone()), spans[0]));
                    } else {
                        errors.push(dup(spans[0], format!("cover `{c}` `{p}`")));
                    }
                }
            }
            Directive::General(n) => {
                if !node_set.contains(n) {
                    errors.push(unknown(spans[0], format!("node `{n}`")));
                } else if !general_set.insert(n.clone()) {
                    errors.push(dup(spans[0], format!("general `{n}`")));
                } else {
                    doc.generals.push(spanned(n.clone(), spans[0]));
                }
            }
            Directive::Expr(e) => {
                if !mapped.contains_key(e) {
                    errors.push(unknown(spans[0], format!("expression `{e}` has no `map`")));
                }
            }
            Directive::Map(_, n) => {
                if !node_set.contains(n) {
                    errors.push(unknown(spans[1], format!("node `{n}`")));
                }
            }
            Directive::Arglet(_, e) => {
                if !mapped.contains_key(e) {
                    errors.push(unknown(spans[1], format!("expression `{e}` is not mapped")));
                }
            }
            Directive::Attack(x, y) => {
                let mut ok = true;
                for (l, span) in [(x, spans[0]), (y, spans[1])] {
                    if !arglet_set.contains(l) {
                        errors.push(unknown(span, format!("argument-let `{l}`")));
                        ok = false;
                    }
                }
                if ok {
                    if attack_set.insert((x.clone(), y.clone())) {
                        doc.attacks.push(spanned((x.clone(), y.clone()), spans[0]));
                    } else {
                        errors.push(dup(spans[0], format!("attack `{x}` `{y}`")));
                    }
                }
            }
            Directive::AttackArgs(a, b) => {
                let lets = |id: &str| -> Vec<ArgLet> {
                    arglet_set.iter().filter(|l| l.arg == id).cloned().collect()
                };
                let (xs, ys) = (lets(a), lets(b));
                let mut ok = true;
                for (id, found, span) in [(a, &xs, spans[0]), (b, &ys, spans[1])] {
                    if found.is_empty() {
                        errors.push(unknown(span, format!("argument `{id}`")));
                        ok = false;
                    }
                }
                if ok {
                    let mut added = 0;
                    for x in &xs {
                        for y in &ys {
                            if attack_set.insert((x.clone(), y.clone())) {
                                doc.attacks.push(spanned((x.clone(), y.clone()), spans[0]));
                                added += 1;
                            }
                        }
                    }
                    doc.warnings.push(Warning {
                        code: "W001",
                        span: spans[0],
                        message: format!(
                            "argument-level attack `{a}` -> `{b}` expanded to {added} argument-let attack(s)"
                        ),
                    });
                }
            }
            _ => {}
        }
    }

    if let Some(first) = errors.into_iter().min_by_key(AfoError::span) {
        return Err(first);
    }
    if doc.arglets.is_empty() {
        let line = text.lines().count().max(1);
        return Err(AfoError::Syntax {
            span: Span { line, column: 1 },
            message: "no framework: at least one `arglet` is required".into(),
        });
    }
    Ok(doc)
}

impl AfoDocument {
    /// Validates the lattice and assembles the ontology, framework and
    /// upper set. Without `general` directives the upper set is `{top}`.
    pub fn build(&self) -> Result<Instance, AfoError> {
        let lattice = FiniteLattice::from_hasse(
            self.nodes.iter().map(|n| n.value.as_str()),
            self.covers
                .iter()
                .map(|c| (c.value.0.as_str(), c.value.1.as_str())),
        )
        .map_err(AfoError::Lattice)?;
        let mut map = SemanticMap::new();
        for m in &self.maps {
            let node = lattice.node(&m.value.1).map_err(AfoError::Lattice)?;
            map.insert(m.value.0.clone(), node)
                .map_err(|e| AfoError::Model(e.to_string()))?;
        }
        let upper = if self.generals.is_empty() {
            lattice.upward_closure([lattice.top()])
        } else {
            let gens = self
                .generals
                .iter()
                .map(|g| lattice.node(&g.value))
                .collect::<Result<Vec<_>, _>>()
                .map_err(AfoError::Lattice)?;
            lattice.upward_closure(gens)
        };
        let framework = Framework::new(
            self.arglets.iter().map(|l| l.value.clone()),
            self.attacks.iter().map(|a| a.value.clone()),
        )
        .map_err(|e| AfoError::Model(e.to_string()))?;
        Ok(Instance {
            ontology: Ontology::new(lattice, map),
            framework,
            upper,
        })
    }

    /// Canonical text form; sugar is written out as explicit attacks.
    pub fn to_afo(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            let _ = writeln!(s, "node {}", n.value);
        }
        for c in &self.covers {
            let _ = writeln!(s, "cover {} {}", c.value.0, c.value.1);
        }
        for g in &self.generals {
            let _ = writeln!(s, "general {}", g.value);
        }
        for e in &self.exprs {
            let _ = writeln!(s, "expr {}", e.value);
        }
        for m in &self.maps {
            let _ = writeln!(s, "map {} {}", m.value.0, m.value.1);
        }
        for l in &self.arglets {
            let _ = writeln!(s, "arglet {} {}", l.value.arg, l.value.expr);
        }
        for a in &self.attacks {
            let _ = writeln!(s, "attack {} {}", a.value.0, a.value.1);
        }
        s
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "argabs",
    version,
    about = "Abstract interpretation of argumentation frameworks over a semantic lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a document and its lattice.
    Validate { file: PathBuf },
    /// Compute extensions or the grounded labelling.
    Semantics {
        file: PathBuf,
        #[arg(long = "sem", value_enum)]
        sem: SemArg,
        #[arg(long)]
        json: bool,
    },
    /// Derive the abstract-space frameworks.
    Abstract {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Print per-condition conservativity verdicts for every candidate.
        #[arg(long)]
        explain: bool,
        /// Write one DOT file per derived framework into DIR (default `.`).
        #[arg(long, value_name = "DIR", num_args = 0..=1, default_missing_value = ".")]
        emit_dot: Option<PathBuf>,
    },
    /// Compare concrete and abstract-space preferred extensions.
    Sharpen {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Cross-check every preferred computation against exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SemArg {
    Preferred,
    Cf2,
    Grounded,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

enum Failure {
    Input(String),
    Internal(String),
}

impl From<AfoError> for Failure {
    fn from(e: AfoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<semantics::SemanticsError> for Failure {
    fn from(e: semantics::SemanticsError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let doc = parse_afo(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?;
    for w in &doc.warnings {
        writeln!(err, "{}: {w}", path.display())?;
    }
    Ok(doc.build()?)
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => {
            let inst = load(&file, err)?;
            writeln!(
                out,
                "ok: {} nodes, {} expressions, {} arguments, {} argument-let attacks",
                inst.ontology.lattice().len(),
                inst.ontology.map().len(),
                inst.framework.argument_ids().len(),
                inst.framework.attacks().len()
            )?;
        }
        Command::Semantics { file, sem, json } => {
            let inst = load(&file, err)?;
            let g = inst.framework.project_dung();
            match sem {
                SemArg::Grounded => {
                    let lab = semantics::grounded_labelling(&g);
                    if json {
                        let v = json!({ "semantics": "grounded", "labelling": lab });
                        writeln!(out, "{}", pretty(&v))?;
                    } else {
                        for (a, l) in &lab {
                            writeln!(out, "{a}: {}", serde_json::to_value(l).unwrap_or_default().as_str().unwrap_or("?"))?;
                        }
                    }
                }
                SemArg::Preferred | SemArg::Cf2 => {
                    let (name, exts) = match sem {
                        SemArg::Preferred => ("preferred", semantics::preferred(&g)?),
                        _ => ("cf2", semantics::cf2(&g)?),
                    };
                    if json {
                        let v = json!({ "semantics": name, "extensions": exts });
                        writeln!(out, "{}", pretty(&v))?;
                    } else {
                        for e in &exts {
                            writeln!(out, "{e}")?;
                        }
                    }
                }
            }
        }
        Command::Abstract {
            file,
            json,
            explain,
            emit_dot,
        } => {
            let inst = load(&file, err)?;
            let result = pipeline::derive_abs(&inst.framework, &inst.ontology, &inst.upper)?;
            if let Some(dir) = emit_dot {
                let stem = file
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "framework".into());
                for (i, d) in result.frameworks.iter().enumerate() {
                    let path = dir.join(format!("{stem}.sigma{i}.dot"));
                    std::fs::write(&path, to_dot(&d.framework, &format!("sigma{i}")))?;
                    writeln!(err, "wrote {}", path.display())?;
                }
            }
            if json {
                let mut v = json!({
                    "framework": framework_json(&inst.framework),
                    "sigma": sigma_json(&result),
                });
                if explain {
                    v["scans"] = serde_json::to_value(&result.scans).unwrap_or(Value::Null);
                }
                writeln!(out, "{}", pretty(&v))?;
            } else {
                write_abstraction_text(out, &inst, &result, explain)?;
            }
        }
        Command::Sharpen { file, json, oracle } => {
            let inst = load(&file, err)?;
            let report = pipeline::sharpen(&inst.framework, &inst.ontology, &inst.upper)?;
            if oracle {
                check_against_oracle(&inst.framework, &report)?;
                writeln!(err, "oracle: all preferred computations agree")?;
            }
            if json {
                writeln!(out, "{}", pretty(&report_json(&inst.framework, &report)))?;
            } else {
                write_report_text(out, &report)?;
            }
        }
    }
    Ok(())
}

/// Largest framework the exhaustive cross-check will attempt.
const ORACLE_LIMIT: usize = 24;

fn check_against_oracle(fw: &Framework, report: &SharpeningReport) -> Result<(), Failure> {
    let mut pairs: Vec<(String, &Framework, &ExtensionSet)> =
        vec![("concrete framework".into(), fw, &report.concrete)];
    for (i, (d, x)) in report
        .abstraction
        .frameworks
        .iter()
        .zip(&report.abstract_preferred)
        .enumerate()
    {
        pairs.push((format!("sigma[{i}]"), &d.framework, x));
    }
    for (label, f, got) in pairs {
        let g = f.project_dung();
        if g.len() > ORACLE_LIMIT {
            return Err(Failure::Input(format!(
                "{label}: {} arguments exceed the oracle limit of {ORACLE_LIMIT}",
                g.len()
            )));
        }
        let expected = oracle::preferred_brute_force(&g)?;
        if &expected != got {
            return Err(Failure::Internal(format!(
                "{label}: preferred extensions disagree with exhaustive search"
            )));
        }
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

#[derive(Serialize)]
struct FrameworkJson {
    arguments: BTreeMap<String, BTreeSet<String>>,
    attacks: Vec<(String, String)>,
    argument_attacks: Vec<(String, String)>,
}

fn framework_json(fw: &Framework) -> Value {
    let v = FrameworkJson {
        arguments: fw
            .arguments()
            .into_iter()
            .map(|a| (a.id, a.expressions))
            .collect(),
        attacks: fw
            .attacks()
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        argument_attacks: fw.project_dung().edges(),
    };
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn derived_json(d: &DerivedFramework) -> Value {
    let mut v = framework_json(&d.framework);
    v["provenance"] = serde_json::to_value(&d.provenance).unwrap_or(Value::Null);
    v
}

fn sigma_json(result: &AbstractionResult) -> Value {
    Value::Array(result.frameworks.iter().map(derived_json).collect())
}

fn report_json(fw: &Framework, report: &SharpeningReport) -> Value {
    json!({
        "framework": framework_json(fw),
        "sigma": sigma_json(&report.abstraction),
        "concrete": report.concrete,
        "abstract_preferred": report.abstract_preferred,
        "projected": report.projected,
        "classification": report.classification,
    })
}

fn set_text<'a, I: IntoIterator<Item = &'a String>>(items: I) -> String {
    let v: Vec<&str> = items.into_iter().map(String::as_str).collect();
    format!("{{{}}}", v.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_explain(out: &mut dyn Write, r: &ConservativityReport) -> std::io::Result<()> {
    writeln!(
        out,
        "  candidate {} -> {} at {} ({})",
        set_text(&r.targets),
        r.abstract_id,
        r.node,
        set_text(&r.abstract_expressions)
    )?;
    let validity = match (&r.scc, &r.blocking_superset) {
        (None, _) => "targets span several components".to_string(),
        (Some(_), Some(b)) => format!("also abstracts {}", set_text(b)),
        (Some(scc), None) => format!("no larger subset of {} is abstracted", set_text(scc)),
    };
    writeln!(out, "    valid: {} ({validity})", yes(r.valid))?;
    writeln!(
        out,
        "    non-trivial: {} ({} {} the upper set)",
        yes(r.non_trivial),
        r.node,
        if r.in_upper_set { "is in" } else { "is outside" }
    )?;
    match &r.comparable_attack {
        Some((x, y)) => writeln!(out, "    compatible: no ({x} -> {y} between comparable expressions)")?,
        None => writeln!(out, "    compatible: yes (no internal attack between comparable expressions)")?,
    }
    let boundary: Vec<String> = r
        .boundary
        .iter()
        .map(|c| {
            format!(
                "{} at {} {}",
                c.external,
                c.node,
                if c.comparable { "comparable" } else { "incomparable" }
            )
        })
        .collect();
    writeln!(
        out,
        "    attack-preserving: {} ({})",
        yes(r.attack_preserving),
        if boundary.is_empty() {
            "no boundary attacks".to_string()
        } else {
            boundary.join("; ")
        }
    )?;
    writeln!(out, "    conservative: {}", yes(r.is_conservative()))
}

fn write_framework_text(out: &mut dyn Write, fw: &Framework) -> std::io::Result<()> {
    for a in fw.arguments() {
        writeln!(out, "  argument {} {}", a.id, set_text(&a.expressions))?;
    }
    for (x, y) in fw.project_dung().edges() {
        writeln!(out, "  attack {x} -> {y}")?;
    }
    Ok(())
}

fn write_abstraction_text(
    out: &mut dyn Write,
    inst: &Instance,
    result: &AbstractionResult,
    explain: bool,
) -> std::io::Result<()> {
    let _ = inst;
    for scan in &result.scans {
        writeln!(out, "component {}", set_text(&scan.scc))?;
        if explain {
            for r in &scan.evaluated {
                write_explain(out, r)?;
            }
        }
        if scan.maximal.is_empty() {
            writeln!(out, "  maximal conservative subsets: none")?;
        }
        for m in &scan.maximal {
            writeln!(out, "  maximal conservative subset: {}", set_text(m))?;
        }
    }
    for (i, d) in result.frameworks.iter().enumerate() {
        writeln!(out, "sigma[{i}]")?;
        for step in &d.provenance {
            writeln!(
                out,
                "  replaced {} with {} {}",
                set_text(&step.targets),
                step.abstract_id,
                set_text(&step.abstract_expressions)
            )?;
        }
        write_framework_text(out, &d.framework)?;
    }
    Ok(())
}

fn write_sets(out: &mut dyn Write, label: &str, x: &ExtensionSet) -> std::io::Result<()> {
    let v: Vec<String> = x.iter().map(|e| e.to_string()).collect();
    writeln!(out, "{label}: {{{}}}", v.join(", "))
}

fn write_report_text(out: &mut dyn Write, report: &SharpeningReport) -> std::io::Result<()> {
    write_sets(out, "concrete preferred", &report.concrete)?;
    for (i, x) in report.abstract_preferred.iter().enumerate() {
        write_sets(out, &format!("sigma[{i}] preferred"), x)?;
    }
    for (i, x) in report.projected.iter().enumerate() {
        write_sets(out, &format!("projected[{i}]"), x)?;
    }
    for (a, v) in &report.classification {
        let tags: Vec<String> = v
            .sharpened
            .iter()
            .map(|s| {
                serde_json::to_value(s)
                    .ok()
                    .and_then(|x| x.as_str().map(str::to_string))
                    .unwrap_or_default()
            })
            .collect();
        let status = serde_json::to_value(v.concrete_status)
            .ok()
            .and_then(|x| x.as_str().map(str::to_string))
            .unwrap_or_default();
        writeln!(out, "{a}: {status} -> {}", tags.join(", "))?;
    }
    Ok(())
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Argument-level DOT rendering; node labels list the expressions.
pub fn to_dot(fw: &Framework, name: &str) -> String {
    let mut s = format!("digraph {} {{\n", dot_id(name));
    for a in fw.arguments() {
        let label = format!("{}\\n{}", a.id, set_text(&a.expressions));
        let _ = writeln!(s, "  {} [label={}];", dot_id(&a.id), dot_id(&label).replace("\\\\n", "\\n"));
    }
    for (x, y) in fw.project_dung().edges() {
        let _ = writeln!(s, "  {} -> {};", dot_id(&x), dot_id(&y));
    }
    s.push_str("}\n");
    s
}
