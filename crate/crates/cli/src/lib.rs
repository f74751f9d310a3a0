//! The `graypaste` command line: validate schemes, inspect their face
//! relations and composition orders, compose labelled diagrams and emit
//! coherence certificates.
//!
//! Exit status is 0 on success, 1 when the input is well-formed but fails a
//! check (invalid scheme, labelling violation, coherence counterexample) and
//! 2 on usage or parse errors. Failures print a JSON object with a `kind`
//! field. All JSON output has sorted keys and ends with a newline.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use graypaste_core::composer::{
    free_labelling, parse_labelling, ComposeError, Composer, Direction, Labelling, Signature,
};
use graypaste_core::relations::{check_comparability, prec_relation, triangle_relation};
use graypaste_core::rewrite::{
    check_contractibility, exchange_edges, CertificateOptions, FaceString, RewriteError, RewriteSystem, Strategy,
    TessellationMode,
};
use graypaste_core::scheme::{parse_scheme, validate_with, Orientation, PastingScheme, SchemeError};

/// Face-count guard used when neither `--limit` nor the environment sets one.
pub const DEFAULT_FACE_LIMIT: usize = 10;
pub const LIMIT_ENV: &str = "GRAYPASTE_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "graypaste", version, about = "Pasting schemes and their coherence in Gray-categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of interior faces for commands that enumerate orders.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Read rotations and face sides with the opposite orientation.
    #[arg(long, global = true)]
    pub mirror: bool,
    /// Output format; JSON by default, DOT for `exchange-graph`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    Leftmost,
    Rightmost,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeName {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a scheme and report its faces.
    Validate {
        scheme: PathBuf,
        /// Print the canonical scheme document instead of the report.
        #[arg(long)]
        emit: bool,
    },
    /// List interior faces with their domain and codomain paths.
    Faces { scheme: PathBuf },
    /// Print the triangle relation, its closure, the prec relation and the comparability check.
    Relations { scheme: PathBuf },
    /// Enumerate composition orders (linear extensions of the closed triangle relation).
    Extensions { scheme: PathBuf },
    /// Rewrite a composition order to the normal form.
    Normalize {
        scheme: PathBuf,
        /// Space- or comma-separated face ids; defaults to the first order found.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value_t = StrategyName::Leftmost)]
        strategy: StrategyName,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compose a labelled scheme along a composition order.
    Compose {
        scheme: PathBuf,
        /// Labelling document; defaults to labelling every cell by its id.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Face ids, or `normal` for the normal form.
        #[arg(long, default_value = "normal")]
        order: String,
        /// Also print the interchangers along the normalization word.
        #[arg(long)]
        witness: bool,
        /// Mark interchangers as one-directional in the output.
        #[arg(long)]
        lax: bool,
    },
    /// Check that the groupoid of composition orders is contractible.
    CoherenceCheck {
        scheme: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The graph of composition orders and adjacent swaps, in DOT.
    ExchangeGraph { scheme: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    payload: Value,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            payload: json!({"kind": kind, "message": message.into()}),
        }
    }

    fn check(payload: Value) -> Self {
        Failure { code: 1, payload }
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        Failure {
            code: if e.is_parse_error() { 2 } else { 1 },
            payload: json!({"kind": e.kind(), "message": e.to_string()}),
        }
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        let kind = match &e {
            RewriteError::FaceLimit { .. } => "face-limit",
            RewriteError::UnknownFace(_) => "unknown-face",
            RewriteError::NotAnObject(_) => "not-an-object",
            RewriteError::NotApplicable { .. } => "not-applicable",
            RewriteError::NotParallel(_) => "not-parallel",
            RewriteError::ReplayMismatch { .. } => "replay-mismatch",
            RewriteError::Relation(_) => "cyclic-relation",
        };
        let code = if matches!(e, RewriteError::Relation(_) | RewriteError::ReplayMismatch { .. }) { 1 } else { 2 };
        Failure {
            code,
            payload: json!({"kind": kind, "message": e.to_string()}),
        }
    }
}

impl From<ComposeError> for Failure {
    fn from(e: ComposeError) -> Self {
        match e {
            ComposeError::Malformed(m) => Failure::usage("malformed-labelling", m),
            ComposeError::Violations(v) => Failure::check(json!({
                "kind": "labelling-violation",
                "message": format!("labelling does not preserve boundaries ({} violations)", v.len()),
                "violations": v,
            })),
            ComposeError::Rewrite(r) => r.into(),
            other => {
                let kind = match &other {
                    ComposeError::UnknownSymbol { .. } => "unknown-symbol",
                    ComposeError::Unlabelled { .. } => "unlabelled",
                    ComposeError::Signature(_) => "invalid-signature",
                    ComposeError::NoSegment { .. } => "no-segment",
                    ComposeError::BoundaryMismatch => "boundary-mismatch",
                    _ => "ill-typed",
                };
                Failure::check(json!({"kind": kind, "message": other.to_string()}))
            }
        }
    }
}

/// Canonical JSON: sorted keys, pretty-printed, newline-terminated.
pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: to_json_text(&json!({"kind": "usage", "message": text.trim_end()})),
                    stderr: text,
                },
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((code, body)) => match &cli.out {
            Some(path) => match std::fs::write(path, &body) {
                Ok(()) => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => failure_outcome(Failure::usage("io", format!("{}: {e}", path.display()))),
            },
            None => Outcome {
                code,
                stdout: body,
                stderr: String::new(),
            },
        },
        Err(f) => failure_outcome(f),
    }
}

fn failure_outcome(f: Failure) -> Outcome {
    let message = f.payload["message"].as_str().unwrap_or_default().to_owned();
    Outcome {
        code: f.code,
        stdout: to_json_text(&f.payload),
        stderr: format!("error: {message}\n"),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn load_scheme(path: &Path, mirror: bool) -> Result<PastingScheme, Failure> {
    let raw = parse_scheme(&read(path)?)?;
    let orientation = if mirror { Orientation::Mirrored } else { Orientation::Standard };
    Ok(validate_with(raw, orientation)?)
}

/// The face-count guard: `--limit`, else the environment, else the default.
fn face_limit(cli: &Cli) -> Result<usize, Failure> {
    let limit = match cli.limit {
        Some(l) => l,
        None => match std::env::var(LIMIT_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::usage("usage", format!("{LIMIT_ENV} must be a positive integer, got {v:?}")))?,
            Err(_) => DEFAULT_FACE_LIMIT,
        },
    };
    if limit == 0 {
        return Err(Failure::usage("usage", "the face limit must be positive"));
    }
    Ok(limit)
}

fn guard(sys: &RewriteSystem, limit: usize) -> Result<(), Failure> {
    if sys.face_count() > limit {
        return Err(RewriteError::FaceLimit {
            faces: sys.face_count(),
            limit,
        }
        .into());
    }
    Ok(())
}

fn parse_order(sys: &RewriteSystem, text: &str) -> Result<FaceString, Failure> {
    let names: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    Ok(sys.parse_object(&names)?)
}

fn bad_format(cmd: &str, f: Format) -> Failure {
    let name = match f {
        Format::Json => "json",
        Format::Text => "text",
        Format::Dot => "dot",
    };
    Failure::usage("usage", format!("{cmd} does not support --format {name}"))
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let default = if matches!(cli.command, Command::ExchangeGraph { .. }) { Format::Dot } else { Format::Json };
    let format = cli.format.unwrap_or(default);
    match &cli.command {
        Command::Validate { scheme, emit } => {
            let s = load_scheme(scheme, cli.mirror)?;
            match (format, emit) {
                (Format::Dot, false) => Ok((0, s.to_dot())),
                (Format::Json, true) => Ok((0, to_json_text(&serde_json::to_value(s.to_document()).unwrap()))),
                (Format::Json, false) => Ok((0, to_json_text(&serde_json::to_value(s.report()).unwrap()))),
                (Format::Text, false) => {
                    let r = s.report();
                    let mut out = format!(
                        "valid pasting scheme: {} vertices, {} edges, {} interior faces\ntop: {}\nbottom: {}\n",
                        r.vertices,
                        r.edges,
                        r.interior_faces,
                        r.top.join(" "),
                        r.bottom.join(" ")
                    );
                    out.push_str(&faces_text(&s));
                    Ok((0, out))
                }
                (f, true) => Err(bad_format("validate --emit", f)),
            }
        }
        Command::Faces { scheme } => {
            let s = load_scheme(scheme, cli.mirror)?;
            match format {
                Format::Json => Ok((0, to_json_text(&json!({"faces": s.report().faces})))),
                Format::Text => Ok((0, faces_text(&s))),
                f => Err(bad_format("faces", f)),
            }
        }
        Command::Relations { scheme } => {
            let s = load_scheme(scheme, cli.mirror)?;
            let triangle = triangle_relation(&s);
            let closure = triangle.transitive_closure();
            let prec = prec_relation(&s);
            let comparability = check_comparability(&s);
            let code = if comparability.passed() { 0 } else { 1 };
            match format {
                Format::Json => Ok((
                    code,
                    to_json_text(&json!({
                        "triangle": triangle.to_json(),
                        "triangle_closure": closure.to_json(),
                        "prec": prec.to_json(),
                        "comparability": comparability,
                    })),
                )),
                Format::Text => {
                    let pairs = |r: &graypaste_core::relations::FaceRelation, sym: &str| {
                        r.named_pairs()
                            .iter()
                            .map(|(a, b)| format!("{a} {sym} {b}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    Ok((
                        code,
                        format!(
                            "triangle: {{{}}}\nclosure: {{{}}}\nprec: {{{}}}\ncomparability: {} pairs, {} violations\n",
                            pairs(&triangle, "◁"),
                            pairs(&closure, "◁"),
                            pairs(&prec, "≺"),
                            comparability.pairs_checked,
                            comparability.violations.len()
                        ),
                    ))
                }
                f => Err(bad_format("relations", f)),
            }
        }
        Command::Extensions { scheme } => {
            let s = load_scheme(scheme, cli.mirror)?;
            let sys = RewriteSystem::new(&s);
            let objects = sys.objects(Some(face_limit(cli)?))?;
            let rendered: Vec<String> = objects.iter().map(|o| sys.render(o)).collect();
            match format {
                Format::Json => Ok((0, to_json_text(&json!({"count": objects.len(), "objects": rendered})))),
                Format::Text => Ok((0, rendered.iter().map(|r| format!("{r}\n")).collect())),
                f => Err(bad_format("extensions", f)),
            }
        }
        Command::Normalize {
            scheme,
            order,
            strategy,
            seed,
        } => {
            if (*strategy == StrategyName::Random) != seed.is_some() {
                return Err(Failure::usage("usage", "--seed is required exactly when --strategy is random"));
            }
            let s = load_scheme(scheme, cli.mirror)?;
            let sys = RewriteSystem::new(&s);
            guard(&sys, face_limit(cli)?)?;
            let from = match order {
                Some(o) => parse_order(&sys, o)?,
                None => sys.some_object()?,
            };
            let mut strat = match strategy {
                StrategyName::Leftmost => Strategy::Leftmost,
                StrategyName::Rightmost => Strategy::Rightmost,
                StrategyName::Random => Strategy::random(seed.unwrap()),
            };
            let rho = sys.rho(&from);
            let (nf, word) = sys.normalize(&from, &mut strat);
            let report = sys.describe_word(&word)?;
            match format {
                Format::Json => Ok((
                    0,
                    to_json_text(&json!({
                        "source": sys.render(&from),
                        "normal_form": sys.render(&nf),
                        "rho": rho,
                        "strategy": strat.name(),
                        "seed": seed,
                        "word": report,
                    })),
                )),
                Format::Text => {
                    let mut out = String::new();
                    let _ = writeln!(out, "source: {} (rho {rho})", report.source);
                    for st in &report.steps {
                        let _ = writeln!(out, "  {} at {}: {} {}", if st.inverse { "unswap" } else { "swap" }, st.position, st.pair[0], st.pair[1]);
                    }
                    let _ = writeln!(out, "normal form: {}", report.target);
                    Ok((0, out))
                }
                f => Err(bad_format("normalize", f)),
            }
        }
        Command::Compose {
            scheme,
            labels,
            order,
            witness,
            lax,
        } => {
            let s = load_scheme(scheme, cli.mirror)?;
            let sys = RewriteSystem::new(&s);
            guard(&sys, face_limit(cli)?)?;
            let (sig, lab): (Signature, Labelling) = match labels {
                Some(p) => parse_labelling(&read(p)?)?,
                None => free_labelling(&s),
            };
            let composer = Composer::new(&s, &sig, &lab)?;
            let from = if order.trim() == "normal" { sys.normal_form()? } else { parse_order(&sys, order)? };
            let term = composer.compose(&from)?;
            let entries: Vec<Value> = term
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "face": s.faces()[e.face].id.to_string(),
                        "core": composer.face_label(e.face),
                        "left": composer.render_path(&e.left),
                        "right": composer.render_path(&e.right),
                    })
                })
                .collect();
            let steps = if *witness {
                let (_, word) = sys.normalize(&from, &mut Strategy::Leftmost);
                Some(composer.word_to_steps(&sys, &word)?)
            } else {
                None
            };
            let arrow = if *lax { "⇛" } else { "≅" };
            match format {
                Format::Json => {
                    let mut v = json!({
                        "order": sys.render(&from),
                        "composite": composer.render(&term),
                        "entries": entries,
                        "source": composer.render_path(&term.source),
                        "target": composer.render_path(&term.target),
                        "variant": if *lax { "lax" } else { "pseudo" },
                    });
                    if let Some(steps) = &steps {
                        v["witness"] = steps
                            .iter()
                            .map(|st| {
                                json!({
                                    "position": st.position,
                                    "cell": composer.render_step(st),
                                    "inverse": st.direction == Direction::GammaInverse,
                                    "before": st.before.iter().rev().map(|e| composer.render_entry(e)).collect::<Vec<_>>().join("·"),
                                    "after": st.after.iter().rev().map(|e| composer.render_entry(e)).collect::<Vec<_>>().join("·"),
                                })
                            })
                            .collect();
                    }
                    Ok((0, to_json_text(&v)))
                }
                Format::Text => {
                    let mut out = format!("{}\n", composer.render(&term));
                    for st in steps.iter().flatten() {
                        let before: Vec<String> = st.before.iter().rev().map(|e| composer.render_entry(e)).collect();
                        let after: Vec<String> = st.after.iter().rev().map(|e| composer.render_entry(e)).collect();
                        let _ = writeln!(
                            out,
                            "  {}: {} {arrow} {}",
                            composer.render_step(st),
                            before.join("·"),
                            after.join("·")
                        );
                    }
                    Ok((0, out))
                }
                f => Err(bad_format("compose", f)),
            }
        }
        Command::CoherenceCheck { scheme, mode, seed } => {
            if *mode == Some(ModeName::Sampled) && seed.is_none() {
                return Err(Failure::usage("usage", "--seed is required with --mode sampled"));
            }
            let s = load_scheme(scheme, cli.mirror)?;
            let sys = RewriteSystem::new(&s);
            let objects = sys.objects(Some(face_limit(cli)?))?;
            let opts = CertificateOptions {
                mode: mode.map(|m| match m {
                    ModeName::Exhaustive => TessellationMode::Exhaustive,
                    ModeName::Sampled => TessellationMode::Sampled,
                }),
                seed: seed.unwrap_or(0),
                ..CertificateOptions::default()
            };
            let cert = check_contractibility(&sys, &objects, &opts);
            let code = if cert.certified { 0 } else { 1 };
            match format {
                Format::Json => Ok((code, to_json_text(&serde_json::to_value(&cert).unwrap()))),
                Format::Text => {
                    let mut out = format!(
                        "{}: {} faces, {} orders, normal form {}\n",
                        if cert.certified { "certified" } else { "FAILED" },
                        cert.faces,
                        cert.objects,
                        cert.normal_form.as_deref().unwrap_or("-")
                    );
                    for c in &cert.counterexamples {
                        let _ = writeln!(out, "  {}: {}", c.kind, c.detail);
                    }
                    Ok((code, out))
                }
                f => Err(bad_format("coherence-check", f)),
            }
        }
        Command::ExchangeGraph { scheme } => {
            let s = load_scheme(scheme, cli.mirror)?;
            let sys = RewriteSystem::new(&s);
            let objects = sys.objects(Some(face_limit(cli)?))?;
            let edges = exchange_edges(&sys, &objects);
            match format {
                Format::Dot => Ok((0, exchange_dot(&sys, &objects, &edges))),
                Format::Json => Ok((0, exchange_json(&sys, &objects, &edges))),
                f => Err(bad_format("exchange-graph", f)),
            }
        }
    }
}

fn exchange_json(sys: &RewriteSystem, objects: &[FaceString], edges: &[(usize, usize, usize)]) -> String {
    to_json_text(&json!({
        "objects": objects.iter().map(|o| sys.render(o)).collect::<Vec<_>>(),
        "edges": edges.iter().map(|&(i, j, p)| json!({"a": i, "b": j, "position": p})).collect::<Vec<_>>(),
    }))
}

/// Nodes are orders; arrows follow forward swaps toward the normal form.
fn exchange_dot(sys: &RewriteSystem, objects: &[FaceString], edges: &[(usize, usize, usize)]) -> String {
    let mut out = String::from("digraph exchange {\n");
    for (i, o) in objects.iter().enumerate() {
        let shape = if sys.is_maximally_ordered(o) { "doublecircle" } else { "ellipse" };
        let _ = writeln!(out, "  n{i} [label=\"{}\", shape={shape}];", sys.render(o));
    }
    for &(i, j, p) in edges {
        let (from, to) = if sys.is_forward(&objects[i], p) { (i, j) } else { (j, i) };
        let _ = writeln!(out, "  n{from} -> n{to} [label=\"{p}\"];");
    }
    out.push_str("}\n");
    out
}

fn faces_text(s: &PastingScheme) -> String {
    let mut out = String::new();
    for f in s.report().faces {
        let _ = writeln!(out, "{}: {} -> {}  sigma [{}]  tau [{}]", f.id, f.s, f.t, f.sigma.join(" "), f.tau.join(" "));
    }
    out
}
