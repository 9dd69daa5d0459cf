//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructs::{
    enumerate_constructions_limited, enumerate_constructs_limited, Construct, ConstructError, DEFAULT_MAX_CARRIER,
};
use crate::corpus::verify_corpus;
use crate::hypergraph::{Hypergraph, HypergraphError, HypergraphFile};
use crate::nestedsets::{psi, to_names};
use crate::operadic::{
    all_words, build_edge_graph, classify_all, edge_graph_dot, skeleton_dot, word_to_construction, EdgeGraph, EdgeKind,
    OperadicError, OperadicTree, TreeFile,
};
use crate::pba::{pba_setup_limited, subset_name, HoleWord, PbaError, PbaSetup, Style, MAX_N};
use crate::realization::{f_vector, hrep, vertex_of_construction, verify_isomorphism, RealizationError};
use crate::truncation::{next_round, RoundState, StateFile, TruncationError, TruncationFile};

pub const FORMAT_VERSION: u32 = 1;
const DEFAULT_MAX_NODES: usize = 9;

#[derive(Parser, Debug)]
#[command(name = "hyperpoly", version, about = "Hypergraph polytopes: faces, realizations, coherence edges, truncations")]
pub struct RunConfig {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Plain ASCII for words with holes (`.1`, `x1`).
    #[arg(long, global = true)]
    pub ascii: bool,
    /// Largest carrier accepted for enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CARRIER, value_parser = positive)]
    pub max_carrier: usize,
    /// Largest operadic tree accepted, in nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES, value_parser = positive)]
    pub max_nodes: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Faces of a hypergraph polytope.
    #[command(subcommand)]
    Hg(HgCommand),
    /// Operadic trees and their coherence polytopes.
    #[command(subcommand)]
    Op(OpCommand),
    /// Iterated truncation rounds.
    #[command(subcommand)]
    Trunc(TruncCommand),
    /// Words with holes for the permutohedron-based associahedron.
    #[command(subcommand)]
    Pba(PbaCommand),
    /// Exhaustive property checks.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args, Debug)]
pub struct HgInput {
    /// Hypergraph JSON file.
    pub file: PathBuf,
    /// Add missing singletons instead of rejecting the hypergraph.
    #[arg(long)]
    pub atomize: bool,
}

#[derive(Subcommand, Debug)]
pub enum HgCommand {
    /// All constructs with their dimensions.
    Faces(HgInput),
    /// Face counts, vertices first.
    Fvector(HgInput),
    /// Cover relation of the face poset.
    Hasse(HgInput),
    /// The constructions (vertices).
    Constructions(HgInput),
    /// Exact realization.
    Realize(RealizeArgs),
}

#[derive(Args, Debug)]
#[group(id = "what", required = true, multiple = false, args = ["hrep", "vertices", "verify"])]
pub struct RealizeArgs {
    #[command(flatten)]
    pub input: HgInput,
    /// Half-space description.
    #[arg(long)]
    pub hrep: bool,
    /// Vertex coordinates.
    #[arg(long)]
    pub vertices: bool,
    /// Check that the combinatorial and geometric face orders agree.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false, args = ["tree", "term"])]
pub struct TreeInput {
    /// Tree JSON file `{"label":"a","children":[...]}`.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Tree as a term, e.g. `a(b(c,d),e)`.
    #[arg(long)]
    pub term: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum OpCommand {
    /// The edge graph of the tree.
    Graph(TreeInput),
    /// Edges of the coherence polytope, β or θ.
    Classify(TreeInput),
    /// Decomposition words and their constructions.
    Words(TreeInput),
}

#[derive(Subcommand, Debug)]
pub enum TruncCommand {
    /// The first round over a base: a simplex.
    Init {
        /// Comma-separated base, e.g. `x,y,z,u`.
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<String>,
    },
    /// Truncate a round; prints the next state with the census.
    Round {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        truncations: PathBuf,
        #[arg(long)]
        atomize: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PbaCommand {
    /// Facets and vertex count of the second round.
    Setup { n: usize },
    /// Word of a tamed construct given over the facets.
    Encode { n: usize, construct: String },
    /// Tamed construct of a word with holes.
    Decode { n: usize, word: String },
    /// Face counts and facet polygons.
    Census { n: usize },
}

#[derive(Subcommand, Debug)]
pub enum CorpusCommand {
    /// Run every exhaustive check.
    Verify,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error("{path}: unsupported format version {found}, expected {FORMAT_VERSION}")]
    Version { path: String, found: u32 },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("invalid hypergraph: {0}")]
    Hypergraph(#[from] HypergraphError),
    #[error("invalid construct: {0}")]
    Construct(ConstructError),
    #[error("invalid tree: {0}")]
    Operadic(OperadicError),
    #[error("invalid truncation input: {0}")]
    Truncation(#[from] TruncationError),
    #[error("invalid word or setup: {0}")]
    Pba(PbaError),
    #[error("{0}")]
    Usage(String),
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::TooLarge { .. } => CliError::Guard(e.to_string()),
            e => CliError::Construct(e),
        }
    }
}

impl From<OperadicError> for CliError {
    fn from(e: OperadicError) -> Self {
        match e {
            OperadicError::Construct(c) => c.into(),
            e => CliError::Operadic(e),
        }
    }
}

impl From<PbaError> for CliError {
    fn from(e: PbaError) -> Self {
        match e {
            PbaError::TooLarge { .. } => CliError::Guard(e.to_string()),
            PbaError::Construct(c) => c.into(),
            e => CliError::Pba(e),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        match e {
            RealizationError::Construct(c) => c.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

/// Result of a command: the text to print and the exit status.
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command, printing once.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let out = execute(args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    let _ = std::io::stdout().flush();
    out.status
}

/// As [`run`], returning the output instead of printing it.
pub fn execute<I: IntoIterator<Item = OsString>>(args: I) -> Output {
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Output { status, stdout: text, stderr: String::new() }
            } else {
                Output { status, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cfg) {
        Ok((ok, stdout)) => Output { status: if ok { 0 } else { 1 }, stdout, stderr: String::new() },
        Err(e) => Output { status: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cfg: &RunConfig) -> Result<(bool, String), CliError> {
    match &cfg.command {
        Command::Hg(c) => hg(cfg, c),
        Command::Op(c) => op(cfg, c),
        Command::Trunc(c) => trunc(cfg, c),
        Command::Pba(c) => pba(cfg, c),
        Command::Corpus(CorpusCommand::Verify) => {
            let report = verify_corpus();
            Ok((report.passed(), report.to_text()))
        }
    }
}

fn format_or(cfg: &RunConfig, default: OutputFormat, allowed: &[OutputFormat]) -> Result<OutputFormat, CliError> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("this command does not support --format {}", format_name(f))))
    }
}

fn format_name(f: OutputFormat) -> &'static str {
    match f {
        OutputFormat::Json => "json",
        OutputFormat::Dot => "dot",
        OutputFormat::Text => "text",
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, Value), CliError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read { path: p.clone(), message: e.to_string() })?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Json { path: p.clone(), message: e.to_string() })?;
    if let Some(v) = value.get("format") {
        match v.as_u64() {
            Some(1) => {}
            Some(found) => return Err(CliError::Version { path: p, found: found as u32 }),
            None => return Err(CliError::Json { path: p, message: "\"format\" must be an integer".into() }),
        }
    }
    let parsed = serde_json::from_value(value.clone()).map_err(|e| CliError::Json { path: p, message: e.to_string() })?;
    Ok((parsed, value))
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn load_hypergraph(cfg: &RunConfig, input: &HgInput) -> Result<Hypergraph, CliError> {
    let (file, _): (HypergraphFile, _) = read_json(&input.file)?;
    let h = file.load(input.atomize)?;
    let n = h.carrier().len();
    if n > cfg.max_carrier {
        return Err(CliError::Guard(format!("carrier has {n} atoms, above --max-carrier {}", cfg.max_carrier)));
    }
    if !h.is_connected() {
        return Err(CliError::Construct(ConstructError::Disconnected));
    }
    Ok(h)
}

fn dimension(h: &Hypergraph, t: &Construct) -> usize {
    h.carrier().len() - t.node_count()
}

/// Constructs sorted by dimension, then by text.
fn sorted_faces(h: &Hypergraph, limit: usize) -> Result<Vec<(usize, String, Construct)>, CliError> {
    let mut faces: Vec<(usize, String, Construct)> = enumerate_constructs_limited(h, limit)?
        .into_iter()
        .map(|t| (dimension(h, &t), t.to_text(h), t))
        .collect();
    faces.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(faces)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn hg(cfg: &RunConfig, c: &HgCommand) -> Result<(bool, String), CliError> {
    use OutputFormat::*;
    let limit = cfg.max_carrier;
    let mut out = String::new();
    match c {
        HgCommand::Faces(input) => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let h = load_hypergraph(cfg, input)?;
            let faces = sorted_faces(&h, limit)?;
            if f == Json {
                let list: Vec<Value> = faces
                    .iter()
                    .map(|(d, s, t)| json!({"dimension": d, "construct": s, "nested_set": to_names(&h, &psi(t))}))
                    .collect();
                out = json_text(&json!({"format": FORMAT_VERSION, "faces": list}));
            } else {
                for (d, s, _) in &faces {
                    let _ = writeln!(out, "{d} {s}");
                }
            }
        }
        HgCommand::Fvector(input) => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let h = load_hypergraph(cfg, input)?;
            let mut fv = f_vector(&h, limit)?;
            if h.carrier().len() == 1 {
                fv = vec![1];
            }
            if f == Json {
                out = json_text(&json!({"format": FORMAT_VERSION, "f_vector": fv}));
            } else {
                let parts: Vec<String> = fv.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}", parts.join(" "));
            }
        }
        HgCommand::Hasse(input) => {
            let f = format_or(cfg, Dot, &[Dot, Text, Json])?;
            let h = load_hypergraph(cfg, input)?;
            let faces = sorted_faces(&h, limit)?;
            let index: BTreeMap<&Construct, usize> = faces.iter().enumerate().map(|(i, (_, _, t))| (t, i)).collect();
            let mut covers = Vec::new();
            for (i, (_, _, t)) in faces.iter().enumerate() {
                let mut ups: Vec<usize> = t.covers().iter().map(|u| index[u]).collect();
                ups.sort();
                covers.extend(ups.into_iter().map(|j| (i, j)));
            }
            match f {
                Dot => {
                    out.push_str("digraph hasse {\n  rankdir=BT;\n");
                    for (i, (d, s, _)) in faces.iter().enumerate() {
                        let _ = writeln!(out, "  f{i} [label={}, dim={d}];", quote(s));
                    }
                    for (a, b) in &covers {
                        let _ = writeln!(out, "  f{a} -> f{b};");
                    }
                    out.push_str("}\n");
                }
                Json => {
                    let list: Vec<Value> = covers.iter().map(|&(a, b)| json!([faces[a].1, faces[b].1])).collect();
                    out = json_text(&json!({"format": FORMAT_VERSION, "covers": list}));
                }
                Text => {
                    for (a, b) in &covers {
                        let _ = writeln!(out, "{} < {}", faces[*a].1, faces[*b].1);
                    }
                }
            }
        }
        HgCommand::Constructions(input) => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let h = load_hypergraph(cfg, input)?;
            let mut vs: Vec<String> = enumerate_constructions_limited(&h, limit)?.iter().map(|v| v.to_text(&h)).collect();
            vs.sort();
            if f == Json {
                out = json_text(&json!({"format": FORMAT_VERSION, "constructions": vs}));
            } else {
                for v in &vs {
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        HgCommand::Realize(r) => {
            let h = load_hypergraph(cfg, &r.input)?;
            if r.hrep {
                let f = format_or(cfg, Text, &[Text, Json])?;
                let system = hrep(&h);
                out = if f == Json { json_text(&system.to_json(&h)) } else { system.to_text(&h) };
            } else if r.vertices {
                let f = format_or(cfg, Json, &[Text, Json])?;
                let mut rows: Vec<(String, Vec<String>)> = Vec::new();
                for v in enumerate_constructions_limited(&h, limit)? {
                    rows.push((v.to_text(&h), vertex_of_construction(&h, &v)?.to_strings(&h)));
                }
                rows.sort();
                if f == Json {
                    let map: serde_json::Map<String, Value> = rows.into_iter().map(|(k, v)| (k, json!(v))).collect();
                    out = json_text(&json!({"format": FORMAT_VERSION, "carrier": h.names(h.carrier()), "vertices": map}));
                } else {
                    for (k, v) in rows {
                        let _ = writeln!(out, "{k} ({})", v.join(", "));
                    }
                }
            } else {
                format_or(cfg, Text, &[Text])?;
                let report = verify_isomorphism(&h, limit)?;
                return Ok((report.passed(), report.to_text()));
            }
        }
    }
    Ok((true, out))
}

fn load_tree(cfg: &RunConfig, input: &TreeInput) -> Result<EdgeGraph, CliError> {
    let tree = match (&input.tree, &input.term) {
        (Some(path), _) => {
            let (file, _): (TreeFile, _) = read_json(path)?;
            OperadicTree::from_node(&file.root)?
        }
        (None, Some(term)) => OperadicTree::parse(term)?,
        (None, None) => return Err(CliError::Usage("give --tree or --term".into())),
    };
    if tree.len() > cfg.max_nodes {
        return Err(CliError::Guard(format!("tree has {} nodes, above --max-nodes {}", tree.len(), cfg.max_nodes)));
    }
    Ok(build_edge_graph(&tree)?)
}

fn op(cfg: &RunConfig, c: &OpCommand) -> Result<(bool, String), CliError> {
    use OutputFormat::*;
    let mut out = String::new();
    match c {
        OpCommand::Graph(input) => {
            let f = format_or(cfg, Dot, &[Dot, Text, Json])?;
            let g = load_tree(cfg, input)?;
            let name = |p: &(usize, usize)| (g.atom_name(p.0).to_string(), g.atom_name(p.1).to_string());
            let solid: Vec<(String, String)> = g.solid_edges().iter().map(name).collect();
            let dashed: Vec<(String, String)> = g.dashed_edges().iter().map(name).collect();
            match f {
                Dot => out = edge_graph_dot(&g),
                Json => {
                    let levels: serde_json::Map<String, Value> =
                        g.atoms().iter().map(|a| (g.atom_name(a).to_string(), json!(g.level(a)))).collect();
                    out = json_text(&json!({
                        "format": FORMAT_VERSION,
                        "tree": g.tree.to_text(),
                        "levels": levels,
                        "solid": solid,
                        "dashed": dashed,
                    }));
                }
                Text => {
                    for a in g.atoms().iter() {
                        let _ = writeln!(out, "atom {} level {}", g.atom_name(a), g.level(a));
                    }
                    for (a, b) in &solid {
                        let _ = writeln!(out, "solid {a} {b}");
                    }
                    for (a, b) in &dashed {
                        let _ = writeln!(out, "dashed {a} {b}");
                    }
                }
            }
        }
        OpCommand::Classify(input) => {
            let f = format_or(cfg, Dot, &[Dot, Text, Json])?;
            let g = load_tree(cfg, input)?;
            if f == Dot {
                out = skeleton_dot(&g)?;
            } else {
                let word = |v: &Construct| -> Result<String, CliError> {
                    Ok(crate::operadic::construction_to_word(&g, v)?.to_text(&g.tree))
                };
                let mut rows = Vec::new();
                for e in classify_all(&g)? {
                    let (a, b) = (word(&e.ends.0)?, word(&e.ends.1)?);
                    let (kind, a, b) = match e.kind {
                        EdgeKind::Beta => ("beta", a, b),
                        EdgeKind::Theta => ("theta", a.clone().min(b.clone()), a.max(b)),
                    };
                    rows.push((kind, a, b));
                }
                rows.sort();
                if f == Json {
                    let list: Vec<Value> = rows
                        .iter()
                        .map(|(k, a, b)| json!({"kind": k, "from": a, "to": b}))
                        .collect();
                    out = json_text(&json!({"format": FORMAT_VERSION, "tree": g.tree.to_text(), "edges": list}));
                } else {
                    for (k, a, b) in &rows {
                        let arrow = if *k == "beta" { "->" } else { "--" };
                        let _ = writeln!(out, "{k} {a} {arrow} {b}");
                    }
                }
            }
        }
        OpCommand::Words(input) => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let g = load_tree(cfg, input)?;
            let mut rows = Vec::new();
            for w in all_words(&g.tree) {
                rows.push((w.to_text(&g.tree), word_to_construction(&g, &w)?.to_text(&g.hypergraph)));
            }
            rows.sort();
            if f == Json {
                let list: Vec<Value> = rows.iter().map(|(w, c)| json!({"word": w, "construction": c})).collect();
                out = json_text(&json!({"format": FORMAT_VERSION, "tree": g.tree.to_text(), "words": list}));
            } else {
                for (w, c) in &rows {
                    let _ = writeln!(out, "{w} {c}");
                }
            }
        }
    }
    Ok((true, out))
}

fn state_json(s: &RoundState) -> Value {
    serde_json::to_value(s.to_file()).expect("state serializes")
}

fn trunc(cfg: &RunConfig, c: &TruncCommand) -> Result<(bool, String), CliError> {
    use OutputFormat::*;
    let f = format_or(cfg, Json, &[Json, Text])?;
    let (state, census) = match c {
        TruncCommand::Init { base } => (RoundState::initial(base)?, None),
        TruncCommand::Round { state, truncations, atomize } => {
            let (sf, _): (StateFile, _) = read_json(state)?;
            let s = RoundState::from_file(&sf)?;
            let (tf, _): (TruncationFile, _) = read_json(truncations)?;
            let ht = tf.load(&s, *atomize)?;
            if ht.carrier().len() > cfg.max_carrier {
                return Err(CliError::Guard(format!(
                    "{} facets, above --max-carrier {}",
                    ht.carrier().len(),
                    cfg.max_carrier
                )));
            }
            let outcome = next_round(&s, &ht)?;
            (outcome.next, Some(outcome.census))
        }
    };
    let mut out = String::new();
    if f == Json {
        let mut v = state_json(&state);
        if let Some(c) = &census {
            v["census"] = json!({
                "tamed_constructs": c.tamed_constructs,
                "tamed_constructions": c.tamed_constructions,
                "constrs": c.constrs,
                "coincidences": c.coincidences,
            });
        }
        out = json_text(&v);
    } else {
        let _ = writeln!(out, "round {}", state.round);
        let _ = writeln!(out, "facets {}", state.names().join(" "));
        for v in state.vertex_names() {
            let names: Vec<String> = v.into_iter().collect();
            let _ = writeln!(out, "vertex {{{}}}", names.join(", "));
        }
        if let Some(c) = &census {
            let _ = writeln!(out, "tamed constructs {}", c.tamed_constructs);
            let _ = writeln!(out, "tamed constructions {}", c.tamed_constructions);
            let _ = writeln!(out, "constrs {}", c.constrs);
            for x in &c.coincidences {
                let _ = writeln!(out, "coincidence {x}");
            }
        }
    }
    Ok((true, out))
}

fn setup_for(cfg: &RunConfig, n: usize) -> Result<PbaSetup, CliError> {
    if n + 1 > cfg.max_carrier.min(MAX_N + 1) {
        return Err(CliError::Guard(format!("dimension {n} exceeds the limit {}", MAX_N.min(cfg.max_carrier - 1))));
    }
    Ok(pba_setup_limited(n, MAX_N)?)
}

fn pba(cfg: &RunConfig, c: &PbaCommand) -> Result<(bool, String), CliError> {
    use OutputFormat::*;
    let style = if cfg.ascii { Style::Ascii } else { Style::Unicode };
    let mut out = String::new();
    match c {
        PbaCommand::Setup { n } => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let s = setup_for(cfg, *n)?;
            let facets: Vec<String> = (0..s.truncation2.labels().len()).map(|a| subset_name(&s, s.subset(a))).collect();
            let vertices = s.round2.vertex_hypergraph.len();
            if f == Json {
                out = json_text(&json!({
                    "format": FORMAT_VERSION,
                    "n": n,
                    "letters": s.base,
                    "facets": facets,
                    "vertices": vertices,
                }));
            } else {
                let _ = writeln!(out, "letters {}", s.base.join(" "));
                let _ = writeln!(out, "facets {}", facets.len());
                for x in &facets {
                    let _ = writeln!(out, "  {x}");
                }
                let _ = writeln!(out, "vertices {vertices}");
            }
        }
        PbaCommand::Encode { n, construct } => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let s = setup_for(cfg, *n)?;
            let t = Construct::parse(&s.truncation2, construct)?;
            let w = s.encode(&t)?;
            if f == Json {
                out = json_text(&json!({"construct": t.to_text(&s.truncation2), "word": w.to_text(style)}));
            } else {
                let _ = writeln!(out, "{}", w.to_text(style));
            }
        }
        PbaCommand::Decode { n, word } => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let s = setup_for(cfg, *n)?;
            let w = HoleWord::parse(word)?;
            let t = s.decode(&w)?;
            let text = t.to_text(&s.truncation2);
            if f == Json {
                out = json_text(&json!({"word": s.normalize(&w)?.to_text(style), "construct": text}));
            } else {
                let _ = writeln!(out, "{text}");
            }
        }
        PbaCommand::Census { n } => {
            let f = format_or(cfg, Text, &[Text, Json])?;
            let census = setup_for(cfg, *n)?.census();
            if f == Json {
                let polygons: serde_json::Map<String, Value> =
                    census.facet_polygons.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                out = json_text(&json!({
                    "format": FORMAT_VERSION,
                    "f_vector": census.f_vector,
                    "facets_by_vertices": polygons,
                }));
            } else {
                out = census.to_text();
            }
        }
    }
    Ok((true, out))
}
