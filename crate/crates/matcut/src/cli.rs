//! Instance files, result files, run manifests and the command dispatcher
//! behind the `matcut` binary.

use crate::ffmatrix::{FFMatrix, FieldPrime};
use crate::graph::MultiGraph;
use crate::label::{Label, LabelSet};
use crate::matroid::{LinearMatroid, Matroid, OracleMatroid};
use crate::mwc::{imwcut_with, solve_mwc_min_budget, MwcOptions};
use crate::oracle::{
    brute_family, brute_min_solution, gen_gpq, is_feasible, query_count_probe, random_instance, ExhaustiveCuts,
    Instance, ProbeStrategy, ProblemKind, SizeParams, SkipLast, SkipTwo, BRUTE_MAX_K, BRUTE_MAX_VERTICES,
};
use crate::repfam::{verify_rep, SetFamily};
use crate::stcut::{givc_solve_with, solve_min_budget, GivcOptions, DEFAULT_AUGMENT_CAP, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("solver failed: {0}")]
    Solver(String),
    #[error("oracle cross-check failed: {0}")]
    CrossCheck(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

fn solver_err(e: impl std::fmt::Display) -> CliError {
    CliError::Solver(e.to_string())
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, CliError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))
}

/// Parse the line-oriented instance format.
pub fn parse_instance_str(text: &str) -> Result<Instance, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut header: Option<(bool, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut st = None;
    let mut terminals = LabelSet::new();
    let mut special: Option<LabelSet> = None;
    let mut matroid: Option<(FieldPrime, Vec<Vec<u64>>, Vec<Label>)> = None;
    let mut budget: Option<(usize, Option<usize>)> = None;
    while let Some((ln, line)) = lines.next() {
        let mut tok = line.split_whitespace();
        let word = tok.next().unwrap_or("");
        match word {
            "graph" => {
                if header.is_some() {
                    return Err(parse_err(ln, "second graph line"));
                }
                let directed = match tok.next() {
                    Some("directed") => true,
                    Some("undirected") => false,
                    other => return Err(parse_err(ln, format!("expected directed or undirected, got {other:?}"))),
                };
                header = Some((directed, num(tok.next(), ln, "vertex count")?, num(tok.next(), ln, "edge count")?));
            }
            "edge" => {
                let u = tok.next().ok_or_else(|| parse_err(ln, "edge needs two endpoints"))?;
                let v = tok.next().ok_or_else(|| parse_err(ln, "edge needs two endpoints"))?;
                let mult = match tok.next() {
                    Some(m) => m.parse().map_err(|_| parse_err(ln, format!("bad multiplicity '{m}'")))?,
                    None => 1,
                };
                edges.push((Label::new(u), Label::new(v), mult));
            }
            "st" => {
                let s = tok.next().ok_or_else(|| parse_err(ln, "st needs two labels"))?;
                let t = tok.next().ok_or_else(|| parse_err(ln, "st needs two labels"))?;
                st = Some((Label::new(s), Label::new(t)));
            }
            "terminals" => terminals.extend(tok.by_ref().map(Label::new)),
            "special" => special = Some(tok.by_ref().map(Label::new).collect()),
            "matroid" => {
                let p: u64 = num(tok.next(), ln, "modulus")?;
                let p = FieldPrime::new(p).map_err(|e| parse_err(ln, e.to_string()))?;
                let r: usize = num(tok.next(), ln, "row count")?;
                let ncols: usize = num(tok.next(), ln, "column count")?;
                let mut rows = Vec::new();
                for _ in 0..r {
                    let (rl, row) = lines.next().ok_or_else(|| parse_err(ln, "matrix ended early"))?;
                    let row: Vec<u64> = row
                        .split_whitespace()
                        .map(|x| x.parse().map_err(|_| parse_err(rl, format!("bad matrix entry '{x}'"))))
                        .collect::<Result<_, _>>()?;
                    if row.len() != ncols {
                        return Err(CliError::Validation(format!("line {rl}: row has {} entries, expected {ncols}", row.len())));
                    }
                    rows.push(row);
                }
                let (ll, labels) = lines.next().ok_or_else(|| parse_err(ln, "missing column labels"))?;
                let labels: Vec<Label> = labels.split_whitespace().map(Label::new).collect();
                if labels.len() != ncols {
                    return Err(CliError::Validation(format!("line {ll}: {} labels for {ncols} columns", labels.len())));
                }
                matroid = Some((p, rows, labels));
            }
            "budget" => {
                let k = num(tok.next(), ln, "k")?;
                let q = tok.next().map(|x| x.parse().map_err(|_| parse_err(ln, format!("bad q '{x}'")))).transpose()?;
                budget = Some((k, q));
            }
            other => return Err(parse_err(ln, format!("unknown directive '{other}'"))),
        }
        if let Some(extra) = tok.next() {
            if !matches!(word, "terminals" | "special") {
                return Err(parse_err(ln, format!("unexpected token '{extra}'")));
            }
        }
    }
    let (directed, n, m) = header.ok_or_else(|| parse_err(1, "missing graph line"))?;
    if edges.len() != m {
        return Err(CliError::Validation(format!("header declares {m} edges, found {}", edges.len())));
    }
    let special = special.unwrap_or_else(|| {
        let mut q = terminals.clone();
        if let Some((s, t)) = &st {
            q.insert(s.clone());
            q.insert(t.clone());
        }
        q
    });
    let (p, rows, labels) = matroid.ok_or_else(|| CliError::Validation("missing matroid".into()))?;
    let matrix = if rows.is_empty() { FFMatrix::zeros(p, 0, labels.len()) } else { FFMatrix::from_rows(p, &rows).map_err(|e| CliError::Validation(e.to_string()))? };
    let matroid = LinearMatroid::new(matrix, labels.clone()).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut vertices: LabelSet = edges.iter().flat_map(|(u, v, _)| [u.clone(), v.clone()]).collect();
    vertices.extend(special.iter().cloned());
    vertices.extend(terminals.iter().cloned());
    vertices.extend(labels.iter().cloned());
    if let Some((s, t)) = &st {
        vertices.insert(s.clone());
        vertices.insert(t.clone());
    }
    let (k, q) = budget.unwrap_or((0, None));
    let inst = Instance { directed, vertices, edges, st, terminals, special, matroid, k, q };
    validate(&inst, n)?;
    Ok(inst)
}

fn validate(inst: &Instance, n: usize) -> Result<(), CliError> {
    let bad = |m: String| Err(CliError::Validation(m));
    if inst.vertices.len() != n {
        return bad(format!("header declares {n} vertices, found {}", inst.vertices.len()));
    }
    if let Some((s, t)) = &inst.st {
        if s == t {
            return bad("s and t coincide".into());
        }
        if !inst.special.contains(s) || !inst.special.contains(t) {
            return bad("special set must contain s and t".into());
        }
    }
    if !inst.terminals.is_subset(&inst.special) {
        return bad("special set must contain every terminal".into());
    }
    let ground: LabelSet = inst.matroid.labels().iter().cloned().collect();
    let expected: LabelSet = inst.vertices.difference(&inst.special).cloned().collect();
    if ground != expected || ground.len() != inst.matroid.labels().len() {
        return bad("matroid columns must be exactly the non-special vertices".into());
    }
    let r = inst.matroid.rank();
    if inst.k > r {
        return bad(format!("budget k = {} exceeds rank {r}", inst.k));
    }
    if inst.k + inst.q_or_default() > r {
        return bad(format!("k + q exceeds rank {r}"));
    }
    Ok(())
}

pub fn parse_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_instance_str(&text)
}

pub fn render_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let dir = if inst.directed { "directed" } else { "undirected" };
    let _ = writeln!(out, "graph {dir} {} {}", inst.vertices.len(), inst.edges.len());
    for (u, v, c) in &inst.edges {
        if *c == 1 {
            let _ = writeln!(out, "edge {u} {v}");
        } else {
            let _ = writeln!(out, "edge {u} {v} {c}");
        }
    }
    if let Some((s, t)) = &inst.st {
        let _ = writeln!(out, "st {s} {t}");
    }
    if !inst.terminals.is_empty() {
        let _ = writeln!(out, "terminals {}", crate::label::fmt_set(&inst.terminals));
    }
    let _ = writeln!(out, "special {}", crate::label::fmt_set(&inst.special));
    let m = inst.matroid.matrix();
    let _ = writeln!(out, "matroid {} {} {}", m.modulus().get(), m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let labels: Vec<&str> = inst.matroid.labels().iter().map(Label::as_str).collect();
    let _ = writeln!(out, "{}", labels.join(" "));
    match inst.q {
        Some(q) => {
            let _ = writeln!(out, "budget {} {q}", inst.k);
        }
        None => {
            let _ = writeln!(out, "budget {}", inst.k);
        }
    }
    out
}

/// One set per line, labels sorted; `-` stands for the empty set.
pub fn render_family(sets: &[LabelSet]) -> String {
    let mut lines: Vec<String> = sets
        .iter()
        .map(|s| if s.is_empty() { "-".to_string() } else { crate::label::fmt_set(s) })
        .collect();
    lines.sort();
    lines.into_iter().map(|l| l + "\n").collect()
}

pub fn parse_family(text: &str) -> Vec<LabelSet> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| if l == "-" { LabelSet::new() } else { l.split_whitespace().map(Label::new).collect() })
        .collect()
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: u64,
    pub input_digests: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, String>,
    pub wall_time_ms: u128,
    pub output_digest: String,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for randomised steps.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest vertex count the flow augmenter accepts.
    #[arg(long = "max-n", default_value_t = 2 * DEFAULT_AUGMENT_CAP)]
    pub max_n: usize,
    /// Cross-check the answer against brute force when the instance is small.
    #[arg(long = "oracle-verify")]
    pub oracle_verify: bool,
    /// Write a JSON run manifest next to the result (or to stderr).
    #[arg(long = "emit-manifest")]
    pub emit_manifest: bool,
    /// Result file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Stcut,
    Mwc,
    Fvs,
    Oct,
}

impl From<KindArg> for ProblemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Stcut => ProblemKind::StCut,
            KindArg::Mwc => ProblemKind::MultiwayCut,
            KindArg::Fvs => ProblemKind::Fvs,
            KindArg::Oct => ProblemKind::Oct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Gpq,
    Stcut,
    Mwc,
    Fvs,
    Oct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    SkipLast,
    SkipTwo,
}

#[derive(Debug, Parser)]
#[command(name = "matcut", version, about = "Matroid-constrained cut and cycle-hitting solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Representative family of independent minimal (s,t) vertex cuts.
    SolveStcut {
        instance: PathBuf,
        /// Search for the smallest feasible budget instead of using the file's.
        #[arg(long = "min-k")]
        min_k: bool,
        /// Use the complete bipartition augmenter.
        #[arg(long)]
        complete: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Representative family of independent minimal multiway cuts.
    SolveMwc {
        instance: PathBuf,
        #[arg(long = "min-k")]
        min_k: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Independent feedback vertex set of size at most k.
    SolveFvs {
        instance: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Independent odd cycle transversal of size at most k.
    SolveOct {
        instance: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Hidden indices j1,...,jp for the lower-bound family (1-based).
        #[arg(long, value_delimiter = ',')]
        hidden: Vec<usize>,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 35)]
        density: u32,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        terminals: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check a result file against an instance.
    Verify {
        instance: PathBuf,
        result: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Worst-case oracle queries of a strategy on the lower-bound family.
    ProbeLb {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::SkipLast)]
        strategy: StrategyArg,
    },
}

/// Exit status and the text written to the result destination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

fn small_enough(inst: &Instance) -> bool {
    inst.vertices.len() <= BRUTE_MAX_VERTICES && inst.k <= BRUTE_MAX_K
}

fn cross_check_family(kind: ProblemKind, inst: &Instance, out: &SetFamily, q: usize) -> Result<(), CliError> {
    if !small_enough(inst) {
        return Ok(());
    }
    let full = brute_family(kind, inst).map_err(solver_err)?;
    if let Some(x) = out.iter().find(|x| !full.contains(x)) {
        return Err(CliError::CrossCheck(format!("{} is not a solution", crate::label::fmt_set(x))));
    }
    if !verify_rep(&inst.matroid, out, &full, q).map_err(solver_err)? {
        return Err(CliError::CrossCheck(format!("family does not {q}-represent the brute-force family")));
    }
    Ok(())
}

fn cross_check_decision(kind: ProblemKind, inst: &Instance, found: bool) -> Result<(), CliError> {
    if !small_enough(inst) {
        return Ok(());
    }
    let expect = brute_min_solution(kind, inst).map_err(solver_err)?.is_some();
    if expect != found {
        return Err(CliError::CrossCheck(format!("solver says {found}, brute force says {expect}")));
    }
    Ok(())
}

fn family_outcome(f: &SetFamily) -> Outcome {
    Outcome { status: if f.is_empty() { 1 } else { 0 }, output: render_family(f.sets()) }
}

fn solve_stcut_cmd(inst: &Instance, min_k: bool, complete: bool, c: &Common) -> Result<Outcome, CliError> {
    let opts = GivcOptions { cap: c.max_n, seed: c.seed, complete_augmenter: complete };
    let base = inst.stcut().map_err(solver_err)?;
    let (k, q, f) = if min_k {
        match solve_min_budget(&base, &opts).map_err(solver_err)? {
            Some((k, f)) => (k, base.matroid.rank() - k, f),
            None => return Ok(Outcome { status: 1, output: String::new() }),
        }
    } else {
        (base.k, base.q, givc_solve_with(&base, &opts).map_err(solver_err)?.0)
    };
    if c.oracle_verify {
        cross_check_family(ProblemKind::StCut, &Instance { k, ..inst.clone() }, &f, q)?;
    }
    Ok(family_outcome(&f))
}

fn solve_mwc_cmd(inst: &Instance, min_k: bool, c: &Common) -> Result<Outcome, CliError> {
    let opts = MwcOptions { seed: c.seed, stcut: GivcOptions { cap: c.max_n, seed: c.seed, complete_augmenter: false } };
    let base = inst.mwc().map_err(solver_err)?;
    let (k, q, f) = if min_k {
        match solve_mwc_min_budget(&base, &opts).map_err(solver_err)? {
            Some((k, f)) => (k, base.matroid.rank() - k, f),
            None => return Ok(Outcome { status: 1, output: String::new() }),
        }
    } else {
        (base.k, base.q, imwcut_with(&base, &opts).map_err(solver_err)?.0)
    };
    if c.oracle_verify {
        cross_check_family(ProblemKind::MultiwayCut, &Instance { k, ..inst.clone() }, &f, q)?;
    }
    Ok(family_outcome(&f))
}

fn solution_outcome(sol: Option<LabelSet>) -> Outcome {
    match sol {
        Some(s) => Outcome { status: 0, output: render_family(&[s]) },
        None => Outcome { status: 1, output: String::new() },
    }
}

fn gen_cmd(kind: GenKind, args: &GenArgs) -> Result<Outcome, CliError> {
    let text = match kind {
        GenKind::Gpq => {
            let hidden = if args.hidden.is_empty() { vec![1; args.p] } else { args.hidden.clone() };
            if args.p == 0 || args.q == 0 || hidden.len() != args.p || hidden.iter().any(|j| *j == 0 || *j > args.q) {
                return Err(CliError::Validation("need p, q ≥ 1 and p hidden indices in 1..=q".into()));
            }
            render_gpq(args.p, args.q, &hidden)
        }
        other => {
            let pk = match other {
                GenKind::Stcut => ProblemKind::StCut,
                GenKind::Mwc => ProblemKind::MultiwayCut,
                GenKind::Fvs => ProblemKind::Fvs,
                _ => ProblemKind::Oct,
            };
            let params = SizeParams { n: args.n, density: args.density, rank: args.rank, terminals: args.terminals, k: args.k, ..Default::default() };
            let mut inst = random_instance(pk, args.seed, params);
            inst.k = inst.k.min(inst.matroid.rank());
            render_instance(&inst)
        }
    };
    Ok(Outcome { status: 0, output: text })
}

struct GenArgs {
    p: usize,
    q: usize,
    hidden: Vec<usize>,
    n: usize,
    density: u32,
    rank: usize,
    k: usize,
    terminals: usize,
    seed: u64,
}

/// The lower-bound graph as an instance file. The hidden matroid is only an
/// oracle, so the file carries the uniform matroid of rank 2p and names W in a
/// comment.
pub fn render_gpq(p: usize, q: usize, hidden: &[usize]) -> String {
    let lb = gen_gpq(p, q, hidden);
    let ground: Vec<Label> = lb.matroid.ground();
    let prime = FieldPrime::new(1_000_000_007).expect("prime");
    let rows: Vec<Vec<u64>> = (0..2 * p as u32)
        .map(|e| (1..=ground.len() as u64).map(|x| prime.pow(x, e as u64)).collect())
        .collect();
    let matroid = LinearMatroid::new(FFMatrix::from_rows(prime, &rows).expect("vandermonde"), ground).expect("labels");
    let inst = Instance {
        directed: false,
        vertices: lb.graph.vertex_set(),
        edges: lb.graph.edges().map(|(u, v, c)| (u.clone(), v.clone(), c)).collect(),
        st: Some((lb.s.clone(), lb.t.clone())),
        terminals: LabelSet::new(),
        special: LabelSet::from([lb.s.clone(), lb.t.clone()]),
        matroid,
        k: 2 * p,
        q: Some(0),
    };
    format!(
        "# lower-bound graph p={p} q={q}; the oracle matroid accepts only the hidden cut {}\n# among the cut-form sets; the matrix below is the uniform matroid of rank {}\n{}",
        crate::label::fmt_set(&lb.hidden),
        2 * p,
        render_instance(&inst)
    )
}

fn verify_cmd(inst: &Instance, result: &str, kind: ProblemKind) -> Result<Outcome, CliError> {
    let sets = parse_family(result);
    let mut problems = Vec::new();
    for x in &sets {
        let name = crate::label::fmt_set(x);
        if let Some(v) = x.iter().find(|v| !inst.vertices.contains(*v)) {
            problems.push(format!("{name}: unknown vertex {v}"));
            continue;
        }
        if x.iter().any(|v| inst.special.contains(v)) {
            problems.push(format!("{name}: uses a special vertex"));
            continue;
        }
        if !is_feasible(kind, inst, x).map_err(solver_err)? {
            problems.push(format!("{name}: not feasible"));
        }
        if !inst.matroid.is_independent(x).map_err(solver_err)? {
            problems.push(format!("{name}: not independent"));
        }
        let size_ok = match kind {
            ProblemKind::StCut | ProblemKind::MultiwayCut => x.len() == inst.k,
            _ => x.len() <= inst.k,
        };
        if !size_ok {
            problems.push(format!("{name}: size {} against budget {}", x.len(), inst.k));
        }
    }
    if problems.is_empty() && small_enough(inst) {
        match kind {
            ProblemKind::StCut | ProblemKind::MultiwayCut => {
                let fam = SetFamily::new(inst.k, sets.iter().cloned()).map_err(solver_err)?;
                if let Err(e) = cross_check_family(kind, inst, &fam, inst.q_or_default()) {
                    problems.push(e.to_string());
                }
            }
            _ => {
                if let Err(e) = cross_check_decision(kind, inst, !sets.is_empty()) {
                    problems.push(e.to_string());
                }
            }
        }
    }
    let mut out = String::new();
    if problems.is_empty() {
        let _ = writeln!(out, "PASS {} set(s)", sets.len());
        Ok(Outcome { status: 0, output: out })
    } else {
        for p in &problems {
            let _ = writeln!(out, "FAIL {p}");
        }
        Ok(Outcome { status: 1, output: out })
    }
}

fn probe_cmd(p: usize, q: usize, strategy: StrategyArg) -> Result<Outcome, CliError> {
    if p == 0 || q == 0 || (q as u128).pow(p as u32) > 100_000 {
        return Err(CliError::Validation("need p, q ≥ 1 and q^p ≤ 100000".into()));
    }
    let strat: &dyn ProbeStrategy = match strategy {
        StrategyArg::Exhaustive => &ExhaustiveCuts,
        StrategyArg::SkipLast => &SkipLast,
        StrategyArg::SkipTwo => &SkipTwo,
    };
    let r = query_count_probe(strat, p, q);
    let output = format!(
        "placements {}\nworst_queries {}\nwrong_answers {}\n",
        r.placements,
        r.worst_queries,
        r.wrong.len()
    );
    Ok(Outcome { status: if r.wrong.is_empty() { 0 } else { 1 }, output })
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(path: &Path, digests: &mut BTreeMap<String, String>) -> Result<Instance, CliError> {
    let bytes = read(path)?;
    digests.insert(path.display().to_string(), digest(&bytes));
    parse_instance_str(&String::from_utf8_lossy(&bytes))
}

/// Execute a parsed command, writing results and manifests as requested.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let mut digests = BTreeMap::new();
    let mut params = BTreeMap::new();
    let (name, outcome, common) = match &cli.command {
        Command::SolveStcut { instance, min_k, complete, common } => {
            let inst = load(instance, &mut digests)?;
            params.insert("min_k".into(), min_k.to_string());
            params.insert("complete".into(), complete.to_string());
            ("solve-stcut", solve_stcut_cmd(&inst, *min_k, *complete, common)?, Some(common))
        }
        Command::SolveMwc { instance, min_k, common } => {
            let inst = load(instance, &mut digests)?;
            params.insert("min_k".into(), min_k.to_string());
            ("solve-mwc", solve_mwc_cmd(&inst, *min_k, common)?, Some(common))
        }
        Command::SolveFvs { instance, common } => {
            let inst = load(instance, &mut digests)?;
            let g: MultiGraph = inst.undirected();
            let sol = crate::cyclehit::ifvs_solve(&g, &OracleMatroid::from_linear(&inst.matroid), inst.k).map_err(solver_err)?;
            if common.oracle_verify {
                cross_check_decision(ProblemKind::Fvs, &inst, sol.is_some())?;
            }
            ("solve-fvs", solution_outcome(sol), Some(common))
        }
        Command::SolveOct { instance, common } => {
            let inst = load(instance, &mut digests)?;
            let opts = GivcOptions { cap: common.max_n, seed: common.seed, complete_augmenter: false };
            let sol = crate::cyclehit::ioct_solve(&inst.undirected(), &inst.matroid, inst.k, &opts).map_err(solver_err)?;
            if common.oracle_verify {
                cross_check_decision(ProblemKind::Oct, &inst, sol.is_some())?;
            }
            ("solve-oct", solution_outcome(sol), Some(common))
        }
        Command::Gen { kind, p, q, hidden, n, density, rank, k, terminals, common } => {
            let args = GenArgs { p: *p, q: *q, hidden: hidden.clone(), n: *n, density: *density, rank: *rank, k: *k, terminals: *terminals, seed: common.seed };
            params.insert("kind".into(), format!("{kind:?}").to_lowercase());
            ("gen", gen_cmd(*kind, &args)?, Some(common))
        }
        Command::Verify { instance, result, kind } => {
            let inst = load(instance, &mut digests)?;
            let text = String::from_utf8_lossy(&read(result)?).into_owned();
            ("verify", verify_cmd(&inst, &text, (*kind).into())?, None)
        }
        Command::ProbeLb { p, q, strategy } => ("probe-lb", probe_cmd(*p, *q, *strategy)?, None),
    };
    if let Some(c) = common {
        params.insert("max_n".into(), c.max_n.to_string());
        if let Some(path) = &c.out {
            write(path, &outcome.output)?;
        }
        if c.emit_manifest {
            let manifest = RunManifest {
                command: name.to_string(),
                seed: c.seed,
                input_digests: digests,
                parameters: params,
                wall_time_ms: started.elapsed().as_millis(),
                output_digest: digest(outcome.output.as_bytes()),
            };
            let json = serde_json::to_string_pretty(&manifest).map_err(solver_err)? + "\n";
            match &c.out {
                Some(path) => write(&manifest_path(path), &json)?,
                None => eprint!("{json}"),
            }
        }
    }
    Ok(outcome)
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Parse arguments, run, print, and return the process exit code
/// (0 solved or verified, 1 no solution or failed check, 2 error).
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let to_stdout = match &cli.command {
                Command::SolveStcut { common, .. }
                | Command::SolveMwc { common, .. }
                | Command::SolveFvs { common, .. }
                | Command::SolveOct { common, .. }
                | Command::Gen { common, .. } => common.out.is_none(),
                _ => true,
            };
            if to_stdout {
                print!("{}", outcome.output);
            }
            outcome.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
