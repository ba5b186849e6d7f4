//! Commands behind the `simulembed` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use simulembed_core::engine::{embed, embed_chains, EmbedOptions, Embedding};
use simulembed_core::experiment::{default_grid, rows_csv, run_grid, Cell};
use simulembed_core::graph::ColoredGraphSet;
use simulembed_core::io::{parse_graph_set, parse_sequence, to_json, EmbeddingDocument, PartitionDocument};
use simulembed_core::seqpart::{greedy_partition, recurse_bound, tuple_bound_unit, tuple_partition};
use simulembed_core::verify::{check_bend_budget, check_partition, verify_embedding, VerificationReport};
use simulembed_core::{svg, Error};

/// Bends per edge allowed per color group in chains mode.
pub const CHAINS_CONSTANT: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Embed,
    Chains,
    Partition,
    Verify,
    Scale,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "simulembed", version, about = "Colored simultaneous embeddings with few bends")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub mode: Mode,
    /// Input JSON file (optional for `scale`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    /// Number of color groups in chains mode.
    #[arg(long)]
    pub b: Option<usize>,
    /// Partition parameter in (0, 1), as a decimal or `p/q`.
    #[arg(long, default_value = "1/2", value_parser = parse_delta)]
    pub delta: f64,
    /// Seed for generated experiment inputs.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Keep all paths on the x-axis instead of splitting them across axes.
    #[arg(long)]
    pub no_split: bool,
    /// Also write SVG pictures.
    #[arg(long)]
    pub svg: bool,
}

pub fn parse_delta(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("delta must lie in (0, 1), got {s}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("missing option: {0}")]
    Missing(&'static str),
}

impl CliError {
    /// 2 for unreadable input, 3 for a non-planar graph, 4 for incompatible
    /// colorings, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::MalformedInput(_)) | CliError::Core(Error::EmptySequence) => 2,
            CliError::Io { .. } | CliError::Missing(_) => 2,
            CliError::Core(Error::NonPlanar { .. }) => 3,
            CliError::Core(Error::Incompatible(_)) => 4,
            CliError::Core(_) => 1,
        }
    }
}

/// Result of a successful command: whether every check passed, and a
/// one-paragraph summary for the terminal.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub summary: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn input(cfg: &RunConfig) -> Result<&Path, CliError> {
    cfg.input.as_deref().ok_or(CliError::Missing("--input"))
}

fn prepare_out(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out).map_err(|source| CliError::Io {
        path: cfg.out.clone(),
        source,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    prepare_out(cfg)?;
    match cfg.mode {
        Mode::Embed => cmd_embed(cfg),
        Mode::Chains => cmd_chains(cfg),
        Mode::Partition => cmd_partition(cfg),
        Mode::Verify => cmd_verify(cfg),
        Mode::Scale => cmd_scale(cfg),
    }
}

fn write_embedding(cfg: &RunConfig, mode: &str, b: Option<usize>, set: &ColoredGraphSet, emb: &Embedding, report: &VerificationReport) -> Result<(), CliError> {
    let out = &cfg.out;
    write_atomic(&out.join("embedding.json"), &to_json(&EmbeddingDocument::new(mode, b, set, emb)))?;
    write_atomic(&out.join("layout.json"), &to_json(&emb.layout))?;
    write_atomic(&out.join("blocks.txt"), &emb.layout.block_table())?;
    for (i, d) in emb.drawings.iter().enumerate() {
        write_atomic(&out.join(format!("drawing_{i}.json")), &to_json(d))?;
        write_atomic(&out.join(format!("uphill_{i}.json")), &to_json(&emb.uphill[i]))?;
        if cfg.svg {
            write_atomic(
                &out.join(format!("drawing_{i}.svg")),
                &svg::drawing_svg(d, &emb.layout, Some(&emb.uphill[i])),
            )?;
            write_atomic(&out.join(format!("uphill_{i}.svg")), &svg::uphill_svg(&emb.uphill[i], &emb.layout))?;
        }
    }
    write_atomic(&out.join("report.json"), &to_json(report))?;
    write_atomic(&out.join("report.txt"), &report.to_text())
}

pub fn cmd_embed(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let set = parse_graph_set(&read(input(cfg)?)?)?;
    let emb = embed(&set, EmbedOptions { split: !cfg.no_split })?;
    let report = verify_embedding(&set, &emb)?;
    write_embedding(cfg, "embed", None, &set, &emb, &report)?;
    Ok(Outcome {
        passed: report.passed(),
        summary: format!(
            "{:?} layout, {} points, max bends {}\n{}",
            emb.layout.kind,
            emb.layout.len(),
            emb.max_bends(),
            report.to_text()
        ),
    })
}

pub fn cmd_chains(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let b = cfg.b.ok_or(CliError::Missing("--b"))?;
    let set = parse_graph_set(&read(input(cfg)?)?)?;
    let emb = embed_chains(&set, b)?;
    let mut report = verify_embedding(&set, &emb)?;
    let n = emb.paths.first().map_or(0, |p| p.len());
    let c = emb.layout.groups.iter().map(Vec::len).sum::<usize>();
    let cap = n * c.div_ceil(b.max(1));
    let mut size = check_bend_budget(0, 0.0, 0.0);
    size.name = format!("point count {} <= N ceil(c/b) = {cap}", emb.layout.len());
    size.passed = emb.layout.len() <= cap;
    report.checks.push(size);
    report.checks.push(check_bend_budget(emb.max_bends(), b as f64, CHAINS_CONSTANT));
    write_embedding(cfg, "chains", Some(b), &set, &emb, &report)?;
    Ok(Outcome {
        passed: report.passed(),
        summary: format!("chains b={b}, {} points, max bends {}\n{}", emb.layout.len(), emb.max_bends(), report.to_text()),
    })
}

#[derive(Serialize)]
struct Audit {
    runs: usize,
    n: usize,
    arity: usize,
    bound: f64,
    implied_constant: f64,
}

pub fn cmd_partition(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let seq = parse_sequence(&read(input(cfg)?)?)?;
    let part = if seq.arity() == 1 {
        greedy_partition(&seq.dimension(0), cfg.delta)?
    } else {
        tuple_partition(&seq, cfg.delta)?
    };
    let violations = check_partition(&seq, &part);
    let (n, k) = (seq.len(), seq.arity());
    let (bound, implied) = if k == 1 {
        let b = recurse_bound(n, cfg.delta);
        (b, part.len() as f64 / b)
    } else {
        let u = tuple_bound_unit(n, cfg.delta, k);
        (u, part.len() as f64 / u)
    };
    write_atomic(&cfg.out.join("partition.json"), &to_json(&PartitionDocument::new(&seq, cfg.delta, &part)))?;
    let audit = Audit {
        runs: part.len(),
        n,
        arity: k,
        bound,
        implied_constant: implied,
    };
    let line = format!(
        "runs {} n {n} arity {k} bound {bound:.4} implied_constant {implied:.4}\n",
        part.len()
    );
    write_atomic(&cfg.out.join("audit.txt"), &line)?;
    write_atomic(&cfg.out.join("audit.json"), &to_json(&audit))?;
    Ok(Outcome {
        passed: violations.is_empty() && (k > 1 || part.len() as f64 <= bound),
        summary: line,
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let doc = EmbeddingDocument::parse(&read(input(cfg)?)?)?;
    let set = doc.graph_set()?;
    let report = verify_embedding(&set, &doc.embedding())?;
    write_atomic(&cfg.out.join("report.json"), &to_json(&report))?;
    write_atomic(&cfg.out.join("report.txt"), &report.to_text())?;
    Ok(Outcome {
        passed: report.passed(),
        summary: report.to_text(),
    })
}

pub fn cmd_scale(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let cells: Vec<Cell> = match &cfg.input {
        Some(p) => {
            #[derive(serde::Deserialize)]
            struct C {
                n: usize,
                k: usize,
                c: usize,
            }
            let raw: Vec<C> = serde_json::from_str(&read(p)?).map_err(|e| Error::MalformedInput(e.to_string()))?;
            raw.into_iter().map(|c| Cell { n: c.n, k: c.k, c: c.c }).collect()
        }
        None => default_grid(),
    };
    let rows = run_grid(cfg.seed, &cells, EmbedOptions { split: !cfg.no_split })?;
    let csv = rows_csv(&rows);
    write_atomic(&cfg.out.join("scale.csv"), &csv)?;
    Ok(Outcome { passed: true, summary: csv })
}
