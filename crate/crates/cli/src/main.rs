use std::fs;
use std::io::{self, BufRead, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lpack::families::{is_class_a, FamilySpec};
use lpack::harness::{
    blowup_corpus, random_cubic_corpus, read_corpus, CheckConfig, CorpusRecord, GraphFacts,
};
use lpack::solver::DEFAULT_BUDGET;
use lpack::structure::{block_decomposition, triangle_profile};
use lpack::{
    emit_graph6, parse_graph6, sweep, Edge, Graph, PackingConstraints, Solver, SweepConfig,
    TheoremId, Vertex, VertexPath3,
};

#[derive(Parser)]
#[command(
    name = "lpack",
    version,
    about = "Packings of 3-vertex paths in graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find a Λ-factor (or a maximum packing) of one graph6 graph.
    Solve(SolveArgs),
    /// Print structural facts about one graph6 graph.
    Analyze(AnalyzeArgs),
    /// Check theorems over a graph6 corpus; JSON lines on stdout.
    Verify(VerifyArgs),
    /// Emit a member of a named family as graph6.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct Budget {
    /// Solver node budget per query.
    #[arg(long, env = "LPACK_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// graph6 string; read from stdin when absent.
    graph: Option<String>,
    /// Edge u,v that some path must use.
    #[arg(long = "require-edge", value_name = "U,V", allow_hyphen_values = true)]
    require_edge: Vec<String>,
    /// Edge u,v that no path may use.
    #[arg(long = "forbid-edge", value_name = "U,V", allow_hyphen_values = true)]
    forbid_edge: Vec<String>,
    /// Path a,b,c (center b) that must be in the packing.
    #[arg(
        long = "require-path",
        value_name = "A,B,C",
        allow_hyphen_values = true
    )]
    require_path: Vec<String>,
    /// Vertex removed before solving.
    #[arg(long = "delete-vertex", value_name = "V", allow_hyphen_values = true)]
    delete_vertex: Vec<String>,
    /// Report a maximum packing instead of a factor.
    #[arg(long)]
    max: bool,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// graph6 string; read from stdin when absent.
    graph: Option<String>,
    /// Also compute λ with the exact solver.
    #[arg(long)]
    lambda: bool,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct VerifyArgs {
    /// graph6 files, one graph per line ("-" for stdin).
    files: Vec<String>,
    /// Theorem ids, comma separated or repeated; all when absent.
    #[arg(long, value_delimiter = ',')]
    theorem: Vec<String>,
    /// Hypothesis filter such as "claw_free,kappa>=2,n%3=0".
    #[arg(long, default_value = "")]
    filter: String,
    /// Add COUNT random cubic graphs on N vertices (N:COUNT).
    #[arg(long = "random-cubic", value_name = "N:COUNT")]
    random_cubic: Vec<String>,
    /// Check the triangle blow-up of every input graph instead of the graph.
    #[arg(long)]
    blowup: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed for random corpora and sub-case sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sub-case count above which graphs with n > 15 are sampled.
    #[arg(long = "max-subcases", default_value_t = 20_000)]
    max_subcases: usize,
    /// Attach every witness, not just the first.
    #[arg(long = "full-certificates")]
    full_certificates: bool,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Net,
    #[value(name = "classA")]
    ClassA,
    #[value(name = "H")]
    H,
    #[value(name = "Hext")]
    Hext,
    #[value(name = "R")]
    R,
    #[value(name = "Q")]
    Q,
    Blowup,
    RandomCubic,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Expansion steps for classA and Hext.
    #[arg(long, default_value_t = 0)]
    steps: usize,
    #[arg(long, default_value_t = 4)]
    la: usize,
    #[arg(long, default_value_t = 4)]
    lb: usize,
    /// Cubic base graph (graph6) for blowup.
    #[arg(long)]
    base: Option<String>,
    /// Vertex count for random-cubic.
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Analyze(a) => analyze(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Generate(a) => generate(a),
    };
    match res {
        Ok(code) => code,
        // downstream closed the pipe (`| head`); nothing left to report
        Err(e)
            if e
                .downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lpack: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(arg: Option<String>) -> Result<Graph> {
    let text = match arg {
        Some(s) => s,
        None => {
            let mut line = String::new();
            for l in io::stdin().lock().lines() {
                let l = l?;
                if !l.trim().is_empty() {
                    line = l;
                    break;
                }
            }
            line
        }
    };
    let text = text.trim();
    if text.is_empty() {
        bail!("no graph given");
    }
    parse_graph6(text).with_context(|| format!("reading {text:?}"))
}

/// Integers, negatives counted from the end, or the apex names z, z1, z2.
fn vertex(g: &Graph, s: &str) -> Result<Vertex> {
    let n = g.n() as i64;
    let idx = match s.trim() {
        "z" => n - 1,
        "z1" => n - 2,
        "z2" => n - 1,
        t => {
            let k: i64 = t.parse().map_err(|_| anyhow!("bad vertex {t:?}"))?;
            if k < 0 {
                n + k
            } else {
                k
            }
        }
    };
    if idx < 0 || idx >= n {
        bail!("vertex {s:?} out of range for {n} vertices");
    }
    Ok(idx as Vertex)
}

fn vertices<const K: usize>(g: &Graph, s: &str) -> Result<[Vertex; K]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != K {
        bail!("expected {K} comma-separated vertices, got {s:?}");
    }
    let mut out = [0; K];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = vertex(g, p)?;
    }
    Ok(out)
}

fn solve(a: SolveArgs) -> Result<ExitCode> {
    let g = read_graph(a.graph)?;
    let mut c = PackingConstraints::none();
    for s in &a.require_edge {
        let [u, v] = vertices(&g, s)?;
        c = c.require_edge(Edge::new(u, v));
    }
    for s in &a.forbid_edge {
        let [u, v] = vertices(&g, s)?;
        c = c.forbid_edge(Edge::new(u, v));
    }
    for s in &a.require_path {
        let [x, y, z] = vertices(&g, s)?;
        c = c.require_path(VertexPath3::new(x, y, z));
    }
    for s in &a.delete_vertex {
        c = c.delete_vertex(vertex(&g, s)?);
    }
    c.validate(&g)?;
    let mut solver = Solver::new(a.budget.budget);
    let mut out = io::stdout().lock();
    if a.max {
        let p = solver.max_packing(&g, &c)?;
        writeln!(out, "maximum packing ({} paths)", p.size())?;
        for path in &p.paths {
            writeln!(out, "{path}")?;
        }
    } else {
        match solver.has_factor(&g, &c)? {
            Some(p) => {
                writeln!(out, "factor ({} paths)", p.size())?;
                for path in &p.paths {
                    writeln!(out, "{path}")?;
                }
            }
            None => writeln!(out, "no factor")?,
        }
    }
    eprintln!("solver nodes: {}", solver.total_nodes());
    Ok(ExitCode::SUCCESS)
}

fn analyze(a: AnalyzeArgs) -> Result<ExitCode> {
    let g = read_graph(a.graph)?;
    let f = GraphFacts::of(&g);
    let blocks = block_decomposition(&g);
    let tri = triangle_profile(&g);
    let list = |vs: &[Vertex]| {
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = io::stdout().lock();
    writeln!(out, "n={}", f.n)?;
    writeln!(out, "edges={}", f.edges)?;
    writeln!(out, "connected={}", f.connected)?;
    writeln!(out, "connectivity={}", f.connectivity)?;
    writeln!(out, "claw_free={}", f.claw_free)?;
    writeln!(out, "cubic={}", f.cubic)?;
    writeln!(out, "blocks={}", blocks.blocks.len())?;
    for b in &blocks.blocks {
        writeln!(out, "block={}", list(&b.vertices))?;
    }
    writeln!(out, "cut_vertices={}", list(&blocks.cut_vertices))?;
    writeln!(out, "eb={}", blocks.end_blocks)?;
    writeln!(out, "triangles={}", tri.triangles.len())?;
    for t in &tri.triangles {
        writeln!(out, "triangle={}", list(t))?;
    }
    writeln!(out, "class_a={}", is_class_a(&g))?;
    writeln!(out, "blowup={}", f.blowup)?;
    if a.lambda {
        let p = Solver::new(a.budget.budget).max_packing(&g, &PackingConstraints::none())?;
        writeln!(out, "lambda={}", p.size())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let theorems = if a.theorem.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        a.theorem
            .iter()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()?
    };
    if a.jobs == 0 || a.budget.budget == 0 {
        bail!("--jobs and --budget must be positive");
    }
    let mut records: Vec<CorpusRecord> = Vec::new();
    let mut issues = Vec::new();
    let mut files = a.files.clone();
    if files.is_empty() && a.random_cubic.is_empty() {
        files.push("-".into());
    }
    for file in &files {
        let text = if file == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(file).with_context(|| format!("reading {file}"))?
        };
        let source = if file == "-" { "stdin" } else { file.as_str() };
        let (recs, bad) = read_corpus(source, &text);
        records.extend(recs);
        issues.extend(bad);
    }
    for spec in &a.random_cubic {
        let (n, count) = spec
            .split_once(':')
            .and_then(|(n, c)| Some((n.parse().ok()?, c.parse().ok()?)))
            .ok_or_else(|| anyhow!("--random-cubic wants N:COUNT, got {spec:?}"))?;
        records.extend(random_cubic_corpus(n, count, a.seed)?);
    }
    if a.blowup {
        records = blowup_corpus(&records);
    }
    for i in &issues {
        eprintln!("skipped {}: {}", i.id, i.message);
    }
    let cfg = SweepConfig {
        theorems,
        filters: a.filter.parse()?,
        check: CheckConfig {
            budget: a.budget.budget,
            seed: a.seed,
            max_subcases: a.max_subcases,
            full_certificates: a.full_certificates,
            ..CheckConfig::default()
        },
        jobs: a.jobs,
    };
    let start = Instant::now();
    let report = sweep(&records, &cfg)?;
    io::stdout()
        .lock()
        .write_all(report.verdict_lines().as_bytes())?;
    eprintln!("{}", report.summary);
    eprintln!("elapsed: {:.2?}", start.elapsed());
    Ok(if report.summary.has_counterexample() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn generate(a: GenerateArgs) -> Result<ExitCode> {
    let spec = match a.family {
        Family::Net => FamilySpec::Net,
        Family::ClassA => FamilySpec::ClassA { steps: a.steps },
        Family::H => FamilySpec::HGraph,
        Family::Hext => FamilySpec::HExtended { steps: a.steps },
        Family::R => FamilySpec::RGraph { la: a.la, lb: a.lb },
        Family::Q => FamilySpec::QGraph { la: a.la, lb: a.lb },
        Family::Blowup => FamilySpec::Blowup {
            base: a
                .base
                .ok_or_else(|| anyhow!("--family blowup needs --base GRAPH6"))?,
        },
        Family::RandomCubic => FamilySpec::RandomCubic {
            n: a.n,
            seed: a.seed,
        },
    };
    let inst = spec.build()?;
    println!("{}", emit_graph6(&inst.graph)?);
    if let Some(t) = inst.triangle {
        eprintln!("T={},{},{}", t[0], t[1], t[2]);
    }
    for (name, e) in &inst.marked_edges {
        eprintln!("{name}={e}");
    }
    Ok(ExitCode::SUCCESS)
}
