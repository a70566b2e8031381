//! Command-line front end. [`run`] executes a parsed command and returns the
//! text to emit and the exit status; `main` only does the I/O.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chordkit_core::boundary::classify;
use chordkit_core::clique_tree::{
    count_clique_trees, enumerate_clique_trees, junction_violation, CliqueTree,
};
use chordkit_core::format::{
    graph_hash, parse_edge_list, parse_tree, write_bipartite, write_edge_list, write_tree_edges,
    write_walk_log,
};
use chordkit_core::generate::{exhaustive_corpus, random_chordal_seeded, Method};
use chordkit_core::relation::{build_bipartite, in_relation, is_connected, random_walk};
use chordkit_core::verify::{verify_corpus, VerifyOptions};
use chordkit_core::{ChordalGraph, Error, Graph, PerfectSequence, Side};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub mod report;

use report::{exit_code, join_comma, AnalysisReport, AnalyzeOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_UNSUPPORTED: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

/// Largest vertex count for the exhaustive verification tier.
pub const MAX_EXHAUSTIVE_N: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "chordkit", version, about = "Chordal graph structure toolkit")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized command.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the primary output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cliques, separators, classifications and tree counts of a graph.
    Analyze {
        file: PathBuf,
        /// Also enumerate clique trees and perfect sequences.
        #[arg(long)]
        enumerate: bool,
        /// Also build the tree/sequence bipartite graph.
        #[arg(long)]
        bipartite: bool,
    },
    /// Count, enumerate or check clique trees.
    Trees(TreesArgs),
    /// Enumerate perfect sequences or check one.
    Sequences {
        file: PathBuf,
        /// Clique indices in order, separated by commas or spaces.
        #[arg(long)]
        check: Option<String>,
    },
    /// Boundary and strongly simplicial classification of every clique.
    Boundary { file: PathBuf },
    /// Tree/sequence relation: statistics, full dump, or a single pair.
    Relation(RelationArgs),
    /// Seeded random walk over trees and sequences.
    Walk {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = StartSide::Tree)]
        start: StartSide,
    },
    /// Random connected chordal graph as an edge list.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GenMethod::TreeOfCliques)]
        method: GenMethod,
    },
    /// Check every structural property over a graph corpus.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["count", "enumerate", "check"])))]
pub struct TreesArgs {
    pub file: PathBuf,
    /// Exact number of clique trees (the default).
    #[arg(long)]
    pub count: bool,
    /// Every clique tree, in tree format.
    #[arg(long)]
    pub enumerate: bool,
    /// Check the junction property of a tree file.
    #[arg(long, value_name = "TREEFILE")]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("pair").args(["tree", "sequence"]).multiple(true)))]
pub struct RelationArgs {
    pub file: PathBuf,
    /// Print every tree, sequence and relation edge.
    #[arg(long, conflicts_with = "pair")]
    pub dump: bool,
    #[arg(long, value_name = "TREEFILE", requires = "sequence")]
    pub tree: Option<PathBuf>,
    #[arg(long, value_name = "ORDER", requires = "tree")]
    pub sequence: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Exhaustive tier: all connected chordal graphs with up to this many
    /// vertices.
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Number of seeded random graphs.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Vertex bound for random graphs.
    #[arg(long, default_value_t = 10)]
    pub random_max_n: usize,
    /// Clique bound for random graphs; larger draws are redrawn.
    #[arg(long, default_value_t = 8)]
    pub random_max_k: usize,
    /// Negative control: feed a tree violating the junction property into
    /// the enumeration checks.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartSide {
    Tree,
    Sequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenMethod {
    TreeOfCliques,
    FillIn,
}

impl From<GenMethod> for Method {
    fn from(m: GenMethod) -> Self {
        match m {
            GenMethod::TreeOfCliques => Method::TreeOfCliques,
            GenMethod::FillIn => Method::FillIn,
        }
    }
}

/// Result of a command: primary output, diagnostics and exit status.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Outcome::default()
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(e),
        }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    parse_edge_list(&read_text(path)?)
}

fn read_chordal(path: &Path) -> Result<ChordalGraph, Error> {
    ChordalGraph::new(read_graph(path)?)
}

fn parse_order(cg: &ChordalGraph, text: &str) -> Result<Vec<usize>, Error> {
    let order = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad clique index {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..cg.k()).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!(
            "sequence must be a permutation of 0..{}",
            cg.k()
        )));
    }
    Ok(order)
}

fn join_indices(order: &[usize]) -> String {
    order
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze {
            file,
            enumerate,
            bipartite,
        } => analyze(cli, file, *enumerate, *bipartite),
        Command::Trees(args) => trees(cli, args),
        Command::Sequences { file, check } => sequences(cli, file, check.as_deref()),
        Command::Boundary { file } => boundary(cli, file),
        Command::Relation(args) => relation(cli, args),
        Command::Walk { file, steps, start } => walk(cli, file, *steps, *start),
        Command::Generate { n, method } => generate(cli, *n, *method),
        Command::Verify(args) => verify(cli, args),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn analyze(cli: &Cli, file: &Path, enumerate: bool, bipartite: bool) -> Result<Outcome, Error> {
    let g = read_graph(file)?;
    let r = AnalysisReport::new(
        &g,
        AnalyzeOptions {
            enumerate,
            bipartite,
        },
    );
    let body = if cli.json { to_json(&r) } else { r.render() };
    let code = if r.supported() {
        EXIT_OK
    } else {
        EXIT_UNSUPPORTED
    };
    Ok(Outcome::ok(body).with_code(code))
}

#[derive(Serialize)]
struct TreeJson {
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct EdgeJson {
    a: usize,
    b: usize,
    separator: Vec<u32>,
}

fn tree_json(cg: &ChordalGraph, t: &CliqueTree) -> TreeJson {
    TreeJson {
        edges: t
            .edges()
            .iter()
            .map(|&(a, b)| EdgeJson {
                a,
                b,
                separator: cg.clique(a).intersection(cg.clique(b)).as_slice().to_vec(),
            })
            .collect(),
    }
}

fn trees(cli: &Cli, args: &TreesArgs) -> Result<Outcome, Error> {
    let cg = read_chordal(&args.file)?;
    let count = count_clique_trees(&cg);
    if let Some(path) = &args.check {
        let t = parse_tree(&cg, &read_text(path)?)?;
        let violation = junction_violation(&cg, &t)?;
        let body = if cli.json {
            #[derive(Serialize)]
            struct Check {
                valid: bool,
                violation: Option<Vec<u32>>,
            }
            to_json(&Check {
                valid: violation.is_none(),
                violation: violation.as_ref().map(|s| s.as_slice().to_vec()),
            })
        } else {
            match &violation {
                None => "valid clique tree\n".to_string(),
                Some(s) => format!(
                    "junction property violated at S={{{}}}\n",
                    join_comma(s.as_slice())
                ),
            }
        };
        let code = if violation.is_none() {
            EXIT_OK
        } else {
            EXIT_VERIFY
        };
        return Ok(Outcome::ok(body).with_code(code));
    }
    if args.enumerate {
        return Ok(match enumerate_clique_trees(&cg) {
            Ok(ts) => {
                let body = if cli.json {
                    #[derive(Serialize)]
                    struct Enumeration {
                        count: String,
                        trees: Vec<TreeJson>,
                    }
                    to_json(&Enumeration {
                        count: count.to_string(),
                        trees: ts.iter().map(|t| tree_json(&cg, t)).collect(),
                    })
                } else {
                    let mut out = chordkit_core::format::write_clique_table(&cg);
                    for (i, t) in ts.iter().enumerate() {
                        writeln!(out, "# tree {i}").unwrap();
                        out += &write_tree_edges(&cg, t);
                    }
                    writeln!(out, "# count {count}").unwrap();
                    out
                };
                Outcome::ok(body)
            }
            Err(e) => {
                let mut o = Outcome::error(&e);
                o.stdout = if cli.json {
                    to_json(&serde_json::json!({ "count": count.to_string() }))
                } else {
                    format!("{count}\n")
                };
                o
            }
        });
    }
    let body = if cli.json {
        to_json(&serde_json::json!({ "count": count.to_string() }))
    } else {
        format!("{count}\n")
    };
    Ok(Outcome::ok(body))
}

fn sequences(cli: &Cli, file: &Path, check: Option<&str>) -> Result<Outcome, Error> {
    let cg = read_chordal(file)?;
    if let Some(text) = check {
        let order = parse_order(&cg, text)?;
        let valid = cg.is_perfect_sequence(&order)?;
        let body = if cli.json {
            to_json(&serde_json::json!({ "order": order, "valid": valid }))
        } else if valid {
            let s = PerfectSequence::new(&cg, order)?;
            let seps: Vec<String> = s
                .separators()
                .iter()
                .map(|x| format!("{{{}}}", join_comma(x.as_slice())))
                .collect();
            format!("perfect sequence; separators {}\n", seps.join(" "))
        } else {
            "not a perfect sequence\n".to_string()
        };
        let code = if valid { EXIT_OK } else { EXIT_VERIFY };
        return Ok(Outcome::ok(body).with_code(code));
    }
    let seqs = cg.all_perfect_sequences(chordkit_core::chordal::DEFAULT_MAX_SEQUENCE_CLIQUES)?;
    let body = if cli.json {
        let orders: Vec<&[usize]> = seqs.iter().map(PerfectSequence::order).collect();
        to_json(&serde_json::json!({ "count": seqs.len(), "sequences": orders }))
    } else {
        let mut out = chordkit_core::format::write_clique_table(&cg);
        for s in &seqs {
            writeln!(out, "{}", join_indices(s.order())).unwrap();
        }
        writeln!(out, "# count {}", seqs.len()).unwrap();
        out
    };
    Ok(Outcome::ok(body))
}

fn boundary(cli: &Cli, file: &Path) -> Result<Outcome, Error> {
    let cg = read_chordal(file)?;
    let classes = classify(&cg);
    let body = if cli.json {
        to_json(&classes)
    } else {
        let mut out = String::new();
        for c in &classes {
            let dominant = c.dominant.map_or("-".to_string(), |d| d.to_string());
            let sep = c.boundary_separator.as_ref().map_or("-".to_string(), |s| {
                format!("{{{}}}", join_comma(s.as_slice()))
            });
            writeln!(
                out,
                "{:>3} : {{{}}}  {}  dominant {dominant}  separator {sep}",
                c.clique,
                join_comma(cg.clique(c.clique).as_slice()),
                c.class.label()
            )
            .unwrap();
        }
        out
    };
    Ok(Outcome::ok(body))
}

fn relation(cli: &Cli, args: &RelationArgs) -> Result<Outcome, Error> {
    let cg = read_chordal(&args.file)?;
    if let (Some(tree), Some(seq)) = (&args.tree, &args.sequence) {
        let t = parse_tree(&cg, &read_text(tree)?)?;
        let order = parse_order(&cg, seq)?;
        let s = PerfectSequence::new(&cg, order)?;
        let related = in_relation(&cg, &t, &s)?;
        let body = if cli.json {
            to_json(&serde_json::json!({ "related": related }))
        } else if related {
            "related\n".to_string()
        } else {
            "not related\n".to_string()
        };
        return Ok(Outcome::ok(body));
    }
    let b = build_bipartite(&cg)?;
    if args.dump {
        let body = if cli.json {
            to_json(&serde_json::json!({
                "trees": b.trees.iter().map(|t| tree_json(&cg, t)).collect::<Vec<_>>(),
                "sequences": b.sequences.iter().map(PerfectSequence::order).collect::<Vec<_>>(),
                "edges": b.edges().collect::<Vec<_>>(),
            }))
        } else {
            write_bipartite(&cg, &b)
        };
        return Ok(Outcome::ok(body));
    }
    let stats = report::BipartiteStats {
        trees: b.trees.len(),
        sequences: b.sequences.len(),
        edges: b.edge_count(),
        min_degree: b.min_degree(),
        connected: is_connected(&b),
        complete: b.is_complete(),
    };
    let body = if cli.json {
        to_json(&stats)
    } else {
        format!(
            "trees       {}\nsequences   {}\nedges       {}\nmin degree  {}\nconnected   {}\ncomplete    {}\n",
            stats.trees, stats.sequences, stats.edges, stats.min_degree, stats.connected, stats.complete
        )
    };
    let code = if stats.connected {
        EXIT_OK
    } else {
        EXIT_VERIFY
    };
    Ok(Outcome::ok(body).with_code(code))
}

#[derive(Serialize)]
struct WalkJson {
    seed: u64,
    graph: String,
    start: StepJson,
    steps: Vec<StepJson>,
    coverage_trees: usize,
    coverage_sequences: usize,
}

#[derive(Serialize)]
struct StepJson {
    step: usize,
    side: &'static str,
    code: String,
}

fn walk(cli: &Cli, file: &Path, steps: usize, start: StartSide) -> Result<Outcome, Error> {
    let cg = read_chordal(file)?;
    let side = match start {
        StartSide::Tree => Side::Tree,
        StartSide::Sequence => Side::Sequence,
    };
    let log = random_walk(&cg, side, steps, cli.seed);
    let (t, s) = log.coverage();
    let body = if cli.json {
        to_json(&WalkJson {
            seed: log.seed,
            graph: format!("{:016x}", graph_hash(cg.graph())),
            start: StepJson {
                step: 0,
                side: log.start.side().label(),
                code: log.start.code().to_string(),
            },
            steps: log
                .steps
                .iter()
                .map(|x| StepJson {
                    step: x.step,
                    side: x.node.side().label(),
                    code: x.node.code().to_string(),
                })
                .collect(),
            coverage_trees: t,
            coverage_sequences: s,
        })
    } else {
        write_walk_log(cg.graph(), &log)
    };
    Ok(Outcome {
        stdout: body,
        stderr: format!("coverage: {t} trees, {s} sequences\n"),
        code: EXIT_OK,
    })
}

fn generate(cli: &Cli, n: usize, method: GenMethod) -> Result<Outcome, Error> {
    let g = random_chordal_seeded(n, method.into(), cli.seed)?;
    let body = if cli.json {
        to_json(&serde_json::json!({ "vertices": g.vertices(), "edges": g.edges() }))
    } else {
        write_edge_list(&g)
    };
    Ok(Outcome::ok(body))
}

/// The random tier: `count` graphs drawn from one seeded stream, each with
/// its own vertex count and sub-seed, alternating generation methods.
pub fn random_tier(
    count: usize,
    max_n: usize,
    max_k: usize,
    seed: u64,
) -> Result<Vec<Graph>, Error> {
    if max_n == 0 {
        return Err(Error::InvalidArgument(
            "--random-max-n must be at least 1".into(),
        ));
    }
    if max_k == 0 {
        return Err(Error::InvalidArgument(
            "--random-max-k must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0usize;
    while out.len() < count {
        let n = rng.gen_range(1..=max_n);
        let method = if draws.is_multiple_of(2) {
            Method::TreeOfCliques
        } else {
            Method::FillIn
        };
        let g = random_chordal_seeded(n, method, rng.gen())?;
        draws += 1;
        if ChordalGraph::new(g.clone())?.k() <= max_k {
            out.push(g);
        }
    }
    Ok(out)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, Error> {
    if args.max_n > MAX_EXHAUSTIVE_N {
        return Err(Error::ResourceLimit {
            what: format!("exhaustive tier limited to {MAX_EXHAUSTIVE_N} vertices"),
        });
    }
    let mut graphs = exhaustive_corpus(args.max_n);
    graphs.extend(random_tier(
        args.random,
        args.random_max_n,
        args.random_max_k,
        cli.seed,
    )?);
    let opts = VerifyOptions {
        inject_fault: args.inject_fault,
        ..VerifyOptions::default()
    };
    let report = verify_corpus(&graphs, &opts);
    let body = if cli.json {
        to_json(&report)
    } else {
        report.render()
    };
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    };
    Ok(Outcome::ok(body).with_code(code))
}

/// Parses arguments, runs the command and performs the output. Returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{}", outcome.stdout),
    }
    outcome.code
}
