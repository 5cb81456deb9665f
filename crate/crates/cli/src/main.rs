//! `comtree`: community trees, persistence diagrams, bottleneck distances
//! and star-number stability checks from the command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comtree::harness::{stability_trials, vertex_deletion_sweep, TrialSpec};
use comtree::io::{parse_graph, InputFormat};
use comtree::persistence::{bottleneck_distance, Slot};
use comtree::{
    community_tree, export_tree, CliqueError, CommunityTree, Config, Error, Execution, ExportFormat, Graph, HalfInt,
    PersistenceDiagram, StabilityReport, StarNumbers, DEFAULT_CLIQUE_CAP, DEFAULT_MVC_BUDGET,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "comtree",
    version,
    about = "Community trees and persistence diagrams of networks"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Input format; `auto` picks GML for `.gml` files and edge lists otherwise
    #[arg(long, global = true, value_enum, default_value_t = InputKind::Auto)]
    input_format: InputKind,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Maximum number of cliques one enumeration may produce
    #[arg(long, global = true, default_value_t = DEFAULT_CLIQUE_CAP)]
    clique_cap: usize,
    /// Branch-and-bound node budget per vertex cover
    #[arg(long, global = true, default_value_t = DEFAULT_MVC_BUDGET)]
    mvc_budget: u64,
    /// Run every stage on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Community tree: text summary, JSON or DOT
    Tree { input: PathBuf },
    /// Persistence diagram: text table or JSON
    Diagram { input: PathBuf },
    /// Bottleneck distance between two community trees, with a witness matching
    Distance { first: PathBuf, second: PathBuf },
    /// Removal, addition and total star numbers between two graphs
    Tsn { first: PathBuf, second: PathBuf },
    /// Check d_B <= TSN for a graph pair or random trials, or d_B <= 1 for every vertex deletion
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Original and perturbed graph
    #[arg(num_args = 0..=2, conflicts_with_all = ["random", "delete_each"])]
    inputs: Vec<PathBuf>,
    /// Random trials on G(N, P): `--random N P TRIALS [SEED]`
    #[arg(long, num_args = 3..=4, value_names = ["N", "P", "TRIALS", "SEED"], conflicts_with = "delete_each")]
    random: Option<Vec<String>>,
    /// Seed for `--random`
    #[arg(long)]
    seed: Option<u64>,
    /// Most hub vertices a perturbation may touch
    #[arg(long, default_value_t = 3)]
    hubs: usize,
    /// Probability that each hub-incident pair is toggled
    #[arg(long, default_value_t = 0.5)]
    flip: f64,
    /// Compare the tree of this graph with the tree after deleting each vertex
    #[arg(long, value_name = "INPUT")]
    delete_each: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Auto,
    Edgelist,
    Gml,
}

const EXIT_PARSE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Graph(_) => EXIT_PARSE,
            Error::Clique(CliqueError::ResourceLimit { .. }) => EXIT_RESOURCE,
            Error::Clique(_) | Error::Tree(_) => EXIT_INVARIANT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered output plus whether a checked bound failed.
struct Outcome {
    text: String,
    violated: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, violated: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(f) = emit(&cli.opts, &outcome.text) {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.code);
            }
            if outcome.violated {
                eprintln!("error: stability bound violated");
                ExitCode::from(EXIT_INVARIANT)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(opts: &GlobalOpts, text: &str) -> Result<(), Failure> {
    match &opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn config(opts: &GlobalOpts) -> Config {
    Config {
        clique_cap: opts.clique_cap,
        mvc_budget: opts.mvc_budget,
        execution: if opts.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    }
}

fn load(path: &Path, kind: InputKind) -> Result<Graph, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let format = match kind {
        InputKind::Auto => InputFormat::from_path(path),
        InputKind::Edgelist => InputFormat::EdgeList,
        InputKind::Gml => InputFormat::Gml,
    };
    parse_graph(&text, format).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn unsupported(command: &str, format: OutputFormat) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    Failure::usage(format!("`{command}` does not support --format {name}"))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = &cli.opts;
    let config = config(opts);
    match &cli.command {
        Command::Tree { input } => {
            let g = load(input, opts.input_format)?;
            let tree = community_tree(&g, &config)?;
            Ok(match opts.format {
                OutputFormat::Json => export_tree(&tree, &g, ExportFormat::Json) + "\n",
                OutputFormat::Dot => export_tree(&tree, &g, ExportFormat::Dot),
                OutputFormat::Text => tree_summary(&g, &tree),
            }
            .into())
        }
        Command::Diagram { input } => {
            let g = load(input, opts.input_format)?;
            let diagram = community_tree(&g, &config)?.diagram();
            match opts.format {
                OutputFormat::Json => Ok((diagram.to_json() + "\n").into()),
                OutputFormat::Text => Ok(diagram.to_table().into()),
                OutputFormat::Dot => Err(unsupported("diagram", opts.format)),
            }
        }
        Command::Distance { first, second } => {
            let g1 = load(first, opts.input_format)?;
            let g2 = load(second, opts.input_format)?;
            let pd1 = community_tree(&g1, &config)?.diagram();
            let pd2 = community_tree(&g2, &config)?.diagram();
            let report = distance_report(&pd1, &pd2);
            match opts.format {
                OutputFormat::Json => Ok(json(&report).into()),
                OutputFormat::Text => Ok(distance_text(&report).into()),
                OutputFormat::Dot => Err(unsupported("distance", opts.format)),
            }
        }
        Command::Tsn { first, second } => {
            let g1 = load(first, opts.input_format)?;
            let g2 = load(second, opts.input_format)?;
            let stars = comtree::tsn(&g1, &g2, config.mvc_budget);
            match opts.format {
                OutputFormat::Json => Ok(json(&stars).into()),
                OutputFormat::Text => Ok(tsn_text(&stars).into()),
                OutputFormat::Dot => Err(unsupported("tsn", opts.format)),
            }
        }
        Command::Verify(args) => {
            if opts.format == OutputFormat::Dot {
                return Err(unsupported("verify", opts.format));
            }
            verify(args, opts, &config)
        }
    }
}

fn tree_summary(g: &Graph, tree: &CommunityTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices\t{}", g.vertex_count());
    let _ = writeln!(out, "edges\t{}", g.edge_count());
    let _ = writeln!(out, "nodes\t{}", tree.len());
    let _ = writeln!(out, "leaves\t{}", tree.leaves().count());
    let _ = writeln!(out, "k_max\t{}", tree.max_order());
    let _ = writeln!(out, "node\torder\tsize\tparent");
    for node in tree.nodes() {
        let parent = node.parent.map_or("-".to_owned(), |p| p.to_string());
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            node.id,
            node.order,
            node.community.size(),
            parent
        );
    }
    out
}

#[derive(Serialize)]
struct MatchedPair {
    /// `[death, birth]` from the first diagram, or `null` for the diagonal
    first: Option<(u32, u32)>,
    second: Option<(u32, u32)>,
    cost: HalfInt,
}

#[derive(Serialize)]
struct DistanceReport {
    distance: HalfInt,
    matching: Vec<MatchedPair>,
}

fn distance_report(pd1: &PersistenceDiagram, pd2: &PersistenceDiagram) -> DistanceReport {
    let (distance, matching) = bottleneck_distance(pd1, pd2);
    let (e1, e2) = (pd1.expanded(), pd2.expanded());
    let pick = |slot: Slot, points: &[(u32, u32)]| match slot {
        Slot::Point(i) => Some(points[i]),
        Slot::Diagonal => None,
    };
    let matching = matching
        .pairs
        .iter()
        .map(|&(a, b)| {
            let (first, second) = (pick(a, &e1), pick(b, &e2));
            let cost = match (first, second) {
                (Some(p), Some(q)) => comtree::persistence::linf(p, q),
                (Some(p), None) | (None, Some(p)) => comtree::persistence::diagonal_distance(p),
                (None, None) => HalfInt::ZERO,
            };
            MatchedPair { first, second, cost }
        })
        .collect();
    DistanceReport { distance, matching }
}

fn distance_text(report: &DistanceReport) -> String {
    let show = |p: Option<(u32, u32)>| p.map_or("diagonal".to_owned(), |(d, b)| format!("({d},{b})"));
    let mut out = format!("d_B\t{}\n", report.distance);
    for pair in &report.matching {
        let _ = writeln!(out, "{}\t->\t{}\t{}", show(pair.first), show(pair.second), pair.cost);
    }
    out
}

fn tsn_text(stars: &StarNumbers) -> String {
    format!(
        "rsn\t{}\nasn\t{}\ntsn\t{}\nexact\t{}\nrsn_cover\t{}\nasn_cover\t{}\n",
        stars.rsn.value,
        stars.asn.value,
        stars.tsn,
        stars.is_exact(),
        stars.rsn.cover.join(","),
        stars.asn.cover.join(","),
    )
}

fn report_text(r: &StabilityReport) -> String {
    format!(
        "rsn\t{}\nasn\t{}\ntsn\t{}\nexact\t{}\nd_B\t{}\nholds\t{}\nslack\t{}\n",
        r.rsn, r.asn, r.tsn, r.exact, r.d_bottleneck, r.holds, r.slack
    )
}

#[derive(Serialize)]
struct TrialRecord<'a> {
    trial: u64,
    vertices: usize,
    perturbed_vertices: usize,
    #[serde(flatten)]
    report: &'a StabilityReport,
}

#[derive(Serialize)]
struct RandomSummary<'a> {
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
    holds: usize,
    exact: usize,
    max_distance: HalfInt,
    reports: Vec<TrialRecord<'a>>,
}

#[derive(Serialize)]
struct SweepRecord {
    vertex: String,
    d_bottleneck: HalfInt,
    holds: bool,
}

#[derive(Serialize)]
struct SweepSummary {
    vertices: usize,
    holds: usize,
    max_distance: HalfInt,
    deletions: Vec<SweepRecord>,
}

fn parse_field<T: std::str::FromStr>(value: &str, name: &str) -> Result<T, Failure> {
    value
        .parse()
        .map_err(|_| Failure::usage(format!("invalid {name} {value:?} for --random")))
}

fn verify(args: &VerifyArgs, opts: &GlobalOpts, config: &Config) -> Result<Outcome, Failure> {
    if let Some(values) = &args.random {
        let n: usize = parse_field(&values[0], "N")?;
        let p: f64 = parse_field(&values[1], "P")?;
        let trials: usize = parse_field(&values[2], "TRIALS")?;
        let positional = values.get(3).map(|s| parse_field::<u64>(s, "SEED")).transpose()?;
        let seed = match (positional, args.seed) {
            (Some(a), Some(b)) if a != b => return Err(Failure::usage("conflicting seeds")),
            (Some(s), _) | (None, Some(s)) => s,
            (None, None) => return Err(Failure::usage("--random needs a seed (fourth value or --seed)")),
        };
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&args.flip) {
            return Err(Failure::usage("probabilities must lie in [0, 1]"));
        }
        let spec = TrialSpec {
            n,
            p,
            max_hubs: args.hubs,
            flip: args.flip,
        };
        let results = stability_trials(spec, trials, seed, config)?;
        let summary = RandomSummary {
            n,
            p,
            trials,
            seed,
            holds: results.iter().filter(|t| t.report.holds).count(),
            exact: results.iter().filter(|t| t.report.exact).count(),
            max_distance: results
                .iter()
                .map(|t| t.report.d_bottleneck)
                .max()
                .unwrap_or(HalfInt::ZERO),
            reports: results
                .iter()
                .map(|t| TrialRecord {
                    trial: t.index,
                    vertices: t.original.vertex_count(),
                    perturbed_vertices: t.perturbed.vertex_count(),
                    report: &t.report,
                })
                .collect(),
        };
        let violated = summary.holds < trials;
        let text = match opts.format {
            OutputFormat::Json => json(&summary),
            _ => {
                let mut out = format!(
                    "{}/{} hold ({} exact), max d_B {}\n",
                    summary.holds, trials, summary.exact, summary.max_distance
                );
                for t in summary.reports.iter().filter(|t| !t.report.holds) {
                    let _ = writeln!(
                        out,
                        "violation in trial {}: d_B {} > tsn {}",
                        t.trial, t.report.d_bottleneck, t.report.tsn
                    );
                }
                out
            }
        };
        return Ok(Outcome { text, violated });
    }

    if let Some(path) = &args.delete_each {
        let g = load(path, opts.input_format)?;
        let one = HalfInt::from_int(1);
        let deletions: Vec<SweepRecord> = vertex_deletion_sweep(&g, config)?
            .into_iter()
            .map(|(vertex, d)| SweepRecord {
                vertex,
                d_bottleneck: d,
                holds: d <= one,
            })
            .collect();
        let summary = SweepSummary {
            vertices: deletions.len(),
            holds: deletions.iter().filter(|r| r.holds).count(),
            max_distance: deletions.iter().map(|r| r.d_bottleneck).max().unwrap_or(HalfInt::ZERO),
            deletions,
        };
        let violated = summary.holds < summary.vertices;
        let text = match opts.format {
            OutputFormat::Json => json(&summary),
            _ => {
                let mut out = format!(
                    "{}/{} hold with d_B <= 1, max d_B {}\n",
                    summary.holds, summary.vertices, summary.max_distance
                );
                for r in &summary.deletions {
                    let _ = writeln!(out, "{}\t{}", r.vertex, r.d_bottleneck);
                }
                out
            }
        };
        return Ok(Outcome { text, violated });
    }

    let [first, second] = args.inputs.as_slice() else {
        return Err(Failure::usage("verify needs two inputs, --random or --delete-each"));
    };
    let g1 = load(first, opts.input_format)?;
    let g2 = load(second, opts.input_format)?;
    let report = comtree::verify_stability(&g1, &g2, config)?;
    let text = match opts.format {
        OutputFormat::Json => json(&report),
        _ => report_text(&report),
    };
    Ok(Outcome {
        text,
        violated: !report.holds,
    })
}
