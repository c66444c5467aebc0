use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;
use wiasl_core::solver::{AUDIT_COLUMNS, DEFAULT_MAX_VERTICES, MAX_ELEMENT};
use wiasl_core::{
    audit, claimed_value, construct, construct_k_uniform, generate, min_ground_set, verify,
    ClaimedFormula, Family, FamilySpec, Graph, GraphJson, LabelingClass, LabelingFile,
    SizeException, SolveMode, SolveOptions, SolveStatus, UniverseMode,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "wiasl",
    version,
    about = "Weak integer additive set-labelings of graphs"
)]
#[command(
    after_help = "Exit codes: 0 ok, 1 invalid labeling, 2 usage or input error, 3 infeasible within the universe, 4 time budget exhausted."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the graph families with their published values.
    Families {
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Print a family graph, or a seeded random graph with `random N`.
    Generate {
        family: String,
        n: usize,
        #[arg(long, value_enum, default_value_t = Out::Json)]
        out: Out,
        /// Seed for `random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for `random`.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Print the explicit labeling of a family instance.
    Label {
        family: Family,
        n: usize,
        #[arg(long, value_enum, default_value_t = Out::Json)]
        out: Out,
        /// Build a k-uniform labeling instead (bipartite graphs, or k = 1).
        #[arg(long, value_name = "K")]
        uniform: Option<usize>,
    },
    /// Check a labeling file; exits 1 when it is invalid.
    Verify {
        file: PathBuf,
        /// Class to check instead of the one declared in the file.
        #[arg(long)]
        mode: Option<LabelingClass>,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Find a minimum ground set for `FAMILY N` or a graph/labeling JSON file.
    Solve {
        #[arg(required = true, num_args = 1..=2, value_names = ["FAMILY|FILE", "N"])]
        target: Vec<String>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Compare published value, construction and solver minimum over a range.
    Audit {
        family: Family,
        /// Inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct SolverArgs {
    #[arg(long, default_value = "wiasl")]
    mode: SolveMode,
    /// Largest admissible element (at most 63).
    #[arg(long, value_name = "U")]
    universe: Option<u32>,
    /// Permit 0 in labels.
    #[arg(long)]
    allow_zero: bool,
    /// Try every subset of the universe, not just initial segments.
    #[arg(long)]
    all_subsets: bool,
    /// Accept labelings in which every vertex label is a singleton.
    #[arg(long)]
    allow_uniform: bool,
    #[arg(long, value_name = "SIZE")]
    max_label_size: Option<usize>,
    /// Seconds per instance.
    #[arg(long, value_name = "SECONDS")]
    time_budget: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Out {
    Json,
    Dot,
    Text,
    Csv,
}

impl fmt::Display for Out {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Out::Json => "json",
            Out::Dot => "dot",
            Out::Text => "text",
            Out::Csv => "csv",
        })
    }
}

enum Failure {
    Usage(anyhow::Error),
    Code(u8),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl fmt::Display) -> Failure {
    Failure::Usage(anyhow!("{msg}"))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn require_out(out: Out, allowed: &[Out], command: &str) -> Outcome {
    if allowed.contains(&out) {
        return Ok(());
    }
    let names: Vec<String> = allowed.iter().map(Out::to_string).collect();
    Err(usage(format!(
        "{command} supports --out {}, not {out}",
        names.join("|")
    )))
}

impl SolverArgs {
    fn options(&self) -> Result<SolveOptions, Failure> {
        if let Some(u) = self.universe {
            if u > MAX_ELEMENT {
                return Err(usage(format!(
                    "--universe {u} exceeds the maximum {MAX_ELEMENT}"
                )));
            }
            if u == 0 && !self.allow_zero {
                return Err(usage("--universe 0 leaves no positive elements"));
            }
        }
        if self.max_label_size == Some(0) {
            return Err(usage("--max-label-size must be at least 1"));
        }
        let time_budget = match self.time_budget {
            None => None,
            Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
            Some(t) => return Err(usage(format!("--time-budget must be positive, got {t}"))),
        };
        Ok(SolveOptions {
            mode: self.mode,
            universe: if self.all_subsets {
                UniverseMode::AllSubsets
            } else {
                UniverseMode::Segment
            },
            bound: self.universe,
            allow_zero: self.allow_zero,
            require_non_uniform: !self.allow_uniform,
            max_label_size: self.max_label_size,
            time_budget,
            max_vertices: self.max_vertices,
        })
    }
}

fn emit(text: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()
}

fn families(out: Out) -> Outcome {
    require_out(out, &[Out::Text, Out::Json], "families")?;
    if out == Out::Json {
        let list: Vec<_> = Family::ALL
            .iter()
            .map(|&f| {
                json!({
                    "family": f.name(),
                    "min_n": f.min_n(),
                    "parameter": f.parameter(),
                    "claimed": ClaimedFormula::of(f).formula,
                })
            })
            .collect();
        emit(&serde_json::to_string_pretty(&list).map_err(anyhow::Error::from)?)?;
        return Ok(());
    }
    let mut text = format!(
        "{:<14} {:>5}  {:<18} {}\n",
        "family", "min n", "n counts", "claimed"
    );
    for f in Family::ALL {
        text.push_str(&format!(
            "{:<14} {:>5}  {:<18} {}\n",
            f.name(),
            f.min_n(),
            f.parameter(),
            ClaimedFormula::of(f).formula
        ));
    }
    emit(&text)?;
    Ok(())
}

fn random_graph(n: usize, density: f64, seed: u64) -> Result<Graph, Failure> {
    if !(0.0..=1.0).contains(&density) {
        return Err(usage(format!(
            "--density must lie in [0, 1], got {density}"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).map_err(usage)
}

fn graph_text(g: &Graph) -> String {
    let mut text = format!("{} vertices, {} edges\n", g.vertex_count(), g.edge_count());
    for v in 0..g.vertex_count() {
        let role = g
            .role(v)
            .map_or(String::new(), |r| format!(" ({})", r.as_str()));
        let nbrs: Vec<String> = g.neighbors(v).iter().map(usize::to_string).collect();
        text.push_str(&format!("  {v}{role}: {}\n", nbrs.join(" ")));
    }
    text
}

fn generate_cmd(family: &str, n: usize, out: Out, seed: u64, density: f64) -> Outcome {
    require_out(out, &[Out::Json, Out::Dot, Out::Text], "generate")?;
    let (g, name) = if family.eq_ignore_ascii_case("random") {
        (
            random_graph(n, density, seed)?,
            format!("random_{n}_{seed}"),
        )
    } else {
        let f: Family = family.parse().map_err(usage)?;
        let spec = FamilySpec::new(f, n);
        (generate(spec).map_err(usage)?, format!("{f}_{n}"))
    };
    let text = match out {
        Out::Json => serde_json::to_string_pretty(&g).map_err(anyhow::Error::from)?,
        Out::Dot => g.to_dot(&name),
        _ => graph_text(&g),
    };
    emit(&text)?;
    Ok(())
}

// A labeling file with construction metadata; `verify` ignores the extras.
#[derive(Serialize)]
struct LabelOutput {
    #[serde(flatten)]
    file: LabelingFile,
    ground_set_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    claimed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exception: Option<SizeException>,
}

fn label_cmd(family: Family, n: usize, out: Out, uniform: Option<usize>) -> Outcome {
    require_out(out, &[Out::Json, Out::Dot, Out::Text], "label")?;
    let spec = FamilySpec::new(family, n);
    let (labeling, class, claimed, exception) = match uniform {
        Some(k) => {
            let g = generate(spec).map_err(usage)?;
            let f = construct_k_uniform(&g, k).map_err(usage)?;
            (f, LabelingClass::Uniform(k), None, None)
        }
        None => {
            let c = construct(spec).map_err(usage)?;
            (
                c.labeling,
                LabelingClass::Wiasl,
                Some(c.claimed),
                c.exception,
            )
        }
    };
    let size = labeling.ground_set().len();
    let text = match out {
        Out::Json => {
            let output = LabelOutput {
                file: labeling.to_file(class),
                ground_set_size: size,
                claimed,
                exception,
            };
            serde_json::to_string_pretty(&output).map_err(anyhow::Error::from)?
        }
        Out::Dot => labeling.to_dot(&format!("{family}_{n}")),
        _ => {
            let mut text = format!(
                "{spec}: ground set {} (size {size})\n",
                labeling.ground_set()
            );
            if let Some(claimed) = claimed {
                text.push_str(&format!("claimed: {claimed}\n"));
            }
            if let Some(e) = &exception {
                text.push_str(&format!("exception: {}\n", e.reason));
            }
            for (v, label) in labeling.labels().iter().enumerate() {
                text.push_str(&format!("  v{v}: {label}\n"));
            }
            for ((u, v), label) in labeling.edge_labels() {
                text.push_str(&format!("  ({u}, {v}): {label}\n"));
            }
            text
        }
    };
    emit(&text)?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)
}

fn verify_cmd(file: &Path, mode: Option<LabelingClass>, out: Out) -> Outcome {
    require_out(out, &[Out::Text, Out::Json], "verify")?;
    let text = read(file)?;
    let parsed = LabelingFile::from_json(&text).map_err(usage)?;
    let (labeling, declared) = parsed.into_labeling().map_err(usage)?;
    let report = verify(&labeling, mode.unwrap_or(declared));
    let rendered = match out {
        Out::Json => serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?,
        _ => report.to_string(),
    };
    emit(&rendered)?;
    if report.valid {
        Ok(())
    } else {
        Err(Failure::Code(EXIT_VERIFY))
    }
}

// A graph file, or the graph inside a labeling file.
fn graph_from_file(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    if let Ok(json) = serde_json::from_str::<GraphJson>(&text) {
        return Graph::try_from(json).map_err(usage);
    }
    let file = LabelingFile::from_json(&text).map_err(usage)?;
    Graph::try_from(file.graph).map_err(usage)
}

fn solve_cmd(target: &[String], solver: &SolverArgs, out: Out) -> Outcome {
    require_out(out, &[Out::Text, Out::Json], "solve")?;
    let opts = solver.options()?;
    let g = match target {
        [family, n] => {
            let f: Family = family.parse().map_err(usage)?;
            let n: usize = n.parse().map_err(|_| usage(format!("bad n {n:?}")))?;
            generate(FamilySpec::new(f, n)).map_err(usage)?
        }
        [file] => graph_from_file(Path::new(file))?,
        _ => unreachable!("clap limits the target to one or two values"),
    };
    if g.vertex_count() > opts.max_vertices {
        return Err(usage(format!(
            "graph has {} vertices; raise --max-vertices (now {}) to solve it",
            g.vertex_count(),
            opts.max_vertices
        )));
    }
    let result = min_ground_set(&g, &opts).map_err(usage)?;
    let rendered = match out {
        Out::Json => {
            serde_json::to_string_pretty(&result.to_json()).map_err(anyhow::Error::from)?
        }
        _ => result.to_string(),
    };
    emit(&rendered)?;
    match result.status {
        SolveStatus::OptimalWithinUniverse => Ok(()),
        SolveStatus::InfeasibleWithinUniverse => Err(Failure::Code(EXIT_INFEASIBLE)),
        SolveStatus::Timeout => Err(Failure::Code(EXIT_TIMEOUT)),
    }
}

const TEXT_WIDTHS: [usize; 9] = [12, 3, 7, 12, 9, 6, 8, 14, 26];

fn text_row(fields: &[String]) -> String {
    let cells: Vec<String> = fields
        .iter()
        .zip(TEXT_WIDTHS)
        .enumerate()
        .map(|(i, (f, w))| {
            if i == 0 {
                format!("{f:<w$}")
            } else {
                format!("{f:>w$}")
            }
        })
        .collect();
    cells.join(" ").trim_end().to_string()
}

fn audit_cmd(
    family: Family,
    range: RangeInclusive<usize>,
    solver: &SolverArgs,
    out: Out,
) -> Outcome {
    require_out(out, &[Out::Text, Out::Csv, Out::Json], "audit")?;
    let opts = solver.options()?;
    let min = family.min_n();
    if *range.start() < min {
        return Err(usage(format!(
            "{family} requires n >= {min}, range starts at {}",
            range.start()
        )));
    }
    for n in range.clone() {
        let vertices = family.vertex_count(n);
        if vertices > opts.max_vertices {
            return Err(usage(format!(
                "{family}({n}) has {vertices} vertices; raise --max-vertices (now {}) or shrink --n-range",
                opts.max_vertices
            )));
        }
        if opts.bound.is_none() {
            let claimed = claimed_value(FamilySpec::new(family, n)).map_err(usage)?;
            if 2 * claimed + 2 > MAX_ELEMENT as usize {
                return Err(usage(format!(
                    "{family}({n}) needs --universe (default bound exceeds {MAX_ELEMENT})"
                )));
            }
        }
    }

    let stdout = io::stdout();
    let mut csv_out = (out == Out::Csv).then(|| csv::Writer::from_writer(stdout.lock()));
    match out {
        Out::Csv => {
            let w = csv_out.as_mut().expect("csv writer");
            w.write_record(AUDIT_COLUMNS).map_err(anyhow::Error::from)?;
            w.flush()?;
        }
        Out::Text => {
            let header: Vec<String> = AUDIT_COLUMNS.iter().map(|s| s.to_string()).collect();
            emit(&text_row(&header))?;
        }
        _ => {}
    }
    let mut worst = None;
    for n in range {
        let row = audit(FamilySpec::new(family, n), &opts).map_err(usage)?;
        match out {
            Out::Csv => {
                let w = csv_out.as_mut().expect("csv writer");
                w.write_record(row.fields()).map_err(anyhow::Error::from)?;
                w.flush()?;
            }
            Out::Json => emit(&serde_json::to_string(&row).map_err(anyhow::Error::from)?)?,
            _ => emit(&text_row(&row.fields()))?,
        }
        match row.status {
            SolveStatus::Timeout => worst = Some(EXIT_TIMEOUT),
            SolveStatus::InfeasibleWithinUniverse if worst.is_none() => {
                worst = Some(EXIT_INFEASIBLE)
            }
            _ => {}
        }
    }
    match worst {
        Some(code) => Err(Failure::Code(code)),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Families { out } => families(out),
        Command::Generate {
            family,
            n,
            out,
            seed,
            density,
        } => generate_cmd(&family, n, out, seed, density),
        Command::Label {
            family,
            n,
            out,
            uniform,
        } => label_cmd(family, n, out, uniform),
        Command::Verify { file, mode, out } => verify_cmd(&file, mode, out),
        Command::Solve {
            target,
            solver,
            out,
        } => solve_cmd(&target, &solver, out),
        Command::Audit {
            family,
            n_range,
            solver,
            out,
        } => audit_cmd(family, n_range, &solver, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Code(code)) => ExitCode::from(code),
        Err(Failure::Usage(e))
            if e.downcast_ref::<io::Error>()
                .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
