//! `oscm`: batch front end for one-sided crossing minimization.
//!
//! Exit statuses: 0 success, 1 usage error, 2 input error, 3 size-guard
//! refusal.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oscm_core::io::{
    emit_two_layer_svg, parse_instance, parse_ordering, serialize_instance_with_comments, serialize_ordering,
};
use oscm_core::reduction::{measure_offset, ReductionError};
use oscm_core::search::{find_cyclic_counterexamples, paper_labeling, paper_named_instance, SearchError};
use oscm_core::solvers::{
    barycenter, brute_force_opt, greedy_switch, harrigan_healy, median, solve_exact_with_limit, SolveError,
    DEFAULT_EXACT_LIMIT,
};
use oscm_core::{build_penalty_graph, count_crossings, crossing_matrix, Instance, Method};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "oscm", version, about = "One-sided crossing minimization toolkit")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "OSCM_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order the free layer and print the ordering with its crossing count
    Solve {
        /// Instance file (`-` for stdin)
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Exact)]
        method: SolveMethod,
        /// Largest free layer the exact solver accepts
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
    },
    /// Print the penalty digraph and whether it is acyclic
    Penalty {
        instance: PathBuf,
        /// Also print one directed cycle when there is one
        #[arg(long)]
        witness: bool,
    },
    /// Measure the crossing offset of the apex augmentation on 4-star instances
    Reduce {
        #[arg(long)]
        stars: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search small trees for cyclic penalty digraphs
    Search {
        #[arg(long)]
        max_vertices: usize,
        /// Only report witnesses with the published pairwise crossing values
        #[arg(long)]
        paper_profile: bool,
        /// Write one instance file per witness here instead of to stdout
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Render a two-layer drawing as SVG
    Draw {
        instance: PathBuf,
        ordering: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count the crossings of an ordering
    Check { instance: PathBuf, ordering: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Exact,
    Brute,
    Bary,
    Median,
    Greedy,
    Hh,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Guard(m) => m,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::SizeGuard { .. } => Failure::Guard(format!("size guard: {e}")),
            SolveError::StartLength { .. } => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    parse_instance(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_ordering(path: &Path, inst: &Instance) -> CliResult<oscm_core::Ordering> {
    parse_ordering(&read_text(path)?, inst).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(path: &Path, method: SolveMethod, limit: usize) -> CliResult<String> {
    let inst = load_instance(path)?;
    let result = match method {
        SolveMethod::Exact => solve_exact_with_limit(&inst, limit)?,
        SolveMethod::Brute => brute_force_opt(&inst)?,
        SolveMethod::Bary => barycenter(&inst),
        SolveMethod::Median => median(&inst),
        SolveMethod::Greedy => greedy_switch(&inst, barycenter(&inst).ordering())?,
        SolveMethod::Hh => match harrigan_healy(&inst) {
            Some(r) => r,
            None => {
                let cycle = build_penalty_graph(&crossing_matrix(&inst))
                    .find_cycle()
                    .expect("no topological order means a cycle");
                return Ok(format!(
                    "c method: {}\nc penalty digraph is cyclic; no topological order\nc cycle: {}\n",
                    Method::HarriganHealy,
                    external_ids(&inst, &cycle)
                ));
            }
        },
    };
    let mut out = serialize_ordering(&inst, result.ordering());
    let _ = writeln!(out, "c method: {}", result.method());
    let _ = writeln!(out, "c crossings: {}", result.crossings());
    Ok(out)
}

fn external_ids(inst: &Instance, vs: &[usize]) -> String {
    vs.iter()
        .map(|v| (inst.n_fixed() + v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn penalty(path: &Path, witness: bool) -> CliResult<String> {
    let inst = load_instance(path)?;
    let pg = build_penalty_graph(&crossing_matrix(&inst));
    let mut out = String::from("c arc <from> <to> <weight>\n");
    for a in pg.arcs() {
        let off = inst.n_fixed() + 1;
        let _ = writeln!(out, "arc {} {} {}", a.from + off, a.to + off, a.weight);
    }
    let cycle = pg.find_cycle();
    let _ = writeln!(out, "acyclic: {}", if cycle.is_none() { "yes" } else { "no" });
    if let (true, Some(c)) = (witness, cycle) {
        let _ = writeln!(out, "cycle: {}", external_ids(&inst, &c));
    }
    Ok(out)
}

fn reduce(stars: usize, seed: u64, trials: usize) -> CliResult<String> {
    if stars == 0 {
        return Err(Failure::Usage("--stars must be positive".into()));
    }
    match measure_offset(stars, trials, seed) {
        Ok(report) => Ok(report.to_string()),
        Err(ReductionError::Solve(e)) => Err(e.into()),
        Err(ReductionError::NoTrials) => Err(Failure::Usage("--trials must be positive".into())),
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

fn search(max_vertices: usize, paper_profile: bool, output_dir: Option<&Path>) -> CliResult<String> {
    let outcome = find_cyclic_counterexamples(max_vertices).map_err(|e| match e {
        SearchError::Budget { .. } => Failure::Guard(format!("size guard: {e}")),
        SearchError::WrongFreeSize(_) => Failure::Input(e.to_string()),
    })?;
    let mut out = String::new();
    let _ = writeln!(out, "c search: max-vertices {max_vertices}");
    for s in &outcome.stats {
        let _ = writeln!(
            out,
            "c split {}+{}: {} trees, {} cyclic",
            s.n_fixed, s.n_free, s.trees, s.cyclic
        );
    }
    let selected: Vec<_> = outcome
        .witnesses
        .iter()
        .filter(|w| !paper_profile || matches!(paper_labeling(w), Ok(Some(_))))
        .collect();
    if selected.is_empty() {
        out.push_str("no counterexamples found\n");
        return Ok(out);
    }
    let _ = writeln!(out, "c witnesses: {}", selected.len());
    if let Some(dir) = output_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    for (k, w) in selected.iter().enumerate() {
        let named = paper_named_instance(w);
        let inst = named.as_ref().unwrap_or(&w.instance);
        let mut comments = vec![format!(
            "witness {}: {} vertices, {} fixed + {} free",
            k + 1,
            w.n_total,
            inst.n_fixed(),
            inst.n_free()
        )];
        let shown = oscm_core::search::CounterexampleWitness {
            instance: inst.clone(),
            n_total: w.n_total,
            cycle: build_penalty_graph(&crossing_matrix(inst)).find_cycle().unwrap(),
            cr_profile: w.cr_profile,
        };
        comments.extend(shown.annotation());
        if named.is_some() {
            comments.push(format!(
                "paper profile: match (free ids {} = g h i)",
                external_ids(inst, &[0, 1, 2])
            ));
        }
        let text = serialize_instance_with_comments(inst, &comments);
        match output_dir {
            Some(dir) => {
                let path = dir.join(format!("witness-{:03}.gr", k + 1));
                fs::write(&path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let _ = writeln!(out, "{}", path.display());
            }
            None => {
                out.push_str(&text);
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match cli.command {
        Command::Solve {
            instance,
            method,
            limit,
        } => write_out(None, &solve(&instance, method, limit)?),
        Command::Penalty { instance, witness } => write_out(None, &penalty(&instance, witness)?),
        Command::Reduce {
            stars,
            seed,
            trials,
            output,
        } => write_out(output.as_deref(), &reduce(stars, seed, trials)?),
        Command::Search {
            max_vertices,
            paper_profile,
            output_dir,
        } => write_out(None, &search(max_vertices, paper_profile, output_dir.as_deref())?),
        Command::Draw {
            instance,
            ordering,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let ord = load_ordering(&ordering, &inst)?;
            write_out(output.as_deref(), &emit_two_layer_svg(&inst, &ord))
        }
        Command::Check { instance, ordering } => {
            let inst = load_instance(&instance)?;
            let ord = load_ordering(&ordering, &inst)?;
            let n = count_crossings(&inst, &ord).map_err(|e| Failure::Input(e.to_string()))?;
            write_out(None, &format!("crossings: {n}\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("oscm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
