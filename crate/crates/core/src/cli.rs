//! Command-line interface: `validate`, `gen-instance`, `solve`, `compare`.
//!
//! Exit codes: 0 success, 1 domain validation failure, 2 I/O or parse
//! failure, 3 tractability guard.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::instances;
use crate::model::{self, NetworkInstance, ObjectiveVector, Solution};
use crate::moga::{self, GaConfig, GenerationStats};
use crate::pareto::{self, ParetoFront, Point, Provenance};
use crate::scalarize::{self, DEFAULT_GRID};

pub const DEFAULT_SEED: u64 = 42;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_TRACTABILITY: i32 = 3;

pub const FRONT_HEADER: &str = "solution_id,method,total_cost,total_co2,expected_dispatch";
pub const SWEEP_HEADER: &str = "w_cost,w_co2,w_dispatch,total_cost,total_co2,expected_dispatch";

/// Relative per-objective tolerance of the tolerant coverage in `compare`.
pub const COMPARE_TOLERANCE: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(name = "clsc", version, about = "Closed-loop supply chain network design solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an instance file against every model invariant.
    Validate {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Write a bundled instance template as JSON.
    GenInstance {
        #[arg(long, value_enum)]
        template: Template,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance and write front.csv, solutions.json and run statistics.
    Solve(SolveArgs),
    /// Run both methods and compare their fronts.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Template {
    Tabletop,
    OracleTiny,
}

impl Template {
    fn build(self, seed: u64) -> NetworkInstance {
        match self {
            Self::Tabletop => instances::tabletop(seed),
            Self::OracleTiny => instances::oracle_tiny(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Nsga2,
    Wsum,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Self::Nsga2 => "nsga2",
            Self::Wsum => "wsum",
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct GaArgs {
    /// Population size.
    #[arg(long)]
    pub pop: Option<usize>,
    /// Maximum number of generations.
    #[arg(long)]
    pub gens: Option<usize>,
    /// Crossover probability per gene.
    #[arg(long)]
    pub pc: Option<f64>,
    /// Mutation probability per gene (default 1 / genotype length).
    #[arg(long)]
    pub pm: Option<f64>,
    /// SBX distribution index.
    #[arg(long = "eta-c")]
    pub eta_c: Option<f64>,
    /// Polynomial mutation distribution index.
    #[arg(long = "eta-m")]
    pub eta_m: Option<f64>,
    /// Generations without hypervolume progress before stopping (0 disables).
    #[arg(long)]
    pub stall: Option<usize>,
    /// Evaluate individuals on a single thread.
    #[arg(long)]
    pub sequential: bool,
}

impl GaArgs {
    pub fn config(&self, seed: u64) -> GaConfig {
        let d = GaConfig::default();
        GaConfig {
            population_size: self.pop.unwrap_or(d.population_size),
            max_generations: self.gens.unwrap_or(d.max_generations),
            crossover_rate: self.pc.unwrap_or(d.crossover_rate),
            mutation_rate: self.pm.or(d.mutation_rate),
            sbx_eta: self.eta_c.unwrap_or(d.sbx_eta),
            mutation_eta: self.eta_m.unwrap_or(d.mutation_eta),
            stall_generations: self.stall.unwrap_or(d.stall_generations),
            seed,
            parallel: !self.sequential,
            ..d
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    #[command(flatten)]
    pub ga: GaArgs,
    /// Weight-grid resolution for the weighted-sum sweep.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[command(flatten)]
    pub ga: GaArgs,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn io(message: String) -> Self {
        Self { code: EXIT_IO, message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Intractable { .. } => EXIT_TRACTABILITY,
            _ => EXIT_VALIDATION,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// One entry of `solutions.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub solution_id: usize,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generation: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<[f64; 3]>,
    pub objectives: ObjectiveVector,
    pub solution: Solution,
}

/// Summary written by `compare` to `compare.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub ga_front_size: usize,
    pub ws_front_size: usize,
    pub reference: Point,
    pub hypervolume_ga: f64,
    pub hypervolume_ws: f64,
    pub hypervolume_union: f64,
    pub coverage_ga_ws: f64,
    pub coverage_ws_ga: f64,
    pub tolerance: f64,
    pub tolerant_coverage_ga_ws: f64,
    pub tolerant_coverage_ws_ga: f64,
    pub utopia: ObjectiveVector,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

pub fn run(command: &Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Validate { instance } => cmd_validate(instance, out),
        Command::GenInstance { template, seed, out: path } => cmd_gen_instance(*template, *seed, path, out),
        Command::Solve(args) => cmd_solve(args, out),
        Command::Compare(args) => cmd_compare(args, out),
    }
}

/// Reads and parses an instance file without validating it.
pub fn read_instance(path: &Path) -> CliResult<NetworkInstance> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    NetworkInstance::from_json(&text)
        .map_err(|e| CliError::io(format!("cannot parse {}: {e}", path.display())))
}

fn load_valid(path: &Path) -> CliResult<NetworkInstance> {
    let inst = read_instance(path)?;
    model::validate_instance(&inst).map_err(Error::InvalidInstance)?;
    Ok(inst)
}

fn emit(out: &mut dyn Write, line: impl fmt::Display) -> CliResult {
    writeln!(out, "{line}").map_err(|e| CliError::io(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> CliResult {
    let inst = read_instance(path)?;
    match model::validate_instance(&inst) {
        Ok(()) => emit(
            out,
            format!(
                "valid: {} plants, {} warehouses, {} customers, {} collection centers, {} disposal sites, {} scenarios",
                inst.n_plants(),
                inst.n_warehouses(),
                inst.n_customers(),
                inst.n_collection(),
                inst.n_disposal(),
                inst.n_scenarios()
            ),
        ),
        Err(issues) => {
            let mut message = format!("{} violation(s) in {}", issues.len(), path.display());
            for i in &issues {
                message.push_str(&format!("\n  {i}"));
            }
            Err(CliError { code: EXIT_VALIDATION, message })
        }
    }
}

pub fn cmd_gen_instance(template: Template, seed: u64, path: &Path, out: &mut dyn Write) -> CliResult {
    let inst = template.build(seed);
    write_file(path, &(inst.to_json_pretty() + "\n"))?;
    emit(out, format!("wrote {}", path.display()))
}

fn front_csv(front: &ParetoFront) -> String {
    let mut s = String::from(FRONT_HEADER);
    s.push('\n');
    for (id, p) in front.iter().enumerate() {
        let o = p.objectives;
        s.push_str(&format!(
            "{id},{},{:.6},{:.6},{:.6}\n",
            methods(&p.provenance),
            o.total_cost,
            o.total_co2,
            o.expected_dispatch
        ));
    }
    s
}

/// Distinct methods of a provenance list joined by `+`.
fn methods(provenance: &[Provenance]) -> String {
    let mut m: Vec<&str> = provenance.iter().map(Provenance::method).collect();
    m.dedup();
    m.join("+")
}

pub fn solution_records(front: &ParetoFront) -> Vec<SolutionRecord> {
    front
        .iter()
        .enumerate()
        .map(|(id, p)| SolutionRecord {
            solution_id: id,
            method: methods(&p.provenance),
            generation: p.provenance.iter().find_map(|pr| match pr {
                Provenance::Ga { generation } => Some(*generation),
                _ => None,
            }),
            weights: p
                .provenance
                .iter()
                .filter_map(|pr| match pr {
                    Provenance::WeightedSum { weights } => Some(*weights),
                    _ => None,
                })
                .collect(),
            objectives: p.objectives,
            solution: p.solution.clone(),
        })
        .collect()
}

fn stats_csv(stats: &[GenerationStats]) -> String {
    let mut s = String::from(GenerationStats::CSV_HEADER);
    s.push('\n');
    for st in stats {
        s.push_str(&st.csv_row());
        s.push('\n');
    }
    s
}

fn sweep_csv(front: &ParetoFront) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for p in front.iter() {
        for pr in &p.provenance {
            if let Provenance::WeightedSum { weights: w } = pr {
                let o = p.objectives;
                s.push_str(&format!(
                    "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                    w[0], w[1], w[2], o.total_cost, o.total_co2, o.expected_dispatch
                ));
            }
        }
    }
    s
}

/// Re-checks every emitted solution against the feasibility rules.
fn audit(inst: &NetworkInstance, front: &ParetoFront) -> CliResult {
    for (id, p) in front.iter().enumerate() {
        let report = model::check_feasibility(inst, &p.solution);
        if !report.feasible() {
            return Err(CliError {
                code: EXIT_VALIDATION,
                message: format!("solution {id} failed the feasibility audit: {}", Error::Infeasible(report)),
            });
        }
    }
    Ok(())
}

fn write_front(dir: &Path, inst: &NetworkInstance, front: &ParetoFront) -> CliResult {
    audit(inst, front)?;
    write_file(&dir.join("front.csv"), &front_csv(front))?;
    let json = serde_json::to_string_pretty(&solution_records(front)).expect("records serialize");
    write_file(&dir.join("solutions.json"), &(json + "\n"))
}

fn create_dir(dir: &Path) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> CliResult {
    let inst = load_valid(&args.instance)?;
    create_dir(&args.out)?;
    let (front, hv) = match args.method {
        Method::Nsga2 => {
            let run = moga::run_nsga2(&inst, &args.ga.config(args.seed))?;
            write_file(&args.out.join("stats.csv"), &stats_csv(&run.stats))?;
            let hv = run.stats.last().map_or(0.0, |s| s.hypervolume);
            emit(out, format!("generations: {}", run.stats.len() - 1))?;
            (run.front, hv)
        }
        Method::Wsum => {
            let sweep = scalarize::sweep(&inst, args.grid)?;
            write_file(&args.out.join("sweep.csv"), &sweep_csv(&sweep.front))?;
            let pts = sweep.front.canonical_points();
            let hv = pareto::hypervolume(&pts, &pareto::reference_point(&pts))?;
            (sweep.front, hv)
        }
    };
    write_front(&args.out, &inst, &front)?;
    emit(out, format!("method: {}", args.method.as_str()))?;
    emit(out, format!("front size: {}", front.len()))?;
    emit(out, format!("hypervolume: {hv:.6}"))
}

fn tagged_csv(ga: &ParetoFront, ws: &ParetoFront) -> String {
    let mut s = String::from(FRONT_HEADER);
    s.push('\n');
    let rows = ga.iter().map(|p| ("nsga2", p)).chain(ws.iter().map(|p| ("wsum", p)));
    for (id, (method, p)) in rows.enumerate() {
        let o = p.objectives;
        s.push_str(&format!(
            "{id},{method},{:.6},{:.6},{:.6}\n",
            o.total_cost, o.total_co2, o.expected_dispatch
        ));
    }
    s
}

/// Indicators of two fronts under a reference shared with their union.
pub fn compare_fronts(ga: &ParetoFront, ws: &ParetoFront, utopia: ObjectiveVector) -> crate::Result<CompareReport> {
    let (a, b) = (ga.canonical_points(), ws.canonical_points());
    let mut union = a.clone();
    union.extend(&b);
    let union = pareto::nondominated_indices(&union).into_iter().map(|i| union[i]).collect::<Vec<_>>();
    let reference = pareto::reference_point(&union);
    Ok(CompareReport {
        ga_front_size: a.len(),
        ws_front_size: b.len(),
        reference,
        hypervolume_ga: pareto::hypervolume(&a, &reference)?,
        hypervolume_ws: pareto::hypervolume(&b, &reference)?,
        hypervolume_union: pareto::hypervolume(&union, &reference)?,
        coverage_ga_ws: pareto::coverage(&a, &b)?,
        coverage_ws_ga: pareto::coverage(&b, &a)?,
        tolerance: COMPARE_TOLERANCE,
        tolerant_coverage_ga_ws: pareto::coverage_within(&a, &b, COMPARE_TOLERANCE)?,
        tolerant_coverage_ws_ga: pareto::coverage_within(&b, &a, COMPARE_TOLERANCE)?,
        utopia,
    })
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> CliResult {
    let inst = load_valid(&args.instance)?;
    create_dir(&args.out)?;
    let run = moga::run_nsga2(&inst, &args.ga.config(args.seed))?;
    let sweep = scalarize::sweep(&inst, args.grid)?;
    audit(&inst, &run.front)?;
    audit(&inst, &sweep.front)?;
    let report = compare_fronts(&run.front, &sweep.front, sweep.bounds.utopia_objectives())?;
    write_file(&args.out.join("compare.csv"), &tagged_csv(&run.front, &sweep.front))?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_file(&args.out.join("compare.json"), &(json + "\n"))?;

    emit(out, format!("front size: nsga2 {}, wsum {}", report.ga_front_size, report.ws_front_size))?;
    emit(
        out,
        format!(
            "hypervolume: nsga2 {:.6}, wsum {:.6}, union {:.6}",
            report.hypervolume_ga, report.hypervolume_ws, report.hypervolume_union
        ),
    )?;
    emit(out, format!("C(nsga2, wsum) = {:.6}, C(wsum, nsga2) = {:.6}", report.coverage_ga_ws, report.coverage_ws_ga))?;
    emit(
        out,
        format!(
            "within {}%: C(nsga2, wsum) = {:.6}, C(wsum, nsga2) = {:.6}",
            COMPARE_TOLERANCE * 100.0,
            report.tolerant_coverage_ga_ws,
            report.tolerant_coverage_ws_ga
        ),
    )?;
    let u = report.utopia;
    emit(
        out,
        format!(
            "utopia: total_cost {:.6}, total_co2 {:.6}, expected_dispatch {:.6}",
            u.total_cost, u.total_co2, u.expected_dispatch
        ),
    )
}
