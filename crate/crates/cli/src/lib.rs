//! Command-line front end: each experiment is a subcommand that prints one
//! JSON (or CSV) document.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ftham::circuit::{bitflip_ec_circuit, parse_circuit, random_circuit, Circuit, EcVariant, ErrorOp};
use ftham::clock::{
    build_feynman_with, build_kitaev, history_state, run_computation, spectral_gap, ClockEncoding,
};
use ftham::fault::{
    apply_penalties, bitflip_penalties, counting_model, overlap_scan, survival_time,
    AnalysisParams, CountingMode, CountingParams, LogicalPair, PenaltyMode,
};
use ftham::lattice::{lattice_vs_circuit_check, run_scenario, LatticeScenario};
use ftham::linalg::{evolve, StateVector};
use ftham::suite::{run_suite, SuiteOptions};
use ftham::transfer::{
    chain_hamiltonian, chain_spectrum, corner_state, eq1_report, hypercube_hamiltonian,
    locate_transfer_time, pst_couplings, solve_couplings_with, transfer_fidelity, HypercubeSpec,
    SolverOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CRITERION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ftham", version, about = "Circuits as Hamiltonian dynamics, and fault-tolerance checks on history states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the document here instead of stdout.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest work-register dimension accepted by the scans (default 65536).
    #[arg(long, global = true)]
    pub cap_dim: Option<usize>,
    /// Pass/fail tolerance for fidelity-style checks (default 1e-8).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// JSON file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Optional JSON config; flags given on the command line win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub cap_dim: Option<usize>,
    pub tolerance: Option<f64>,
}

/// Settled global options.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub cap_dim: usize,
    pub tolerance: f64,
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, CliError> {
        let config = match &args.config {
            Some(path) => {
                let text = read(path)?;
                serde_json::from_str::<RunConfig>(&text)
                    .map_err(|e| CliError::Usage(anyhow!("config {}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        let tolerance = args.tolerance.or(config.tolerance).unwrap_or(1e-8);
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(CliError::Usage(anyhow!("tolerance must lie in (0, 1), got {tolerance}")));
        }
        Ok(Self {
            seed: args.seed.or(config.seed).unwrap_or(0),
            out: args.out.clone().or(config.out),
            format: args.format.or(config.format).unwrap_or(Format::Json),
            cap_dim: args.cap_dim.or(config.cap_dim).unwrap_or(1 << 16),
            tolerance,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Flawed,
    Safe,
}

impl From<Variant> for EcVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Flawed => EcVariant::Flawed,
            Variant::Safe => EcVariant::Safe,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Equal,
    Scaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Integer,
    Unary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    X,
    Y,
    Z,
    Leak,
}

impl From<Op> for ErrorOp {
    fn from(o: Op) -> Self {
        match o {
            Op::X => ErrorOp::X,
            Op::Y => ErrorOp::Y,
            Op::Z => ErrorOp::Z,
            Op::Leak => ErrorOp::Leak,
        }
    }
}

/// A circuit from a file, or a seeded random one.
#[derive(Debug, Clone, Args)]
pub struct CircuitSource {
    /// Circuit in the text format.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Wires of the random circuit used when no file is given.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=8))]
    pub wires: u32,
    /// Gates of the random circuit used when no file is given.
    #[arg(long, default_value_t = 4)]
    pub gates: usize,
}

impl CircuitSource {
    fn load(&self, seed: u64) -> Result<Circuit, CliError> {
        match &self.circuit {
            Some(path) => load_circuit(path),
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(random_circuit(&mut rng, self.wires as usize, self.gates))
            }
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Perfect-transfer chain of N couplings.
    Pst {
        #[arg(short = 'n', long = "n", value_parser = clap::value_parser!(u32).range(1..=2000))]
        n: u32,
        /// Also report the fidelity at this time.
        #[arg(short, long)]
        t: Option<f64>,
    },
    /// Corner-to-corner transfer on a grid of identical perfect-transfer axes.
    Grid {
        #[arg(short = 'n', long = "n", value_parser = clap::value_parser!(u32).range(1..=40))]
        n: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        axes: u32,
    },
    /// Run a circuit through a clock Hamiltonian with perfect-transfer couplings.
    ClockRun {
        #[command(flatten)]
        source: CircuitSource,
        /// Basis index of the input state.
        #[arg(long, default_value_t = 0)]
        input: usize,
        #[arg(long, value_enum, default_value_t = Encoding::Integer)]
        encoding: Encoding,
    },
    /// Check that history states are ground states of the Kitaev operator.
    HistoryVerify {
        #[command(flatten)]
        source: CircuitSource,
    },
    /// Evolve a lattice scenario (JSON), or compile and check a circuit.
    LatticeRun {
        #[arg(long, conflicts_with = "circuit")]
        scenario: Option<PathBuf>,
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        orbit_cap: usize,
    },
    /// Revised overlap at every single-fault location of an EC circuit.
    Overlap {
        /// One error-correction round in the text format (default: built-in).
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Variant::Flawed)]
        variant: Variant,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        rounds: u32,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "x")]
        ops: Vec<Op>,
    },
    /// Spectrum of the Kitaev operator with syndrome-flag penalties.
    PenaltySpectrum {
        #[arg(long, value_enum, default_value_t = Variant::Flawed)]
        variant: Variant,
        #[arg(short = 'j', long = "j", default_value_t = 1.0)]
        j: f64,
        #[arg(long, value_enum, default_value_t = Mode::Equal)]
        mode: Mode,
    },
    /// Energy of the per-level error counters as errors arrive.
    CountingModel {
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = 1000)]
        errors: usize,
        #[arg(short = 'j', long = "j", default_value_t = 1.0)]
        j: f64,
        #[arg(long, default_value_t = 2)]
        tau: u32,
        #[arg(long, value_enum, default_value_t = Mode::Equal)]
        mode: Mode,
    },
    /// exp(ε N D J / T).
    Survival {
        #[arg(short = 'n', long = "n")]
        n: f64,
        #[arg(short = 'd', long = "d")]
        d: f64,
        #[arg(short = 'j', long = "j", default_value_t = 1.0)]
        j: f64,
        #[arg(long, default_value_t = 1.0)]
        temperature: f64,
        #[arg(long, default_value_t = AnalysisParams::DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Fit two axis schemes whose grid reduces to a target chain.
    CouplingsSolve {
        #[arg(short = 'n', long = "n", value_parser = clap::value_parser!(u32).range(1..=12))]
        n: u32,
        /// Target: `uniform` (all ones) or `pst` (the perfect-transfer chain).
        #[arg(long, default_value = "uniform")]
        target: String,
        #[arg(long, default_value_t = 4)]
        starts: usize,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Comma-separated criterion ids, names or groups.
        #[arg(long)]
        filter: Option<String>,
        /// Replacement for the built-in flawed EC round.
        #[arg(long)]
        flawed_circuit: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Failed(String),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Usage(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(CliError::Usage)
}

fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    let text = read(path)?;
    parse_circuit(&text)
        .with_context(|| format!("{}", path.display()))
        .map_err(CliError::Usage)
}

/// What a subcommand produced.
pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    /// Extra files to write next to `--out`.
    pub side: Vec<(PathBuf, String)>,
    pub failure: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Self {
            json,
            csv: None,
            side: Vec::new(),
            failure: None,
        }
    }

    fn fail_if(mut self, bad: bool, why: impl FnOnce() -> String) -> Self {
        if bad {
            self.failure = Some(why());
        }
        self
    }
}

fn lib<E: std::error::Error + Send + Sync + 'static>(e: E) -> CliError {
    CliError::Usage(e.into())
}

pub fn execute(cmd: &Command, s: &Settings, log: &mut dyn Write) -> Result<Output, CliError> {
    let tol = s.tolerance;
    Ok(match cmd {
        Command::Pst { n, t } => {
            let sch = pst_couplings(*n as usize).map_err(lib)?;
            let peak = locate_transfer_time(&sch);
            let v = evolve(&chain_hamiltonian(&sch), &StateVector::basis(*n as usize + 1, 0), peak.t0)
                .map_err(lib)?;
            let fid = v[*n as usize].norm_sqr();
            let mut doc = json!({
                "N": n, "t0": peak.t0, "peak_fidelity": fid, "spectrum": chain_spectrum(&sch),
            });
            if let Some(t) = t {
                doc["fidelity_at_t"] = json!(transfer_fidelity(&sch, *t).powi(2));
            }
            Output::json(doc).fail_if(fid < 1.0 - tol, || format!("peak fidelity {fid}"))
        }
        Command::Grid { n, axes } => {
            let sch = pst_couplings(*n as usize).map_err(lib)?;
            let t0 = locate_transfer_time(&sch).t0;
            let spec = HypercubeSpec::new(vec![sch; *axes as usize]).map_err(lib)?;
            let h = hypercube_hamiltonian(&spec, s.cap_dim).map_err(lib)?;
            let v = evolve(&h, &corner_state(&spec, false), t0).map_err(lib)?;
            let fid = v.inner(&corner_state(&spec, true)).map_err(lib)?.norm_sqr();
            Output::json(json!({"N": n, "axes": axes, "dim": h.dim(), "t0": t0, "fidelity": fid}))
                .fail_if(fid < 1.0 - tol, || format!("corner fidelity {fid}"))
        }
        Command::ClockRun { source, input, encoding } => {
            let c = source.load(s.seed)?;
            if *input >= c.work_dim() {
                return Err(CliError::Usage(anyhow!(
                    "input {input} outside a register of dimension {}",
                    c.work_dim()
                )));
            }
            let enc = match encoding {
                Encoding::Integer => ClockEncoding::IntegerRegister,
                Encoding::Unary => ClockEncoding::PhysicalUnary,
            };
            let h = build_feynman_with(&c, &pst_couplings(c.steps() - 1).map_err(lib)?, enc)
                .map_err(lib)?;
            let rep = run_computation(&h, &StateVector::basis(c.work_dim(), *input)).map_err(lib)?;
            let bad = rep.fidelity < 1.0 - tol || rep.clock_arrival_probability < 1.0 - tol;
            Output::json(serde_json::to_value(&rep).map_err(lib)?)
                .fail_if(bad, || format!("fidelity {}, arrival {}", rep.fidelity, rep.clock_arrival_probability))
        }
        Command::HistoryVerify { source } => {
            let c = source.load(s.seed)?;
            let w = c.work_dim();
            if c.steps() * w > s.cap_dim {
                return Err(CliError::Usage(anyhow!("D·W = {} exceeds --cap-dim", c.steps() * w)));
            }
            let hk = build_kitaev(&c).map_err(lib)?;
            let mut residual: f64 = 0.0;
            for k in 0..w {
                let hs = history_state(&c, &StateVector::basis(w, k)).map_err(lib)?;
                residual = residual.max(hk.apply(&hs.state).map_err(lib)?.norm());
            }
            let gap = spectral_gap(&hk, w).ok();
            Output::json(json!({
                "D": c.steps(), "W": w, "max_residual": residual,
                "ground_dim": gap.map(|_| w), "gap": gap,
            }))
            .fail_if(residual > 1e-10 || gap.is_none(), || "history states are not an isolated ground space".into())
        }
        Command::LatticeRun { scenario, circuit, orbit_cap } => match (scenario, circuit) {
            (Some(path), None) => {
                let sc: LatticeScenario = serde_json::from_str(&read(path)?)
                    .with_context(|| format!("{}", path.display()))?;
                Output::json(serde_json::to_value(run_scenario(&sc).map_err(lib)?).map_err(lib)?)
            }
            (None, Some(path)) => {
                let c = load_circuit(path)?;
                let r = lattice_vs_circuit_check(&c, None, *orbit_cap).map_err(lib)?;
                let bad = r.fidelity < 1.0 - tol;
                Output::json(serde_json::to_value(&r).map_err(lib)?)
                    .fail_if(bad, || format!("lattice fidelity {}", r.fidelity))
            }
            _ => return Err(CliError::Usage(anyhow!("give exactly one of --scenario or --circuit"))),
        },
        Command::Overlap { circuit, variant, rounds, ops } => {
            let round = match circuit {
                Some(p) => load_circuit(p)?,
                None => bitflip_ec_circuit((*variant).into()),
            };
            let c = if *rounds > 1 { round.repeat(*rounds as usize).map_err(lib)? } else { round };
            let pair = LogicalPair::codewords(c).map_err(lib)?;
            let ops: Vec<ErrorOp> = ops.iter().map(|&o| o.into()).collect();
            let label = match (circuit, variant) {
                (Some(_), _) => "custom",
                (None, Variant::Flawed) => "flawed",
                (None, Variant::Safe) => "safe",
            };
            let r = overlap_scan(&pair, &ops, s.cap_dim, Some(label)).map_err(lib)?;
            let summary = serde_json::to_value(r.summary()).map_err(lib)?;
            let mut out = Output::json(summary.clone());
            out.csv = Some(r.to_csv());
            if let Some(path) = &s.out {
                let side = path.with_extension("json");
                if side != *path {
                    out.side.push((side, pretty(&summary)));
                }
            }
            out
        }
        Command::PenaltySpectrum { variant, j, mode } => {
            let c = bitflip_ec_circuit((*variant).into());
            let pair = LogicalPair::codewords(c.clone()).map_err(lib)?;
            let hk = build_kitaev(&c).map_err(lib)?;
            let mode = match mode {
                Mode::Equal => PenaltyMode::Equal,
                Mode::Scaled => PenaltyMode::Scaled,
            };
            let (_, r) = apply_penalties(&hk, &pair, &bitflip_penalties(&c, *j, mode)).map_err(lib)?;
            let bad = r.ground_dim != 2 || r.min_rise <= 0.0;
            Output::json(serde_json::to_value(&r).map_err(lib)?)
                .fail_if(bad, || format!("ground dimension {}", r.ground_dim))
        }
        Command::CountingModel { levels, errors, j, tau, mode } => {
            let p = CountingParams {
                levels: *levels,
                tau: *tau,
                j: *j,
                mode: match mode {
                    Mode::Equal => CountingMode::Equal,
                    Mode::Scaled => CountingMode::Scaled,
                },
            };
            let t = counting_model(&p, *errors).map_err(lib)?;
            let mut csv = String::from("errors,energy\n");
            for (e, v) in t.energies.iter().enumerate() {
                csv.push_str(&format!("{e},{v}\n"));
            }
            let mut out = Output::json(json!({
                "levels": levels, "tau": tau, "J": j, "errors": errors,
                "max_energy": t.max_energy(), "argmax": t.argmax(),
                "final_energy": t.energies.last(), "failures": t.failures, "counters": t.counters,
            }));
            out.csv = Some(csv);
            out
        }
        Command::Survival { n, d, j, temperature, epsilon } => {
            let p = AnalysisParams {
                epsilon_c: *epsilon,
                n: *n,
                d: *d,
                j: *j,
                temperature: *temperature,
            };
            let v = survival_time(&p).map_err(lib)?;
            Output::json(json!({"params": p, "exponent": p.epsilon_c * p.n * p.d * p.j / p.temperature, "survival_time": v}))
        }
        Command::CouplingsSolve { n, target, starts } => {
            let n = *n as usize;
            let goal: Vec<f64> = match target.as_str() {
                "uniform" => vec![1.0; 2 * n],
                "pst" => pst_couplings(2 * n).map_err(lib)?.into_inner(),
                other => return Err(CliError::Usage(anyhow!("unknown target `{other}`"))),
            };
            let opts = SolverOptions {
                seed: s.seed,
                starts: *starts,
                ..SolverOptions::default()
            };
            let rep = solve_couplings_with(&goal, 2, n, &opts).map_err(lib)?;
            let eq1 = eq1_report(n).map_err(lib)?;
            Output::json(json!({"solver": rep, "eq1": eq1}))
        }
        Command::Suite { filter, flawed_circuit } => {
            let opts = SuiteOptions {
                seed: s.seed,
                filter: filter.clone(),
                flawed_circuit: flawed_circuit.as_deref().map(load_circuit).transpose()?,
                cap_dim: Some(s.cap_dim),
            };
            let report = run_suite(&opts);
            for r in &report.results {
                let _ = writeln!(log, "{}", r.line());
            }
            let failed: Vec<u8> = report.results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            let empty = report.results.is_empty();
            Output::json(serde_json::to_value(&report).map_err(lib)?).fail_if(!failed.is_empty() || empty, || {
                if empty {
                    "no criterion matched the filter".into()
                } else {
                    format!("failed criteria {failed:?}")
                }
            })
        }
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serialises");
    s.push('\n');
    s
}

fn emit(out: &Output, s: &Settings, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let body = match (s.format, &out.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => anyhow::bail!("this command has no CSV output"),
        (Format::Json, _) => pretty(&out.json),
    };
    match &s.out {
        Some(path) => {
            // `--out` on the overlap scan always stores the per-location table.
            let body = out.csv.as_ref().filter(|_| !out.side.is_empty()).unwrap_or(&body);
            std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?;
            for (side, text) in &out.side {
                std::fs::write(side, text).with_context(|| format!("cannot write {}", side.display()))?;
            }
            write!(stdout, "{}", pretty(&out.json))?;
        }
        None => write!(stdout, "{body}")?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    let settings = match Settings::resolve(&cli.global) {
        Ok(s) => s,
        Err(e) => return report(e, stderr),
    };
    let output = match execute(&cli.command, &settings, stderr) {
        Ok(o) => o,
        Err(e) => return report(e, stderr),
    };
    if let Err(e) = emit(&output, &settings, stdout) {
        return report(CliError::Usage(e), stderr);
    }
    match output.failure {
        Some(why) => report(CliError::Failed(why), stderr),
        None => EXIT_OK,
    }
}

fn report(e: CliError, stderr: &mut dyn Write) -> i32 {
    match e {
        CliError::Usage(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
        CliError::Failed(why) => {
            let _ = writeln!(stderr, "criterion failed: {why}");
            EXIT_CRITERION
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["ftham"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pst_reports_the_quarter_period_for_one_coupling() {
        let (code, out, _) = call(&["pst", "-n", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["t0"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        assert!(v["peak_fidelity"].as_f64().unwrap() > 1.0 - 1e-8);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(call(&["pst", "-n", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["pst"]).0, EXIT_USAGE);
        assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
        assert_eq!(call(&["survival", "-n", "3", "-d", "10", "-j", "-1"]).0, EXIT_USAGE);
    }

    #[test]
    fn survival_matches_the_closed_form() {
        let (code, out, _) = call(&["survival", "-n", "3", "-d", "10"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["survival_time"].as_f64().unwrap(), 0.3f64.exp());
    }
}
