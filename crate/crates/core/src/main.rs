use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nucoh::cli::{self, ConfigBuilder, Quantity, RunConfig, Table, FLAG_LINE};
use nucoh::Error;

/// Three-flavor neutrino oscillation and coherence scans.
///
/// Units: lengths in meters, energies and potentials in eV, mass splittings
/// in eV², angles in degrees. Config files hold `key = value` lines; flags
/// given here override the file.
#[derive(Parser)]
#[command(name = "nucoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability row of the initial flavor along the scan axis.
    ProbScan(Common),
    /// l1-norm of coherence along the scan axis.
    L1Scan(Common),
    /// Resonance and infinite-coherence potentials.
    SpecialPotentials(Common),
    /// Oscillation and coherence lengths per mass pair versus potential.
    Lengths(Common),
}

#[derive(Args)]
struct Common {
    /// Config file of `key = value` lines.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Extra `key=value` setting; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Scan axis: baseline (m), potential (eV) or energy (eV).
    #[arg(long)]
    scan: Option<String>,
    /// Lower end of the scan axis.
    #[arg(long, allow_hyphen_values = true)]
    min: Option<String>,
    /// Upper end of the scan axis.
    #[arg(long, allow_hyphen_values = true)]
    max: Option<String>,
    /// Number of grid points (>= 2).
    #[arg(long)]
    points: Option<String>,
    /// Grid spacing: linear or log.
    #[arg(long)]
    spacing: Option<String>,
    /// Neutrino energy in eV.
    #[arg(long = "energy")]
    energy: Option<String>,
    /// Fixed baseline in m.
    #[arg(long)]
    baseline: Option<String>,
    /// Matter potential in eV; repeatable, one curve each.
    #[arg(long)]
    potential: Vec<String>,
    /// Initial flavor: e, mu or tau.
    #[arg(long)]
    flavor: Option<String>,
    /// neutrino or antineutrino.
    #[arg(long)]
    kind: Option<String>,
    /// pw (plane wave) or wp (wave packet).
    #[arg(long)]
    mode: Option<String>,
    /// Wave-packet width in m.
    #[arg(long)]
    sigma_x: Option<String>,
    /// CSV output path; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, Error> {
        let mut b = ConfigBuilder::new();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            b.apply_text(&text)?;
        }
        let flags = [
            ("scan", &self.scan),
            ("min", &self.min),
            ("max", &self.max),
            ("points", &self.points),
            ("spacing", &self.spacing),
            ("energy_eV", &self.energy),
            ("baseline_m", &self.baseline),
            ("flavor", &self.flavor),
            ("kind", &self.kind),
            ("mode", &self.mode),
            ("sigma_x_m", &self.sigma_x),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                b.set(key, v, FLAG_LINE)?;
            }
        }
        for v in &self.potential {
            b.set("potential_eV", v, FLAG_LINE)?;
        }
        for kv in &self.set {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Config {
                line: FLAG_LINE,
                message: format!("--set expects KEY=VALUE, got '{kv}'"),
            })?;
            b.set(k.trim(), v.trim(), FLAG_LINE)?;
        }
        if let Some(out) = &self.output {
            b.set("output", &out.to_string_lossy(), FLAG_LINE)?;
        }
        b.finish()
    }
}

fn emit(table: &Table, cfg: &RunConfig) -> Result<(), Error> {
    match &cfg.sweep.output {
        Some(path) => cli::write_csv(table, path),
        None => std::io::stdout()
            .lock()
            .write_all(table.to_csv().as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

type Job = fn(&RunConfig) -> Result<Table, Error>;

fn run(command: Command) -> Result<(), Error> {
    let (common, job): (Common, Job) = match command {
        Command::ProbScan(c) => (c, |cfg| cli::run_sweep(cfg, Quantity::Probability)),
        Command::L1Scan(c) => (c, |cfg| cli::run_sweep(cfg, Quantity::L1)),
        Command::SpecialPotentials(c) => (c, cli::report_special_potentials),
        Command::Lengths(c) => (c, cli::lengths_table),
    };
    let cfg = common.load()?;
    let table = job(&cfg)?;
    emit(&table, &cfg)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nucoh: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
