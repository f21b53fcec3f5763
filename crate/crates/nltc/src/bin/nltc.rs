//! Command-line driver: every experiment as a reproducible CSV run.
//!
//! A `--config FILE` option loads `key = value` lines as defaults; explicit
//! flags override them. `NLTC_OUT_DIR` sets the directory for relative
//! `--out` paths.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nltc::error::Result;
use nltc::model::ModelKind;
use nltc::runs::{self, parse_atoms, RunConfig, RunOutput};

#[derive(Parser)]
#[command(name = "nltc", version, about = "nonlinear two-atom Tavis-Cummings simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CommonFlags {
    /// coupling model: tc, bs or ion
    #[arg(long, default_value = "bs")]
    model: String,
    /// coupling strength Ω (sets the time unit)
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Lamb-Dicke parameter (ion model)
    #[arg(long)]
    eta: Option<f64>,
    /// mean quantum number N of the initial coherent state
    #[arg(long)]
    nbar: Option<f64>,
    /// phase of the initial coherent state
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// initial atoms: gg, ee, psi+, psi-, phi+, phi- or 8 comma-separated reals
    #[arg(long, default_value = "ee")]
    atoms: String,
    /// time grid upper end (absolute units, Ω = 1)
    #[arg(long)]
    tmax: Option<f64>,
    /// evaluation time as a fraction of the revival time (husimi)
    #[arg(long)]
    tfrac: Option<f64>,
    /// number of grid steps
    #[arg(long, default_value_t = 400)]
    steps: usize,
    /// Fock truncation override
    #[arg(long)]
    trunc: Option<usize>,
    /// ensemble size
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// master seed for the Haar ensembles
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// draw initial atoms from the product-state Haar measure instead of the
    /// full two-qubit one
    #[arg(long, default_value_t = false)]
    product_haar: bool,
    /// worker threads for the sample loops (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// output CSV path (default stdout; relative paths land in NLTC_OUT_DIR)
    #[arg(long)]
    out: Option<PathBuf>,
    /// key = value file with flag defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// W-state scan range, lower end
    #[arg(long, default_value_t = 500)]
    nmin: u64,
    /// W-state scan range, upper end
    #[arg(long, default_value_t = 3000)]
    nmax: u64,
}

fn apply_config_file(flags: &mut CommonFlags) -> Result<()> {
    let Some(path) = &flags.config else { return Ok(()) };
    let text = fs::read_to_string(path)?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(nltc::error::NltcError::Config(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| {
            nltc::error::NltcError::Config(format!("{}:{}: {e}", path.display(), lineno + 1))
        };
        match key {
            "model" => flags.model = value.to_string(),
            "omega" => flags.omega = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "eta" => flags.eta = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            "nbar" => flags.nbar = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            "phi" => flags.phi = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "atoms" => flags.atoms = value.to_string(),
            "tmax" => flags.tmax = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            "tfrac" => flags.tfrac = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            "steps" => flags.steps = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "trunc" => flags.trunc = Some(value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
            "samples" => flags.samples = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "seed" => flags.seed = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "nmin" => flags.nmin = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "nmax" => flags.nmax = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            other => return Err(bad(format!("unknown key '{other}'"))),
        }
    }
    Ok(())
}

fn to_run_config(flags: &CommonFlags) -> Result<RunConfig> {
    let model = match flags.model.as_str() {
        "tc" => ModelKind::TavisCummings,
        "bs" => ModelKind::BuckSukumar,
        "ion" => ModelKind::IonTrap,
        other => {
            return Err(nltc::error::NltcError::Config(format!(
                "unknown model '{other}' (expected tc, bs or ion)"
            )))
        }
    };
    Ok(RunConfig {
        model,
        omega: flags.omega,
        eta: flags.eta,
        n_mean: flags.nbar,
        phi: flags.phi,
        atoms: parse_atoms(&flags.atoms)?,
        atoms_label: flags.atoms.clone(),
        t_max: flags.tmax,
        t_frac: flags.tfrac,
        steps: flags.steps,
        trunc: flags.trunc,
        samples: flags.samples,
        seed: flags.seed,
        product_haar: flags.product_haar,
        n_scan: (flags.nmin, flags.nmax),
    })
}

fn write_output(flags: &CommonFlags, out: &RunOutput) -> Result<()> {
    match &flags.out {
        None => out.write_csv(std::io::stdout().lock())?,
        Some(path) => {
            let path = if path.is_relative() {
                match std::env::var_os("NLTC_OUT_DIR") {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            let mut f = fs::File::create(&path)?;
            out.write_csv(&mut f)?;
            f.flush()?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let (flags, runner): (&CommonFlags, fn(&RunConfig) -> Result<RunOutput>) = match &cli.command {
        Command::Spectrum(f) => (f, runs::run_spectrum),
        Command::Rabi(f) => (f, runs::run_rabi),
        Command::Fidelity(f) => (f, runs::run_fidelity),
        Command::Husimi(f) => (f, runs::run_husimi),
        Command::Entanglement(f) => (f, runs::run_entanglement),
        Command::Ghz(f) => (f, runs::run_ghz),
        Command::Wstate(f) => (f, runs::run_wstate),
        Command::Bellmeasure(f) => (f, runs::run_bellmeasure),
    };
    let mut flags = flags.clone();
    apply_config_file(&mut flags)?;
    if let Some(n) = flags.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let cfg = to_run_config(&flags)?;
    let out = runner(&cfg)?;
    write_output(&flags, &out)?;
    for f in &out.failures {
        eprintln!("error: check failed: {f}");
    }
    Ok(out.ok())
}

#[derive(Subcommand)]
enum Command {
    /// eigenfrequencies ω_n, photon distribution and the time-scale header
    Spectrum(CommonFlags),
    /// collapse and revival of ⟨S_z(t)⟩, exact vs closed form
    Rabi(CommonFlags),
    /// Haar-averaged fidelity of the coherent-state approximation
    Fidelity(CommonFlags),
    /// Husimi Q function of the reduced oscillator state
    Husimi(CommonFlags),
    /// averaged concurrence/purity curves with analytic markers
    Entanglement(CommonFlags),
    /// GHZ generation via U G_θ |gg⟩|α⟩
    Ghz(CommonFlags),
    /// W-state generation on the ion trap at an admissible N
    Wstate(CommonFlags),
    /// two-mode Bell-measurement outcome table
    Bellmeasure(CommonFlags),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
