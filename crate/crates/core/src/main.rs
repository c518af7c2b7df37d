use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hilbert_jackson::inequalities::{jackson_bound, sharpness_search, DEFAULT_SLACK};
use hilbert_jackson::kernel::{GammaKernel, DEFAULT_WINDOW, GAMMA_TOL};
use hilbert_jackson::moduli::{omega_2v, omega_pv, omega_sup};
use hilbert_jackson::runner::{
    emit_gamma_profile, parse_exponent, parse_symbol_spec, parse_weight_spec, run_config, summary_table, Overrides,
};
use hilbert_jackson::sampling::{random_real, trial_rng, DEFAULT_MAX_ATOMS};
use hilbert_jackson::{Result, SpectralElement};

#[derive(Parser)]
#[command(
    name = "hilbert-jackson",
    version,
    about = "Generalized moduli of continuity and Jackson-Stechkin bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed (replaces config seeds; picks the random element elsewhere).
    #[arg(long)]
    seed: Option<u64>,
    /// Relative slack for certification; for `gamma`, the quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// G search window, in units of u = delta * t.
    #[arg(long)]
    tmax: Option<f64>,
    /// Output directory (`run`) or file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ElementArgs {
    /// Element file, `frequency re im` per line; random when omitted.
    #[arg(long)]
    element: Option<PathBuf>,
    /// `classical:m` or `custom:<file>`.
    #[arg(long, default_value = "classical:1")]
    symbol: String,
    /// Weight name or `custom:<file>`.
    #[arg(long, default_value = "uniform")]
    weight: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check of a TOML config; exit 1 if any fails.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate Gamma(V; t) on [t0, t1].
    Gamma {
        weight: String,
        symbol: String,
        t0: f64,
        t1: f64,
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Print omega_sup, omega_2V and omega_pV of an element.
    Modulus {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long)]
        delta: f64,
        /// Exponent for omega_pV (number or `inf`).
        #[arg(long, default_value = "2")]
        p: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certify E_sigma(x) <= G^{-1/2} omega_p for one element.
    Bound {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value = "2")]
        p: String,
        #[command(flatten)]
        common: Common,
    },
    /// Single atom at the G minimizer: the bound should be attained.
    Sharpness {
        #[arg(long, default_value = "uniform")]
        weight: String,
        #[arg(long, default_value = "classical:1")]
        symbol: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn kernel(weight: &str, symbol: &str, common: &Common) -> Result<GammaKernel> {
    Ok(
        GammaKernel::new(parse_weight_spec(weight, None)?, parse_symbol_spec(symbol, None)?)
            .with_window(common.tmax.unwrap_or(DEFAULT_WINDOW)),
    )
}

fn element(args: &ElementArgs, common: &Common) -> Result<SpectralElement> {
    match &args.element {
        Some(path) => SpectralElement::read(path),
        None => Ok(random_real(
            &mut trial_rng(common.seed.unwrap_or(0), 0),
            DEFAULT_MAX_ATOMS,
        )),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| hilbert_jackson::Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, common } => {
            let overrides = Overrides {
                seed: common.seed,
                slack: common.tol,
                window: common.tmax,
                out: common.out,
            };
            let outcome = run_config(&config, &overrides)?;
            let rows: Vec<_> = outcome.outputs.iter().map(|o| o.row.clone()).collect();
            print!("{}", summary_table(&rows));
            eprintln!(
                "wrote {} and {}",
                outcome.summary_path.display(),
                outcome.records_path.display()
            );
            Ok(outcome.all_passed())
        }
        Command::Gamma {
            weight,
            symbol,
            t0,
            t1,
            n,
            common,
        } => {
            let k = GammaKernel::with_tolerance(
                parse_weight_spec(&weight, None)?,
                parse_symbol_spec(&symbol, None)?,
                common.tol.unwrap_or(GAMMA_TOL),
            );
            let text = emit_gamma_profile(&k, t0, t1, n, common.out.as_deref())?;
            if common.out.is_none() {
                print!("{text}");
            }
            Ok(!text.contains(" nan "))
        }
        Command::Modulus {
            element: ea,
            delta,
            p,
            common,
        } => {
            let x = element(&ea, &common)?;
            let k = kernel(&ea.weight, &ea.symbol, &common)?;
            let p = parse_exponent(&p)?;
            let record = serde_json::json!({
                "element_atoms": x.len(),
                "delta": delta,
                "kernel": k.label(),
                "omega_sup": omega_sup(&x, k.symbol(), delta).value,
                "omega_2v": omega_2v(&x, &k, delta)?,
                "p": p.to_string(),
                "omega_pv": omega_pv(&x, k.symbol(), k.weight(), p, delta)?,
            });
            emit(&format!("{record}\n"), common.out.as_ref())?;
            Ok(true)
        }
        Command::Bound {
            element: ea,
            sigma,
            delta,
            p,
            common,
        } => {
            let x = element(&ea, &common)?;
            let k = kernel(&ea.weight, &ea.symbol, &common)?;
            let r = jackson_bound(
                &x,
                sigma,
                &k,
                delta,
                parse_exponent(&p)?,
                None,
                common.tol.unwrap_or(DEFAULT_SLACK),
            )?;
            emit(
                &format!("{}\n", serde_json::to_string(&r).expect("report serializes")),
                common.out.as_ref(),
            )?;
            Ok(r.passed())
        }
        Command::Sharpness {
            weight,
            symbol,
            sigma,
            delta,
            common,
        } => {
            let k = kernel(&weight, &symbol, &common)?;
            let r = sharpness_search(sigma, &k, delta, None, common.tol.unwrap_or(DEFAULT_SLACK))?;
            emit(
                &format!("{}\n", serde_json::to_string(&r).expect("report serializes")),
                common.out.as_ref(),
            )?;
            Ok(r.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
