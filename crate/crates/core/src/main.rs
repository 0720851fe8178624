use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hkit::bargmann::hardy::{hardy_classify, DEFAULT_BAND};
use hkit::factorization::{factorize_analytic, factorize_entire};
use hkit::harness::{ingest_function, run_suite, write_phase_csv, Config, InputFormat, Overrides, ReportFormat, VerificationReport};
use hkit::Error;

#[derive(Parser)]
#[command(name = "hkit", version, about = "Hermite, Wigner and Weyl numerics with decay certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[command(flatten)]
        settings: Settings,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a function by the joint Gaussian decay of it and its Fourier transform.
    Classify {
        #[arg(long)]
        f: PathBuf,
        /// Fourier transform of `f`; computed when omitted.
        #[arg(long)]
        fhat: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
    },
    /// Factor `phi = W(h) f` and write `h` as phase-space CSV.
    Factorize {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// Treat `phi` as `phi_0` and factor `e^{-tH} phi_0`.
        #[arg(long)]
        entire: bool,
        #[arg(long, default_value = "h.csv")]
        out_h: PathBuf,
        #[command(flatten)]
        settings: Settings,
    },
    /// Re-render a JSON report in another format.
    Report {
        input: PathBuf,
        #[arg(long, default_value = "markdown")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Settings {
    /// JSON config file; defaults to $HKIT_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    trunc: Option<usize>,
    /// Comma-separated time parameters (`factorize` takes exactly one).
    #[arg(long = "t", value_delimiter = ',', allow_negative_numbers = true)]
    t_values: Option<Vec<f64>>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl Settings {
    fn load(&self) -> hkit::Result<Config> {
        let o = Overrides {
            n: self.n,
            nodes: self.nodes,
            trunc: self.trunc,
            t_values: self.t_values.clone(),
            tolerance: self.tolerance,
            trials: self.trials,
            seed: self.seed,
        };
        Config::load(self.config.as_deref(), &o)
    }
}

fn sink(out: Option<&Path>) -> hkit::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn emit(report: &VerificationReport, format: ReportFormat, out: Option<&Path>) -> hkit::Result<ExitCode> {
    report.write(format, sink(out)?)?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} checks failed", report.failures(), report.checks.len());
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> hkit::Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, settings, format, out } => {
            let cfg = settings.load()?;
            let report = run_suite(&suite, &cfg)?;
            emit(&report, format, out.as_deref())
        }
        Command::Classify { f, fhat, band } => {
            let f = ingest_function(&f, InputFormat::from_path(&f)?, None)?.into_line()?;
            let fhat = match fhat {
                Some(p) => Some(ingest_function(&p, InputFormat::from_path(&p)?, None)?.into_line()?),
                None => None,
            };
            let r = hardy_classify(&f, fhat.as_ref(), band)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Factorize { phi, f, entire, out_h, settings } => {
            let t = match settings.t_values.as_deref() {
                Some([t]) => *t,
                _ => return Err(Error::InvalidConfig("factorize needs a single --t".into())),
            };
            let cfg = settings.load()?;
            let phi = ingest_function(&phi, InputFormat::from_path(&phi)?, Some(cfg.nodes))?.into_line()?;
            let f = ingest_function(&f, InputFormat::from_path(&f)?, Some(cfg.nodes))?.into_line()?;
            let (h, report) = if entire { factorize_entire(&phi, t, &f)? } else { factorize_analytic(&phi, &f, t)? };
            write_phase_csv(&h, BufWriter::new(File::create(&out_h)?))?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            let ok = report.reconstruction_error <= cfg.tolerance && report.kernel_route_error.is_none_or(|e| e <= cfg.tolerance);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Report { input, format, out } => {
            let text = std::fs::read_to_string(&input)?;
            let report: VerificationReport = serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
            emit(&report, format, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
