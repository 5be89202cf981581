//! `wavehedge` — multiscale minimum-variance hedging over CSV price series.
//!
//! Exit codes: 0 success, 2 input or validation failure, 3 numeric
//! degeneracy (nothing could be estimated in any window).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wavehedge_core::hedge::HedgeConfig;
use wavehedge_core::report::{
    cmd_decompose, cmd_hedge, cmd_stats, cmd_subsample, sha256_hex, CommandOutput, Provenance,
    ReportTable,
};
use wavehedge_core::timeseries::{read_pair_csv, read_price_csv, PriceSeries};
use wavehedge_core::wavelet::FilterKind;

#[derive(Parser)]
#[command(
    name = "wavehedge",
    version,
    about = "Wavelet multiscale minimum-variance hedging of spot positions with futures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PairInput {
    /// Spot price CSV with header `date,price`
    #[arg(long)]
    spot: Option<PathBuf>,
    /// Futures price CSV with header `date,price`
    #[arg(long)]
    futures: Option<PathBuf>,
    /// Combined CSV with header `date,spot,futures` (replaces --spot/--futures)
    #[arg(long, conflicts_with_all = ["spot", "futures"])]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct OutputOptions {
    /// Directory output files are written to
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Output file format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn name(self) -> &'static str {
        self.extension()
    }
}

#[derive(Args)]
struct WaveletOptions {
    /// Largest decomposition level J
    #[arg(long, default_value_t = 6)]
    levels: usize,
    /// Base wavelet filter (haar|d4|la8|c10)
    #[arg(long, default_value = "la8")]
    filter: String,
}

#[derive(Subcommand)]
enum Command {
    /// Descriptive statistics (mean, stdev, skewness, kurtosis, Jarque-Bera)
    /// per series, for raw returns and each wavelet scale
    Stats {
        #[command(flatten)]
        input: PairInput,
        #[command(flatten)]
        wavelet: WaveletOptions,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Dump MODWT coefficients and the energy budget of one series
    Decompose {
        /// Spot price CSV (exactly one of --spot/--futures)
        #[arg(long)]
        spot: Option<PathBuf>,
        /// Futures price CSV (exactly one of --spot/--futures)
        #[arg(long)]
        futures: Option<PathBuf>,
        #[command(flatten)]
        wavelet: WaveletOptions,
        /// Reconstruct the series from the decomposition and report the
        /// maximum absolute error
        #[arg(long)]
        check_roundtrip: bool,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Rolling hedge study on returns subsampled at longer horizons
    Subsample {
        #[command(flatten)]
        input: PairInput,
        /// Sampling horizons in days
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 3, 6, 12])]
        horizons: Vec<usize>,
        /// Window length in days
        #[arg(long, default_value_t = 200)]
        window: usize,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Rolling multiscale hedge study with out-of-sample evaluation
    Hedge {
        #[command(flatten)]
        input: PairInput,
        /// In-sample window length in observations
        #[arg(long, default_value_t = 1000)]
        window: usize,
        /// Out-of-sample window length in observations
        #[arg(long, default_value_t = 1000)]
        oos: usize,
        /// Step between window starts
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[command(flatten)]
        wavelet: WaveletOptions,
        /// VaR confidence level
        #[arg(long, default_value_t = 0.95)]
        alpha: f64,
        #[command(flatten)]
        output: OutputOptions,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let threads = thread_cap()?;
    let output = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("building thread pool")?
            .install(|| execute(&cli.command)),
        None => execute(&cli.command),
    }?;
    Ok(if output.degenerate {
        eprintln!("warning: no scale could be estimated in any window (numeric degeneracy)");
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

/// `WAVEHEDGE_THREADS` caps worker threads; unset means the rayon default.
fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("WAVEHEDGE_THREADS") {
        Ok(text) => {
            let n: usize = text
                .parse()
                .with_context(|| format!("WAVEHEDGE_THREADS='{text}' is not a thread count"))?;
            if n == 0 {
                bail!("WAVEHEDGE_THREADS must be at least 1");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

struct LoadedSeries {
    series: PriceSeries,
    name: String,
    digest: String,
}

fn load_series(path: &Path) -> Result<LoadedSeries> {
    let bytes =
        fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let series = read_price_csv(bytes.as_slice())
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(LoadedSeries {
        series,
        name: path.display().to_string(),
        digest: sha256_hex(&bytes),
    })
}

type InputDigests = Vec<(String, String)>;

fn load_pair(input: &PairInput) -> Result<(PriceSeries, PriceSeries, InputDigests)> {
    if let Some(path) = &input.input {
        let bytes =
            fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let (spot, futures) = read_pair_csv(bytes.as_slice())
            .with_context(|| format!("parsing {}", path.display()))?;
        let digests = vec![(path.display().to_string(), sha256_hex(&bytes))];
        return Ok((spot, futures, digests));
    }
    match (&input.spot, &input.futures) {
        (Some(spot_path), Some(futures_path)) => {
            let spot = load_series(spot_path)?;
            let futures = load_series(futures_path)?;
            Ok((
                spot.series,
                futures.series,
                vec![(spot.name, spot.digest), (futures.name, futures.digest)],
            ))
        }
        _ => bail!("provide both --spot and --futures, or a combined --input file"),
    }
}

fn parse_filter(name: &str) -> Result<FilterKind> {
    Ok(FilterKind::parse(name)?)
}

fn execute(command: &Command) -> Result<CommandOutput> {
    match command {
        Command::Stats {
            input,
            wavelet,
            output,
        } => {
            let filter = parse_filter(&wavelet.filter)?;
            let (spot, futures, digests) = load_pair(input)?;
            let config = HedgeConfig {
                levels: wavelet.levels,
                filter,
                ..HedgeConfig::default()
            };
            let mut provenance = Provenance::new("stats")
                .config("levels", wavelet.levels)
                .config("filter", filter)
                .config("format", output.format.name());
            for (name, digest) in &digests {
                provenance = provenance.input(name, digest);
            }
            let result = cmd_stats(&spot, &futures, &config, provenance)?;
            write_tables(&result.tables, output)?;
            Ok(result)
        }
        Command::Decompose {
            spot,
            futures,
            wavelet,
            check_roundtrip,
            output,
        } => {
            let filter = parse_filter(&wavelet.filter)?;
            let (path, label) = match (spot, futures) {
                (Some(p), None) => (p, "spot"),
                (None, Some(p)) => (p, "futures"),
                _ => bail!("decompose takes exactly one of --spot or --futures"),
            };
            let loaded = load_series(path)?;
            let provenance = Provenance::new("decompose")
                .config("series", label)
                .config("levels", wavelet.levels)
                .config("filter", filter)
                .config("check_roundtrip", check_roundtrip)
                .config("format", output.format.name())
                .input(&loaded.name, &loaded.digest);
            let result = cmd_decompose(
                &loaded.series,
                filter,
                wavelet.levels,
                *check_roundtrip,
                provenance,
            )?;
            write_tables(&result.tables, output)?;
            Ok(result)
        }
        Command::Subsample {
            input,
            horizons,
            window,
            output,
        } => {
            let (spot, futures, digests) = load_pair(input)?;
            let horizon_list = horizons
                .iter()
                .map(|h| h.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let mut provenance = Provenance::new("subsample")
                .config("horizons", horizon_list)
                .config("window", window)
                .config("format", output.format.name());
            for (name, digest) in &digests {
                provenance = provenance.input(name, digest);
            }
            let result = cmd_subsample(&spot, &futures, horizons, *window, provenance)?;
            write_tables(&result.tables, output)?;
            Ok(result)
        }
        Command::Hedge {
            input,
            window,
            oos,
            stride,
            wavelet,
            alpha,
            output,
        } => {
            let filter = parse_filter(&wavelet.filter)?;
            let (spot, futures, digests) = load_pair(input)?;
            let config = HedgeConfig {
                window: *window,
                oos_window: *oos,
                stride: *stride,
                levels: wavelet.levels,
                filter,
                alpha: *alpha,
            };
            let mut provenance = Provenance::new("hedge")
                .config("window", window)
                .config("oos_window", oos)
                .config("stride", stride)
                .config("levels", wavelet.levels)
                .config("filter", filter)
                .config("alpha", alpha)
                .config("format", output.format.name());
            for (name, digest) in &digests {
                provenance = provenance.input(name, digest);
            }
            let result = cmd_hedge(&spot, &futures, &config, provenance)?;
            write_tables(&result.tables, output)?;
            Ok(result)
        }
    }
}

fn write_tables(tables: &[ReportTable], output: &OutputOptions) -> Result<()> {
    fs::create_dir_all(&output.out)
        .with_context(|| format!("creating {}", output.out.display()))?;
    for table in tables {
        let path = output
            .out
            .join(format!("{}.{}", table.name, output.format.extension()));
        let text = match output.format {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(),
        };
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
    }
    Ok(())
}
