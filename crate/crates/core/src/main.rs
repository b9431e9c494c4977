//! `prodgap` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use prodgap::constructions::{
    construction_report, materialize, theorem2_spec, theorem4_spec, BlockFamilySpec, MAX_MATERIALIZED_BLOCKS,
};
use prodgap::gap_finders::{certify_small_gaps, Certificate};
use prodgap::products::{block_products_in_window, products_in_window};
use prodgap::quotients::{close_quotients, gcd_classes, theorem5_check};
use prodgap::scan::{question_scan, ExperimentConfig, OutputFormat};
use prodgap::sidon::{erdos_turan_sidon, SidonReport};
use prodgap::{DensityValue, Error, FiniteIntegerSet, Window, VERSION};

#[derive(Parser)]
#[command(name = "prodgap", version, about = "Gaps in product sequences: constructions, certificates, quotient scans")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Erdős–Turán Sidon set for an odd prime and verify it
    Sidon {
        p: u64,
        /// Write the set here; the verdict still goes to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Materialize an extremal block construction and check cross-block separation
    Construct {
        #[arg(long)]
        alpha: DensityValue,
        /// Cluster size; omitted selects the single-gap construction
        #[arg(long)]
        t: Option<u64>,
        #[arg(long = "nmax")]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find pigeonhole gap certificates in every disjoint dense window
    Certify {
        /// Newline-delimited set file, `-` for stdin
        set: PathBuf,
        #[arg(long)]
        alpha: DensityValue,
        #[arg(long, default_value_t = 1)]
        t: u64,
        /// Observation range lo..hi (default 1..max)
        #[arg(long)]
        window: Option<Window>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product set of a set file or of a construction, restricted to a window
    Products {
        /// Newline-delimited set file, `-` for stdin
        set: Option<PathBuf>,
        /// Use the construction for this alpha instead of a set file
        #[arg(long, requires = "n_max", conflicts_with = "set")]
        alpha: Option<DensityValue>,
        #[arg(long = "nmax")]
        n_max: Option<u64>,
        /// t-gap to report; with --alpha also selects the cluster construction
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        window: Option<Window>,
        /// Omit the value list when it is longer than this
        #[arg(long, default_value_t = 1000)]
        max_values: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient set, gcd classes, size bound and close quotients for A ⊆ [1, N]
    Quotients {
        set: PathBuf,
        #[arg(long = "n")]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment scan from a TOML config
    Scan {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for scan.csv and theorem5.json
        #[arg(long)]
        out: Option<PathBuf>,
        /// What goes to stdout when no output directory is given
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

enum Outcome {
    Verified,
    Failed,
}

fn read_set(path: &Path) -> anyhow::Result<FiniteIntegerSet> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(FiniteIntegerSet::parse(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Verified
    } else {
        Outcome::Failed
    }
}

fn spec_for(alpha: &DensityValue, t: Option<u64>) -> prodgap::Result<BlockFamilySpec> {
    match t {
        Some(t) => theorem4_spec(alpha, t),
        None => theorem2_spec(alpha),
    }
}

fn cmd_sidon(p: u64, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let set = erdos_turan_sidon(p)?;
    let report = SidonReport::for_set(&set);
    let line = serde_json::to_string(&report)? + "\n";
    match out {
        Some(path) => {
            emit(Some(path), &set.elements().to_lines())?;
            emit(None, &line)?;
        }
        None => emit(None, &(set.elements().to_lines() + &line))?,
    }
    Ok(verdict(report.holds()))
}

fn cmd_construct(
    alpha: &DensityValue,
    t: Option<u64>,
    n_max: u64,
    format: Format,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let spec = spec_for(alpha, t)?;
    let report = construction_report(&spec, n_max)?;
    let text = match format {
        Format::Json => pretty(&json!({
            "tool": "prodgap",
            "version": VERSION,
            "report": report,
        })),
        _ if spec.is_all_naturals() => {
            "# A = all positive integers (alpha >= 1/16); consecutive products differ by at least 1\n".to_string()
        }
        _ => {
            let mut s = materialize(&spec, n_max)?.to_text();
            let sep = &report.separation;
            match (&sep.min, &sep.x1) {
                (Some(m), Some(x1)) => s.push_str(&format!("# separation min={m} x1={x1} holds={}\n", sep.holds)),
                _ => s.push_str(&format!("# separation {}\n", sep.status)),
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(verdict(report.separation.holds))
}

fn number(v: &BigUint) -> serde_json::Value {
    serde_json::Value::Number(v.to_string().parse().expect("decimal integer"))
}

#[derive(Serialize)]
struct Emitted<'a> {
    #[serde(flatten)]
    certificate: &'a Certificate,
    verified: bool,
}

fn cmd_certify(
    set_path: &Path,
    alpha: &DensityValue,
    t: u64,
    window: Option<Window>,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let set = read_set(set_path)?;
    let observation = match window {
        Some(w) => w,
        None => Window::new(BigUint::from(1u32), set.max().cloned().unwrap_or(BigUint::from(1u32)).max(1u32.into()))?,
    };
    let certs = certify_small_gaps(&set, alpha, t, &observation)?;
    let checks: Vec<Result<(), String>> = certs.iter().map(|c| c.verify_in(&set)).collect();
    for (c, r) in certs.iter().zip(&checks) {
        if let Err(msg) = r {
            eprintln!("certificate for window {} failed re-verification: {msg}", c.window());
        }
    }
    let emitted: Vec<Emitted> =
        certs.iter().zip(&checks).map(|(c, r)| Emitted { certificate: c, verified: r.is_ok() }).collect();
    let text = pretty(&json!({
        "tool": "prodgap",
        "version": VERSION,
        "alpha": alpha.to_string(),
        "t": t,
        "observation": [number(observation.lo()), number(observation.hi())],
        "count": emitted.len(),
        "certificates": emitted,
    }));
    emit(out, &text)?;
    Ok(verdict(checks.iter().all(|r| r.is_ok())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_products(
    set_path: Option<&Path>,
    alpha: Option<&DensityValue>,
    n_max: Option<u64>,
    t: Option<u64>,
    window: Option<Window>,
    max_values: usize,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let t_usize = t.map(|t| t as usize);
    let report = match (set_path, alpha) {
        (Some(path), None) => {
            let set = read_set(path)?;
            let max = set.max().cloned().unwrap_or(BigUint::from(1u32)).max(1u32.into());
            let w = match window {
                Some(w) => w,
                None => Window::new(1u32.into(), &max * &max)?,
            };
            products_in_window(&set, &w)?
        }
        (None, Some(alpha)) => {
            let n_max = n_max.expect("clap enforces --nmax with --alpha");
            if n_max == 0 || n_max > MAX_MATERIALIZED_BLOCKS {
                return Err(anyhow!("growth guard: --nmax must be between 1 and {MAX_MATERIALIZED_BLOCKS}"));
            }
            let spec = spec_for(alpha, t.filter(|&t| t >= 2))?;
            let seq = materialize(&spec, n_max)?;
            let w = match window {
                Some(w) => w,
                None => {
                    let top = seq.union().max().cloned().expect("blocks are nonempty");
                    Window::new(1u32.into(), &top * &top)?
                }
            };
            block_products_in_window(&seq, &w)?
        }
        _ => return Err(anyhow!("give either a set file or --alpha with --nmax")),
    };
    let summary = report.summary(t_usize, max_values);
    let text = pretty(&json!({
        "tool": "prodgap",
        "version": VERSION,
        "report": summary,
    }));
    emit(out, &text)?;
    Ok(Outcome::Verified)
}

fn cmd_quotients(set_path: &Path, n: u64, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let set = read_set(set_path)?;
    let report = theorem5_check(&set, n)?;
    let classes: Vec<_> = gcd_classes(&set)?.iter().map(|(d, c)| json!([number(d), c])).collect();
    let (close, note) = match close_quotients(&set, n) {
        Ok(c) => (Some(c), None),
        Err(Error::InsufficientSize(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    let ok = report.pass && report.intermediate_holds && close.as_ref().is_none_or(|c| c.holds());
    let text = pretty(&json!({
        "tool": "prodgap",
        "version": VERSION,
        "theorem5": report,
        "gcd_classes": classes,
        "close_quotients": close,
        "close_quotients_note": note,
    }));
    emit(out, &text)?;
    Ok(verdict(ok))
}

fn cmd_scan(config: &Path, seed: Option<u64>, out: Option<PathBuf>, format: Option<Format>) -> anyhow::Result<Outcome> {
    let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let mut cfg = ExperimentConfig::from_toml(&text)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if out.is_some() {
        cfg.out = out;
    }
    if let Some(f) = format {
        cfg.format = Some(match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => return Err(anyhow!("scan supports --format csv or json")),
        });
    }
    let result = question_scan(&cfg)?;
    match &cfg.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join("scan.csv"), result.to_csv())?;
            fs::write(dir.join("theorem5.json"), result.to_json())?;
        }
        None => match cfg.format.unwrap_or_default() {
            OutputFormat::Csv => emit(None, &result.to_csv())?,
            OutputFormat::Json => emit(None, &result.to_json())?,
        },
    }
    let failures = result.failures();
    if failures > 0 {
        eprintln!("{failures} instance(s) failed the quotient-size check");
    }
    Ok(verdict(failures == 0))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.cmd {
        Command::Sidon { p, out } => cmd_sidon(p, out.as_deref()),
        Command::Construct { alpha, t, n_max, format, out } => cmd_construct(&alpha, t, n_max, format, out.as_deref()),
        Command::Certify { set, alpha, t, window, out } => cmd_certify(&set, &alpha, t, window, out.as_deref()),
        Command::Products { set, alpha, n_max, t, window, max_values, out } => {
            cmd_products(set.as_deref(), alpha.as_ref(), n_max, t, window, max_values, out.as_deref())
        }
        Command::Quotients { set, n, out } => cmd_quotients(&set, n, out.as_deref()),
        Command::Scan { config, seed, out, format } => cmd_scan(&config, seed, out, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Verified) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e)
            if e.chain().any(
                |c| matches!(c.downcast_ref::<io::Error>(), Some(io) if io.kind() == io::ErrorKind::BrokenPipe),
            ) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            // internal errors mean a proof-guaranteed object went missing
            let internal = matches!(e.downcast_ref::<Error>(), Some(Error::Internal(_)));
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}
