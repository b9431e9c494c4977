//! Empirical scans of quotient-set and gcd-class sizes against `α²N²`.
//!
//! Output is data only: ratios are recorded, never asserted against the open
//! questions they probe. The quotient-size bound check runs on every instance
//! and its reports ride along in the JSON output.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quotients::{question_ratios, theorem5_check, Theorem5Report};
use crate::rng::random_subset;
use crate::sets::{DensityValue, FiniteIntegerSet};

/// Largest `N` for which the exhaustive family is allowed.
pub const MAX_EXHAUSTIVE_N: u64 = 16;

pub const CSV_HEADER: &str =
    "family,seed,alpha_num,alpha_den,N,q_ratio_num,q_ratio_den,class_ratio_num,class_ratio_den";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `[1, N]`.
    Interval,
    /// Multiples of `⌈1/α⌉` up to `N`.
    Progression,
    /// Seeded shuffle-prefix subsets of size `⌈αN⌉`.
    Random,
    /// Every subset of `[1, N]` with at least two elements.
    Exhaustive,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Interval => "interval",
            Family::Progression => "progression",
            Family::Random => "random",
            Family::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

fn default_trials() -> u64 {
    1
}

/// Scan configuration, read from TOML.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(rename = "N")]
    pub n_values: Vec<u64>,
    /// Rationals written `num/den`.
    #[serde(default)]
    pub alphas: Vec<String>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    pub families: Vec<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parsed `alphas`, each strictly between 0 and 1.
    pub fn parsed_alphas(&self) -> Result<Vec<DensityValue>> {
        self.alphas
            .iter()
            .map(|s| {
                let a: DensityValue = s.parse()?;
                if a.is_zero() || a.is_one() {
                    return Err(Error::invalid(format!("alpha must satisfy 0 < alpha < 1, got {s}")));
                }
                Ok(a)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let alphas = self.parsed_alphas()?;
        if self.families.is_empty() {
            return Err(Error::invalid("no families configured"));
        }
        if self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::invalid("every N must be at least 2"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be positive"));
        }
        let needs_alpha = self.families.iter().any(|f| matches!(f, Family::Progression | Family::Random));
        if needs_alpha && alphas.is_empty() {
            return Err(Error::invalid("progression and random families need at least one alpha"));
        }
        if self.families.contains(&Family::Exhaustive) {
            if let Some(&n) = self.n_values.iter().find(|&&n| n > MAX_EXHAUSTIVE_N) {
                return Err(Error::invalid(format!(
                    "exhaustive family is limited to N <= {MAX_EXHAUSTIVE_N}, got {n}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Instance {
    family: Family,
    seed: u64,
    n: u64,
    set: FiniteIntegerSet,
}

fn instances(cfg: &ExperimentConfig) -> Result<Vec<Instance>> {
    let alphas = cfg.parsed_alphas()?;
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        for &family in &cfg.families {
            let mut push = |seed: u64, set: FiniteIntegerSet| {
                if set.len() >= 2 {
                    out.push(Instance { family, seed, n, set });
                }
            };
            match family {
                Family::Interval => push(0, FiniteIntegerSet::interval(1, n)),
                Family::Progression => {
                    for a in &alphas {
                        let step = num_integer::Integer::div_ceil(&a.denom(), &a.numer());
                        let step = u64::try_from(step).unwrap_or(u64::MAX);
                        push(0, FiniteIntegerSet::from_u64s((1..=n / step).map(|i| i * step)));
                    }
                }
                Family::Random => {
                    for a in &alphas {
                        let k = num_integer::Integer::div_ceil(&(a.numer() * n), &a.denom());
                        let k = usize::try_from(k).expect("k <= N");
                        for trial in 0..cfg.trials {
                            let seed = cfg.seed.wrapping_add(trial);
                            push(seed, FiniteIntegerSet::from_u64s(random_subset(n, k, seed)));
                        }
                    }
                }
                Family::Exhaustive => {
                    for mask in 1u64..(1u64 << n) {
                        if mask.count_ones() >= 2 {
                            push(
                                mask,
                                FiniteIntegerSet::from_u64s((0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1)),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub family: Family,
    pub seed: u64,
    pub alpha: DensityValue,
    pub n: u64,
    pub q_ratio: (BigUint, BigUint),
    pub class_ratio: (BigUint, BigUint),
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub family: Family,
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(flatten)]
    pub theorem5: Theorem5Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanJson<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub empirical: bool,
    pub config: &'a ExperimentConfig,
    pub instances: usize,
    pub theorem5_failures: usize,
    pub reports: &'a [InstanceReport],
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub config: ExperimentConfig,
    pub rows: Vec<ScanRow>,
    pub reports: Vec<InstanceReport>,
}

impl ScanOutput {
    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| !r.theorem5.pass || !r.theorem5.intermediate_holds).count()
    }

    /// Instance rows followed by one `summary:<family>` row per family with
    /// the minimum ratios (alpha and N columns left empty).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.family.label(),
                r.seed,
                r.alpha.numer(),
                r.alpha.denom(),
                r.n,
                r.q_ratio.0,
                r.q_ratio.1,
                r.class_ratio.0,
                r.class_ratio.1
            );
        }
        let mut families: Vec<Family> = self.rows.iter().map(|r| r.family).collect();
        families.sort();
        families.dedup();
        let less = |x: &(BigUint, BigUint), y: &(BigUint, BigUint)| &x.0 * &y.1 < &y.0 * &x.1;
        for f in families {
            let mut rows = self.rows.iter().filter(|r| r.family == f);
            let first = rows.next().expect("family has rows");
            let (mut q, mut c) = (&first.q_ratio, &first.class_ratio);
            for r in rows {
                if less(&r.q_ratio, q) {
                    q = &r.q_ratio;
                }
                if less(&r.class_ratio, c) {
                    c = &r.class_ratio;
                }
            }
            let _ = writeln!(out, "summary:{},,,,,{},{},{},{}", f.label(), q.0, q.1, c.0, c.1);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = ScanJson {
            tool: "prodgap",
            version: env!("CARGO_PKG_VERSION"),
            empirical: true,
            config: &self.config,
            instances: self.reports.len(),
            theorem5_failures: self.failures(),
            reports: &self.reports,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("scan report serializes");
        s.push('\n');
        s
    }
}

/// Runs every configured instance. Instances are evaluated in parallel and
/// reassembled in generation order.
pub fn question_scan(cfg: &ExperimentConfig) -> Result<ScanOutput> {
    cfg.validate()?;
    let work = instances(cfg)?;
    let results: Vec<(ScanRow, InstanceReport)> = work
        .par_iter()
        .map(|inst| {
            let ratios = question_ratios(&inst.set)?;
            let theorem5 = theorem5_check(&inst.set, inst.n)?;
            let row = ScanRow {
                family: inst.family,
                seed: inst.seed,
                alpha: theorem5.alpha.clone(),
                n: inst.n,
                q_ratio: ratios.q_ratio,
                class_ratio: ratios.class_ratio,
            };
            let report = InstanceReport { family: inst.family, seed: inst.seed, n: inst.n, theorem5 };
            Ok((row, report))
        })
        .collect::<Result<_>>()?;
    let (rows, reports) = results.into_iter().unzip();
    Ok(ScanOutput { config: cfg.clone(), rows, reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Result<ExperimentConfig> {
        ExperimentConfig::from_toml(text)
    }

    #[test]
    fn config_validation() {
        assert!(cfg("seed = 1\nN = [10]\nfamilies = [\"interval\"]\n").is_ok());
        let e = cfg("seed = 1\nN = [10]\nalphas = [\"1/1\"]\nfamilies = [\"random\"]\n");
        assert!(matches!(e, Err(Error::InvalidArgument(_))));
        let e = cfg("seed = 1\nN = [10]\nalphas = [\"0.5\"]\nfamilies = [\"random\"]\n");
        assert!(matches!(e, Err(Error::Parse(_))));
        let e = cfg("seed = 1\nN = [20]\nfamilies = [\"exhaustive\"]\n");
        assert!(e.is_err());
        let e = cfg("seed = 1\nN = [10]\nfamilies = [\"random\"]\n");
        assert!(e.is_err());
        let e = cfg("seed = 1\nN = [10]\nfamilies = [\"interval\"]\nbogus = 3\n");
        assert!(matches!(e, Err(Error::Parse(_))));
    }

    #[test]
    fn interval_row_matches_totient_sum() {
        let c = cfg("seed = 0\nN = [20]\nfamilies = [\"interval\"]\n").unwrap();
        let out = question_scan(&c).unwrap();
        assert_eq!(out.rows.len(), 1);
        // Σ_{k=2}^{20} φ(k) = 127
        assert_eq!(out.rows[0].q_ratio, (BigUint::from(127u32), BigUint::from(400u32)));
    }

    #[test]
    fn singletons_are_skipped() {
        // step 4 in [1, 5] leaves only {4}
        let c = cfg("seed = 0\nN = [5]\nalphas = [\"1/4\"]\nfamilies = [\"progression\"]\n").unwrap();
        assert!(question_scan(&c).unwrap().rows.is_empty());
    }

    #[test]
    fn exhaustive_small_n() {
        let c = cfg("seed = 0\nN = [4]\nfamilies = [\"exhaustive\"]\n").unwrap();
        let out = question_scan(&c).unwrap();
        assert_eq!(out.rows.len(), 16 - 1 - 4);
        assert_eq!(out.failures(), 0);
        let csv = out.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert!(csv.lines().last().unwrap().starts_with("summary:exhaustive,,,,,"));
    }
}
