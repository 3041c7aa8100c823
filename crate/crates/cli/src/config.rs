use std::path::{Path, PathBuf};

use clap::Args;
use sparsegab::certify::AUTO_MINOR_SWEEP_MAX_N;
use sparsegab::field::parse_rational;
use sparsegab::gabidulin::{required_sample_size, DEFAULT_MAX_RETRIES};
use sparsegab::gmmds::OracleMode;
use sparsegab::io::SpecJson;
use sparsegab::{GaloisContext, Rational, SupportSpec};

use crate::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Odd prime p; codes live over Q(ζ_p) with extension degree p - 1.
    #[arg(long)]
    pub prime: Option<u32>,
    /// Code length; taken from the zeros file when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Code dimension; taken from the zeros file when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    /// Zero pattern: {"n": n, "k": k, "zeros": [[col, ...], ...]}, 1-based.
    #[arg(long, value_name = "FILE")]
    pub zeros: Option<PathBuf>,
    /// Target failure probability of a single draw, e.g. 0.01 or 1/100.
    #[arg(long, conflicts_with = "s_size")]
    pub epsilon: Option<String>,
    /// Size of the coordinate sample set {0, ..., s-1}.
    #[arg(long)]
    pub s_size: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    pub max_retries: u32,
    /// Sweep all maximal minors for the Hamming distance [default: on for n ≤ 12].
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub check_minors: Option<bool>,
    #[arg(long, default_value = "symbolic", value_name = "symbolic|randomized")]
    pub mode: OracleMode,
    /// Directory for result and certificate files.
    #[arg(long, default_value = "out", value_name = "DIR")]
    pub out: PathBuf,
}

/// Everything a construction run needs, validated.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub ctx: GaloisContext,
    pub spec: SupportSpec,
    pub s_size: u64,
    pub seed: u64,
    pub max_retries: u32,
    pub check_minors: bool,
}

/// Where the sample-set size came from.
#[derive(Debug, Clone)]
pub enum SampleSize {
    Epsilon(Rational),
    Explicit(u64),
}

impl JobArgs {
    /// The zero pattern from `--zeros`, or an unconstrained `--n` x `--k` one.
    pub fn spec(&self) -> Result<SupportSpec, CliError> {
        let Some(path) = &self.zeros else {
            let (Some(n), Some(k)) = (self.n, self.k) else {
                return Err(CliError::Usage(
                    "give --zeros <file> or both --n and --k".into(),
                ));
            };
            return SupportSpec::unconstrained(n, k).map_err(CliError::usage);
        };
        let spec = SpecJson::parse(&read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        for (flag, given, found) in [("--n", self.n, spec.n()), ("--k", self.k, spec.k())] {
            if given.is_some_and(|v| v != found) {
                return Err(CliError::Usage(format!(
                    "{flag} {} disagrees with {} in {}",
                    given.unwrap_or_default(),
                    found,
                    path.display()
                )));
            }
        }
        Ok(spec)
    }

    pub fn context(&self, n: usize) -> Result<GaloisContext, CliError> {
        let p = self
            .prime
            .ok_or_else(|| CliError::Usage("--prime is required".into()))?;
        let ctx = GaloisContext::new(p).map_err(CliError::usage)?;
        if n > ctx.degree() {
            return Err(CliError::Usage(format!(
                "n = {n} exceeds the extension degree p - 1 = {}",
                ctx.degree()
            )));
        }
        Ok(ctx)
    }

    pub fn sample(&self) -> Result<SampleSize, CliError> {
        match (&self.epsilon, self.s_size) {
            (Some(e), None) => parse_rational(e)
                .map(SampleSize::Epsilon)
                .map_err(CliError::usage),
            (None, Some(0)) => Err(CliError::Usage("--s-size must be positive".into())),
            (None, Some(s)) => Ok(SampleSize::Explicit(s)),
            _ => Err(CliError::Usage(
                "give exactly one of --epsilon and --s-size".into(),
            )),
        }
    }

    pub fn sample_size(&self, n: usize, k: usize) -> Result<u64, CliError> {
        match self.sample()? {
            SampleSize::Explicit(s) => Ok(s),
            SampleSize::Epsilon(e) => required_sample_size(n, k, &e).map_err(CliError::usage),
        }
    }

    pub fn job(&self) -> Result<JobConfig, CliError> {
        let spec = self.spec()?;
        let ctx = self.context(spec.n())?;
        let s_size = self.sample_size(spec.n(), spec.k())?;
        Ok(JobConfig {
            check_minors: self
                .check_minors
                .unwrap_or(spec.n() <= AUTO_MINOR_SWEEP_MAX_N),
            ctx,
            spec,
            s_size,
            seed: self.seed,
            max_retries: self.max_retries,
        })
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
