//! `kostantq`: compute, enumerate, expand and cross-check the q-analog of
//! Kostant's partition function on the highest root.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad arguments,
//! 3 enumeration limit exceeded.

mod config;
mod render;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use kostant_core::closed_form::closed_value;
use kostant_core::genfun::genfun_for;
use kostant_core::oracle::{enumerate_partitions, highest_root_count, DEFAULT_ENUMERATION_LIMIT};
use kostant_core::recurrences::RecurrenceTable;
use kostant_core::root_systems::{highest_root, positive_roots};
use kostant_core::verify::{
    verify_family, verify_family_with, MethodSource, OracleBudget, StandardSource,
    VerificationReport,
};
use kostant_core::{Family, LieType, Method, OracleError, QPolynomial, Variant, VerifyConfig};

use crate::config::FileSettings;
use crate::render::Format;

const BUDGET_ENV: &str = "KOSTANTQ_ORACLE_BUDGET";

#[derive(Parser)]
#[command(name = "kostantq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Oracle,
    Recurrence,
    Genfun,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Recurrence => Method::Recurrence,
            MethodArg::Genfun => Method::Genfun,
            MethodArg::Closed => Method::ClosedForm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Nonhooked,
    Hooked,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the polynomial for one Lie type.
    Compute {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// List every partition of the highest root, grouped by part count.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Expand the generating function of a family.
    Series {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        terms: usize,
        /// Evaluate each coefficient at q = 1.
        #[arg(long)]
        q1: bool,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Cross-check methods against each other over a range of ranks.
    Verify {
        /// Families to check; all four by default.
        #[arg(long, value_delimiter = ',')]
        family: Vec<Family>,
        /// Highest rank checked; defaults to the family's oracle budget.
        #[arg(long)]
        max_rank: Option<u32>,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "oracle,recurrence,genfun,closed"
        )]
        methods: Vec<MethodArg>,
        /// `key = value` settings file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Highest rank at which the oracle runs, for every family.
        #[arg(long)]
        oracle_budget: Option<u32>,
        /// Per-evaluation oracle time cap in seconds; 0 disables it.
        #[arg(long)]
        oracle_timeout_secs: Option<u64>,
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Perturb recurrence values from this rank on.
        #[arg(long, hide = true)]
        inject_fault: Option<u32>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    BadArgs(String),
    #[error("{0}")]
    Limit(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn bad(e: impl ToString) -> Self {
        CliError::BadArgs(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::BadArgs(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<ExitCode, CliError> {
    match command {
        Command::Compute {
            family,
            rank,
            method,
            format,
        } => {
            let t = LieType::new(family, rank).map_err(CliError::bad)?;
            let method = Method::from(method);
            let value = compute(t, method)?;
            render::compute(out, format, t, method, &value)?;
        }
        Command::Enumerate {
            family,
            rank,
            limit,
            format,
        } => {
            let t = LieType::new(family, rank).map_err(CliError::bad)?;
            let parts = enumerate_partitions(&positive_roots(t), &highest_root(t), limit).map_err(
                |OracleError::LimitExceeded { count, limit }| {
                    CliError::Limit(format!(
                        "{t} has {count} partitions, above the limit of {limit}"
                    ))
                },
            )?;
            render::enumeration(out, format, t, &parts)?;
        }
        Command::Series {
            family,
            terms,
            q1,
            variant,
            format,
        } => {
            if terms == 0 {
                return Err(CliError::bad("--terms must be at least 1"));
            }
            let variant = match variant {
                VariantArg::Full => Variant::Full,
                VariantArg::Nonhooked => Variant::BNonhooked,
                VariantArg::Hooked => Variant::BHooked,
            };
            let gf = genfun_for(family, variant).map_err(CliError::bad)?;
            let series = gf.expand(terms);
            render::series(out, format, family, q1, &series)?;
        }
        Command::Verify {
            family,
            max_rank,
            methods,
            config,
            oracle_budget,
            oracle_timeout_secs,
            sequential,
            format,
            inject_fault,
        } => {
            let settings = match &config {
                Some(path) => FileSettings::load(path).map_err(CliError::bad)?,
                None => FileSettings::default(),
            };
            let mut cfg = VerifyConfig::default();
            settings.apply_budget(&mut cfg.oracle_budget);
            if let Some(t) = settings.timeout {
                cfg.oracle_deadline = t;
            }
            if let Some(p) = settings.parallel {
                cfg.parallel = p;
            }
            if let Ok(raw) = std::env::var(BUDGET_ENV) {
                let cap = raw.trim().parse::<u32>().map_err(|_| {
                    CliError::bad(format!("{BUDGET_ENV} must be an integer rank, got `{raw}`"))
                })?;
                cfg.oracle_budget = OracleBudget::uniform(cap);
            }
            if let Some(cap) = oracle_budget {
                cfg.oracle_budget = OracleBudget::uniform(cap);
            }
            if let Some(secs) = oracle_timeout_secs {
                cfg.oracle_deadline = (secs > 0).then(|| Duration::from_secs(secs));
            }
            if sequential {
                cfg.parallel = false;
            }
            let families = if family.is_empty() {
                Family::ALL.to_vec()
            } else {
                family
            };
            let methods: Vec<Method> = methods.into_iter().map(Method::from).collect();
            let max_rank = max_rank.or(settings.max_rank);

            let mut reports = Vec::new();
            for f in families {
                let top = max_rank.unwrap_or_else(|| cfg.oracle_budget.get(f).max(f.min_rank()));
                let report = match inject_fault {
                    None => verify_family(f, top, &methods, &cfg),
                    Some(from_rank) => {
                        let inner = StandardSource::prepare(f, top, cfg.clone());
                        let faulty = Faulty { inner, from_rank };
                        verify_family_with(&faulty, f, top, &methods, cfg.parallel)
                    }
                }
                .map_err(CliError::bad)?;
                reports.push(report);
            }
            render::reports(out, format, &reports)?;
            let failed = reports.iter().any(|r| !VerificationReport::passed(r));
            return Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn compute(t: LieType, method: Method) -> Result<QPolynomial, CliError> {
    match method {
        Method::Oracle => Ok(highest_root_count(t)),
        Method::Recurrence => Ok(RecurrenceTable::new().value(t)),
        Method::Genfun => {
            let gf = genfun_for(t.family(), Variant::Full).map_err(|_| {
                CliError::bad(format!("no generating function for type {}", t.family()))
            })?;
            Ok(gf.term(t.rank() as usize))
        }
        Method::ClosedForm => closed_value(t.family(), t.rank()).map_err(CliError::bad),
    }
}

/// Self-test hook for the verifier: adds 1 to recurrence values at and
/// above `from_rank`.
struct Faulty {
    inner: StandardSource,
    from_rank: u32,
}

impl MethodSource for Faulty {
    fn evaluate(&self, method: Method, t: LieType) -> Result<QPolynomial, String> {
        let v = self.inner.evaluate(method, t)?;
        if method == Method::Recurrence && t.rank() >= self.from_rank {
            return Ok(&v + &QPolynomial::one());
        }
        Ok(v)
    }
}
