use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use aperylike::asymptotics::PrecisionConfig;
use aperylike_cli::commands::{self, QSeriesTarget};
use aperylike_cli::reproduce::{reproduce, ReproduceOptions, TABLE_IDS};
use aperylike_cli::{default_digits, parse_primes, with_jobs, RunReport, SeqRef};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "aperylike", version, about = "Exact generation and verification of Apery-like sequences")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeqArgs {
    /// Catalog key, e.g. `level11`, `14C`, `apery`.
    #[arg(long)]
    seq: Option<String>,
    /// JSON sequence definition file.
    #[arg(long, value_name = "FILE")]
    def: Option<String>,
}

impl SeqArgs {
    fn resolve(&self) -> aperylike::Result<SeqRef> {
        SeqRef::resolve(self.seq.as_deref(), self.def.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print T(0..=nmax).
    Terms {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Browse the sequence catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check modular parametrisations and generating-function identities as q-series.
    VerifyQseries {
        /// Catalog key of one row.
        #[arg(long, conflicts_with_all = ["def", "all"])]
        level: Option<String>,
        /// Definition file; modular data comes from the catalog row of the same name or level.
        #[arg(long, value_name = "FILE", conflicts_with = "all")]
        def: Option<String>,
        /// Catalog rows plus every identity and generating-function check.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Check the eta-quotient identity bank.
    VerifyIdentities {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Lucas congruences T(pn+k) = T(n)T(k) mod p.
    Lucas {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, conflicts_with = "primes")]
        prime: Option<u64>,
        /// `2,3,5` or an inclusive range `2..101`.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
        /// All primes below 1000 with n < 50000, unless overridden.
        #[arg(long)]
        full: bool,
    },
    /// Supercongruences T(pn) = T(n) mod p^e, optionally against a named statement.
    Supercong {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        exp: Option<u32>,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        /// Name of a stated congruence with its exception pattern.
        #[arg(long)]
        pattern: Option<String>,
        /// List pattern names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Count n <= nmax with T(n) = 0 mod p, for each prime.
    Scan {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value = "2..101")]
        primes: String,
        #[arg(long, default_value_t = 1000)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Estimate R, b1 and C in T(n) ~ C R^n n^(-3/2) (1 + b1/n + ...).
    Asymptotics {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 2000)]
        terms: usize,
        #[arg(long, default_value_t = 8)]
        diffs: usize,
        /// Working precision (default: $APERY_DIGITS or 60).
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Recompute a reference table and compare it cell by cell.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(TABLE_IDS))]
        table: String,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long)]
        digits: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    Show {
        key: String,
    },
    /// All entries as sequence definitions.
    Export {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// What a command prints.
enum Output {
    Report(RunReport),
    Text(String),
}

fn precision(digits: Option<usize>) -> PrecisionConfig {
    PrecisionConfig::with_digits(digits.unwrap_or_else(default_digits))
}

fn run(cmd: Command) -> aperylike::Result<Output> {
    use Output::{Report, Text};
    Ok(match cmd {
        Command::Terms { seq, nmax, format } => {
            let s = seq.resolve()?;
            match format {
                Format::Json => Report(commands::terms(&s, nmax)?),
                Format::Csv => Text(commands::terms_csv(&s, nmax)?),
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { format: Format::Json } => Report(commands::catalog_list()),
            CatalogAction::List { format: Format::Csv } => Text(commands::catalog_list_csv()),
            CatalogAction::Show { key } => Report(commands::catalog_show(&key)?),
            CatalogAction::Export { format: Format::Json } => Text(commands::catalog_export() + "\n"),
            CatalogAction::Export { format: Format::Csv } => {
                return Err(aperylike::Error::Invalid("export supports only --format json".into()))
            }
        },
        Command::VerifyQseries { level, def, all, order } => {
            let file = def.as_deref().map(SeqRef::from_file).transpose()?;
            let target = match (&level, &file, all) {
                (Some(k), _, _) => QSeriesTarget::Entry(k),
                (None, Some(f), _) => QSeriesTarget::Def(f),
                (None, None, true) => QSeriesTarget::All,
                (None, None, false) => QSeriesTarget::Catalog,
            };
            Report(commands::verify_qseries(target, order)?)
        }
        Command::VerifyIdentities { name, order } => Report(commands::verify_identities(name.as_deref(), order)?),
        Command::Lucas { seq, prime, primes, nmax, full } => {
            let s = seq.resolve()?;
            let primes = match (prime, primes) {
                (Some(p), _) => parse_primes(&p.to_string())?,
                (None, Some(list)) => parse_primes(&list)?,
                (None, None) if full => parse_primes("2..999")?,
                (None, None) => parse_primes("2..100")?,
            };
            let nmax = nmax.unwrap_or(if full { 49_999 } else { 1000 });
            Report(commands::lucas(&s, &primes, nmax)?)
        }
        Command::Supercong { seq, prime, exp, nmax, pattern, list } => {
            if list {
                return Ok(Text(commands::pattern_names().join("\n") + "\n"));
            }
            Report(commands::supercong(&seq.resolve()?, prime, exp, nmax, pattern.as_deref())?)
        }
        Command::Scan { seq, primes, nmax, format } => {
            let s = seq.resolve()?;
            let primes = parse_primes(&primes)?;
            match format {
                Format::Json => Report(commands::scan(&s, &primes, nmax)?),
                Format::Csv => Text(commands::scan_csv(&s, &primes, nmax)?),
            }
        }
        Command::Asymptotics { seq, terms, diffs, digits } => {
            let cfg = PrecisionConfig { terms, diffs, ..precision(digits) };
            Report(commands::asymptotics(&seq.resolve()?, &cfg)?)
        }
        Command::Reproduce { table, nmax, primes, order, digits } => {
            let opts = ReproduceOptions {
                order,
                n_max: nmax,
                primes: primes.as_deref().map(parse_primes).transpose()?,
                asymptotics: precision(digits),
            };
            Report(reproduce(&table, &opts)?)
        }
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match with_jobs(cli.jobs, || run(cli.command)) {
        Ok(Output::Report(mut r)) => {
            if cli.timing {
                r.wall_time = Some(format!("{:.3}", start.elapsed().as_secs_f64()));
            }
            emit(&(r.to_json() + "\n"));
            ExitCode::from(r.outcome.exit_code() as u8)
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
