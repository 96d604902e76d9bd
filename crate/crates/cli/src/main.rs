//! `scarflab`: command-line front end.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Emitted, Family, FvectorMethod, Method, Scale};
use output::{render_json, Format, Table};

#[derive(Parser)]
#[command(name = "scarflab", version, about = "Scarf complexes of powers of extremal ideals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the lattice points of degree r in q coordinates.
    Points {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: u32,
    },
    /// Decide whether a set of points is a Scarf face.
    CheckFace {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        /// Points as comma-separated coordinates.
        #[arg(required = true)]
        vertices: Vec<String>,
    },
    /// List the facets of the Scarf complex for r = 3.
    Facets {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        r: u32,
        #[arg(long, value_enum, default_value = "all")]
        family: Family,
    },
    /// Scarf betti-number counts, optionally against the L and Taylor counts.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        /// A degree `i` or an inclusive range `a..b`; defaults to 0 through pd.
        #[arg(long = "i")]
        degrees: Option<String>,
        #[arg(long)]
        compare: bool,
    },
    /// The f-vector of the Scarf complex for r = 3.
    Fvector {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "formula")]
        method: FvectorMethod,
    },
    /// Check the acyclic matching whose critical cells are the Scarf faces.
    MorseVerify {
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value = "full")]
        scale: Scale,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// CSV of Scarf, L and Taylor counts for plotting.
    PlotData {
        #[arg(long, num_args = 1.., required = true)]
        q: Vec<u64>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Invariant(String),
    Io(String),
}

impl From<scarflab::Error> for CliError {
    fn from(e: scarflab::Error) -> Self {
        use scarflab::Error::*;
        match e {
            Domain(_) | Unsupported(_) => CliError::Usage(e.to_string()),
            Resource(_) => CliError::Resource(e.to_string()),
            Invariant(_) => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Invariant(_) | CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) | CliError::Invariant(m) | CliError::Io(m) => m,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SCARFLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SCARFLAB_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write_table(table: &Table, out: impl Write) -> Result<(), CliError> {
    table.write_to(out).map_err(|e| CliError::Io(e.to_string()))
}

/// Writes a command's output and reports whether its cross-checks held.
fn print(command: &str, format: Format, emitted: Emitted) -> Result<bool, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match (format, &emitted.table) {
        (Format::Csv, Some(table)) => write_table(table, &mut out)?,
        (Format::Csv, None) => {
            return Err(CliError::Usage(format!("{command} has no CSV form; use --format json")));
        }
        (Format::Json, _) => out.write_all(render_json(command, emitted.consistent, &emitted.json).as_bytes())?,
    }
    out.flush()?;
    Ok(emitted.consistent)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let format = cli.format;
    let (name, emitted) = match cli.command {
        Command::Points { q, r } => {
            if q == 0 {
                return Err(CliError::Usage("q must be at least 1".into()));
            }
            ("points", commands::points(q, r)?)
        }
        Command::CheckFace { q, r, method, vertices } => {
            if q == 0 {
                return Err(CliError::Usage("q must be at least 1".into()));
            }
            ("check-face", commands::check_face(q, r, &vertices, method)?)
        }
        Command::Facets { q, r, family } => ("facets", commands::facets(q, r, family)?),
        Command::Bounds { q, r, degrees, compare } => {
            let degrees = degrees.as_deref().map(commands::parse_degrees).transpose()?;
            ("bounds", commands::bounds(q, r, degrees, compare)?)
        }
        Command::Fvector { q, method } => ("fvector", commands::fvector(q, method)?),
        Command::MorseVerify { q, scale, samples, seed } => {
            ("morse-verify", commands::morse_verify(q, scale, samples, seed)?)
        }
        Command::PlotData { q, out } => {
            let table = commands::plot_data(&q)?;
            match out {
                Some(path) => write_table(&table, BufWriter::new(File::create(path)?))?,
                None => write_table(&table, io::stdout().lock())?,
            }
            return Ok(true);
        }
    };
    print(name, format, emitted)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("scarflab: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
