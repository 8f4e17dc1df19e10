//! Command-line front end for the `p1omega` library.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod algebra_args;

use commands::Output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "p1omega", version, about = "S-integral point configurations on P^1, binary forms, H^1 and descent")]
struct Cli {
    /// Output format; csv is only available for flat tables.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Primitive forms of a degree and height bound with S-unit discriminant.
    Enumerate {
        #[arg(long)]
        degree: usize,
        /// Comma-separated primes; the empty string is S = {}.
        #[arg(long)]
        s: String,
        #[arg(long)]
        height: u64,
        /// Also partition the forms into GL2(Z_S)-orbits.
        #[arg(long)]
        orbits: bool,
        /// Height bound for the equivalence search between candidate orbits.
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    /// Partition a list of forms into GL2(Z_S)-orbits.
    Orbits {
        /// Forms separated by ';', e.g. "[1, 0, -1]; [0, 1, 0]".
        #[arg(long, required_unless_present = "input")]
        forms: Option<String>,
        /// JSON array of coefficient arrays.
        #[arg(long, conflicts_with = "forms")]
        input: Option<PathBuf>,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    /// Membership of a point set in Omega(P^1; S).
    OmegaTest {
        /// Points "a:b,c:d,...".
        #[arg(long)]
        points: String,
        #[arg(long)]
        s: String,
    },
    /// Factorization pattern of a form modulo primes.
    Reduce {
        /// Coefficients "[a_n, ..., a_0]".
        #[arg(long)]
        form: String,
        #[arg(long, required_unless_present = "max_prime")]
        p: Option<u64>,
        /// Every prime up to this bound.
        #[arg(long, conflicts_with = "p")]
        max_prime: Option<u64>,
    },
    /// First cohomology of a finite group acting on a module or group.
    H1 {
        /// z<m>, d<m> (dihedral of order 2m) or trivial.
        #[arg(long, required_unless_present = "input")]
        group: Option<String>,
        /// "Z^r;action=M" or "Z/m^r;action=M"; one action per generator,
        /// matrix rows separated by '/', entries by ','.
        #[arg(long, requires = "group")]
        module: Option<String>,
        /// JSON G-group {"g": {"mul"}, "a": {"mul"}, "action"}.
        #[arg(long, conflicts_with_all = ["group", "module"])]
        input: Option<PathBuf>,
    },
    /// Six-term exact sequence check for a JSON short exact sequence.
    SixTerm {
        #[arg(long)]
        input: PathBuf,
        /// Values of a cocycle in B; adds the twisted fibre check.
        #[arg(long)]
        twist: Option<String>,
    },
    /// Orbit descent report on Frobenius-stable n-sets of P^1(F_(q^k)).
    DescentReport {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
    },
}

/// Exit status for a library error: domain 1, usage 2, capacity 3.
fn exit_code(e: &p1omega::Error) -> u8 {
    match e {
        p1omega::Error::Capacity(_) => 3,
        p1omega::Error::Parse(_) => 2,
        _ => 1,
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("P1OMEGA_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("P1OMEGA_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("P1OMEGA_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> p1omega::Result<Output> {
    match cli.command {
        Command::Enumerate { degree, s, height, orbits, bound } => commands::enumerate(degree, &s, height, orbits, bound),
        Command::Orbits { forms, input, s, bound } => commands::orbits(forms.as_deref(), input.as_deref(), &s, bound),
        Command::OmegaTest { points, s } => commands::omega_test(&points, &s),
        Command::Reduce { form, p, max_prime } => commands::reduce(&form, p, max_prime),
        Command::H1 { group, module, input } => commands::h1(group.as_deref(), module.as_deref(), input.as_deref()),
        Command::SixTerm { input, twist } => commands::six_term(&input, twist.as_deref()),
        Command::DescentReport { n, q, k } => commands::descent_report(n, q, k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let (format, path) = (cli.format, cli.output.clone());
    let out = match run(cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match out.render(format) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match path {
        Some(p) => std::fs::write(&p, body.as_bytes()).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
