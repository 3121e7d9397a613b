use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use subalg_core::syntax::Session;
use subalg_core::Outcome;

mod commands;
mod report;

use report::Report;

/// Exact Galois completions, real-side verdicts and local geometry for
/// polynomial systems over number-field towers.
#[derive(Debug, Parser)]
#[command(name = "subalg", version)]
struct Cli {
    /// Session file with field, automorphism, group, poly, point and matrix
    /// declarations.
    session: PathBuf,
    #[command(subcommand)]
    command: Command,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    structured: bool,
    /// Exit with status 2 when a verdict is Unknown.
    #[arg(long, global = true)]
    strict: bool,
    /// Report elapsed time.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// g* and g• of one polynomial.
    CompletePoly { name: String },
    /// Products h and invariant coefficients G of a system.
    CompleteSystem { names: Vec<String> },
    /// Generator of the zero ideal of a geometric hypersurface from its factors.
    ZeroIdeal { names: Vec<String> },
    /// Geometric and reliable verdicts.
    Classify {
        name: String,
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
    },
    /// Bad set of a geometric polynomial.
    Badset {
        name: String,
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
    },
    /// Whether the real zero set of a system is defined over Q.
    DefinedOverQ { names: Vec<String> },
    /// Jacobian ideal of a hypersurface.
    Sing {
        name: String,
        /// Comma-separated generators to compare radicals with.
        #[arg(long)]
        against: Option<String>,
    },
    /// Minor ideal of a prime system.
    SingSystem {
        names: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        dim: Option<i64>,
        #[arg(long)]
        against: Option<String>,
    },
    /// Rank, tangent space and maximal ideal at a point.
    Tangent {
        names: Vec<String>,
        #[arg(long)]
        at: String,
    },
    /// Krull dimension.
    Dim { names: Vec<String> },
    /// Linear projection of a system.
    Project {
        names: Vec<String>,
        /// Session matrix A; its row count is the target dimension.
        #[arg(long)]
        matrix: Option<String>,
        /// Target dimension for a seeded search of a generic matrix.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        samples: Vec<String>,
    },
    /// Real and imaginary parts after z = x + i*y.
    RealStructure { names: Vec<String> },
    /// Factors of a univariate rational polynomial over the session field.
    Cluster { name: String },
}

impl Command {
    fn label(&self) -> &'static str {
        match self {
            Command::CompletePoly { .. } => "complete-poly",
            Command::CompleteSystem { .. } => "complete-system",
            Command::ZeroIdeal { .. } => "zero-ideal",
            Command::Classify { .. } => "classify",
            Command::Badset { .. } => "badset",
            Command::DefinedOverQ { .. } => "defined-over-q",
            Command::Sing { .. } => "sing",
            Command::SingSystem { .. } => "sing-system",
            Command::Tangent { .. } => "tangent",
            Command::Dim { .. } => "dim",
            Command::Project { .. } => "project",
            Command::RealStructure { .. } => "real-structure",
            Command::Cluster { .. } => "cluster",
        }
    }
}

fn run(s: &Session, cmd: &Command) -> subalg_core::Result<Report> {
    match cmd {
        Command::CompletePoly { name } => commands::complete_poly(s, name),
        Command::CompleteSystem { names } => commands::complete_system(s, names),
        Command::ZeroIdeal { names } => commands::zero_ideal(s, names),
        Command::Classify { name, factors } => commands::classify(s, name, factors),
        Command::Badset { name, factors } => commands::badset(s, name, factors),
        Command::DefinedOverQ { names } => commands::defined_over_q(s, names),
        Command::Sing { name, against } => commands::sing(s, name, against.as_deref()),
        Command::SingSystem { names, dim, against } => commands::sing_system(s, names, *dim, against.as_deref()),
        Command::Tangent { names, at } => commands::tangent(s, names, at),
        Command::Dim { names } => commands::dim(s, names),
        Command::Project { names, matrix, r, seed, samples } => {
            commands::project(s, names, matrix.as_deref(), *r, *seed, samples)
        }
        Command::RealStructure { names } => commands::real_structure(s, names),
        Command::Cluster { name } => commands::cluster(s, name),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let text = match std::fs::read_to_string(&cli.session) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.session.display());
            return ExitCode::from(1);
        }
    };
    let session = match Session::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let report = match run(&session, &cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let elapsed = start.elapsed();
    let rechecked: Vec<bool> = report.verdicts.iter().map(|(_, v)| v.recheck()).collect();
    if cli.structured {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(cli.command.label()));
        doc.insert("session".into(), json!(session.to_text()));
        doc.insert("results".into(), Value::Object(report.data.clone()));
        doc.insert("verdicts".into(), report.verdicts_json(&rechecked));
        if cli.timings {
            doc.insert("timings".into(), json!({ "total_us": elapsed.as_micros() as u64 }));
        }
        println!("{}", serde_json::to_string_pretty(&Value::Object(doc)).unwrap());
    } else {
        for l in &report.lines {
            println!("{l}");
        }
        for (name, v) in &report.verdicts {
            println!("{name}: {}", v.to_text());
        }
        if cli.timings {
            println!("time: {} us", elapsed.as_micros());
        }
    }
    if rechecked.iter().any(|ok| !ok) {
        eprintln!("error: a certificate failed its exact recheck");
        return ExitCode::from(3);
    }
    if cli.strict && report.verdicts.iter().any(|(_, v)| v.outcome == Outcome::Unknown) {
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
