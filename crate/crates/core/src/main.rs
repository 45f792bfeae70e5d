use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use reldp::chain::{bounded_finiteness, Bounds, Finiteness};
use reldp::parse::{parse_rdp, parse_trs, print_rdp};
use reldp::problem::RelativeDpp;
use reldp::processors::estimated_graph;
use reldp::proof::{prove, replay, ProofNode, Strategy};

/// Exit code for usage, input and I/O errors.
const ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "reldp", version, about = "Termination analysis with relative dependency pair problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a finiteness proof. Exit 0 finite, 1 not finite, 2 open.
    Prove {
        file: PathBuf,
        /// Strategy name (default, no-split, basic) or a JSON strategy file
        #[arg(long, default_value = "default")]
        strategy: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Time budget in seconds, overriding the strategy's
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Bounded search for a loop witnessing an infinite chain.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = Bounds::default().max_steps)]
        max_steps: usize,
        #[arg(long, default_value_t = Bounds::default().max_term_depth)]
        term_depth: usize,
        #[arg(long, default_value_t = Bounds::default().rewrite_budget)]
        rewrite_budget: usize,
    },
    /// Print the initial problem of a .trs file.
    Dps { file: PathBuf },
    /// Print the estimated dependency graph.
    Graph {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Replay a JSON proof. Exit 0 iff every step checks.
    Check { proof: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// `.rdp` files are read as problems, everything else as a TRS whose
/// initial problem is taken.
fn load_problem(path: &Path) -> Result<RelativeDpp> {
    let text = read(path)?;
    let name = path.display();
    if path.extension().is_some_and(|e| e == "rdp") {
        return parse_rdp(&text).with_context(|| format!("{name}"));
    }
    let doc = parse_trs(&text).with_context(|| format!("{name}"))?;
    if !doc.weak.is_empty() {
        bail!("{name}: relative rules (->=) have no initial problem here; write the components to an .rdp file");
    }
    Ok(RelativeDpp::initial(&doc.strict))
}

fn load_strategy(name: &str) -> Result<Strategy> {
    if let Some(s) = Strategy::named(name) {
        return Ok(s);
    }
    let path = Path::new(name);
    if !path.exists() {
        bail!("unknown strategy {name}");
    }
    let s: Strategy =
        serde_json::from_str(&read(path)?).with_context(|| format!("{}: invalid strategy", path.display()))?;
    s.validate()?;
    Ok(s)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Prove {
            file,
            strategy,
            format,
            timeout,
        } => {
            let d = load_problem(&file)?;
            let mut s = load_strategy(&strategy)?;
            if let Some(t) = timeout {
                if t.is_nan() || t <= 0.0 {
                    bail!("timeout must be positive");
                }
                s.time_budget_ms = (t * 1000.0).ceil() as u64;
            }
            let proof = prove(&d, &s);
            let status = proof.status();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&proof)?),
                Format::Text => print!("{status}\n{}", proof.render()),
            }
            Ok(status.exit_code() as u8)
        }
        Command::Oracle {
            file,
            max_steps,
            term_depth,
            rewrite_budget,
        } => {
            let d = load_problem(&file)?;
            match bounded_finiteness(&d, Bounds::new(max_steps, term_depth, rewrite_budget)) {
                Finiteness::Finite => println!("Finite"),
                Finiteness::Unknown => println!("Unknown"),
                Finiteness::NotFinite(w) => {
                    println!("NotFinite");
                    println!("{}", serde_json::to_string_pretty(&w)?);
                }
            }
            Ok(0)
        }
        Command::Dps { file } => {
            let text = read(&file)?;
            let doc = parse_trs(&text).with_context(|| format!("{}", file.display()))?;
            if !doc.weak.is_empty() {
                bail!("{}: relative rules (->=) are not supported by dps", file.display());
            }
            print!("{}", print_rdp(&RelativeDpp::initial(&doc.strict)));
            Ok(0)
        }
        Command::Graph { file, dot } => {
            let g = estimated_graph(&load_problem(&file)?)?;
            if dot {
                print!("{}", g.to_dot());
            } else {
                for (i, (r, strict)) in g.nodes.iter().enumerate() {
                    let kind = if *strict { "strict" } else { "weak" };
                    println!("{i}: {r} ({kind})");
                }
                for (a, b) in &g.edges {
                    println!("{a} -> {b}");
                }
                println!("sccs: {:?}", g.sccs());
            }
            Ok(0)
        }
        Command::Check { proof } => {
            let text = read(&proof)?;
            let node: ProofNode =
                serde_json::from_str(&text).with_context(|| format!("{}: not a proof", proof.display()))?;
            match replay(&node) {
                Ok(()) => {
                    println!("ok: {}", node.status());
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("check failed: {e}");
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
