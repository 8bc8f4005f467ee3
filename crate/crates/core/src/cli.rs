//! The `lpac` command-line tool.
//!
//! Exit codes: 0 accepted or done, 1 rejected (or input unsuitable for the
//! command), 2 unreadable or unparsable input.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::checker::{run_check, CheckOptions, Mode, Source, Status};
use crate::format::{parse_axioms, parse_proof, parse_target, serialize, ParseError, ProofDocument};
use crate::genbench::{generate_chain, ChainSpec, Flavor, Template};
use crate::miner::{compress_proof, FragmentationConfig, MineError};
use crate::stats::{peak_rss_kib, StatsReport};
use crate::Poly;

#[derive(Debug, Parser)]
#[command(name = "lpac", version, about = "Check and compress algebraic proof certificates with patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a proof against axioms and an optional target.
    Check(CheckArgs),
    /// Replace repeated fragments of a flat proof by patterns.
    Compress(CompressArgs),
    /// Generate benchmark proofs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print step counts of a proof without checking it.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub axioms: PathBuf,
    pub proof: PathBuf,
    pub target: Option<PathBuf>,
    /// Print a statistics row.
    #[arg(long)]
    pub stats: bool,
    /// Keep pattern bodies and replay every application.
    #[arg(long)]
    pub debug: bool,
    /// Print a single `STATUS=... STEP=... LINE=...` line.
    #[arg(long)]
    pub machine: bool,
    /// Allow pattern outputs that name an input.
    #[arg(long)]
    pub allow_input_outputs: bool,
}

#[derive(Debug, Args)]
pub struct CompressArgs {
    pub proof: PathBuf,
    pub out: PathBuf,
    /// Axioms the proof refers to.
    #[arg(long)]
    pub axioms: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub min_repeats: usize,
    #[arg(long, default_value_t = 8)]
    pub window: usize,
    /// Also write the JSON-lines report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// A chain of identical blocks deriving the target 1.
    Chain(ChainArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FlavorArg {
    Flat,
    Pattern,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TemplateArg {
    Resolution,
    Example1,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub blocks: usize,
    #[arg(long, value_enum, default_value_t = FlavorArg::Flat)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub out: PathBuf,
    /// File stem; defaults to `chain<blocks>-<flavor>`.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub arity: usize,
    /// Shared side literals per block.
    #[arg(long, default_value_t = 5)]
    pub side: usize,
    #[arg(long, value_enum, default_value_t = TemplateArg::Resolution)]
    pub template: TemplateArg,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub proof: PathBuf,
    #[arg(long)]
    pub axioms: Option<PathBuf>,
    /// Print JSON instead of a table row.
    #[arg(long)]
    pub json: bool,
}

enum Failure {
    Input(String),
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        let color = match std::env::var("LPAC_COLOR").as_deref() {
            Ok("1") => true,
            Ok("0") => false,
            _ => std::io::stderr().is_terminal(),
        };
        Style { color }
    }

    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_error(path: &Path, e: ParseError) -> Failure {
    Failure::Input(format!("{}:{e}", path.display()))
}

fn load_proof(path: &Path) -> Result<(ProofDocument, u64), Failure> {
    let text = read(path)?;
    let doc = parse_proof(&text).map_err(|e| parse_error(path, e))?;
    Ok((doc, text.len() as u64))
}

fn load_axioms(path: &Path) -> Result<(ProofDocument, u64), Failure> {
    let text = read(path)?;
    let doc = parse_axioms(&text).map_err(|e| parse_error(path, e))?;
    Ok((doc, text.len() as u64))
}

fn load_target(path: &Path) -> Result<Poly, Failure> {
    parse_target(&read(path)?).map_err(|e| parse_error(path, e))
}

pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let style = Style::detect();
    let result = match cli.command {
        Command::Check(args) => cmd_check(&args, &style),
        Command::Compress(args) => cmd_compress(&args),
        Command::Gen(GenCommand::Chain(args)) => cmd_gen_chain(&args),
        Command::Stats(args) => cmd_stats(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            let (Failure::Input(msg) | Failure::Rejected(msg)) = &failure;
            eprintln!("{} {msg}", style.paint("error:", "1;31"));
            ExitCode::from(failure.code())
        }
    }
}

fn cmd_check(args: &CheckArgs, style: &Style) -> Result<u8, Failure> {
    let started = Instant::now();
    let (axioms, axiom_bytes) = load_axioms(&args.axioms)?;
    let (proof, proof_bytes) = load_proof(&args.proof)?;
    let target = args.target.as_deref().map(load_target).transpose()?;
    let options = CheckOptions {
        mode: if args.debug { Mode::Debug } else { Mode::Strict },
        allow_input_outputs: args.allow_input_outputs,
    };
    let mut verdict = run_check(&axioms, &proof, target.as_ref(), options);

    if args.machine {
        println!("{}", verdict.summary_line());
    } else {
        match verdict.status {
            Status::Accepted => match &verdict.target_hit {
                Some(index) => println!("{}: target derived at step {index}", style.paint("accepted", "1;32")),
                None => println!("{}", style.paint("accepted", "1;32")),
            },
            Status::TargetNotFound => {
                eprintln!("{}: every step checks but the target is never derived", style.paint("rejected", "1;31"))
            }
            Status::Rejected => {
                let f = verdict.failure.as_ref().expect("rejection has a failure");
                let path = match f.source {
                    Source::Axioms => &args.axioms,
                    Source::Proof => &args.proof,
                };
                let line = f.line.map_or_else(String::new, |l| format!("line {l}: "));
                eprintln!(
                    "{}: {}: {line}step `{}`: {}",
                    style.paint("rejected", "1;31"),
                    path.display(),
                    f.label,
                    f.error
                );
            }
        }
        for w in &verdict.warnings {
            eprintln!("{} {w}", style.paint("warning:", "1;33"));
        }
        if args.debug && verdict.replayed_applies > 0 {
            println!("replayed {} pattern applications", verdict.replayed_applies);
        }
    }
    if args.stats {
        verdict.stats.file_bytes = axiom_bytes + proof_bytes;
        verdict.stats.wall_time_millis = started.elapsed().as_secs_f64() * 1e3;
        verdict.stats.peak_rss_kib = peak_rss_kib();
        println!("{}", verdict.stats);
    }
    Ok(if verdict.is_accepted() { 0 } else { 1 })
}

fn cmd_compress(args: &CompressArgs) -> Result<u8, Failure> {
    let axioms = match &args.axioms {
        Some(path) => load_axioms(path)?.0,
        None => ProofDocument::new(),
    };
    let (proof, _) = load_proof(&args.proof)?;
    let config = FragmentationConfig { min_repeats: args.min_repeats, window: args.window };
    let (out, report) = compress_proof(&axioms, &proof, config).map_err(|e| match e {
        MineError::UnbalancedMarkers { .. } => Failure::Input(format!("{}: {e}", args.proof.display())),
        other => Failure::Rejected(format!("{}: {other}", args.proof.display())),
    })?;
    fs::write(&args.out, serialize(&out)).map_err(|e| Failure::Input(format!("{}: {e}", args.out.display())))?;
    if let Some(path) = &args.report {
        fs::write(path, report.to_json_lines()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    println!(
        "fragments {}  hits {}  hit-rate {:.3}  new {}  apply {}  steps {} -> {} ({:+})",
        report.fragments,
        report.hits,
        report.hit_rate,
        report.pattern_new,
        report.pattern_apply,
        report.steps_before,
        report.steps_after,
        report.step_delta()
    );
    Ok(0)
}

fn cmd_gen_chain(args: &ChainArgs) -> Result<u8, Failure> {
    let spec = ChainSpec {
        blocks: args.blocks.max(1),
        arity: args.arity,
        seed: args.seed,
        side: args.side,
        template: match args.template {
            TemplateArg::Resolution => Template::Resolution,
            TemplateArg::Example1 => Template::Example1,
        },
    };
    let (flavor, label) = match args.flavor {
        FlavorArg::Flat => (Flavor::Flat, "flat"),
        FlavorArg::Pattern => (Flavor::Pattern, "pattern"),
    };
    let name = args.name.clone().unwrap_or_else(|| format!("chain{}-{label}", spec.blocks));
    let chain = generate_chain(&spec, flavor);
    let paths = chain.write(&args.out, &name).map_err(|e| Failure::Input(format!("{}: {e}", args.out.display())))?;
    for path in paths {
        println!("{}", path.display());
    }
    Ok(0)
}

fn cmd_stats(args: &StatsArgs) -> Result<u8, Failure> {
    let (proof, proof_bytes) = load_proof(&args.proof)?;
    let mut stats = StatsReport::scan(&proof);
    stats.file_bytes = proof_bytes;
    if let Some(path) = &args.axioms {
        let (axioms, bytes) = load_axioms(path)?;
        stats.merge(&StatsReport::scan(&axioms));
        stats.file_bytes += bytes;
    }
    if args.json {
        println!("{}", serde_json::to_string(&stats).expect("stats serialize"));
    } else {
        println!("{stats}");
    }
    Ok(0)
}
