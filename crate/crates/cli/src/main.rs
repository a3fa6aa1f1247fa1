//! `effcat`: run law suites, Arrow checks, witness searches and the proof
//! checker. Exit status is 0 on success, 1 when a check or proof fails and
//! 2 for usage or configuration errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use effcat::arrow::check_arrow_laws;
use effcat::instances::{MaybeKleisli, PartialMaps, StateMaps};
use effcat::laws::{self, LawConfig, LawReport, SUITES};
use effcat::proof::{check_paths, soundness};
use effcat::translation::check_translation;
use effcat::{CartesianEffectCategory, EffectCategory, Error};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "effcat", version, about = "Strict cartesian effect categories on finite sets")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the statement inventory exhaustively in one instance.
    Laws(LawArgs),
    /// Check the derived Arrow laws and search for a fanout that is not a product.
    Arrows(LawArgs),
    /// Check the partial-map / Maybe-Kleisli translation.
    Kleisli(CommonArgs),
    /// Search for a counterexample to one negative claim.
    Witness {
        /// A negative claim id, e.g. neg.parallelism.
        id: String,
        #[command(flatten)]
        common: InstanceArgs,
    },
    /// Check proof scripts (files or directories of .eqp files).
    Prove {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Also evaluate every valid goal in the partial and state models.
        #[arg(long)]
        soundness: bool,
        /// Object size bound for --soundness.
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the check inventory (also the default without a subcommand).
    Manifest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InstanceKind {
    Partial,
    State,
    KleisliMaybe,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time in reports (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CommonArgs {
    /// Largest carrier size.
    #[arg(long, default_value_t = 2)]
    max_size: usize,
    /// Largest hom set enumerated for one symbol.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_enum, default_value_t = InstanceKind::Partial)]
    instance: InstanceKind,
    /// Number of states for the state instance.
    #[arg(long, default_value_t = 2)]
    state_size: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct LawArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Suite to run (repeatable); all suites by default.
    #[arg(long)]
    suite: Vec<String>,
    /// Single check id to run (repeatable). For `arrows`, a bare number n means arrow.lawn.
    #[arg(long)]
    law: Vec<String>,
}

/// Everything one invocation reports.
#[derive(Serialize)]
struct Output<T: Serialize> {
    command: &'static str,
    ok: bool,
    reports: Vec<T>,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn config(c: &CommonArgs) -> Result<LawConfig, Usage> {
    if c.max_size == 0 {
        return Err(Usage("--max-size must be at least 1".into()));
    }
    if c.budget == 0 {
        return Err(Usage("--budget must be at least 1".into()));
    }
    Ok(LawConfig { max_size: c.max_size, budget: c.budget })
}

fn emit<T: Serialize>(out: &OutputArgs, command: &'static str, ok: bool, reports: Vec<T>, text: String) -> Result<bool, Usage> {
    let body = match out.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Output { command, ok, reports }).expect("serializable");
            s.push('\n');
            s
        }
    };
    match &out.out {
        Some(p) => std::fs::write(p, body).map_err(|e| Usage(format!("{}: {e}", p.display())))?,
        None => print!("{body}"),
    }
    Ok(ok)
}

fn timed<T>(timing: bool, f: impl FnOnce() -> Result<LawReport, T>) -> Result<LawReport, T> {
    let start = Instant::now();
    let mut r = f()?;
    if timing {
        r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

/// Runs `f` on the selected instance.
macro_rules! with_instance {
    ($args:expr, $inst:ident => $body:expr) => {{
        match $args.instance {
            InstanceKind::Partial => {
                let $inst = PartialMaps;
                $body
            }
            InstanceKind::KleisliMaybe => {
                let $inst = MaybeKleisli;
                $body
            }
            InstanceKind::State => {
                if $args.state_size == 0 {
                    return Err(Usage("--state-size must be at least 1".into()));
                }
                let $inst = StateMaps::new($args.state_size)?;
                $body
            }
        }
    }};
}

fn laws_cmd<I: CartesianEffectCategory>(inst: &I, a: &LawArgs, cfg: &LawConfig) -> Result<Vec<LawReport>, Usage> {
    let mut reports = Vec::new();
    if !a.law.is_empty() {
        for id in &a.law {
            if laws::spec(id).is_none() && laws::custom::info(id).is_none() {
                return Err(Usage(format!("unknown check id `{id}`")));
            }
        }
        reports.push(timed(a.inst.common.output.timing, || laws::run_suite(inst, "selected", &a.law, cfg))?);
        return Ok(reports);
    }
    let suites: Vec<String> = if a.suite.is_empty() || a.suite.iter().any(|s| s == "all") {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        a.suite.clone()
    };
    for s in &suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(Usage(format!("unknown suite `{s}`; known: {}", SUITES.join(", "))));
        }
        let ids = laws::suite_ids(s);
        reports.push(timed(a.inst.common.output.timing, || laws::run_suite(inst, s, &ids, cfg))?);
    }
    Ok(reports)
}

fn arrows_cmd<I: CartesianEffectCategory>(inst: &I, a: &LawArgs, cfg: &LawConfig) -> Result<LawReport, Usage> {
    let ids: Vec<String> = a
        .law
        .iter()
        .map(|l| if l.chars().all(|c| c.is_ascii_digit()) { format!("arrow.law{l}") } else { l.clone() })
        .collect();
    let only = if ids.is_empty() { None } else { Some(ids.as_slice()) };
    Ok(timed(a.inst.common.output.timing, || check_arrow_laws(inst, cfg, only))?)
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let Some(command) = cli.command else {
        print!("{}", laws::manifest_text());
        return Ok(true);
    };
    match command {
        Command::Manifest => {
            print!("{}", laws::manifest_text());
            Ok(true)
        }
        Command::Laws(a) => {
            let cfg = config(&a.inst.common)?;
            let reports = with_instance!(a.inst, inst => laws_cmd(&inst, &a, &cfg)?);
            let ok = reports.iter().all(LawReport::ok);
            let text: String = reports.iter().map(LawReport::to_text).collect::<Vec<_>>().join("\n");
            emit(&a.inst.common.output, "laws", ok, reports, text)
        }
        Command::Arrows(a) => {
            if !a.suite.is_empty() {
                return Err(Usage("`arrows` has a single suite; use --law to select checks".into()));
            }
            let cfg = config(&a.inst.common)?;
            let report = with_instance!(a.inst, inst => arrows_cmd(&inst, &a, &cfg)?);
            let ok = report.ok();
            let text = report.to_text();
            emit(&a.inst.common.output, "arrows", ok, vec![report], text)
        }
        Command::Kleisli(c) => {
            let cfg = config(&c)?;
            let report = timed(c.output.timing, || check_translation(&cfg))?;
            let ok = report.ok();
            let text = report.to_text();
            emit(&c.output, "kleisli", ok, vec![report], text)
        }
        Command::Witness { id, common } => {
            let cfg = config(&common.common)?;
            if !laws::spec(&id).is_some_and(|s| s.kind == effcat::syntax::LawKind::Negative) {
                return Err(Usage(format!("`{id}` is not a negative claim")));
            }
            let report = with_instance!(common, inst => {
                let (check, _) = laws::run_check(&inst, &id, &cfg)?;
                LawReport::new("witness", inst.descriptor(), cfg.max_size, cfg.budget, vec![check])
            });
            let found = report.checks[0].witness.as_ref().is_some_and(|w| w.rechecked);
            let text = report.to_text();
            emit(&common.common.output, "witness", found, vec![report], text)
        }
        Command::Prove { paths, soundness: sound, max_size, output } => {
            let corpus = check_paths(&paths)?;
            let mut reports = vec![corpus.to_law_report()];
            let mut text = corpus.to_text();
            if sound {
                if max_size == 0 {
                    return Err(Usage("--max-size must be at least 1".into()));
                }
                let cfg = LawConfig { max_size, budget: 1_000_000 };
                let scripts = corpus.valid_scripts();
                let p = timed(output.timing, || soundness(&PartialMaps, &scripts, &cfg))?;
                let s = timed(output.timing, || soundness(&StateMaps::new(2)?, &scripts, &cfg))?;
                text.push('\n');
                text.push_str(&p.to_text());
                text.push('\n');
                text.push_str(&s.to_text());
                reports.push(p);
                reports.push(s);
            }
            let ok = reports.iter().all(LawReport::ok);
            emit(&output, "prove", ok, reports, text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("effcat: {msg}");
            ExitCode::from(2)
        }
    }
}
