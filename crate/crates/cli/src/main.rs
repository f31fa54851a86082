mod commands;
mod report;
mod scenario;

use clap::{Args, Parser, Subcommand};
use kummer_core::fixlocus::FiberConfig;
use kummer_core::mukai::MukaiVector;
use kummer_core::reptheory::{GaloisAction, GeneratorSpec};
use kummer_core::Exec;
use report::{digest, select, CliReport};
use scenario::{Scenario, SurfaceSpec};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kummer", version, about = "Torsion-level checks for generalized Kummer moduli spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Default)]
struct Opts {
    /// Scenario file (JSON); inline flags override its fields
    #[arg(long, global = true)]
    scenario: Option<std::path::PathBuf>,
    /// Machine mode: JSON on stdout only, no summary on stderr
    #[arg(long, global = true)]
    json: bool,
    /// Torsion level N
    #[arg(long, global = true)]
    level: Option<u64>,
    /// Seed for the randomized parts of `grid`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the exhaustive scans; 1 runs sequentially
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    n1: Option<i64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    n2: Option<i64>,
    /// Rank of the Mukai vector
    #[arg(long, global = true, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Néron–Severi coordinates, comma separated; empty for l = 0
    #[arg(long, global = true, allow_hyphen_values = true)]
    l: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<i64>,
    /// Gram matrix rows separated by `;`, entries by `,`; defaults to [[2·n2/n1]] for one coordinate
    #[arg(long, global = true)]
    gram: Option<String>,
    #[arg(long, global = true)]
    d: Option<i64>,
    /// A point of A[3] as four comma-separated coordinates
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, global = true)]
    i1: Option<u64>,
    #[arg(long, global = true)]
    i2: Option<u64>,
    /// Preset action on A[N]: trivial, minus-one, half-sign, order-three
    #[arg(long, global = true)]
    action: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// The group G_A(v) of translations and twists
    #[command(subcommand)]
    Gav(GavCommand),
    /// Galois characters on middle cohomology
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
    /// Fixed-locus and singular-fibre counts
    #[command(subcommand)]
    Fixlocus(FixlocusCommand),
    /// Torsion models of the surface
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Runs the full acceptance sweep
    Grid,
}

#[derive(Subcommand)]
enum GavCommand {
    Solve,
    Verify,
    Cases,
    Rouquier,
    Psi,
}

#[derive(Subcommand)]
enum CohomologyCommand {
    H4,
    MukaiSum,
    Compare,
}

#[derive(Subcommand)]
enum FixlocusCommand {
    Hudson,
    Ledger,
    K2,
    Euler,
}

#[derive(Subcommand)]
enum SurfaceCommand {
    Validate,
}

enum Failure {
    Usage(String),
    Domain(kummer_core::Error),
}

impl From<kummer_core::Error> for Failure {
    fn from(e: kummer_core::Error) -> Self {
        Failure::Domain(e)
    }
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<i64>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("--{flag}: {x:?} is not an integer"))))
        .collect()
}

fn preset_action(name: &str, level: u64) -> Result<GaloisAction, Failure> {
    let diag = |d: [i64; 4]| (0..4).map(|i| (0..4).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
    let m = match name {
        "trivial" => return Ok(GaloisAction::trivial(level)),
        "minus-one" => diag([-1; 4]),
        "half-sign" => diag([1, 1, -1, -1]),
        "order-three" => vec![vec![0, -1, 0, 0], vec![1, -1, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, -1]],
        other => return Err(Failure::Usage(format!("--action: unknown preset {other:?}"))),
    };
    Ok(GaloisAction::new(level, vec![GeneratorSpec::new("s", m)])?)
}

/// Scenario file (if any) with the inline flags applied on top.
fn assemble(opts: &Opts) -> Result<Scenario, Failure> {
    let mut s = match &opts.scenario {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Scenario::parse(&text, &path.display().to_string()).map_err(|e| Failure::Usage(e.to_string()))?
        }
        None => Scenario::default(),
    };
    if opts.n1.is_some() || opts.n2.is_some() {
        s.surface = Some(SurfaceSpec::Canonical { n1: opts.n1.unwrap_or(1), n2: opts.n2.unwrap_or(1) });
    }
    if opts.r.is_some() || opts.l.is_some() || opts.s.is_some() {
        let base = s.vector.clone();
        let r = opts.r.or(base.as_ref().map(|v| v.r())).unwrap_or(0);
        let sv = opts.s.or(base.as_ref().map(|v| v.s())).unwrap_or(0);
        let l = match &opts.l {
            Some(text) => parse_list("l", text)?,
            None => base.as_ref().map(|v| v.l().to_vec()).unwrap_or_default(),
        };
        let gram = match &opts.gram {
            Some(text) => text.split(';').map(|row| parse_list("gram", row)).collect::<Result<Vec<_>, _>>()?,
            None if l.is_empty() => Vec::new(),
            None if l.len() == 1 => {
                let (n1, n2) = match &s.surface {
                    Some(SurfaceSpec::Canonical { n1, n2 }) if *n1 > 0 => (*n1, *n2),
                    _ => return Err(Failure::Usage("--gram is needed unless --n1, --n2 fix it".into())),
                };
                vec![vec![2 * n2 / n1]]
            }
            None => match &base {
                Some(v) if v.l().len() == l.len() => v.gram().to_vec(),
                _ => return Err(Failure::Usage("--gram is needed for this l".into())),
            },
        };
        s.vector = Some(MukaiVector::new(r, l, sv, gram)?);
    }
    if opts.d.is_some() {
        s.d = opts.d;
    }
    if opts.level.is_some() {
        s.level = opts.level;
    }
    if let Some(text) = &opts.tau {
        let t = parse_list("tau", text)?;
        s.tau = Some(t.try_into().map_err(|_| Failure::Usage("--tau needs four coordinates".into()))?);
    }
    if opts.i1.is_some() || opts.i2.is_some() {
        s.fibers = Some(FiberConfig { i1: opts.i1.unwrap_or(0), i2: opts.i2.unwrap_or(0) });
    }
    if let Some(name) = &opts.action {
        let level = s.level.or(s.action.as_ref().map(|a| a.level)).unwrap_or(3);
        s.action = Some(preset_action(name, level)?);
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<CliReport, Failure> {
    let opts = &cli.opts;
    let exec = match opts.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be positive".into())),
        Some(1) => Exec::Sequential,
        Some(n) => {
            kummer_core::exec::set_threads(n);
            Exec::Parallel
        }
        None => Exec::Parallel,
    };
    if let Command::Grid = cli.command {
        let (report, payload) = commands::run_grid(opts.seed, exec)?;
        let d = digest(format!("grid seed={}", opts.seed).as_bytes());
        return Ok(CliReport::new("grid", d, report, payload));
    }
    let s = assemble(opts)?;
    let (name, outcome) = match &cli.command {
        Command::Gav(c) => match c {
            GavCommand::Solve => ("gav solve", commands::gav_solve(&s)),
            GavCommand::Verify => ("gav verify", commands::gav_verify(&s, exec)),
            GavCommand::Cases => ("gav cases", commands::gav_cases(&s)),
            GavCommand::Rouquier => ("gav rouquier", commands::gav_rouquier(&s)),
            GavCommand::Psi => ("gav psi", commands::gav_psi(&s)),
        },
        Command::Cohomology(c) => match c {
            CohomologyCommand::H4 => ("cohomology h4", commands::cohomology_h4(&s)),
            CohomologyCommand::MukaiSum => ("cohomology mukai-sum", commands::cohomology_mukai_sum(&s)),
            CohomologyCommand::Compare => ("cohomology compare", commands::cohomology_compare(&s)),
        },
        Command::Fixlocus(c) => match c {
            FixlocusCommand::Hudson => ("fixlocus hudson", commands::fixlocus_hudson(&s)),
            FixlocusCommand::Ledger => ("fixlocus ledger", commands::fixlocus_ledger(&s)),
            FixlocusCommand::K2 => ("fixlocus k2", commands::fixlocus_k2(&s, exec)),
            FixlocusCommand::Euler => ("fixlocus euler", commands::fixlocus_euler(&s)),
        },
        Command::Surface(SurfaceCommand::Validate) => ("surface validate", commands::surface_validate(&s)),
        Command::Grid => unreachable!("handled above"),
    };
    let (report, payload) = outcome?;
    let report = select(report, s.checks.as_deref()).map_err(Failure::Usage)?;
    let canonical = serde_json::to_vec(&s).expect("scenario serializes");
    Ok(CliReport::new(name, digest(&canonical), report, payload))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if !cli.opts.json {
                eprintln!("{}", report.summary());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
