use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use polykmap_core::io::{gen_benchmark, render_kmap, PplaDocument};
use polykmap_core::polyfunc::first_mismatch;
use polykmap_core::{
    exact_search, minimize, Assignment, MinimizeConfig, MinimizeError, Mode, PolyExpr, PolyFunction,
};
use serde_json::json;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "polykmap", version, about = "Polymorphic K-map minimization")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a .ppla function and print the verified expression.
    Minimize {
        /// Input file, `-` or omitted for stdin.
        input: Option<PathBuf>,
        #[arg(long)]
        no_triples: bool,
        #[arg(long)]
        max_candidates: Option<usize>,
        #[arg(long)]
        max_arity: Option<usize>,
        /// Generate candidates on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, default_value_t = Format::Expr)]
        format: Format,
    },
    /// Check an expression (literal or file) against a .ppla function.
    Verify { input: PathBuf, expr: String },
    /// Evaluate an expression at one assignment.
    Eval {
        expr: String,
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Render the polymorphic K-map.
    Kmap { input: Option<PathBuf> },
    /// Write a benchmark pair such as `parity4/majority4`.
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smallest expression by exhaustive search (n <= 3).
    Exact {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = MinimizeConfig::default().budget)]
        budget: usize,
    },
    /// Start the workbench HTTP API.
    Serve {
        #[arg(long, env = "PORT", default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Expr,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

/// Failure with an exit code: 1 for a wrong answer, 2 for bad input.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            kind: "usage",
            message: e.to_string(),
        }
    }
    fn parse(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            kind: "parse",
            message: e.to_string(),
        }
    }
    fn mismatch(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 1,
            kind: "mismatch",
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 2,
            kind: "io",
            message: format!("{e:#}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            report(&Failure::usage(line.trim_start_matches("error: ")));
            return ExitCode::from(2);
        }
    };
    let mut out = io::stdout().lock();
    match run(cli.cmd, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            report(&f);
            ExitCode::from(f.code)
        }
    }
}

fn report(f: &Failure) {
    let message = f.message.replace('\n', " ");
    eprintln!("error kind={} message={:?}", f.kind, message);
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        None => read_stdin(),
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
    }
}

fn read_stdin() -> anyhow::Result<String> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .context("reading stdin")?;
    Ok(s)
}

fn load(path: Option<&Path>) -> Result<PplaDocument, Failure> {
    let text = read_input(path)?;
    PplaDocument::parse(&text).map_err(Failure::parse)
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .context("writing output")
        .map_err(Failure::from)
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    match cmd {
        Command::Minimize {
            input,
            no_triples,
            max_candidates,
            max_arity,
            sequential,
            format,
        } => {
            let f = load(input.as_deref())?.to_function();
            let mut cfg = MinimizeConfig {
                enable_triples: !no_triples,
                parallel: !sequential,
                ..MinimizeConfig::default()
            };
            if let Some(k) = max_candidates {
                cfg.max_candidates = k;
            }
            if let Some(n) = max_arity {
                cfg.max_arity = n;
            }
            cmd_minimize(&f, &cfg, format, out)
        }
        Command::Verify { input, expr } => {
            let f = load(Some(&input))?.to_function();
            let text = if Path::new(&expr).is_file() {
                read_input(Some(Path::new(&expr)))?
            } else {
                expr
            };
            let e: PolyExpr = text.trim().parse().map_err(Failure::parse)?;
            match first_mismatch(&e, &f).map_err(Failure::usage)? {
                None => write_out(out, "equivalent\n"),
                Some(m) => {
                    write_out(out, &format!("{m}\n"))?;
                    Err(Failure::mismatch(m))
                }
            }
        }
        Command::Eval { expr, input, mode } => {
            let e: PolyExpr = expr.parse().map_err(Failure::parse)?;
            let a: Assignment = input.parse().map_err(Failure::parse)?;
            let bit = |m| e.eval(&a, m).map(u8::from).map_err(Failure::usage);
            let text = match mode {
                ModeArg::One => bit(Mode::One)?.to_string(),
                ModeArg::Two => bit(Mode::Two)?.to_string(),
                ModeArg::Both => format!("{}/{}", bit(Mode::One)?, bit(Mode::Two)?),
            };
            write_out(out, &format!("{text}\n"))
        }
        Command::Kmap { input } => {
            let f = load(input.as_deref())?.to_function();
            write_out(out, &render_kmap(&f).map_err(Failure::usage)?)
        }
        Command::Gen { spec, output } => {
            let f = gen_benchmark(&spec).map_err(Failure::usage)?;
            let names = spec
                .split_once('/')
                .map(|(a, b)| (a.to_string(), b.to_string()));
            let text = PplaDocument::from_function(&f, names).serialize();
            match output {
                None => write_out(out, &text),
                Some(p) => fs::write(&p, text)
                    .with_context(|| format!("writing {}", p.display()))
                    .map_err(Failure::from),
            }
        }
        Command::Exact { input, budget } => {
            let f = load(input.as_deref())?.to_function();
            match exact_search(&f, budget).map_err(Failure::usage)? {
                Some(e) => {
                    let c = e.cost();
                    write_out(out, &format!("{e}\nnodes {}\n", c.node_count))
                }
                None => {
                    write_out(out, "budget exhausted\n")?;
                    Err(Failure {
                        code: 1,
                        kind: "budget",
                        message: format!("no expression within {budget} nodes"),
                    })
                }
            }
        }
        Command::Serve { port } => {
            tracing_subscriber::fmt::init();
            let rt = tokio::runtime::Runtime::new().context("starting runtime")?;
            rt.block_on(polykmap_workbench::serve(
                port,
                polykmap_workbench::ttl_from_env(),
            ))
            .context("serving")
            .map_err(Failure::from)
        }
    }
}

fn cmd_minimize(
    f: &PolyFunction,
    cfg: &MinimizeConfig,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let cover = minimize(f, cfg).map_err(|e| match e {
        MinimizeError::ArityOverLimit { .. } => Failure::usage(e),
        MinimizeError::Uncovered(_) => Failure {
            code: 1,
            kind: "uncovered",
            message: e.to_string(),
        },
        MinimizeError::Verification(_) => Failure::mismatch(e),
    })?;
    // minimize already verified; an independent recheck guards the exit code
    if let Some(m) = first_mismatch(&cover.expr, f).map_err(Failure::usage)? {
        return Err(Failure::mismatch(m));
    }
    let c = &cover.cost;
    let text = match format {
        Format::Json => {
            let terms: Vec<_> = cover.terms.iter().map(|t| t.view()).collect();
            let doc = json!({
                "schema": SCHEMA,
                "n": f.n(),
                "expr": cover.expr.to_string(),
                "cost": c,
                "trace": cover.trace().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "terms": terms,
                "pool": cover.stats,
                "verified": true,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Expr => {
            let mut s = format!("{}\n", cover.expr);
            s += &format!(
                "cost literals={} gates={} poly_gates={} depth={} nodes={}\n",
                c.literal_count, c.gate_count, c.poly_gate_count, c.depth, c.node_count
            );
            for (t, tag) in cover.terms.iter().zip(cover.trace()) {
                let cubes: Vec<_> = t.cubes.iter().map(ToString::to_string).collect();
                s += &format!("rule {tag} cubes={} term={}\n", cubes.join(","), t.expr);
            }
            s
        }
    };
    write_out(out, &text)
}
