use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flagvec::claims::{self, format_table, ClaimReport, Params};
use flagvec::enumeration::{enumerate_graphs, one_manifolds};
use flagvec::flag::{self, ClosedForm, FlagEngine, Fit, GenericRule, LinkRule};
use flagvec::io;
use flagvec::rational::{format_rational, Q};
use flagvec::shelling::ShellingEngine;
use flagvec::{Error, FormalSum, Limits};

#[derive(Parser)]
#[command(name = "flagvec", version, about = "Flag vectors and shelling vectors of uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest vertex count any computation may use
    #[arg(long, global = true, env = "FLAGVEC_MAX_N", value_parser = clap::value_parser!(u64).range(0..=32))]
    max_n: Option<u64>,

    /// Write the main JSON document here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Closed-form link letters up to arity 3, quotient bases above
    Auto,
    Closed,
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// Flag vector of a hypergraph or formal sum read from JSON
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Shelling vector of a hypergraph or formal sum read from JSON
    Shelling {
        #[arg(long)]
        input: PathBuf,
    },
    /// Canonical relabeling of a hypergraph
    Canonicalize {
        #[arg(long)]
        input: PathBuf,
    },
    /// All hypergraphs of an arity on n vertices, up to isomorphism
    Enumerate {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        n: usize,
    },
    /// Rank of the flag vectors of all graphs of an arity on n vertices
    Rank {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Basis of formal sums with zero flag vector
    Nullspace {
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long)]
        n: usize,
        /// Restrict to unions of polygons
        #[arg(long)]
        manifold: bool,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Flag span modulo disjoint optional pairs
    Quotient {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Fit the component count of unions of polygons as a linear functional
    FitComponents {
        #[arg(long)]
        n: usize,
    },
    /// Run catalog checks
    Verify {
        #[arg(long, conflicts_with = "claim", required_unless_present_any = ["claim", "list"])]
        all: bool,
        #[arg(long)]
        claim: Option<String>,
        #[arg(long, requires = "claim")]
        n: Option<usize>,
        /// Print the catalog and exit
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Claim,
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TooLarge { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

enum Engine {
    Closed(FlagEngine<'static, ClosedForm>),
    Generic(FlagEngine<'static, GenericRule>),
}

macro_rules! with_engine {
    ($engine:expr, |$e:ident| $body:expr) => {
        match $engine {
            Engine::Closed($e) => $body,
            Engine::Generic($e) => $body,
        }
    };
}

fn engine(mode: Mode, arity: usize, n: usize, limits: &Limits) -> Result<Engine, Error> {
    let generic = match mode {
        Mode::Auto => arity > 3,
        Mode::Closed => false,
        Mode::Generic => true,
    };
    if generic {
        let rule = GenericRule::build(arity, n, limits)?;
        Ok(Engine::Generic(FlagEngine::new(rule, *limits)))
    } else {
        ClosedForm.letters(arity)?;
        Ok(Engine::Closed(FlagEngine::closed_form(*limits)))
    }
}

struct Ctx {
    format: Format,
    limits: Limits,
    output: Option<PathBuf>,
}

impl Ctx {
    /// Emits `doc` as JSON, or `table` as text.
    fn emit(&self, doc: &Value, table: impl FnOnce() -> String) -> Outcome {
        let text = match self.format {
            Format::Json => io::to_pretty(doc),
            Format::Table => table(),
        };
        match &self.output {
            Some(path) => fs::write(path, text + "\n")
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                print_line(text.trim_end());
                Ok(())
            }
        }
    }
}

/// A closed pipe (`flagvec ... | head`) is not an error.
fn print_line(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn max_vertices(s: &FormalSum) -> usize {
    s.terms().map(|(g, _)| g.nvertices()).max().unwrap_or(0)
}

fn sum_table(s: &FormalSum) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.terms()
        .map(|(g, c)| format!("{:>8}  {g}", format_rational(c)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Outcome {
    let mut limits = Limits::default();
    if let Some(n) = cli.max_n {
        limits = limits.with_max_vertices(n as usize);
        limits.max_shelling_vertices = limits.max_shelling_vertices.min(n as usize);
    }
    let ctx = Ctx {
        format: cli.format,
        limits,
        output: cli.output,
    };
    match cli.command {
        Command::Compute { input, mode } => {
            let sum = io::parse_graph_or_sum(&read(&input)?)?;
            let e = engine(mode, sum.arity(), max_vertices(&sum), &ctx.limits)?;
            let f = with_engine!(&e, |e| e.flag_of_sum(&sum))?;
            ctx.emit(&io::word_vector_to_json(&f), || f.to_string())
        }
        Command::Shelling { input } => {
            let sum = io::parse_graph_or_sum(&read(&input)?)?;
            let s = ShellingEngine::new(ctx.limits).shelling_of_sum(&sum)?;
            let doc = json!({ "shelling": s.to_string(), "mass": format_rational(&s.mass()) });
            ctx.emit(&doc, || s.to_string())
        }
        Command::Canonicalize { input } => {
            let g = io::parse_hypergraph(&read(&input)?)?;
            let c = g.canonical()?;
            ctx.emit(&io::hypergraph_to_json(&c), || c.to_string())
        }
        Command::Enumerate { arity, n } => {
            ctx.limits.check_vertices(n)?;
            let family = enumerate_graphs(arity, n, &ctx.limits)?;
            let doc = io::family_to_json(&family.members);
            ctx.emit(&doc, || {
                let mut out = format!("{} classes\n", family.len());
                for g in &family.members {
                    out.push_str(&format!("{g}\n"));
                }
                out
            })?;
            if ctx.output.is_some() {
                print_line(&family.len().to_string());
            }
            Ok(())
        }
        Command::Rank { arity, n, mode } => {
            let e = engine(mode, arity, n, &ctx.limits)?;
            let rank = with_engine!(&e, |e| flag::flag_span_rank(arity, n, e))?;
            ctx.emit(&json!(rank), || rank.to_string())
        }
        Command::Nullspace { arity, n, manifold, mode } => {
            let e = engine(mode, if manifold { 2 } else { arity }, n, &ctx.limits)?;
            let basis = if manifold {
                with_engine!(&e, |e| flag::manifold_nullspace(n, e))?
            } else {
                with_engine!(&e, |e| flag::flag_nullspace(arity, n, e))?
            };
            let doc = Value::Array(basis.iter().map(io::formal_sum_to_json).collect());
            ctx.emit(&doc, || {
                let mut out = format!("dimension {}\n", basis.len());
                for (k, s) in basis.iter().enumerate() {
                    out.push_str(&format!("[{k}]\n{}\n", sum_table(s)));
                }
                out
            })
        }
        Command::Quotient { arity, n, mode } => {
            let e = engine(mode, arity, n, &ctx.limits)?;
            let b = with_engine!(&e, |e| flag::quotient_basis(arity, n, e))?;
            let words = |v: Vec<flagvec::WordVector>| v.iter().map(io::word_vector_to_json).collect::<Vec<_>>();
            let doc = json!({
                "arity": arity,
                "n": n,
                "dim": b.dim(),
                "span_dim": b.span_dim(),
                "relation_dim": b.relation_dim(),
                "span_basis": words(b.span_basis()),
                "relation_basis": words(b.relation_basis()),
            });
            ctx.emit(&doc, || {
                format!(
                    "quotient dim {} (span {}, relations {})",
                    b.dim(),
                    b.span_dim(),
                    b.relation_dim()
                )
            })
        }
        Command::FitComponents { n } => {
            ctx.limits.check_vertices(n)?;
            let (graphs, comps): (Vec<_>, Vec<usize>) = one_manifolds(n)?.into_iter().unzip();
            let targets: Vec<Q> = comps.iter().map(|&c| Q::from_integer(c.into())).collect();
            let e = FlagEngine::closed_form(ctx.limits);
            match flag::fit_linear_functional(&graphs, &targets, &e)? {
                Fit::Feasible(w) => {
                    let doc = json!({
                        "n": n,
                        "graphs": io::family_to_json(&graphs),
                        "components": comps,
                        "functional": io::word_vector_to_json(&w),
                    });
                    ctx.emit(&doc, || w.to_string())
                }
                Fit::Infeasible { certificate } => {
                    let cert: Vec<String> = certificate.iter().map(format_rational).collect();
                    ctx.emit(&json!({ "n": n, "infeasible": cert }), || format!("infeasible: {cert:?}"))?;
                    Err(Failure::Claim)
                }
            }
        }
        Command::Verify { all, claim, n, list } => {
            if list {
                let doc: Vec<Value> = claims::catalog()
                    .iter()
                    .map(|c| json!({ "id": c.id, "summary": c.summary, "report_only": c.report_only }))
                    .collect();
                return ctx.emit(&Value::Array(doc), || {
                    claims::catalog()
                        .iter()
                        .map(|c| format!("{:<24} {}", c.id, c.summary))
                        .collect::<Vec<_>>()
                        .join("\n")
                });
            }
            let reports: Vec<ClaimReport> = match (all, claim) {
                (true, _) => claims::run_all(&ctx.limits, None)?,
                (false, Some(id)) => vec![claims::run_claim(&id, Params { n }, &ctx.limits)?],
                (false, None) => unreachable!("clap requires --all or --claim"),
            };
            let doc = Value::Array(reports.iter().map(|r| r.to_json(true)).collect());
            ctx.emit(&doc, || format_table(&reports))?;
            if reports.iter().any(ClaimReport::is_failure) {
                Err(Failure::Claim)
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
