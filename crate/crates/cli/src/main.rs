use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use altcenter::algebras::{evaluate, families, random_assignment, select, Assignment};
use altcenter::catalog::{central_catalog, find, listed_identities};
use altcenter::freealt::{alt_dim, is_identity, required_degree, IdentityOpts, MultilinearBasis, Verdict, KNOWN_ALT_DIMS};
use altcenter::reproduce::{find_target, reproduce, run_check, targets, Outcome, Report, RunConfig, Status};
use altcenter::terms::{format, parse, Expr, GenSym, Parities};
use altcenter::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "altcenter", version, about = "Identities and central elements of free alternative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized evidence; echoed in every report.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Record per-check wall-clock times (reports are no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, default_value_t = 6)]
    degree_cap: usize,
    #[arg(long)]
    allow_deg7: bool,
    /// Limit on stored echelon entries.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, env = "ALTCENTER_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

impl EngineArgs {
    fn opts(&self) -> IdentityOpts {
        IdentityOpts {
            degree_cap: self.degree_cap,
            allow_deg7: self.allow_deg7,
            budget: self.budget,
            cache_dir: self.cache_dir.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an expression is an identity of all alternative (super)algebras.
    Check {
        #[arg(long)]
        expr: String,
        /// Comma-separated odd generators.
        #[arg(long, value_delimiter = ',')]
        odd: Vec<String>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Evaluate an expression or catalog entry in a finite-dimensional algebra.
    Eval {
        #[arg(long, conflicts_with = "entry", required_unless_present = "entry")]
        expr: Option<String>,
        /// Catalog entry name instead of an expression.
        #[arg(long)]
        entry: Option<String>,
        #[arg(long, value_delimiter = ',')]
        odd: Vec<String>,
        /// Algebra selector, e.g. octonion, medvedev:1, grassmann:4, envelope:3.
        #[arg(long, default_value = "octonion")]
        algebra: String,
        /// Values `name=element`, comma-separated, e.g. `e=v0,x=x,z=2*U-V`.
        /// Without it every generator gets a seeded random value.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
        #[arg(long, default_value_t = 7)]
        coeff_bound: u32,
    },
    /// Run a scripted reproduction target.
    Reproduce {
        #[arg(required_unless_present = "list")]
        target: Option<String>,
        /// List the registered targets.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        coeff_bound: u32,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Dimensions of the degree-d multilinear components.
    Dims {
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// List algebra families, catalog entries or the numbered identities.
    List { what: ListKind },
}

#[derive(Clone, Copy, ValueEnum)]
enum ListKind {
    Targets,
    Algebras,
    Catalog,
    Identities,
}

/// Either a report to print or plain output; errors carry an exit code.
enum Output {
    Report(Report),
    Plain { text: String, json: Value },
}

fn usage(e: Error) -> (Error, u8) {
    let code = if matches!(e, Error::ResourceCap(_)) { 3 } else { 2 };
    (e, code)
}

fn parse_expr(text: &str, odd: &[String]) -> Result<Expr, (Error, u8)> {
    let odd: Vec<&str> = odd.iter().map(String::as_str).collect();
    parse(text, &Parities::with_odd(&odd)).map_err(usage)
}

fn cmd_check(expr: &str, odd: &[String], engine: &EngineArgs, cfg: &RunConfig) -> Result<Output, (Error, u8)> {
    let e = parse_expr(expr, odd)?;
    let opts = engine.opts();
    let record = run_check(expr, cfg, || {
        Ok(match is_identity(&e, &opts)? {
            Verdict::Identity => Outcome::pass(format!("certified at polarized degree {}", required_degree(&e))),
            Verdict::NotIdentity { witness } => Outcome::fail(format(&witness), "normal form of the residue"),
        })
    });
    if record.status == Status::Skipped {
        return Err((Error::InvalidParameter(format!("{}; see --degree-cap and --allow-deg7", record.detail)), 2));
    }
    let input = json!({ "expr": expr, "odd": odd, "degree_cap": engine.degree_cap, "allow_deg7": engine.allow_deg7 });
    Ok(Output::Report(Report::new("check", input, cfg.seed, vec![record])))
}

fn cmd_eval(
    expr: Option<&str>,
    entry: Option<&str>,
    odd: &[String],
    algebra: &str,
    assign: &[String],
    coeff_bound: u32,
    cfg: &RunConfig,
) -> Result<Output, (Error, u8)> {
    let (e, shown) = match (expr, entry) {
        (Some(t), _) => (parse_expr(t, odd)?, t.to_string()),
        (None, Some(name)) => (find(name).and_then(|c| c.build()).map_err(usage)?, name.to_string()),
        (None, None) => unreachable!("clap requires one of --expr, --entry"),
    };
    let alg = select(algebra).map_err(usage)?;
    let gens: Vec<GenSym> = e.generators().into_iter().collect();
    let asg = if assign.is_empty() {
        random_assignment(cfg.seed, &gens, &alg, coeff_bound)
    } else {
        let mut asg = Assignment::new();
        for a in assign {
            let (name, value) = a
                .split_once('=')
                .ok_or_else(|| (Error::InvalidParameter(format!("expected name=element, got `{a}`")), 2))?;
            asg.set(name.trim(), alg.parse_element(value).map_err(usage)?);
        }
        asg
    };
    let value = evaluate(&e, &asg, &alg).map_err(usage)?;
    let echoed: BTreeMap<&str, String> =
        gens.iter().filter_map(|g| asg.get(g.name()).map(|v| (g.name(), alg.format(v)))).collect();
    let coords: Vec<String> = value.coords().iter().map(|c| c.to_string()).collect();
    let record = run_check("value", cfg, || Ok(Outcome::pass_with(alg.format(&value), format!("coordinates [{}]", coords.join(", ")))));
    let input = json!({ "expr": shown, "algebra": alg.name(), "assignment": echoed });
    Ok(Output::Report(Report::new("eval", input, cfg.seed, vec![record])))
}

fn cmd_dims(d: usize, engine: &EngineArgs, cfg: &RunConfig) -> Result<Output, (Error, u8)> {
    let opts = engine.opts();
    let ambient = MultilinearBasis::standard(d).map_err(usage)?.len();
    let dim = alt_dim(d, &opts).map_err(usage)?;
    let mut checks = vec![
        run_check("ambient", cfg, || Ok(Outcome::pass_with(ambient.to_string(), "d! times Catalan(d-1)"))),
        run_check("consequence rank", cfg, || Ok(Outcome::pass_with((ambient - dim).to_string(), ""))),
        run_check("alt_dim", cfg, || Ok(Outcome::pass_with(dim.to_string(), ""))),
    ];
    if let Some(&known) = KNOWN_ALT_DIMS.get(d.wrapping_sub(1)) {
        checks.push(run_check("matches frozen value", cfg, || {
            Ok(Outcome::from_bool(dim == known, Some(known.to_string()), ""))
        }));
    }
    Ok(Output::Report(Report::new("dims", json!({ "degree": d }), cfg.seed, checks)))
}

fn cmd_list(what: ListKind) -> Result<Output, (Error, u8)> {
    let (lines, json): (Vec<String>, Value) = match what {
        ListKind::Targets => {
            let ts = targets();
            (
                ts.iter().map(|t| format!("{:<16} {}", t.name(), t.summary())).collect(),
                ts.iter().map(|t| json!({ "name": t.name(), "summary": t.summary() })).collect(),
            )
        }
        ListKind::Algebras => {
            let fs = families();
            (
                fs.iter().map(|f| format!("{:<16} {}", f.name(), f.summary())).collect(),
                fs.iter().map(|f| json!({ "name": f.name(), "summary": f.summary(), "default_param": f.default_param() })).collect(),
            )
        }
        ListKind::Catalog => {
            let descs = central_catalog().iter().map(|c| c.describe()).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            (
                descs.iter().map(|d| format!("{:<18} {:<16} {}", d["name"].as_str().unwrap_or(""), d["expected"].as_str().unwrap_or(""), d["anchor"].as_str().unwrap_or(""))).collect(),
                Value::Array(descs),
            )
        }
        ListKind::Identities => {
            let ids = listed_identities();
            (
                ids.iter().map(|i| format!("({}) {}", i.label, i.display())).collect(),
                ids.iter().map(|i| json!({ "label": i.label, "text": i.display() })).collect(),
            )
        }
    };
    Ok(Output::Plain { text: lines.join("\n") + "\n", json })
}

fn run(cli: &Cli) -> Result<Output, (Error, u8)> {
    let base = RunConfig { seed: cli.seed, timings: cli.timings, ..RunConfig::default() };
    match &cli.command {
        Command::Check { expr, odd, engine } => cmd_check(expr, odd, engine, &base),
        Command::Eval { expr, entry, odd, algebra, assign, coeff_bound } => {
            cmd_eval(expr.as_deref(), entry.as_deref(), odd, algebra, assign, *coeff_bound, &base)
        }
        Command::Reproduce { list: true, .. } => cmd_list(ListKind::Targets),
        Command::Reproduce { target, k, m, trials, coeff_bound, engine, .. } => {
            let name = target.as_deref().unwrap_or_default();
            find_target(name).map_err(usage)?;
            let cfg = RunConfig { k: *k, m: *m, trials: *trials, coeff_bound: *coeff_bound, opts: engine.opts(), ..base };
            Ok(Output::Report(reproduce(name, &cfg).map_err(usage)?))
        }
        Command::Dims { degree, engine } => cmd_dims(*degree, engine, &base),
        Command::List { what } => cmd_list(*what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Report(r)) => {
            match cli.format {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", r.to_json()),
            }
            ExitCode::from(r.overall.exit_code() as u8)
        }
        Ok(Output::Plain { text, json }) => {
            match cli.format {
                Format::Text => print!("{text}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("serializes")),
            }
            ExitCode::SUCCESS
        }
        Err((e, code)) => {
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
