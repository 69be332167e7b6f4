//! `lgdim`: dimensions, Ziegler spectra and acceptance checks from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lgdim::boolspace::OrdinalSpace;
use lgdim::dimension::{self, CollapseClass, DimensionResult};
use lgdim::lgroup::LGroup;
use lgdim::ordinal::Ordinal;
use lgdim::suite;
use lgdim::ziegler::{self, pp, spectrum::Spectrum};

use report::{render_table, Report, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "lgdim", version, about = "Ordinal dimensions and Ziegler spectra of Bezout domains, computed from value groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Two,
    Chain,
}

impl From<ClassArg> for CollapseClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Two => CollapseClass::Two,
            ClassArg::Chain => CollapseClass::Chain,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, superdecomposability and Ziegler CB bounds of one value group.
    Classify {
        #[arg(long)]
        gamma: String,
    },
    /// m-dimension of the positive cone.
    Mdim {
        #[arg(long)]
        gamma: String,
    },
    /// Breadth of the positive cone.
    Breadth {
        #[arg(long)]
        gamma: String,
    },
    /// The collapse chain for TWO (m-dimension) or CHAIN (breadth).
    Chain {
        #[arg(long)]
        gamma: String,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Cantor-Bendixson rank of the ordinal space [0, top].
    CbrankSpace {
        #[arg(long)]
        top: String,
    },
    /// Points of the Ziegler spectrum with parameters up to a bound.
    Zg {
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Also stratify the points into Cantor-Bendixson layers.
        #[arg(long)]
        stratify: bool,
    },
    /// Compare two pp-1-formulas, written `sum((c;d),...)`.
    Leq {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Ranks of the multiplication primes and the CB rank of Spec*.
    SpecStar {
        #[arg(long)]
        gamma: String,
    },
    /// Run acceptance checks, all of them or those carrying a tag.
    Check {
        #[arg(long, num_args = 0..=1, default_missing_value = "all")]
        suite: Option<String>,
    },
}

/// A failed command: the message and its exit code.
struct Failure(String, u8);

fn usage(e: impl ToString) -> Failure {
    Failure(e.to_string(), 2)
}

struct Outcome {
    gamma: Option<String>,
    method: String,
    result: Value,
    /// Exit code 1 when a check failed.
    failed: bool,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn parse_gamma(s: &str) -> Result<LGroup, Failure> {
    let g: LGroup = s.parse().map_err(|e| usage(format!("invalid gamma {s:?}: {e}")))?;
    g.validate().map_err(usage)?;
    Ok(g)
}

fn method_name(m: dimension::Method) -> String {
    to_value(m).as_str().expect("unit variant").to_string()
}

fn dimension_result(g: &LGroup, r: &DimensionResult) -> Value {
    let chain: Vec<Value> = r.chain.steps.iter().map(|s| json!({"alpha": s.alpha, "group": s.group.to_string()})).collect();
    json!({
        "gamma": g.to_string(),
        "value": r.value,
        "method": r.method,
        "terminal": r.chain.terminal,
        "terminal_alpha": r.chain.terminal_alpha,
        "elided": r.chain.elided,
        "chain": chain,
    })
}

fn dim_outcome(gamma: &str, class: CollapseClass) -> Result<Outcome, Failure> {
    let g = parse_gamma(gamma)?;
    let r = dimension::dimension_with_budget(&g, class, dimension::iteration_budget());
    Ok(Outcome { gamma: Some(g.to_string()), method: method_name(r.method), result: dimension_result(&g, &r), failed: false })
}

fn cbrank_space(top: &str) -> Result<Outcome, Failure> {
    let top: Ordinal = top.parse().map_err(|e| usage(format!("invalid ordinal {top:?}: {e}")))?;
    let space = OrdinalSpace::interval(top.clone());
    let rank = space.cb_rank().map_err(usage)?;
    let limit = dimension::iteration_budget() + 1;
    let chain: Vec<String> = space.derivative_chain(limit).iter().map(|x| x.top().map_or("empty".into(), |t| t.to_string())).collect();
    let elided = chain.last().map(String::as_str) != Some("empty");
    let result = json!({"top": top, "cb_rank": rank, "derivative_chain": chain, "elided": elided});
    Ok(Outcome { gamma: None, method: "closed-form".into(), result, failed: false })
}

fn zg(gamma: &str, bound: i64, stratify: bool) -> Result<Outcome, Failure> {
    let g = parse_gamma(gamma)?;
    if !(1..=64).contains(&bound) {
        return Err(usage("bound must lie in 1..=64"));
    }
    let sp = Spectrum::new(&g).map_err(usage)?;
    let lat = *sp.lattice();
    let lex2 = lat.is_lex() && lat.rank() == 2;
    let points = sp.points(bound).map_err(usage)?;
    let mut views = Vec::new();
    for p in &points {
        let (ra, rd) = ziegler::ass_div_rank(&g, p).map_err(usage)?;
        let invariant = p.invariant.map(|k| if lex2 { format!("({},{})", k[0], k[1]) } else { k[0].to_string() });
        views.push(json!({
            "family": p.family.to_string(),
            "invariant": invariant,
            "pair": p.pair.render(&lat),
            "ass": p.ass_hash.render(&lat),
            "div": p.div_hash.render(&lat),
            "rank_ass": ra,
            "rank_div": rd,
        }));
    }
    let cb = ziegler::cb_rank_zg(&g, bound, stratify).map_err(|e| Failure(e.to_string(), 1))?;
    let method = if stratify { "closed-form+stratification" } else { "closed-form" };
    let failed = !cb.agree;
    let result = json!({"gamma": g.to_string(), "bound": bound, "count": views.len(), "points": views, "cb": cb});
    Ok(Outcome { gamma: Some(g.to_string()), method: method.into(), result, failed })
}

fn leq(gamma: &str, lhs: &str, rhs: &str) -> Result<Outcome, Failure> {
    let g = parse_gamma(gamma)?;
    let phi = pp::parse_pp(&g, lhs).map_err(|e| usage(format!("invalid formula {lhs:?}: {e}")))?;
    let psi = pp::parse_pp(&g, rhs).map_err(|e| usage(format!("invalid formula {rhs:?}: {e}")))?;
    let le = pp::leq_pp(&g, &phi, &psi);
    let ge = pp::leq_pp(&g, &psi, &phi);
    let result = json!({"lhs": phi.to_string(), "rhs": psi.to_string(), "leq": le, "geq": ge, "equivalent": le && ge});
    Ok(Outcome { gamma: Some(g.to_string()), method: "order-criterion".into(), result, failed: false })
}

fn check(tag: Option<String>) -> Outcome {
    let tag = tag.unwrap_or_else(|| "all".into());
    let results = suite::run_suite(Some(&tag));
    if results.is_empty() {
        eprintln!("warning: no checks carry the tag {tag:?}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let result = json!({
        "suite": tag,
        "selected": results.len(),
        "passed": results.len() - failed,
        "failed": failed,
        "results": results,
    });
    Outcome { gamma: None, method: "acceptance-suite".into(), result, failed: failed > 0 }
}

fn run(cmd: Command) -> Result<(String, Outcome), Failure> {
    let out = match cmd {
        Command::Classify { gamma } => {
            let g = parse_gamma(&gamma)?;
            let r = ziegler::classify(&g);
            let method = r.zg_cb_method.clone().unwrap_or_else(|| "closed-form".into());
            ("classify", Outcome { gamma: Some(g.to_string()), method, result: to_value(&r), failed: false })
        }
        Command::Mdim { gamma } => ("mdim", dim_outcome(&gamma, CollapseClass::Two)?),
        Command::Breadth { gamma } => ("breadth", dim_outcome(&gamma, CollapseClass::Chain)?),
        Command::Chain { gamma, class } => ("chain", dim_outcome(&gamma, class.into())?),
        Command::CbrankSpace { top } => ("cbrank-space", cbrank_space(&top)?),
        Command::Zg { gamma, bound, stratify } => ("zg", zg(&gamma, bound, stratify)?),
        Command::Leq { gamma, lhs, rhs } => ("leq", leq(&gamma, &lhs, &rhs)?),
        Command::SpecStar { gamma } => {
            let g = parse_gamma(&gamma)?;
            let r = ziegler::spec_star_cb(&g).map_err(usage)?;
            ("spec-star", Outcome { gamma: Some(g.to_string()), method: "prime-ranks".into(), result: to_value(&r), failed: false })
        }
        Command::Check { suite } => ("check", check(suite)),
    };
    Ok((out.0.to_string(), out.1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli.command) {
        Ok((command, out)) => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command,
                gamma: out.gamma,
                method: out.method,
                timing_ms: start.elapsed().as_millis(),
                result: out.result,
            };
            let json = to_value(&report);
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json).expect("valid json") + "\n",
                Format::Table => render_table(&json),
            };
            // A closed pipe is not an error worth reporting.
            let _ = io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(u8::from(out.failed))
        }
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
