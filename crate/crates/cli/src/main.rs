//! `cuspidal`: command-line access to the resolution calculus and the case searches.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but a domain check fails or the
//! library rejects it, 2 on usage and parse errors.

mod input;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use cuspidal_core::format::{
    bigint_to_json, emit_dot, graph_to_json, rational_to_json, render_table,
};
use cuspidal_core::hnpairs::{graph_type_of, multiplicity_profile};
use cuspidal_core::invariants::{
    bark_of_chain, bmy_holds, bound_profile_feasible, mmp_bookkeeping, total_inductance,
    BoundProfile,
};
use cuspidal_core::search::{CaseOutcome, FinalSolution};
use cuspidal_core::{
    arith::format_rational, build_resolution_graph, cusp_invariants, degree_equation_residuals,
    discriminant, enumerate_chains, final_search, graph_type, inductance, paper_case_suite,
    solve_linear_quadratic, Chain, DiophantineSystem, DualGraph, FinalSearchParams,
    MarkedResolution, Rational,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Domain { kind: &'static str, message: String },
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn domain(kind: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Domain {
            kind,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "cuspidal", version, about = "Exact calculus of cuspidal curve resolutions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

/// A graph given as a JSON document (inline, a path, or `-` for stdin) or as a chain.
#[derive(Debug, Args)]
struct GraphArgs {
    /// Graph document: inline JSON, a file path, or `-` for standard input.
    #[arg(long, conflicts_with = "chain")]
    graph: Option<String>,
    /// Chain in bracket shorthand, e.g. "[(2)_3,3,1,2]".
    #[arg(long)]
    chain: Option<String>,
    /// Variable binding for the shorthand, e.g. `--var k=2`.
    #[arg(long = "var", value_name = "NAME=VALUE")]
    vars: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Resolution graph of a cusp given by characteristic pairs.
    Resolve {
        /// Pair sequence as JSON, e.g. "[[3,2]]".
        #[arg(long)]
        pairs: String,
    },
    /// Type of a resolution graph.
    Type {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, conflicts_with_all = ["graph", "chain"])]
        pairs: Option<String>,
    },
    /// Discriminant det(-Q).
    Discriminant {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Inductance of a chain read tip first, or total inductance of a graph.
    Inductance {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Bark coefficients of a chain read tip first, or of every maximal twig of a graph.
    Bark {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Whether the graph contracts to a smooth point; exit 1 if it does not.
    Contract {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Contractible chains of type (r) with up to k leading (-2)-curves.
    EnumerateChains {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// M, I, multiplicity profile and type of a cusp.
    CuspInvariants {
        #[arg(long)]
        pairs: String,
    },
    /// Residuals of the degree equations for a candidate; exit 1 unless all vanish.
    CheckDegree {
        /// Candidate JSON: inline, a path, or `-`.
        #[arg(long)]
        candidate: String,
    },
    /// (K+D)^2 + ind <= 3 chi; exit 1 if violated.
    Bmy {
        #[arg(long, allow_hyphen_values = true)]
        kd_sq: i64,
        /// Rational as "num/den" or an integer.
        #[arg(long, allow_hyphen_values = true)]
        ind: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
    /// Process bookkeeping and bound-profile constraints; exit 1 on a violation.
    Bookkeeping(BookkeepingArgs),
    /// Every solution of 3d = a0 + sum b_i k_i, d^2 = a0' + sum b'_i k_i.
    SolveSystem {
        /// "a0:b1,b2,..."
        #[arg(long, allow_hyphen_values = true)]
        linear: String,
        /// "a0':b'1,b'2,..."
        #[arg(long, allow_hyphen_values = true)]
        quadratic: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        d_min: i64,
        /// Comma-separated unknown names.
        #[arg(long)]
        names: Option<String>,
    },
    /// Integral solutions of the final quadratic with their verdicts.
    FinalSearch {
        #[arg(long, default_value_t = 6)]
        gamma_min: i64,
        #[arg(long, default_value_t = 14)]
        gamma_max: i64,
        #[arg(long, default_value_t = 2)]
        p_min: i64,
        #[arg(long, default_value_t = 13)]
        p_max: i64,
        #[arg(long, default_value_t = 6)]
        d_min: i64,
    },
    /// Reruns every case elimination; exit 1 if any verdict differs.
    PaperSuite,
}

#[derive(Debug, Args)]
struct BookkeepingArgs {
    #[arg(long)]
    p2: i64,
    #[arg(long, allow_hyphen_values = true)]
    c: i64,
    #[arg(long, default_value_t = 0)]
    tau_star: i64,
    #[arg(long, default_value_t = 0)]
    n: i64,
    #[arg(long, default_value_t = 0)]
    n1: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    zeta: i64,
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    gamma0: i64,
    #[arg(long, default_value_t = 0)]
    s: i64,
}

/// Rendered result plus whether a domain check failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let code = run(&args, &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code)
}

/// Parses `args` (including the program name), runs one command, and returns the exit code.
fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = execute(&cli).and_then(|o| {
        match &cli.out {
            Some(path) => fs::write(path, &o.text)?,
            None => out.write_all(o.text.as_bytes())?,
        }
        Ok(o.failed)
    });
    match result {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain { kind, message }) => {
            let diag = json!({"error": kind, "message": message});
            let _ = writeln!(err, "{diag}");
            1
        }
        Err(e @ CliError::Io(_)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> CliError {
    CliError::Usage(format!("{cmd} has no DOT output; use --format json or table"))
}

fn graph_output(format: Format, g: &DualGraph, json_value: Value, rows: Vec<Vec<String>>) -> String {
    match format {
        Format::Json => to_json_text(&json_value),
        Format::Dot => emit_dot(g),
        Format::Table => render_table(&["field", "value"], &rows),
    }
}

fn chain_text(c: &Chain) -> String {
    c.to_string()
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Resolve { pairs } => {
            let s = input::pairs(pairs)?;
            let m = build_resolution_graph(&s).map_err(|e| CliError::domain("pairs", e))?;
            let ty = graph_type(&m).map_err(|e| CliError::domain("pairs", e))?;
            let chain = m.as_chain();
            let value = json!({
                "pairs": s,
                "graph": graph_to_json(&m.graph),
                "chain": chain.as_ref().map(|c| c.weights().to_vec()),
                "minusOne": m.minus_one.0,
                "mu": bigint_to_json(&m.mu),
                "type": ty.to_string(),
            });
            let rows = vec![
                vec!["pairs".into(), s.to_string()],
                vec!["chain".into(), chain.as_ref().map_or("-".into(), chain_text)],
                vec!["minus one".into(), m.minus_one.to_string()],
                vec!["mu".into(), m.mu.to_string()],
                vec!["type".into(), ty.to_string()],
            ];
            Ok(Output::ok(graph_output(fmt, &m.graph, value, rows)))
        }
        Command::Type { graph, pairs } => {
            let g = match pairs {
                Some(p) => {
                    let s = input::pairs(p)?;
                    build_resolution_graph(&s)
                        .map_err(|e| CliError::domain("pairs", e))?
                        .graph
                }
                None => input::graph(graph)?,
            };
            let ty = graph_type_of(&g).map_err(|e| CliError::domain("graph", e))?;
            let value = json!({"type": ty.to_string(), "blocks": ty.0, "kDotQMinusU": ty.total()});
            let rows = vec![vec!["type".into(), ty.to_string()]];
            Ok(Output::ok(graph_output(fmt, &g, value, rows)))
        }
        Command::Discriminant { graph } => {
            let g = input::graph(graph)?;
            let d = discriminant(&g);
            let value = json!({"discriminant": bigint_to_json(&d)});
            let rows = vec![vec!["discriminant".into(), d.to_string()]];
            Ok(Output::ok(graph_output(fmt, &g, value, rows)))
        }
        Command::Inductance { graph } => {
            if fmt == Format::Dot {
                return Err(no_dot("inductance"));
            }
            let value = if let Some(c) = &graph.chain {
                let chain = input::chain(c, &graph.vars)?;
                let ind = inductance(&chain).map_err(|e| CliError::domain("chain", e))?;
                json!({"chain": chain.weights(), "inductance": rational_to_json(&ind)})
            } else {
                let g = input::graph(graph)?;
                let twigs = g.maximal_twigs().map_err(|e| CliError::domain("graph", e))?;
                let mut per_twig = Vec::new();
                for t in &twigs {
                    let ind = inductance(&t.chain).map_err(|e| CliError::domain("graph", e))?;
                    per_twig.push(json!({
                        "ids": t.ids.iter().map(|i| i.0).collect::<Vec<_>>(),
                        "chain": t.chain.weights(),
                        "inductance": rational_to_json(&ind),
                    }));
                }
                let total = total_inductance(&g).map_err(|e| CliError::domain("graph", e))?;
                json!({"twigs": per_twig, "total": rational_to_json(&total)})
            };
            Ok(Output::ok(json_or_table(fmt, &value)))
        }
        Command::Bark { graph } => {
            if fmt == Format::Dot {
                return Err(no_dot("bark"));
            }
            let value = if let Some(c) = &graph.chain {
                let chain = input::chain(c, &graph.vars)?;
                let bk = bark_of_chain(&chain).map_err(|e| CliError::domain("chain", e))?;
                json!({"chain": chain.weights(), "bark": rationals(&bk)})
            } else {
                let g = input::graph(graph)?;
                let twigs = g.maximal_twigs().map_err(|e| CliError::domain("graph", e))?;
                let mut per_twig = Vec::new();
                for t in &twigs {
                    let bk = cuspidal_core::bark(&g, t).map_err(|e| CliError::domain("graph", e))?;
                    let coeffs: serde_json::Map<String, Value> = bk
                        .coefficients
                        .iter()
                        .map(|(id, q)| (id.to_string(), rational_to_json(q)))
                        .collect();
                    let sq = bk.square(&g).map_err(|e| CliError::domain("graph", e))?;
                    per_twig.push(json!({
                        "ids": t.ids.iter().map(|i| i.0).collect::<Vec<_>>(),
                        "bark": coeffs,
                        "square": rational_to_json(&sq),
                    }));
                }
                json!({"twigs": per_twig})
            };
            Ok(Output::ok(json_or_table(fmt, &value)))
        }
        Command::Contract { graph } => {
            let g = input::graph(graph)?;
            let ok = g.contracts_to_smooth_point();
            let value = json!({
                "contractible": ok,
                "negativeDefinite": g.is_negative_definite(),
                "discriminant": bigint_to_json(&discriminant(&g)),
            });
            let rows = vec![
                vec!["contractible".into(), ok.to_string()],
                vec!["negative definite".into(), g.is_negative_definite().to_string()],
            ];
            Ok(Output {
                text: graph_output(fmt, &g, value, rows),
                failed: !ok,
            })
        }
        Command::EnumerateChains { r, k } => {
            if fmt == Format::Dot {
                return Err(no_dot("enumerate-chains"));
            }
            let chains = enumerate_chains(*r, *k).map_err(|e| CliError::domain("rank", e))?;
            let mut items = Vec::new();
            let mut rows = Vec::new();
            for (i, c) in chains.iter().enumerate() {
                let m = MarkedResolution::from_graph(c.to_graph())
                    .map_err(|e| CliError::domain("chain", e))?;
                let kq = m.graph.k_dot_all();
                items.push(json!({"chain": c.weights(), "mu": bigint_to_json(&m.mu), "kDotQ": kq}));
                rows.push(vec![(i + 1).to_string(), chain_text(c), m.mu.to_string(), kq.to_string()]);
            }
            let text = match fmt {
                Format::Table => render_table(&["#", "chain", "mu", "K.Q"], &rows),
                _ => to_json_text(&json!({"r": r, "kMax": k, "chains": items})),
            };
            Ok(Output::ok(text))
        }
        Command::CuspInvariants { pairs } => {
            if fmt == Format::Dot {
                return Err(no_dot("cusp-invariants"));
            }
            let s = input::pairs(pairs)?;
            let inv = cusp_invariants(&s);
            let profile = multiplicity_profile(&s);
            let m = build_resolution_graph(&s).map_err(|e| CliError::domain("pairs", e))?;
            let ty = graph_type(&m).map_err(|e| CliError::domain("pairs", e))?;
            let value = json!({
                "pairs": s,
                "M": bigint_to_json(&inv.m),
                "I": bigint_to_json(&inv.i),
                "multiplicity": bigint_to_json(&inv.mult),
                "profile": profile.blocks,
                "mu": bigint_to_json(&m.mu),
                "type": ty.to_string(),
            });
            Ok(Output::ok(json_or_table(fmt, &value)))
        }
        Command::CheckDegree { candidate } => {
            if fmt == Format::Dot {
                return Err(no_dot("check-degree"));
            }
            let cand = input::candidate(candidate)?;
            let r = degree_equation_residuals(&cand);
            let value = json!({
                "r1": bigint_to_json(&r.r1),
                "r2": bigint_to_json(&r.r2),
                "r3": bigint_to_json(&r.r3),
                "consistent": r.all_zero(),
            });
            Ok(Output {
                text: json_or_table(fmt, &value),
                failed: !r.all_zero(),
            })
        }
        Command::Bmy { kd_sq, ind, chi } => {
            if fmt == Format::Dot {
                return Err(no_dot("bmy"));
            }
            let q: Rational = ind
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid rational {ind:?}")))?;
            let holds = bmy_holds(*kd_sq, &q, *chi);
            let value = json!({
                "lhs": format_rational(&(Rational::from_integer((*kd_sq).into()) + &q)),
                "rhs": 3 * chi,
                "holds": holds,
            });
            Ok(Output {
                text: json_or_table(fmt, &value),
                failed: !holds,
            })
        }
        Command::Bookkeeping(a) => {
            if fmt == Format::Dot {
                return Err(no_dot("bookkeeping"));
            }
            let b = BoundProfile {
                p2: a.p2,
                zeta: a.zeta,
                gamma0: a.gamma0,
                tau_star: a.tau_star,
                s: a.s,
                c: a.c,
                n: a.n,
                n1: a.n1,
            };
            let (kk, ek) = mmp_bookkeeping(&b);
            let violations = bound_profile_feasible(&b);
            let value = json!({
                "kDotKD": kk,
                "eDotK": ek,
                "violations": violations,
                "feasible": violations.is_empty(),
            });
            Ok(Output {
                text: json_or_table(fmt, &value),
                failed: !violations.is_empty(),
            })
        }
        Command::SolveSystem {
            linear,
            quadratic,
            d_min,
            names,
        } => {
            if fmt == Format::Dot {
                return Err(no_dot("solve-system"));
            }
            let (a0, b) = input::affine(linear)?;
            let (q0, bq) = input::affine(quadratic)?;
            let n = b.len();
            let names: Vec<String> = match names {
                Some(s) => s.split(',').map(|x| x.trim().to_owned()).collect(),
                None => (1..=n).map(|i| format!("k{i}")).collect(),
            };
            let sys = DiophantineSystem::new(names, (a0, b), (q0, bq), (*d_min).into())
                .map_err(|e| CliError::domain("system", e))?;
            let sols = solve_linear_quadratic(&sys);
            let text = match fmt {
                Format::Table => {
                    let mut header = vec!["d"];
                    header.extend(sys.names.iter().map(String::as_str));
                    let rows: Vec<Vec<String>> = sols
                        .iter()
                        .map(|s| {
                            std::iter::once(s.d.to_string())
                                .chain(s.k.iter().map(ToString::to_string))
                                .collect()
                        })
                        .collect();
                    render_table(&header, &rows)
                }
                _ => {
                    let items: Vec<Value> = sols
                        .iter()
                        .map(|s| {
                            let mut obj = serde_json::Map::new();
                            obj.insert("d".into(), bigint_to_json(&s.d));
                            for (name, k) in sys.names.iter().zip(&s.k) {
                                obj.insert(name.clone(), bigint_to_json(k));
                            }
                            Value::Object(obj)
                        })
                        .collect();
                    to_json_text(&json!({
                        "dMax": sys.d_bound().as_ref().map(bigint_to_json),
                        "solutions": items,
                    }))
                }
            };
            Ok(Output::ok(text))
        }
        Command::FinalSearch {
            gamma_min,
            gamma_max,
            p_min,
            p_max,
            d_min,
        } => {
            if fmt == Format::Dot {
                return Err(no_dot("final-search"));
            }
            let params = FinalSearchParams {
                gamma_min: *gamma_min,
                gamma_max: *gamma_max,
                p_min: *p_min,
                p_max: *p_max,
                d_min: *d_min,
            };
            let res = final_search(params).map_err(|e| CliError::domain("search", e))?;
            let text = match fmt {
                Format::Table => {
                    let rows: Vec<Vec<String>> = res.solutions.iter().map(final_row).collect();
                    render_table(
                        &["gamma", "p", "d", "c", "c mod p", "gcd", "single pair", "gamma bound"],
                        &rows,
                    )
                }
                _ => to_json_text(&json!({
                    "params": {
                        "gammaMin": params.gamma_min,
                        "gammaMax": params.gamma_max,
                        "pMin": params.p_min,
                        "pMax": params.p_max,
                        "dMin": params.d_min,
                    },
                    "solutions": res.solutions.iter().map(final_json).collect::<Vec<_>>(),
                    "allFailGammaBound": res.all_fail_gamma_final(),
                })),
            };
            Ok(Output::ok(text))
        }
        Command::PaperSuite => {
            if fmt == Format::Dot {
                return Err(no_dot("paper-suite"));
            }
            let report = paper_case_suite().map_err(|e| CliError::domain("suite", e))?;
            let text = match fmt {
                Format::Table => {
                    let rows: Vec<Vec<String>> = report.cases.iter().map(case_row).collect();
                    render_table(&["case", "expected", "computed", "verdict"], &rows)
                }
                _ => to_json_text(&json!({
                    "cases": report.cases.iter().map(|c| json!({
                        "name": c.name,
                        "expected": c.expected,
                        "computed": c.computed,
                        "passed": c.passed,
                    })).collect::<Vec<_>>(),
                    "allPassed": report.all_passed(),
                })),
            };
            Ok(Output {
                text,
                failed: !report.all_passed(),
            })
        }
    }
}

fn rationals(v: &[Rational]) -> Vec<Value> {
    v.iter().map(rational_to_json).collect()
}

/// JSON as is, or a two-column table of the top-level fields.
fn json_or_table(fmt: Format, value: &Value) -> String {
    match (fmt, value) {
        (Format::Table, Value::Object(map)) => {
            let rows: Vec<Vec<String>> = map
                .iter()
                .map(|(k, v)| {
                    let cell = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    vec![k.clone(), cell]
                })
                .collect();
            render_table(&["field", "value"], &rows)
        }
        _ => to_json_text(value),
    }
}

fn final_json(s: &FinalSolution) -> Value {
    json!({
        "gamma": s.gamma,
        "p": s.p,
        "d": bigint_to_json(&s.d),
        "c": bigint_to_json(&s.c),
        "r": bigint_to_json(&s.r),
        "gcd": bigint_to_json(&s.gcd),
        "singlePair": s.single_pair,
        "passesGammaBound": s.passes_gamma_final,
    })
}

fn final_row(s: &FinalSolution) -> Vec<String> {
    vec![
        s.gamma.to_string(),
        s.p.to_string(),
        s.d.to_string(),
        s.c.to_string(),
        s.r.to_string(),
        s.gcd.to_string(),
        s.single_pair.to_string(),
        if s.passes_gamma_final { "holds" } else { "fails" }.to_owned(),
    ]
}

fn case_row(c: &CaseOutcome) -> Vec<String> {
    vec![
        c.name.clone(),
        c.expected.clone(),
        c.computed.clone(),
        if c.passed { "pass" } else { "FAIL" }.to_owned(),
    ]
}
