//! Command-line front end: reproducible experiments with machine-readable
//! output. Exit codes: 0 success/verified, 1 mathematical check failed,
//! 2 invalid input, 3 budget exceeded.

use clap::{Args, Parser, Subcommand};
use deephole::census::{
    count_bruteforce, default_census_budget, formula_full_star, formula_star_minus_one,
    CensusQuery,
};
use deephole::families::scan_deep_holes;
use deephole::field::{Fe, Field};
use deephole::grs::{default_budget, GrsCode};
use deephole::solver::{char_sum, solve_main, solve_pairsum, DEFAULT_SEED};
use deephole::verify::{self, VerifyReport};
use deephole::{Error, Poly};
use serde_json::json;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "deephole", version, about = "Deep holes of generalized Reed-Solomon codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Field spec: q=<p> or q=<p>^<m>[:mod=c0,c1,...,cm]
    #[arg(long, global = true, default_value = "q=7")]
    q: String,
    /// Evaluation set: full | star | star-minus-1 | list:<enc>,...
    #[arg(long, global = true, default_value = "star")]
    set: String,
    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<String>,
    /// Output format
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// RNG seed for randomized strategies
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (must not affect any output byte)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Budget override for enumeration engines
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Show a parsed field: q, p, m, modulus, element encodings
    Field,
    /// Error distance of the word of --poly, with the degree bounds
    Distance {
        #[arg(long)]
        k: usize,
        /// Comma-separated enc coefficients low-to-high
        #[arg(long)]
        poly: String,
        /// Cross-check with the q^k codeword enumeration oracle
        #[arg(long, default_value_t = false)]
        oracle: bool,
    },
    /// Census of normalized words by degree: distance and deep-hole flags
    Scan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        deg_min: usize,
        #[arg(long)]
        deg_max: usize,
    },
    /// Subset-sum census N(t,b,D)
    Census {
        /// Subset size; sweeps all t when omitted
        #[arg(long)]
        t: Option<usize>,
        /// Target sum enc; sweeps all b when omitted
        #[arg(long)]
        b: Option<Fe>,
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Solve the quadratic system for a distinct tuple
    Solve {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        a: Fe,
        #[arg(long, default_value_t = 0)]
        b: Fe,
        /// full (pair-sum + squares - a*sum) or pairsum
        #[arg(long, default_value = "full")]
        mode: String,
        /// auto | complement | induction | search | brute; a named
        /// strategy fails unless the deterministic ladder selects it
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Quadratic character sums over x of eta(x^2 + c)
    Charsum {
        /// Single c; sweeps all c when omitted
        #[arg(long)]
        c: Option<Fe>,
    },
    /// Run a verification sweep; exit 0 iff every check passes
    Verify {
        /// degree-k | generalized-b | even-char | deg-k2 | keylem |
        /// charsum | sqrtnum | census-formulas | identities | solver
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<usize>,
        /// Random trials where the sweep samples
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = run(&cli);
    std::process::exit(code);
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::NoSolutionFound => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> i32 {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.threads.max(1))
        .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    pool.install(|| match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    })
}

fn header(cli: &Cli, method: &str, elapsed_ms: u128) -> serde_json::Value {
    json!({
        "version": deephole::VERSION,
        "config": {
            "q": cli.common.q,
            "set": cli.common.set,
            "seed": cli.common.seed,
            "budget": cli.common.budget,
            "format": cli.common.format,
        },
        "method": method,
        "wall_clock_ms": elapsed_ms,
    })
}

fn emit(cli: &Cli, text: &str) -> i32 {
    match &cli.common.out {
        Some(path) => {
            let mut f = match std::fs::File::create(path) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: cannot write {path}: {e}");
                    return 2;
                }
            };
            if let Err(e) = f.write_all(text.as_bytes()) {
                eprintln!("error: {e}");
                return 2;
            }
            0
        }
        None => {
            println!("{text}");
            0
        }
    }
}

fn csv_header(cli: &Cli, method: &str) -> String {
    // wall clock stays on its own line so comparisons can strip it;
    // worker count is deliberately absent: it never affects payload bytes
    format!(
        "# version={} q={} set={} seed={} method={}\n",
        deephole::VERSION,
        cli.common.q,
        cli.common.set,
        cli.common.seed,
        method
    )
}

fn dispatch(cli: &Cli) -> deephole::Result<i32> {
    let start = Instant::now();
    let field = Arc::new(Field::parse(&cli.common.q)?);
    let budget = cli.common.budget.unwrap_or_else(default_budget);
    match &cli.command {
        Command::Field => {
            let payload = json!({
                "q": field.q(),
                "p": field.p(),
                "m": field.m(),
                "modulus": field.modulus(),
                "spec": field.spec_string(),
            });
            let out = json!({
                "header": header(cli, "field", start.elapsed().as_millis()),
                "payload": payload,
            });
            Ok(emit(cli, &serde_json::to_string_pretty(&out).unwrap()))
        }
        Command::Distance { k, poly, oracle } => {
            let pts = GrsCode::parse_set(&field, &cli.common.set)?;
            let code = GrsCode::new(field.clone(), pts, *k)?;
            let p = Poly::parse(field.clone(), poly)?;
            let w = code.word_from_poly(&p)?;
            let report = code.error_distance_budgeted(&w, budget)?;
            let bounds = code.degree_bounds(&p).ok();
            let mut payload = json!({
                "n": code.n(),
                "k": k,
                "deg": p.degree(),
                "bound_lo": bounds.map(|b| b.0),
                "bound_hi": bounds.map(|b| b.1),
                "distance": report.distance,
                "is_deep_hole": report.distance == code.n() - k,
                "witness_poly": report.witness.to_text(),
            });
            if *oracle {
                let brute = code.error_distance_bruteforce(&w, budget)?;
                payload["oracle_distance"] = json!(brute.distance);
                payload["oracle_match"] = json!(brute.distance == report.distance);
            }
            let out = json!({
                "header": header(cli, "subset-interpolation", start.elapsed().as_millis()),
                "payload": payload,
            });
            Ok(emit(cli, &serde_json::to_string_pretty(&out).unwrap()))
        }
        Command::Scan { k, deg_min, deg_max } => {
            let pts = GrsCode::parse_set(&field, &cli.common.set)?;
            let code = GrsCode::new(field.clone(), pts, *k)?;
            let census = scan_deep_holes(&code, *deg_min, *deg_max)?;
            if cli.common.format == "csv" {
                let mut text = csv_header(cli, "scan");
                text.push_str(&format!("# wall_clock_ms={}\n", start.elapsed().as_millis()));
                text.push_str("degree,poly_enc_coeffs,distance,is_deep_hole\n");
                for row in &census.rows {
                    let coeffs: Vec<String> =
                        row.coeffs.iter().map(|c| c.to_string()).collect();
                    text.push_str(&format!(
                        "{},{},{},{}\n",
                        row.degree,
                        coeffs.join(" "),
                        row.distance,
                        row.is_deep_hole
                    ));
                }
                Ok(emit(cli, &text))
            } else {
                let out = json!({
                    "header": header(cli, "scan", start.elapsed().as_millis()),
                    "payload": { "summary": census.summary, "rows": census.rows },
                });
                Ok(emit(cli, &serde_json::to_string_pretty(&out).unwrap()))
            }
        }
        Command::Census { t, b, method } => {
            let pts = GrsCode::parse_set(&field, &cli.common.set)?;
            let census_budget = cli.common.budget.unwrap_or_else(default_census_budget);
            let ts: Vec<usize> = match t {
                Some(t) => vec![*t],
                None => (0..=pts.len()).collect(),
            };
            let bs: Vec<Fe> = match b {
                Some(b) => vec![*b],
                None => field.elements().collect(),
            };
            let star: Vec<Fe> = field.units().collect();
            let star_m1: Vec<Fe> = field.units().filter(|&x| x != 1).collect();
            let mut rows = String::from("t,b_enc,count_brute,count_formula,match\n");
            let mut all_match = true;
            for &t in &ts {
                for &b in &bs {
                    let brute = if method == "formula" {
                        None
                    } else {
                        let q = CensusQuery::new(field.clone(), pts.clone(), t, b)?;
                        Some(count_bruteforce(&q, census_budget)?.count)
                    };
                    let formula = if method == "brute" {
                        None
                    } else if pts == star && b == 0 {
                        Some(formula_full_star(&field, t)?.count)
                    } else if pts == star_m1 && field.m() == 1 {
                        Some(formula_star_minus_one(&field, t, b)?.count)
                    } else {
                        None
                    };
                    let matched = match (&brute, &formula) {
                        (Some(x), Some(y)) => {
                            if x != y {
                                all_match = false;
                            }
                            (x == y).to_string()
                        }
                        _ => String::new(),
                    };
                    rows.push_str(&format!(
                        "{t},{b},{},{},{matched}\n",
                        brute.map(|c| c.to_string()).unwrap_or_default(),
                        formula.map(|c| c.to_string()).unwrap_or_default(),
                    ));
                }
            }
            let mut text = csv_header(cli, &format!("census-{method}"));
            text.push_str(&format!("# wall_clock_ms={}\n", start.elapsed().as_millis()));
            text.push_str(&rows);
            let code = emit(cli, &text);
            Ok(if code == 0 && !all_match { 1 } else { code })
        }
        Command::Solve { t, a, b, mode, strategy } => {
            let wit = match mode.as_str() {
                "pairsum" => solve_pairsum(&field, *t, *b)?,
                "full" => match strategy.as_str() {
                    "auto" => solve_main(&field, *t, *a, *b, cli.common.seed)?,
                    "brute" => {
                        let tuple = deephole::solver::find_bruteforce(
                            &field,
                            *t,
                            *a,
                            *b,
                            cli.common.budget.unwrap_or(deephole::solver::SEARCH_BUDGET),
                        )?
                        .ok_or(Error::NoSolutionFound)?;
                        deephole::solver::SolverWitness {
                            tuple,
                            strategy: deephole::solver::Strategy::Brute,
                            gamma: None,
                        }
                    }
                    named => {
                        let wit = solve_main(&field, *t, *a, *b, cli.common.seed)?;
                        let picked = serde_json::to_value(wit.strategy).unwrap();
                        if picked != serde_json::Value::String(named.to_string()) {
                            return Err(Error::InvalidInput(format!(
                                "ladder selected {picked} for these parameters, not `{named}`"
                            )));
                        }
                        wit
                    }
                },
                other => {
                    return Err(Error::InvalidInput(format!("unknown mode `{other}`")));
                }
            };
            let payload = json!({
                "t": t, "a": a, "b": b, "mode": mode,
                "tuple_enc": wit.tuple,
                "gamma_enc": wit.gamma,
                "strategy": wit.strategy,
                "verified": true,
            });
            let out = json!({
                "header": header(cli, "solve", start.elapsed().as_millis()),
                "payload": payload,
            });
            Ok(emit(cli, &serde_json::to_string_pretty(&out).unwrap()))
        }
        Command::Charsum { c } => {
            let cs: Vec<Fe> = match c {
                Some(c) => vec![*c],
                None => field.elements().collect(),
            };
            let mut rows = Vec::new();
            for &c in &cs {
                rows.push(json!({
                    "c": c,
                    "sum": char_sum(&field, c)?,
                    "eta_c": field.quadratic_character(c)?,
                    "eta_minus_1": field.quadratic_character(field.neg(1))?,
                }));
            }
            let out = json!({
                "header": header(cli, "charsum", start.elapsed().as_millis()),
                "payload": rows,
            });
            Ok(emit(cli, &serde_json::to_string_pretty(&out).unwrap()))
        }
        Command::Verify { family, k, trials } => {
            let report = run_verify(cli, &field, family, *k, *trials)?;
            let out = json!({
                "header": header(cli, &format!("verify-{family}"), start.elapsed().as_millis()),
                "payload": {
                    "cases": report.cases,
                    "passed": report.passed(),
                    "failures": report.failures,
                    "notes": report.notes,
                },
            });
            let code = emit(cli, &serde_json::to_string_pretty(&out).unwrap());
            Ok(if code == 0 && !report.passed() { 1 } else { code })
        }
    }
}

fn run_verify(
    cli: &Cli,
    field: &Arc<Field>,
    family: &str,
    k: Option<usize>,
    trials: usize,
) -> deephole::Result<VerifyReport> {
    let seed = cli.common.seed;
    let pts = GrsCode::parse_set(field, &cli.common.set)?;
    match family {
        "degree-k" => verify::verify_degree_k(field, &pts, k.unwrap_or(2), 5, seed),
        "generalized-b" => verify::verify_generalized_b(field, &pts, k.unwrap_or(2), 5, seed),
        "even-char" => {
            let units: Vec<Fe> = field.units().collect();
            verify::verify_even_char(field, &pts, &units, seed)
        }
        "deg-k2" => {
            let ks = match k {
                Some(k) => vec![k],
                None => (2..=(field.q() as usize - 3)).collect(),
            };
            let pairs = if field.q() <= 7 { None } else { Some(trials) };
            verify::verify_deg_k2(field, &ks, pairs, seed)
        }
        "keylem" => verify::verify_keylem(field, k.unwrap_or(2), trials, field.q() <= 5, seed),
        "charsum" => verify::verify_charsum(field),
        "sqrtnum" => verify::verify_sqrtnum(field),
        "census-formulas" => verify::verify_census_formulas(field),
        "identities" => verify::verify_solver_identities(field, trials, seed),
        "solver" => verify::verify_solver(field, field.q() <= 7, seed),
        other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
    }
}
