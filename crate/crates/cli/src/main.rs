use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use clpforge::realize::realize;
use clpforge::report::{report_json, report_text};
use clpforge::suites::{run_suite, suite_names, SUITES};
use clpforge::{parse_group, CliError};
use clpforge_core::analyzer::{analyze, AnalyzeOptions, Verdict};
use clpforge_core::arith::factor_big;
use clpforge_core::cyclotomic::{audit_table_row, exceptional_order, exceptional_table, two_f4_comparison, EXCEPTIONAL_FAMILIES};

const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "clpforge", version, about = "Decide the cl_p property of finite groups and run verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one group at one prime.
    Analyze {
        /// Group expression, e.g. "PSL(3,19)" or "Wreath(Cyclic(3),Cyclic(3))".
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Complete the class table even after a witness is found.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run one suite, or all of them.
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List the available suites.
    ListSuites,
    /// Evaluate an exceptional group order and audit its table rows.
    EvalOrder {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u64,
    },
}

fn set_threads(n: Option<usize>) {
    if let Some(n) = n {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_resource_cap() {
        return ExitCode::from(EXIT_RESOURCE);
    }
    match e {
        CliError::Parse(_) | CliError::UnknownSuite(_) => ExitCode::from(EXIT_USAGE),
        CliError::Core(
            clpforge_core::Error::PIsTwo
            | clpforge_core::Error::NotPrime(_)
            | clpforge_core::Error::PNotDividingOrder { .. }
            | clpforge_core::Error::PNotDividingQMinus1 { .. }
            | clpforge_core::Error::UnsupportedFamily(_)
            | clpforge_core::Error::TopNotTransitive,
        ) => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { group, prime, json, seed, threads, exhaustive } => {
            set_threads(threads);
            let run = || -> Result<_, CliError> {
                let g = realize(&parse_group(&group)?, seed)?;
                Ok(analyze(&g.group, prime, &g.descriptor, &AnalyzeOptions { seed, exhaustive, ..Default::default() })?)
            };
            match run() {
                Ok(r) => {
                    if json {
                        println!("{}", report_json(&r));
                    } else {
                        print!("{}", report_text(&r));
                    }
                    ExitCode::from(match r.verdict {
                        Verdict::Clp => 0,
                        Verdict::NotClpAbelianSylow => 10,
                        Verdict::NotClpClassSize => 11,
                    })
                }
                Err(e) => fail(&e),
            }
        }
        Command::Verify { suite, all, json, seed, threads } => {
            set_threads(threads);
            let names: Vec<String> = if all { suite_names().map(String::from).collect() } else { vec![suite.unwrap()] };
            let mut reports = Vec::new();
            for name in &names {
                match run_suite(name, seed) {
                    Ok(r) => {
                        if !json {
                            print!("{}", r.render_text());
                        }
                        reports.push(r);
                    }
                    Err(e) => return fail(&e),
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialise"));
            }
            if reports.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::ListSuites => {
            for (name, about) in SUITES {
                println!("{name:<24} {about}");
            }
            ExitCode::SUCCESS
        }
        Command::EvalOrder { family, q } => eval_order(&family, q),
    }
}

fn eval_order(family: &str, q: u64) -> ExitCode {
    let Some(order) = exceptional_order(family) else {
        eprintln!("error: unknown family {family:?}; expected one of {}", EXCEPTIONAL_FAMILIES.join(", "));
        return ExitCode::from(EXIT_USAGE);
    };
    let value = match order.eval(q) {
        Ok(v) => v,
        Err(e) => return fail(&e.into()),
    };
    let (small, rest) = factor_big(&value, 100_000);
    let mut parts: Vec<String> = small.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
    if rest > BigUint::from(1u32) {
        parts.push(rest.to_string());
    }
    println!("{family}(q) = {order}");
    println!("at q = {q}: {value}");
    println!("         = {}", parts.join(" * "));
    if family == "2F4" {
        match two_f4_comparison(q) {
            Ok(c) => println!("printed factorisation with Phi3 gives {} (ratio {})", c.printed, c.ratio),
            Err(e) => println!("printed factorisation not compared: {e}"),
        }
    }
    let mut failed = false;
    for row in exceptional_table().iter().filter(|r| r.family == family && r.congruence.holds(q)) {
        match audit_table_row(row, row.prime(), q) {
            Ok(a) => {
                failed |= !a.pass;
                println!(
                    "row {} [{}] p = {}: v_p(index) = {} -> {}",
                    row.label,
                    row.congruence,
                    a.p,
                    a.index_valuation,
                    if a.pass { "pass" } else { "FAIL" }
                );
            }
            Err(e) => println!("row {} [{}]: {e}", row.label, row.congruence),
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
