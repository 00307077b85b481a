use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use canonsign::adjacency::{verify_proposition, witness_wstar, DEFAULT_MAX_DEGREE};
use canonsign::census::{census, verify_theorem_small, Outcome};
use canonsign::poly::{format_rational, parse_rational};
use canonsign::realize::{
    realizable_orders, realize_canonical, witness_search_counted, WitnessRequest, DEFAULT_BUDGET,
    DEFAULT_RATIO, DEFAULT_SEED,
};
use canonsign::{
    canonical_order, classify_rigid, find_configurations, poly_from_roots, ModuliOrder, Rigidity, SignPattern,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;

#[derive(Parser)]
#[command(
    name = "canonsign",
    version,
    about = "Sign patterns, orders of moduli and their realizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether a sign pattern is canonical and list its configurations.
    Classify {
        #[arg(allow_hyphen_values = true)]
        pattern: SignPattern,
        /// Exit with status 1 when the pattern is not canonical.
        #[arg(long)]
        strict: bool,
    },
    /// Print the canonical order of moduli of a pattern.
    Order {
        #[arg(allow_hyphen_values = true)]
        pattern: SignPattern,
    },
    /// Realize a pattern by its canonical order with geometrically spread roots.
    Realize {
        pattern: SignPattern,
        #[arg(long, default_value_t = DEFAULT_RATIO.to_string())]
        ratio: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for roots realizing a pattern with a given order of moduli.
    Witness {
        pattern: SignPattern,
        order: ModuliOrder,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Probe every order compatible with a pattern; prints a JSON report.
    Orders {
        pattern: SignPattern,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decide whether an order of moduli is rigid.
    Rigid { order: ModuliOrder },
    /// Count canonical patterns and configurations for each degree.
    Census {
        #[arg(long)]
        max_d: usize,
        #[arg(long, default_value_t = 0)]
        min_d: usize,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check canonicity against witness search for every pattern up to a degree.
    VerifyTheorem {
        #[arg(long, default_value_t = 6)]
        max_d: usize,
        #[arg(long, default_value_t = 2)]
        min_d: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check that every pattern of T contains a configuration.
    VerifyProposition {
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_d: usize,
        #[arg(long, default_value_t = 3)]
        min_d: usize,
        /// Write every S/T report as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

type CmdResult = Result<u8, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Classify { pattern, strict } => classify(&pattern, strict),
        Command::Order { pattern } => {
            let order = canonical_order(&pattern).map_err(|e| e.to_string())?;
            println!("{order}");
            Ok(0)
        }
        Command::Realize { pattern, ratio, json } => realize(&pattern, &ratio, json),
        Command::Witness {
            pattern,
            order,
            budget,
            seed,
            json,
        } => witness(pattern, order, budget, seed, json),
        Command::Orders {
            pattern,
            budget,
            seed,
        } => {
            let report = realizable_orders(&pattern, budget, seed).map_err(|e| e.to_string())?;
            print_json(&report)?;
            Ok(0)
        }
        Command::Rigid { order } => {
            match classify_rigid(&order) {
                Rigidity::Rigid(p) => println!("rigid {p}"),
                Rigidity::NotRigid => println!("not rigid"),
            }
            Ok(0)
        }
        Command::Census { max_d, min_d, csv } => run_census(min_d, max_d, csv),
        Command::VerifyTheorem {
            max_d,
            min_d,
            budget,
            seed,
        } => run_theorem(min_d, max_d, budget, seed),
        Command::VerifyProposition { max_d, min_d, dump } => run_proposition(min_d, max_d, dump),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn classify(pattern: &SignPattern, strict: bool) -> CmdResult {
    let hits = find_configurations(pattern);
    if hits.is_empty() {
        println!("canonical");
        return Ok(0);
    }
    let list: Vec<String> = hits.iter().map(ToString::to_string).collect();
    println!("noncanonical {}", list.join(" "));
    Ok(if strict { 1 } else { 0 })
}

fn realize(pattern: &SignPattern, ratio: &str, json: bool) -> CmdResult {
    let ratio = parse_rational(ratio).map_err(|e| e.to_string())?;
    let roots = realize_canonical(pattern, &ratio).map_err(|e| e.to_string())?;
    if json {
        let order = canonical_order(pattern)
            .map(|o| o.to_string())
            .unwrap_or_default();
        print_json(&json!({
            "pattern": pattern,
            "order": order,
            "roots": roots,
            "poly": poly_from_roots(&roots).to_string(),
        }))?;
    } else {
        let list: Vec<String> = roots.roots().iter().map(format_rational).collect();
        println!("{}", list.join(" "));
    }
    Ok(0)
}

fn witness(pattern: SignPattern, order: ModuliOrder, budget: u64, seed: u64, json: bool) -> CmdResult {
    let req = WitnessRequest::new(pattern, order, budget, seed);
    let outcome = witness_search_counted(&req).map_err(|e| e.to_string())?;
    if json {
        print_json(&json!({
            "pattern": req.pattern,
            "order": req.order,
            "witness": outcome.witness,
            "samples_used": outcome.samples_used,
        }))?;
        return Ok(0);
    }
    match outcome.witness {
        Some(roots) => {
            let list: Vec<String> = roots.roots().iter().map(format_rational).collect();
            println!("{}", list.join(" "));
        }
        None => println!("none within budget"),
    }
    Ok(0)
}

fn run_census(min_d: usize, max_d: usize, path: Option<PathBuf>) -> CmdResult {
    let sink: Box<dyn Write> = match &path {
        Some(p) => Box::new(File::create(p).map_err(|e| format!("{}: {e}", p.display()))?),
        None => Box::new(io::stdout()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    let io_err = |e: csv::Error| e.to_string();
    writer
        .write_record(["d", "total", "canonical", "noncanonical", "A", "B", "C", "D"])
        .map_err(io_err)?;
    for d in min_d..=max_d {
        let row = census(d).map_err(|e| e.to_string())?;
        let mut record = vec![
            row.d.to_string(),
            row.total.to_string(),
            row.canonical.to_string(),
            row.noncanonical.to_string(),
        ];
        record.extend(row.windows.iter().map(u64::to_string));
        writer.write_record(&record).map_err(io_err)?;
    }
    writer.flush().map_err(|e| e.to_string())?;
    Ok(0)
}

fn run_theorem(min_d: usize, max_d: usize, budget: u64, seed: u64) -> CmdResult {
    let mut all_passed = true;
    for d in min_d.max(1)..=max_d {
        let report = verify_theorem_small(d, budget, seed).map_err(|e| e.to_string())?;
        let witnessed = report
            .checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Witnessed { .. }))
            .count();
        let clean = report
            .checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::CanonicalOnly))
            .count();
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "d={d} {verdict} patterns={} witnessed={witnessed} canonical_clean={clean}",
            report.checks.len()
        );
        for check in report.failures() {
            all_passed = false;
            match &check.outcome {
                Outcome::Missing => println!("  {}: no non-canonical witness within budget", check.pattern),
                Outcome::Violated { witnesses } => {
                    for w in witnesses {
                        println!("  {}: realized by {} via {}", check.pattern, w.order, w.witness);
                    }
                }
                _ => {}
            }
        }
    }
    println!("{}", if all_passed { "PASS" } else { "FAIL" });
    Ok(if all_passed { 0 } else { EXIT_VERIFY })
}

fn run_proposition(min_d: usize, max_d: usize, dump: Option<PathBuf>) -> CmdResult {
    let mut checks = Vec::new();
    let mut violations = 0;
    for d in min_d.max(3)..=max_d {
        let check = verify_proposition(d).map_err(|e| e.to_string())?;
        let bad = check.violations();
        println!(
            "d={d} {} sources={} S={} T={} violations={}",
            if bad.is_empty() { "PASS" } else { "FAIL" },
            check.reports.len(),
            check.s_total(),
            check.t_total(),
            bad.len()
        );
        for report in &check.reports {
            for v in report.violations() {
                let wstar = witness_wstar(&report.source, v)
                    .map(|w| w.to_string())
                    .unwrap_or_default();
                println!("  {v} from W* pattern {} (e.g. W* = {wstar})", report.source);
            }
        }
        violations += bad.len();
        if dump.is_some() {
            checks.push(check);
        }
    }
    if let Some(path) = dump {
        let file = File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::to_writer(io::BufWriter::new(file), &checks).map_err(|e| e.to_string())?;
    }
    if violations == 0 {
        println!("PASS");
        Ok(0)
    } else {
        println!("FAIL {violations} members of T without a configuration");
        Ok(EXIT_VERIFY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "canonsign",
            "witness",
            "++--",
            "NNP",
            "--budget",
            "10",
            "--seed",
            "3",
        ])
        .unwrap();
        match cli.command {
            Command::Witness { budget, seed, .. } => assert_eq!((budget, seed), (10, 3)),
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["canonsign", "classify", "-+"]).is_err());
        assert!(Cli::try_parse_from(["canonsign", "census"]).is_err());
    }
}
