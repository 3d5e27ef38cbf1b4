//! Command-line front end: runs named scenarios and checks input documents.
//!
//! Exit status is 0 when every report passes, 1 when a mathematical check
//! fails and 2 for usage or parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gliaison::scenario::{
    emit_report, parse_input, run_scenarios, ReportFormat, ScenarioOptions, SCENARIOS,
};
use gliaison::Error;

#[derive(Parser, Debug)]
#[command(name = "gliaison", version, about = "Gorenstein liaison scenarios over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Upper end of the Hilbert function tables.
    #[arg(long, global = true, default_value_t = 6)]
    max_degree: i32,
    /// Budget of reseeded attempts for general choices.
    #[arg(long, global = true, default_value_t = 16)]
    retries: usize,
    /// Run independent scenarios concurrently.
    #[arg(long, global = true)]
    parallel: bool,
    /// Also write each report to `<DIR>/<scenario>.{json,txt}`.
    #[arg(long, global = true, value_name = "DIR")]
    report_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the registered scenarios.
    List,
    /// Run scenarios by name.
    Run {
        /// Scenario names.
        #[arg(required_unless_present = "all")]
        scenarios: Vec<String>,
        /// Run every registered scenario.
        #[arg(long, conflicts_with = "scenarios")]
        all: bool,
        /// Input document overriding the built-in data.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Parse an input document and summarize it.
    Check {
        file: PathBuf,
    },
}

fn usage_exit(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| usage_exit(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::List => {
            for (name, about) in SCENARIOS {
                println!("{name:<22} {about}");
            }
            ExitCode::SUCCESS
        }
        Command::Check { file } => {
            let text = match read(file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            match parse_input(&text) {
                Ok(doc) => {
                    println!(
                        "ring GF({}) [{}]",
                        doc.ring.field().characteristic(),
                        doc.ring.var_names().join(", ")
                    );
                    if let Some(f) = &doc.modulus {
                        println!("modulus {f}");
                    }
                    for i in &doc.ideals {
                        println!("ideal {} with {} generators", i.name, i.generators.len());
                    }
                    for m in &doc.matrices {
                        println!("matrix {} {}x{}", m.name, m.map.nrows(), m.map.ncols());
                    }
                    for m in &doc.modules {
                        println!("module {} on {} generators, {} relations", m.name, m.twists.len(), m.relations.ncols());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage_exit(format!("{}: {e}", file.display())),
            }
        }
        Command::Run { scenarios, all, input } => {
            let input = match input {
                Some(path) => {
                    let text = match read(path) {
                        Ok(t) => t,
                        Err(code) => return code,
                    };
                    match parse_input(&text) {
                        Ok(doc) => Some(doc),
                        Err(e) => return usage_exit(format!("{}: {e}", path.display())),
                    }
                }
                None => None,
            };
            let names: Vec<String> = if *all {
                SCENARIOS.iter().map(|(n, _)| n.to_string()).collect()
            } else {
                scenarios.clone()
            };
            let opts = ScenarioOptions {
                seed: cli.seed,
                max_degree: cli.max_degree,
                retries: cli.retries,
                input,
            };
            let format = if cli.json { ReportFormat::Json } else { ReportFormat::Text };
            if let Some(dir) = &cli.report_dir {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    return usage_exit(format!("{}: {e}", dir.display()));
                }
            }
            let wrap = cli.json && names.len() > 1;
            let mut docs: Vec<String> = Vec::new();
            let mut failed = false;
            for (name, result) in names.iter().zip(run_scenarios(&names, &opts, cli.parallel)) {
                let report = match result {
                    Ok(r) => r,
                    Err(e @ (Error::Usage(_) | Error::Parse { .. })) => return usage_exit(e),
                    Err(e) => {
                        eprintln!("error: {name}: {e}");
                        failed = true;
                        continue;
                    }
                };
                let bytes = emit_report(&report, format);
                docs.push(String::from_utf8_lossy(&bytes).into_owned());
                if let Some(dir) = &cli.report_dir {
                    let ext = if cli.json { "json" } else { "txt" };
                    let path = dir.join(format!("{name}.{ext}"));
                    if let Err(e) = std::fs::write(&path, &bytes) {
                        return usage_exit(format!("{}: {e}", path.display()));
                    }
                }
                failed |= !report.passed();
            }
            if wrap {
                // one parseable array for several JSON reports
                let body: Vec<&str> = docs.iter().map(|d| d.trim_end()).collect();
                println!("[\n{}\n]", body.join(",\n"));
            } else {
                docs.iter().for_each(|d| print!("{d}"));
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
