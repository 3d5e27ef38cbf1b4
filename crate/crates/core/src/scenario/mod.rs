//! Input documents, named end-to-end scenarios and their reports.
//!
//! Every scenario is a plain function of [`ScenarioOptions`]; the command-line
//! front end only parses flags and prints what [`run_scenario`] returns.

mod builtin;
pub mod input;
pub mod report;

use crate::error::{Error, Result};

pub use input::{parse_input, InputDocument, NamedIdeal, NamedMatrix, NamedModule};
pub use report::{
    emit_report, BettiJson, Check, ReportFormat, ScenarioReport, Step, Tables, Verdict,
    REPORT_SCHEMA,
};

/// Registered scenario names with a one-line description.
pub const SCENARIOS: &[(&str, &str)] = &[
    ("skew-lines", "Rao module, Betti table and links of two skew lines in P3"),
    ("twisted-cubic-link", "the twisted cubic linked to a line, plus a biliaison"),
    ("quadric-quintic", "quartic plus secant line on a smooth quadric threefold"),
    ("line-conic-line", "a line linked to a line by a conic on a smooth quadric"),
    ("lesperance", "two conics through a point: Rao module, annihilator, links on a cone"),
    ("cone-planes", "the two rank-one ACM modules on the quadric cone and their extension"),
    ("spinor", "the spinor bundle on a smooth quadric and the Serre correspondence"),
    ("knoerrer-tower", "matrix factorizations from a 1x1 seed through Knoerrer's construction"),
    ("rao-roundtrip", "curves realizing a given Rao module"),
    ("cubic-surface-points", "links of small point sets on the Fermat cubic (experimental)"),
];

#[derive(Clone, Debug)]
pub struct ScenarioOptions {
    pub seed: u64,
    /// Upper end of the Hilbert function tables in the report.
    pub max_degree: i32,
    /// Budget for random "general" choices.
    pub retries: usize,
    /// Optional user data replacing the built-in ideals where a scenario
    /// supports it.
    pub input: Option<InputDocument>,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions {
            seed: 1,
            max_degree: 6,
            retries: 16,
            input: None,
        }
    }
}

/// Runs one registered scenario. Unknown names are usage errors; failures of
/// the mathematics are recorded in the report and never returned as `Err`.
pub fn run_scenario(name: &str, options: &ScenarioOptions) -> Result<ScenarioReport> {
    if !SCENARIOS.iter().any(|(n, _)| *n == name) {
        let known: Vec<&str> = SCENARIOS.iter().map(|(n, _)| *n).collect();
        return Err(Error::Usage(format!(
            "unknown scenario `{name}`; known: {}",
            known.join(", ")
        )));
    }
    if options.max_degree < 0 {
        return Err(Error::Usage("max degree must be nonnegative".into()));
    }
    let mut run = Run::new(name, options);
    builtin::dispatch(name, &mut run);
    Ok(run.finish())
}

/// Runs several scenarios, concurrently when `parallel` is set. The reports
/// come back in input order and do not depend on the mode.
pub fn run_scenarios(
    names: &[String],
    options: &ScenarioOptions,
    parallel: bool,
) -> Vec<Result<ScenarioReport>> {
    if !parallel {
        return names.iter().map(|n| run_scenario(n, options)).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| s.spawn(move || run_scenario(n, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    })
}

/// Accumulates one step of a report.
pub(crate) struct StepBuilder {
    step: Step,
}

impl StepBuilder {
    fn new(operation: &str) -> Self {
        StepBuilder {
            step: Step {
                operation: operation.to_string(),
                inputs: Vec::new(),
                outputs: Vec::new(),
                checks: Vec::new(),
            },
        }
    }

    pub(crate) fn input(&mut self, s: impl Into<String>) {
        self.step.inputs.push(s.into());
    }

    pub(crate) fn output(&mut self, s: impl Into<String>) {
        self.step.outputs.push(s.into());
    }

    pub(crate) fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.step.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }
}

pub(crate) struct Run<'a> {
    pub(crate) report: ScenarioReport,
    pub(crate) opts: &'a ScenarioOptions,
}

impl<'a> Run<'a> {
    fn new(name: &str, opts: &'a ScenarioOptions) -> Self {
        let experimental = name == "cubic-surface-points";
        Run {
            report: ScenarioReport::new(name, opts.seed, experimental),
            opts,
        }
    }

    /// Records a step; an `Err` becomes a failed `completed` check and `None`.
    pub(crate) fn step<T>(
        &mut self,
        operation: &str,
        f: impl FnOnce(&mut StepBuilder, &mut ScenarioReport) -> Result<T>,
    ) -> Option<T> {
        let mut sb = StepBuilder::new(operation);
        let out = f(&mut sb, &mut self.report);
        if let Err(e) = &out {
            sb.check("completed", false, e.to_string());
        }
        self.report.push_step(sb.step);
        out.ok()
    }

    fn finish(self) -> ScenarioReport {
        self.report.finish()
    }
}
