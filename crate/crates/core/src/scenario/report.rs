//! Scenario reports and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::homology::BettiTable;

/// Version of the JSON layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    pub operation: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub checks: Vec<Check>,
}

impl Step {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Betti tables in a serializable shape: `rows[r][i] = β_{i,i+r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiJson {
    pub first_row: i32,
    pub rows: Vec<Vec<usize>>,
    pub totals: Vec<usize>,
}

impl BettiJson {
    pub fn from_table(t: &BettiTable) -> Self {
        let n = t.length() + 1;
        let rows_used: Vec<i32> = t.entries.keys().map(|&(i, j)| j - i as i32).collect();
        let lo = rows_used.iter().copied().min().unwrap_or(0);
        let hi = rows_used.iter().copied().max().unwrap_or(-1);
        let rows = (lo..=hi)
            .map(|r| (0..n).map(|i| t.get(i, i as i32 + r)).collect())
            .collect();
        BettiJson {
            first_row: lo,
            rows,
            totals: t.totals(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Tables {
    pub betti: BTreeMap<String, BettiJson>,
    pub hilbert: BTreeMap<String, BTreeMap<i32, i64>>,
    pub certificates: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub schema: u32,
    pub scenario: String,
    pub seed: u64,
    pub experimental: bool,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
    pub tables: Tables,
    /// Text renderings of the Betti tables, kept out of the JSON.
    #[serde(skip)]
    pub betti_text: BTreeMap<String, String>,
}

impl ScenarioReport {
    pub fn new(scenario: &str, seed: u64, experimental: bool) -> Self {
        ScenarioReport {
            schema: REPORT_SCHEMA,
            scenario: scenario.to_string(),
            seed,
            experimental,
            steps: Vec::new(),
            verdict: Verdict::Pass,
            tables: Tables::default(),
            betti_text: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn push_step(&mut self, step: Step) {
        if !step.passed() {
            self.verdict = Verdict::Fail;
        }
        self.steps.push(step);
    }

    pub fn betti(&mut self, key: &str, t: &BettiTable) {
        self.tables.betti.insert(key.to_string(), BettiJson::from_table(t));
        self.betti_text.insert(key.to_string(), t.to_text());
    }

    pub fn hilbert(&mut self, key: &str, table: BTreeMap<i32, i64>) {
        self.tables.hilbert.insert(key.to_string(), table);
    }

    pub fn certificate<T: Serialize>(&mut self, key: &str, c: &T) {
        let v = serde_json::to_value(c).expect("certificates serialize");
        self.tables.certificates.insert(key.to_string(), v);
    }

    /// Recomputes the verdict from the steps.
    pub fn finish(mut self) -> Self {
        self.verdict = if self.steps.iter().all(Step::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Renders a report. Both formats are deterministic functions of the report.
pub fn emit_report(r: &ScenarioReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Text => text(r).into_bytes(),
    }
}

fn text(r: &ScenarioReport) -> String {
    let mut out = String::new();
    let tag = if r.experimental { " (experimental)" } else { "" };
    let _ = writeln!(out, "scenario {}{tag}  seed {}", r.scenario, r.seed);
    for (n, s) in r.steps.iter().enumerate() {
        let _ = writeln!(out, "\n[{}] {}  {}", n + 1, s.operation, if s.passed() { "ok" } else { "FAILED" });
        for i in &s.inputs {
            let _ = writeln!(out, "    in   {i}");
        }
        for o in &s.outputs {
            let _ = writeln!(out, "    out  {o}");
        }
        for c in &s.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "    {mark} {}", c.name);
            } else {
                let _ = writeln!(out, "    {mark} {}: {}", c.name, c.detail);
            }
        }
    }
    for (k, t) in &r.betti_text {
        let _ = writeln!(out, "\nBetti table {k}");
        for l in t.lines() {
            let _ = writeln!(out, "    {l}");
        }
    }
    for (k, h) in &r.tables.hilbert {
        let _ = writeln!(out, "\nHilbert function {k}");
        let w = h
            .iter()
            .map(|(d, v)| d.to_string().len().max(v.to_string().len()))
            .max()
            .unwrap_or(1);
        let degs: Vec<String> = h.keys().map(|d| format!("{d:>w$}")).collect();
        let vals: Vec<String> = h.values().map(|v| format!("{v:>w$}")).collect();
        let _ = writeln!(out, "    n  {}", degs.join(" "));
        let _ = writeln!(out, "    h  {}", vals.join(" "));
    }
    let _ = writeln!(
        out,
        "\nverdict: {}",
        if r.passed() { "pass" } else { "fail" }
    );
    out
}
