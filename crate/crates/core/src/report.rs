//! Command reports: plain text for people, JSON for scripts.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

/// Everything except `elapsed_ms` is a pure function of the inputs and seed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub parameters: Vec<(String, String)>,
    pub facts: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            ..Report::default()
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) {
        self.parameters.push((name.to_string(), value.to_string()));
    }

    pub fn fact(&mut self, name: &str, value: impl ToString) {
        self.facts.push((name.to_string(), value.to_string()));
    }

    pub fn section(&mut self, title: &str, lines: Vec<String>) {
        self.sections.push(Section {
            title: title.to_string(),
            lines,
        });
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.counterexample.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for (k, v) in &self.parameters {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for (k, v) in &self.facts {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!("{}:\n", s.title));
            for l in &s.lines {
                out.push_str(&format!("  {l}\n"));
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("[{mark}] {} ({d})\n", c.name)),
                None => out.push_str(&format!("[{mark}] {}\n", c.name)),
            }
        }
        if let Some(cx) = &self.counterexample {
            out.push_str("counterexample:\n");
            for l in cx.lines() {
                out.push_str(&format!("  {l}\n"));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out.push_str(if self.passed() {
            "verdict: ok\n"
        } else {
            "verdict: violated\n"
        });
        out
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v["verdict"] = serde_json::Value::from(if self.passed() { "ok" } else { "violated" });
        serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
    }
}
