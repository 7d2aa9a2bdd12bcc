use cmperiods::csperiods::IdentityReport;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Serialize)]
pub struct Outcome {
    command: String,
    prec: u32,
    checks: Vec<Value>,
    values: BTreeMap<String, Value>,
    #[serde(skip)]
    failures: usize,
    #[serde(skip)]
    rows: Vec<Row>,
}

#[derive(Debug)]
struct Row {
    check: String,
    inputs: String,
    digits: i64,
    pass: bool,
    lhs: String,
    rhs: String,
}

impl Outcome {
    pub fn new(command: &str, prec: u32) -> Self {
        Self {
            command: command.to_string(),
            prec,
            checks: Vec::new(),
            values: BTreeMap::new(),
            failures: 0,
            rows: Vec::new(),
        }
    }

    pub fn check(&mut self, report: &IdentityReport) {
        let json = serde_json::to_value(report).expect("report serializes");
        let field = |k: &str| json[k].as_str().unwrap_or_default().to_string();
        let inputs = report.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        self.rows.push(Row {
            check: report.name.clone(),
            inputs,
            digits: report.digits_agreed,
            pass: report.pass,
            lhs: field("lhs_log"),
            rhs: field("rhs_log"),
        });
        if !report.pass {
            self.failures += 1;
        }
        self.checks.push(json);
    }

    /// An exact (integer) check with no numeric sides.
    pub fn exact(&mut self, name: &str, inputs: BTreeMap<String, String>, lhs: String, rhs: String) {
        let pass = lhs == rhs;
        let digits = if pass { -1 } else { 0 };
        let json = serde_json::json!({
            "check": name,
            "inputs": inputs,
            "lhs_log": lhs,
            "rhs_log": rhs,
            "digits_agreed": digits,
            "pass": pass,
        });
        self.rows.push(Row {
            check: name.to_string(),
            inputs: inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "),
            digits,
            pass,
            lhs,
            rhs,
        });
        if !pass {
            self.failures += 1;
        }
        self.checks.push(json);
    }

    pub fn value(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(key.to_string(), serde_json::to_value(v).expect("value serializes"));
    }

    pub fn all_pass(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outcome serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (prec {})", self.command, self.prec);
        for r in &self.rows {
            let digits = if r.digits < 0 { "exact".to_string() } else { format!("{} digits", r.digits) };
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {verdict}  {:<22} {:<28} {digits}", r.check, r.inputs);
            if !r.pass {
                let _ = writeln!(out, "        lhs: {}", r.lhs);
                let _ = writeln!(out, "        rhs: {}", r.rhs);
            }
        }
        if !self.values.is_empty() {
            let _ = writeln!(out, "values:");
            for (k, v) in &self.values {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "  {k}: {shown}");
            }
        }
        let total = self.rows.len();
        if total > 0 {
            let _ = writeln!(out, "{} of {total} checks passed", total - self.failures);
        }
        out
    }
}
