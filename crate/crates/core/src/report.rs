//! Pass/fail records and report rendering shared by the verification
//! suites and the command-line front end.
//!
//! A record captures one check: an identifier, a human-readable claim, the
//! expected and computed values as rendered strings, a tolerance, and the
//! outcome.  Reports render either as an aligned text table or as JSON.
//! Default output is byte-identical across runs: wall-clock timings stay at
//! zero unless explicitly recorded.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub tolerance: f64,
    pub status: Status,
    pub runtime_ms: u64,
}

impl VerificationRecord {
    /// An exact check: passes iff the rendered values agree verbatim.
    pub fn exact(
        id: impl Into<String>,
        claim: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
    ) -> VerificationRecord {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        VerificationRecord {
            id: id.into(),
            claim: claim.into(),
            expected,
            computed,
            tolerance: 0.0,
            status,
            runtime_ms: 0,
        }
    }

    /// A numeric comparison: passes iff |computed - expected| <= tolerance.
    pub fn numeric(
        id: impl Into<String>,
        claim: impl Into<String>,
        expected: f64,
        computed: f64,
        tolerance: f64,
    ) -> VerificationRecord {
        let status = if (computed - expected).abs() <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationRecord {
            id: id.into(),
            claim: claim.into(),
            expected: render_f64(expected),
            computed: render_f64(computed),
            tolerance,
            status,
            runtime_ms: 0,
        }
    }

    /// A residual bound: passes iff 0 <= computed <= tolerance.
    pub fn bound(
        id: impl Into<String>,
        claim: impl Into<String>,
        computed: f64,
        tolerance: f64,
    ) -> VerificationRecord {
        let status = if computed.abs() <= tolerance { Status::Pass } else { Status::Fail };
        VerificationRecord {
            id: id.into(),
            claim: claim.into(),
            expected: format!("<= {}", render_f64(tolerance)),
            computed: render_f64(computed),
            tolerance,
            status,
            runtime_ms: 0,
        }
    }

    /// A predicate check with a rendered witness value.
    pub fn predicate(
        id: impl Into<String>,
        claim: impl Into<String>,
        holds: bool,
        witness: impl ToString,
    ) -> VerificationRecord {
        VerificationRecord {
            id: id.into(),
            claim: claim.into(),
            expected: "true".into(),
            computed: witness.to_string(),
            tolerance: 0.0,
            status: if holds { Status::Pass } else { Status::Fail },
            runtime_ms: 0,
        }
    }

    pub fn with_runtime(mut self, ms: u64) -> VerificationRecord {
        self.runtime_ms = ms;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Deterministic float rendering for report cells.
pub fn render_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x == x.trunc() && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:.6e}")
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<VerificationRecord>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, record: VerificationRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, records: Vec<VerificationRecord>) {
        self.records.extend(records);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(VerificationRecord::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// Aligned text table, one row per record, with a summary line.
    pub fn render_table(&self, timings: bool) -> String {
        let mut head = vec!["id", "claim", "expected", "computed", "status"];
        if timings {
            head.push("ms");
        }
        let mut rows: Vec<Vec<String>> = vec![head.iter().map(|s| s.to_string()).collect()];
        for r in &self.records {
            let mut row = vec![
                r.id.clone(),
                r.claim.clone(),
                r.expected.clone(),
                r.computed.clone(),
                r.status.to_string(),
            ];
            if timings {
                row.push(r.runtime_ms.to_string());
            }
            rows.push(row);
        }
        let cols = rows[0].len();
        let mut widths = vec![0usize; cols];
        for row in &rows {
            for (j, cell) in row.iter().enumerate() {
                widths[j] = widths[j].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for (i, row) in rows.iter().enumerate() {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, cell)| format!("{cell:<width$}", width = widths[j]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
            if i == 0 {
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                out.push_str(rule.join("  ").trim_end());
                out.push('\n');
            }
        }
        let passed = self.records.iter().filter(|r| r.passed()).count();
        out.push_str(&format!(
            "{} of {} checks passed\n",
            passed,
            self.records.len()
        ));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
