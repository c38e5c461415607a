//! Claim records and report files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Format;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Recorded without a pass/fail assertion.
    Reported,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub location: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witness: Value,
    pub runtime_ms: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub generated_at: String,
    pub command: String,
    pub claims: Vec<ClaimRecord>,
}

impl Report {
    /// Claims are ordered by id.
    pub fn new(command: &str, mut claims: Vec<ClaimRecord>) -> Report {
        claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
        Report {
            schema: SCHEMA_VERSION,
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: command.to_string(),
            claims,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# modlab report: {}\n", self.command);
        let _ = writeln!(s, "generated_at: {}\n", self.generated_at);
        let _ = writeln!(s, "| claim | verdict | location |");
        let _ = writeln!(s, "|---|---|---|");
        for c in &self.claims {
            let _ = writeln!(
                s,
                "| `{}` | {} | {} |",
                c.claim_id,
                verdict_word(c.verdict),
                c.location
            );
        }
        for c in &self.claims {
            let _ = writeln!(s, "\n## {}\n", c.claim_id);
            let _ = writeln!(s, "- verdict: {}", verdict_word(c.verdict));
            let _ = writeln!(s, "- location: {}", c.location);
            let _ = writeln!(s, "- seed: {}", c.seed);
            let _ = writeln!(s, "- runtime_ms: {}", c.runtime_ms);
            for (k, v) in &c.parameters {
                let _ = writeln!(s, "- {k}: {v}");
            }
            let _ = writeln!(
                s,
                "\n```json\n{}\n```",
                serde_json::to_string_pretty(&c.witness).unwrap_or_default()
            );
        }
        s
    }

    /// Writes the requested files and returns their paths.
    pub fn write(&self, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        if matches!(format, Format::Json | Format::Both) {
            let p = dir.join("report.json");
            std::fs::write(&p, self.to_json())
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            written.push(p);
        }
        if matches!(format, Format::Md | Format::Both) {
            let p = dir.join("report.md");
            std::fs::write(&p, self.to_markdown())
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            written.push(p);
        }
        Ok(written)
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Reported => "reported",
    }
}

/// Drops the lines that legitimately differ between identical runs.
pub fn strip_volatile(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("generated_at") && !l.contains("runtime_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, verdict: Verdict) -> ClaimRecord {
        ClaimRecord {
            claim_id: id.into(),
            location: "somewhere".into(),
            parameters: BTreeMap::from([("q".to_string(), Value::from(5))]),
            verdict,
            witness: serde_json::json!({"x": 1}),
            runtime_ms: 3,
            seed: 0,
        }
    }

    #[test]
    fn sorted_and_round_trips() {
        let r = Report::new(
            "test",
            vec![record("b", Verdict::Pass), record("a", Verdict::Reported)],
        );
        assert_eq!(r.claims[0].claim_id, "a");
        assert!(r.all_pass());
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_markdown().contains("| `b` | pass |"));
        let f = Report::new("test", vec![record("a", Verdict::Fail)]);
        assert!(!f.all_pass());
    }

    #[test]
    fn volatile_lines_removed() {
        let r = Report::new("test", vec![record("a", Verdict::Pass)]);
        let s = strip_volatile(&r.to_json());
        assert!(!s.contains("generated_at") && !s.contains("runtime_ms"));
        assert!(s.contains("claim_id"));
    }
}
