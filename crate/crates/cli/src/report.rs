//! Check records and the dual-format report.
//!
//! The structured form is JSON with a versioned schema and fixed field
//! order; serialization is deterministic, so equal runs produce equal
//! bytes. The text form is free-form, one line per check.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// One verified statement: name, digest of its inputs, outcome, witness
/// lines, and the anchor naming the mathematical fact being checked (or
/// "plumbing" for infrastructure checks).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub inputs_digest: String,
    pub passed: bool,
    pub witness: Vec<String>,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub seed: u64,
    pub lattice: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

impl Report {
    pub fn new(seed: u64, lattice: String, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        let failed = checks.len() - passed;
        Report {
            schema_version: SCHEMA_VERSION,
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            lattice,
            summary: Summary {
                total: checks.len(),
                passed,
                failed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "llvkit {} | seed {} | lattice {}\n",
            self.toolkit_version, self.seed, self.lattice
        ));
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{status}] {}.{} ({}) [{}]\n",
                c.suite, c.name, c.inputs_digest, c.anchor
            ));
            for w in &c.witness {
                out.push_str(&format!("       {w}\n"));
            }
        }
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }

    pub fn emit(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.to_text(),
            ReportFormat::Structured => self.to_json(),
        }
    }
}

/// FNV-1a 64-bit digest of a canonical input description, as fixed-width
/// hex. Stable fingerprint, not cryptographic.
pub fn digest(parts: &[&str]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for byte in part.as_bytes() {
            hash ^= u64::from(*byte);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash ^= 0x1f;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        Report::new(
            7,
            "kummer(2)".into(),
            vec![
                CheckRecord {
                    suite: "sl2".into(),
                    name: "bracket".into(),
                    inputs_digest: digest(&["a"]),
                    passed: true,
                    witness: vec!["25 samples".into()],
                    anchor: "sl2 triple relations".into(),
                },
                CheckRecord {
                    suite: "sl2".into(),
                    name: "broken".into(),
                    inputs_digest: digest(&["b"]),
                    passed: false,
                    witness: vec![],
                    anchor: "plumbing".into(),
                },
            ],
        )
    }

    #[test]
    fn counts_match_records() {
        let r = sample_report();
        assert_eq!(r.summary.total, 2);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert!(!r.all_passed());
    }

    #[test]
    fn empty_report_has_zero_counts() {
        let r = Report::new(1, "U".into(), vec![]);
        assert_eq!(r.summary.total, 0);
        assert!(r.all_passed());
        assert!(r.to_text().contains("0 checks, 0 passed, 0 failed"));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample_report();
        let json = r.to_json();
        let back = Report::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        assert_eq!(digest(&["x"]), digest(&["x"]));
        assert_ne!(digest(&["x"]), digest(&["y"]));
        assert_ne!(digest(&["ab"]), digest(&["a", "b"]));
    }
}
