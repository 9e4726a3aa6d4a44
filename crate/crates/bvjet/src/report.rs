//! Machine-readable verification reports.
//!
//! Reports are deterministic for a fixed seed: checks are sorted by name
//! and wall-clock timings are only present when explicitly requested.

use serde::Serialize;

#[derive(Serialize, Clone, Debug)]
pub struct CheckItem {
    /// Stable identifier, unique within a suite.
    pub name: String,
    /// What algebraic fact the check pins down, in one sentence.
    pub anchor: String,
    pub pass: bool,
    /// Number of terms left in the residual (0 on pass).
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckItem {
    pub fn pass(name: &str, anchor: &str) -> Self {
        CheckItem {
            name: name.into(),
            anchor: anchor.into(),
            pass: true,
            residual_terms: 0,
            detail: None,
            wall_ms: None,
        }
    }

    pub fn fail(name: &str, anchor: &str, residual_terms: usize, detail: String) -> Self {
        CheckItem {
            name: name.into(),
            anchor: anchor.into(),
            pass: false,
            residual_terms,
            detail: Some(detail),
            wall_ms: None,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn new(suite: &str, algebra: &str, seed: u64) -> Self {
        VerificationReport {
            schema: 1,
            suite: suite.into(),
            algebra: algebra.into(),
            seed,
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.passed &= item.pass;
        self.checks.push(item);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    /// Sort checks by name and serialize. Timings are stripped unless
    /// `with_timings` is set.
    pub fn finish(mut self, with_timings: bool) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        if !with_timings {
            for c in &mut self.checks {
                c.wall_ms = None;
            }
        }
        self
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_sorted_and_tracks_failures() {
        let mut r = VerificationReport::new("demo", "ab1", 7);
        r.push(CheckItem::pass("b_second", "anchor"));
        r.push(CheckItem::fail("a_first", "anchor", 3, "residual".into()));
        let r = r.finish(false);
        assert!(!r.passed);
        assert_eq!(r.checks[0].name, "a_first");
        let json = r.to_json_string();
        assert!(json.contains("\"schema\": 1"));
        assert!(json.ends_with('\n'));
        assert!(!json.contains("wall_ms"));
    }
}
