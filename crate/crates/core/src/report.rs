//! Machine-readable verification reports.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One checked statement. `pass` holds exactly when `computed` satisfies
/// the relation named by `expected`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Claim {
    pub fn new(
        claim: impl Into<String>,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        pass: bool,
    ) -> Self {
        Self {
            claim: claim.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        }
    }

    /// A claim that `computed == expected`.
    pub fn eq<T: PartialEq + fmt::Display>(claim: impl Into<String>, expected: T, computed: T) -> Self {
        let pass = expected == computed;
        Self::new(claim, expected, computed, pass)
    }

    /// A claim that a possibly unknown value equals `expected`.
    pub fn eq_opt<T: PartialEq + fmt::Display>(
        claim: impl Into<String>,
        expected: T,
        computed: Option<T>,
    ) -> Self {
        let pass = computed.as_ref() == Some(&expected);
        let computed = computed.map_or_else(|| "unknown (beyond the ball)".to_string(), |c| c.to_string());
        Self::new(claim, expected, computed, pass)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub elements_expanded: u64,
    pub peak_elements: u64,
    pub threads: usize,
    pub wall_ms: u64,
}

impl Stats {
    pub fn record_ball(&mut self, size: usize) {
        self.elements_expanded += size as u64;
        self.peak_elements = self.peak_elements.max(size as u64);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub n: Option<(i64, i64)>,
    pub radius: Option<u32>,
    pub convention: Option<String>,
    pub max_elements: usize,
    pub mem_cap: u64,
    pub deep: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: ReportParams,
    pub claims: Vec<Claim>,
    pub stats: Stats,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    /// JSON without the fields that vary between runs (timing and thread
    /// count); equal inputs give byte-identical output.
    pub fn stable_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("reports serialize");
        if let Some(stats) = value.get_mut("stats").and_then(|s| s.as_object_mut()) {
            stats.remove("wall_ms");
            stats.remove("threads");
        }
        serde_json::to_string_pretty(&value).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.claims {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: expected {}, computed {}", c.claim, c.expected, c.computed)?;
        }
        let passed = self.claims.iter().filter(|c| c.pass).count();
        write!(
            f,
            "  {passed}/{} claims pass; {} elements expanded, peak {}, {} ms",
            self.claims.len(),
            self.stats.elements_expanded,
            self.stats.peak_elements,
            self.stats.wall_ms
        )
    }
}
