//! Verification reports: ordered claim lists with statuses and printable
//! certificates, serializable to stable JSON.
//!
//! A claim is `verified` when its check ran to completion, `bounded` when
//! it ran to completion up to an explicit finite bound stated in the
//! certificate, and `assumed` when it records a hypothesis that is not
//! finitely checkable (algebraic maximality, immediate extensions, genus
//! arguments); assumed claims carry whatever presented-subfield
//! computations support them. A check that errors out — including
//! precision exhaustion — produces a `failed` claim with the error as its
//! certificate, never a silent pass.
//!
//! Reports are deterministic: claim order is fixed by the scenario,
//! randomized checks use fixed seeds, and serialization is
//! insertion-ordered with no timestamps, so two runs with the same
//! parameters produce byte-identical JSON.

use serde::Serialize;

use crate::error::{Error, Result};

/// Schema version of the JSON report.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Verified,
    Assumed,
    Bounded,
    Failed,
}

/// One checked (or recorded) statement.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub paper_location: String,
    pub status: ClaimStatus,
    pub certificate: String,
}

/// The full report for one scenario run.
#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub version: u32,
    pub scenario: String,
    pub parameters: crate::scenario::ScenarioParams,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn new(scenario: impl Into<String>, parameters: crate::scenario::ScenarioParams) -> Self {
        VerificationReport {
            version: REPORT_VERSION,
            scenario: scenario.into(),
            parameters,
            claims: Vec::new(),
        }
    }

    /// Runs a check and records it: `verified` on success, `failed` on
    /// error, with the returned text as the certificate.
    pub fn claim(
        &mut self,
        id: &str,
        description: &str,
        paper_location: &str,
        check: impl FnOnce() -> Result<String>,
    ) {
        self.push_outcome(id, description, paper_location, ClaimStatus::Verified, check());
    }

    /// Like [`Self::claim`], but a success is recorded as `bounded`: the
    /// check is exhaustive only up to a bound that the certificate states.
    pub fn bounded_claim(
        &mut self,
        id: &str,
        description: &str,
        paper_location: &str,
        check: impl FnOnce() -> Result<String>,
    ) {
        self.push_outcome(id, description, paper_location, ClaimStatus::Bounded, check());
    }

    /// Records a non-finitely-checkable hypothesis, with any supporting
    /// computations in the certificate.
    pub fn assumed_claim(
        &mut self,
        id: &str,
        description: &str,
        paper_location: &str,
        support: impl Into<String>,
    ) {
        self.claims.push(Claim {
            id: id.into(),
            description: description.into(),
            paper_location: paper_location.into(),
            status: ClaimStatus::Assumed,
            certificate: support.into(),
        });
    }

    fn push_outcome(
        &mut self,
        id: &str,
        description: &str,
        paper_location: &str,
        ok_status: ClaimStatus,
        outcome: Result<String>,
    ) {
        let (status, certificate) = match outcome {
            Ok(cert) => (ok_status, cert),
            Err(e) => (ClaimStatus::Failed, format!("FAILED: {e}")),
        };
        self.claims.push(Claim {
            id: id.into(),
            description: description.into(),
            paper_location: paper_location.into(),
            status,
            certificate,
        });
    }

    /// Whether every non-assumed claim ran to completion (the CLI exit
    /// criterion).
    pub fn all_checks_passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Failed)
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == ClaimStatus::Failed)
    }

    /// Stable pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is total");
        s.push('\n');
        s
    }
}

/// `Ok(())` if `cond` holds, else a claim failure carrying `msg`.
pub fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ClaimFailed(msg.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::ScenarioParams;

    #[test]
    fn statuses_and_exit_criterion() {
        let mut r = VerificationReport::new("demo", ScenarioParams::default());
        r.claim("ok", "a passing check", "Lemma demo", || Ok("fine".into()));
        r.assumed_claim("hyp", "a hypothesis", "Lemma demo", "cited");
        r.bounded_claim("search", "a bounded search", "Lemma demo", || {
            Ok("checked 10".into())
        });
        assert!(r.all_checks_passed());
        r.claim("bad", "a failing check", "Lemma demo", || {
            ensure(1 == 2, "arithmetic went wrong")?;
            Ok(String::new())
        });
        assert!(!r.all_checks_passed());
        let failed: Vec<_> = r.failed_claims().collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].certificate.contains("arithmetic went wrong"));
    }

    #[test]
    fn json_shape_is_stable() {
        let mut r = VerificationReport::new("demo", ScenarioParams::default());
        r.claim("ok", "a passing check", "Lemma demo", || Ok("fine".into()));
        let one = r.to_json();
        let two = r.to_json();
        assert_eq!(one, two);
        assert!(one.contains("\"version\": 1"));
        assert!(one.contains("\"status\": \"verified\""));
        assert!(one.ends_with('\n'));
    }
}
