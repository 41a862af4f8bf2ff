//! Mechanical verification of the structural theorems over a registry of
//! example sets.

pub mod registry;
pub mod suite;
pub mod verify;

use serde::Serialize;

use crate::error::Error;

/// Outcome of one check.
///
/// `Fail` is reserved for a conclusion failing while every hypothesis is
/// certified, which would contradict the theorem. A conclusion failing
/// outside the hypotheses is `Inapplicable`, with the report's `holds`
/// recording what was observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
    Skipped { needed_horizon: usize, reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "n/a",
            Verdict::Skipped { .. } => "skip",
        }
    }
}

/// What the registry claims about a property of a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Holds,
    Fails,
    /// Nothing is claimed; the observation is reported but never counted.
    Unclaimed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: &'static str,
    pub citation: &'static str,
    pub set: String,
    pub inputs: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Whether the checked conclusion was observed, hypotheses aside.
    pub holds: Option<bool>,
    pub witnesses: Vec<String>,
    pub horizon_used: usize,
}

impl TheoremReport {
    pub(crate) fn new(theorem: &'static str, citation: &'static str, set: &str, inputs: String) -> Self {
        TheoremReport {
            theorem,
            citation,
            set: set.to_string(),
            inputs,
            verdict: Verdict::Inapplicable,
            holds: None,
            witnesses: Vec::new(),
            horizon_used: 0,
        }
    }

    /// Pass or fail when the hypotheses hold, inapplicable otherwise.
    pub(crate) fn judge(mut self, hypotheses: bool, holds: bool) -> Self {
        self.holds = Some(holds);
        self.verdict = match (hypotheses, holds) {
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Fail,
            (false, _) => Verdict::Inapplicable,
        };
        self
    }

    /// Turns a horizon error into a skipped report; other errors pass through.
    pub(crate) fn skipped_on(self, e: Error) -> Result<Self, Error> {
        match e {
            Error::HorizonInsufficient { context, needed, .. } => Ok(TheoremReport {
                verdict: Verdict::Skipped { needed_horizon: needed, reason: context },
                ..self
            }),
            e => Err(e),
        }
    }
}
