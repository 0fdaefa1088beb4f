use serde::Serialize;

use super::flood::{flood, FloodError, FloodReport};
use super::subex_procedure;
use crate::session::{open_session, EnvironmentKind, DEFAULT_MAX_STEPS};
use crate::transcript::Transcript;

/// Both refutation moves against a claimed horizon `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pt1Report {
    pub k: usize,
    /// Move (a): flooding length `k+2` empties length `k+1`.
    pub flood: FloodReport,
    #[serde(skip)]
    pub flood_transcript: Transcript,
    /// Move (b): a fresh word longer than anything determined is accepted.
    pub fresh_input: String,
    pub fresh_accepted: bool,
    #[serde(skip)]
    pub fresh_transcript: Transcript,
}

impl Pt1Report {
    pub fn holds(&self) -> bool {
        self.flood.holds() && self.fresh_accepted
    }
}

pub fn theorem_pt1_demo(k: usize) -> Result<Pt1Report, FloodError> {
    let mut a = open_session(EnvironmentKind::Evolving, 0);
    let flood_report = flood(&mut a, k + 1)?;

    let mut b = open_session(EnvironmentKind::Evolving, 0);
    let fresh_input = "1".repeat(k + 3);
    let fresh_accepted = b.membership(&subex_procedure(), &fresh_input, DEFAULT_MAX_STEPS)?;

    Ok(Pt1Report {
        k,
        flood: flood_report,
        flood_transcript: a.export_transcript(),
        fresh_input,
        fresh_accepted,
        fresh_transcript: b.export_transcript(),
    })
}
