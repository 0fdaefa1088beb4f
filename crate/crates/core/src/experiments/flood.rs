use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::subex_procedure;
use crate::session::{Session, SessionError, DEFAULT_MAX_STEPS};
use crate::syntax::{words_of_length, HaltPattern};
use crate::transcript::RecordedQuery;

#[derive(Debug, Error)]
pub enum FloodError {
    #[error("event {seq} already queried the success box on a length-{length} word")]
    AlreadyQueried { seq: u64, length: usize },
    #[error(transparent)]
    Session(#[from] SessionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloodReport {
    pub m: usize,
    /// Every input run, in order.
    pub queried_inputs: Vec<String>,
    /// Membership of the length-`m+1` words, as they were flooded.
    pub pre_verdicts: BTreeMap<String, bool>,
    /// Membership of the length-`m` words, asked after the flood.
    pub post_verdicts: BTreeMap<String, bool>,
}

impl FloodReport {
    pub fn accepted(&self) -> usize {
        self.pre_verdicts.values().filter(|b| **b).count()
            + self.post_verdicts.values().filter(|b| **b).count()
    }

    pub fn rejected(&self) -> usize {
        self.queried_inputs.len() - self.accepted()
    }

    /// All longer words accepted and all shorter ones rejected.
    pub fn holds(&self) -> bool {
        self.pre_verdicts.values().all(|b| *b) && self.post_verdicts.values().all(|b| !*b)
    }
}

/// Runs the walk procedure on every word of length `m+1`, then on every
/// word of length `m`. Refuses if the session already asked the success
/// box about a word of either length.
pub fn flood(session: &mut Session, m: usize) -> Result<FloodReport, FloodError> {
    for q in session
        .export_transcript()
        .queries()
        .map_err(SessionError::from)?
    {
        if let RecordedQuery::Sbox { seq, config, .. } = q {
            if let Some(HaltPattern::HeadRight(x)) = config.halt_pattern() {
                if x.len() == m || x.len() == m + 1 {
                    return Err(FloodError::AlreadyQueried {
                        seq,
                        length: x.len(),
                    });
                }
            }
        }
    }
    let walk = subex_procedure();
    let mut report = FloodReport {
        m,
        queried_inputs: Vec::new(),
        pre_verdicts: BTreeMap::new(),
        post_verdicts: BTreeMap::new(),
    };
    for x in words_of_length(m + 1) {
        let b = session.membership(&walk, &x, DEFAULT_MAX_STEPS)?;
        report.queried_inputs.push(x.clone());
        report.pre_verdicts.insert(x, b);
    }
    for x in words_of_length(m) {
        let b = session.membership(&walk, &x, DEFAULT_MAX_STEPS)?;
        report.queried_inputs.push(x.clone());
        report.post_verdicts.insert(x, b);
    }
    Ok(report)
}
