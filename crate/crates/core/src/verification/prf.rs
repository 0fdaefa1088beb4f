//! Recognizing a classical language in the evolving environment with a
//! procedure that only ever halts as `(h, [_]y)`, so the evolving acceptor
//! is never consulted.

use serde::Serialize;

use super::oracle::classical_tm_oracle;
use crate::session::{open_session, EnvironmentKind, SessionError};
use crate::syntax::{HaltPattern, SyntaxProcedure};
use crate::transcript::RecordedQuery;

/// Decides `{1^n 0 : n >= 0}`: scan `1*0`, check the next cell is blank,
/// return to the left end and halt on the blank before the word.
pub fn left_returning_ones_then_zero() -> SyntaxProcedure {
    "q0,_/q1,_,R
q1,1/q1,1,R
q1,0/q2,0,R
q2,_/q3,_,L
q3,0/q3,0,L
q3,1/q3,1,L
q3,_/q4,_,R
q4,0/h,0,L
q4,1/h,1,L"
        .parse()
        .expect("well-formed procedure")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrfSample {
    pub input: String,
    pub evolving: bool,
    /// `None` when the oracle ran out of steps.
    pub oracle: Option<bool>,
    pub rerun_evolving: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrfReport {
    pub samples: Vec<PrfSample>,
    /// Success-box queries that reached the evolving acceptor.
    pub acceptor_queries: usize,
}

impl PrfReport {
    pub fn passed(&self) -> bool {
        self.acceptor_queries == 0
            && self
                .samples
                .iter()
                .all(|s| Some(s.evolving) == s.oracle && s.evolving == s.rerun_evolving)
    }
}

/// Runs `m` on every sample twice in one evolving session and compares
/// each verdict with the classical oracle.
pub fn theorem_prf_check(
    m: &SyntaxProcedure,
    samples: &[String],
    max_steps: usize,
) -> Result<PrfReport, SessionError> {
    let mut session = open_session(EnvironmentKind::Evolving, 0);
    let mut first = Vec::with_capacity(samples.len());
    for x in samples {
        first.push(session.membership(m, x, max_steps)?);
    }
    let mut out = Vec::with_capacity(samples.len());
    for (x, evolving) in samples.iter().zip(first) {
        let rerun_evolving = session.membership(m, x, max_steps)?;
        let oracle = classical_tm_oracle(m, x, max_steps)
            .ok()
            .map(|v| v.accepted);
        out.push(PrfSample {
            input: x.clone(),
            evolving,
            oracle,
            rerun_evolving,
        });
    }
    let acceptor_queries = session
        .export_transcript()
        .queries()?
        .into_iter()
        .filter(|q| {
            matches!(q, RecordedQuery::Sbox { config, .. }
                if matches!(config.halt_pattern(), Some(HaltPattern::HeadRight(_))))
        })
        .count();
    Ok(PrfReport {
        samples: out,
        acceptor_queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::words_of_length;

    fn in_language(x: &str) -> bool {
        x.ends_with('0') && x[..x.len() - 1].chars().all(|c| c == '1')
    }

    #[test]
    fn hand_examples() {
        let m = left_returning_ones_then_zero();
        let r = theorem_prf_check(&m, &["110".into(), "011".into()], 1000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.samples[0].evolving);
        assert!(!r.samples[1].evolving);
    }

    #[test]
    fn matches_the_language_on_short_words() {
        let m = left_returning_ones_then_zero();
        let samples: Vec<String> = (0..=6).flat_map(words_of_length).collect();
        let r = theorem_prf_check(&m, &samples, 1000).unwrap();
        assert!(r.passed());
        for s in &r.samples {
            assert_eq!(s.evolving, in_language(&s.input), "{}", s.input);
        }
    }
}
