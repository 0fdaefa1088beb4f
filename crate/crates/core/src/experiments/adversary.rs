//! The free-will adversary against a candidate decider for
//! `L' = { x : some y with |y| = |x| is accepted by the walk procedure }`.
//!
//! Given a candidate `M'` and per-length step budgets, the adversary picks
//! `w = 0^n` beyond everything already determined, reads `M'`'s path on `w`
//! through the transition box alone, prepares the success box according to
//! which `(h, x[_])` configurations that path would show it, lets `M'`
//! decide `w`, and then steers the environment so that `M'` was wrong.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::subex_procedure;
use crate::session::{
    open_session, Action, ActionResult, EnvironmentKind, Session, SessionError, DEFAULT_MAX_STEPS,
};
use crate::syntax::{
    format_procedure, initial_config, words_of_length, Configuration, HaltPattern, SyntaxProcedure,
};
use crate::transcript::UNDEFINED;

#[derive(Debug, Error)]
pub enum AdversaryError {
    #[error("budget f({n}) = {budget} is not below 2^{n}")]
    NotSubexponential { n: usize, budget: usize },
    #[error("no length in the range exceeds the determined horizon {horizon} with a budget entry")]
    NoLength { horizon: usize },
    /// The candidate did not halt within its own budget, which already
    /// refutes the claimed bound.
    #[error("candidate needs more than f({n}) = {budget} configurations on {w}")]
    BudgetExceeded { n: usize, budget: usize, w: String },
    #[error("no contradiction: candidate said {verdict}, ground truth {truth}")]
    NoContradiction { verdict: bool, truth: bool },
    #[error(transparent)]
    Session(#[from] SessionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdversaryCase {
    /// The candidate's path never shows the acceptor anything.
    Quiet,
    /// Some configuration on the path is `(h, x[_])`.
    Touching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    /// Reading the candidate's path through the transition box.
    Path,
    /// Running the walk procedure on `v0` for `v` in `E(w)` then `D(w)`.
    Prepare,
    /// The candidate deciding `w`.
    Candidate,
    /// Steering after the verdict.
    Steer,
    /// Membership of every length-`|w|` word under the walk procedure.
    Truth,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryStep {
    pub phase: Phase,
    #[serde(flatten)]
    pub action: Action,
    pub result: ActionResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryCertificate {
    pub candidate: String,
    pub f_table: BTreeMap<usize, usize>,
    /// The claimed threshold beyond which the budget applies.
    pub k: usize,
    /// `max(longest accepted so far, k)`.
    pub horizon: usize,
    pub w: String,
    pub path: Vec<String>,
    /// Configurations of the path of the form `(h, x[_])`.
    pub s: Vec<String>,
    pub h: Vec<String>,
    pub e: Vec<String>,
    pub d: Vec<String>,
    pub case: AdversaryCase,
    /// The fresh word steered into the language, when the candidate said no.
    pub z: Option<String>,
    pub interaction: Vec<AdversaryStep>,
    pub verdict: bool,
    pub truth: bool,
}

impl AdversaryCertificate {
    /// Re-executes the interaction in a fresh evolving session; true iff
    /// every answer matches and the contradiction is reproduced.
    pub fn replay(&self) -> Result<bool, SessionError> {
        let mut session = open_session(EnvironmentKind::Evolving, 0);
        let mut verdict = None;
        let mut truth = false;
        for step in &self.interaction {
            let result = session.apply(&step.action)?;
            if result != step.result {
                return Ok(false);
            }
            match step.phase {
                Phase::Candidate => verdict = Some(result.answer == "SUCCESS"),
                Phase::Truth => truth |= result.answer == "SUCCESS",
                _ => {}
            }
        }
        Ok(verdict == Some(self.verdict) && truth == self.truth && self.verdict != self.truth)
    }
}

struct Recorder {
    session: Session,
    steps: Vec<AdversaryStep>,
}

impl Recorder {
    fn apply(&mut self, phase: Phase, action: Action) -> Result<ActionResult, SessionError> {
        let result = self.session.apply(&action)?;
        self.steps.push(AdversaryStep {
            phase,
            action,
            result: result.clone(),
        });
        Ok(result)
    }

    fn walk(&mut self, phase: Phase, x: &str) -> Result<bool, SessionError> {
        let action = Action::run(&subex_procedure(), x, DEFAULT_MAX_STEPS);
        Ok(self.apply(phase, action)?.answer == "SUCCESS")
    }
}

/// Steps onto the first cell and back, halting at `(h, [_]x)` on every
/// input without consulting the acceptor.
pub fn accept_all_procedure() -> SyntaxProcedure {
    "q0,_/q1,_,R\nq1,0/h,0,L\nq1,1/h,1,L\nq1,_/h,_,L"
        .parse()
        .expect("well-formed procedure")
}

/// Plays the adversary against `candidate` in a fresh evolving session.
/// `n_range.start - 1` is taken as the candidate's threshold `k`.
pub fn adversary_subex(
    candidate: &SyntaxProcedure,
    f_table: &BTreeMap<usize, usize>,
    n_range: Range<usize>,
) -> Result<AdversaryCertificate, AdversaryError> {
    for n in n_range.clone() {
        if let Some(&budget) = f_table.get(&n) {
            if n < usize::BITS as usize && budget >= 1 << n {
                return Err(AdversaryError::NotSubexponential { n, budget });
            }
        }
    }
    let mut rec = Recorder {
        session: open_session(EnvironmentKind::Evolving, 0),
        steps: Vec::new(),
    };
    let k = n_range.start.saturating_sub(1);
    // a fresh acceptor has accepted nothing yet
    let horizon = k;
    let Some((n, budget)) = n_range
        .clone()
        .filter(|n| *n > horizon)
        .find_map(|n| f_table.get(&n).map(|b| (n, *b)))
    else {
        return Err(AdversaryError::NoLength { horizon });
    };
    let w = "0".repeat(n);

    // path(w) through the transition box only
    let mut path = vec![initial_config(&w).map_err(SessionError::from)?];
    loop {
        let current = path.last().expect("nonempty").clone();
        let Some(i) = candidate.select(&current).copied() else {
            break;
        };
        if path.len() == budget {
            return Err(AdversaryError::BudgetExceeded { n, budget, w });
        }
        let answer = rec.apply(
            Phase::Path,
            Action::Tbox {
                config: current.to_string(),
                instruction: i.to_string(),
            },
        )?;
        if answer.answer == UNDEFINED {
            break;
        }
        path.push(
            answer
                .answer
                .parse::<Configuration>()
                .map_err(SessionError::from)?,
        );
    }

    let s: Vec<&Configuration> = path
        .iter()
        .filter(|c| matches!(c.halt_pattern(), Some(HaltPattern::HeadRight(_))))
        .collect();
    let h: BTreeSet<String> = s.iter().map(|c| c.associated_string()).collect();
    let e: Vec<String> = h.iter().filter(|x| x.len() == n).cloned().collect();
    let d: Vec<String> = h.iter().filter(|x| x.len() == n + 2).cloned().collect();
    let case = if s.is_empty() {
        AdversaryCase::Quiet
    } else {
        AdversaryCase::Touching
    };

    if case == AdversaryCase::Touching {
        for v in e.iter().chain(&d) {
            rec.walk(Phase::Prepare, &format!("{v}0"))?;
        }
    }

    let verdict = rec
        .apply(Phase::Candidate, Action::run(candidate, &w, budget - 1))?
        .answer
        == "SUCCESS";

    let mut z = None;
    if verdict {
        // make every length-n word one step short of an accepted word
        let extensions: Vec<String> = match case {
            AdversaryCase::Quiet => words_of_length(n + 1),
            AdversaryCase::Touching => words_of_length(n)
                .into_iter()
                .map(|v| format!("{v}0"))
                .collect(),
        };
        for x in extensions {
            rec.walk(Phase::Steer, &x)?;
        }
    } else {
        // a length-n word neither of whose successors reached the acceptor
        let seen: BTreeSet<String> = rec
            .session
            .export_transcript()
            .observed_pairs()
            .map_err(SessionError::from)?
            .into_iter()
            .map(|(x, _)| x)
            .collect();
        let fresh = words_of_length(n)
            .into_iter()
            .find(|v| !seen.contains(&format!("{v}0")) && !seen.contains(&format!("{v}1")));
        if let Some(v) = &fresh {
            rec.walk(Phase::Steer, v)?;
        }
        z = fresh;
    }

    let mut truth = false;
    for v in words_of_length(n) {
        truth |= rec.walk(Phase::Truth, &v)?;
    }
    if verdict == truth {
        return Err(AdversaryError::NoContradiction { verdict, truth });
    }

    Ok(AdversaryCertificate {
        candidate: format_procedure(candidate),
        f_table: f_table.clone(),
        k,
        horizon,
        w,
        path: path.iter().map(|c| c.to_string()).collect(),
        s: s.iter().map(|c| c.to_string()).collect(),
        h: h.into_iter().collect(),
        e,
        d,
        case,
        z,
        interaction: rec.steps,
        verdict,
        truth,
    })
}
