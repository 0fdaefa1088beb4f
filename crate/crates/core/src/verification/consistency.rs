//! Any finite input/output record of a well-defined box is also the
//! behaviour of some static machine. Given the pairs, build one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evolving::{AutomatonError, AutomatonSnapshot, Nfa1, StateId};
use crate::syntax::{parse_word, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error("input {input:?} was answered both 0 and 1")]
    Conflict { input: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// A fixed automaton reading `{0,1}*`; it never changes after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticAcceptor {
    automaton: Nfa1,
}

impl StaticAcceptor {
    pub fn automaton(&self) -> &Nfa1 {
        &self.automaton
    }

    pub fn output(&self, x: &str) -> Result<bool, SyntaxError> {
        Ok(self.automaton.accepts(&parse_word(x)?))
    }

    /// Pairs whose recorded output this acceptor gives back.
    pub fn reproduces(&self, pairs: &[(String, bool)]) -> usize {
        pairs
            .iter()
            .filter(|(x, b)| self.output(x).ok() == Some(*b))
            .count()
    }
}

/// Serializable evidence that a static machine explains a transcript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyCertificate {
    pub pairs: Vec<(String, bool)>,
    pub automaton: AutomatonSnapshot,
    pub reproduced: usize,
}

impl ConsistencyCertificate {
    pub fn new(pairs: &[(String, bool)]) -> Result<Self, ConsistencyError> {
        let acceptor = build_consistent_static(pairs)?;
        Ok(ConsistencyCertificate {
            pairs: pairs.to_vec(),
            automaton: acceptor.automaton.snapshot(),
            reproduced: acceptor.reproduces(pairs),
        })
    }

    /// Rebuilds the automaton from the snapshot and re-checks every pair.
    pub fn verify(&self) -> bool {
        let Ok(automaton) = self.automaton.to_automaton() else {
            return false;
        };
        let acceptor = StaticAcceptor { automaton };
        let n = acceptor.reproduces(&self.pairs);
        n == self.pairs.len() && n == self.reproduced
    }
}

/// Prefix-tree automaton over the queried inputs; exactly the inputs
/// answered 1 are accepting. Repeated pairs are fine, contradictory ones
/// are not.
pub fn build_consistent_static(
    pairs: &[(String, bool)],
) -> Result<StaticAcceptor, ConsistencyError> {
    let mut answers: BTreeMap<&str, bool> = BTreeMap::new();
    for (x, b) in pairs {
        if let Some(prev) = answers.insert(x.as_str(), *b) {
            if prev != *b {
                return Err(ConsistencyError::Conflict { input: x.clone() });
            }
        }
    }
    let mut states: BTreeSet<StateId> = BTreeSet::from([0]);
    let mut delta = BTreeMap::new();
    let mut accepting = BTreeSet::new();
    let mut next: StateId = 1;
    for (x, b) in answers {
        let mut at = 0;
        for a in parse_word(x)? {
            at = *delta.entry((at, a)).or_insert_with(|| {
                states.insert(next);
                next += 1;
                next - 1
            });
        }
        if b {
            accepting.insert(at);
        }
    }
    Ok(StaticAcceptor {
        automaton: Nfa1::new(states, 0, delta, accepting)?,
    })
}
