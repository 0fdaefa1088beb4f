use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{parse_word, Bit, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("start state s{0} is not a state of the automaton")]
    UnknownStart(u32),
    #[error("transition s{from} --{symbol}--> s{to} mentions an unknown state")]
    UnknownTransitionState { from: u32, symbol: char, to: u32 },
    #[error("accepting state s{0} is not a state of the automaton")]
    UnknownAccepting(u32),
}

pub type StateId = u32;

/// A finite automaton over `{0, 1}` with at most one transition per
/// `(state, symbol)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa1 {
    states: BTreeSet<StateId>,
    start: StateId,
    delta: BTreeMap<(StateId, Bit), StateId>,
    accepting: BTreeSet<StateId>,
    next_fresh: StateId,
}

/// How a run over a word ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nfa1RunOutcome {
    Accepted,
    StoppedNonAccepting {
        at: StateId,
        one_step_to_accept: bool,
    },
    /// No transition for the next symbol; `consumed` symbols were read.
    Crashed {
        at: StateId,
        consumed: usize,
    },
}

/// Operation counts charged by one evolution: one per symbol read, per
/// transition added, per accepting-set insertion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvolutionCost {
    pub symbols_read: u64,
    pub transitions_added: u64,
    pub accepting_added: u64,
}

impl EvolutionCost {
    pub fn total(&self) -> u64 {
        self.symbols_read + self.transitions_added + self.accepting_added
    }
}

impl Nfa1 {
    /// The one-state automaton with no transitions and nothing accepting.
    pub fn empty() -> Self {
        Nfa1 {
            states: BTreeSet::from([0]),
            start: 0,
            delta: BTreeMap::new(),
            accepting: BTreeSet::new(),
            next_fresh: 1,
        }
    }

    pub fn new(
        states: impl IntoIterator<Item = StateId>,
        start: StateId,
        delta: impl IntoIterator<Item = ((StateId, Bit), StateId)>,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, AutomatonError> {
        let states: BTreeSet<_> = states.into_iter().collect();
        if !states.contains(&start) {
            return Err(AutomatonError::UnknownStart(start));
        }
        let mut table = BTreeMap::new();
        for ((from, symbol), to) in delta {
            if !states.contains(&from) || !states.contains(&to) {
                return Err(AutomatonError::UnknownTransitionState {
                    from,
                    symbol: symbol.as_char(),
                    to,
                });
            }
            table.insert((from, symbol), to);
        }
        let accepting: BTreeSet<_> = accepting.into_iter().collect();
        if let Some(&bad) = accepting.iter().find(|s| !states.contains(s)) {
            return Err(AutomatonError::UnknownAccepting(bad));
        }
        let next_fresh = states.iter().next_back().map_or(0, |m| m + 1);
        Ok(Nfa1 {
            states,
            start,
            delta: table,
            accepting,
            next_fresh,
        })
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn transition(&self, from: StateId, symbol: Bit) -> Option<StateId> {
        self.delta.get(&(from, symbol)).copied()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Bit, StateId)> + '_ {
        self.delta.iter().map(|(&(f, s), &t)| (f, s, t))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.len()
    }

    /// `|states| + |transitions|`.
    pub fn size(&self) -> usize {
        self.states.len() + self.delta.len()
    }

    pub fn run(&self, word: &[Bit]) -> Nfa1RunOutcome {
        self.run_counted(word).0
    }

    /// Runs and reports how many symbols were read.
    fn run_counted(&self, word: &[Bit]) -> (Nfa1RunOutcome, u64) {
        let mut at = self.start;
        for (consumed, &a) in word.iter().enumerate() {
            match self.transition(at, a) {
                Some(next) => at = next,
                None => return (Nfa1RunOutcome::Crashed { at, consumed }, consumed as u64),
            }
        }
        let read = word.len() as u64;
        if self.accepting.contains(&at) {
            return (Nfa1RunOutcome::Accepted, read);
        }
        let one_step_to_accept = Bit::ALL.iter().any(|&a| {
            self.transition(at, a)
                .is_some_and(|s| self.accepting.contains(&s))
        });
        (
            Nfa1RunOutcome::StoppedNonAccepting {
                at,
                one_step_to_accept,
            },
            read,
        )
    }

    pub fn run_str(&self, x: &str) -> Result<Nfa1RunOutcome, AutomatonError> {
        Ok(self.run(&parse_word(x)?))
    }

    pub fn accepts(&self, word: &[Bit]) -> bool {
        self.run(word) == Nfa1RunOutcome::Accepted
    }

    /// The evolution function, applied in place.
    ///
    /// 1. accepted: unchanged;
    /// 2. stopped in a non-accepting `p`: unchanged if some symbol leads from
    ///    `p` into an accepting state, otherwise `p` becomes accepting;
    /// 3. crashed at `q` with suffix `a_{i+1}..a_k` unread: a chain of fresh
    ///    states spelling the suffix is grafted at `q`, its last state accepting.
    pub fn evolve_in_place(&mut self, word: &[Bit]) -> EvolutionCost {
        let (outcome, symbols_read) = self.run_counted(word);
        let mut cost = EvolutionCost {
            symbols_read,
            ..EvolutionCost::default()
        };
        match outcome {
            Nfa1RunOutcome::Accepted => {}
            Nfa1RunOutcome::StoppedNonAccepting {
                at,
                one_step_to_accept,
            } => {
                if !one_step_to_accept {
                    self.accepting.insert(at);
                    cost.accepting_added += 1;
                }
            }
            Nfa1RunOutcome::Crashed { at, consumed } => {
                let mut from = at;
                for &a in &word[consumed..] {
                    let fresh = self.next_fresh;
                    self.next_fresh += 1;
                    self.states.insert(fresh);
                    self.delta.insert((from, a), fresh);
                    cost.transitions_added += 1;
                    from = fresh;
                }
                self.accepting.insert(from);
                cost.accepting_added += 1;
            }
        }
        cost
    }

    pub fn evolve(&self, word: &[Bit]) -> Nfa1 {
        let mut next = self.clone();
        next.evolve_in_place(word);
        next
    }

    pub fn evolve_str(&self, x: &str) -> Result<Nfa1, AutomatonError> {
        Ok(self.evolve(&parse_word(x)?))
    }

    /// The bit this automaton would answer for `word` without committing
    /// the evolution: whether the evolved automaton accepts `word`.
    pub fn peek_output(&self, word: &[Bit]) -> bool {
        self.evolve(word).accepts(word)
    }

    /// Whether every state, transition and accepting state of `self` is
    /// present in `later`.
    pub fn is_contained_in(&self, later: &Nfa1) -> bool {
        self.start == later.start
            && self.states.is_subset(&later.states)
            && self.accepting.is_subset(&later.accepting)
            && self
                .delta
                .iter()
                .all(|(k, v)| later.delta.get(k) == Some(v))
    }

    pub fn snapshot(&self) -> AutomatonSnapshot {
        AutomatonSnapshot {
            states: self.states.iter().copied().collect(),
            start: self.start,
            transitions: self
                .transitions()
                .map(|(from, symbol, to)| SnapshotTransition {
                    from,
                    symbol: symbol.as_char().to_string(),
                    to,
                })
                .collect(),
            accepting: self.accepting.iter().copied().collect(),
        }
    }
}

/// JSON export of an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonSnapshot {
    pub states: Vec<StateId>,
    pub start: StateId,
    pub transitions: Vec<SnapshotTransition>,
    pub accepting: Vec<StateId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotTransition {
    pub from: StateId,
    pub symbol: String,
    pub to: StateId,
}

impl AutomatonSnapshot {
    pub fn to_automaton(&self) -> Result<Nfa1, AutomatonError> {
        let delta = self
            .transitions
            .iter()
            .map(|t| {
                let bit = match t.symbol.as_str() {
                    "0" => Bit::Zero,
                    "1" => Bit::One,
                    other => {
                        let c = other.chars().next().unwrap_or(' ');
                        return Err(AutomatonError::Syntax(SyntaxError::InvalidInputSymbol(c)));
                    }
                };
                Ok(((t.from, bit), t.to))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Nfa1::new(
            self.states.iter().copied(),
            self.start,
            delta,
            self.accepting.iter().copied(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Bit::{One as I, Zero as O};

    fn w(x: &str) -> Vec<Bit> {
        parse_word(x).unwrap()
    }

    /// q0 -1-> s1 -1-> s2 -1-> s3, accepting {s3}.
    fn chain3() -> Nfa1 {
        Nfa1::new(
            [0, 1, 2, 3],
            0,
            [((0, I), 1), ((1, I), 2), ((2, I), 3)],
            [3],
        )
        .unwrap()
    }

    #[test]
    fn run_outcomes() {
        assert_eq!(
            Nfa1::empty().run(&w("111")),
            Nfa1RunOutcome::Crashed { at: 0, consumed: 0 }
        );
        assert_eq!(
            chain3().run(&w("11")),
            Nfa1RunOutcome::StoppedNonAccepting {
                at: 2,
                one_step_to_accept: true
            }
        );
        assert_eq!(chain3().run(&w("111")), Nfa1RunOutcome::Accepted);
        assert_eq!(
            chain3().run(&w("10")),
            Nfa1RunOutcome::Crashed { at: 1, consumed: 1 }
        );
        assert!(Nfa1::empty().run_str("1a").is_err());
    }

    #[test]
    fn evolution_cases() {
        let grown = Nfa1::empty().evolve(&w("111"));
        assert_eq!(grown, chain3());
        assert_eq!(grown.evolve(&w("11")), grown);
        assert_eq!(grown.evolve(&w("111")), grown);

        // case 2 without a one-step accepting successor: the stop state joins F
        let after = grown.evolve(&w("1"));
        assert_eq!(after.accepting(), &BTreeSet::from([1, 3]));
        assert_eq!(after.transition_count(), grown.transition_count());
    }

    #[test]
    fn crash_mid_word_grafts_the_unread_suffix() {
        let grown = chain3().evolve(&w("100"));
        assert_eq!(grown.transition(1, O), Some(4));
        assert_eq!(grown.transition(4, O), Some(5));
        assert!(grown.accepts(&w("100")));
        assert!(chain3().is_contained_in(&grown));
    }

    #[test]
    fn empty_word_on_the_empty_automaton_is_accepted() {
        let m0 = Nfa1::empty();
        assert_eq!(
            m0.run(&[]),
            Nfa1RunOutcome::StoppedNonAccepting {
                at: 0,
                one_step_to_accept: false
            }
        );
        let grown = m0.evolve(&[]);
        assert!(grown.accepts(&[]));
        assert_eq!(grown.accepting(), &BTreeSet::from([0]));
    }

    #[test]
    fn validation() {
        assert_eq!(
            Nfa1::new([0], 1, [], []),
            Err(AutomatonError::UnknownStart(1))
        );
        assert!(Nfa1::new([0], 0, [((0, O), 7)], []).is_err());
        assert_eq!(
            Nfa1::new([0], 0, [], [2]),
            Err(AutomatonError::UnknownAccepting(2))
        );
    }

    #[test]
    fn snapshot_round_trip() {
        let a = chain3().evolve(&w("0"));
        let json = serde_json::to_string(&a.snapshot()).unwrap();
        let back: AutomatonSnapshot = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_automaton().unwrap(), a);
        assert_eq!(
            serde_json::to_string(&Nfa1::empty().evolve(&w("1")).snapshot()).unwrap(),
            r#"{"states":[0,1],"start":0,"transitions":[{"from":0,"symbol":"1","to":1}],"accepting":[1]}"#
        );
    }
}
