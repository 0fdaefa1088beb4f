//! Persistently evolving machinery: the evolving acceptor seeded with the
//! empty automaton, and the success box built on it.

mod nfa1;

pub use nfa1::{
    AutomatonError, AutomatonSnapshot, EvolutionCost, Nfa1, Nfa1RunOutcome, SnapshotTransition,
    StateId,
};

use crate::processor::{UniversalProcessor, Verdict};
use crate::static_env::tbox_s;
use crate::syntax::{parse_word, word_to_string, Bit, Configuration, HaltPattern, Instruction};

/// An automaton that evolves on every query and remembers what it answered.
///
/// Each query first evolves the automaton on the input, then answers
/// whether the evolved automaton accepts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolvingAcceptor {
    current: Nfa1,
    history: Vec<(String, bool)>,
    step_counter: u64,
}

impl Default for EvolvingAcceptor {
    fn default() -> Self {
        Self::new()
    }
}

impl EvolvingAcceptor {
    /// Starts from the one-state empty automaton.
    pub fn new() -> Self {
        Self::from_automaton(Nfa1::empty())
    }

    pub fn from_automaton(initial: Nfa1) -> Self {
        EvolvingAcceptor {
            current: initial,
            history: Vec::new(),
            step_counter: 0,
        }
    }

    pub fn query(&mut self, x: &str) -> Result<bool, AutomatonError> {
        let word = parse_word(x)?;
        Ok(self.query_word(&word))
    }

    pub fn query_word(&mut self, word: &[Bit]) -> bool {
        let cost = self.current.evolve_in_place(word);
        let out = self.current.accepts(word);
        self.step_counter += cost.total() + word.len() as u64;
        self.history.push((word_to_string(word), out));
        out
    }

    pub fn current(&self) -> &Nfa1 {
        &self.current
    }

    pub fn history(&self) -> &[(String, bool)] {
        &self.history
    }

    pub fn step_counter(&self) -> u64 {
        self.step_counter
    }

    /// Longest input answered with 1 so far.
    pub fn longest_accepted(&self) -> Option<usize> {
        self.history
            .iter()
            .filter(|(_, b)| *b)
            .map(|(x, _)| x.len())
            .max()
    }
}

/// Evolves from `initial` through `inputs` and checks that every answer
/// given along the way is reproduced by every later automaton in the chain.
pub fn check_persistence(initial: &Nfa1, inputs: &[String]) -> Result<bool, AutomatonError> {
    let words = inputs
        .iter()
        .map(|x| parse_word(x))
        .collect::<Result<Vec<_>, _>>()?;
    let mut chain = Vec::with_capacity(words.len());
    let mut answers = Vec::with_capacity(words.len());
    let mut current = initial.clone();
    for word in &words {
        current.evolve_in_place(word);
        answers.push(current.accepts(word));
        chain.push(current.clone());
    }
    for (i, word) in words.iter().enumerate() {
        for later in &chain[i..] {
            if later.peek_output(word) != answers[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Success box whose answers on `(h, x[_])` come from an evolving acceptor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvolvingSuccessBox {
    acceptor: EvolvingAcceptor,
}

impl EvolvingSuccessBox {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(h, [_]x)` is YES without consulting the acceptor; `(h, x[_])` is
    /// YES iff the acceptor outputs 1 on `x`; everything else is NO.
    pub fn query(&mut self, c: &Configuration) -> Verdict {
        match c.halt_pattern() {
            Some(HaltPattern::HeadLeft(_)) => Verdict::Yes,
            Some(HaltPattern::HeadRight(x)) => self.acceptor.query_word(&x).into(),
            None => Verdict::No,
        }
    }

    pub fn acceptor(&self) -> &EvolvingAcceptor {
        &self.acceptor
    }
}

/// The persistently evolving universal processor: the static transition box
/// paired with an evolving success box.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvolvingProcessor {
    success: EvolvingSuccessBox,
}

impl EvolvingProcessor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn success_box(&self) -> &EvolvingSuccessBox {
        &self.success
    }
}

impl UniversalProcessor for EvolvingProcessor {
    fn tbox(&mut self, c: &Configuration, i: &Instruction) -> Option<Configuration> {
        tbox_s(c, i)
    }

    fn sbox(&mut self, c: &Configuration) -> Verdict {
        self.success.query(c)
    }
}
