//! Witnesses that the static and evolving processors simulate each other's
//! boxes within `2n` transitions, `n` being the length of the tape word.

use serde::Serialize;
use thiserror::Error;

use crate::processor::UniversalProcessor;
use crate::static_env::{sbox_s, tbox_s};
use crate::syntax::{Configuration, Direction, Instruction, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquivalenceDirection {
    StaticToEvolving,
    EvolvingToStatic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessGoal {
    /// The sequence must end exactly at `result`.
    Reach,
    /// The target success box must say YES on `result`.
    Accept,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("source success box does not accept {0}")]
    NotAccepted(String),
    #[error("source transition box is undefined on {config} with {instruction}")]
    Undefined { config: String, instruction: String },
    #[error("no witness within {bound} steps from {config}")]
    NoWitness { config: String, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    #[serde(serialize_with = "display")]
    pub source: Configuration,
    #[serde(serialize_with = "display_all")]
    pub instructions: Vec<Instruction>,
    #[serde(serialize_with = "display")]
    pub result: Configuration,
    /// `n`, the canonical tape length of the source.
    pub bound_n: usize,
    pub goal: WitnessGoal,
}

fn display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn display_all<S: serde::Serializer>(v: &[Instruction], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i.to_string()))
}

impl EquivalenceWitness {
    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn within_bound(&self) -> bool {
        self.len() <= 2 * self.bound_n
    }

    /// Drives `target` through the instruction sequence and checks the goal.
    pub fn replay<P: UniversalProcessor>(&self, target: &mut P) -> bool {
        let mut current = self.source.clone();
        for i in &self.instructions {
            match target.tbox(&current, i) {
                Some(next) => current = next,
                None => return false,
            }
        }
        current == self.result
            && match self.goal {
                WitnessGoal::Reach => true,
                WitnessGoal::Accept => target.sbox(&current).is_yes(),
            }
    }
}

/// Success-box simulation: from a configuration the source accepts, a
/// sequence of at most `2n` transitions to one the target accepts.
///
/// Both boxes accept `(h, [_]x)`, so it needs no transitions. From
/// `(h, x[_])` the static-to-evolving witness walks the head left with
/// `[(h, a) -> (h, a, L)]` until it reaches `(h, [_]x)`, which the evolving
/// box accepts without consulting its acceptor. Anything the evolving box
/// accepts is already one of the static box's halting shapes.
pub fn sbox_witness(
    c: &Configuration,
    direction: EquivalenceDirection,
) -> Result<EquivalenceWitness, EquivalenceError> {
    if c.halt_pattern().is_none() {
        return Err(EquivalenceError::NotAccepted(c.to_string()));
    }
    debug_assert!(sbox_s(c).is_yes());
    let n = c.tape_len();
    let mut instructions = Vec::new();
    let mut current = c.clone();
    if direction == EquivalenceDirection::StaticToEvolving {
        while current.head_left_word().is_none() {
            if instructions.len() == 2 * n {
                return Err(EquivalenceError::NoWitness {
                    config: c.to_string(),
                    bound: 2 * n,
                });
            }
            let a = current.head();
            let walk = Instruction::new(State::Halt, a, State::Halt, a, Direction::Left);
            current = tbox_s(&current, &walk).expect("walk instruction matches the scanned cell");
            instructions.push(walk);
        }
    }
    Ok(EquivalenceWitness {
        source: c.clone(),
        instructions,
        result: current,
        bound_n: n,
        goal: WitnessGoal::Accept,
    })
}

/// Transition-box simulation: both processors share the transition box, so
/// a single step is simulated by the same single step.
pub fn tbox_witness(
    c: &Configuration,
    i: &Instruction,
    _direction: EquivalenceDirection,
) -> Result<EquivalenceWitness, EquivalenceError> {
    let result = tbox_s(c, i).ok_or_else(|| EquivalenceError::Undefined {
        config: c.to_string(),
        instruction: i.to_string(),
    })?;
    Ok(EquivalenceWitness {
        source: c.clone(),
        instructions: vec![*i],
        result,
        bound_n: c.tape_len(),
        goal: WitnessGoal::Reach,
    })
}

/// Every canonical configuration the static success box accepts with tape
/// length at most `max_len`.
pub fn accepted_configurations(max_len: usize) -> Vec<Configuration> {
    let mut out = Vec::new();
    for word_len in 0..max_len {
        for x in crate::syntax::words_of_length(word_len) {
            out.push(Configuration::halted_left(&x).expect("word"));
            if word_len > 0 {
                out.push(Configuration::halted_right(&x).expect("word"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolving::EvolvingProcessor;
    use crate::static_env::StaticProcessor;

    fn conf(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn left_walk_from_a_right_halt() {
        let w = sbox_witness(&conf("(h, 11[_])"), EquivalenceDirection::StaticToEvolving).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.result, conf("(h, [_]11)"));
        assert_eq!(w.bound_n, 3);
        assert!(w.within_bound());
        assert!(w.replay(&mut EvolvingProcessor::new()));
        assert!(w.replay(&mut StaticProcessor));
    }

    #[test]
    fn left_halts_need_no_steps() {
        for d in [
            EquivalenceDirection::StaticToEvolving,
            EquivalenceDirection::EvolvingToStatic,
        ] {
            let w = sbox_witness(&conf("(h, [_]11)"), d).unwrap();
            assert!(w.is_empty());
            assert!(w.replay(&mut EvolvingProcessor::new()));
            assert!(w.replay(&mut StaticProcessor));
        }
        let w = sbox_witness(&conf("(h, 11[_])"), EquivalenceDirection::EvolvingToStatic).unwrap();
        assert!(w.is_empty());
        assert!(w.replay(&mut StaticProcessor));
    }

    #[test]
    fn single_steps_are_simulated_by_themselves() {
        let i: Instruction = "q1,1/q2,1,L".parse().unwrap();
        let w = tbox_witness(
            &conf("(q1, 00[1]101)"),
            &i,
            EquivalenceDirection::StaticToEvolving,
        )
        .unwrap();
        assert_eq!(w.len(), 1);
        assert!(w.replay(&mut EvolvingProcessor::new()));
        assert!(tbox_witness(
            &conf("(q0, [_])"),
            &i,
            EquivalenceDirection::EvolvingToStatic
        )
        .is_err());
    }

    #[test]
    fn rejects_non_accepted_sources() {
        assert!(sbox_witness(&conf("(q1, [_]1)"), EquivalenceDirection::StaticToEvolving).is_err());
    }

    #[test]
    fn accepted_configuration_count() {
        // (h,[_]) plus two shapes per nonempty word of length < 3
        assert_eq!(accepted_configurations(3).len(), 1 + 2 * (2 + 4));
        assert!(accepted_configurations(4)
            .iter()
            .all(|c| sbox_s(c).is_yes()));
    }
}
