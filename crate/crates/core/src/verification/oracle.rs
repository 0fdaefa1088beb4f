//! A classical Turing machine interpreter, written against a sparse tape
//! and sharing no stepping code with the processors.

use std::collections::HashMap;

use thiserror::Error;

use crate::syntax::{Direction, Instruction, State, Symbol, SyntaxProcedure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no halt within {0} steps")]
    MaxSteps(usize),
    #[error("invalid input symbol {0:?}")]
    InvalidInput(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleVerdict {
    pub accepted: bool,
    /// Configurations on the accepting path.
    pub time: Option<usize>,
}

/// A machine snapshot with an unbounded tape: absent cells are blank.
#[derive(Debug, Clone)]
pub(crate) struct ClassicalMachine {
    pub(crate) state: State,
    tape: HashMap<i64, Symbol>,
    head: i64,
}

impl ClassicalMachine {
    /// State `q0`, head on the blank left of the input.
    pub(crate) fn start(x: &str) -> Result<Self, OracleError> {
        let mut tape = HashMap::new();
        for (i, c) in x.chars().enumerate() {
            let s = match c {
                '0' => Symbol::Zero,
                '1' => Symbol::One,
                other => return Err(OracleError::InvalidInput(other)),
            };
            tape.insert(i as i64 + 1, s);
        }
        Ok(ClassicalMachine {
            state: State::Q(0),
            tape,
            head: 0,
        })
    }

    pub(crate) fn scanned(&self) -> Symbol {
        self.cell(self.head)
    }

    fn cell(&self, i: i64) -> Symbol {
        self.tape.get(&i).copied().unwrap_or(Symbol::Blank)
    }

    pub(crate) fn apply(&mut self, to: State, write: Symbol, dir: Direction) {
        if write == Symbol::Blank {
            self.tape.remove(&self.head);
        } else {
            self.tape.insert(self.head, write);
        }
        self.head += match dir {
            Direction::Left => -1,
            Direction::Right => 1,
        };
        self.state = to;
    }

    /// `(h, x[_])` or `(h, [_]x)` with `x` a blank-free word.
    pub(crate) fn is_successful(&self) -> bool {
        if self.state != State::Halt || self.scanned() != Symbol::Blank {
            return false;
        }
        let lo = self.tape.keys().min().copied();
        let hi = self.tape.keys().max().copied();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return true;
        };
        let contiguous = |from: i64, to: i64| (from..=to).all(|i| self.tape.contains_key(&i));
        (hi < self.head && contiguous(lo, self.head - 1))
            || (lo > self.head && contiguous(self.head + 1, hi))
    }
}

fn lookup(table: &[Instruction], state: State, read: Symbol) -> Option<&Instruction> {
    table.iter().find(|i| i.from == state && i.read == read)
}

/// Runs deterministically until no instruction applies; accepts iff the
/// final configuration is successful. `max_steps` bounds the number of
/// transitions.
pub fn classical_tm_oracle(
    m: &SyntaxProcedure,
    x: &str,
    max_steps: usize,
) -> Result<OracleVerdict, OracleError> {
    let table: Vec<Instruction> = m.instructions().copied().collect();
    let mut machine = ClassicalMachine::start(x)?;
    let mut configurations = 1;
    loop {
        let Some(i) = lookup(&table, machine.state, machine.scanned()) else {
            let accepted = machine.is_successful();
            return Ok(OracleVerdict {
                accepted,
                time: accepted.then_some(configurations),
            });
        };
        if configurations > max_steps {
            return Err(OracleError::MaxSteps(max_steps));
        }
        machine.apply(i.to, i.write, i.dir);
        configurations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_procedure;

    #[test]
    fn subex_procedure_on_101() {
        let m = parse_procedure("q0,_/h,_,R\nh,0/h,0,R\nh,1/h,1,R").unwrap();
        assert_eq!(
            classical_tm_oracle(&m, "101", 100),
            Ok(OracleVerdict {
                accepted: true,
                time: Some(5)
            })
        );
    }

    #[test]
    fn empty_procedure_rejects() {
        assert_eq!(
            classical_tm_oracle(&SyntaxProcedure::empty(), "0", 100),
            Ok(OracleVerdict {
                accepted: false,
                time: None
            })
        );
    }

    #[test]
    fn left_step_into_halt_on_empty_input() {
        let m = parse_procedure("q0,_/h,_,L").unwrap();
        assert_eq!(
            classical_tm_oracle(&m, "", 100),
            Ok(OracleVerdict {
                accepted: true,
                time: Some(2)
            })
        );
    }

    #[test]
    fn divergence_and_bad_input() {
        let m = parse_procedure("q0,_/q0,_,R").unwrap();
        assert_eq!(
            classical_tm_oracle(&m, "", 10),
            Err(OracleError::MaxSteps(10))
        );
        assert_eq!(
            classical_tm_oracle(&m, "a", 10),
            Err(OracleError::InvalidInput('a'))
        );
    }

    #[test]
    fn successful_shapes_on_the_sparse_tape() {
        // (h, 1_1[_]) has an interior blank
        let m = parse_procedure("q0,_/q1,_,R\nq1,1/q2,1,R\nq2,1/q3,_,R\nq3,1/h,1,R").unwrap();
        assert_eq!(
            classical_tm_oracle(&m, "111", 100),
            Ok(OracleVerdict {
                accepted: false,
                time: None
            })
        );
        // (h, [_]1) after erasing the leading 1 of "11"
        let m = parse_procedure("q0,_/q1,_,R\nq1,1/h,_,R").unwrap();
        assert_eq!(
            classical_tm_oracle(&m, "11", 100),
            Ok(OracleVerdict {
                accepted: false,
                time: None
            })
        );
        let m = parse_procedure("q0,_/q1,_,R\nq1,1/q2,_,R\nq2,1/h,1,L").unwrap();
        assert_eq!(
            classical_tm_oracle(&m, "11", 100),
            Ok(OracleVerdict {
                accepted: true,
                time: Some(4)
            })
        );
    }
}
