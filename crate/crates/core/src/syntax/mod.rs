//! The programming language shared by every universal processor: tape
//! symbols, machine states, instructions, configurations and
//! syntax-procedures.
//!
//! All text forms render the blank as `_`.

mod config;
mod procedure;

pub use config::{initial_config, Configuration, HaltPattern};
pub use procedure::{check_determinism, format_procedure, parse_procedure, SyntaxProcedure};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("invalid input symbol {0:?}: input words range over {{0, 1}}")]
    InvalidInputSymbol(char),
    #[error("invalid tape symbol {0:?}")]
    InvalidTapeSymbol(char),
    #[error("invalid state {0:?}")]
    InvalidState(String),
    #[error("invalid direction {0:?}")]
    InvalidDirection(String),
    #[error("malformed instruction {0:?}")]
    MalformedInstruction(String),
    #[error("malformed configuration {0:?}")]
    MalformedConfiguration(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: instruction {instruction} conflicts with {existing} on the same (state, symbol) pair")]
    Nondeterministic {
        line: usize,
        instruction: Instruction,
        existing: Instruction,
    },
}

/// A cell content: one of the input symbols `0`, `1` or the blank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Zero,
    One,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Blank];

    pub fn is_blank(self) -> bool {
        self == Symbol::Blank
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => '_',
        }
    }

    pub fn from_char(c: char) -> Result<Self, SyntaxError> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            '_' => Ok(Symbol::Blank),
            other => Err(SyntaxError::InvalidTapeSymbol(other)),
        }
    }

    pub fn as_bit(self) -> Option<Bit> {
        match self {
            Symbol::Zero => Some(Bit::Zero),
            Symbol::One => Some(Bit::One),
            Symbol::Blank => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An input symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

impl From<Bit> for Symbol {
    fn from(b: Bit) -> Self {
        match b {
            Bit::Zero => Symbol::Zero,
            Bit::One => Symbol::One,
        }
    }
}

/// Parses a word over `{0, 1}`.
pub fn parse_word(x: &str) -> Result<Vec<Bit>, SyntaxError> {
    x.chars()
        .map(|c| match c {
            '0' => Ok(Bit::Zero),
            '1' => Ok(Bit::One),
            other => Err(SyntaxError::InvalidInputSymbol(other)),
        })
        .collect()
}

pub fn word_to_string(w: &[Bit]) -> String {
    w.iter().map(|b| b.as_char()).collect()
}

/// All words of length `n` in lexicographic order (`0 < 1`).
pub fn words_of_length(n: usize) -> Vec<String> {
    (0..1u64 << n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if (i >> (n - 1 - j)) & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect()
        })
        .collect()
}

/// A machine state: the halting state `h` or an indexed state `q<i>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum State {
    Halt,
    Q(u32),
}

impl State {
    pub const INITIAL: State = State::Q(0);

    pub fn is_halt(self) -> bool {
        self == State::Halt
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Halt => write!(f, "h"),
            State::Q(i) => write!(f, "q{i}"),
        }
    }
}

impl FromStr for State {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "h" {
            return Ok(State::Halt);
        }
        s.strip_prefix('q')
            .filter(|digits| !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|digits| digits.parse().ok())
            .map(State::Q)
            .ok_or_else(|| SyntaxError::InvalidState(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Left => write!(f, "L"),
            Direction::Right => write!(f, "R"),
        }
    }
}

impl FromStr for Direction {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "L" => Ok(Direction::Left),
            "R" => Ok(Direction::Right),
            other => Err(SyntaxError::InvalidDirection(other.to_string())),
        }
    }
}

/// `[(from, read) -> (to, write, dir)]`.
///
/// Instructions out of `h` are legal; nothing in the instruction set
/// singles out the halting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instruction {
    pub from: State,
    pub read: Symbol,
    pub to: State,
    pub write: Symbol,
    pub dir: Direction,
}

impl Instruction {
    pub fn new(from: State, read: Symbol, to: State, write: Symbol, dir: Direction) -> Self {
        Instruction {
            from,
            read,
            to,
            write,
            dir,
        }
    }

    pub fn key(&self) -> (State, Symbol) {
        (self.from, self.read)
    }

    pub fn applies_to(&self, c: &Configuration) -> bool {
        self.from == c.state() && self.read == c.head()
    }
}

/// Renders in the procedure-file grammar: `q0,_/h,_,R`.
impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{}/{},{},{}",
            self.from, self.read, self.to, self.write, self.dir
        )
    }
}

impl FromStr for Instruction {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || SyntaxError::MalformedInstruction(s.to_string());
        let (lhs, rhs) = s.trim().split_once('/').ok_or_else(malformed)?;
        let lhs: Vec<&str> = lhs.split(',').collect();
        let rhs: Vec<&str> = rhs.split(',').collect();
        if lhs.len() != 2 || rhs.len() != 3 {
            return Err(malformed());
        }
        let symbol = |t: &str| {
            let mut chars = t.trim().chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Symbol::from_char(c),
                _ => Err(malformed()),
            }
        };
        Ok(Instruction {
            from: lhs[0].parse()?,
            read: symbol(lhs[1])?,
            to: rhs[0].parse()?,
            write: symbol(rhs[1])?,
            dir: rhs[2].parse()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn states_parse_and_render() {
        assert_eq!("h".parse::<State>().unwrap(), State::Halt);
        assert_eq!("q17".parse::<State>().unwrap(), State::Q(17));
        assert!("q".parse::<State>().is_err());
        assert!("p1".parse::<State>().is_err());
        assert!("q-1".parse::<State>().is_err());
        assert_eq!(State::Q(3).to_string(), "q3");
        assert_ne!(State::Halt, State::INITIAL);
    }

    #[test]
    fn instruction_round_trips_through_text() {
        let i: Instruction = "q0,_/h,_,R".parse().unwrap();
        assert_eq!(
            i,
            Instruction::new(
                State::Q(0),
                Symbol::Blank,
                State::Halt,
                Symbol::Blank,
                Direction::Right
            )
        );
        assert_eq!(i.to_string(), "q0,_/h,_,R");
        assert!("q0,_/h,_".parse::<Instruction>().is_err());
        assert!("q0,2/h,_,R".parse::<Instruction>().is_err());
        assert!("q0,_/h,_,U".parse::<Instruction>().is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("").unwrap(), vec![]);
        assert_eq!(parse_word("10").unwrap(), vec![Bit::One, Bit::Zero]);
        assert_eq!(parse_word("1_"), Err(SyntaxError::InvalidInputSymbol('_')));
        assert_eq!(words_of_length(2), vec!["00", "01", "10", "11"]);
        assert_eq!(words_of_length(0), vec![""]);
    }
}
