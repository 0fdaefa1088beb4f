use std::fmt;
use std::str::FromStr;

use super::{parse_word, word_to_string, Bit, Direction, State, Symbol, SyntaxError};

/// A machine state together with a tape and head position, `(q, x[a]y)`.
///
/// Configurations are always held in canonical form: the tape keeps the
/// written region plus the head cell, and blanks outside the outermost
/// non-blank (or the head, whichever is further out) are dropped. Equality
/// is therefore equality of canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    state: State,
    cells: Vec<Symbol>,
    head: usize,
}

/// Which successful shape a halted configuration has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaltPattern {
    /// `(h, [_]x)`
    HeadLeft(Vec<Bit>),
    /// `(h, x[_])`
    HeadRight(Vec<Bit>),
}

/// `C_{0,x} = (q0, [_]x)`.
pub fn initial_config(x: &str) -> Result<Configuration, SyntaxError> {
    let word = parse_word(x)?;
    Ok(Configuration::from_parts(
        State::INITIAL,
        Vec::new(),
        Symbol::Blank,
        word.into_iter().map(Symbol::from).collect(),
    ))
}

impl Configuration {
    /// Builds a configuration from a raw `(state, left, head, right)` and
    /// canonicalizes it.
    pub fn from_parts(state: State, left: Vec<Symbol>, head: Symbol, right: Vec<Symbol>) -> Self {
        let pos = left.len();
        let mut cells = left;
        cells.push(head);
        cells.extend(right);
        Self::from_tape(state, cells, pos)
    }

    /// Builds a configuration from a raw tape and head index.
    pub fn from_tape(state: State, cells: Vec<Symbol>, head: usize) -> Self {
        assert!(
            head < cells.len(),
            "head index {head} outside tape of length {}",
            cells.len()
        );
        let mut c = Configuration { state, cells, head };
        c.canonicalize();
        c
    }

    fn canonicalize(&mut self) {
        let last_kept = self
            .cells
            .iter()
            .rposition(|s| !s.is_blank())
            .map_or(self.head, |i| i.max(self.head));
        self.cells.truncate(last_kept + 1);
        let first_kept = self
            .cells
            .iter()
            .position(|s| !s.is_blank())
            .map_or(self.head, |i| i.min(self.head));
        if first_kept > 0 {
            self.cells.drain(..first_kept);
            self.head -= first_kept;
        }
    }

    pub fn state(&self) -> State {
        self.state
    }

    pub fn head(&self) -> Symbol {
        self.cells[self.head]
    }

    pub fn left(&self) -> &[Symbol] {
        &self.cells[..self.head]
    }

    pub fn right(&self) -> &[Symbol] {
        &self.cells[self.head + 1..]
    }

    /// The canonical tape including the head cell.
    pub fn tape(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn head_index(&self) -> usize {
        self.head
    }

    /// Length of the canonical tape word `x a y`.
    pub fn tape_len(&self) -> usize {
        self.cells.len()
    }

    /// Writes `write` under the head, moves one cell, enters `to`.
    /// Moving off either end materializes a blank.
    pub fn step(&self, to: State, write: Symbol, dir: Direction) -> Configuration {
        let mut cells = self.cells.clone();
        let mut head = self.head;
        cells[head] = write;
        match dir {
            Direction::Right => {
                head += 1;
                if head == cells.len() {
                    cells.push(Symbol::Blank);
                }
            }
            Direction::Left => {
                if head == 0 {
                    cells.insert(0, Symbol::Blank);
                } else {
                    head -= 1;
                }
            }
        }
        Configuration::from_tape(to, cells, head)
    }

    /// `y_C`: the tape content with padding blanks trimmed from both ends.
    /// Interior blanks are kept.
    pub fn associated_string(&self) -> String {
        let start = self.cells.iter().position(|s| !s.is_blank());
        let end = self.cells.iter().rposition(|s| !s.is_blank());
        match (start, end) {
            (Some(s), Some(e)) => self.cells[s..=e].iter().map(|c| c.as_char()).collect(),
            _ => String::new(),
        }
    }

    /// `Some(x)` iff this is `(h, [_]x)` with `x` over `{0, 1}`.
    pub fn head_left_word(&self) -> Option<Vec<Bit>> {
        if !self.state.is_halt() || !self.head().is_blank() || self.head != 0 {
            return None;
        }
        self.right().iter().map(|s| s.as_bit()).collect()
    }

    /// `Some(x)` iff this is `(h, x[_])` with `x` over `{0, 1}`.
    pub fn head_right_word(&self) -> Option<Vec<Bit>> {
        if !self.state.is_halt() || !self.head().is_blank() || self.head + 1 != self.cells.len() {
            return None;
        }
        self.left().iter().map(|s| s.as_bit()).collect()
    }

    /// The successful shape of this configuration, preferring `(h, [_]x)`
    /// when both match (only `(h, [_])` matches both).
    pub fn halt_pattern(&self) -> Option<HaltPattern> {
        self.head_left_word()
            .map(HaltPattern::HeadLeft)
            .or_else(|| self.head_right_word().map(HaltPattern::HeadRight))
    }

    /// `(h, x[_])` for a word `x`.
    pub fn halted_right(x: &str) -> Result<Configuration, SyntaxError> {
        let word = parse_word(x)?;
        Ok(Configuration::from_parts(
            State::Halt,
            word.into_iter().map(Symbol::from).collect(),
            Symbol::Blank,
            Vec::new(),
        ))
    }

    /// `(h, [_]x)` for a word `x`.
    pub fn halted_left(x: &str) -> Result<Configuration, SyntaxError> {
        let word = parse_word(x)?;
        Ok(Configuration::from_parts(
            State::Halt,
            Vec::new(),
            Symbol::Blank,
            word.into_iter().map(Symbol::from).collect(),
        ))
    }
}

impl HaltPattern {
    pub fn word(&self) -> String {
        match self {
            HaltPattern::HeadLeft(w) | HaltPattern::HeadRight(w) => word_to_string(w),
        }
    }
}

/// `(q2, 0[0]1101)`
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ", self.state)?;
        for s in self.left() {
            write!(f, "{s}")?;
        }
        write!(f, "[{}]", self.head())?;
        for s in self.right() {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Configuration {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || SyntaxError::MalformedConfiguration(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(malformed)?;
        let (state, tape) = inner.split_once(',').ok_or_else(malformed)?;
        let state: State = state.parse()?;
        let tape = tape.trim();
        let (left, rest) = tape.split_once('[').ok_or_else(malformed)?;
        let (head, right) = rest.split_once(']').ok_or_else(malformed)?;
        let symbols = |t: &str| {
            t.chars()
                .map(Symbol::from_char)
                .collect::<Result<Vec<_>, _>>()
        };
        let head = {
            let mut chars = head.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Symbol::from_char(c)?,
                _ => return Err(malformed()),
            }
        };
        Ok(Configuration::from_parts(
            state,
            symbols(left)?,
            head,
            symbols(right)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conf(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn initial_configurations() {
        assert_eq!(initial_config("11").unwrap().to_string(), "(q0, [_]11)");
        assert_eq!(initial_config("").unwrap().to_string(), "(q0, [_])");
        assert_eq!(initial_config("010").unwrap().to_string(), "(q0, [_]010)");
        assert_eq!(
            initial_config("0_1"),
            Err(SyntaxError::InvalidInputSymbol('_'))
        );
        assert_eq!(
            initial_config("012"),
            Err(SyntaxError::InvalidInputSymbol('2'))
        );
    }

    #[test]
    fn associated_strings() {
        assert_eq!(conf("(h, 01[_])").associated_string(), "01");
        assert_eq!(conf("(q0, [_])").associated_string(), "");
        assert_eq!(conf("(q2, _00[1]101)").associated_string(), "001101");
        assert_eq!(conf("(q2, 0[_]1)").associated_string(), "0_1");
    }

    #[test]
    fn canonical_form_trims_padding_only() {
        assert_eq!(conf("(q2, __0[0]1101__)").to_string(), "(q2, 0[0]1101)");
        assert_eq!(conf("(h, __[_]__)").to_string(), "(h, [_])");
        assert_eq!(conf("(h, 0_[_]__)").to_string(), "(h, 0_[_])");
        assert_eq!(conf("(q1, [0]_1)").to_string(), "(q1, [0]_1)");
        assert_eq!(conf("(q1, _0[_]1)"), conf("(q1, 0[_]1__)"));
    }

    #[test]
    fn halting_patterns() {
        assert_eq!(
            conf("(h, [_]01)").head_left_word(),
            Some(vec![Bit::Zero, Bit::One])
        );
        assert_eq!(
            conf("(h, 01[_])").head_right_word(),
            Some(vec![Bit::Zero, Bit::One])
        );
        assert_eq!(conf("(h, [_]01)").head_right_word(), None);
        assert_eq!(conf("(q1, [_]01)").halt_pattern(), None);
        assert_eq!(conf("(h, 0_1[_])").halt_pattern(), None);
        assert_eq!(conf("(h, [_]0_1)").halt_pattern(), None);
        assert_eq!(conf("(h, 0[1])").halt_pattern(), None);
        // the empty tape matches both shapes
        let empty = conf("(h, [_])");
        assert_eq!(empty.head_left_word(), Some(vec![]));
        assert_eq!(empty.head_right_word(), Some(vec![]));
    }

    #[test]
    fn malformed_configurations_are_rejected() {
        for bad in [
            "(q0 [_])",
            "(q0, _)",
            "(q0, [__])",
            "q0, [_]",
            "(x, [_])",
            "(q0, [2])",
        ] {
            assert!(bad.parse::<Configuration>().is_err(), "{bad}");
        }
    }

    #[test]
    fn step_materializes_edge_blanks() {
        let c = conf("(q0, [_])");
        assert_eq!(
            c.step(State::Halt, Symbol::One, Direction::Left)
                .to_string(),
            "(h, [_]1)"
        );
        assert_eq!(
            c.step(State::Halt, Symbol::One, Direction::Right)
                .to_string(),
            "(h, 1[_])"
        );
        assert_eq!(
            c.step(State::Halt, Symbol::Blank, Direction::Right)
                .to_string(),
            "(h, [_])"
        );
    }
}
