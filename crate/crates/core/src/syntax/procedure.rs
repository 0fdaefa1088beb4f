use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Configuration, Instruction, State, Symbol, SyntaxError};

/// A finite, deterministic set of instructions: no two instructions share
/// a `(from, read)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SyntaxProcedure {
    instructions: BTreeMap<(State, Symbol), Instruction>,
}

/// True iff no two instructions share `(from, read)` with a differing action.
pub fn check_determinism(instrs: &[Instruction]) -> bool {
    let mut seen: BTreeMap<(State, Symbol), &Instruction> = BTreeMap::new();
    for i in instrs {
        if let Some(prev) = seen.insert(i.key(), i) {
            if prev != i {
                return false;
            }
        }
    }
    true
}

impl SyntaxProcedure {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Collects instructions into a procedure; duplicates are merged,
    /// conflicting actions on one `(from, read)` pair are an error.
    pub fn new(instrs: impl IntoIterator<Item = Instruction>) -> Result<Self, SyntaxError> {
        let mut m = Self::empty();
        for (idx, i) in instrs.into_iter().enumerate() {
            m.insert(i, idx + 1)?;
        }
        Ok(m)
    }

    fn insert(&mut self, i: Instruction, line: usize) -> Result<(), SyntaxError> {
        if let Some(existing) = self.instructions.get(&i.key()) {
            if *existing != i {
                return Err(SyntaxError::Nondeterministic {
                    line,
                    instruction: i,
                    existing: *existing,
                });
            }
        }
        self.instructions.insert(i.key(), i);
        Ok(())
    }

    /// The instruction selector: the unique instruction matching the
    /// configuration's state and scanned symbol, if any.
    pub fn select(&self, c: &Configuration) -> Option<&Instruction> {
        self.instructions.get(&(c.state(), c.head()))
    }

    pub fn instructions(&self) -> impl Iterator<Item = &Instruction> {
        self.instructions.values()
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Whether any instruction leaves the halting state.
    pub fn moves_from_halt(&self) -> bool {
        self.instructions.keys().any(|(s, _)| s.is_halt())
    }
}

/// Parses the procedure file grammar: one `<state>,<sym>/<state>,<sym>,<L|R>`
/// per line, blank lines ignored, `#` starts a comment line.
pub fn parse_procedure(text: &str) -> Result<SyntaxProcedure, SyntaxError> {
    let mut m = SyntaxProcedure::empty();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let instruction: Instruction =
            line.parse().map_err(|e: SyntaxError| SyntaxError::Line {
                line: idx + 1,
                message: e.to_string(),
            })?;
        m.insert(instruction, idx + 1)?;
    }
    Ok(m)
}

/// One instruction per line, sorted by `(from, read)`, newline-terminated.
pub fn format_procedure(m: &SyntaxProcedure) -> String {
    m.instructions().map(|i| format!("{i}\n")).collect()
}

impl fmt::Display for SyntaxProcedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_procedure(self))
    }
}

impl FromStr for SyntaxProcedure {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_procedure(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Direction;
    use proptest::prelude::*;

    fn ins(s: &str) -> Instruction {
        s.parse().unwrap()
    }

    #[test]
    fn determinism_check() {
        assert!(check_determinism(&[ins("q0,0/q1,1,R"), ins("q0,1/q1,1,R")]));
        assert!(!check_determinism(&[
            ins("q0,0/q1,1,R"),
            ins("q0,0/q2,1,R")
        ]));
        assert!(check_determinism(&[]));
        assert!(check_determinism(&[ins("q0,0/q1,1,R"), ins("q0,0/q1,1,R")]));
    }

    #[test]
    fn selection() {
        let m = parse_procedure("q0,_/h,_,R").unwrap();
        let c: Configuration = "(q0, [_]1)".parse().unwrap();
        assert_eq!(m.select(&c), Some(&ins("q0,_/h,_,R")));
        let c: Configuration = "(h, 1[_])".parse().unwrap();
        assert_eq!(m.select(&c), None);
        assert_eq!(SyntaxProcedure::empty().select(&c), None);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let m = parse_procedure("q0,_/h,_,R").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(
            m.instructions().next(),
            Some(&Instruction::new(
                State::Q(0),
                Symbol::Blank,
                State::Halt,
                Symbol::Blank,
                Direction::Right
            ))
        );

        let err = parse_procedure("q0,0/q0,0,R\nq0,0/q1,1,L").unwrap_err();
        assert!(
            matches!(err, SyntaxError::Nondeterministic { line: 2, .. }),
            "{err}"
        );

        let err = parse_procedure("# header\n\nq0,0/q0,0,R\nq0,0->q1").unwrap_err();
        assert!(matches!(err, SyntaxError::Line { line: 4, .. }), "{err}");
    }

    #[test]
    fn three_instruction_procedure_round_trips() {
        let text = "q0,_/h,_,R\nh,0/h,0,R\nh,1/h,1,R\n";
        let m = parse_procedure(text).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(parse_procedure(&format_procedure(&m)).unwrap(), m);
        assert!(m.moves_from_halt());
    }

    fn arb_state() -> impl Strategy<Value = State> {
        prop_oneof![Just(State::Halt), (0u32..6).prop_map(State::Q)]
    }

    fn arb_symbol() -> impl Strategy<Value = Symbol> {
        prop::sample::select(Symbol::ALL.to_vec())
    }

    fn arb_instruction() -> impl Strategy<Value = Instruction> {
        (
            arb_state(),
            arb_symbol(),
            arb_state(),
            arb_symbol(),
            any::<bool>(),
        )
            .prop_map(|(from, read, to, write, left)| {
                let dir = if left {
                    Direction::Left
                } else {
                    Direction::Right
                };
                Instruction::new(from, read, to, write, dir)
            })
    }

    proptest! {
        #[test]
        fn random_procedures_round_trip(instrs in prop::collection::vec(arb_instruction(), 0..12)) {
            // keep the first instruction per key so the set is deterministic
            let mut by_key = BTreeMap::new();
            for i in instrs {
                by_key.entry(i.key()).or_insert(i);
            }
            let m = SyntaxProcedure::new(by_key.into_values()).unwrap();
            prop_assert_eq!(parse_procedure(&format_procedure(&m)).unwrap(), m);
        }

        #[test]
        fn at_most_one_instruction_applies(
            instrs in prop::collection::vec(arb_instruction(), 0..12),
            state in arb_state(),
            head in arb_symbol(),
        ) {
            let c = Configuration::from_parts(state, vec![Symbol::One], head, vec![Symbol::Zero]);
            if check_determinism(&instrs) {
                let m = SyntaxProcedure::new(instrs.iter().copied()).unwrap();
                let applicable: std::collections::BTreeSet<_> =
                    m.instructions().filter(|i| i.applies_to(&c)).collect();
                prop_assert!(applicable.len() <= 1);
                prop_assert_eq!(m.select(&c), applicable.into_iter().next());
            } else {
                prop_assert!(SyntaxProcedure::new(instrs.iter().copied()).is_err());
            }
        }

        #[test]
        fn canonicalization_is_idempotent(
            state in arb_state(),
            left in prop::collection::vec(arb_symbol(), 0..6),
            head in arb_symbol(),
            right in prop::collection::vec(arb_symbol(), 0..6),
        ) {
            let c = Configuration::from_parts(state, left, head, right);
            let again = Configuration::from_parts(
                c.state(), c.left().to_vec(), c.head(), c.right().to_vec());
            prop_assert_eq!(&again, &c);
            prop_assert_eq!(c.to_string().parse::<Configuration>().unwrap(), c);
        }

        #[test]
        fn initial_config_is_injective(a in "[01]{0,8}", b in "[01]{0,8}") {
            let ca = crate::syntax::initial_config(&a).unwrap();
            let cb = crate::syntax::initial_config(&b).unwrap();
            prop_assert_eq!(a == b, ca == cb);
        }
    }
}
