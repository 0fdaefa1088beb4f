//! The static universal processor of the Turing computation environment.

use crate::processor::{UniversalProcessor, Verdict};
use crate::syntax::{Configuration, Instruction};

/// Transition box: applies `i` when its `(from, read)` matches the
/// configuration's state and scanned cell, otherwise undefined.
pub fn tbox_s(c: &Configuration, i: &Instruction) -> Option<Configuration> {
    i.applies_to(c).then(|| c.step(i.to, i.write, i.dir))
}

/// Success box: YES exactly on `(h, [_]x)` and `(h, x[_])` with `x` over `{0, 1}`.
pub fn sbox_s(c: &Configuration) -> Verdict {
    c.halt_pattern().is_some().into()
}

/// Both boxes are pure; the processor carries no state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StaticProcessor;

impl UniversalProcessor for StaticProcessor {
    fn tbox(&mut self, c: &Configuration, i: &Instruction) -> Option<Configuration> {
        tbox_s(c, i)
    }

    fn sbox(&mut self, c: &Configuration) -> Verdict {
        sbox_s(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Direction, State, Symbol};
    use proptest::prelude::*;

    fn conf(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    fn ins(s: &str) -> Instruction {
        s.parse().unwrap()
    }

    #[test]
    fn left_move_matches_worked_example() {
        // displayed with its padding blank as (q2, _0[0]1101_)
        let next = tbox_s(&conf("(q1, _00[1]101)"), &ins("q1,1/q2,1,L")).unwrap();
        assert_eq!(next, conf("(q2, _0[0]1101_)"));
        assert_eq!(next.to_string(), "(q2, 0[0]1101)");
        assert_eq!(
            next.associated_string(),
            conf("(q2, _0[0]1101_)").associated_string()
        );
    }

    #[test]
    fn right_move_off_the_start_blank() {
        let next = tbox_s(&conf("(q0, [_]01)"), &ins("q0,_/h,_,R")).unwrap();
        assert_eq!(next.to_string(), "(h, [0]1)");
        assert_eq!(next.associated_string(), "01");
    }

    #[test]
    fn mismatched_instruction_is_undefined() {
        assert_eq!(tbox_s(&conf("(q0, [_])"), &ins("q1,0/h,0,R")), None);
        assert_eq!(tbox_s(&conf("(q0, [_])"), &ins("q0,0/h,0,R")), None);
    }

    #[test]
    fn success_box_patterns() {
        assert_eq!(sbox_s(&conf("(h, [_]01)")), Verdict::Yes);
        assert_eq!(sbox_s(&conf("(h, 01[_])")), Verdict::Yes);
        assert_eq!(sbox_s(&conf("(q1, [_]01)")), Verdict::No);
        assert_eq!(sbox_s(&conf("(h, [_])")), Verdict::Yes);
        assert_eq!(sbox_s(&conf("(h, 0[_]1)")), Verdict::No);
    }

    /// Every canonical tape of length `1..=max_len` with every head position,
    /// in the given state.
    fn canonical_tapes(max_len: usize) -> Vec<(Vec<Symbol>, usize)> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for code in 0..3usize.pow(len as u32) {
                let mut k = code;
                let cells: Vec<Symbol> = (0..len)
                    .map(|_| {
                        let s = Symbol::ALL[k % 3];
                        k /= 3;
                        s
                    })
                    .collect();
                for head in 0..len {
                    let c = Configuration::from_tape(State::Halt, cells.clone(), head);
                    if c.tape() == cells.as_slice() && c.head_index() == head {
                        out.push((cells.clone(), head));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn success_box_accepts_exactly_the_two_halting_shapes() {
        for state in [State::Halt, State::Q(0), State::Q(1)] {
            for (cells, head) in canonical_tapes(4) {
                let c = Configuration::from_tape(state, cells.clone(), head);
                let blank_head = cells[head].is_blank();
                let all_input = |s: &[Symbol]| s.iter().all(|x| !x.is_blank());
                let at_left = head == 0 && all_input(&cells[1..]);
                let at_right = head + 1 == cells.len() && all_input(&cells[..head]);
                let expected = state.is_halt() && blank_head && (at_left || at_right);
                assert_eq!(sbox_s(&c).is_yes(), expected, "{c}");
            }
        }
    }

    fn arb_config() -> impl Strategy<Value = Configuration> {
        let sym = prop::sample::select(Symbol::ALL.to_vec());
        (
            prop_oneof![Just(State::Halt), (0u32..3).prop_map(State::Q)],
            prop::collection::vec(sym.clone(), 0..6),
            sym.clone(),
            prop::collection::vec(sym, 0..6),
        )
            .prop_map(|(q, l, h, r)| Configuration::from_parts(q, l, h, r))
    }

    fn arb_instruction() -> impl Strategy<Value = Instruction> {
        let sym = prop::sample::select(Symbol::ALL.to_vec());
        let st = prop_oneof![Just(State::Halt), (0u32..3).prop_map(State::Q)];
        (st.clone(), sym.clone(), st, sym, any::<bool>()).prop_map(|(f, r, t, w, l)| {
            Instruction::new(
                f,
                r,
                t,
                w,
                if l { Direction::Left } else { Direction::Right },
            )
        })
    }

    proptest! {
        #[test]
        fn boxes_are_pure(c in arb_config(), i in arb_instruction()) {
            let mut p = StaticProcessor;
            prop_assert_eq!(p.tbox(&c, &i), p.tbox(&c, &i));
            prop_assert_eq!(p.sbox(&c), p.sbox(&c));
        }

        #[test]
        fn defined_iff_applicable(c in arb_config(), i in arb_instruction()) {
            prop_assert_eq!(tbox_s(&c, &i).is_some(), (c.state(), c.head()) == (i.from, i.read));
        }

        #[test]
        fn reverse_move_restores_all_but_the_written_cell(c in arb_config(), i in arb_instruction()) {
            // force applicability
            let i = Instruction::new(c.state(), c.head(), i.to, i.write, i.dir);
            let next = tbox_s(&c, &i).unwrap();
            let back_dir = match i.dir { Direction::Left => Direction::Right, Direction::Right => Direction::Left };
            let back = Instruction::new(next.state(), next.head(), c.state(), next.head(), back_dir);
            let restored = tbox_s(&next, &back).unwrap();
            prop_assert_eq!(restored.head(), i.write);
            let undo = Configuration::from_parts(
                restored.state(), restored.left().to_vec(), c.head(), restored.right().to_vec());
            prop_assert_eq!(undo.associated_string(), c.associated_string());
            prop_assert_eq!(undo, c);
        }
    }
}
