//! Model checking of the four box axioms against a live session.
//!
//! A1: the transition box follows the closed-form move rule (and is
//! undefined on mismatched instructions). A2: YES only on the two halting
//! shapes. A3: YES on every `(h, [_]x)`. A4: YES on every `(h, x[_])`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::session::{open_session, EnvironmentKind, Session, SessionError};
use crate::syntax::{Configuration, Direction, Instruction, State, Symbol};
use crate::transcript::Transcript;

/// Counterexamples kept per axiom; failures beyond this are only counted.
const MAX_COUNTEREXAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom: Axiom,
    /// Sequence number of the failing query in the session log.
    pub seq: u64,
    pub config: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instruction: Option<String>,
    pub expected: String,
    pub observed: String,
}

impl Counterexample {
    /// Replays `prior` (the log up to, not including, the failing query)
    /// in a fresh session of `kind`, re-issues the query and checks that
    /// it fails the same way.
    pub fn replays(&self, kind: EnvironmentKind, prior: &Transcript) -> Result<bool, SessionError> {
        let before = Transcript::new(
            prior
                .lines()
                .iter()
                .filter(|l| l.seq < self.seq)
                .cloned()
                .collect(),
        );
        let mut session = open_session(kind, 0);
        session.replay_transcript(&before)?;
        let config: Configuration = self.config.parse()?;
        let observed = match &self.instruction {
            Some(i) => session.query_tbox(&config, &i.parse()?)?.map_or_else(
                || crate::transcript::UNDEFINED.to_string(),
                |c| c.to_string(),
            ),
            None => session.query_sbox(&config)?.to_string(),
        };
        Ok(observed == self.observed && observed != self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    /// Checks performed.
    pub samples: usize,
    /// Checks whose premise held (for the implication axioms).
    pub premises: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomResult {
    fn new(axiom: Axiom) -> Self {
        AxiomResult {
            axiom,
            samples: 0,
            premises: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, cx: Counterexample) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(cx);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> &AxiomResult {
        self.results
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<5} {:<6} {:>9} {:>9} {:>9}\n",
            "axiom", "result", "samples", "premises", "failures"
        );
        for r in &self.results {
            out.push_str(&format!(
                "{:<5} {:<6} {:>9} {:>9} {:>9}\n",
                r.axiom.to_string(),
                if r.passed() { "pass" } else { "FAIL" },
                r.samples,
                r.premises,
                r.failures
            ));
            for cx in &r.counterexamples {
                let instr = cx
                    .instruction
                    .as_deref()
                    .map(|i| format!(" {i}"))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "      #{} {}{}: expected {}, got {}\n",
                    cx.seq, cx.config, instr, cx.expected, cx.observed
                ));
            }
        }
        out
    }
}

/// The closed-form move rule on the raw tape, independent of
/// [`Configuration::step`]: with `C = (q, x b1 [a] b2 y)` (missing
/// neighbours read as blanks), a right move gives `(p, x b1 c [b2] y)` and a
/// left move gives `(p, x [b1] c b2 y)`.
fn closed_form_move(c: &Configuration, to: State, write: Symbol, dir: Direction) -> Configuration {
    let mut x = c.left().to_vec();
    let b1 = x.pop().unwrap_or(Symbol::Blank);
    let mut y: Vec<Symbol> = c.right().iter().rev().copied().collect();
    let b2 = y.pop().unwrap_or(Symbol::Blank);
    y.reverse();
    match dir {
        Direction::Right => {
            x.push(b1);
            x.push(write);
            Configuration::from_parts(to, x, b2, y)
        }
        Direction::Left => {
            let mut right = vec![write, b2];
            right.extend(y);
            Configuration::from_parts(to, x, b1, right)
        }
    }
}

fn a1_instructions(c: &Configuration) -> Vec<(Instruction, bool)> {
    let mut out = Vec::new();
    for to in [State::Halt, State::Q(0), State::Q(1)] {
        for write in Symbol::ALL {
            for dir in [Direction::Left, Direction::Right] {
                out.push((Instruction::new(c.state(), c.head(), to, write, dir), true));
            }
        }
    }
    // one mismatched instruction: the same state reading another symbol
    let other = Symbol::ALL.into_iter().find(|s| *s != c.head()).unwrap();
    out.push((
        Instruction::new(c.state(), other, State::Halt, other, Direction::Right),
        false,
    ));
    out
}

/// Checks A1–A4 on every sample, in order, through the session's boxes.
/// Each sample's success-box verdict is queried once and shared by A2–A4.
pub fn check_axioms(
    session: &mut Session,
    samples: &[Configuration],
) -> Result<AxiomReport, SessionError> {
    let mut a1 = AxiomResult::new(Axiom::A1);
    let mut a2 = AxiomResult::new(Axiom::A2);
    let mut a3 = AxiomResult::new(Axiom::A3);
    let mut a4 = AxiomResult::new(Axiom::A4);

    for c in samples {
        for (i, applicable) in a1_instructions(c) {
            a1.samples += 1;
            let expected = applicable.then(|| closed_form_move(c, i.to, i.write, i.dir));
            let got = session.query_tbox(c, &i)?;
            if applicable {
                a1.premises += 1;
            }
            if got != expected {
                let render = |o: &Option<Configuration>| {
                    o.as_ref().map_or_else(
                        || crate::transcript::UNDEFINED.to_string(),
                        |c| c.to_string(),
                    )
                };
                a1.fail(Counterexample {
                    axiom: Axiom::A1,
                    seq: session.clock(),
                    config: c.to_string(),
                    instruction: Some(i.to_string()),
                    expected: render(&expected),
                    observed: render(&got),
                });
            }
        }

        let verdict = session.query_sbox(c)?;
        let seq = session.clock();
        let head_left = c.head_left_word().is_some();
        let head_right = c.head_right_word().is_some();
        let cx = |axiom| Counterexample {
            axiom,
            seq,
            config: c.to_string(),
            instruction: None,
            expected: if axiom == Axiom::A2 { "NO" } else { "YES" }.to_string(),
            observed: verdict.to_string(),
        };

        a2.samples += 1;
        if verdict.is_yes() {
            a2.premises += 1;
            if !head_left && !head_right {
                a2.fail(cx(Axiom::A2));
            }
        }
        a3.samples += 1;
        if head_left {
            a3.premises += 1;
            if !verdict.is_yes() {
                a3.fail(cx(Axiom::A3));
            }
        }
        a4.samples += 1;
        if head_right {
            a4.premises += 1;
            if !verdict.is_yes() {
                a4.fail(cx(Axiom::A4));
            }
        }
    }
    Ok(AxiomReport {
        results: vec![a1, a2, a3, a4],
    })
}

/// States used when sampling configurations.
pub fn sample_states() -> Vec<State> {
    vec![State::Halt, State::Q(0), State::Q(1), State::Q(2)]
}

/// Every canonical configuration with tape length `1..=max_len`, ordered by
/// tape length, then tape, then head position, then state.
pub fn exhaustive_canonical(max_len: usize, states: &[State]) -> Vec<Configuration> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for code in 0..3usize.pow(len as u32) {
            let mut k = code;
            let mut cells = Vec::with_capacity(len);
            for _ in 0..len {
                cells.push(Symbol::ALL[k % 3]);
                k /= 3;
            }
            cells.reverse();
            for head in 0..len {
                let first_ok = head == 0 || !cells[0].is_blank();
                let last_ok = head == len - 1 || !cells[len - 1].is_blank();
                if !(first_ok && last_ok) {
                    continue;
                }
                for &q in states {
                    out.push(Configuration::from_tape(q, cells.clone(), head));
                }
            }
        }
    }
    out
}

/// `n` seeded random configurations with raw tape length `1..=max_len`,
/// canonicalized. One in four is forced into a halting shape so the
/// success-box axioms see their premises.
pub fn random_canonical(
    seed: u64,
    n: usize,
    max_len: usize,
    states: &[State],
) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let shape = rng.gen_range(0..8);
            if shape < 2 {
                let word: Vec<Symbol> = (0..len - 1)
                    .map(|_| if rng.gen() { Symbol::One } else { Symbol::Zero })
                    .collect();
                return if shape == 0 {
                    Configuration::from_parts(State::Halt, Vec::new(), Symbol::Blank, word)
                } else {
                    Configuration::from_parts(State::Halt, word, Symbol::Blank, Vec::new())
                };
            }
            let cells: Vec<Symbol> = (0..len).map(|_| Symbol::ALL[rng.gen_range(0..3)]).collect();
            let head = rng.gen_range(0..len);
            let q = states[rng.gen_range(0..states.len())];
            Configuration::from_tape(q, cells, head)
        })
        .collect()
}
