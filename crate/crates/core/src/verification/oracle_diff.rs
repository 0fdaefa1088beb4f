//! Exhaustive comparison of static-environment runs against the classical
//! oracle over every small deterministic procedure.
//!
//! Procedures are explored in tree normal form: a run is simulated with a
//! partial instruction table and, whenever it reaches an undecided
//! `(state, symbol)` pair, the exploration branches on leaving the pair
//! undefined or defining it with each possible action. Every leaf fixes the
//! run completely, so each leaf stands for all full procedures that agree
//! with it on the decided pairs; the covered counts are summed and checked
//! against the size of the whole procedure space.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::oracle::{classical_tm_oracle, ClassicalMachine, OracleVerdict};
use crate::session::{open_session, EnvironmentKind, RunOutcome};
use crate::syntax::{words_of_length, Direction, Instruction, State, Symbol, SyntaxProcedure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProcedureSpace {
    /// Instructions leave `q0..q{n-1}` only.
    pub non_halt_states: u32,
    pub max_instructions: usize,
    pub max_input_len: usize,
    pub max_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub procedure: String,
    pub input: String,
    pub environment: (bool, Option<usize>),
    pub oracle: Option<OracleVerdict>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleDiffReport {
    /// Distinct (procedure, input) runs executed.
    pub runs: u64,
    /// Full procedures accounted for, summed over inputs.
    pub procedures_covered: u128,
    /// `|space| * inputs`, what `procedures_covered` must equal.
    pub procedures_expected: u128,
    pub accepted: u64,
    pub diverged: u64,
    pub longest_accepting_time: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleDiffReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.procedures_covered == self.procedures_expected
    }

    fn merge(mut self, other: OracleDiffReport) -> OracleDiffReport {
        self.runs += other.runs;
        self.procedures_covered += other.procedures_covered;
        self.procedures_expected += other.procedures_expected;
        self.accepted += other.accepted;
        self.diverged += other.diverged;
        self.longest_accepting_time = self
            .longest_accepting_time
            .max(other.longest_accepting_time);
        self.mismatches.extend(other.mismatches);
        self
    }
}

impl ProcedureSpace {
    fn keys(&self) -> Vec<(State, Symbol)> {
        (0..self.non_halt_states)
            .flat_map(|q| Symbol::ALL.iter().map(move |&s| (State::Q(q), s)))
            .collect()
    }

    fn actions(&self) -> Vec<(State, Symbol, Direction)> {
        let mut targets: Vec<State> = (0..self.non_halt_states).map(State::Q).collect();
        targets.push(State::Halt);
        let mut out = Vec::new();
        for &to in &targets {
            for &write in &Symbol::ALL {
                for dir in [Direction::Left, Direction::Right] {
                    out.push((to, write, dir));
                }
            }
        }
        out
    }

    /// Deterministic procedures with at most `budget` instructions drawn
    /// from `free` undecided keys.
    fn completions(&self, free: usize, budget: usize) -> u128 {
        let actions = self.actions().len() as u128;
        (0..=budget.min(free))
            .map(|j| binomial(free as u128, j as u128) * actions.pow(j as u32))
            .sum()
    }

    pub fn size(&self) -> u128 {
        self.completions(self.keys().len(), self.max_instructions)
    }

    pub fn inputs(&self) -> Vec<String> {
        (0..=self.max_input_len).flat_map(words_of_length).collect()
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Compares the static environment with the classical oracle on every
/// procedure of the space and every input up to the length bound.
pub fn oracle_diff_exhaustive(space: &ProcedureSpace) -> OracleDiffReport {
    space
        .inputs()
        .par_iter()
        .map(|x| explore_input(space, x))
        .reduce(OracleDiffReport::default, OracleDiffReport::merge)
}

/// Plain enumeration of every procedure in the space, without the tree
/// normal form. Only feasible for small instruction budgets.
pub fn oracle_diff_brute_force(space: &ProcedureSpace) -> OracleDiffReport {
    let keys = space.keys();
    let actions = space.actions();
    let mut procedures = vec![Vec::<Instruction>::new()];
    let mut frontier = procedures.clone();
    for _ in 0..space.max_instructions {
        let mut next = Vec::new();
        for p in &frontier {
            // extend with keys strictly after the last one used
            let start = p.last().map_or(0, |last| {
                keys.iter().position(|k| *k == last.key()).unwrap() + 1
            });
            for &(from, read) in &keys[start..] {
                for &(to, write, dir) in &actions {
                    let mut q = p.clone();
                    q.push(Instruction::new(from, read, to, write, dir));
                    next.push(q);
                }
            }
        }
        procedures.extend(next.iter().cloned());
        frontier = next;
    }
    let inputs = space.inputs();
    let mut report = procedures
        .par_iter()
        .map(|instrs| {
            let m = SyntaxProcedure::new(instrs.iter().copied()).expect("distinct keys");
            let mut r = OracleDiffReport::default();
            for x in &inputs {
                compare(space, &m, x, 1, &mut r);
            }
            r
        })
        .reduce(OracleDiffReport::default, OracleDiffReport::merge);
    report.procedures_expected = space.size() * inputs.len() as u128;
    report
}

fn explore_input(space: &ProcedureSpace, x: &str) -> OracleDiffReport {
    let mut report = OracleDiffReport {
        procedures_expected: space.size(),
        ..OracleDiffReport::default()
    };
    let mut defined = BTreeMap::new();
    let mut undefined = BTreeSet::new();
    explore(space, x, &mut defined, &mut undefined, &mut report);
    report
}

enum Frontier {
    /// The run is fully determined by the decided pairs.
    Leaf,
    Undecided((State, Symbol)),
}

fn frontier(
    space: &ProcedureSpace,
    x: &str,
    defined: &BTreeMap<(State, Symbol), Instruction>,
    undefined: &BTreeSet<(State, Symbol)>,
) -> Frontier {
    let mut machine = ClassicalMachine::start(x).expect("inputs are words");
    let mut steps = 0;
    loop {
        let key = (machine.state, machine.scanned());
        if let Some(i) = defined.get(&key) {
            if steps == space.max_steps {
                return Frontier::Leaf;
            }
            machine.apply(i.to, i.write, i.dir);
            steps += 1;
        } else if machine.state.is_halt() || undefined.contains(&key) {
            return Frontier::Leaf;
        } else {
            return Frontier::Undecided(key);
        }
    }
}

fn explore(
    space: &ProcedureSpace,
    x: &str,
    defined: &mut BTreeMap<(State, Symbol), Instruction>,
    undefined: &mut BTreeSet<(State, Symbol)>,
    report: &mut OracleDiffReport,
) {
    match frontier(space, x, defined, undefined) {
        Frontier::Leaf => {
            let free = space.keys().len() - defined.len() - undefined.len();
            let covered = space.completions(free, space.max_instructions - defined.len());
            let m = SyntaxProcedure::new(defined.values().copied()).expect("keys are distinct");
            compare(space, &m, x, covered, report);
        }
        Frontier::Undecided(key) => {
            undefined.insert(key);
            explore(space, x, defined, undefined, report);
            undefined.remove(&key);
            if defined.len() < space.max_instructions {
                for (to, write, dir) in space.actions() {
                    defined.insert(key, Instruction::new(key.0, key.1, to, write, dir));
                    explore(space, x, defined, undefined, report);
                }
                defined.remove(&key);
            }
        }
    }
}

fn compare(
    space: &ProcedureSpace,
    m: &SyntaxProcedure,
    x: &str,
    covered: u128,
    report: &mut OracleDiffReport,
) {
    let mut session = open_session(EnvironmentKind::Static, 0);
    let outcome = session
        .run_procedure(m, x, space.max_steps)
        .expect("valid input and budget");
    let environment = match &outcome {
        RunOutcome::Success { time, .. } => (true, Some(*time)),
        RunOutcome::Rejected { .. } => (false, None),
    };
    let oracle = classical_tm_oracle(m, x, space.max_steps).ok();
    let oracle_view = oracle.map_or((false, None), |v| (v.accepted, v.time));
    report.runs += 1;
    report.procedures_covered += covered;
    if oracle.is_none() {
        report.diverged += 1;
    }
    if let (true, Some(t)) = environment {
        report.accepted += 1;
        report.longest_accepting_time = report.longest_accepting_time.max(t);
    }
    if environment != oracle_view {
        report.mismatches.push(Mismatch {
            procedure: m.to_string(),
            input: x.to_string(),
            environment,
            oracle,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_sizes() {
        let space = ProcedureSpace {
            non_halt_states: 3,
            max_instructions: 4,
            max_input_len: 4,
            max_steps: 100,
        };
        // 9 keys, 24 actions per key
        assert_eq!(space.actions().len(), 24);
        assert_eq!(
            space.size(),
            1 + 9 * 24 + 36 * 24u128.pow(2) + 84 * 24u128.pow(3) + 126 * 24u128.pow(4)
        );
        assert_eq!(space.inputs().len(), 31);
    }

    #[test]
    fn tree_form_agrees_with_brute_force_on_a_small_space() {
        let space = ProcedureSpace {
            non_halt_states: 2,
            max_instructions: 2,
            max_input_len: 2,
            max_steps: 50,
        };
        let tree = oracle_diff_exhaustive(&space);
        let brute = oracle_diff_brute_force(&space);
        assert!(tree.passed(), "{:?}", tree.mismatches);
        assert!(brute.passed(), "{:?}", brute.mismatches);
        assert_eq!(tree.procedures_covered, brute.procedures_covered);
        assert!(tree.runs < brute.runs);
    }
}
