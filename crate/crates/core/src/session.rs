//! The computist's side of a computation environment: box queries in any
//! order against an opaque processor, procedure runs, and an append-only
//! log.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evolving::EvolvingProcessor;
use crate::processor::{UniversalProcessor, Verdict};
use crate::static_env::StaticProcessor;
use crate::syntax::{
    format_procedure, initial_config, parse_procedure, Configuration, Instruction, SyntaxError,
    SyntaxProcedure,
};
use crate::transcript::{RecordedQuery, Transcript, TranscriptError, TranscriptLine, UNDEFINED};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("session is closed")]
    Closed,
    #[error("only blinded sessions can be revealed")]
    NotBlinded,
    #[error("max_steps must be at least 1")]
    ZeroBudget,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Transcript(#[from] TranscriptError),
    #[error("replay diverged at event {seq}: recorded {recorded}, got {replayed}")]
    ReplayMismatch {
        seq: u64,
        recorded: String,
        replayed: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvironmentKind {
    /// The static Turing environment.
    #[serde(rename = "et")]
    Static,
    /// The persistently evolving environment.
    #[serde(rename = "ee")]
    Evolving,
    /// One of the two, chosen by a seeded coin and hidden until reveal.
    Blinded,
}

impl fmt::Display for EnvironmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnvironmentKind::Static => "et",
            EnvironmentKind::Evolving => "ee",
            EnvironmentKind::Blinded => "blinded",
        })
    }
}

impl FromStr for EnvironmentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "et" | "static" => Ok(EnvironmentKind::Static),
            "ee" | "evolving" => Ok(EnvironmentKind::Evolving),
            "blinded" => Ok(EnvironmentKind::Blinded),
            other => Err(format!(
                "unknown environment kind {other:?} (expected et, ee or blinded)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
enum Backend {
    Static(StaticProcessor),
    Evolving(EvolvingProcessor),
}

impl Backend {
    fn kind(&self) -> EnvironmentKind {
        match self {
            Backend::Static(_) => EnvironmentKind::Static,
            Backend::Evolving(_) => EnvironmentKind::Evolving,
        }
    }

    fn tbox(&mut self, c: &Configuration, i: &Instruction) -> Option<Configuration> {
        match self {
            Backend::Static(p) => p.tbox(c, i),
            Backend::Evolving(p) => p.tbox(c, i),
        }
    }

    fn sbox(&mut self, c: &Configuration) -> Verdict {
        match self {
            Backend::Static(p) => p.sbox(c),
            Backend::Evolving(p) => p.sbox(c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    /// Stuck, and the success box said NO.
    StuckNo,
    /// The step budget ran out with an instruction still applicable.
    MaxSteps,
}

/// A sequence of configurations from `C_{0,x}`, each obtained from the
/// previous by one transition-box application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputationPath(Vec<Configuration>);

impl ComputationPath {
    pub fn configs(&self) -> &[Configuration] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &Configuration {
        self.0.last().expect("paths are nonempty")
    }

    /// Checks that each step is the selected instruction applied through
    /// the given transition function.
    pub fn is_valid_for(
        &self,
        m: &SyntaxProcedure,
        x: &str,
        tbox: impl Fn(&Configuration, &Instruction) -> Option<Configuration>,
    ) -> bool {
        let Ok(start) = initial_config(x) else {
            return false;
        };
        if self.0.first() != Some(&start) {
            return false;
        }
        self.0.windows(2).all(|pair| {
            m.select(&pair[0]).and_then(|i| tbox(&pair[0], i)).as_ref() == Some(&pair[1])
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// `time` is the number of configurations on the path.
    Success { path: ComputationPath, time: usize },
    Rejected {
        path: ComputationPath,
        reason: RejectReason,
    },
}

impl RunOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, RunOutcome::Success { .. })
    }

    pub fn path(&self) -> &ComputationPath {
        match self {
            RunOutcome::Success { path, .. } | RunOutcome::Rejected { path, .. } => path,
        }
    }

    pub fn time(&self) -> Option<usize> {
        match self {
            RunOutcome::Success { time, .. } => Some(*time),
            RunOutcome::Rejected { .. } => None,
        }
    }

    pub fn status(&self) -> RunStatus {
        match self {
            RunOutcome::Success { .. } => RunStatus::Success,
            RunOutcome::Rejected { reason, .. } => RunStatus::Rejected(*reason),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Success,
    Rejected(RejectReason),
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunStatus::Success => f.write_str("SUCCESS"),
            RunStatus::Rejected(RejectReason::StuckNo) => f.write_str("REJECTED:stuck-no"),
            RunStatus::Rejected(RejectReason::MaxSteps) => f.write_str("REJECTED:max-steps"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    Tbox {
        config: Configuration,
        instruction: Instruction,
        result: Option<Configuration>,
    },
    Sbox {
        config: Configuration,
        verdict: Verdict,
    },
    Run {
        procedure: SyntaxProcedure,
        input: String,
        status: RunStatus,
        final_config: Configuration,
        path_length: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub seq: u64,
    pub kind: EventKind,
}

impl Event {
    fn to_line(&self) -> TranscriptLine {
        match &self.kind {
            EventKind::Tbox {
                config,
                instruction,
                result,
            } => TranscriptLine {
                seq: self.seq,
                kind: "tbox".into(),
                config: config.to_string(),
                instruction: Some(instruction.to_string()),
                answer: result
                    .as_ref()
                    .map_or_else(|| UNDEFINED.to_string(), |c| c.to_string()),
                input: None,
                procedure: None,
                path_length: None,
            },
            EventKind::Sbox { config, verdict } => TranscriptLine {
                seq: self.seq,
                kind: "sbox".into(),
                config: config.to_string(),
                instruction: None,
                answer: verdict.to_string(),
                input: None,
                procedure: None,
                path_length: None,
            },
            EventKind::Run {
                procedure,
                input,
                status,
                final_config,
                path_length,
            } => TranscriptLine {
                seq: self.seq,
                kind: "run".into(),
                config: final_config.to_string(),
                instruction: None,
                answer: status.to_string(),
                input: Some(input.clone()),
                procedure: Some(
                    procedure
                        .instructions()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(";"),
                ),
                path_length: Some(*path_length),
            },
        }
    }
}

/// A replayable unit of computist behaviour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "lowercase")]
pub enum Action {
    Tbox {
        config: String,
        instruction: String,
    },
    Sbox {
        config: String,
    },
    Run {
        procedure: String,
        input: String,
        max_steps: usize,
    },
}

impl Action {
    pub fn run(m: &SyntaxProcedure, input: &str, max_steps: usize) -> Self {
        Action::Run {
            procedure: format_procedure(m),
            input: input.to_string(),
            max_steps,
        }
    }
}

/// What an [`Action`] produced, in display form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionResult {
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<usize>,
}

/// One computist's interaction with one environment.
#[derive(Debug, Clone)]
pub struct Session {
    requested: EnvironmentKind,
    backend: Backend,
    log: Vec<Event>,
    closed: bool,
}

/// Opens a session with a fresh processor. For blinded sessions `seed`
/// decides the hidden kind; it is ignored otherwise.
pub fn open_session(kind: EnvironmentKind, seed: u64) -> Session {
    let resolved = match kind {
        EnvironmentKind::Blinded => {
            if ChaCha8Rng::seed_from_u64(seed).gen::<bool>() {
                EnvironmentKind::Evolving
            } else {
                EnvironmentKind::Static
            }
        }
        k => k,
    };
    let backend = match resolved {
        EnvironmentKind::Evolving => Backend::Evolving(EvolvingProcessor::new()),
        _ => Backend::Static(StaticProcessor),
    };
    Session {
        requested: kind,
        backend,
        log: Vec::new(),
        closed: false,
    }
}

impl Session {
    /// The kind as visible to the computist: blinded sessions stay blinded.
    pub fn kind(&self) -> EnvironmentKind {
        self.requested
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn log(&self) -> &[Event] {
        &self.log
    }

    /// Number of events so far.
    pub fn clock(&self) -> u64 {
        self.log.len() as u64
    }

    fn ensure_open(&self) -> Result<(), SessionError> {
        if self.closed {
            Err(SessionError::Closed)
        } else {
            Ok(())
        }
    }

    fn record(&mut self, kind: EventKind) {
        let seq = self.clock() + 1;
        self.log.push(Event { seq, kind });
    }

    pub fn query_tbox(
        &mut self,
        c: &Configuration,
        i: &Instruction,
    ) -> Result<Option<Configuration>, SessionError> {
        self.ensure_open()?;
        let result = self.backend.tbox(c, i);
        self.record(EventKind::Tbox {
            config: c.clone(),
            instruction: *i,
            result: result.clone(),
        });
        Ok(result)
    }

    pub fn query_sbox(&mut self, c: &Configuration) -> Result<Verdict, SessionError> {
        self.ensure_open()?;
        let verdict = self.backend.sbox(c);
        self.record(EventKind::Sbox {
            config: c.clone(),
            verdict,
        });
        Ok(verdict)
    }

    /// Runs `m` on `x` through the boxes: transitions via the selected
    /// instruction until none applies, then one success-box query on the
    /// stuck configuration. An exhausted budget skips the success box.
    pub fn run_procedure(
        &mut self,
        m: &SyntaxProcedure,
        x: &str,
        max_steps: usize,
    ) -> Result<RunOutcome, SessionError> {
        self.ensure_open()?;
        if max_steps == 0 {
            return Err(SessionError::ZeroBudget);
        }
        let mut current = initial_config(x)?;
        let mut path = vec![current.clone()];
        let mut steps = 0;
        let stuck = loop {
            let Some(instruction) = m.select(&current).copied() else {
                break true;
            };
            if steps == max_steps {
                break false;
            }
            match self.query_tbox(&current, &instruction)? {
                Some(next) => {
                    steps += 1;
                    path.push(next.clone());
                    current = next;
                }
                None => break true,
            }
        };
        let outcome = if stuck && self.query_sbox(&current)?.is_yes() {
            let time = path.len();
            RunOutcome::Success {
                path: ComputationPath(path),
                time,
            }
        } else {
            RunOutcome::Rejected {
                path: ComputationPath(path),
                reason: if stuck {
                    RejectReason::StuckNo
                } else {
                    RejectReason::MaxSteps
                },
            }
        };
        self.record(EventKind::Run {
            procedure: m.clone(),
            input: x.to_string(),
            status: outcome.status(),
            final_config: current,
            path_length: outcome.path().len(),
        });
        Ok(outcome)
    }

    pub fn membership(
        &mut self,
        m: &SyntaxProcedure,
        x: &str,
        max_steps: usize,
    ) -> Result<bool, SessionError> {
        Ok(self.run_procedure(m, x, max_steps)?.is_success())
    }

    pub fn apply(&mut self, action: &Action) -> Result<ActionResult, SessionError> {
        match action {
            Action::Tbox {
                config,
                instruction,
            } => {
                let result = self.query_tbox(&config.parse()?, &instruction.parse()?)?;
                Ok(ActionResult {
                    answer: result.map_or_else(|| UNDEFINED.to_string(), |c| c.to_string()),
                    time: None,
                })
            }
            Action::Sbox { config } => Ok(ActionResult {
                answer: self.query_sbox(&config.parse()?)?.to_string(),
                time: None,
            }),
            Action::Run {
                procedure,
                input,
                max_steps,
            } => {
                let outcome =
                    self.run_procedure(&parse_procedure(procedure)?, input, *max_steps)?;
                Ok(ActionResult {
                    answer: outcome.status().to_string(),
                    time: outcome.time(),
                })
            }
        }
    }

    pub fn export_transcript(&self) -> Transcript {
        Transcript::new(self.log.iter().map(Event::to_line).collect())
    }

    /// Re-issues every box query of `t` in order and checks that each
    /// answer matches the recorded one.
    pub fn replay_transcript(&mut self, t: &Transcript) -> Result<(), SessionError> {
        for q in t.queries()? {
            let (seq, recorded, replayed) = match q {
                RecordedQuery::Tbox {
                    seq,
                    config,
                    instruction,
                    answer,
                } => (
                    seq,
                    render(&answer),
                    render(&self.query_tbox(&config, &instruction)?),
                ),
                RecordedQuery::Sbox {
                    seq,
                    config,
                    verdict,
                } => (
                    seq,
                    verdict.to_string(),
                    self.query_sbox(&config)?.to_string(),
                ),
            };
            if recorded != replayed {
                return Err(SessionError::ReplayMismatch {
                    seq,
                    recorded,
                    replayed,
                });
            }
        }
        Ok(())
    }

    /// Ends a blinded session and discloses which processor was behind it.
    pub fn reveal(&mut self) -> Result<EnvironmentKind, SessionError> {
        self.ensure_open()?;
        if self.requested != EnvironmentKind::Blinded {
            return Err(SessionError::NotBlinded);
        }
        self.closed = true;
        Ok(self.backend.kind())
    }
}

fn render(c: &Option<Configuration>) -> String {
    c.as_ref()
        .map_or_else(|| UNDEFINED.to_string(), |c| c.to_string())
}
