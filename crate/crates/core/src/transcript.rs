//! Line-delimited JSON rendering of a session log.
//!
//! One event per line, fields in the order `seq, kind, config,
//! instruction, answer` followed by run-only fields. Configurations and
//! instructions use the display grammar.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::processor::Verdict;
use crate::syntax::{Configuration, HaltPattern, Instruction, SyntaxError};

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("event {seq}: {source}")]
    Syntax {
        seq: u64,
        #[source]
        source: SyntaxError,
    },
    #[error("event {seq}: unknown event kind {kind:?}")]
    UnknownKind { seq: u64, kind: String },
    #[error("event {seq}: {message}")]
    Malformed { seq: u64, message: String },
}

/// The answer string recorded for an undefined transition.
pub const UNDEFINED: &str = "NONE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptLine {
    pub seq: u64,
    pub kind: String,
    pub config: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instruction: Option<String>,
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub procedure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_length: Option<usize>,
}

/// A box query recovered from a transcript line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordedQuery {
    Tbox {
        seq: u64,
        config: Configuration,
        instruction: Instruction,
        answer: Option<Configuration>,
    },
    Sbox {
        seq: u64,
        config: Configuration,
        verdict: Verdict,
    },
}

/// Immutable snapshot of a session log.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transcript {
    lines: Vec<TranscriptLine>,
}

impl Transcript {
    pub fn new(lines: Vec<TranscriptLine>) -> Self {
        Transcript { lines }
    }

    pub fn lines(&self) -> &[TranscriptLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(&serde_json::to_string(line).expect("transcript lines serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, TranscriptError> {
        let lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|source| TranscriptError::Json {
                    line: i + 1,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Transcript { lines })
    }

    /// Verdicts of every success-box query, in order.
    pub fn sbox_verdicts(&self) -> Vec<String> {
        self.lines
            .iter()
            .filter(|l| l.kind == "sbox")
            .map(|l| l.answer.clone())
            .collect()
    }

    /// The box queries in the transcript, skipping run summaries.
    pub fn queries(&self) -> Result<Vec<RecordedQuery>, TranscriptError> {
        let mut out = Vec::new();
        for l in &self.lines {
            let syntax = |source| TranscriptError::Syntax { seq: l.seq, source };
            match l.kind.as_str() {
                "tbox" => {
                    let instruction =
                        l.instruction
                            .as_deref()
                            .ok_or_else(|| TranscriptError::Malformed {
                                seq: l.seq,
                                message: "tbox event without instruction".into(),
                            })?;
                    let answer = if l.answer == UNDEFINED {
                        None
                    } else {
                        Some(l.answer.parse().map_err(syntax)?)
                    };
                    out.push(RecordedQuery::Tbox {
                        seq: l.seq,
                        config: l.config.parse().map_err(syntax)?,
                        instruction: instruction.parse().map_err(syntax)?,
                        answer,
                    });
                }
                "sbox" => out.push(RecordedQuery::Sbox {
                    seq: l.seq,
                    config: l.config.parse().map_err(syntax)?,
                    verdict: l
                        .answer
                        .parse()
                        .map_err(|message| TranscriptError::Malformed {
                            seq: l.seq,
                            message,
                        })?,
                }),
                "run" => {}
                other => {
                    return Err(TranscriptError::UnknownKind {
                        seq: l.seq,
                        kind: other.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }

    /// The input/output behaviour observed on `(h, x[_])` queries: the
    /// pairs `(x, verdict)` a computist saw from the success box.
    pub fn observed_pairs(&self) -> Result<Vec<(String, bool)>, TranscriptError> {
        Ok(self
            .queries()?
            .into_iter()
            .filter_map(|q| match q {
                RecordedQuery::Sbox {
                    config, verdict, ..
                } => match config.halt_pattern() {
                    Some(HaltPattern::HeadRight(_)) => {
                        Some((config.associated_string(), verdict.is_yes()))
                    }
                    _ => None,
                },
                RecordedQuery::Tbox { .. } => None,
            })
            .collect())
    }
}
