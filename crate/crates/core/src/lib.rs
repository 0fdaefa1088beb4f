//! Static and persistently evolving computation environments for
//! Turing-style syntax-procedures.
//!
//! A universal processor is a pair of boxes: a transition box mapping a
//! configuration and an instruction to the next configuration, and a
//! success box saying YES or NO on a configuration. The static processor
//! answers from fixed rules. The evolving one shares the transition box
//! but routes `(h, x[_])` questions to an automaton that grows with every
//! question, so the order of questions matters.

pub mod evolving;
pub mod experiments;
pub mod processor;
pub mod session;
pub mod static_env;
pub mod syntax;
pub mod transcript;
pub mod verification;

pub use processor::{UniversalProcessor, Verdict};
pub use session::{
    open_session, Action, ActionResult, EnvironmentKind, RejectReason, RunOutcome, RunStatus,
    Session, SessionError, DEFAULT_MAX_STEPS,
};
pub use syntax::{Configuration, Instruction, SyntaxProcedure};
pub use transcript::Transcript;
