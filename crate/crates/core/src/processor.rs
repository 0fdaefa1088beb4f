use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::{Configuration, Instruction};

/// Answer of a success box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
        })
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "YES" => Ok(Verdict::Yes),
            "NO" => Ok(Verdict::No),
            other => Err(format!("invalid verdict {other:?}")),
        }
    }
}

/// The two black boxes a computist talks to. Both take `&mut self`
/// because a success box is allowed to evolve on every query.
pub trait UniversalProcessor {
    /// `None` is the undefined answer.
    fn tbox(&mut self, c: &Configuration, i: &Instruction) -> Option<Configuration>;
    fn sbox(&mut self, c: &Configuration) -> Verdict;
}
