//! Scripted interactions that exhibit order sensitivity in the evolving
//! environment.

mod adversary;
mod box513;
mod flood;
mod pt1;

pub use adversary::{
    accept_all_procedure, adversary_subex, AdversaryCase, AdversaryCertificate, AdversaryError,
    AdversaryStep, Phase,
};
pub use box513::{Box513, Trigger};
pub use flood::{flood, FloodError, FloodReport};
pub use pt1::{theorem_pt1_demo, Pt1Report};

use crate::session::{open_session, EnvironmentKind, DEFAULT_MAX_STEPS};
use crate::syntax::SyntaxProcedure;
use crate::transcript::Transcript;

/// Walks right from the start blank in state `h` and stops on the blank
/// after the input, i.e. at `(h, x[_])`.
pub fn subex_procedure() -> SyntaxProcedure {
    "q0,_/h,_,R\nh,0/h,0,R\nh,1/h,1,R"
        .parse()
        .expect("well-formed procedure")
}

/// Two fresh evolving sessions running the walk procedure on `111, 11`
/// and on `11, 111`.
pub fn order_sensitivity_demo() -> (Transcript, Transcript) {
    let m = subex_procedure();
    let run = |inputs: [&str; 2]| {
        let mut s = open_session(EnvironmentKind::Evolving, 0);
        for x in inputs {
            s.run_procedure(&m, x, DEFAULT_MAX_STEPS)
                .expect("fresh session, valid input");
        }
        s.export_transcript()
    };
    (run(["111", "11"]), run(["11", "111"]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_pair() {
        let (a, b) = order_sensitivity_demo();
        assert_eq!(a.sbox_verdicts(), ["YES", "NO"]);
        assert_eq!(b.sbox_verdicts(), ["YES", "YES"]);
        for t in [&a, &b] {
            open_session(EnvironmentKind::Evolving, 0)
                .replay_transcript(t)
                .unwrap();
        }
    }

    #[test]
    fn subex_round_trips() {
        let m = subex_procedure();
        assert_eq!(m.len(), 3);
        let text = crate::syntax::format_procedure(&m);
        assert_eq!(crate::syntax::parse_procedure(&text).unwrap(), m);
    }
}
