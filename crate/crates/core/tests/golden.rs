//! Byte-exact transcripts for the order pair and the m=1 flood. Set
//! `BLESS=1` to rewrite the files.

use std::path::PathBuf;

use compenv_core::experiments::{flood, order_sensitivity_demo};
use compenv_core::{open_session, EnvironmentKind, Transcript};

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from the golden file");
}

#[test]
fn order_pair_transcripts() {
    let (a, b) = order_sensitivity_demo();
    check("order_111_then_11.jsonl", &a.to_jsonl());
    check("order_11_then_111.jsonl", &b.to_jsonl());
}

#[test]
fn flood_transcript() {
    let mut s = open_session(EnvironmentKind::Evolving, 0);
    flood(&mut s, 1).unwrap();
    check("flood_m1.jsonl", &s.export_transcript().to_jsonl());
}

#[test]
fn golden_files_replay() {
    for name in [
        "order_111_then_11.jsonl",
        "order_11_then_111.jsonl",
        "flood_m1.jsonl",
    ] {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name);
        let t = Transcript::from_jsonl(&std::fs::read_to_string(path).unwrap()).unwrap();
        open_session(EnvironmentKind::Evolving, 0)
            .replay_transcript(&t)
            .unwrap();
        assert_eq!(Transcript::from_jsonl(&t.to_jsonl()).unwrap(), t);
    }
}
