//! Experiment drivers. Each writes its artifacts under an output
//! directory and returns a human-readable summary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use compenv_core::evolving::EvolvingProcessor;
use compenv_core::experiments::{
    accept_all_procedure, adversary_subex, flood, order_sensitivity_demo, theorem_pt1_demo,
    AdversaryCertificate, Box513,
};
use compenv_core::static_env::StaticProcessor;
use compenv_core::syntax::{parse_procedure, SyntaxProcedure};
use compenv_core::verification::{
    accepted_configurations, check_axioms, exhaustive_canonical, oracle_diff_exhaustive,
    random_canonical, sample_states, sbox_witness, Axiom, EquivalenceDirection, ProcedureSpace,
};
use compenv_core::{open_session, EnvironmentKind, Transcript};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    OrderSensitivity,
    Flood,
    Adversary,
    Pt1,
    Box513,
    Axioms,
    Equivalence,
    OracleDiff,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    pub name: ExperimentName,
    /// Flood length parameter.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Claimed horizon for pt1.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Environment for axioms.
    #[arg(long, default_value = "et")]
    pub env: EnvironmentKind,
    /// Flood with m=1 before checking the axioms.
    #[arg(long)]
    pub post_flood: bool,
    /// Random configurations added to the exhaustive axiom samples.
    #[arg(long, default_value_t = 10_000)]
    pub fuzz: usize,
    /// Adversary candidate: accept-all, reject-all or a procedure file.
    #[arg(long, default_value = "accept-all")]
    pub candidate: String,
    /// Adversary word length.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Adversary budget f(n), in configurations.
    #[arg(long, default_value_t = 7)]
    pub budget: usize,
    /// Comma-separated naturals for box513.
    #[arg(long, default_value = "7,5,7,9")]
    pub sequence: String,
    /// Longest word for equivalence witnesses.
    #[arg(long, default_value_t = 8)]
    pub max_word: usize,
    /// Oracle-diff space: non-halting states.
    #[arg(long, default_value_t = 3)]
    pub states: u32,
    /// Oracle-diff space: instructions per procedure.
    #[arg(long, default_value_t = 4)]
    pub instructions: usize,
    /// Oracle-diff space: longest input.
    #[arg(long, default_value_t = 4)]
    pub max_len: usize,
    #[arg(long, default_value_t = 100)]
    pub max_steps: usize,
    #[arg(long, default_value = "compenv-out")]
    pub out: PathBuf,
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<PathBuf> {
    write(dir, name, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn candidate(spec: &str) -> Result<SyntaxProcedure> {
    Ok(match spec {
        "accept-all" => accept_all_procedure(),
        "reject-all" => SyntaxProcedure::empty(),
        file => {
            parse_procedure(&fs::read_to_string(file).with_context(|| format!("reading {file}"))?)?
        }
    })
}

pub fn run_experiment(args: &ExperimentArgs) -> Result<String> {
    let dir = args.out.as_path();
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut out = Vec::<String>::new();
    match args.name {
        ExperimentName::OrderSensitivity => {
            let (a, b) = order_sensitivity_demo();
            let pa = write(dir, "order_111_then_11.jsonl", &a.to_jsonl())?;
            let pb = write(dir, "order_11_then_111.jsonl", &b.to_jsonl())?;
            out.push(format!("111 then 11: {}", a.sbox_verdicts().join(",")));
            out.push(format!("11 then 111: {}", b.sbox_verdicts().join(",")));
            out.push(format!("wrote {} and {}", pa.display(), pb.display()));
        }
        ExperimentName::Flood => {
            let mut s = open_session(EnvironmentKind::Evolving, 0);
            let report = flood(&mut s, args.m)?;
            let t = write(
                dir,
                &format!("flood_m{}.jsonl", args.m),
                &s.export_transcript().to_jsonl(),
            )?;
            let r = write_json(dir, &format!("flood_m{}.json", args.m), &report)?;
            for (x, b) in report.pre_verdicts.iter().chain(&report.post_verdicts) {
                out.push(format!("{x}: {}", if *b { "accepted" } else { "rejected" }));
            }
            out.push(format!(
                "m={}: {} accepted, {} rejected; property {}",
                args.m,
                report.accepted(),
                report.rejected(),
                if report.holds() { "holds" } else { "FAILS" }
            ));
            out.push(format!("wrote {} and {}", t.display(), r.display()));
        }
        ExperimentName::Adversary => {
            let m = candidate(&args.candidate)?;
            let table = BTreeMap::from([(args.n, args.budget)]);
            let cert = adversary_subex(&m, &table, args.n..args.n + 1)?;
            let name = Path::new(&args.candidate)
                .file_stem()
                .map_or("candidate".into(), |s| s.to_string_lossy().into_owned());
            let p = write_json(dir, &format!("adversary_{name}.json"), &cert)?;
            out.push(format!(
                "w={} case={:?} candidate says {} but w is {}in L'; {} interaction steps",
                cert.w,
                cert.case,
                if cert.verdict { "YES" } else { "NO" },
                if cert.truth { "" } else { "not " },
                cert.interaction.len()
            ));
            out.push(format!(
                "wrote {} (replay with: compenv replay {})",
                p.display(),
                p.display()
            ));
        }
        ExperimentName::Pt1 => {
            let r = theorem_pt1_demo(args.k)?;
            let a = write(dir, "pt1_flood.jsonl", &r.flood_transcript.to_jsonl())?;
            let b = write(dir, "pt1_fresh.jsonl", &r.fresh_transcript.to_jsonl())?;
            let p = write_json(dir, "pt1.json", &r)?;
            out.push(format!(
                "k={}: flooding length {} leaves every length-{} word rejected: {}",
                r.k,
                r.flood.m + 1,
                r.flood.m,
                r.flood.holds()
            ));
            out.push(format!(
                "k={}: fresh {} accepted: {}",
                r.k, r.fresh_input, r.fresh_accepted
            ));
            out.push(format!(
                "wrote {}, {} and {}",
                a.display(),
                b.display(),
                p.display()
            ));
        }
        ExperimentName::Box513 => {
            let ns = args
                .sequence
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .context("--sequence takes comma-separated naturals")?;
            let answers = Box513::new().query_all(&ns);
            let line = answers
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(",");
            write(dir, "box513.txt", &format!("{}\n{line}\n", args.sequence))?;
            out.push(line);
        }
        ExperimentName::Axioms => {
            if args.env == EnvironmentKind::Blinded {
                bail!("axioms need --env et or --env ee");
            }
            let states = sample_states();
            let mut samples = exhaustive_canonical(4, &states);
            samples.extend(random_canonical(0x5eed, args.fuzz, 12, &states));
            let mut s = open_session(args.env, 0);
            if args.post_flood {
                flood(&mut s, 1)?;
            }
            let report = check_axioms(&mut s, &samples)?;
            write_json(dir, "axioms.json", &report)?;
            write(dir, "axioms.jsonl", &s.export_transcript().to_jsonl())?;
            out.push(report.table().trim_end().to_string());
            if let Some(cx) = report.get(Axiom::A4).counterexamples.first() {
                out.push(format!(
                    "A4 counterexample: {} answered {}",
                    cx.config, cx.observed
                ));
            }
        }
        ExperimentName::Equivalence => {
            let mut witnesses = Vec::new();
            let mut failures = 0;
            for c in accepted_configurations(args.max_word + 1) {
                let w = sbox_witness(&c, EquivalenceDirection::StaticToEvolving)?;
                let back = sbox_witness(&c, EquivalenceDirection::EvolvingToStatic)?;
                if !(w.within_bound()
                    && w.replay(&mut EvolvingProcessor::new())
                    && back.replay(&mut StaticProcessor))
                {
                    failures += 1;
                }
                witnesses.push(w);
            }
            let longest = witnesses.iter().map(|w| w.len()).max().unwrap_or(0);
            write_json(dir, "equivalence.json", &witnesses)?;
            out.push(format!(
                "{} accepted configurations, longest witness {longest}, {failures} failures",
                witnesses.len()
            ));
        }
        ExperimentName::OracleDiff => {
            let space = ProcedureSpace {
                non_halt_states: args.states,
                max_instructions: args.instructions,
                max_input_len: args.max_len,
                max_steps: args.max_steps,
            };
            let r = oracle_diff_exhaustive(&space);
            let mut text = format!(
                "procedures: {}\ninputs: {}\ncovered: {} of {}\nruns: {}\naccepted: {}\nover budget: {}\nlongest accepting time: {}\nmismatches: {}\n",
                space.size(),
                space.inputs().len(),
                r.procedures_covered,
                r.procedures_expected,
                r.runs,
                r.accepted,
                r.diverged,
                r.longest_accepting_time,
                r.mismatches.len()
            );
            for m in &r.mismatches {
                text.push_str(&format!("{:?}\n", m));
            }
            write(dir, "oracle_diff.txt", &text)?;
            out.push(text.trim_end().to_string());
        }
    }
    Ok(out.join("\n"))
}

/// Replays an adversary certificate, or a transcript in a fresh session
/// of `kind`.
pub fn replay_file(path: &Path, kind: EnvironmentKind) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(cert) = serde_json::from_str::<AdversaryCertificate>(&text) {
        let ok = cert.replay()?;
        if !ok {
            bail!("certificate does not replay");
        }
        return Ok(format!(
            "certificate replays: candidate says {} on {}, ground truth {}",
            if cert.verdict { "YES" } else { "NO" },
            cert.w,
            cert.truth
        ));
    }
    let t = Transcript::from_jsonl(&text)?;
    open_session(kind, 0).replay_transcript(&t)?;
    Ok(format!("transcript replays: {} events", t.len()))
}
