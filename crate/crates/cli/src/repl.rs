//! Line-oriented interaction with one session.
//!
//! ```text
//! tbox (q1, _00[1]101) q1,1/q2,1,L
//! sbox (h, 111[_])
//! load subex.proc
//! run 111
//! transcript
//! reveal
//! ```

use std::io::{BufRead, Write};

use anyhow::{anyhow, bail, Context, Result};

use compenv_core::syntax::{parse_procedure, Configuration, SyntaxProcedure};
use compenv_core::transcript::UNDEFINED;
use compenv_core::Session;

pub struct Repl {
    pub session: Session,
    pub procedure: Option<SyntaxProcedure>,
    pub max_steps: usize,
}

/// Splits `(q, x[a]y) rest` into the configuration and the rest.
fn split_config(args: &str) -> Result<(Configuration, &str)> {
    let end = args
        .find(')')
        .ok_or_else(|| anyhow!("expected a configuration like (q0, [_]01)"))?;
    let config = args[..=end].trim().parse()?;
    Ok((config, args[end + 1..].trim()))
}

impl Repl {
    /// Executes one command line and returns what to print.
    pub fn execute(&mut self, line: &str) -> Result<Option<String>> {
        let line = line.trim();
        let (cmd, args) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let args = args.trim();
        match cmd {
            "" => Ok(None),
            "tbox" => {
                let (config, rest) = split_config(args)?;
                let answer = self.session.query_tbox(&config, &rest.parse()?)?;
                Ok(Some(answer.map_or_else(|| UNDEFINED.to_string(), |c| c.to_string())))
            }
            "sbox" => {
                let (config, rest) = split_config(args)?;
                if !rest.is_empty() {
                    bail!("unexpected {rest:?} after the configuration");
                }
                Ok(Some(self.session.query_sbox(&config)?.to_string()))
            }
            "load" => {
                let text = std::fs::read_to_string(args).with_context(|| format!("reading {args}"))?;
                let m = parse_procedure(&text)?;
                let n = m.len();
                self.procedure = Some(m);
                Ok(Some(format!("loaded {n} instructions")))
            }
            "run" => {
                let m = self
                    .procedure
                    .as_ref()
                    .ok_or_else(|| anyhow!("no procedure loaded (use load FILE or --proc)"))?;
                let outcome = self.session.run_procedure(m, args, self.max_steps)?;
                Ok(Some(match outcome.time() {
                    Some(t) => format!("{} time={t}", outcome.status()),
                    None => format!("{} path={}", outcome.status(), outcome.path().len()),
                }))
            }
            "transcript" => Ok(Some(self.session.export_transcript().to_jsonl().trim_end().to_string())),
            "reveal" => Ok(Some(self.session.reveal()?.to_string())),
            "help" => Ok(Some(
                "tbox CONFIG INSTRUCTION | sbox CONFIG | load FILE | run [INPUT] | transcript | reveal | quit"
                    .to_string(),
            )),
            other => bail!("unknown command {other:?} (try help)"),
        }
    }

    /// Reads commands until end of input or `quit`. Errors are printed and
    /// do not stop the loop.
    pub fn run(&mut self, input: impl BufRead, mut out: impl Write) -> std::io::Result<()> {
        for line in input.lines() {
            let line = line?;
            if matches!(line.trim(), "quit" | "exit") {
                break;
            }
            match self.execute(&line) {
                Ok(Some(text)) => writeln!(out, "{text}")?,
                Ok(None) => {}
                Err(e) => writeln!(out, "error: {e:#}")?,
            }
        }
        Ok(())
    }
}
