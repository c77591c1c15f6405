use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use fsa_core::dfa::{self, distinguishing_word, is_observable, is_reachable};
use fsa_core::kleisli::{
    choffrut_minimize, is_onward, is_trimmed, transduce, transducer_distinguishing_word, KleisliValue,
};
use fsa_core::nfa::{accepts, brzozowski, codeterminize, determinize, embed};
use fsa_core::oracle::{enumerate, enumerate_nfa, enumerate_transducer, nerode_count};
use fsa_core::{format, run, AnyMachine, Dfa, Nfa};

#[derive(Parser)]
#[command(name = "fsa", version, about = "Minimize, convert and compare finite-state machines")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal equivalent machine (dfa: Moore, nfa: Brzozowski, subseq: Choffrut).
    Minimize { file: PathBuf },
    /// Subset construction, restricted to reachable subsets.
    Determinize { file: PathBuf },
    /// Backward-deterministic machine for the same language, printed as an nfa.
    Codeterminize { file: PathBuf },
    /// Minimal dfa by double reversal.
    Brzozowski { file: PathBuf },
    /// Feed a word to a machine; `_` is the empty word.
    Run { file: PathBuf, word: String },
    /// Compare two machines; prints `equivalent` or a distinguishing word.
    Equiv { first: PathBuf, second: PathBuf },
    /// Summary of a machine and its structural properties.
    Info {
        file: PathBuf,
        /// Also compare the machine against its minimization on every word
        /// up to this length.
        #[arg(long, value_name = "N")]
        oracle_bound: Option<usize>,
    },
}

fn load(path: &Path) -> Result<AnyMachine> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    format::parse(&text).with_context(|| format!("{}", path.display()))
}

fn as_nfa(m: AnyMachine, op: &str) -> Result<Nfa> {
    match m {
        AnyMachine::Nfa(n) => Ok(n),
        AnyMachine::Dfa(d) => Ok(embed(&d)),
        AnyMachine::Subseq(_) => bail!("{op} needs a dfa or nfa, got a subseq transducer"),
    }
}

fn as_dfa(m: AnyMachine) -> Result<Dfa> {
    match m {
        AnyMachine::Dfa(d) => Ok(d),
        AnyMachine::Nfa(n) => Ok(determinize(&n)),
        AnyMachine::Subseq(_) => bail!("cannot compare a subseq transducer with an acceptor"),
    }
}

fn minimize(m: &AnyMachine) -> AnyMachine {
    match m {
        AnyMachine::Dfa(d) => AnyMachine::Dfa(dfa::minimize(d)),
        AnyMachine::Nfa(n) => AnyMachine::Dfa(brzozowski(n)),
        AnyMachine::Subseq(t) => AnyMachine::Subseq(choffrut_minimize(t)),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(m: &AnyMachine, oracle_bound: Option<usize>) -> Result<String> {
    let mut lines = vec![format!("kind: {}", m.kind()), format!("states: {}", m.num_states())];
    match m {
        AnyMachine::Dfa(d) => {
            lines.push(format!("reachable: {}", yes_no(is_reachable(d))));
            lines.push(format!("observable: {}", yes_no(is_observable(d))));
            lines.push(format!("minimal states: {}", dfa::minimize(d).num_states()));
        }
        AnyMachine::Nfa(n) => {
            lines.push(format!("deterministic: {}", yes_no(n.is_deterministic())));
            let d = determinize(n);
            lines.push(format!("reachable subsets: {}", d.num_states()));
            lines.push(format!("minimal states: {}", brzozowski(n).num_states()));
        }
        AnyMachine::Subseq(t) => {
            let trimmed = is_trimmed(t);
            lines.push(format!("trimmed: {}", yes_no(trimmed)));
            if trimmed {
                lines.push(format!("onward: {}", yes_no(is_onward(t)?)));
            } else {
                lines.push("onward: unknown (not trimmed)".to_string());
            }
            lines.push(format!("minimal states: {}", choffrut_minimize(t).num_states()));
        }
    }
    if let Some(bound) = oracle_bound {
        let (agree, words) = match (m, minimize(m)) {
            (AnyMachine::Dfa(d), AnyMachine::Dfa(min)) => {
                if nerode_count(d) != min.num_states() {
                    bail!("oracle: residual count {} differs from minimal size", nerode_count(d));
                }
                let table = enumerate(d, bound);
                (table == enumerate(&min, bound), table.entries.len())
            }
            (AnyMachine::Nfa(n), AnyMachine::Dfa(min)) => {
                let table = enumerate_nfa(n, bound);
                (table == enumerate(&min, bound), table.entries.len())
            }
            (AnyMachine::Subseq(t), AnyMachine::Subseq(min)) => {
                let table = enumerate_transducer(t, bound);
                (table == enumerate_transducer(&min, bound), table.entries.len())
            }
            _ => unreachable!("minimize preserves the machine family"),
        };
        if !agree {
            bail!("oracle: minimized machine disagrees on some word of length <= {bound}");
        }
        lines.push(format!("oracle: minimized machine agrees on {words} words of length <= {bound}"));
    }
    Ok(lines.join("\n") + "\n")
}

/// Runs the command and returns its text output and exit code.
fn execute(command: Command) -> Result<(String, u8)> {
    let text = match command {
        Command::Minimize { file } => format::print(&minimize(&load(&file)?)),
        Command::Determinize { file } => {
            let n = as_nfa(load(&file)?, "determinize")?;
            format::print_dfa(&determinize(&n))
        }
        Command::Codeterminize { file } => {
            let n = as_nfa(load(&file)?, "codeterminize")?;
            format::print_nfa(codeterminize(&n).as_nfa())
        }
        Command::Brzozowski { file } => {
            let n = as_nfa(load(&file)?, "brzozowski")?;
            format::print_dfa(&brzozowski(&n))
        }
        Command::Run { file, word } => match load(&file)? {
            AnyMachine::Dfa(d) => {
                let w = d.alphabet().parse_word(&word)?;
                if run(&d, &w)? { "accept\n" } else { "reject\n" }.to_string()
            }
            AnyMachine::Nfa(n) => {
                let w = n.alphabet().parse_word(&word)?;
                if accepts(&n, &w)? { "accept\n" } else { "reject\n" }.to_string()
            }
            AnyMachine::Subseq(t) => {
                let w = t.input().parse_word(&word)?;
                match transduce(&t, &w)? {
                    KleisliValue::Pair(out, ()) => format!("{}\n", t.output().format_word(&out)),
                    KleisliValue::Bot => "undefined\n".to_string(),
                }
            }
        },
        Command::Equiv { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            let (witness, alphabet) = match (a, b) {
                (AnyMachine::Subseq(s), AnyMachine::Subseq(t)) => {
                    (transducer_distinguishing_word(&s, &t)?, s.input().clone())
                }
                (AnyMachine::Subseq(_), _) | (_, AnyMachine::Subseq(_)) => {
                    bail!("cannot compare a subseq transducer with an acceptor")
                }
                (a, b) => {
                    let (d1, d2) = (as_dfa(a)?, as_dfa(b)?);
                    (distinguishing_word(&d1, &d2)?, d1.alphabet().clone())
                }
            };
            return Ok(match witness {
                None => ("equivalent\n".to_string(), 0),
                Some(w) => (format!("{}\n", alphabet.format_word(&w)), 1),
            });
        }
        Command::Info { file, oracle_bound } => info(&load(&file)?, oracle_bound)?,
    };
    Ok((text, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(cli.command).and_then(|(text, code)| {
        match &cli.output {
            Some(path) => fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
