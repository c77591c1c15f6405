use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fsa_core::format::{self, AnyMachine};
use fsa_core::kleisli::{transduce, KleisliValue};
use fsa_core::run;
use tempfile::TempDir;

const PARITY: &str = "\
kind: dfa
input: a
states: even odd
init: even
final: odd
even a -> odd
odd a -> even
";

// Four states where two suffice: e0/e1 and o0/o1 are interchangeable.
const PARITY_BLOATED: &str = "\
kind: dfa
input: a
states: e0 o0 e1 o1
init: e0
final: o0 o1
e0 a -> o0
o0 a -> e1
e1 a -> o1
o1 a -> e0
";

const ODD_AS: &str = "\
kind: nfa
input: a
states: p q r
init: p
final: q
p a -> q
q a -> r
r a -> q
";

const EVEN_AS: &str = "\
kind: dfa
input: a
states: even odd
init: even
final: even
even a -> odd
odd a -> even
";

// Delays every output by one letter, so it is not onward.
const LAGGING: &str = "\
kind: subseq
input: a b
output: x y
states: s ta tb
init: s / _
final: s / _
final: ta / x
final: tb / y
s a -> _ ta
s b -> _ tb
ta a -> x ta
ta b -> x tb
tb a -> y ta
tb b -> y tb
";

const COPY: &str = "\
kind: subseq
input: a b
output: x y
states: q
init: q / _
final: q / _
q a -> x q
q b -> y q
";

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn fsa<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_fsa")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn load(path: &Path) -> AnyMachine {
    format::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn minimize_writes_reparsable_minimal_dfa() {
    let sb = Sandbox::new();
    let input = sb.file("in.aut", PARITY_BLOATED);
    let output = sb.path("out.aut");
    let out = fsa(["minimize".as_ref(), input.as_os_str(), "-o".as_ref(), output.as_os_str()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    match load(&output) {
        AnyMachine::Dfa(m) => assert_eq!(m.num_states(), 2),
        other => panic!("expected a dfa, got {}", other.kind()),
    }
    let check = fsa(["equiv".as_ref(), input.as_os_str(), output.as_os_str()]);
    assert_eq!(stdout(&check), "equivalent\n");
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn minimize_dispatches_on_kind() {
    let sb = Sandbox::new();
    let nfa = sb.file("n.aut", ODD_AS);
    let out = fsa(["minimize".as_ref(), nfa.as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    let m = format::parse(&stdout(&out)).unwrap();
    assert_eq!((m.kind(), m.num_states()), ("dfa", 2));

    let t = sb.file("t.aut", LAGGING);
    let out = fsa(["minimize".as_ref(), t.as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    let m = format::parse(&stdout(&out)).unwrap();
    assert_eq!((m.kind(), m.num_states()), ("subseq", 1));
}

#[test]
fn every_producing_subcommand_output_reparses() {
    let sb = Sandbox::new();
    let inputs = [
        sb.file("parity.aut", PARITY),
        sb.file("odd.aut", ODD_AS),
        sb.file("lag.aut", LAGGING),
    ];
    for cmd in ["minimize", "determinize", "codeterminize", "brzozowski"] {
        for input in &inputs {
            let out = fsa([cmd.as_ref(), input.as_os_str()]);
            let is_subseq = input.ends_with("lag.aut");
            if is_subseq && cmd != "minimize" {
                assert_eq!(out.status.code(), Some(2), "{cmd} on a transducer");
                continue;
            }
            assert_eq!(out.status.code(), Some(0), "{cmd} {}", input.display());
            let text = stdout(&out);
            let parsed = format::parse(&text).unwrap_or_else(|e| panic!("{cmd}: {e}\n{text}"));
            assert_eq!(format::print(&parsed), text);
        }
    }
}

#[test]
fn run_reports_acceptance_and_outputs() {
    let sb = Sandbox::new();
    let parity = sb.file("parity.aut", PARITY);
    assert_eq!(stdout(&fsa(["run".as_ref(), parity.as_os_str(), "aaa".as_ref()])), "accept\n");
    assert_eq!(stdout(&fsa(["run".as_ref(), parity.as_os_str(), "_".as_ref()])), "reject\n");
    let odd = sb.file("odd.aut", ODD_AS);
    assert_eq!(stdout(&fsa(["run".as_ref(), odd.as_os_str(), "a".as_ref()])), "accept\n");

    let lag = sb.file("lag.aut", LAGGING);
    assert_eq!(stdout(&fsa(["run".as_ref(), lag.as_os_str(), "aab".as_ref()])), "xxy\n");
    assert_eq!(stdout(&fsa(["run".as_ref(), lag.as_os_str(), "_".as_ref()])), "_\n");

    let partial = sb.file(
        "partial.aut",
        "kind: subseq\ninput: a b\noutput: x\nstates: q\ninit: q / x\nfinal: q / _\nq a -> x q\n",
    );
    assert_eq!(stdout(&fsa(["run".as_ref(), partial.as_os_str(), "ab".as_ref()])), "undefined\n");
    assert_eq!(stdout(&fsa(["run".as_ref(), partial.as_os_str(), "aa".as_ref()])), "xxx\n");
}

#[test]
fn run_rejects_unknown_symbols() {
    let sb = Sandbox::new();
    let parity = sb.file("parity.aut", PARITY);
    let out = fsa(["run".as_ref(), parity.as_os_str(), "ab".as_ref()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("b"));
}

#[test]
fn equiv_acceptors_prints_checked_witness() {
    let sb = Sandbox::new();
    let odd = sb.file("odd.aut", ODD_AS);
    let even = sb.file("even.aut", EVEN_AS);
    let out = fsa(["equiv".as_ref(), odd.as_os_str(), even.as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
    let witness = stdout(&out);
    let witness = witness.trim_end();
    let (AnyMachine::Nfa(n), AnyMachine::Dfa(d)) = (load(&odd), load(&even)) else {
        panic!("unexpected kinds");
    };
    let w = d.alphabet().parse_word(witness).unwrap();
    assert_ne!(fsa_core::nfa::accepts(&n, &w).unwrap(), run(&d, &w).unwrap());
}

#[test]
fn equiv_transducers_prints_checked_witness() {
    let sb = Sandbox::new();
    let lag = sb.file("lag.aut", LAGGING);
    let copy = sb.file("copy.aut", COPY);
    let same = fsa(["equiv".as_ref(), lag.as_os_str(), copy.as_os_str()]);
    assert_eq!((stdout(&same).as_str(), same.status.code()), ("equivalent\n", Some(0)));

    let parity_like = sb.file("other.aut", &COPY.replace("q b -> y q", "q b -> x q"));
    let out = fsa(["equiv".as_ref(), lag.as_os_str(), parity_like.as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
    let (AnyMachine::Subseq(t1), AnyMachine::Subseq(t2)) = (load(&lag), load(&parity_like)) else {
        panic!("unexpected kinds");
    };
    let w = t1.input().parse_word(stdout(&out).trim_end()).unwrap();
    let (o1, o2): (KleisliValue<()>, KleisliValue<()>) = (transduce(&t1, &w).unwrap(), transduce(&t2, &w).unwrap());
    assert_ne!(o1, o2);
}

#[test]
fn equiv_refuses_mixed_families() {
    let sb = Sandbox::new();
    let parity = sb.file("parity.aut", PARITY);
    let copy = sb.file("copy.aut", COPY);
    let out = fsa(["equiv".as_ref(), parity.as_os_str(), copy.as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn info_lists_flags() {
    let sb = Sandbox::new();
    let bloated = sb.file("b.aut", PARITY_BLOATED);
    let text = stdout(&fsa(["info".as_ref(), bloated.as_os_str(), "--oracle-bound".as_ref(), "7".as_ref()]));
    assert!(text.contains("kind: dfa\n"));
    assert!(text.contains("states: 4\n"));
    assert!(text.contains("reachable: yes\n"));
    assert!(text.contains("observable: no\n"));
    assert!(text.contains("oracle: minimized machine agrees on 8 words"));

    let lag = sb.file("lag.aut", LAGGING);
    let text = stdout(&fsa(["info".as_ref(), lag.as_os_str(), "--oracle-bound".as_ref(), "5".as_ref()]));
    assert!(text.contains("trimmed: yes\nonward: no\n"), "{text}");
    assert!(text.contains("oracle: minimized machine agrees on 63 words"));
}

#[test]
fn parse_errors_exit_with_two_and_line_number() {
    let sb = Sandbox::new();
    let bad = sb.file("bad.aut", &PARITY.replace("odd a -> even", "odd a -> q9"));
    let out = fsa(["minimize".as_ref(), bad.as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("undeclared state q9, line 7"), "{err}");

    let out = fsa(["info".as_ref(), sb.path("missing.aut").as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fsa(["nonsense"]).status.code(), Some(2));
}
