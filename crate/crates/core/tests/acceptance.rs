//! Exit criteria for the library, one line of output per criterion.
//!
//! Run with `cargo test -p fsa-core --test acceptance`.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use fsa_core::alphabet::words_up_to;
use fsa_core::dfa::minimize;
use fsa_core::kleisli::{
    choffrut_minimize, class_map, diagonal_fill, factorize, is_epi, is_mono, is_onward,
    kleisli_compose, lift_to_set, normalize, pstar, reduce, transduce, transducer_equiv,
    transducer_isomorphic, trim, TransducerMorphism,
};
use fsa_core::machine::minimize_observe_first;
use fsa_core::nfa::{accepts, brzozowski, determinize};
use fsa_core::oracle::{nerode_count, partition_search_min};
use fsa_core::random::{
    delay_outputs, duplicate_states, random_epi, random_kleisli, random_mono, random_table,
    random_word,
};
use fsa_core::{format, isomorphic, minimize_by_factorization, run, AnyMachine, KleisliMorphism};
use rand::Rng;

use common::{dfa, nfa, rng, transducer};

struct Outcome {
    checked: usize,
    failures: Vec<String>,
    elapsed: Duration,
    time_limit: Option<Duration>,
}

fn criterion(checked: usize, failures: Vec<String>, start: Instant, time_limit: Option<Duration>) -> Outcome {
    Outcome {
        checked,
        failures,
        elapsed: start.elapsed(),
        time_limit,
    }
}

/// Criterion 1: Brzozowski agrees with subset construction followed by Moore.
fn brzozowski_correctness() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = 200;
    for seed in 0..cases {
        let n = nfa(1_000 + seed, 6);
        if isomorphic(&brzozowski(&n), &minimize(&determinize(&n))).is_none() {
            failures.push(format!("nfa seed {}", 1_000 + seed));
        }
    }
    criterion(cases as usize, failures, start, Some(Duration::from_secs(10)))
}

/// Criterion 2: Minimal state count equals the number of residuals, and both
/// orders of reach/observe agree.
fn minimization_soundness() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = 200;
    for seed in 0..cases {
        let m = dfa(2_000 + seed, 8);
        let min = minimize_by_factorization(&m);
        if min.num_states() != nerode_count(&m) {
            failures.push(format!("dfa seed {}: state count", 2_000 + seed));
        }
        if isomorphic(&min, &minimize_observe_first(&m)).is_none() {
            failures.push(format!("dfa seed {}: factor order", 2_000 + seed));
        }
    }
    criterion(cases as usize, failures, start, None)
}

/// Criterion 3: Choffrut minimization against equivalence, onwardness,
/// idempotence and the brute-force merge search.
fn transducer_minimization() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = 100;
    for seed in 0..cases {
        let t = transducer(3_000 + seed);
        let min = choffrut_minimize(&t);
        let tag = format!("transducer seed {}", 3_000 + seed);
        if !transducer_equiv(&t, &min).unwrap() {
            failures.push(format!("{tag}: not equivalent"));
        }
        if !is_onward(&min).unwrap() {
            failures.push(format!("{tag}: not onward"));
        }
        if transducer_isomorphic(&min, &choffrut_minimize(&min)).is_none() {
            failures.push(format!("{tag}: not idempotent"));
        }
        let normal = normalize(&trim(&t)).unwrap();
        if partition_search_min(&normal).unwrap() != min.num_states() {
            failures.push(format!("{tag}: not minimal"));
        }
    }
    criterion(cases as usize, failures, start, Some(Duration::from_secs(60)))
}

/// Criterion 4: The (E_Kl, M_Kl) factorization system.
fn factorization_system() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(4_000);
    let morphisms = 500;
    for i in 0..morphisms {
        let (x, y) = (r.gen_range(0..=6), r.gen_range(0..=6));
        let f = random_kleisli(&mut r, x, y, 2, 3);
        let fac = factorize(&f);
        if kleisli_compose(&fac.mono, &fac.epi).unwrap() != f {
            failures.push(format!("morphism {i}: recomposition"));
        }
        if !is_epi(&fac.epi) || !is_mono(&fac.mono) {
            failures.push(format!("morphism {i}: classification"));
        }
        // an independent description of the two classes
        let hits: std::collections::BTreeSet<usize> = f.values().iter().filter_map(|v| v.value().copied()).collect();
        if is_epi(&f) != (hits.len() == f.codomain()) {
            failures.push(format!("morphism {i}: is_epi"));
        }
        let injective_eps = f.values().iter().all(|v| v.word().is_some_and(|w| w.is_empty()))
            && hits.len() == f.domain();
        if is_mono(&f) != injective_eps {
            failures.push(format!("morphism {i}: is_mono"));
        }
        // uniqueness: a renamed factorization is connected by an iso
        let mut perm: Vec<usize> = (0..fac.image.len()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        let sigma = KleisliMorphism::new(perm.len(), perm.iter().map(|&j| fsa_core::KleisliValue::unit(j)).collect()).unwrap();
        let mut inv = vec![0; perm.len()];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let sigma_inv = KleisliMorphism::new(inv.len(), inv.iter().map(|&j| fsa_core::KleisliValue::unit(j)).collect()).unwrap();
        let e2 = kleisli_compose(&sigma, &fac.epi).unwrap();
        let m2 = kleisli_compose(&fac.mono, &sigma_inv).unwrap();
        match diagonal_fill(&fac.epi, &e2, &fac.mono, &m2) {
            Ok(d) if is_epi(&d) && is_mono(&d) && d == sigma => {}
            _ => failures.push(format!("morphism {i}: factorizations not isomorphic")),
        }
    }
    let squares = 200;
    for i in 0..squares {
        let ny = r.gen_range(0..=5);
        let nx = r.gen_range(ny..=6);
        let nz = r.gen_range(0..=5);
        let nw = r.gen_range(nz..=6);
        let e = random_epi(&mut r, nx, ny, 2, 3);
        let m = random_mono(&mut r, nz, nw);
        let d0 = random_kleisli(&mut r, ny, nz, 2, 3);
        let f = kleisli_compose(&d0, &e).unwrap();
        let g = kleisli_compose(&m, &d0).unwrap();
        match diagonal_fill(&e, &f, &g, &m) {
            Ok(d) if d == d0 => {}
            other => failures.push(format!("square {i}: {other:?}")),
        }
    }
    criterion(morphisms + squares, failures, start, None)
}

/// Criterion 5: Lifting to deterministic machines preserves semantics.
fn lifted_semantics() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let words = words_up_to(2, 8);
    for seed in 0..100 {
        let t = transducer(5_000 + seed);
        let lifted = lift_to_set(&t);
        if let Some(w) = words.iter().find(|w| run(&lifted, w).unwrap() != transduce(&t, w).unwrap()) {
            failures.push(format!("transducer seed {} on {w:?}", 5_000 + seed));
        }
    }
    for seed in 0..100 {
        let n = nfa(5_500 + seed, 6);
        let d = determinize(&n);
        if let Some(w) = words.iter().find(|w| accepts(&n, w).unwrap() != run(&d, w).unwrap()) {
            failures.push(format!("nfa seed {} on {w:?}", 5_500 + seed));
        }
    }
    criterion(200, failures, start, None)
}

/// Criterion 6: `φ` and its inverse `(lcp, red)` are mutually inverse.
fn table_bijection() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(6_000);
    let cases = 500;
    for i in 0..cases {
        let k = random_table(&mut r, 2, 3, 2, 3);
        let (prefix, red) = reduce(&k).unwrap();
        if pstar(&prefix, &red) != k || !red.is_irreducible() {
            failures.push(format!("table {i}: pstar ∘ reduce"));
        }
        let v = random_word(&mut r, 2, 4);
        if reduce(&pstar(&v, &k)).unwrap() != (v.concat(&prefix), red) {
            failures.push(format!("table {i}: reduce ∘ pstar"));
        }
    }
    criterion(cases, failures, start, None)
}

/// Criterion 7: The minimal transducer divides every equivalent one.
fn divisibility() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = 50;
    for seed in 0..cases {
        let mut r = rng(7_000 + seed);
        let t = transducer(7_000 + seed);
        let copies = r.gen_range(1..=3);
        let noisy = duplicate_states(&mut r, &delay_outputs(&t), copies);
        let source = normalize(&trim(&noisy)).unwrap();
        let target = choffrut_minimize(&t);
        let map: Option<Vec<usize>> = class_map(&source, &target).and_then(|m| m.into_iter().collect());
        let ok = map.is_some_and(|map| {
            let h = TransducerMorphism { source, target, map };
            h.is_valid() && h.is_surjective()
        });
        if !ok {
            failures.push(format!("transducer seed {}", 7_000 + seed));
        }
    }
    criterion(cases as usize, failures, start, None)
}

/// Criterion 8: Text format round trip and byte-stable golden files.
fn text_round_trip() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for seed in 0..100u64 {
        let machines = [
            AnyMachine::Dfa(dfa(8_000 + seed, 8)),
            AnyMachine::Nfa(nfa(8_100 + seed, 6)),
            AnyMachine::Subseq(transducer(8_200 + seed)),
        ];
        for m in machines {
            checked += 1;
            let text = format::print(&m);
            match format::parse(&text) {
                Ok(back) if back == m && format::print(&back) == text => {}
                other => failures.push(format!("{} seed {seed}: {other:?}", m.kind())),
            }
        }
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut goldens: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    goldens.sort();
    if goldens.len() < 5 {
        failures.push(format!("only {} golden files", goldens.len()));
    }
    for path in goldens {
        checked += 1;
        let bytes = std::fs::read_to_string(&path).unwrap();
        let first = format::parse(&bytes).map(|m| format::print(&m));
        let second = first.as_ref().ok().and_then(|t| format::parse(t).ok()).map(|m| format::print(&m));
        if first.as_deref() != Ok(bytes.as_str()) || second.as_deref() != Some(bytes.as_str()) {
            failures.push(format!("golden {} is not byte-stable", path.display()));
        }
    }
    criterion(checked, failures, start, None)
}

type Check = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Check; 8] = [
        ("1 brzozowski correctness", brzozowski_correctness),
        ("2 minimization soundness", minimization_soundness),
        ("3 transducer minimization", transducer_minimization),
        ("4 factorization system", factorization_system),
        ("5 lifted adjunction semantics", lifted_semantics),
        ("6 lcp/red bijection", table_bijection),
        ("7 divisibility", divisibility),
        ("8 text round trip", text_round_trip),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = check();
        let too_slow = outcome.time_limit.is_some_and(|limit| outcome.elapsed >= limit);
        let pass = outcome.failures.is_empty() && !too_slow;
        let limit = outcome
            .time_limit
            .map(|l| format!(" (limit {:.0?})", l))
            .unwrap_or_default();
        println!(
            "[{}] criterion {name}: {} cases, {} failures, {:.2?}{limit}",
            if pass { "PASS" } else { "FAIL" },
            outcome.checked,
            outcome.failures.len(),
            outcome.elapsed,
        );
        for f in outcome.failures.iter().take(5) {
            println!("       {f}");
        }
        if !pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
