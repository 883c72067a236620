//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use lambek_core::corpus::{enumerate_sequents, types_by_connectives, CorpusBounds};
use lambek_core::lemmas::{frame_lemmas, net_lemmas, Counterexample};
use lambek_core::net::{enumerate_nets_bruteforce, search_net, NetError};
use lambek_core::syntax::bang_polarity_ok;
use lambek_core::xcheck::{xcheck, XCheckOptions, XCheckReport};
use lambek_core::{build_frame, derivation_to_net, exists_net, parse_sequent, prove, Sequent};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const CORPUS: CorpusBounds = CorpusBounds {
    atoms: 2,
    max_connectives: 4,
    max_antecedent: 3,
};
const WEAKENING_SAMPLES: usize = 1000;
const WEAKENING_SEED: u64 = 0x5eed_0008;
/// Insertion types `!A` draw `A` from types with at most this many connectives.
const WEAKENING_TYPE_CONNECTIVES: usize = 2;
/// Nets per frame collected from the exhaustive enumerator for the lemma run.
const BRUTE_FORCE_CAP: usize = 8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text).expect("fixture parses")
}

fn rule_multiset(s: &Sequent) -> Option<Vec<&'static str>> {
    let d = prove(s)?;
    if !d.is_valid() || &d.conclusion != s {
        return None;
    }
    let mut names: Vec<_> = d
        .rules()
        .iter()
        .filter(|r| r.name() != "ax")
        .map(|r| r.name())
        .collect();
    names.sort_unstable();
    Some(names)
}

fn worked_examples() -> Outcome {
    let start = Instant::now();
    let cases: [(&str, &[&str]); 2] = [
        ("(p1\\p1)\\!p2 -> p2", &["!->", "->\\", "\\->"]),
        ("p2 -> !(p1\\p1)\\p2", &["->\\", "W!->"]),
    ];
    let mut bad = Vec::new();
    for (text, rules) in cases {
        let s = seq(text);
        let mut want = rules.to_vec();
        want.sort_unstable();
        let net_ok = exists_net(&s).is_some_and(|n| n.is_valid());
        if rule_multiset(&s).as_deref() != Some(&want[..]) || !net_ok {
            bad.push(text);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < EXAMPLE_BUDGET,
        format!("failing {bad:?}, {elapsed:.2?} (budget {EXAMPLE_BUDGET:?})"),
    )
}

fn negative_controls() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for text in ["p1 -> p2", "-> p1", "p1 p1 -> p1", "!p1 -> !p1", "!p1\\p2 -> p2"] {
        let s = seq(text);
        if prove(&s).is_some() || exists_net(&s).is_some() {
            bad.push(text);
        }
    }
    for text in ["!p1 -> !p1", "!p1\\p2 -> p2"] {
        if !build_frame(&seq(text)).check().iter().any(|v| v.is_pn11()) {
            bad.push(text);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < EXAMPLE_BUDGET,
        format!("failing {bad:?}, {elapsed:.2?} (budget {EXAMPLE_BUDGET:?})"),
    )
}

fn equivalence(r: &XCheckReport) -> Outcome {
    outcome(
        r.disagreements.is_empty() && r.agreements == r.total,
        format!(
            "{} sequents ({} outside the negative fragment), {} derivable, {} disagreements, {:.2?}",
            r.total,
            r.outside_fragment,
            r.derivable,
            r.disagreements.len(),
            r.elapsed
        ),
    )
}

fn round_trip(r: &XCheckReport, dir: lambek_core::xcheck::RoundTrip) -> Outcome {
    let fails: Vec<_> = r.round_trip_failures.iter().filter(|f| f.direction == dir).collect();
    let first = fails
        .first()
        .map(|f| format!("; first: {} ({})", f.sequent, f.detail))
        .unwrap_or_default();
    outcome(
        fails.is_empty(),
        format!(
            "{} failures over {} derivable sequents{first}",
            fails.len(),
            r.derivable
        ),
    )
}

struct Exhaustive {
    oracle: Outcome,
    lemmas: Outcome,
}

fn exhaustive(corpus: &[Sequent]) -> Exhaustive {
    let mut compared = 0usize;
    let mut too_large = 0usize;
    let mut mismatches = Vec::new();
    let mut counterexamples: Vec<(String, Counterexample)> = Vec::new();
    let mut nets_checked = 0usize;
    let mut frames_checked = 0usize;
    for s in corpus {
        let f = build_frame(s);
        frames_checked += 1;
        counterexamples.extend(frame_lemmas(&f).into_iter().map(|c| (s.to_string(), c)));
        let found = if f.pn11_violations().is_empty() {
            search_net(&f)
        } else {
            None
        };
        if let Some(n) = &found {
            nets_checked += 1;
            counterexamples.extend(net_lemmas(n).into_iter().map(|c| (s.to_string(), c)));
        }
        match enumerate_nets_bruteforce(&f, BRUTE_FORCE_CAP) {
            Ok(all) => {
                compared += 1;
                if found.is_some() == all.is_empty() {
                    mismatches.push(s.to_string());
                }
                for n in &all {
                    nets_checked += 1;
                    counterexamples.extend(net_lemmas(n).into_iter().map(|c| (s.to_string(), c)));
                }
            }
            Err(NetError::TooLarge { .. }) => too_large += 1,
            Err(e) => panic!("brute force on {s}: {e}"),
        }
    }
    let oracle = outcome(
        mismatches.is_empty(),
        format!(
            "{compared} frames compared, {too_large} beyond brute-force bounds, {} mismatches{}",
            mismatches.len(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    );
    let lemmas = outcome(
        counterexamples.is_empty(),
        format!(
            "{frames_checked} frames, {nets_checked} nets, {} counterexamples{}",
            counterexamples.len(),
            counterexamples
                .first()
                .map(|(s, c)| format!("; first: {s} {c:?}"))
                .unwrap_or_default()
        ),
    );
    Exhaustive { oracle, lemmas }
}

fn weakening(corpus: &[Sequent]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(WEAKENING_SEED);
    let derivable: Vec<&Sequent> = corpus.iter().filter(|s| prove(s).is_some()).collect();
    let inserts: Vec<_> = types_by_connectives(CORPUS.atoms, WEAKENING_TYPE_CONNECTIVES)
        .into_iter()
        .flatten()
        .collect();
    let mut bad = Vec::new();
    let mut tried = 0;
    while tried < WEAKENING_SAMPLES {
        let base = *derivable.choose(&mut rng).expect("corpus has derivable sequents");
        let a = inserts.choose(&mut rng).expect("nonempty").clone();
        let pos = rng.gen_range(0..=base.antecedent.len());
        let mut ext = base.clone();
        ext.antecedent.insert(pos, lambek_core::Type::bang(a));
        if !bang_polarity_ok(&ext) {
            continue;
        }
        tried += 1;
        let prover = prove(&ext).is_some_and(|d| d.is_valid());
        let net = exists_net(&ext).is_some_and(|n| n.is_valid());
        if !(prover && net) {
            bad.push(ext.to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{tried} extensions (seed {WEAKENING_SEED:#x}), {} not derivable by both{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let report = xcheck(XCheckOptions {
        bounds: CORPUS,
        workers: 1,
        limit: None,
    })
    .expect("corpus within bounds");
    let corpus: Vec<Sequent> = enumerate_sequents(CORPUS)
        .expect("bounded")
        .into_iter()
        .filter(bang_polarity_ok)
        .collect();
    // Derivations from the prover also go through the bridge directly once.
    assert!(derivation_to_net(&prove(&seq("p1 -> p1")).unwrap()).is_ok());

    let start = Instant::now();
    let ex = exhaustive(&corpus);
    let exhaustive_time = start.elapsed();

    let results = [
        ("1 worked examples", worked_examples()),
        ("2 negative controls", negative_controls()),
        ("3 prover/net equivalence", equivalence(&report)),
        (
            "4 round trip A (derivation to net)",
            round_trip(&report, lambek_core::xcheck::RoundTrip::A),
        ),
        (
            "5 round trip B (net to derivation)",
            round_trip(&report, lambek_core::xcheck::RoundTrip::B),
        ),
        ("6 canonical U vs brute force", ex.oracle),
        ("7 lemma suite", ex.lemmas),
        ("8 weakening admissibility", weakening(&corpus)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("(criteria 6-7 took {exhaustive_time:.2?})");
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
