//! Differential check of the two deciders over an enumerated corpus, with
//! both derivation/net round trips run on every derivable sequent.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use crate::bridge::{derivation_to_net, net_to_derivation};
use crate::corpus::{enumerate_sequents, BoundError, CorpusBounds};
use crate::net::exists_net;
use crate::prover::prove;
use crate::syntax::{bang_polarity_ok, Sequent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub sequent: String,
    pub prover: bool,
    pub net: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RoundTrip {
    /// Derivation to net.
    A,
    /// Net to derivation.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripFailure {
    pub sequent: String,
    pub direction: RoundTrip,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct XCheckReport {
    /// Sequents compared: those whose `!` occurrences are all negative.
    pub total: usize,
    /// Enumerated sequents left out because some `!` is positive.
    pub outside_fragment: usize,
    pub agreements: usize,
    pub derivable: usize,
    pub disagreements: Vec<Disagreement>,
    pub round_trip_failures: Vec<RoundTripFailure>,
    pub elapsed: Duration,
}

impl XCheckReport {
    /// Deterministic rendering; timing is left out.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "total: {}", self.total);
        let _ = writeln!(out, "outside fragment: {}", self.outside_fragment);
        let _ = writeln!(out, "agreements: {}", self.agreements);
        let _ = writeln!(out, "derivable: {}", self.derivable);
        let _ = writeln!(out, "disagreements: {}", self.disagreements.len());
        for d in &self.disagreements {
            let _ = writeln!(out, "  {}  prover={} net={}", d.sequent, d.prover, d.net);
        }
        let _ = writeln!(out, "round-trip failures: {}", self.round_trip_failures.len());
        for f in &self.round_trip_failures {
            let _ = writeln!(out, "  {:?} {}  {}", f.direction, f.sequent, f.detail);
        }
        out
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.round_trip_failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct XCheckOptions {
    pub bounds: CorpusBounds,
    pub workers: usize,
    /// Only the first `limit` corpus sequents are checked.
    pub limit: Option<usize>,
}

/// Verdicts of both deciders on one sequent, plus round-trip failures.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub prover: bool,
    pub net: bool,
    pub failures: Vec<RoundTripFailure>,
}

pub fn check_sequent(s: &Sequent) -> Outcome {
    let derivation = prove(s);
    let net = exists_net(s);
    let mut failures = Vec::new();
    let fail = |direction, detail: String| RoundTripFailure {
        sequent: s.to_string(),
        direction,
        detail,
    };
    if let Some(d) = &derivation {
        if let Err(e) = derivation_to_net(d) {
            failures.push(fail(RoundTrip::A, e.to_string()));
        }
    }
    if let Some(n) = &net {
        match net_to_derivation(n) {
            Ok(d) if &d.conclusion == s && d.is_valid() => {}
            Ok(_) => failures.push(fail(RoundTrip::B, "derivation does not conclude the sequent".into())),
            Err(e) => failures.push(fail(RoundTrip::B, e.to_string())),
        }
    }
    Outcome {
        prover: derivation.is_some(),
        net: net.is_some(),
        failures,
    }
}

fn shard(s: &Sequent, workers: usize) -> usize {
    let mut h = DefaultHasher::new();
    s.to_string().hash(&mut h);
    (h.finish() % workers as u64) as usize
}

pub fn xcheck(opts: XCheckOptions) -> Result<XCheckReport, BoundError> {
    let start = Instant::now();
    let mut corpus = enumerate_sequents(opts.bounds)?;
    if let Some(limit) = opts.limit {
        corpus.truncate(limit);
    }
    let enumerated = corpus.len();
    corpus.retain(bang_polarity_ok);
    let workers = opts.workers.max(1);
    let mut results: Vec<(usize, Outcome)> = std::thread::scope(|scope| {
        let corpus = &corpus;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    corpus
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| shard(s, workers) == w)
                        .map(|(i, s)| (i, check_sequent(s)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    results.sort_by_key(|(i, _)| *i);

    let mut report = XCheckReport {
        total: corpus.len(),
        outside_fragment: enumerated - corpus.len(),
        agreements: 0,
        derivable: 0,
        disagreements: Vec::new(),
        round_trip_failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (i, o) in results {
        if o.prover == o.net {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement {
                sequent: corpus[i].to_string(),
                prover: o.prover,
                net: o.net,
            });
        }
        report.derivable += usize::from(o.prover);
        report.round_trip_failures.extend(o.failures);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
