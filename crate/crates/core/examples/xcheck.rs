//! Differential check of the prover against net search on a small corpus.
//!
//! cargo run --release --example xcheck -- 2 3 2

use lambek_core::corpus::CorpusBounds;
use lambek_core::xcheck::{xcheck, XCheckOptions};

fn main() {
    let n: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("count")).collect();
    let get = |i: usize, d: usize| n.get(i).copied().unwrap_or(d);
    let bounds = CorpusBounds {
        atoms: get(0, 1) as u32,
        max_connectives: get(1, 2),
        max_antecedent: get(2, 2),
    };
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    let report = xcheck(XCheckOptions {
        bounds,
        workers,
        limit: None,
    })
    .expect("bounded corpus");
    print!("{}", report.to_text());
    println!("elapsed {:.2?} on {workers} workers", report.elapsed);
}
