//! Search for a proof net, compare with the exhaustive enumerator, and
//! print the net as JSON and Graphviz.
//!
//! cargo run --example net_search -- "p1 -> p1"

use lambek_core::net::enumerate_nets_bruteforce;
use lambek_core::{build_frame, search_net};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "p2 -> !(p1\\p1)\\p2".into());
    let f = build_frame(&text.parse().expect("sequent"));
    if !f.pn11_violations().is_empty() {
        println!("{}: a `!` in positive position, no net", f.source());
        return;
    }
    match search_net(&f) {
        Some(n) => {
            println!("S = {:?}", n.s.pairs().collect::<Vec<_>>());
            println!("U = {:?}", n.u.iter().collect::<Vec<_>>());
            println!("{}", serde_json::to_string(&n.to_json()).unwrap());
            print!("{}", n.to_dot());
        }
        None => println!("{}: no net", f.source()),
    }
    match enumerate_nets_bruteforce(&f, 1000) {
        Ok(all) => println!("exhaustive enumeration: {} nets", all.len()),
        Err(e) => println!("exhaustive enumeration skipped: {e}"),
    }
}
