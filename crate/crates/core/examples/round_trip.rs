//! Translate a derivation into a proof net and extract a derivation back
//! out of the net.
//!
//! cargo run --example round_trip -- "p1 !p2 p1\p1 -> p1"

use lambek_core::{derivation_to_net, net_to_derivation, prove};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(p1\\p1)\\!p2 -> p2".into());
    let s = text.parse().expect("sequent");
    let Some(d) = prove(&s) else {
        println!("{s} is not derivable");
        return;
    };
    println!("searched derivation:\n{}", d.to_text());
    let n = derivation_to_net(&d).expect("derivation translates");
    println!(
        "net: S = {:?}, U = {:?}\n",
        n.s.pairs().collect::<Vec<_>>(),
        n.u.iter().collect::<Vec<_>>()
    );
    let back = net_to_derivation(&n).expect("net extracts");
    println!("extracted derivation:\n{}", back.to_text());
    println!("same tree: {}", back == d);
}
