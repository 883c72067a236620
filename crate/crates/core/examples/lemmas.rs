//! Evaluate the structural lemmas on a frame and on its net, including the
//! split data used by extraction.
//!
//! cargo run --example lemmas -- "p2 p1 p1\(p2\p2) -> p2"

use lambek_core::bridge::{compute_split, peel_succedent};
use lambek_core::lemmas::{frame_lemmas, pi_element_closed, net_lemmas};
use lambek_core::{build_frame, exists_net};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(p1\\p1)\\!p2 -> p2".into());
    let s = text.parse().expect("sequent");
    println!("frame lemmas: {:?}", frame_lemmas(&build_frame(&s)));
    let Some(n) = exists_net(&s) else {
        println!("no net");
        return;
    };
    println!("net lemmas: {:?}", net_lemmas(&n));
    let p = peel_succedent(&n);
    match compute_split(&p) {
        Ok(Some(sp)) => println!("split: {sp:?}"),
        Ok(None) => println!("split: none (axiom with weakenings)"),
        Err(e) => println!("split: {e}"),
    }
    // Holds only when the active division is a whole antecedent element.
    println!("pi-element-closed witnesses: {:?}", pi_element_closed(&p));
}
