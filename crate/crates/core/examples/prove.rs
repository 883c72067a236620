//! Backward proof search: print the derivation tree, its JSON form and the
//! result of independently validating it.
//!
//! cargo run --example prove -- "p1 p1\p2 -> p2"

use lambek_core::prove;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(p1\\p1)\\!p2 -> p2".into());
    let s = text.parse().expect("sequent");
    match prove(&s) {
        Some(d) => {
            print!("{}", d.to_text());
            println!("{}", serde_json::to_string_pretty(&d.to_json()).unwrap());
            println!("size {}, valid: {}", d.size(), d.is_valid());
        }
        None => println!("{s} is not derivable"),
    }
}
