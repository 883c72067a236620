//! Parse sequents, print them back in canonical form and report their
//! connective count and whether every `!` sits in negative position.
//!
//! cargo run --example parse_print -- "p1, (p1\p2) -> p2"

use lambek_core::parse_sequent;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec![
            "(p1\\p1)\\!p2 -> p2".into(),
            "p2 -> !(p1\\p1)\\p2".into(),
            "!p1 -> !p1".into(),
            "p1\\".into(),
        ]
    } else {
        args
    };
    for text in &inputs {
        match parse_sequent(text) {
            Ok(s) => println!(
                "{text:>24}  =>  {s}   connectives={} negative-bangs-only={}",
                s.connective_count(),
                s.bang_polarity_ok()
            ),
            Err(e) => println!("{text:>24}  =>  {e}"),
        }
    }
}
