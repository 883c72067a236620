//! Build the frame of a sequent and list each vertex with its parent, edge
//! label, depth `d`, head leaf `H` and locator. Pass `--dot` for Graphviz.
//!
//! cargo run --example frame_inspect -- "(p1\p1)\!p2 -> p2"

use lambek_core::build_frame;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let dot = args.iter().any(|a| a == "--dot");
    args.retain(|a| a != "--dot");
    let text = args.first().cloned().unwrap_or_else(|| "(p1\\p1)\\!p2 -> p2".into());
    let f = build_frame(&text.parse().expect("sequent"));
    if dot {
        print!("{}", f.to_dot());
        return;
    }
    println!("frame of {} (root {})", f.source(), f.root());
    for v in 0..f.len() {
        let label = f.edge(v).map_or("root".to_string(), |e| e.code().to_string());
        let prim = f.prim(v).map_or(String::new(), |p| format!("p{}", p.get()));
        println!(
            "  {v:>2} {prim:>3} parent={:<4} edge={label:<4} d={} H={:<2} {:?}",
            f.parent(v).map_or("-".into(), |p| p.to_string()),
            f.depth(v),
            f.head(v),
            f.loc(v)
        );
    }
    let violations = f.check();
    println!("well-formed: {}", violations.is_empty());
    for v in violations {
        println!("  {v:?}");
    }
}
