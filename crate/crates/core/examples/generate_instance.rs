//! Generate a random instance, validate it and print its JSON.
//!
//! cargo run --example generate_instance -- 8 42 0.7

use dmdgp::instance::generate_detailed;
use dmdgp::validate;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(7);
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let p = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.5);

    let generated = generate_detailed(n, seed, p);
    let report = validate(&generated.instance);
    eprintln!(
        "n = {n}, {} edges, {} long-range, ground truth {}, validation: {}",
        generated.instance.edge_count(),
        generated.instance.pruning_edges().count(),
        generated.ground_truth.bits,
        if report.ok() { "ok" } else { "FAILED" }
    );
    print!("{}", generated.document().to_json());
}
