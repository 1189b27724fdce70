//! Full pipeline: oracle, iteration count, simulated search, sampled shots
//! and an SVG histogram written to the temp directory.

use dmdgp::render::{svg_histogram, text_histogram};
use dmdgp::{example_topology, generate_from_topology, run_grover, RunOptions};

fn main() {
    let (inst, _) = generate_from_topology(&example_topology(), &"0101".parse().unwrap(), 1).unwrap();
    let report = run_grover(&inst, &RunOptions { shots: 8196, seed: 7, ..RunOptions::default() }).unwrap();
    print!("{report}");
    print!("{}", text_histogram(&report.measured, &report.marked, 40));

    let path = std::env::temp_dir().join("dmdgp_grover_search.svg");
    std::fs::write(&path, svg_histogram("worked example, 8196 shots", &report.measured, &report.marked)).unwrap();
    println!("histogram written to {}", path.display());
}
