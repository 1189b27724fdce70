//! The seven-vertex example: symmetry set, Branch-and-Prune and symmetry expansion.

use dmdgp::bp::SearchMode;
use dmdgp::{
    branch_and_prune, example_topology, expand_symmetry, extract_internal, generate_from_topology, symmetry_set,
    BpOptions,
};

fn main() {
    let (inst, truth) = generate_from_topology(&example_topology(), &"0101".parse().unwrap(), 1).unwrap();
    let internal = extract_internal(&inst).unwrap();
    let s = symmetry_set(&inst);
    println!("long-range edges: {:?}", inst.pruning_edges().map(|(u, v, _)| (u, v)).collect::<Vec<_>>());
    println!("S = {:?}, 2^|S| = {}", s.vertices, s.solution_count());

    let all = branch_and_prune(&inst, &internal, BpOptions::default()).unwrap();
    for sol in &all.entries {
        println!("  {}  k = {:>2}  g = {:.2e}", sol.bits, sol.index(), sol.penalty);
    }

    let first =
        branch_and_prune(&inst, &internal, BpOptions { mode: SearchMode::First, ..BpOptions::default() }).unwrap();
    let expanded = expand_symmetry(&first.entries[0].bits, &s);
    println!(
        "expanding {} over S gives {:?}",
        first.entries[0].bits,
        expanded.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    assert_eq!(expanded.into_iter().collect::<Vec<_>>(), all.bit_strings());
    assert!(all.bit_strings().contains(&truth.bits));
}
