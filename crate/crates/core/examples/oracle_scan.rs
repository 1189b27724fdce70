//! Evaluate the threshold oracle on every candidate and show the gap
//! between solutions and non-solutions.

use dmdgp::{example_topology, extract_internal, generate_from_topology, Oracle, OracleParams};

fn main() {
    let (inst, _) = generate_from_topology(&example_topology(), &"0101".parse().unwrap(), 1).unwrap();
    let internal = extract_internal(&inst).unwrap();
    let params = OracleParams::with_defaults(inst.n());
    println!("p1 = {}, p2 = {:.4}, cut at 1 - epsilon = {}", params.p1, params.p2, 1.0 - params.epsilon);

    let rows = Oracle::new(&inst, &internal, params).scan().unwrap();
    for r in &rows {
        println!("{} g = {:>10.3e}  (g/p1)^(1/p2) = {:.4}  f = {}", r.bits, r.penalty, r.value, r.marked as u8);
    }
    let (hit, miss): (Vec<_>, Vec<_>) = rows.iter().partition(|r| r.marked);
    let hi = hit.iter().map(|r| r.value).fold(0.0, f64::max);
    let lo = miss.iter().map(|r| r.value).fold(1.0, f64::min);
    println!("largest marked value {hi:.4} < {} <= smallest unmarked value {lo:.4}", 1.0 - params.epsilon);
}
