//! Iteration counts and success probabilities as the search space grows.

use dmdgp::{iteration_count, success_probability, IterationMode};

fn main() {
    println!("{:>8} {:>4} {:>9} {:>6} {:>6} {:>10}", "N", "M", "k_raw", "floor", "round", "P(round)");
    for bits in 3..=14 {
        let size = 1usize << bits;
        for marked in [1, 4] {
            if marked >= size {
                continue;
            }
            let floor = iteration_count(size, marked, IterationMode::Floor).unwrap();
            let near = iteration_count(size, marked, IterationMode::Nearest).unwrap();
            println!(
                "{size:>8} {marked:>4} {:>9.4} {:>6} {:>6} {:>10.6}",
                near.k_raw,
                floor.iterations,
                near.iterations,
                success_probability(size, marked, near.iterations)
            );
        }
    }
}
