//! How depolarizing-style noise erodes fidelity and selectivity for one and
//! two iterations over eight outcomes.

use dmdgp::{grover_distribution, mix_uniform, MetricsReport};

fn main() {
    let marked = [2];
    println!("noise  iters  fidelity  selectivity  P(marked)");
    for iters in [1, 2] {
        let ideal = grover_distribution(8, &marked, iters).unwrap();
        for step in 0..=10 {
            let lambda = step as f64 / 10.0;
            let noisy = mix_uniform(&ideal, lambda).unwrap();
            let m = MetricsReport::compare(&noisy, &ideal, &marked).unwrap();
            println!(
                "{lambda:>5.1}  {iters:>5}  {:>8.4}  {:>11.3}  {:>9.4}",
                m.fidelity_tv, m.selectivity, m.success_probability
            );
        }
    }
}
