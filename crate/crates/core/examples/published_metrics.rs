//! Fidelity and selectivity of the bundled hardware runs against the
//! noiseless simulator columns.

use dmdgp::data::{published_tables, PUBLISHED_MARKED};
use dmdgp::MetricsReport;

fn main() {
    for (table, t) in published_tables() {
        println!("{table}");
        for column in &t.columns {
            if column.starts_with("simulator") {
                continue;
            }
            let measured = t.distribution(column).unwrap().unwrap();
            // Compare each run with the simulator run of the same gate set and call count.
            let suffix = column.split_once('_').map(|(_, s)| s).unwrap();
            let reference = dmdgp::data::published_distribution(&format!("simulator_{suffix}")).unwrap();
            let m = MetricsReport::compare(&measured, &reference, &[PUBLISHED_MARKED]).unwrap();
            println!(
                "  {column:<24} fidelity {:.3}  hellinger fidelity {:.3}  selectivity {:.2}",
                m.fidelity_tv, m.fidelity_h, m.selectivity
            );
        }
    }
}
