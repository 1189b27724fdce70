use std::path::Path;

use dmdgp::data::{published_distribution, published_tables, read_distribution_csv};

#[test]
fn distribution_files_match_table_columns() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/distributions");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let from_file = read_distribution_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let from_table = published_distribution(&name).unwrap_or_else(|| panic!("no column {name}"));
        assert_eq!(from_file, from_table, "{name}");
        seen += 1;
    }
    assert_eq!(seen, 16);
}

#[test]
fn every_column_sums_close_to_one() {
    for (table, t) in published_tables() {
        for c in &t.columns {
            let total: f64 = t.column(c).unwrap().iter().sum();
            assert!((total - 1.0).abs() <= 1.5e-3, "{table}/{c}: {total}");
        }
        assert_eq!(t.outcomes, ["000", "001", "010", "011", "100", "101", "110", "111"]);
    }
}
