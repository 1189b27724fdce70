//! Recover bond lengths, angles and torsions from distances, then rebuild
//! the chain for both torsion signs of every vertex.

use dmdgp::geometry::{b_matrix, Branch};
use dmdgp::instance::generate_detailed;
use dmdgp::{extract_internal, penalty, realize, BitString};

fn main() {
    let generated = generate_detailed(6, 3, 0.5);
    let internal = extract_internal(&generated.instance).expect("valid instance");
    let n = internal.n();

    println!("vertex  bond      angle(deg)  cos(torsion)  drawn cos");
    for i in 2..=n {
        let angle = if i >= 3 { format!("{:>10.4}", internal.angle(i).to_degrees()) } else { " ".repeat(10) };
        let (cos, drawn) = if i >= 4 {
            (format!("{:>12.6}", internal.torsion_cosine(i)), format!("{:>10.6}", generated.torsions[i - 4].cos()))
        } else {
            (String::new(), String::new())
        };
        println!("{i:>6}  {:.6}  {angle}  {cos}  {drawn}", internal.bond(i));
    }

    println!("\nB_4 for the + branch:\n{}", b_matrix(4, &internal, Branch::Plus).0);

    let truth = &generated.ground_truth.bits;
    let conf = realize(&internal, truth).unwrap();
    println!("ground truth {truth}: penalty {:.3e}", penalty(&conf, &generated.instance));
    let mirror = truth.complement();
    let conf = realize(&internal, &mirror).unwrap();
    println!("mirror image {mirror}: penalty {:.3e}", penalty(&conf, &generated.instance));
    let other = BitString::from_index(truth.to_index() ^ 1, n - 3);
    let conf = realize(&internal, &other).unwrap();
    println!("last sign flipped {other}: penalty {:.3e}", penalty(&conf, &generated.instance));
}
