//! A random shear that fixes the last coordinate makes planar directions
//! usable for the three lines.
use curvecert::algebra::GaussianRational as Gq;
use curvecert::analysis::search_direction;
use curvecert::automorphism::{random_repair_shear, var_names};
use curvecert::curve::fixtures;

fn main() {
    let lines = fixtures::three_lines();
    let plane: Vec<Vec<Gq>> = (0..2).map(|i| (0..3).map(|j| Gq::from_int((i == j) as i64)).collect()).collect();
    let names = var_names(3);
    for seed in 0..4 {
        let phi = random_repair_shear(3, 1, seed, 2).unwrap();
        assert!(phi.fixes_last(1));
        let moved = lines.apply_automorphism(&phi).unwrap();
        let out = search_direction(&moved, &plane, seed, 16).unwrap();
        let shear: Vec<String> = phi.to_polynomials().iter().map(|p| p.display(&names)).collect();
        match out.found {
            Some((i, v, _)) => println!("({}): good direction {v} at sample {i}", shear.join(", ")),
            None => println!("({}): none in {} samples", shear.join(", "), out.samples),
        }
    }
}
