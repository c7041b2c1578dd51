//! Seeded search for a good projection direction.
use curvecert::algebra::GaussianRational as Gq;
use curvecert::analysis::search_direction;
use curvecert::curve::fixtures;

fn main() {
    let basis: Vec<Vec<Gq>> = (0..3).map(|i| (0..3).map(|j| Gq::from_int((i == j) as i64)).collect()).collect();
    let cubic = fixtures::twisted_cubic();
    let out = search_direction(&cubic, &basis, 42, 32).unwrap();
    match &out.found {
        Some((i, v, _)) => println!("sample {i}: {v} is good after {} failures", out.failures.len()),
        None => println!("no good direction in {} samples", out.samples),
    }

    // restricted to the plane z = 0 only (0:1:0) works for the three lines
    let out = search_direction(&fixtures::three_lines(), &basis[..2], 1, 16).unwrap();
    println!("three lines in the plane: {} of {} samples failed", out.failures.len(), out.samples);
}
