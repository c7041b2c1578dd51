//! Certified isolating boxes; rational roots snap to exact points.
use curvecert::algebra::{isolate_roots, parse_uni};
use num_rational::BigRational;

fn main() {
    let precision = BigRational::new(1.into(), 1_000_000_000_000i64.into());
    for text in ["t^2 - 2", "4*t^2 - 1", "t^3 + 1", "t^4 + t + 1"] {
        let p = parse_uni(text, "t").unwrap();
        let iso = isolate_roots(&p, &precision).unwrap();
        println!("{text}: {} roots, all certified: {}", iso.boxes.len(), iso.all_certified());
        for b in &iso.boxes {
            let exact = if b.is_exact() { format!(" = {}", b.center().to_grammar()) } else { String::new() };
            println!("  {}{exact}", b.decimal());
        }
    }
}
