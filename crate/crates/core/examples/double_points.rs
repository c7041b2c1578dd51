//! The node of the twisted cubic projected along (1, 0, 1).
use curvecert::analysis::{certify_transversal, double_points, witness_precision};
use curvecert::curve::{fixtures, Direction, LinearProjection};

fn main() {
    let cubic = fixtures::twisted_cubic();
    let proj = LinearProjection::along(&Direction::from_ints(&[1, 0, 1]).unwrap());
    let h = cubic.project(&proj).unwrap();
    println!("projected curve: {h:?}");

    let dps = double_points(&cubic, &proj, Some(&witness_precision())).unwrap();
    println!("unordered double points: {}", dps.unordered_count());
    for (s, t) in &dps.pair(0, 0).unwrap().isolates {
        println!("  s = {}, t = {}", s.center().to_grammar(), t.center().to_grammar());
    }

    let cert = certify_transversal(&cubic, &proj).unwrap();
    println!("transversal: {:?}", cert.status);
    for e in &cert.trace {
        println!("  {}: {}", e.label, e.value);
    }
}
