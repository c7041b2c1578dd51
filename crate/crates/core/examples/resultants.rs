//! Exact resultants, gcds and divided differences over ℚ(i).
use curvecert::algebra::{divided_difference, parse_uni, UniPoly};

fn main() {
    let p = parse_uni("t^3 - 2*t + 1", "t").unwrap();
    let q = parse_uni("t^2 + i*t - 1", "t").unwrap();
    println!("p = {}", p.display("t"));
    println!("q = {}", q.display("t"));
    println!("res(p, q) = {}", p.resultant(&q).unwrap().to_grammar());
    println!("gcd(p, p') = {}", p.gcd(&p.derivative()).display("t"));

    // (t - 1) divides p, so the resultant with t - 1 vanishes
    let lin = UniPoly::from_ints(&[-1, 1]);
    println!("res(p, t - 1) = {}", p.resultant(&lin).unwrap().to_grammar());

    let d = divided_difference(&p);
    println!("(p(s) - p(t)) / (s - t) = {}", d.display("s", "t"));
}
