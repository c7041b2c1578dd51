//! An automorphism fixing two points with prescribed derivatives there.
use curvecert::algebra::{GaussianRational as Gq, Matrix};
use curvecert::automorphism::prescribed_jet;

fn main() {
    let p1 = vec![Gq::from_int(0), Gq::from_int(0)];
    let p2 = vec![Gq::from_int(1), Gq::from_int(2)];
    let a1 = Matrix::from_ints(&[&[1, 3], &[0, 1]]);
    let a2 = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
    let phi = prescribed_jet(&p1, &p2, &a1, &a2).unwrap();

    // the expanded map has degree exponential in the number of shears,
    // so only the factorization is printed
    println!("{}", serde_json::to_string_pretty(&phi.to_document()).unwrap());
    println!("factors: {}", phi.factors().len());
    println!("Jacobian determinant: {}", phi.jacobian_determinant().to_grammar());
    assert_eq!(phi.evaluate(&p1).unwrap(), p1);
    assert_eq!(phi.evaluate(&p2).unwrap(), p2);
    assert!(phi.jacobian_at(&p1).unwrap() == a1 && phi.jacobian_at(&p2).unwrap() == a2);
    println!("both jets verified exactly");
}
