//! Proper, immersive and 2-transversal checks for the three-lines fixture.
use curvecert::analysis::certify_good;
use curvecert::curve::{fixtures, Direction};

fn main() {
    let lines = fixtures::three_lines();
    for v in [[0, 1, 0], [1, 0, 0], [1, 2, 0], [1, 1, 1]] {
        let v = Direction::from_ints(&v).unwrap();
        let cert = certify_good(&lines, &v).unwrap();
        print!("{v}: {:?}", cert.status);
        if let Some(w) = &cert.witness {
            print!(" ({}: {})", w.kind, w.exact.join("; "));
        }
        println!();
    }
}
