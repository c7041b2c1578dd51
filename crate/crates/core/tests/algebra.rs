use curvecert::algebra::{
    divided_difference, isolate_roots, parse_multi, parse_uni, BiPoly, GaussianRational as Gq, UniPoly,
};
use num_rational::BigRational;

fn p(text: &str) -> UniPoly {
    parse_uni(text, "x").unwrap()
}

#[test]
fn resultants_of_small_pairs() {
    assert!(p("x").resultant(&p("x")).unwrap().is_zero());
    assert_eq!(p("x^2 - 1").resultant(&p("x - 2")).unwrap(), Gq::from_int(3));
    assert!(p("x^2 + 1").resultant(&p("x^2 + 1")).unwrap().is_zero());
    assert!(UniPoly::zero().resultant(&UniPoly::zero()).is_err());
}

#[test]
fn resultant_matches_the_product_formula() {
    // res(f, g) = lc(f)^deg g · ∏ g(roots of f) for f = 2(x - 1)(x + 3)
    let f = p("2*x^2 + 4*x - 6");
    let g = p("x^3 + i*x - 5");
    let expected = &(&Gq::from_int(4) * &g.eval(&Gq::from_int(1))) * &g.eval(&Gq::from_int(-3));
    let expected = &expected * &Gq::from_int(2);
    assert_eq!(f.resultant(&g).unwrap(), expected);
}

#[test]
fn gcds() {
    assert_eq!(p("x^2 - 1").gcd(&p("x - 1")), p("x - 1"));
    assert!(p("x^2 + 1").gcd(&p("x^2 - 1")).is_one());
    assert!(UniPoly::zero().gcd(&UniPoly::zero()).is_zero());
    assert_eq!(p("x^2 + 1").gcd(&p("x^2 + 2*i*x - 1")), p("x + i"));
}

#[test]
fn divided_differences() {
    let dd = |s: &str| divided_difference(&parse_uni(s, "t").unwrap());
    let st = |s: &str| {
        let m = parse_multi(s, &["s".to_string(), "t".to_string()]).unwrap();
        BiPoly::from_terms(m.terms().map(|(e, c)| ((e[0] as usize, e[1] as usize), c.clone())))
    };
    assert_eq!(dd("t^3"), st("s^2 + s*t + t^2"));
    assert_eq!(dd("t"), st("1"));
    assert_eq!(dd("t^2 - 1"), st("s + t"));
}

#[test]
fn squarefree_parts() {
    assert_eq!(p("(x - 1)^2").squarefree_part().unwrap(), p("x - 1"));
    assert_eq!(p("x^2 + 1").squarefree_part().unwrap(), p("x^2 + 1"));
    assert_eq!(p("x^3 - x^2").squarefree_part().unwrap(), p("x^2 - x"));
    assert!(UniPoly::zero().squarefree_part().is_err());
}

#[test]
fn isolating_boxes() {
    let prec = BigRational::new(1.into(), 1_000_000_000_000i64.into());
    let iso = isolate_roots(&p("x^2 + 1"), &prec).unwrap();
    let mut centers: Vec<String> = iso.boxes.iter().map(|b| b.center().to_grammar()).collect();
    centers.sort();
    assert_eq!(centers, ["-i", "i"]);

    let iso = isolate_roots(&p("x^2 - 2"), &prec).unwrap();
    assert_eq!(iso.boxes.len(), 2);
    for b in &iso.boxes {
        let z = b.center_c64();
        assert!((z.re.abs() - 2f64.sqrt()).abs() < 1e-12 && z.im.abs() < 1e-12);
        assert!(b.certified && b.width() <= prec);
    }

    let iso = isolate_roots(&p("x - 3"), &prec).unwrap();
    assert_eq!(iso.boxes.len(), 1);
    assert!(iso.boxes[0].is_exact());
    assert_eq!(iso.boxes[0].center(), &Gq::from_int(3));
}

#[test]
fn grammar_round_trip() {
    for s in ["(1/2+i)*x^3 - x + 7", "-i*x^2 + 3/4", "x^5"] {
        let q = p(s);
        assert_eq!(p(&q.display("x")), q);
    }
    assert!(parse_uni("x^", "x").is_err());
}
