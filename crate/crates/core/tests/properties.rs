mod common;

use proptest::prelude::*;

use common::*;
use curvecert::algebra::{divided_difference, isolate_roots, BiPoly, GaussianRational as Gq, Matrix, UniPoly};
use curvecert::analysis::{certify_good, certify_good_projection, double_point_system, Certificate, Status};
use curvecert::automorphism::{prescribed_jet, random_repair_shear, sl_decompose};
use curvecert::curve::{fixtures, Direction, LinearProjection, ParametricCurve};
use num_rational::BigRational;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn resultant_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = poly_in(&mut r, 1, 4, 3);
        let g = poly_in(&mut r, 1, 4, 3);
        let h = poly_in(&mut r, 1, 4, 3);
        let lhs = (&f * &g).resultant(&h).unwrap();
        let rhs = &f.resultant(&h).unwrap() * &g.resultant(&h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both_and_absorbs_common_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = poly_in(&mut r, 0, 3, 3);
        let f = &c * &poly_in(&mut r, 0, 4, 3);
        let g = &c * &poly_in(&mut r, 0, 4, 3);
        let d = f.gcd(&g);
        prop_assert!(d.divides(&f) && d.divides(&g));
        prop_assert!(c.monic().divides(&d) || c.is_constant());
        prop_assert!(d.lc().is_one());
    }

    #[test]
    fn divided_difference_times_secant_is_the_difference(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = poly_in(&mut r, 0, 6, 5);
        let s_minus_t = BiPoly::difference(&UniPoly::var(), &UniPoly::var());
        prop_assert_eq!(&divided_difference(&p) * &s_minus_t, BiPoly::difference(&p, &p));
    }

    #[test]
    fn squarefree_part_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = poly_in(&mut r, 1, 3, 3);
        let b = poly_in(&mut r, 0, 2, 3);
        let p = &(&a * &a) * &b;
        let q = p.squarefree_part().unwrap();
        prop_assert_eq!(q.squarefree_part().unwrap(), q.clone());
        prop_assert!(q.divides(&p));
        prop_assert!(q.gcd(&q.derivative()).is_constant());
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn root_boxes_match_squarefree_degree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = poly_in(&mut r, 1, 4, 4);
        let b = poly_in(&mut r, 0, 4, 4);
        let p = &(&a * &a) * &b;
        let prec = BigRational::new(1.into(), 1_000_000_000_000i64.into());
        let iso = isolate_roots(&p, &prec).unwrap();
        prop_assert_eq!(iso.boxes.len(), p.squarefree_part().unwrap().deg0());
        prop_assert!(iso.all_certified());
        for b in &iso.boxes {
            prop_assert!(b.width() <= prec);
        }
    }

    #[test]
    fn scaling_the_direction_changes_nothing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = { let d = r.gen_range(2..=3); random_graph_curve(&mut r, d) };
        let raw: Vec<Gq> = (0..3).map(|_| small_gaussian(&mut r, 3)).collect();
        prop_assume!(raw.iter().any(|c| !c.is_zero()));
        let lambda = loop {
            let l = small_rational(&mut r);
            if !l.is_zero() { break l; }
        };
        let v = Direction::new(raw.clone()).unwrap();
        let w = Direction::new(raw.iter().map(|c| c * &lambda).collect()).unwrap();
        let a = certify_good(&curve, &v).unwrap();
        let b = certify_good(&curve, &w).unwrap();
        prop_assert_eq!(a.verdict_signature(), b.verdict_signature());
    }

    #[test]
    fn target_coordinates_do_not_change_verdicts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = if r.gen_bool(0.3) { fixtures::three_lines() } else { random_graph_curve(&mut r, 3) };
        let raw: Vec<Gq> = vec![small_gaussian(&mut r, 2), small_gaussian(&mut r, 2), Gq::from_int(r.gen_range(0..=1))];
        prop_assume!(raw.iter().any(|c| !c.is_zero()));
        let v = Direction::new(raw).unwrap();
        let base = LinearProjection::along(&v);
        let m = random_sl(&mut r, 2);
        let rows = m.mul(base.matrix()).to_rows();
        let moved = LinearProjection::from_rows(rows).unwrap();
        let a = certify_good_projection(&curve, &base).unwrap();
        let b = certify_good_projection(&curve, &moved).unwrap();
        prop_assert_eq!(a.verdict_signature(), b.verdict_signature());
    }

    #[test]
    fn double_points_are_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = if r.gen_bool(0.3) { fixtures::three_lines() } else { random_graph_curve(&mut r, 3) };
        let v = Direction::new((0..3).map(|_| small_gaussian(&mut r, 2)).collect());
        prop_assume!(v.is_ok());
        let h = curve.project(&LinearProjection::along(&v.unwrap())).unwrap();
        prop_assume!((0..h.num_components()).all(|k| !h.is_constant_component(k)));
        let d = double_point_system(&h, None);
        prop_assume!(d.is_finite());
        for rec in &d.pairs {
            let mirror = d.pair(rec.b, rec.a).unwrap();
            prop_assert_eq!(rec.point_count(), mirror.point_count());
            for br in rec.branches() {
                // every (s, t) satisfies the mirrored equations with s and t exchanged
                for gen in &mirror.generators {
                    prop_assert!(br.normal_form(&gen.swap()).is_zero());
                }
            }
        }
    }

    #[test]
    fn certificates_are_well_formed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = match r.gen_range(0..3) {
            0 => fixtures::three_lines(),
            1 => fixtures::twisted_cubic(),
            _ => random_graph_curve(&mut r, 3),
        };
        let raw: Vec<Gq> = (0..3).map(|_| Gq::from_int(r.gen_range(-1..=1))).collect();
        prop_assume!(raw.iter().any(|c| !c.is_zero()));
        let cert: Certificate = certify_good(&curve, &Direction::new(raw).unwrap()).unwrap();
        prop_assert!(cert.is_well_formed());
        let child_fail = cert.parts.iter().any(|p| p.status == Status::Fail);
        prop_assert_eq!(cert.status == Status::Fail, child_fail);
        let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert_eq!(back, cert);
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn sl_decomposition_reconstructs(seed in any::<u64>(), m in 2usize..=3) {
        let mut r = rng(seed);
        let a = random_sl(&mut r, m);
        let ts = sl_decompose(&a).unwrap();
        let prod = ts.iter().fold(Matrix::identity(m), |acc, t| acc.mul(&t.to_matrix(m)));
        prop_assert!(prod == a);
        prop_assert!(ts.len() <= m * m + 2 * m);
    }

    #[test]
    fn jets_are_prescribed(seed in any::<u64>(), m in 2usize..=3) {
        let mut r = rng(seed);
        let p1 = random_point(&mut r, m);
        let p2 = random_point(&mut r, m);
        prop_assume!(p1 != p2);
        let (a1, a2) = (random_sl(&mut r, m), random_sl(&mut r, m));
        let phi = prescribed_jet(&p1, &p2, &a1, &a2).unwrap();
        for (p, a) in [(&p1, &a1), (&p2, &a2)] {
            let (value, jac) = jet_oracle(&phi, p);
            prop_assert_eq!(&value, p);
            prop_assert!(jac == *a);
        }
        prop_assert!(phi.jacobian_determinant().is_one());
    }

    #[test]
    fn repair_shears_fix_the_last_coordinates(seed in any::<u64>(), m in 3usize..=4, bound in 0u32..=3) {
        let l = 1 + (seed as usize) % (m - 1);
        let phi = random_repair_shear(m, l, seed, bound).unwrap();
        prop_assert!(phi.fixes_last(l));
        let polys = phi.to_polynomials();
        for (k, p) in polys.iter().enumerate().skip(m - l) {
            prop_assert_eq!(p, &curvecert::algebra::MultiPoly::var(m, k));
        }
    }

    #[test]
    fn jacobian_determinant_is_constant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_repair_shear(3, 1, seed, 2).unwrap()
            .compose(&prescribed_jet(&random_point(&mut r, 3), &[g(5), g(5), g(5)], &random_sl(&mut r, 3), &Matrix::identity(3)).unwrap())
            .unwrap();
        let expected = phi.jacobian_determinant();
        for _ in 0..3 {
            let x = random_point(&mut r, 3);
            prop_assert_eq!(jet_oracle(&phi, &x).1.determinant(), expected.clone());
        }
    }
}

#[test]
fn composing_with_the_inverse_is_the_identity() {
    let mut r = rng(9);
    for _ in 0..10 {
        let phi =
            prescribed_jet(&random_point(&mut r, 3), &[g(2), g(0), g(1)], &random_sl(&mut r, 3), &random_sl(&mut r, 3))
                .unwrap();
        let id = phi.compose(&phi.invert()).unwrap();
        let x = random_point(&mut r, 3);
        assert_eq!(id.evaluate(&x).unwrap(), x);
    }
}

#[test]
fn embedding_curves_of_random_graphs_pass() {
    let mut r = rng(4);
    for _ in 0..5 {
        let c: ParametricCurve = random_graph_curve(&mut r, 3);
        assert!(curvecert::pipeline::verify_embedding(&c).passed());
    }
}
