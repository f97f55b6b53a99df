//! Property tests over generated expressions, segments and samples.

use phihh::bounds::{formula_quasi, formula_quasi_holder, formula_tt3, rhs_from_slopes, HolderParams};
use phihh::convexity::{check_membership, ClassKind, PathSamples, Verdict};
use phihh::expr::{parse, BinOp, Expr, Func};
use phihh::quadrature::integrate_segment;
use phihh::{PhiSegment, TheoremId};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Var),
        (-50i32..50).prop_map(|k| Expr::Const(k as f64 / 4.0)),
        Just(Expr::Const(std::f64::consts::PI)),
    ]
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)], inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| Expr::Binary(op, Box::new(l), Box::new(r))),
            (inner.clone(), prop_oneof![Just(2.0), Just(3.0), Just(0.5), Just(-1.0), Just(-2.5)])
                .prop_map(|(b, k)| Expr::Pow(Box::new(b), k)),
            (0usize..6, inner).prop_map(|(i, e)| Expr::Call(Func::ALL[i], Box::new(e))),
        ]
    })
}

fn segment() -> impl Strategy<Value = PhiSegment> {
    (-3.0f64..3.0, 0.05f64..4.0, 0.0f64..std::f64::consts::PI).prop_map(|(a, l, phi)| PhiSegment::new(a, a + l, phi).unwrap())
}

proptest! {
    #[test]
    fn parse_render_round_trip(e in expr_tree()) {
        let text = e.render();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e, "rendered as {}", text);
    }

    #[test]
    fn path_is_affine(s in segment(), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0, lam in 0.0f64..1.0) {
        let lhs = s.point_at(lam * t1 + (1.0 - lam) * t2).unwrap();
        let rhs = s.point_at(t1).unwrap() * lam + s.point_at(t2).unwrap() * (1.0 - lam);
        prop_assert!((lhs - rhs).norm() <= 1e-14 * (1.0 + lhs.norm()));
    }

    #[test]
    fn zero_angle_path_is_real(a in -5.0f64..5.0, l in 0.01f64..5.0, t in 0.0f64..=1.0) {
        let s = PhiSegment::new(a, a + l, 0.0).unwrap();
        prop_assert_eq!(s.point_at(t).unwrap().im, 0.0);
    }

    #[test]
    fn am_gm_ordering(g0 in 1e-3f64..1e3, g1 in 1e-3f64..1e3, t in 0.0f64..=1.0) {
        let log = ClassKind::LogPhiConvex.bound(g0, g1, t);
        let phi = ClassKind::PhiConvex.bound(g0, g1, t);
        let quasi = ClassKind::QuasiPhiConvex.bound(g0, g1, t);
        prop_assert!(log <= phi * (1.0 + 1e-14));
        prop_assert!(phi <= quasi * (1.0 + 1e-14));
    }

    #[test]
    fn falsified_stays_falsified_on_refinement(c in prop::array::uniform4(-3.0f64..3.0), k in 2usize..6) {
        let g = |t: f64| c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t;
        let n = (1 << k) + 1;
        let coarse = check_membership(&PathSamples::from_fn(n, g), ClassKind::PhiConvex, 1e-9).unwrap();
        let fine = check_membership(&PathSamples::from_fn(2 * n - 1, g), ClassKind::PhiConvex, 1e-9).unwrap();
        if coarse.verdict == Verdict::Falsified {
            prop_assert_eq!(fine.verdict, Verdict::Falsified);
            prop_assert!(fine.max_violation >= coarse.max_violation);
        }
    }

    #[test]
    fn convex_samples_certified(c in 0.0f64..5.0, d in -5.0f64..5.0, e in 0.0f64..2.0, k in 3usize..13) {
        let g = |t: f64| c * t * t + d * t + e * (2.0 * t).exp();
        let n = (1usize << k).min(4096) + 1;
        let r = check_membership(&PathSamples::from_fn(n, g), ClassKind::PhiConvex, 1e-9).unwrap();
        prop_assert_eq!(r.verdict, Verdict::CertifiedOnGrid);
    }

    #[test]
    fn rhs_ignores_the_angle(a in -2.0f64..2.0, l in 0.1f64..3.0, phi1 in 0.0f64..1.57, phi2 in 0.0f64..1.57, p in 1.01f64..10.0, q in 1.0f64..10.0) {
        let f = parse("x^3+exp(x)").unwrap();
        let s1 = PhiSegment::new(a, a + l, phi1).unwrap();
        let s2 = PhiSegment::new(a, a + l, phi2).unwrap();
        let d = f.differentiate();
        let slopes = |s: &PhiSegment| (d.eval(s.start()).unwrap().norm(), d.eval(s.generator()).unwrap().norm());
        let ((a1, b1), (a2, b2)) = (slopes(&s1), slopes(&s2));
        for t in TheoremId::ALL.into_iter().filter(|t| *t != TheoremId::Chain2) {
            let params = HolderParams::new(p, q);
            let r1 = rhs_from_slopes(t, s1.length_factor(), a1, b1, &params).unwrap();
            let r2 = rhs_from_slopes(t, s2.length_factor(), a2, b2, &params).unwrap();
            prop_assert_eq!(r1, r2);
        }
    }

    #[test]
    fn holder_trapezoid_below_quasi_holder(a in 0.0f64..10.0, b in 0.0f64..10.0, p in 1.01f64..50.0) {
        let t3 = formula_tt3(1.0, a, b, p);
        let qh = formula_quasi_holder(1.0, a, b, p);
        prop_assert!(t3 <= qh * (1.0 + 1e-12));
        prop_assert!(qh <= 2.0 * formula_quasi(1.0, a, b) * (1.0 + 1e-12));
    }

    #[test]
    fn integration_is_linear(s in segment(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let tol = 1e-11;
        let f = parse("exp(x)").unwrap();
        let g = parse("x^2").unwrap();
        let combo = parse(&format!("({alpha})*exp(x)+({beta})*x^2")).unwrap();
        let lhs = integrate_segment(&combo, &s, tol).unwrap().value;
        let rhs = integrate_segment(&f, &s, tol).unwrap().value * alpha + integrate_segment(&g, &s, tol).unwrap().value * beta;
        prop_assert!((lhs - rhs).norm() <= 10.0 * tol * (1.0 + lhs.norm() + rhs.norm()));
    }
}
