mod common;

use std::f64::consts::PI;

use nfold::axioms::{solution_trace, solve_axiom, AxiomInstance};
use nfold::lill::{build_lill_path, lill_trace, miss_function, solve_real_roots};
use nfold::numtheory::{check_polygon, check_section, section_required_n};
use nfold::polygon::build_polygon;
use nfold::section::{chebyshev, m_sect, p_sect};
use nfold::trace::{emit_json, load_json, verify};
use nfold::{Line, Point, Polynomial, Tolerance};
use proptest::prelude::*;

fn coeffs(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 2..=max_degree + 1)
        .prop_filter("leading coefficient", |c| c[0].abs() > 1e-2)
}

fn point() -> impl Strategy<Value = Point> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(x, y)| Point::new(x, y))
}

fn line() -> impl Strategy<Value = Line> {
    (0.0f64..PI, -3.0f64..3.0).prop_map(|(phi, c)| Line::new(phi.cos(), phi.sin(), c).unwrap())
}

fn instance() -> impl Strategy<Value = AxiomInstance> {
    (
        1u8..=8,
        prop::collection::vec(point(), 2),
        prop::collection::vec(line(), 2),
    )
        .prop_map(|(op, pts, lines)| {
            let (np, nl) = match op {
                1 | 4 => (2, 0),
                2 => (0, 2),
                3 => (0, 1),
                5 => (1, 1),
                6 => (2, 1),
                7 => (2, 2),
                _ => (1, 2),
            };
            AxiomInstance::new(op, pts[..np].to_vec(), lines[..nl].to_vec()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn miss_is_negated_polynomial(c in coeffs(8), theta in -1.5f64..1.5) {
        let p = Polynomial::new(c.clone()).unwrap();
        let path = build_lill_path(&p);
        let t = -theta.tan();
        let scale = c.iter().fold(0.0, |acc, a| acc * t.abs() + a.abs());
        let miss = miss_function(&path, theta).unwrap();
        prop_assert!((miss + p.eval(t)).abs() <= 1e-10 * scale.max(1.0));
    }

    #[test]
    fn lill_path_closes_on_coefficients(c in coeffs(8)) {
        let p = Polynomial::new(c.clone()).unwrap();
        let path = build_lill_path(&p);
        prop_assert_eq!(path.vertices.len(), c.len() + 1);
        for (k, w) in path.vertices.windows(2).enumerate() {
            let step = ((w[1].x - w[0].x).powi(2) + (w[1].y - w[0].y).powi(2)).sqrt();
            prop_assert!((step - c[k].abs()).abs() <= 1e-12 * c[k].abs().max(1.0));
        }
    }

    #[test]
    fn solved_roots_are_roots(c in coeffs(7)) {
        let p = Polynomial::new(c.clone()).unwrap();
        let tol = Tolerance::default();
        for s in solve_real_roots(&p, &tol).unwrap() {
            prop_assert!((s.root + s.theta.tan()).abs() <= 1e-12 * s.root.abs().max(1.0));
            let lead = c.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
            let scale = lead * s.root.abs().max(1.0).powi(p.degree() as i32);
            prop_assert!(p.eval(s.root).abs() <= 1e-8 * scale.max(1.0));
            prop_assert!(s.residual <= 1e-11);
            let trace = lill_trace(&p, &s).unwrap();
            prop_assert!(verify(&trace, &tol).unwrap().ok);
        }
    }

    #[test]
    fn oracle_roots_are_found(c in coeffs(6)) {
        let p = Polynomial::new(c.clone()).unwrap();
        let want = common::real_roots(&c);
        prop_assume!(want.iter().all(|r| r.abs() < 500.0));
        let got = solve_real_roots(&p, &Tolerance::default()).unwrap();
        prop_assert_eq!(got.len(), want.len());
        for (s, w) in got.iter().zip(&want) {
            prop_assert!((s.root - w).abs() <= 1e-8);
        }
    }

    #[test]
    fn section_multiplies_back(theta in 1e-3f64..PI, m in 2u64..=13) {
        let (phi, trace, plan) = m_sect(theta, m, &Tolerance::default()).unwrap();
        prop_assert!((m as f64 * phi - theta).abs() <= m as f64 * 1e-8);
        prop_assert_eq!(plan.required_n, section_required_n(m).unwrap());
        prop_assert!(trace.fold_width() as u64 <= plan.required_n);
        prop_assert!(verify(&trace, &Tolerance::default()).unwrap().ok);
    }

    #[test]
    fn prime_section_takes_largest_root(theta in 1e-3f64..PI, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let (phi, _) = p_sect(theta, p, &Tolerance::default()).unwrap();
        let t = chebyshev(p as usize);
        prop_assert!((t.eval(phi.cos()) - theta.cos()).abs() <= 1e-9);
        prop_assert!((phi - theta / p as f64).abs() <= 1e-9);
    }

    #[test]
    fn chebyshev_matches_cosine(p in 0usize..14, a in 0.0f64..(2.0 * PI)) {
        prop_assert!((chebyshev(p).eval(a.cos()) - (p as f64 * a).cos()).abs() <= 1e-10);
    }

    #[test]
    fn axiom_folds_satisfy_incidences(inst in instance()) {
        let tol = Tolerance::default();
        let sol = solve_axiom(&inst, &tol).unwrap();
        for f in &sol.folds {
            prop_assert!(common::incidence_residual(inst.op, &inst.points, &inst.lines, f) <= 1e-9);
        }
        prop_assert!(verify(&solution_trace(&inst, &sol), &tol).unwrap().ok);
    }

    #[test]
    fn json_round_trip(inst in instance()) {
        let sol = solve_axiom(&inst, &Tolerance::default()).unwrap();
        let trace = solution_trace(&inst, &sol);
        let bytes = emit_json(&trace).unwrap();
        let back = load_json(&bytes).unwrap();
        prop_assert_eq!(&back, &trace);
        prop_assert_eq!(emit_json(&back).unwrap(), bytes);
    }

    #[test]
    fn section_predicate_is_monotone(m in 2u64..500, n in 1u64..12) {
        if check_section(m, n).unwrap() {
            prop_assert!(check_section(m, n + 1).unwrap());
        }
        if m >= 3 && check_polygon(m, n).unwrap() {
            prop_assert!(check_polygon(m, n + 1).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polygon_is_regular(m in 3u64..48) {
        let r = build_polygon(m, &Tolerance::default()).unwrap();
        prop_assert_eq!(r.vertices.len(), m as usize);
        let chord = 2.0 * (PI / m as f64).sin();
        for k in 0..r.vertices.len() {
            let v = r.vertices[k];
            let w = r.vertices[(k + 1) % r.vertices.len()];
            prop_assert!((v.x.hypot(v.y) - 1.0).abs() <= 1e-9);
            prop_assert!(((w.x - v.x).hypot(w.y - v.y) - chord).abs() <= 1e-9);
            prop_assert!(v.x * w.y - v.y * w.x > 0.0);
        }
        prop_assert!(r.fold_width as u64 <= r.report.required_n.max(1));
        prop_assert!(verify(&r.trace, &Tolerance::default()).unwrap().ok);
    }
}
