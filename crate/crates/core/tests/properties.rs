//! Property-based checks of algebraic identities across the public API.

use g235::algebra::parse_expression;
use g235::diffgeo::{exterior_derivative, lie_bracket, wedge, DIM};
use g235::io::{rational_from_json, rational_to_string};
use g235::{rat, Invariants, OneForm, PipelineOptions, QuarticForm, Rational, RationalFunction, Vars, VectorField};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// A polynomial of degree ≤ 2 in five variables with small coefficients.
fn poly() -> impl Strategy<Value = RationalFunction> {
    (small_rat(), prop::collection::vec((0usize..DIM, 0usize..=DIM, small_rat()), 0..3)).prop_map(|(c0, terms)| {
        let mut f = RationalFunction::constant(DIM, c0);
        for (a, b, c) in terms {
            let mut m = RationalFunction::var(DIM, a);
            if b < DIM {
                m = &m * &RationalFunction::var(DIM, b);
            }
            f = &f + &m.scale_ref(&c);
        }
        f
    })
}

fn field() -> impl Strategy<Value = VectorField> {
    prop::array::uniform5(poly()).prop_map(VectorField::new)
}

fn one_form() -> impl Strategy<Value = OneForm> {
    prop::array::uniform5(poly()).prop_map(OneForm::new)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bracket_is_antisymmetric(v in field(), w in field()) {
        prop_assert!(lie_bracket(&v, &w).add(&lie_bracket(&w, &v)).is_zero());
    }

    #[test]
    fn jacobi_identity(u in field(), v in field(), w in field()) {
        let s = lie_bracket(&u, &lie_bracket(&v, &w))
            .add(&lie_bracket(&v, &lie_bracket(&w, &u)))
            .add(&lie_bracket(&w, &lie_bracket(&u, &v)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn exterior_derivative_matches_bracket_formula(om in one_form(), v in field(), w in field()) {
        let lhs = exterior_derivative(&om).eval(&v, &w);
        let rhs = &(&v.apply(&om.eval(&w)) - &w.apply(&om.eval(&v))) - &om.eval(&lie_bracket(&v, &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(f in poly(), g in poly()) {
        let denom = &RationalFunction::one(DIM) + &(&RationalFunction::var(DIM, 0) * &RationalFunction::var(DIM, 0));
        let h = &f + &g.div_ref(&denom).unwrap();
        prop_assert!(exterior_derivative(&OneForm::differential(&h)).is_zero());
    }

    #[test]
    fn leibniz_rule_for_one_forms(f in poly(), om in one_form()) {
        // d(f ω) = df ∧ ω + f dω
        let lhs = exterior_derivative(&om.scale(&f));
        let rhs = wedge(&OneForm::differential(&f), &om).add(&exterior_derivative(&om).scale(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rationals_round_trip_through_text(n in -100_000i64..100_000, d in 1i64..10_000) {
        let r = rat(n, d);
        let s = rational_to_string(&r);
        prop_assert_eq!(rational_from_json(&serde_json::Value::String(s)), Some(r));
    }

    #[test]
    fn expressions_round_trip_through_display(f in poly(), g in poly()) {
        let v = Vars::base5();
        let denom = &RationalFunction::constant(DIM, rat(2, 1)) + &(&g * &g);
        let h = &f + &RationalFunction::one(DIM).div_ref(&denom).unwrap();
        let text = h.display(&v.0).to_string();
        prop_assert_eq!(parse_expression(&text, &v).unwrap(), h);
    }

    #[test]
    fn quartic_basis_change_agrees_with_evaluation(
        c in prop::array::uniform5(small_rat()),
        m in prop::array::uniform4(small_rat()),
        a in small_rat(),
        b in small_rat(),
    ) {
        let q = QuarticForm { coeffs: c, basis: ["X1".into(), "X2".into()] };
        let mm = [[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]];
        let p = q.change_basis(&mm, ["Y1".into(), "Y2".into()]);
        let x = &mm[0][0] * &a + &mm[0][1] * &b;
        let y = &mm[1][0] * &a + &mm[1][1] * &b;
        prop_assert_eq!(p.eval(&a, &b), q.eval(&x, &y));
    }

    #[test]
    fn quartic_basis_changes_compose(
        c in prop::array::uniform5(small_rat()),
        m in prop::array::uniform4(small_rat()),
        n in prop::array::uniform4(small_rat()),
    ) {
        let q = QuarticForm { coeffs: c, basis: ["X1".into(), "X2".into()] };
        let mm = [[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]];
        let nn = [[n[0].clone(), n[1].clone()], [n[2].clone(), n[3].clone()]];
        let prod: [[Rational; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| &mm[i][0] * &nn[0][j] + &mm[i][1] * &nn[1][j]));
        let names = || ["Z1".to_string(), "Z2".to_string()];
        prop_assert_eq!(q.change_basis(&mm, names()).change_basis(&nn, names()), q.change_basis(&prod, names()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn monge_invariants_are_fiber_homogeneous(k in 3u32..=5, c in -3i64..=3, e in 0u32..=1) {
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        let f = format!("q^{k} + ({c})*q^2*y^{e} + q^2");
        let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap();
        let x2 = VectorField::parse(&["1", "p", "q", "0", f.as_str()], &v).unwrap();
        let inv = Invariants::compute(&x1, &x2, PipelineOptions::default()).unwrap();
        prop_assert!(inv.rho.is_zero() || inv.rho.is_homogeneous_of(2));
        prop_assert!(inv.density.is_zero() || inv.density.is_homogeneous_of(4));
    }
}
