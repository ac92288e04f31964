//! The Jacobi-curve oracle against the closed-form pipeline at random data.

use g235::diffgeo::growth_vector;
use g235::oracle::oracle_report;
use g235::{rat, Invariants, OracleOptions, PipelineOptions, Rational, Vars, VectorField};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn oracle_equals_closed_form(
        c in -2i64..=2,
        point in prop::array::uniform3(small_rat()),
        qv in (1i64..=3, 1i64..=2),
        u in (small_rat(), small_rat()),
    ) {
        prop_assume!(u.0 != rat(0, 1) || u.1 != rat(0, 1));
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        let f = format!("q^3 + ({c})*q^2*y");
        let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap();
        let x2 = VectorField::parse(&["1", "p", "q", "0", f.as_str()], &v).unwrap();
        let q = vec![point[0].clone(), point[1].clone(), point[2].clone(), rat(qv.0, qv.1), rat(0, 1)];
        prop_assume!(growth_vector(&x1, &x2, &q).unwrap() == (2, 3, 5));
        let inv = Invariants::compute(&x1, &x2, PipelineOptions::default()).unwrap();
        let formula = (inv.rho.eval45(&q, &u.0, &u.1).unwrap(), inv.density.eval45(&q, &u.0, &u.1).unwrap());
        let rep = oracle_report(&inv.abnormal.frame, &q, &u.0, &u.1, OracleOptions::default()).unwrap();
        prop_assert_eq!(rep.consensus().unwrap(), formula);
    }
}
