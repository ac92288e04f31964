//! Shared inputs for the benchmarks.

use g235::{Rational, Vars, VectorField};

/// `X1 = ∂q`, `X2 = ∂x + p∂y + q∂p + F∂z` for the Monge equation `z' = F(y'')`.
pub fn monge(f: &str) -> (VectorField, VectorField) {
    let v = Vars::new(&["x", "y", "p", "q", "z"]);
    let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).expect("X1 parses");
    let x2 = VectorField::parse(&["1", "p", "q", "0", f], &v).expect("X2 parses");
    (x1, x2)
}

/// A generic working point.
pub fn point() -> Vec<Rational> {
    [(1, 2), (1, 3), (0, 1), (1, 1), (0, 1)].iter().map(|&(a, b)| g235::rat(a, b)).collect()
}
