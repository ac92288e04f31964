//! Multivariate Taylor jets at a point.
//!
//! A [`MultiJet`] is a polynomial in the displacement variables
//! `δ_i = x_i - p_i`, truncated to a fixed total degree.

use num::Zero;

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use super::{AlgebraError, Scalar, ScalarField};

/// Truncated multivariate power series in displacement variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiJet {
    poly: Polynomial,
    order: u32,
}

impl MultiJet {
    /// Wrap a polynomial, dropping terms above `order`.
    pub fn new(poly: Polynomial, order: u32) -> Self {
        MultiJet { poly: truncate(&poly, order), order }
    }

    /// Truncation order (maximum retained total degree).
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The truncated polynomial in displacement variables.
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Value at the base point.
    pub fn value(&self) -> Rational {
        self.poly.as_constant_part()
    }
}

fn truncate(p: &Polynomial, order: u32) -> Polynomial {
    let n = p.nvars();
    let mut out = Polynomial::zero(n);
    for (m, c) in p.terms() {
        if m.degree() <= order {
            out = &out + &Polynomial::term(m.clone(), c.clone());
        }
    }
    out
}

impl Scalar for MultiJet {
    fn zero_like(&self) -> Self {
        MultiJet { poly: Polynomial::zero(self.poly.nvars()), order: self.order }
    }
    fn one_like(&self) -> Self {
        MultiJet { poly: Polynomial::one(self.poly.nvars()), order: self.order }
    }
    fn from_rational(&self, r: &Rational) -> Self {
        MultiJet { poly: Polynomial::constant(self.poly.nvars(), r.clone()), order: self.order }
    }
    fn add(&self, o: &Self) -> Self {
        MultiJet::new(&self.poly + &o.poly, self.order.min(o.order))
    }
    fn sub(&self, o: &Self) -> Self {
        MultiJet::new(&self.poly - &o.poly, self.order.min(o.order))
    }
    fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        // truncate while multiplying to avoid building high-degree terms
        let n = self.poly.nvars();
        let mut out = Polynomial::zero(n);
        for (ma, ca) in self.poly.terms() {
            let da = ma.degree();
            if da > order {
                continue;
            }
            for (mb, cb) in o.poly.terms() {
                if da + mb.degree() <= order {
                    out = &out + &Polynomial::term(ma.mul(mb), ca * cb);
                }
            }
        }
        MultiJet { poly: out, order }
    }
    fn neg(&self) -> Self {
        MultiJet { poly: -&self.poly, order: self.order }
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiJet { poly: self.poly.scale(r), order: self.order }
    }
    fn vanishes(&self) -> bool {
        self.poly.is_zero()
    }
}

impl ScalarField for MultiJet {
    /// Inverse via the geometric series `1/(a0 + r) = Σ (-r)^k / a0^{k+1}`.
    fn try_inv(&self) -> Option<Self> {
        let a0 = self.value();
        if a0.is_zero() {
            return None;
        }
        let inv0 = a0.recip();
        let rest = MultiJet { poly: &self.poly - &Polynomial::constant(self.poly.nvars(), a0), order: self.order };
        let q = rest.scale(&(-&inv0));
        let mut acc = self.one_like();
        let mut pw = self.one_like();
        for _ in 0..self.order {
            pw = pw.mul(&q);
            if pw.vanishes() {
                break;
            }
            acc = acc.add(&pw);
        }
        Some(acc.scale(&inv0))
    }
}

/// Taylor expansion of `f` at `point`, truncated to total degree `order`.
///
/// The result is a polynomial in the displacements `δ_i = x_i - point_i`
/// (same variable count as `f`).
pub fn jet_at_point(f: &RationalFunction, point: &[Rational], order: u32) -> Result<MultiJet, AlgebraError> {
    let n = f.nvars();
    assert_eq!(point.len(), n, "point arity mismatch");
    // Check for a pole first so the error is reported as such.
    f.eval(point)?;
    let values: Vec<MultiJet> = (0..n)
        .map(|i| {
            let p = &Polynomial::var(n, i) + &Polynomial::constant(n, point[i].clone());
            MultiJet::new(p, order)
        })
        .collect();
    if f.is_zero() {
        return Ok(MultiJet { poly: Polynomial::zero(n), order });
    }
    f.eval_in(&values)
}

impl MultiJet {
    /// The constant one with the given arity and order.
    pub fn one(nvars: usize, order: u32) -> Self {
        MultiJet { poly: Polynomial::one(nvars), order }
    }

    /// Equality of the retained coefficients only.
    pub fn same_coeffs(&self, o: &MultiJet) -> bool {
        let order = self.order.min(o.order);
        truncate(&self.poly, order) == truncate(&o.poly, order)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::{parse_expression, Vars};
    use super::super::rational::int;
    use super::*;

    #[test]
    fn geometric_series() {
        let vars = Vars::base5();
        let f = parse_expression("1/(1-x1)", &vars).unwrap();
        let j = jet_at_point(&f, &vec![int(0); 5], 2).unwrap();
        let expected = parse_expression("1 + x1 + x1^2", &vars).unwrap();
        assert_eq!(&RationalFunction::from_poly(j.poly().clone()), &expected);
    }

    #[test]
    fn truncation_drops_high_degree() {
        let vars = Vars::base5();
        let f = parse_expression("x1*x3", &vars).unwrap();
        let j = jet_at_point(&f, &vec![int(0); 5], 1).unwrap();
        assert!(j.poly().is_zero());
        let j0 = jet_at_point(&f, &[int(2), int(0), int(3), int(0), int(0)], 0).unwrap();
        assert_eq!(j0.value(), int(6));
    }

    #[test]
    fn pole_is_reported() {
        let vars = Vars::base5();
        let f = parse_expression("1/(x1-1)", &vars).unwrap();
        assert_eq!(jet_at_point(&f, &[int(1), int(0), int(0), int(0), int(0)], 2), Err(AlgebraError::Pole));
    }
}
