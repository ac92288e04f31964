//! The cotangent layer over an adapted frame: quasi-impulses `u_i`, their
//! Poisson brackets, the characteristic field `h` on the annihilator of the
//! square of the distribution, and the scalar ingredients `α_i, b, b₁, Π, Θ, Ω`.
//!
//! Fiber-dependent quantities are [`FiberPolynomial`]s: polynomials in
//! `u1..u5` with [`RationalFunction`] coefficients on the base.  Exported
//! invariants live on the locus `u1 = u2 = u3 = 0`, so in practice they are
//! binary forms in `(u4, u5)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Rational, RationalFunction};
use crate::diffgeo::{structural_functions, Frame, GeometryError, StructuralFunctions, VectorField, DIM};

/// Errors raised by the cotangent layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbnormalError {
    /// The characteristic field is not tangent to the locus `u1=u2=u3=0`.
    #[error("characteristic field is not tangent to the locus (h(u{index}) = {value} ≠ 0)")]
    NotTangent {
        /// The offending quasi-impulse index (1..3).
        index: usize,
        /// Printed value of `h(u_index)`.
        value: String,
    },
    /// An exact division by a fiber variable left a remainder.
    #[error("fiber polynomial is not divisible by u{0}")]
    NotDivisible(usize),
    /// A restricted operation received a polynomial involving `u1..u3`.
    #[error("fiber polynomial is not restricted to u1=u2=u3=0")]
    NotRestricted,
    /// Geometry failure (singular frame, pole, ...).
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exponent vector of a fiber monomial `u1^e1 … u5^e5`.
pub type FiberExponent = [u8; DIM];

/// A polynomial in `u1..u5` with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FiberPolynomial {
    terms: BTreeMap<FiberExponent, RationalFunction>,
}

fn unit_exponent(i: usize) -> FiberExponent {
    let mut e = [0u8; DIM];
    e[i - 1] = 1;
    e
}

impl FiberPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A fiber-constant polynomial.
    pub fn constant(c: RationalFunction) -> Self {
        Self::monomial([0; DIM], c)
    }

    /// A rational constant.
    pub fn rational(r: Rational) -> Self {
        Self::constant(RationalFunction::constant(DIM, r))
    }

    /// The quasi-impulse `u_i` (1-based).
    pub fn u(i: usize) -> Self {
        Self::monomial(unit_exponent(i), RationalFunction::one(DIM))
    }

    /// A single term `c · u^e`.
    pub fn monomial(e: FiberExponent, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        FiberPolynomial { terms }
    }

    /// Iterate over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (&FiberExponent, &RationalFunction)> {
        self.terms.iter()
    }

    /// Coefficient of `u^e` (zero if absent).
    pub fn coeff(&self, e: &FiberExponent) -> RationalFunction {
        self.terms.get(e).cloned().unwrap_or_else(|| RationalFunction::zero(DIM))
    }

    /// Coefficient of `u4^a u5^b`.
    pub fn coeff45(&self, a: u8, b: u8) -> RationalFunction {
        self.coeff(&[0, 0, 0, a, b])
    }

    /// `true` for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: FiberExponent, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        FiberPolynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: FiberExponent = std::array::from_fn(|k| ea[k] + eb[k]);
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    /// Non-negative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(RationalFunction::one(DIM));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Product with a base function.
    pub fn scale(&self, f: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, c * f);
        }
        out
    }

    /// Product with a rational constant.
    pub fn scale_rat(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, c.scale_ref(r));
        }
        out
    }

    /// Partial derivative with respect to `u_i` (1-based).
    pub fn d_u(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k > 0 {
                let mut e2 = *e;
                e2[i - 1] -= 1;
                out.insert_add(e2, c.scale_ref(&Rational::from_integer(k.into())));
            }
        }
        out
    }

    /// Apply a base vector field to every coefficient.
    pub fn apply_base(&self, v: &VectorField) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, v.apply(c));
        }
        out
    }

    /// Exact division by `u_i` (1-based).
    pub fn div_u(&self, i: usize) -> Result<Self, AbnormalError> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i - 1] == 0 {
                return Err(AbnormalError::NotDivisible(i));
            }
            let mut e2 = *e;
            e2[i - 1] -= 1;
            out.insert_add(e2, c.clone());
        }
        Ok(out)
    }

    /// `true` if no monomial involves `u1, u2, u3`.
    pub fn is_restricted(&self) -> bool {
        self.terms.keys().all(|e| e[0] == 0 && e[1] == 0 && e[2] == 0)
    }

    /// Restriction to the locus `u1 = u2 = u3 = 0`.
    pub fn restrict(&self) -> Self {
        FiberPolynomial { terms: self.terms.iter().filter(|(e, _)| e[0] == 0 && e[1] == 0 && e[2] == 0).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// The common total degree of all monomials, if homogeneous.
    ///
    /// The zero polynomial is homogeneous of every degree and yields `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| u32::from(x)).sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// `true` when the polynomial is zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    /// Specialize the base coordinates at `q`, keeping the fiber variables.
    pub fn at_point(&self, q: &[Rational]) -> Result<Self, AbnormalError> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let v = c.eval(q).map_err(|_| GeometryError::Pole)?;
            out.insert_add(*e, RationalFunction::constant(DIM, v));
        }
        Ok(out)
    }

    /// Evaluate at a base point `q` and fiber point `u = (u1..u5)`.
    pub fn eval(&self, q: &[Rational], u: &[Rational; DIM]) -> Result<Rational, AbnormalError> {
        let mut acc = Rational::from_integer(0.into());
        for (e, c) in &self.terms {
            let mut m = c.eval(q).map_err(|_| GeometryError::Pole)?;
            for k in 0..DIM {
                for _ in 0..e[k] {
                    m *= &u[k];
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Evaluate on the restricted locus at `(u4, u5)`.
    pub fn eval45(&self, q: &[Rational], u4: &Rational, u5: &Rational) -> Result<Rational, AbnormalError> {
        let z = Rational::from_integer(0.into());
        self.eval(q, &[z.clone(), z.clone(), z, u4.clone(), u5.clone()])
    }

    /// Indices of base coordinates appearing in any coefficient.
    pub fn support_base_vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.values().flat_map(RationalFunction::support_vars).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Printable form with the given base-coordinate names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> FiberDisplay<'a> {
        FiberDisplay { f: self, names }
    }
}

/// Helper returned by [`FiberPolynomial::display`].
pub struct FiberDisplay<'a> {
    f: &'a FiberPolynomial,
    names: &'a [String],
}

impl fmt::Display for FiberDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (e, c) in self.f.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            write!(out, "({})", c.display(self.names))?;
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(out, "*u{}", k + 1)?,
                    _ => write!(out, "*u{}^{}", k + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

/// Full Poisson bracket of quasi-impulses: `{u_i, u_j} = Σ_k c_{ji}^k u_k`.
pub fn poisson_bracket(i: usize, j: usize, c: &StructuralFunctions) -> FiberPolynomial {
    let mut out = FiberPolynomial::zero();
    for k in 1..=DIM {
        out = out.add(&FiberPolynomial::u(k).scale(c.get(j, i, k)));
    }
    out
}

/// Poisson bracket restricted to `u1 = u2 = u3 = 0`.
pub fn poisson_bracket_restricted(i: usize, j: usize, c: &StructuralFunctions) -> FiberPolynomial {
    poisson_bracket(i, j, c).restrict()
}

/// The binary quadratic `c_{m2}^4 u4² + (c_{m2}^5 − c_{m1}^4) u4u5 − c_{m1}^5 u5²`,
/// i.e. `h(u_m)` on the restricted locus.
fn h_component(m: usize, c: &StructuralFunctions) -> FiberPolynomial {
    let u44 = FiberPolynomial::monomial([0, 0, 0, 2, 0], c.get(m, 2, 4).clone());
    let u45 = FiberPolynomial::monomial([0, 0, 0, 1, 1], c.get(m, 2, 5) - c.get(m, 1, 4));
    let u55 = FiberPolynomial::monomial([0, 0, 0, 0, 2], -c.get(m, 1, 5));
    u44.add(&u45).add(&u55)
}

/// The characteristic field `h = u4 X2 − u5 X1 + h4 ∂u4 + h5 ∂u5` on the
/// restricted locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HField {
    /// `X1` of the frame (coefficient `−u5`).
    pub x1: VectorField,
    /// `X2` of the frame (coefficient `u4`).
    pub x2: VectorField,
    /// Coefficient of `∂u4`.
    pub h4: FiberPolynomial,
    /// Coefficient of `∂u5`.
    pub h5: FiberPolynomial,
}

impl HField {
    /// `h(u_m)` on the restricted locus, for `m = 1..5`.
    pub fn on_impulse(&self, m: usize, c: &StructuralFunctions) -> FiberPolynomial {
        h_component(m, c)
    }

    /// Apply `h` as a derivation to a restricted fiber polynomial.
    pub fn apply(&self, f: &FiberPolynomial) -> FiberPolynomial {
        h_apply(self, f)
    }
}

/// Build the characteristic field and run the tangency self-check.
pub fn h_field(frame: &Frame, c: &StructuralFunctions) -> Result<HField, AbnormalError> {
    for m in 1..=3 {
        let v = h_component(m, c);
        if !v.is_zero() {
            return Err(AbnormalError::NotTangent { index: m, value: v.display(&default_names()).to_string() });
        }
    }
    Ok(HField { x1: frame.x[0].clone(), x2: frame.x[1].clone(), h4: h_component(4, c), h5: h_component(5, c) })
}

fn default_names() -> Vec<String> {
    (1..=DIM).map(|i| format!("x{i}")).collect()
}

/// Apply `h` to a restricted fiber polynomial.
///
/// # Panics
/// Panics if `f` involves `u1, u2, u3` (callers restrict first).
pub fn h_apply(h: &HField, f: &FiberPolynomial) -> FiberPolynomial {
    assert!(f.is_restricted(), "h is applied to restricted fiber polynomials only");
    let base = f.apply_base(&h.x2).mul(&FiberPolynomial::u(4)).sub(&f.apply_base(&h.x1).mul(&FiberPolynomial::u(5)));
    base.add(&h.h4.mul(&f.d_u(4))).add(&h.h5.mul(&f.d_u(5)))
}

/// The Euler field `u4 ∂u4 + u5 ∂u5` of the restricted chart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EulerField;

impl EulerField {
    /// Apply as a derivation.
    pub fn apply(&self, f: &FiberPolynomial) -> FiberPolynomial {
        FiberPolynomial::u(4).mul(&f.d_u(4)).add(&FiberPolynomial::u(5).mul(&f.d_u(5)))
    }
}

/// `α_i = c_{52}^i u4² − (c_{42}^i + c_{51}^i) u4u5 + c_{41}^i u5²`.
pub fn alpha(i: usize, c: &StructuralFunctions) -> FiberPolynomial {
    FiberPolynomial::monomial([0, 0, 0, 2, 0], c.get(5, 2, i).clone())
        .add(&FiberPolynomial::monomial([0, 0, 0, 1, 1], -(c.get(4, 2, i) + c.get(5, 1, i))))
        .add(&FiberPolynomial::monomial([0, 0, 0, 0, 2], c.get(4, 1, i).clone()))
}

/// `b = ⅓((c_{42}^4 + c_{52}^5) u4 − (c_{41}^4 + c_{51}^5) u5)` and
/// `b₁ = c_{32}^3 u4 − c_{31}^3 u5`.
pub fn b_scalars(c: &StructuralFunctions) -> (FiberPolynomial, FiberPolynomial) {
    let third = Rational::new(1.into(), 3.into());
    let b = FiberPolynomial::monomial([0, 0, 0, 1, 0], c.get(4, 2, 4) + c.get(5, 2, 5))
        .sub(&FiberPolynomial::monomial([0, 0, 0, 0, 1], c.get(4, 1, 4) + c.get(5, 1, 5)))
        .scale_rat(&third);
    let b1 = FiberPolynomial::monomial([0, 0, 0, 1, 0], c.get(3, 2, 3).clone()).sub(&FiberPolynomial::monomial([0, 0, 0, 0, 1], c.get(3, 1, 3).clone()));
    (b, b1)
}

/// A rational solution `(γ4, γ5)` of `γ4 u5 − γ5 u4 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaBranch {
    /// `γ4 = 1/u5, γ5 = 0` (requires `u5 ≠ 0`).
    OverU5,
    /// `γ4 = 0, γ5 = −1/u4` (requires `u4 ≠ 0`).
    OverU4,
}

impl GammaBranch {
    /// The default branch for a working fiber point.
    pub fn for_point(u5: &Rational) -> Self {
        if num::Zero::is_zero(u5) {
            GammaBranch::OverU4
        } else {
            GammaBranch::OverU5
        }
    }
}

/// `b = −⅓(γ4(α4 − h(u5)) + γ5(α5 + h(u4)))` on the chosen branch.
pub fn b_gamma(c: &StructuralFunctions, branch: GammaBranch) -> Result<FiberPolynomial, AbnormalError> {
    let third = Rational::new((-1).into(), 3.into());
    let inner = match branch {
        GammaBranch::OverU5 => alpha(4, c).sub(&h_component(5, c)).div_u(5)?,
        GammaBranch::OverU4 => alpha(5, c).add(&h_component(4, c)).div_u(4)?.neg(),
    };
    Ok(inner.scale_rat(&third))
}

/// Which closed form of `Π` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PiForm {
    /// `(c_{32}^1 + c_{53}^4)u4² + (c_{32}^2 − c_{31}^1 − c_{43}^4 + c_{53}^5)u4u5 − (c_{31}^2 + c_{43}^5)u5²`.
    #[default]
    Expanded,
    /// `(c_{32}^2u4 − c_{31}^2u5)u5 − (c_{32}^1u4 − c_{31}^1u5)u4 − (u5{u3,u4} − u4{u3,u5})`.
    Bracket,
}

/// `Π` in the requested closed form.
pub fn pi(c: &StructuralFunctions, form: PiForm) -> FiberPolynomial {
    let m = |a: u8, b: u8, f: RationalFunction| FiberPolynomial::monomial([0, 0, 0, a, b], f);
    match form {
        PiForm::Expanded => m(2, 0, c.get(3, 2, 1) + c.get(5, 3, 4))
            .add(&m(1, 1, &(&(c.get(3, 2, 2) - c.get(3, 1, 1)) - c.get(4, 3, 4)) + c.get(5, 3, 5)))
            .sub(&m(0, 2, c.get(3, 1, 2) + c.get(4, 3, 5))),
        PiForm::Bracket => {
            let first = m(1, 0, c.get(3, 2, 2).clone()).sub(&m(0, 1, c.get(3, 1, 2).clone())).mul(&FiberPolynomial::u(5));
            let second = m(1, 0, c.get(3, 2, 1).clone()).sub(&m(0, 1, c.get(3, 1, 1).clone())).mul(&FiberPolynomial::u(4));
            first.sub(&second).sub(&pi_bracket_part(c))
        }
    }
}

/// `u5{u3,u4} − u4{u3,u5}` on the restricted locus.
pub fn pi_bracket_part(c: &StructuralFunctions) -> FiberPolynomial {
    FiberPolynomial::u(5).mul(&poisson_bracket_restricted(3, 4, c)).sub(&FiberPolynomial::u(4).mul(&poisson_bracket_restricted(3, 5, c)))
}

/// `Θ = X5(α4)u4² + (X5(α5) − X4(α4))u4u5 − X4(α5)u5²`.
pub fn theta(c: &StructuralFunctions, frame: &Frame) -> FiberPolynomial {
    let (x4, x5) = (&frame.x[3], &frame.x[4]);
    let (a4, a5) = (alpha(4, c), alpha(5, c));
    let u44 = FiberPolynomial::u(4).pow(2);
    let u45 = FiberPolynomial::u(4).mul(&FiberPolynomial::u(5));
    let u55 = FiberPolynomial::u(5).pow(2);
    a4.apply_base(x5).mul(&u44).add(&a5.apply_base(x5).sub(&a4.apply_base(x4)).mul(&u45)).sub(&a5.apply_base(x4).mul(&u55))
}

/// `Ω = Σ_{i=1}^{3} (u5{u_i,u4} − u4{u_i,u5}) α_i`.
pub fn omega(c: &StructuralFunctions) -> FiberPolynomial {
    let mut out = FiberPolynomial::zero();
    for i in 1..=3 {
        let w = FiberPolynomial::u(5).mul(&poisson_bracket_restricted(i, 4, c)).sub(&FiberPolynomial::u(4).mul(&poisson_bracket_restricted(i, 5, c)));
        out = out.add(&w.mul(&alpha(i, c)));
    }
    out
}

/// `(Π, Θ, Ω)` with the expanded form of `Π`.
pub fn pi_theta_omega(c: &StructuralFunctions, frame: &Frame) -> (FiberPolynomial, FiberPolynomial, FiberPolynomial) {
    (pi(c, PiForm::Expanded), theta(c, frame), omega(c))
}

/// A frame together with its structural functions and characteristic field.
#[derive(Clone, Debug)]
pub struct Abnormal {
    /// The frame.
    pub frame: Frame,
    /// Its structural functions.
    pub c: StructuralFunctions,
    /// The characteristic field.
    pub h: HField,
}

impl Abnormal {
    /// Compute structural functions and the characteristic field of `frame`.
    pub fn new(frame: Frame) -> Result<Self, AbnormalError> {
        let c = structural_functions(&frame)?;
        Self::with_table(frame, c)
    }

    /// Use an explicitly supplied structural-function table.
    pub fn with_table(frame: Frame, c: StructuralFunctions) -> Result<Self, AbnormalError> {
        let h = h_field(&frame, &c)?;
        Ok(Abnormal { frame, c, h })
    }

    /// `h(f)`.
    pub fn h(&self, f: &FiberPolynomial) -> FiberPolynomial {
        h_apply(&self.h, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_expression, Vars};
    use crate::diffgeo::{adapted_frame, AdaptedMode};

    fn monge(f: &str) -> Frame {
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap();
        let x2 = VectorField::parse(&["1", "p", "q", "0", f], &v).unwrap();
        adapted_frame(&x1, &x2, AdaptedMode::Adapted).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        parse_expression(s, &Vars::new(&["x", "y", "p", "q", "z"])).unwrap()
    }

    #[test]
    fn flat_model_ingredients_vanish() {
        let ab = Abnormal::new(monge("q^2")).unwrap();
        assert!(ab.h.h4.is_zero() && ab.h.h5.is_zero());
        for i in 1..=5 {
            assert!(alpha(i, &ab.c).is_zero());
        }
        let (b, b1) = b_scalars(&ab.c);
        assert!(b.is_zero() && b1.is_zero());
        let (p, t, o) = pi_theta_omega(&ab.c, &ab.frame);
        assert!(p.is_zero() && t.is_zero() && o.is_zero());
        assert_eq!(poisson_bracket(1, 2, &ab.c), FiberPolynomial::u(3));
        assert_eq!(poisson_bracket(1, 3, &ab.c), FiberPolynomial::u(4));
        assert_eq!(poisson_bracket(2, 3, &ab.c), FiberPolynomial::u(5));
        assert!(ab.h(&FiberPolynomial::u(4)).is_zero());
    }

    #[test]
    fn cubic_model_ingredients() {
        let ab = Abnormal::new(monge("q^3")).unwrap();
        assert_eq!(ab.h.h4, FiberPolynomial::monomial([0, 0, 0, 1, 1], rf("-1/q")));
        assert!(ab.h.h5.is_zero());
        assert_eq!(alpha(4, &ab.c), FiberPolynomial::monomial([0, 0, 0, 0, 2], rf("1/q")));
        let (b, b1) = b_scalars(&ab.c);
        assert_eq!(b, FiberPolynomial::monomial([0, 0, 0, 0, 1], rf("-1/(3*q)")));
        assert!(b1.is_zero());
        for br in [GammaBranch::OverU4, GammaBranch::OverU5] {
            assert_eq!(b_gamma(&ab.c, br).unwrap(), b);
        }
        assert_eq!(pi(&ab.c, PiForm::Expanded), pi(&ab.c, PiForm::Bracket));
    }

    #[test]
    fn strongly_adapted_sign_breaks_tangency() {
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap();
        let x2 = VectorField::parse(&["1", "p", "q", "0", "q^2"], &v).unwrap();
        let fr = adapted_frame(&x1, &x2, AdaptedMode::StronglyAdapted).unwrap();
        assert!(matches!(Abnormal::new(fr), Err(AbnormalError::NotTangent { index: 3, .. })));
    }

    #[test]
    fn euler_and_division() {
        let f = FiberPolynomial::u(4).pow(2).mul(&FiberPolynomial::u(5));
        assert_eq!(EulerField.apply(&f), f.scale_rat(&int(3)));
        assert_eq!(f.div_u(5).unwrap(), FiberPolynomial::u(4).pow(2));
        assert_eq!(f.div_u(3), Err(AbnormalError::NotDivisible(3)));
        assert_eq!(f.homogeneous_degree(), Some(3));
        assert_eq!(f.eval45(&vec![int(0); 5], &int(2), &int(3)).unwrap(), int(12));
    }
}
