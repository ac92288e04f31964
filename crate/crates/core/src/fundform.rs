//! Closed-form invariants: moving-frame coefficients `a_ij`, the Ricci
//! density `ρ`, the density `A` of the fundamental form, the tangential
//! quartic on the distribution plane, and the frame-change covariance check.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::abnormal::{alpha, b_scalars, omega, pi, theta, Abnormal, AbnormalError, FiberPolynomial, PiForm};
use crate::algebra::{rat, AlgebraError, Jet, Rational};
use crate::diffgeo::{adapted_frame, AdaptedMode, GeometryError, VectorField, DIM};

/// Errors raised by the closed-form pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FundformError {
    /// A result that must be homogeneous in `(u4, u5)` is not.
    #[error("{what} is not homogeneous of degree {degree} in (u4, u5)")]
    NotHomogeneous {
        /// Name of the offending quantity.
        what: &'static str,
        /// Expected degree.
        degree: u32,
    },
    /// The second basis does not span the same plane as the first one.
    #[error("the two bases do not span the same plane at the working point")]
    DifferentPlanes,
    /// Cotangent-layer failure.
    #[error(transparent)]
    Abnormal(#[from] AbnormalError),
    /// Geometry failure.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// Series arithmetic failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sign of the `h∘h(b b₁ + h(b) − ⅓α₃)` term in the master formula.
///
/// The coefficient `−1/12` is the one consistent with the moving-frame
/// lemmas, with the Jacobi-curve oracle and with the frame-change law; the
/// variant `+1/12` is kept for comparison experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MasterSign {
    /// Coefficient `−1/12`.
    #[default]
    Corrected,
    /// Coefficient `+1/12`.
    Literal,
}

/// Options for the closed-form pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PipelineOptions {
    /// How `X5` is formed.
    pub mode: AdaptedMode,
    /// Which closed form of `Π` is used.
    pub pi_form: PiForm,
    /// Sign of the `h∘h` term.
    pub sign: MasterSign,
}

/// Intermediate quantities of the master formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ingredients {
    /// `α_1..α_5` (index 0 is `α_1`).
    pub alpha: [FiberPolynomial; DIM],
    /// `b`.
    pub b: FiberPolynomial,
    /// `b₁`.
    pub b1: FiberPolynomial,
    /// `Π`.
    pub pi: FiberPolynomial,
    /// `Θ`.
    pub theta: FiberPolynomial,
    /// `Ω`.
    pub omega: FiberPolynomial,
    /// `L = α1 u4 + α2 u5`.
    pub l: FiberPolynomial,
    /// `Q = b b₁ + h(b) − ⅓α₃`.
    pub q: FiberPolynomial,
    /// `P = α3 − ½Π − ½h(b₁) − 9/2 h(b) + ½b₁² + 9/2 b²`.
    pub p: FiberPolynomial,
}

impl Ingredients {
    /// Assemble all ingredients for an abnormal layer.
    pub fn new(ab: &Abnormal, pi_form: PiForm) -> Self {
        let c = &ab.c;
        let al: [FiberPolynomial; DIM] = std::array::from_fn(|i| alpha(i + 1, c));
        let (b, b1) = b_scalars(c);
        let pi = pi(c, pi_form);
        let theta = theta(c, &ab.frame);
        let omega = omega(c);
        let l = al[0].mul(&FiberPolynomial::u(4)).add(&al[1].mul(&FiberPolynomial::u(5)));
        let hb = ab.h(&b);
        let q = b.mul(&b1).add(&hb).sub(&al[2].scale_rat(&rat(1, 3)));
        let p = al[2]
            .sub(&pi.scale_rat(&rat(1, 2)))
            .sub(&ab.h(&b1).scale_rat(&rat(1, 2)))
            .sub(&hb.scale_rat(&rat(9, 2)))
            .add(&b1.pow(2).scale_rat(&rat(1, 2)))
            .add(&b.pow(2).scale_rat(&rat(9, 2)));
        Ingredients { alpha: al, b, b1, pi, theta, omega, l, q, p }
    }
}

/// The coefficients `a21, a22, a31, a41, a42` of the moving frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingFrameCoeffs {
    /// `a21 = −(b b₁ + h(b) − ⅓α₃)`.
    pub a21: FiberPolynomial,
    /// `a22 = −b₁ − 3b`.
    pub a22: FiberPolynomial,
    /// `a31 = (Ω − Θ)/36 + L b/6 − Π b²/4`.
    pub a31: FiberPolynomial,
    /// `a41 = −Π b/4 + L/12`.
    pub a41: FiberPolynomial,
    /// `a42 = −Π/4`.
    pub a42: FiberPolynomial,
}

/// Moving-frame coefficients from the ingredients.
pub fn coeffs_a(ing: &Ingredients) -> MovingFrameCoeffs {
    let b2 = ing.b.pow(2);
    MovingFrameCoeffs {
        a21: ing.q.neg(),
        a22: ing.b1.add(&ing.b.scale_rat(&rat(3, 1))).neg(),
        a31: ing.omega.sub(&ing.theta).scale_rat(&rat(1, 36)).add(&ing.l.mul(&ing.b).scale_rat(&rat(1, 6))).sub(&ing.pi.mul(&b2).scale_rat(&rat(1, 4))),
        a41: ing.pi.mul(&ing.b).scale_rat(&rat(-1, 4)).add(&ing.l.scale_rat(&rat(1, 12))),
        a42: ing.pi.scale_rat(&rat(-1, 4)),
    }
}

/// `ρ = −4/15 · P`.
pub fn ricci_density(ing: &Ingredients) -> FiberPolynomial {
    ing.p.scale_rat(&rat(-4, 15))
}

/// The density `A` of the fundamental form by the closed-form master formula.
pub fn fundamental_density(ab: &Abnormal, ing: &Ingredients, sign: MasterSign) -> Result<FiberPolynomial, FundformError> {
    let h = |f: &FiberPolynomial| ab.h(f);
    let (b, b1, pi, p, q, l) = (&ing.b, &ing.b1, &ing.pi, &ing.p, &ing.q, &ing.l);
    let hhq = h(&h(q)).scale_rat(&match sign {
        MasterSign::Corrected => rat(-1, 12),
        MasterSign::Literal => rat(1, 12),
    });
    let rhs = ing
        .theta
        .sub(&ing.omega)
        .scale_rat(&rat(1, 36))
        .sub(&l.mul(b).scale_rat(&rat(1, 6)))
        .add(&pi.mul(&b.pow(2)).scale_rat(&rat(1, 4)))
        .add(&p.pow(2).scale_rat(&rat(1, 100)))
        .sub(&h(&h(p)).scale_rat(&rat(1, 60)))
        .sub(&q.pow(2).scale_rat(&rat(1, 4)))
        .add(&h(l).scale_rat(&rat(1, 36)))
        .sub(&h(&pi.mul(b)).scale_rat(&rat(1, 12)))
        .add(&hhq)
        .add(&h(&q.mul(&b1.add(&b.scale_rat(&rat(3, 1))))).scale_rat(&rat(1, 12)));
    let a = rhs.scale_rat(&rat(36, 35));
    if !a.is_homogeneous_of(4) {
        return Err(FundformError::NotHomogeneous { what: "A", degree: 4 });
    }
    Ok(a)
}

/// `(ρ, A)` from moving-frame coefficients, differentiating along `h`.
///
/// `ρ = −4/15(3a21 + 2a42 + ½a22′ + ½a22²)` and
/// `A = 36/35(−a31 + 9/64ρ² + 1/16ρ″ − ¼a21² + ⅓a41′ + 1/12a21″ + 1/12(a21a22)′)`.
pub fn density_from_coeffs(ab: &Abnormal, a: &MovingFrameCoeffs) -> (FiberPolynomial, FiberPolynomial) {
    let d = |f: &FiberPolynomial| ab.h(f);
    let rho = a
        .a21
        .scale_rat(&rat(3, 1))
        .add(&a.a42.scale_rat(&rat(2, 1)))
        .add(&d(&a.a22).scale_rat(&rat(1, 2)))
        .add(&a.a22.pow(2).scale_rat(&rat(1, 2)))
        .scale_rat(&rat(-4, 15));
    let dens = a
        .a31
        .neg()
        .add(&rho.pow(2).scale_rat(&rat(9, 64)))
        .add(&d(&d(&rho)).scale_rat(&rat(1, 16)))
        .sub(&a.a21.pow(2).scale_rat(&rat(1, 4)))
        .add(&d(&a.a41).scale_rat(&rat(1, 3)))
        .add(&d(&d(&a.a21)).scale_rat(&rat(1, 12)))
        .add(&d(&a.a21.mul(&a.a22)).scale_rat(&rat(1, 12)))
        .scale_rat(&rat(36, 35));
    (rho, dens)
}

/// Univariate jets of the moving-frame coefficients along a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffJets {
    /// `a21(t)`.
    pub a21: Jet,
    /// `a22(t)`.
    pub a22: Jet,
    /// `a31(t)`.
    pub a31: Jet,
    /// `a41(t)`.
    pub a41: Jet,
    /// `a42(t)`.
    pub a42: Jet,
}

/// `(ρ(t), A(t))` from jets of the moving-frame coefficients.
///
/// The output order is limited by two derivatives of `ρ` and `a21`, hence
/// `a22` needs order ≥ 3 and the others ≥ 2 for a meaningful constant term.
pub fn moving_frame_extract(a: &CoeffJets) -> Result<(Jet, Jet), FundformError> {
    let min = a.a22.order().saturating_sub(1).min(a.a21.order()).min(a.a42.order());
    if a.a22.order() < 3 || a.a21.order() < 2 || a.a41.order() < 1 || a.a42.order() < 2 {
        return Err(AlgebraError::InsufficientOrder { needed: 3, have: min }.into());
    }
    let r = |n: i64, d: i64| rat(n, d);
    let rho = (&(&(&a.a21.scale(&r(3, 1)) + &a.a42.scale(&r(2, 1))) + &a.a22.deriv().scale(&r(1, 2))) + &(&a.a22 * &a.a22).scale(&r(1, 2))).scale(&r(-4, 15));
    let terms = [
        a.a31.scale(&r(-1, 1)),
        (&rho * &rho).scale(&r(9, 64)),
        rho.deriv().deriv().scale(&r(1, 16)),
        (&a.a21 * &a.a21).scale(&r(-1, 4)),
        a.a41.deriv().scale(&r(1, 3)),
        a.a21.deriv().deriv().scale(&r(1, 12)),
        (&a.a21 * &a.a22).deriv().scale(&r(1, 12)),
    ];
    let mut acc = terms[0].clone();
    for t in &terms[1..] {
        acc = &acc + t;
    }
    Ok((rho, acc.scale(&r(36, 35))))
}

/// All closed-form invariants of a distribution `span(X1, X2)`.
#[derive(Clone, Debug)]
pub struct Invariants {
    /// Frame, structural functions and characteristic field.
    pub abnormal: Abnormal,
    /// Ingredients of the master formula.
    pub ingredients: Ingredients,
    /// Moving-frame coefficients.
    pub coeffs: MovingFrameCoeffs,
    /// Ricci density `ρ` (degree 2 in `(u4, u5)`).
    pub rho: FiberPolynomial,
    /// Density `A` of the fundamental form (degree 4 in `(u4, u5)`).
    pub density: FiberPolynomial,
}

impl Invariants {
    /// Run the closed-form pipeline.
    pub fn compute(x1: &VectorField, x2: &VectorField, opts: PipelineOptions) -> Result<Self, FundformError> {
        let frame = adapted_frame(x1, x2, opts.mode)?;
        Self::from_abnormal(Abnormal::new(frame)?, opts)
    }

    /// Run the pipeline on a prepared abnormal layer.
    pub fn from_abnormal(ab: Abnormal, opts: PipelineOptions) -> Result<Self, FundformError> {
        let ing = Ingredients::new(&ab, opts.pi_form);
        let coeffs = coeffs_a(&ing);
        let rho = ricci_density(&ing);
        if !rho.is_homogeneous_of(2) {
            return Err(FundformError::NotHomogeneous { what: "rho", degree: 2 });
        }
        let density = fundamental_density(&ab, &ing, opts.sign)?;
        Ok(Invariants { abnormal: ab, ingredients: ing, coeffs, rho, density })
    }

    /// The tangential quartic at `q` on the basis `(X1(q), X2(q))`.
    pub fn tangential(&self, q: &[Rational]) -> Result<QuarticForm, FundformError> {
        QuarticForm::from_density(&self.density, q)
    }
}

/// A binary quartic `Σ c_k v1^{4−k} v2^k` on a 2-plane with a declared basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticForm {
    /// Coefficients of `v1⁴, v1³v2, v1²v2², v1v2³, v2⁴`.
    pub coeffs: [Rational; 5],
    /// Names of the basis vectors `(v1, v2)`.
    pub basis: [String; 2],
}

impl QuarticForm {
    /// The zero quartic on the basis `(X1, X2)`.
    pub fn zero() -> Self {
        QuarticForm { coeffs: std::array::from_fn(|_| Rational::zero()), basis: ["X1".into(), "X2".into()] }
    }

    /// Restrict a degree-4 density to `D(q)` via `v = aX1 + bX2 ↦ (u4, u5) = (b, −a)`.
    pub fn from_density(a: &FiberPolynomial, q: &[Rational]) -> Result<Self, FundformError> {
        if !a.is_homogeneous_of(4) {
            return Err(FundformError::NotHomogeneous { what: "A", degree: 4 });
        }
        let mut coeffs: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (k, slot) in coeffs.iter_mut().enumerate() {
            // v1^(4-k) v2^k  <-  u5^(4-k) u4^k with u5 = -v1
            let c = a.coeff45(k as u8, (4 - k) as u8).eval(q).map_err(|_| GeometryError::Pole)?;
            *slot = if (4 - k) % 2 == 1 { -c } else { c };
        }
        Ok(QuarticForm { coeffs, basis: ["X1".into(), "X2".into()] })
    }

    /// Value at `v = v1·e1 + v2·e2`.
    pub fn eval(&self, v1: &Rational, v2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * pow(v1, 4 - k) * pow(v2, k);
        }
        acc
    }

    /// Re-express on the basis `f_j = Σ_i m[i][j] e_i`.
    pub fn change_basis(&self, m: &[[Rational; 2]; 2], names: [String; 2]) -> QuarticForm {
        // value at w1 f1 + w2 f2 = value at (m00 w1 + m01 w2, m10 w1 + m11 w2)
        let lin = |a: &Rational, b: &Rational| [a.clone(), b.clone()];
        let l1 = lin(&m[0][0], &m[0][1]);
        let l2 = lin(&m[1][0], &m[1][1]);
        let mut out: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut poly = vec![Rational::one()];
            for _ in 0..4 - k {
                poly = mul_linear(&poly, &l1);
            }
            for _ in 0..k {
                poly = mul_linear(&poly, &l2);
            }
            for (j, p) in poly.iter().enumerate() {
                out[j] += c * p;
            }
        }
        QuarticForm { coeffs: out, basis: names }
    }

    /// `true` if all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficientwise `self + s·other`.
    pub fn add_scaled(&self, other: &QuarticForm, s: &Rational) -> QuarticForm {
        QuarticForm { coeffs: std::array::from_fn(|k| &self.coeffs[k] + s * &other.coeffs[k]), basis: self.basis.clone() }
    }
}

/// Multiply a polynomial in `(w1, w2)` stored by powers of `w2` by `a w1 + b w2`.
fn mul_linear(p: &[Rational], l: &[Rational; 2]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (j, c) in p.iter().enumerate() {
        out[j] += c * &l[0];
        out[j + 1] += c * &l[1];
    }
    out
}

fn pow(r: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// The tangential quartic of `span(X1, X2)` at `q`.
pub fn tangential_form(x1: &VectorField, x2: &VectorField, q: &[Rational], opts: PipelineOptions) -> Result<QuarticForm, FundformError> {
    let inv = Invariants::compute(x1, x2, opts)?;
    inv.abnormal.frame.check_at(q)?;
    inv.tangential(q)
}

/// Outcome of comparing two bases of the same distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameChangeReport {
    /// Transition matrix `m` with `X̃_j(q) = Σ_i m[i][j] X_i(q)`.
    pub transition: [[Rational; 2]; 2],
    /// `det m`.
    pub det: Rational,
    /// `(det m)²`, the factor the covariance law is checked against.
    pub expected_factor: Rational,
    /// Measured ratio `A_X̃(λ)/A_X(λ)` at common covectors, if consistent.
    pub measured_factor: Option<Rational>,
    /// The smallest `k` with `|det|^k` equal to the measured factor (up to 16).
    pub measured_power: Option<u32>,
    /// `measured_factor == expected_factor`.
    pub fiber_scaling_ok: bool,
    /// Exact equality of the two tangential quartics (after basis change).
    pub tangential_equal: bool,
}

/// Compare the densities of two bases of the same distribution at `q`.
///
/// Both densities are evaluated at the same covectors `λ ∈ (D²)^⊥(q)`:
/// `λ = u4 ω⁴ + u5 ω⁵` in the first frame, with the second frame's fiber
/// coordinates `ũ_k = λ(X̃_k(q))`.
pub fn frame_change_check(
    x1: &VectorField,
    x2: &VectorField,
    y1: &VectorField,
    y2: &VectorField,
    q: &[Rational],
    opts: PipelineOptions,
) -> Result<FrameChangeReport, FundformError> {
    let first = Invariants::compute(x1, x2, opts)?;
    let second = Invariants::compute(y1, y2, opts)?;
    let fx = &first.abnormal.frame;
    let fy = &second.abnormal.frame;
    fx.check_at(q)?;
    fy.check_at(q)?;

    // Transition matrix from frame coordinates of Y1, Y2.
    let c1 = crate::diffgeo::frame_coordinates(fx, q, &y1.eval(q)?)?;
    let c2 = crate::diffgeo::frame_coordinates(fx, q, &y2.eval(q)?)?;
    if c1[2..].iter().chain(&c2[2..]).any(|v| !v.is_zero()) {
        return Err(FundformError::DifferentPlanes);
    }
    let m = [[c1[0].clone(), c2[0].clone()], [c1[1].clone(), c2[1].clone()]];
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    let expected = &det * &det;

    // Fiber coordinates of the second frame at λ = u4 ω⁴ + u5 ω⁵.
    let y4 = crate::diffgeo::frame_coordinates(fx, q, &fy.x[3].eval(q)?)?;
    let y5 = crate::diffgeo::frame_coordinates(fx, q, &fy.x[4].eval(q)?)?;
    let samples = [(1, 0), (0, 1), (1, 1), (1, -2), (2, 3)];
    let mut ratio: Option<Rational> = None;
    let mut consistent = true;
    for (a, b) in samples {
        let (u4, u5) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let v4 = &u4 * &y4[3] + &u5 * &y4[4];
        let v5 = &u4 * &y5[3] + &u5 * &y5[4];
        let ax = first.density.eval45(q, &u4, &u5)?;
        let ay = second.density.eval45(q, &v4, &v5)?;
        if ax.is_zero() {
            consistent &= ay.is_zero();
            continue;
        }
        let r = ay / ax;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) => consistent &= *prev == r,
        }
    }
    let measured = if consistent { ratio.clone() } else { None };
    let measured_power = measured.as_ref().and_then(|f| {
        let ad = det.abs();
        (0..=16u32).find(|&k| pow(&ad, k as usize) == *f)
    });
    let tx = first.tangential(q)?;
    let ty = second.tangential(q)?;
    let tx_on_y = tx.change_basis(&m, ty.basis.clone());
    let fiber_ok = consistent && ratio.as_ref().map_or(true, |f| *f == expected);
    Ok(FrameChangeReport {
        transition: m,
        det,
        expected_factor: expected,
        measured_factor: measured,
        measured_power,
        fiber_scaling_ok: fiber_ok,
        tangential_equal: tx_on_y == ty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Vars};

    fn monge(f: &str) -> (VectorField, VectorField) {
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        (VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap(), VectorField::parse(&["1", "p", "q", "0", f], &v).unwrap())
    }

    fn point(q: i64) -> Vec<Rational> {
        vec![int(0), int(0), int(0), int(q), int(0)]
    }

    #[test]
    fn flat_model_is_flat() {
        let (x1, x2) = monge("q^2");
        let inv = Invariants::compute(&x1, &x2, PipelineOptions::default()).unwrap();
        assert!(inv.rho.is_zero());
        assert!(inv.density.is_zero());
        assert!(inv.tangential(&point(1)).unwrap().is_zero());
    }

    #[test]
    fn cubic_and_quartic_models() {
        for (f, rho, a) in [("q^3", rat(-8, 15), rat(8, 125)), ("q^4", rat(-4, 3), rat(11, 35))] {
            let (x1, x2) = monge(f);
            let inv = Invariants::compute(&x1, &x2, PipelineOptions::default()).unwrap();
            let q = point(1);
            assert_eq!(inv.rho.eval45(&q, &int(0), &int(1)).unwrap(), rho);
            assert_eq!(inv.density.eval45(&q, &int(0), &int(1)).unwrap(), a);
            let (r2, a2) = density_from_coeffs(&inv.abnormal, &inv.coeffs);
            assert_eq!(r2, inv.rho);
            assert_eq!(a2, inv.density);
        }
    }

    #[test]
    fn literal_sign_differs() {
        let (x1, x2) = monge("q^3");
        let opts = PipelineOptions { sign: MasterSign::Literal, ..Default::default() };
        let inv = Invariants::compute(&x1, &x2, opts).unwrap();
        assert_eq!(inv.density.eval45(&point(1), &int(0), &int(1)).unwrap(), rat(-244, 875));
    }

    #[test]
    fn moving_frame_extract_constant_a21() {
        let k = rat(2, 1);
        let z = Jet::zero(4);
        let a = CoeffJets { a21: Jet::constant(4, k.clone()), a22: z.clone(), a31: z.clone(), a41: z.clone(), a42: z };
        let (rho, dens) = moving_frame_extract(&a).unwrap();
        assert_eq!(*rho.value(), rat(-4, 5) * &k);
        let expected = rat(36, 35) * (rat(9, 64) * rat(16, 25) * &k * &k - &k * &k / int(4));
        assert_eq!(*dens.value(), expected);
    }

    #[test]
    fn quartic_basis_change() {
        let f = QuarticForm { coeffs: [int(1), int(0), int(0), int(0), int(0)], basis: ["a".into(), "b".into()] };
        let g = f.change_basis(&[[int(2), int(0)], [int(0), int(1)]], ["c".into(), "d".into()]);
        assert_eq!(g.coeffs[0], int(16));
        assert_eq!(g.eval(&int(1), &int(5)), f.eval(&int(2), &int(5)));
    }
}

#[cfg(test)]
mod frame_change_tests {
    use super::*;
    use crate::algebra::{int, Vars};

    #[test]
    fn measured_factors() {
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap();
        let x2 = VectorField::parse(&["1", "p", "q", "0", "q^3"], &v).unwrap();
        let q = vec![int(1), int(0), int(0), int(1), int(0)];
        let two = crate::algebra::RationalFunction::constant(5, int(2));
        let xx = crate::algebra::parse_expression("x", &v).unwrap();
        let cases = [(x1.scale(&two), x2.clone(), Some(8)), (x2.clone(), x1.clone(), None), (x1.clone(), x2.add(&x1.scale(&xx)), None)];
        for (y1, y2, power) in cases {
            let r = frame_change_check(&x1, &x2, &y1, &y2, &q, PipelineOptions::default()).unwrap();
            assert!(r.tangential_equal);
            match power {
                // the density scales by det^8 at a common covector
                Some(k) => {
                    assert_eq!(r.measured_power, Some(k));
                    assert!(!r.fiber_scaling_ok);
                }
                None => assert!(r.fiber_scaling_ok),
            }
        }
    }
}
