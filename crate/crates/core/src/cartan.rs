//! Cartan's side of the comparison: verification of candidate coframes
//! against Cartan's structure equations, Cartan frames, the identities that
//! hold in such frames, the simplified density and the quartic `ℱ`.
//!
//! The structure equations checked are
//!
//! ```text
//! dω1 = ω1∧(2ω̄1+ω̄4) + ω2∧ω̄2 + ω3∧ω4
//! dω2 = ω1∧ω̄3 + ω2∧(ω̄1+2ω̄4) + ω3∧ω5
//! dω3 = ω1∧ω̄5 + ω2∧ω̄6 + ω3∧(ω̄1+ω̄4) + ω4∧ω5
//! dω4 = ω1∧ω̄7 + 4/3 ω3∧ω̄6 + ω4∧ω̄1 + ω5∧ω̄2
//! dω5 = ω2∧ω̄7 − 4/3 ω3∧ω̄5 + ω4∧ω̄3 + ω5∧ω̄4
//! ```
//!
//! with `d ω(V, W) = V ω(W) − W ω(V) − ω([V, W])` and
//! `(α∧β)(V, W) = α(V)β(W) − α(W)β(V)`.

use std::array;

use thiserror::Error;

use crate::abnormal::{alpha, b_scalars, omega, pi, theta, Abnormal, AbnormalError, FiberPolynomial, PiForm};
use crate::algebra::{rat, ParseError, Rational, RationalFunction, Vars};
use crate::diffgeo::{
    dual_frame, exterior_derivative, lie_bracket, structural_functions, wedge, Coframe, Frame, FrameKind, GeometryError, OneForm, StructuralFunctions, TwoForm,
    VectorField, DIM,
};
use crate::fundform::{fundamental_density, tangential_form, FundformError, Ingredients, MasterSign, PipelineOptions, QuarticForm};

/// Errors raised on the Cartan side.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    /// The coframe does not satisfy the structure equations.
    #[error("coframe fails the structure equations (equations {0:?})")]
    NotVerified(Vec<usize>),
    /// An identity expected to hold in Cartan frames failed.
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    /// Malformed coframe description.
    #[error("coframe needs 5 forms ω and 7 forms ω̄ with 5 components each")]
    Shape,
    /// Expression parse error.
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// Geometry failure.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// Cotangent-layer failure.
    #[error(transparent)]
    Abnormal(#[from] AbnormalError),
    /// Closed-form pipeline failure.
    #[error(transparent)]
    Fundform(#[from] FundformError),
}

/// A coframe `ω1..ω5` together with the forms `ω̄1..ω̄7` of a section of
/// Cartan's bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanCoframe {
    /// `ω1..ω5` (index 0 is `ω1`).
    pub omega: [OneForm; DIM],
    /// `ω̄1..ω̄7` (index 0 is `ω̄1`).
    pub bar: [OneForm; 7],
}

impl CartanCoframe {
    /// Parse 12 forms given as component expressions.
    pub fn parse<S: AsRef<str>>(omega: &[Vec<S>], bar: &[Vec<S>], vars: &Vars) -> Result<Self, CartanError> {
        if omega.len() != DIM || bar.len() != 7 || omega.iter().chain(bar).any(|f| f.len() != DIM) {
            return Err(CartanError::Shape);
        }
        let om: Vec<OneForm> = omega.iter().map(|f| OneForm::parse(f, vars)).collect::<Result<_, _>>()?;
        let br: Vec<OneForm> = bar.iter().map(|f| OneForm::parse(f, vars)).collect::<Result<_, _>>()?;
        Ok(CartanCoframe { omega: om.try_into().unwrap(), bar: br.try_into().unwrap() })
    }

    /// Right-hand sides of the five structure equations.
    pub fn rhs(&self) -> [TwoForm; DIM] {
        let w = &self.omega;
        let b = &self.bar;
        let c = |k: i64, f: &OneForm| f.scale(&RationalFunction::constant(DIM, Rational::from_integer(k.into())));
        let q = |n: i64, d: i64, f: &OneForm| f.scale(&RationalFunction::constant(DIM, rat(n, d)));
        [
            wedge(&w[0], &c(2, &b[0]).add(&b[3])).add(&wedge(&w[1], &b[1])).add(&wedge(&w[2], &w[3])),
            wedge(&w[0], &b[2]).add(&wedge(&w[1], &b[0].add(&c(2, &b[3])))).add(&wedge(&w[2], &w[4])),
            wedge(&w[0], &b[4]).add(&wedge(&w[1], &b[5])).add(&wedge(&w[2], &b[0].add(&b[3]))).add(&wedge(&w[3], &w[4])),
            wedge(&w[0], &b[6]).add(&wedge(&w[2], &q(4, 3, &b[5]))).add(&wedge(&w[3], &b[0])).add(&wedge(&w[4], &b[1])),
            wedge(&w[1], &b[6]).add(&wedge(&w[2], &q(-4, 3, &b[4]))).add(&wedge(&w[3], &b[2])).add(&wedge(&w[4], &b[3])),
        ]
    }

    /// Copy with `ω̄_j` (1-based) replaced by `ω̄_j + η`.
    pub fn perturb_bar(&self, j: usize, eta: &OneForm) -> Self {
        let mut out = self.clone();
        out.bar[j - 1] = out.bar[j - 1].add(eta);
        out
    }

    /// Copy with `ω_i` (1-based) replaced by `ω_i + η`.
    pub fn perturb_omega(&self, i: usize, eta: &OneForm) -> Self {
        let mut out = self.clone();
        out.omega[i - 1] = out.omega[i - 1].add(eta);
        out
    }
}

/// Residuals `dω_i − RHS_i` of the structure equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureResidual {
    /// One residual per equation.
    pub residuals: [TwoForm; DIM],
}

impl StructureResidual {
    /// `true` iff all residuals vanish identically.
    pub fn ok(&self) -> bool {
        self.residuals.iter().all(TwoForm::is_zero)
    }

    /// 1-based indices of the failing equations.
    pub fn failing(&self) -> Vec<usize> {
        (0..DIM).filter(|&i| !self.residuals[i].is_zero()).map(|i| i + 1).collect()
    }
}

/// Compute `dω_i − RHS_i` for every structure equation.
pub fn verify_structure_equations(cf: &CartanCoframe) -> StructureResidual {
    let rhs = cf.rhs();
    StructureResidual { residuals: array::from_fn(|i| exterior_derivative(&cf.omega[i]).sub(&rhs[i])) }
}

/// The Cartan frame `X_k = X̃_{6−k}` where `ω_i(X̃_k) = δ_ik`.
pub fn cartan_frame(cf: &CartanCoframe) -> Result<Frame, CartanError> {
    let dual = dual_frame(&Coframe { w: cf.omega.clone() })?;
    Ok(Frame::new(array::from_fn(|k| dual[DIM - 1 - k].clone()), FrameKind::Cartan))
}

/// Structural functions of the Cartan frame derived from the structure
/// equations alone: `ω_m([X̃_a, X̃_b]) = −RHS_m(X̃_a, X̃_b)` for a dual frame.
pub fn derived_structural_functions(cf: &CartanCoframe, frame: &Frame) -> StructuralFunctions {
    let rhs = cf.rhs();
    // t[j][i][k] = c_{ji}^k = ω^k([X_i, X_j]), with ω^k = ω_{6−k} for the Cartan frame
    let t = (0..DIM).map(|j| (0..DIM).map(|i| (0..DIM).map(|k| -&rhs[DIM - 1 - k].eval(&frame.x[i], &frame.x[j])).collect()).collect()).collect();
    StructuralFunctions::from_table(t)
}

/// Bracket relations of a Cartan frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReport {
    /// Derived table equals the table from explicit Lie brackets.
    pub derived_matches_direct: bool,
    /// `[X1,X2] ≡ X3 mod D`, `[X1,X3] ≡ X4` and `[X2,X3] ≡ X5 mod D²`.
    pub adapted: bool,
    /// `[X1,X3] = X4 − (4/3 ω̄5(X1) + ω̄4(X3))X1 + (4/3 ω̄6(X1) − ω̄2(X3))X2 + (ω̄1+ω̄4)(X1) X3`.
    pub x1x3_matches: bool,
    /// The analogous expansion of `[X2, X3]`.
    pub x2x3_matches: bool,
}

/// Check the bracket relations of the Cartan frame.
pub fn bracket_relations(cf: &CartanCoframe, frame: &Frame) -> Result<BracketReport, CartanError> {
    let c = structural_functions(frame)?;
    let derived = derived_structural_functions(cf, frame);
    let zero = RationalFunction::zero(DIM);
    let one = RationalFunction::one(DIM);
    let is = |j: usize, i: usize, k: usize, v: &RationalFunction| c.get(j, i, k) == v;
    let adapted =
        is(2, 1, 3, &one) && is(2, 1, 4, &zero) && is(2, 1, 5, &zero) && is(3, 1, 4, &one) && is(3, 1, 5, &zero) && is(3, 2, 4, &zero) && is(3, 2, 5, &one);
    let x = &frame.x;
    let b = &cf.bar;
    let four_thirds = RationalFunction::constant(DIM, rat(4, 3));
    let expand = |lead: usize, xi: usize| -> [RationalFunction; DIM] {
        // [X_xi, X3] for xi ∈ {1, 2}; lead = 4 or 5
        let (a, bb) = if xi == 1 { (3, 1) } else { (2, 0) };
        let c1 = -&(&(&four_thirds * &b[4].eval(&x[xi - 1])) + &b[a].eval(&x[2]));
        let c2 = &(&four_thirds * &b[5].eval(&x[xi - 1])) - &b[bb].eval(&x[2]);
        let c3 = b[0].add(&b[3]).eval(&x[xi - 1]);
        let mut out: [RationalFunction; DIM] = array::from_fn(|_| RationalFunction::zero(DIM));
        out[0] = c1;
        out[1] = c2;
        out[2] = c3;
        out[lead - 1] = RationalFunction::one(DIM);
        out
    };
    let matches = |xi: usize, lead: usize| (0..DIM).all(|k| c.get(3, xi, k + 1) == &expand(lead, xi)[k]);
    Ok(BracketReport { derived_matches_direct: derived == c, adapted, x1x3_matches: matches(1, 4), x2x3_matches: matches(2, 5) })
}

/// The identities satisfied by Cartan frames.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// `b = (ω̄1+ω̄4)(X2) u4 − (ω̄1+ω̄4)(X1) u5`.
    pub b_forms: FiberPolynomial,
    /// `b` from the structural functions.
    pub b: FiberPolynomial,
    /// `b₁` from the structural functions.
    pub b1: FiberPolynomial,
    /// `Π` (expanded closed form).
    pub pi_expanded: FiberPolynomial,
    /// `Π` (bracket closed form).
    pub pi_bracket: FiberPolynomial,
    /// `α3`.
    pub alpha3: FiberPolynomial,
}

impl IdentityReport {
    /// `b` from the forms equals `b` from the structural functions.
    pub fn b_ok(&self) -> bool {
        self.b_forms == self.b
    }
    /// `b₁ = b`.
    pub fn b1_ok(&self) -> bool {
        self.b1 == self.b
    }
    /// `Π = −4/3 α3` for the given closed form of `Π`.
    pub fn pi_ok(&self, form: PiForm) -> bool {
        let target = self.alpha3.scale_rat(&rat(-4, 3));
        match form {
            PiForm::Expanded => self.pi_expanded == target,
            PiForm::Bracket => self.pi_bracket == target,
        }
    }
}

fn quad(f44: RationalFunction, f45: RationalFunction, f55: RationalFunction) -> FiberPolynomial {
    FiberPolynomial::monomial([0, 0, 0, 2, 0], f44).add(&FiberPolynomial::monomial([0, 0, 0, 1, 1], f45)).add(&FiberPolynomial::monomial([0, 0, 0, 0, 2], f55))
}

/// Evaluate the identities `b = b(forms)`, `b₁ = b`, `Π = −4/3 α3`.
pub fn cartan_identities(cf: &CartanCoframe, frame: &Frame) -> Result<IdentityReport, CartanError> {
    let c = structural_functions(frame)?;
    let s = cf.bar[0].add(&cf.bar[3]);
    let b_forms = FiberPolynomial::monomial([0, 0, 0, 1, 0], s.eval(&frame.x[1])).sub(&FiberPolynomial::monomial([0, 0, 0, 0, 1], s.eval(&frame.x[0])));
    let (b, b1) = b_scalars(&c);
    Ok(IdentityReport { b_forms, b, b1, pi_expanded: pi(&c, PiForm::Expanded), pi_bracket: pi(&c, PiForm::Bracket), alpha3: alpha(3, &c) })
}

/// Results of the simplified-density chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    /// `A` from the master formula on the Cartan frame.
    pub a_formula: FiberPolynomial,
    /// `A = 1/35 (Θ + h(L) − Ω − 6 L b)`.
    pub a_simplified: FiberPolynomial,
    /// `Θ + Θ1` equals its `𝒮`-decomposition.
    pub theta_sum_ok: bool,
    /// `35A − ℬ` equals the `Ξ`-combination.
    pub difference_ok: bool,
    /// `A1..A5` read off `35A = −(A1u4⁴ − 4A2u4³u5 + 6A3u4²u5² − 4A4u4u5³ + A5u5⁴)`.
    pub a_coeffs: [RationalFunction; 5],
}

impl DensityReport {
    /// The master formula collapses to the simplified expression.
    pub fn cancellation_ok(&self) -> bool {
        self.a_formula == self.a_simplified
    }
}

/// `T(X5,X2)u4² + (T(X1,X5) + T(X2,X4))u4u5 + T(X4,X1)u5²`.
fn combination(frame: &Frame, t: impl Fn(&VectorField, &VectorField) -> FiberPolynomial) -> FiberPolynomial {
    let x = &frame.x;
    let u44 = FiberPolynomial::u(4).pow(2);
    let u45 = FiberPolynomial::u(4).mul(&FiberPolynomial::u(5));
    let u55 = FiberPolynomial::u(5).pow(2);
    t(&x[4], &x[1]).mul(&u44).add(&t(&x[0], &x[4]).add(&t(&x[1], &x[3])).mul(&u45)).add(&t(&x[3], &x[0]).mul(&u55))
}

/// Read `A1..A5` off a quartic density `A`.
pub fn extract_cartan_coeffs(a: &FiberPolynomial) -> [RationalFunction; 5] {
    let k = |n: i64, d: i64| RationalFunction::constant(DIM, rat(n, d));
    [&k(-35, 1) * &a.coeff45(4, 0), &k(35, 4) * &a.coeff45(3, 1), &k(-35, 6) * &a.coeff45(2, 2), &k(35, 4) * &a.coeff45(1, 3), &k(-35, 1) * &a.coeff45(0, 4)]
}

/// `A = −(A1u4⁴ − 4A2u4³u5 + 6A3u4²u5² − 4A4u4u5³ + A5u5⁴)/35`.
pub fn assemble_from_cartan_coeffs(ai: &[RationalFunction; 5]) -> FiberPolynomial {
    let w = [1, -4, 6, -4, 1];
    let mut out = FiberPolynomial::zero();
    for (n, (a, wn)) in ai.iter().zip(w).enumerate() {
        let e = [0, 0, 0, (4 - n) as u8, n as u8];
        out = out.add(&FiberPolynomial::monomial(e, a * &RationalFunction::constant(DIM, rat(-wn, 35))));
    }
    out
}

/// Run the simplified-density chain on a Cartan frame.
pub fn density_simplified(cf: &CartanCoframe, frame: &Frame, sign: MasterSign) -> Result<DensityReport, CartanError> {
    let ab = Abnormal::new(frame.clone())?;
    let c = &ab.c;
    let ing = Ingredients::new(&ab, PiForm::Expanded);
    let a_formula = fundamental_density(&ab, &ing, sign)?;
    let l = &ing.l;
    let a_simplified = ing.theta.add(&ab.h(l)).sub(&omega(c)).sub(&l.mul(&ing.b).scale_rat(&rat(6, 1))).scale_rat(&rat(1, 35));

    let (a1, a2) = (alpha(1, c), alpha(2, c));
    let (x1, x2) = (&frame.x[0], &frame.x[1]);
    let theta1 = quad(RationalFunction::zero(DIM), RationalFunction::zero(DIM), RationalFunction::zero(DIM))
        .add(&a1.apply_base(x2).mul(&FiberPolynomial::u(4).pow(2)))
        .add(&a2.apply_base(x2).sub(&a1.apply_base(x1)).mul(&FiberPolynomial::u(4).mul(&FiberPolynomial::u(5))))
        .sub(&a2.apply_base(x1).mul(&FiberPolynomial::u(5).pow(2)));
    let b = &cf.bar;
    let b14 = b[0].sub(&b[3]);
    let w_of = |v: &VectorField| quad(b[2].eval(v), b14.eval(v), -&b[1].eval(v));
    let s_op = |v1: &VectorField, v2: &VectorField| w_of(v2).apply_base(v1).sub(&w_of(v1).apply_base(v2));
    let theta_sum_ok = theta(c, frame).add(&theta1) == combination(frame, s_op);

    let (d3, d14, d2) = (exterior_derivative(&b[2]), exterior_derivative(&b14), exterior_derivative(&b[1]));
    let dw = |v1: &VectorField, v2: &VectorField| quad(d3.eval(v1, v2), d14.eval(v1, v2), -&d2.eval(v1, v2));
    let (x31, x32, x21) = (wedge(&b[2], &b14), wedge(&b[2], &b[1]), wedge(&b[1], &b14));
    let two = RationalFunction::constant(DIM, rat(-2, 1));
    let xi = |v1: &VectorField, v2: &VectorField| quad(x31.eval(v1, v2), &two * &x32.eval(v1, v2), x21.eval(v1, v2));
    let difference_ok = a_simplified.scale_rat(&rat(35, 1)).sub(&combination(frame, dw)) == combination(frame, xi);

    let a_coeffs = extract_cartan_coeffs(&a_simplified);
    Ok(DensityReport { a_formula, a_simplified, theta_sum_ok, difference_ok, a_coeffs })
}

/// `ℱ_q` compared with `−35 𝔸_q` on the basis `(X1(q), X2(q))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticReport {
    /// `A1..A5` at `q`.
    pub a_values: [Rational; 5],
    /// `ℱ_q`.
    pub f: QuarticForm,
    /// `𝔸_q`.
    pub tangential: QuarticForm,
    /// Coefficients of `ℱ_q + 35 𝔸_q`.
    pub residual: QuarticForm,
}

impl QuarticReport {
    /// `ℱ_q = −35 𝔸_q` exactly.
    pub fn ok(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `ℱ = A1ω4⁴ + 4A2ω4³ω5 + 6A3ω4²ω5² + 4A4ω4ω5³ + A5ω5⁴` on `v = aX1 + bX2`,
/// where `ω4(v) = b`, `ω5(v) = a`.
pub fn cartan_quartic(a_values: &[Rational; 5]) -> QuarticForm {
    let k = |n: i64| Rational::from_integer(n.into());
    QuarticForm {
        coeffs: [a_values[4].clone(), k(4) * &a_values[3], k(6) * &a_values[2], k(4) * &a_values[1], a_values[0].clone()],
        basis: ["X1".into(), "X2".into()],
    }
}

/// Compare `ℱ_q` with `−35 𝔸_q`.
pub fn compare_quartics(cf: &CartanCoframe, q: &[Rational], opts: PipelineOptions) -> Result<QuarticReport, CartanError> {
    let frame = cartan_frame(cf)?;
    frame.check_at(q)?;
    let dens = density_simplified(cf, &frame, opts.sign)?;
    let a_values: Vec<Rational> = dens.a_coeffs.iter().map(|f| f.eval(q).map_err(|_| GeometryError::Pole)).collect::<Result<_, _>>()?;
    let a_values: [Rational; 5] = a_values.try_into().unwrap();
    let f = cartan_quartic(&a_values);
    let tangential = tangential_form(&frame.x[0], &frame.x[1], q, opts)?;
    let residual = f.add_scaled(&tangential, &rat(35, 1));
    Ok(QuarticReport { a_values, f, tangential, residual })
}

/// Everything checked for one coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanChain {
    /// Structure-equation residuals.
    pub structure: StructureResidual,
    /// Bracket relations of the Cartan frame.
    pub brackets: BracketReport,
    /// Cartan-frame identities.
    pub identities: IdentityReport,
    /// Simplified-density chain.
    pub density: DensityReport,
    /// Quartic comparison at each requested point.
    pub comparisons: Vec<QuarticReport>,
}

impl CartanChain {
    /// Every check passed.
    pub fn ok(&self) -> bool {
        self.structure.ok()
            && self.brackets.derived_matches_direct
            && self.brackets.adapted
            && self.identities.b_ok()
            && self.identities.b1_ok()
            && self.identities.pi_ok(PiForm::Expanded)
            && self.density.cancellation_ok()
            && self.density.theta_sum_ok
            && self.density.difference_ok
            && self.comparisons.iter().all(QuarticReport::ok)
    }
}

/// Run the whole chain; a coframe failing the structure equations is rejected.
pub fn cartan_chain(cf: &CartanCoframe, points: &[Vec<Rational>], opts: PipelineOptions) -> Result<CartanChain, CartanError> {
    let structure = verify_structure_equations(cf);
    if !structure.ok() {
        return Err(CartanError::NotVerified(structure.failing()));
    }
    let frame = cartan_frame(cf)?;
    let brackets = bracket_relations(cf, &frame)?;
    let identities = cartan_identities(cf, &frame)?;
    let density = density_simplified(cf, &frame, opts.sign)?;
    let comparisons = points.iter().map(|q| compare_quartics(cf, q, opts)).collect::<Result<_, _>>()?;
    Ok(CartanChain { structure, brackets, identities, density, comparisons })
}

fn coord(i: usize) -> RationalFunction {
    RationalFunction::var(DIM, i)
}

fn cst(n: i64, d: i64) -> RationalFunction {
    RationalFunction::constant(DIM, rat(n, d))
}

/// The flat coframe on `(x1, …, x5)`: `ω4 = dx1`, `ω5 = dx2`,
/// `ω3 = dx3 + x1 dx2`, `ω1 = dx4 − x1 dx3 − ½x1² dx2`, `ω2 = dx5 − x2 dx3`,
/// all `ω̄_j = 0`.  Its distribution is `ker(ω1, ω2, ω3)`.
pub fn flat_coframe() -> CartanCoframe {
    let d = OneForm::coordinate;
    let x1 = coord(0);
    let x2 = coord(1);
    let om1 = d(3).sub(&d(2).scale(&x1)).sub(&d(1).scale(&(&(&x1 * &x1) * &cst(1, 2))));
    let om2 = d(4).sub(&d(2).scale(&x2));
    let om3 = d(2).add(&d(1).scale(&x1));
    CartanCoframe { omega: [om1, om2, om3, d(0), d(1)], bar: array::from_fn(|_| OneForm::zero()) }
}

/// A gauge transform of [`flat_coframe`] with nonzero `ω̄1, ω̄2, ω̄4`:
/// a fiber scaling by `λ = 1 + x3`, `μ = 2 + x1 x2` followed by the shear
/// `ω1 ↦ ω1 + c ω2`, `ω4 ↦ ω4 + c ω5` with `c = x2 + x4²`.
pub fn gauged_flat_coframe() -> CartanCoframe {
    let base = flat_coframe();
    let [o1, o2, o3, o4, o5] = base.omega;
    let lam = &cst(1, 1) + &coord(2);
    let mu = &cst(2, 1) + &(&coord(0) * &coord(1));
    let c = &coord(1) + &(&coord(3) * &coord(3));
    let lam2mu = &(&lam * &lam) * &mu;
    let lammu2 = &(&lam * &mu) * &mu;
    let w2 = o2.scale(&lammu2);
    let w1 = o1.scale(&lam2mu).add(&w2.scale(&c));
    let w5 = o5.scale(&mu);
    let w4 = o4.scale(&lam).add(&w5.scale(&c));
    let w3 = o3.scale(&(&lam * &mu));
    let inv = |f: &RationalFunction| cst(1, 1).div_ref(f).expect("nonzero gauge factor");
    let b1 = OneForm::differential(&lam).scale(&-&inv(&lam));
    let b4 = OneForm::differential(&mu).scale(&-&inv(&mu));
    let b2 = OneForm::differential(&c).scale(&cst(-1, 1)).add(&b4.sub(&b1).scale(&c));
    let z = OneForm::zero;
    CartanCoframe { omega: [w1, w2, w3, w4, w5], bar: [b1, b2, z(), b4, z(), z(), z()] }
}

/// Frame kind check used by callers that accept either frame family.
pub fn is_cartan(frame: &Frame) -> bool {
    frame.kind == FrameKind::Cartan
}

/// `[X_i, X_j]` of the Cartan frame (1-based), for diagnostics.
pub fn cartan_bracket(frame: &Frame, i: usize, j: usize) -> VectorField {
    lie_bracket(&frame.x[i - 1], &frame.x[j - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn flat_coframes_verify() {
        for cf in [flat_coframe(), gauged_flat_coframe()] {
            let r = verify_structure_equations(&cf);
            assert!(r.ok(), "failing {:?}", r.failing());
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let cf = flat_coframe().perturb_bar(2, &OneForm::coordinate(0));
        let r = verify_structure_equations(&cf);
        assert!(r.failing().contains(&1));
    }

    #[test]
    fn cartan_frame_is_dual_and_adapted() {
        let cf = gauged_flat_coframe();
        let frame = cartan_frame(&cf).unwrap();
        for i in 0..DIM {
            for k in 0..DIM {
                let expected = if i == DIM - 1 - k { RationalFunction::one(DIM) } else { RationalFunction::zero(DIM) };
                assert_eq!(cf.omega[i].eval(&frame.x[k]), expected);
            }
        }
        let br = bracket_relations(&cf, &frame).unwrap();
        assert!(br.derived_matches_direct && br.adapted && br.x1x3_matches && br.x2x3_matches, "{br:?}");
    }

    #[test]
    fn identities_and_chain_on_gauged_flat() {
        let cf = gauged_flat_coframe();
        let frame = cartan_frame(&cf).unwrap();
        let id = cartan_identities(&cf, &frame).unwrap();
        assert!(!id.b.is_zero());
        assert!(id.b_ok() && id.b1_ok());
        let q = vec![rat(1, 2), rat(1, 3), rat(1, 5), int(1), int(0)];
        let chain = cartan_chain(&cf, &[q], PipelineOptions::default()).unwrap();
        assert!(id.pi_ok(PiForm::Expanded) && id.pi_ok(PiForm::Bracket));
        assert!(chain.ok());
    }

    #[test]
    fn cartan_coeff_round_trip() {
        let ai: [RationalFunction; 5] = array::from_fn(|i| cst(i as i64 + 1, 7));
        assert_eq!(extract_cartan_coeffs(&assemble_from_cartan_coeffs(&ai)), ai);
    }

    #[test]
    fn rescaled_frame_breaks_b1_identity() {
        let cf = gauged_flat_coframe();
        let frame = cartan_frame(&cf).unwrap();
        let x1 = frame.x[0].scale(&(&cst(1, 1) + &coord(2)));
        let adapted = crate::diffgeo::adapted_frame(&x1, &frame.x[1], crate::diffgeo::AdaptedMode::Adapted).unwrap();
        let (b, b1) = b_scalars(&structural_functions(&adapted).unwrap());
        assert_ne!(b, b1);
    }
}
