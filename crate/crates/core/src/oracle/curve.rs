//! Invariants of a curve of Lagrangian planes given in the chart
//! `Λ(t) = {(x, S_t x)}` with `σ̄((x, y), (x', y')) = −x·y' + y·x'`.
//!
//! Expansions around the diagonal are [`BiJet`]s in `(τ, s)` with
//! `t = τ + s`.  For a fixed `τ`, the planes `Λ(τ+s)` are graphs of the maps
//! `Δ → Λ(τ)`, `y ↦ (S(τ+s) − S(τ))⁻¹ y`, where `Δ = {x = 0}` and `Λ(τ)` is
//! identified with `Δ*` through `σ̄((0, y), (ξ, S_τ ξ)) = y·ξ`.

use num::{One, Signed, Zero};

use super::OracleError;
use crate::algebra::linalg::{inverse, mat_mul, Matrix};
use crate::algebra::{rat, BiJet, Jet, Rational};
use crate::fundform::CoeffJets;

/// A 2×2 matrix of univariate jets.
pub type Mat2 = [[Jet; 2]; 2];
/// A 2×2 matrix of bivariate jets.
pub type BMat2 = [[BiJet; 2]; 2];

fn mat2_vec(a: &Mat2, v: &[Jet; 2]) -> [Jet; 2] {
    std::array::from_fn(|i| &(&a[i][0] * &v[0]) + &(&a[i][1] * &v[1]))
}

fn mat2_det(a: &Mat2) -> Jet {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

fn mat2_inv(a: &Mat2) -> Result<Mat2, OracleError> {
    let di = mat2_det(a).inv().map_err(|_| OracleError::NotTransversal)?;
    Ok([[&a[1][1] * &di, -&(&a[0][1] * &di)], [-&(&a[1][0] * &di), &a[0][0] * &di]])
}

fn mat2_map(a: &Mat2, f: impl Fn(&Jet) -> Jet) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&a[i][j])))
}

fn bmat_mul(a: &BMat2, b: &BMat2) -> BMat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]))))
}

/// `true` if `S_t` is symmetric at every stored order.
pub fn is_symmetric(s: &Mat2) -> bool {
    s[0][1] == s[1][0]
}

/// Vanishing order of `det S_t` (the weight of the curve, since `S_0 = 0`).
pub fn weight(s: &Mat2) -> Result<usize, OracleError> {
    mat2_det(s).valuation().ok_or(OracleError::NotAmple)
}

/// Rank-one factorisation `Ṡ = k ℓ ℓᵀ` of the velocity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Velocity {
    /// `k(t)`, a unit jet.
    pub k: Jet,
    /// `ℓ(t)` with one component identically 1.
    pub ell: [Jet; 2],
    /// Sign of `k(0)` (the velocity sign, constant near `t = 0`).
    pub sign: i32,
    /// `det Ṡ ≡ 0` at every stored order and `Ṡ(0) ≠ 0`.
    pub rank_one: bool,
}

/// Factor the velocity `Ṡ` of the curve.
pub fn velocity(s: &Mat2) -> Result<Velocity, OracleError> {
    let sd = mat2_map(s, Jet::deriv);
    let rank_one = mat2_det(&sd).is_zero();
    let one = Jet::constant(sd[0][0].order(), Rational::one());
    let (k, ell) = if !sd[0][0].value().is_zero() {
        let r = sd[0][1].div(&sd[0][0])?;
        (sd[0][0].clone(), [one, r])
    } else if !sd[1][1].value().is_zero() {
        let r = sd[0][1].div(&sd[1][1])?;
        (sd[1][1].clone(), [r, one])
    } else {
        return Err(OracleError::VelocityRank);
    };
    let sign = if k.value().is_positive() { 1 } else { -1 };
    Ok(Velocity { k, ell, sign, rank_one })
}

/// Expansion of `(S(τ+s) − S(τ))⁻¹`.
pub fn chord_inverse(s: &Mat2, nt: usize, ns: usize) -> Result<BMat2, OracleError> {
    let m: BMat2 = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let shifted = BiJet::shifted(&s[i][j], nt, ns).expect("order budget checked by caller");
            shifted.sub(&BiJet::from_tau(s[i][j].truncate(nt), ns + 1)).normalize()
        })
    });
    let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])).normalize();
    let di = det.inv().map_err(|_| OracleError::NotAmple)?;
    let adj = [[m[1][1].clone(), m[0][1].neg()], [m[1][0].neg(), m[0][0].clone()]];
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| adj[i][j].mul(&di))))
}

fn check_budget(s: &Mat2, nt: usize, ns: usize) -> Result<(), OracleError> {
    let have = s[0][0].order();
    if nt + ns > have || ns < 7 {
        return Err(OracleError::InsufficientOrder { needed: nt + ns.max(7), have });
    }
    Ok(())
}

/// `√(1 + x)` for a bivariate jet `x` of positive `s`-valuation.
fn sqrt_one_plus(x: &BiJet, len: usize, nt: usize) -> BiJet {
    let mut acc = BiJet::from_tau(Jet::constant(nt, Rational::one()), len);
    let mut pw = acc.clone();
    let mut coef = Rational::one();
    for n in 1..len {
        // binomial(1/2, n) = binomial(1/2, n-1) · (1/2 − n + 1)/n
        coef = coef * (rat(1, 2) - Rational::from_integer((n as i64 - 1).into())) / Rational::from_integer((n as i64).into());
        pw = pw.mul(x);
        acc = acc.add(&pw.scale(&coef));
    }
    acc
}

/// Laurent coefficients of the velocity vector and the chord inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalJet {
    /// `ẽ1(τ), ẽ2(τ)` as `ξ`-coordinates in `Λ(τ)` (rows are the vectors);
    /// the true basis is `e_i = √|k(τ)| · ẽ_i`.
    pub xi: [[Jet; 2]; 2],
    /// Free term `T0(τ)` of `(S(τ+s) − S(τ))⁻¹`.
    pub t0: Mat2,
    /// `S(τ)` truncated to the working τ-order.
    pub s_tau: Mat2,
    /// Velocity data.
    pub velocity: Velocity,
    /// Valuation in `s` of the velocity vector (expected −2).
    pub pole_order: i32,
}

/// Canonical basis `(e1, e2)` of `Λ(τ)` as jets in `τ`, from
/// `w(τ+s, τ) = e1 s⁻² + e2 s⁻¹ + O(1)`.
pub fn canonical_basis(s: &Mat2, nt: usize, ns: usize) -> Result<CanonicalJet, OracleError> {
    check_budget(s, nt, ns)?;
    let vel = velocity(s)?;
    if !vel.rank_one {
        return Err(OracleError::VelocityRank);
    }
    let minv = chord_inverse(s, nt, ns)?;
    let ns_l = ns.min(vel.k.order() - nt);
    let ell: [BiJet; 2] = std::array::from_fn(|i| BiJet::shifted(&vel.ell[i], nt, ns_l).expect("budget"));
    let ratio = BiJet::shifted(&vel.k, nt, ns_l).expect("budget").mul_tau(&vel.k.truncate(nt).inv()?);
    let x = ratio.sub(&BiJet::from_tau(Jet::constant(nt, Rational::one()), ns_l + 1)).normalize();
    let root = if x.c_is_zero() { BiJet::from_tau(Jet::constant(nt, Rational::one()), ns_l + 1) } else { sqrt_one_plus(&x, ns_l + 1, nt) };
    let w: [BiJet; 2] = std::array::from_fn(|i| minv[i][0].mul(&ell[0]).add(&minv[i][1].mul(&ell[1])).mul(&root));
    let pole_order = w.iter().map(|b| b.normalize().val()).min().unwrap();
    if pole_order != -2 {
        return Err(OracleError::PoleOrder(pole_order));
    }
    let mut xi: [[Jet; 2]; 2] = [[w[0].coeff(-2)?, w[1].coeff(-2)?], [w[0].coeff(-1)?, w[1].coeff(-1)?]];
    // sign normalisation: first nonzero component of e1(0) positive
    let lead = if !xi[0][0].value().is_zero() { xi[0][0].value().clone() } else { xi[0][1].value().clone() };
    if lead.is_negative() {
        xi = std::array::from_fn(|i| std::array::from_fn(|j| -&xi[i][j]));
    }
    let t0: Mat2 = std::array::from_fn(|i| std::array::from_fn(|j| minv[i][j].coeff(0).expect("budget")));
    let s_tau = mat2_map(s, |j| j.truncate(nt));
    let cj = CanonicalJet { xi, t0, s_tau, velocity: vel, pole_order };
    let span: Mat2 = [[cj.xi[0][0].clone(), cj.xi[1][0].clone()], [cj.xi[0][1].clone(), cj.xi[1][1].clone()]];
    if mat2_det(&span).value().is_zero() {
        return Err(OracleError::BasisDoesNotSpan);
    }
    Ok(cj)
}

/// How the canonical pair `(e1, e2)` is completed to a Darboux frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Dual basis inside the derivative curve `Λ⁰(τ)`.
    DerivativeCurve,
    /// Dual basis inside the fixed transversal plane `Δ = {x = 0}`.
    Transversal,
    /// Derivative-curve completion shifted by `f_i ↦ f_i + Σ_j μ_ij e_j`
    /// with a constant symmetric `μ`.
    Shifted([[Rational; 2]; 2]),
}

/// A Darboux frame `(ẽ1, ẽ2, f̃1, f̃2)` as rows of 4-component jets in the
/// `(x, y)` coordinates of `W`.
pub type Frame4 = Matrix<Jet>;

/// Build the frame for a completion (in the scaled normalisation `ẽ`).
pub fn darboux_frame(c: &CanonicalJet, completion: &Completion) -> Result<Frame4, OracleError> {
    let eps = Rational::from_integer(c.velocity.sign.into());
    // columns of Ξ are ξ_1, ξ_2
    let big_xi: Mat2 = [[c.xi[0][0].clone(), c.xi[1][0].clone()], [c.xi[0][1].clone(), c.xi[1][1].clone()]];
    let xi_inv = mat2_inv(&big_xi)?;
    // Y = ε Ξ^{-T}: columns y_i with y_i · ξ_j = ε δ_ij
    let y: Mat2 = std::array::from_fn(|i| std::array::from_fn(|j| xi_inv[j][i].scale(&eps)));
    let ycol = |i: usize| [y[0][i].clone(), y[1][i].clone()];
    let evec = |j: usize| {
        let xi = [c.xi[j][0].clone(), c.xi[j][1].clone()];
        let sy = mat2_vec(&c.s_tau, &xi);
        vec![xi[0].clone(), xi[1].clone(), sy[0].clone(), sy[1].clone()]
    };
    let fvec = |i: usize| -> Vec<Jet> {
        let yi = ycol(i);
        match completion {
            Completion::Transversal => {
                let z = Jet::zero(yi[0].order());
                vec![z.clone(), z, yi[0].clone(), yi[1].clone()]
            }
            _ => {
                let tx = mat2_vec(&c.t0, &yi);
                let sty = mat2_vec(&c.s_tau, &tx);
                vec![tx[0].clone(), tx[1].clone(), &yi[0] + &sty[0], &yi[1] + &sty[1]]
            }
        }
    };
    let mut rows = vec![evec(0), evec(1), fvec(0), fvec(1)];
    if let Completion::Shifted(mu) = completion {
        for i in 0..2 {
            for j in 0..2 {
                let ej = rows[j].clone();
                for (slot, v) in rows[2 + i].iter_mut().zip(&ej) {
                    *slot = &*slot + &v.scale(&mu[i][j]);
                }
            }
        }
    }
    Ok(rows)
}

/// `σ̄` on 4-component jet vectors.
pub fn sbar_jets(a: &[Jet], b: &[Jet]) -> Jet {
    let t1 = &(&a[2] * &b[0]) + &(&a[3] * &b[1]);
    let t2 = &(&a[0] * &b[2]) + &(&a[1] * &b[3]);
    &t1 - &t2
}

/// Connection matrix `R` with `F' = R F` for the frame normalised by
/// `e = √|k| ẽ`, `f = f̃ / √|k|`, computed without square roots.
pub fn connection(frame: &Frame4, vel: &Velocity) -> Result<Matrix<Jet>, OracleError> {
    let d: Matrix<Jet> = frame.iter().map(|row| row.iter().map(Jet::deriv).collect()).collect();
    let inv = inverse(frame)?;
    let rt = mat_mul(&d, &inv);
    let k = vel.k.truncate(rt[0][0].order());
    let kinv = k.inv()?;
    let half_log = vel.k.deriv().div(&vel.k)?.scale(&rat(1, 2));
    let mut r = rt.clone();
    for i in 0..4 {
        for j in 0..4 {
            let (ie, je) = (i < 2, j < 2);
            r[i][j] = match (ie, je) {
                (true, false) => &rt[i][j] * &k,
                (false, true) => &rt[i][j] * &kinv,
                _ => rt[i][j].clone(),
            };
            if i == j {
                r[i][j] = if ie { &r[i][j] + &half_log } else { &r[i][j] - &half_log };
            }
        }
    }
    Ok(r)
}

/// Result of checking the canonical structural equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameEquationReport {
    /// `ρ(τ) = 4 R[e2][e1]`.
    pub rho: Jet,
    /// `A(τ)` recovered from the `(f1, e1)` entry.
    pub density: Jet,
    /// Entries violating the pattern, as `(row, col)` pairs.
    pub failures: Vec<(usize, usize)>,
    /// Order to which the identities were checked.
    pub checked_order: usize,
}

impl FrameEquationReport {
    /// `true` when every entry matches.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compare `R` with the pattern
/// `(0,3,0,0; ρ/4,0,0,4; ·,−7ρ'/16,0,−ρ/4; −7ρ'/16,−9ρ/4,−3,0)`.
pub fn frame_equation_check(r: &Matrix<Jet>) -> Result<FrameEquationReport, OracleError> {
    let rho = r[1][0].scale(&rat(4, 1));
    let n = rho.order().saturating_sub(1);
    let drho = rho.deriv();
    let c = |v: i64| Jet::constant(n, Rational::from_integer(v.into()));
    let z = || Jet::zero(n);
    let expected: [[Option<Jet>; 4]; 4] = [
        [Some(z()), Some(c(3)), Some(z()), Some(z())],
        [Some(rho.scale(&rat(1, 4))), Some(z()), Some(z()), Some(c(4))],
        [None, Some(drho.scale(&rat(-7, 16))), Some(z()), Some(rho.scale(&rat(-1, 4)))],
        [Some(drho.scale(&rat(-7, 16))), Some(rho.scale(&rat(-9, 4))), Some(c(-3)), Some(z())],
    ];
    let mut failures = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if let Some(e) = &expected[i][j] {
                if r[i][j].truncate(n) != e.truncate(n) {
                    failures.push((i, j));
                }
            }
        }
    }
    // R[f1][e1] = −(35/36 A − ρ²/8 + ρ''/16)
    let rr = &rho * &rho;
    let inner = &(&r[2][0].scale(&rat(-1, 1)) + &rr.scale(&rat(1, 8))) - &rho.deriv().deriv().scale(&rat(1, 16));
    let density = inner.scale(&rat(36, 35));
    Ok(FrameEquationReport { rho, density, failures, checked_order: n })
}

/// Forced-entry check and extraction of `a21, a22, a31, a41, a42` from the
/// connection of an arbitrary Darboux completion.
pub fn moving_frame_coeffs(r: &Matrix<Jet>) -> Result<CoeffJets, OracleError> {
    let n = r[0][0].order();
    let c = |v: i64| Jet::constant(n, Rational::from_integer(v.into()));
    let z = Jet::zero(n);
    let a21 = r[1][0].clone();
    let a22 = r[1][1].clone();
    let a31 = r[2][0].clone();
    let a41 = r[2][1].clone();
    let a42 = r[3][1].clone();
    let forced = [
        (0, 0, z.clone()),
        (0, 1, c(3)),
        (0, 2, z.clone()),
        (0, 3, z.clone()),
        (1, 2, z.clone()),
        (1, 3, c(4)),
        (2, 2, z.clone()),
        (2, 3, -&a21),
        (3, 0, a41.clone()),
        (3, 2, c(-3)),
        (3, 3, -&a22),
    ];
    for (i, j, e) in forced {
        if r[i][j] != e {
            return Err(OracleError::ForcedEntry { row: i + 1, col: j + 1 });
        }
    }
    Ok(CoeffJets { a21, a22, a31, a41, a42 })
}

/// The generating function `g(τ, τ+s) = tr(Ṡ(τ+s) M⁻¹ Ṡ(τ) M⁻¹) − k/s²`
/// with `M = S(τ+s) − S(τ)` and `k` the weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFunction {
    /// Regular part (`s`-valuation ≥ 0).
    pub g: BiJet,
}

impl GFunction {
    /// The diagonal value `g(τ, τ)`: the Ricci curvature.
    pub fn diagonal(&self) -> Result<Jet, OracleError> {
        Ok(self.g.coeff(0)?)
    }
}

/// Compute the generating function to τ-order `nt` and s-order `ns`.
pub fn g_function(s: &Mat2, weight: usize, nt: usize, ns: usize) -> Result<GFunction, OracleError> {
    check_budget(s, nt, ns)?;
    let minv = chord_inverse(s, nt, ns)?;
    let sd = mat2_map(s, Jet::deriv);
    let ns_d = ns.min(sd[0][0].order() - nt);
    let sd_shift: BMat2 = std::array::from_fn(|i| std::array::from_fn(|j| BiJet::shifted(&sd[i][j], nt, ns_d).expect("budget")));
    let sd_tau: BMat2 = std::array::from_fn(|i| std::array::from_fn(|j| BiJet::from_tau(sd[i][j].truncate(nt), ns_d + 1)));
    let p = bmat_mul(&bmat_mul(&bmat_mul(&sd_shift, &minv), &sd_tau), &minv);
    let tr = p[0][0].add(&p[1][1]);
    let pole = BiJet::monomial(Jet::constant(nt, Rational::from_integer((weight as i64).into())), -2, tr.len() + 8);
    let g = tr.sub(&pole).normalize();
    if g.val() < 0 && !(g.val()..0).all(|k| g.coeff(k).map(|j| j.is_zero()).unwrap_or(false)) {
        return Err(OracleError::SingularG);
    }
    let top = g.top();
    if top < 0 {
        return Err(OracleError::InsufficientOrder { needed: 0, have: 0 });
    }
    let coeffs: Vec<Jet> = (0..=top).map(|k| g.coeff(k)).collect::<Result<_, _>>()?;
    Ok(GFunction { g: BiJet::new(0, coeffs) })
}

/// `g(0, s)` as a univariate series in `s`.
pub fn g_at_origin(s: &Mat2, weight: usize) -> Result<Jet, OracleError> {
    let ns = s[0][0].order();
    let g = g_function(s, weight, 0, ns)?;
    let (_, coeffs) = g.g.at_tau_zero();
    let top = coeffs.len() - 1;
    Ok(Jet::from_coeffs(coeffs, top))
}

/// Compose every entry with a reparametrisation `φ` (`φ(0) = 0`).
pub fn reparametrize(s: &Mat2, phi: &Jet) -> Result<Mat2, OracleError> {
    let mut out = s.clone();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = s[i][j].compose(phi)?;
        }
    }
    Ok(out)
}

/// Schwarzian `𝕊(φ) = φ'''/(2φ') − ¾(φ''/φ')²`.
pub fn schwarzian(phi: &Jet) -> Result<Jet, OracleError> {
    let d1 = phi.deriv();
    let d2 = d1.deriv();
    let d3 = d2.deriv();
    let q = d2.div(&d1)?;
    Ok(&d3.div(&d1)?.scale(&rat(1, 2)) - &(&q * &q).scale(&rat(3, 4)))
}

/// Jet of the projective parametrisation `φ` with `φ(0)=0, φ'(0)=1, φ''(0)=0`
/// solving `φ''' = 3/2 φ''²/φ' − 3/2 φ'³ ρ(φ)`, to degree `deg` (padded to `order`).
pub fn projective_parameter(rho: &Jet, deg: usize, order: usize) -> Result<Jet, OracleError> {
    let mut c = vec![Rational::zero(), Rational::one(), Rational::zero()];
    for n in 3..=deg {
        let phi = Jet::from_coeffs(c.clone(), n - 1);
        let rp = rho.compose(&phi.truncate(rho.order().min(n - 1)))?;
        let p1 = phi.deriv();
        let p2 = p1.deriv();
        let t1 = (&p2 * &p2).div(&p1)?.scale(&rat(3, 2));
        let t2 = (&(&(&p1 * &p1) * &p1) * &rp).scale(&rat(3, 2));
        let rhs = &t1 - &t2;
        if rhs.order() < n - 3 {
            return Err(OracleError::InsufficientOrder { needed: n - 3, have: rhs.order() });
        }
        let k = (n * (n - 1) * (n - 2)) as i64;
        c.push(rhs.coeff(n - 3) / Rational::from_integer(k.into()));
    }
    Ok(Jet::from_coeffs(c, order))
}

/// `A(0)` through the projective parametrisation: the `s²` coefficient of
/// `g(0, s)` computed in a projective parameter (whose derivative at 0 is 1).
pub fn projective_density(s: &Mat2, rho: &Jet, weight: usize) -> Result<(Rational, Rational), OracleError> {
    // only the 5-jet of φ influences the s² coefficient at the origin
    let phi = projective_parameter(rho, 5.min(rho.order() + 3), s[0][0].order())?;
    let sp = reparametrize(s, &phi)?;
    let g0 = g_at_origin(&sp, weight)?;
    if g0.order() < 2 {
        return Err(OracleError::InsufficientOrder { needed: 2, have: g0.order() });
    }
    Ok((g0.coeff(0).clone(), g0.coeff(2).clone()))
}

/// Check the reparametrisation rule of `g` at the origin:
/// `g_φ(0, s) = φ'(0)φ'(s) g(0, φ(s)) + k(φ'(0)φ'(s)/φ(s)² − 1/s²)`.
///
/// Returns the order to which both sides were compared, or `None` if they differ.
pub fn check_chain_rule(s: &Mat2, phi: &Jet, weight: usize) -> Result<Option<usize>, OracleError> {
    let g = g_at_origin(s, weight)?;
    let sp = reparametrize(s, phi)?;
    let gp = g_at_origin(&sp, weight)?;
    let d1 = phi.deriv();
    let d10 = d1.value().clone();
    let comp = g.compose(&phi.truncate(g.order()))?;
    let first = (&d1 * &comp).scale(&d10);
    // φ(s) = s ψ(s): k(φ'(0)φ'(s)/ψ(s)² − 1)/s²
    let psi = Jet::from_coeffs(phi.coeffs()[1..].to_vec(), phi.order() - 1);
    let num = &d1.scale(&d10).div(&(&psi * &psi))? - &Jet::constant(psi.order(), Rational::one());
    if num.coeff(0).is_zero() && num.coeff(1).is_zero() {
        let second = Jet::from_coeffs(num.coeffs()[2..].to_vec(), num.order() - 2).scale(&Rational::from_integer((weight as i64).into()));
        let rhs = &first + &second;
        let n = rhs.order().min(gp.order());
        Ok((rhs.truncate(n) == gp.truncate(n)).then_some(n))
    } else {
        Ok(None)
    }
}

/// Check `ρ_φ = φ'² ρ(φ) + (k/3) 𝕊(φ)` as τ-jets.
///
/// Returns the order to which both sides were compared, or `None` if they differ.
pub fn check_rho_rule(s: &Mat2, phi: &Jet, weight: usize, nt: usize) -> Result<Option<usize>, OracleError> {
    let ns = s[0][0].order() - nt;
    let rho = g_function(s, weight, nt, ns)?.diagonal()?;
    let sp = reparametrize(s, phi)?;
    let rho_p = g_function(&sp, weight, nt, ns)?.diagonal()?;
    let d1 = phi.deriv();
    let comp = rho.compose(&phi.truncate(rho.order()))?;
    let lhs = &(&(&d1 * &d1) * &comp) + &schwarzian(phi)?.scale(&rat(weight as i64, 3));
    let n = lhs.order().min(rho_p.order());
    Ok((lhs.truncate(n) == rho_p.truncate(n)).then_some(n))
}

trait BiJetExt {
    fn c_is_zero(&self) -> bool;
}

impl BiJetExt for BiJet {
    fn c_is_zero(&self) -> bool {
        (self.val()..=self.top()).all(|k| self.coeff(k).map(|j| j.is_zero()).unwrap_or(true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn jet(c: &[i64], n: usize) -> Jet {
        Jet::from_ints(c, n)
    }

    #[test]
    fn synthetic_weight() {
        let n = 6;
        let s = [[jet(&[0, 1], n), Jet::zero(n)], [Jet::zero(n), jet(&[0, 0, 0, 1], n)]];
        assert_eq!(weight(&s).unwrap(), 4);
        assert!(is_symmetric(&s));
    }

    #[test]
    fn schwarzian_of_mobius_vanishes() {
        // t/(1 - t)
        let phi = Jet::from_ints(&[0, 1, 1, 1, 1, 1, 1, 1], 7);
        assert!(schwarzian(&phi).unwrap().is_zero());
        let quad = Jet::from_ints(&[0, 1, 1], 6);
        assert_eq!(*schwarzian(&quad).unwrap().value(), -int(3));
    }
}
