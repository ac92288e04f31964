//! Independent computation of `ρ` and `A` from the Jacobi curve of an
//! abnormal extremal, without the closed-form formulas.
//!
//! The curve is built by linearising the flow of the characteristic field
//! on the cotangent bundle ([`lift`]), reduced to a curve of Lagrangian
//! planes in a 4-dimensional symplectic space, and then analysed by three
//! routes ([`curve`]): the canonical moving frame, the moving-frame
//! extraction from an arbitrary Darboux completion, and the generating
//! function of the infinitesimal cross-ratio in a projective parameter.

pub mod curve;
pub mod lift;

use num::Zero;
use thiserror::Error;

use crate::algebra::{rat, AlgebraError, Jet, Rational};
use crate::diffgeo::{Frame, GeometryError};
use crate::fundform::{moving_frame_extract, FundformError};

pub use curve::{CanonicalJet, Completion, FrameEquationReport, GFunction, Mat2, Velocity};
pub use lift::{curve_jets, CotangentLift, CurveChart, ReducedSpace, SigmaSelfTest};

/// Errors raised by the Jacobi-curve oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// A frame or coframe coefficient has a pole at the base point.
    #[error("pole at the base point")]
    Pole,
    /// The covector `(u4, u5)` is zero.
    #[error("the covector (u4, u5) must be nonzero")]
    ZeroCovector,
    /// The characteristic field leaves `(D²)^⊥` in the given coordinate.
    #[error("characteristic field is not tangent to the annihilator (component u{index})")]
    NotTangent { index: usize },
    /// The reduced space is not 4-dimensional or `σ̄` degenerates on it.
    #[error("reduced symplectic space is degenerate")]
    DegenerateReducedSpace,
    /// A vector expected in `ker σ|` was not found there.
    #[error("vector not in the kernel of the restricted form")]
    NotInKernel,
    /// A plane expected to be Lagrangian is not.
    #[error("plane is not Lagrangian")]
    NotLagrangian,
    /// A plane expected to be transversal to another is not.
    #[error("planes are not transversal")]
    NotTransversal,
    /// The velocity `Ṡ` is not of rank one at the origin.
    #[error("velocity of the curve is not of rank one")]
    VelocityRank,
    /// `det(S(τ+s) − S(τ))` vanishes identically to the stored order.
    #[error("curve is not ample at the stored order")]
    NotAmple,
    /// More terms of the curve are needed.
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    /// The velocity vector has a pole of unexpected order.
    #[error("velocity vector has a pole of order {0}, expected 2")]
    PoleOrder(i32),
    /// The canonical vectors do not span the plane.
    #[error("canonical vectors do not span the plane")]
    BasisDoesNotSpan,
    /// An entry of the connection matrix violates its forced value.
    #[error("connection entry ({row}, {col}) violates the forced pattern")]
    ForcedEntry { row: usize, col: usize },
    /// The generating function has unexpected singular terms.
    #[error("generating function has unexpected singular terms")]
    SingularG,
    /// Two internal computation routes disagree.
    #[error("internal routes disagree on {what}")]
    PathDisagreement { what: String },
    /// Underlying algebra failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// Underlying geometry failure.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// Failure in the moving-frame extraction.
    #[error(transparent)]
    Fundform(#[from] Box<FundformError>),
}

impl From<FundformError> for OracleError {
    fn from(e: FundformError) -> Self {
        OracleError::Fundform(Box::new(e))
    }
}

/// Truncation orders used by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Order of the jet of `S_t` (at least 12).
    pub order: usize,
    /// τ-order for the canonical frame (`ρ` and `A` as τ-jets need ≥ 4).
    pub tau_order: usize,
    /// τ-order for the generating function route.
    pub g_tau_order: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { order: 12, tau_order: 4, g_tau_order: 3 }
    }
}

/// Everything the oracle computed at one point `(q0; u4, u5)`.
#[derive(Clone, Debug)]
pub struct OracleReport {
    /// The reduced curve `S_t`.
    pub chart: CurveChart,
    /// `S_t` is symmetric.
    pub symmetric: bool,
    /// Vanishing order of `det S_t` (4 for an ample curve of weight 4).
    pub weight: usize,
    /// Velocity factorisation.
    pub velocity: Velocity,
    /// Structural-equation check of the canonical frame.
    pub frame_equations: FrameEquationReport,
    /// `ρ(0)` and `A(0)` from the canonical frame.
    pub canonical: (Rational, Rational),
    /// `ρ(0)` and `A(0)` from an arbitrary completion via the moving-frame lemma.
    pub lemma: (Rational, Rational),
    /// `ρ(0)` from the generating function and `A(0)` from the projective parameter.
    pub projective: (Rational, Rational),
    /// `ρ(τ)` from the generating function.
    pub rho_g: Jet,
    /// The lemma extraction gives the same jets for a shifted completion.
    pub completion_independent: bool,
}

impl OracleReport {
    /// The agreed `(ρ, A)` at the base point, or the first disagreement.
    pub fn consensus(&self) -> Result<(Rational, Rational), OracleError> {
        let (r, a) = &self.canonical;
        for (name, (r2, a2)) in [("lemma route", &self.lemma), ("projective route", &self.projective)] {
            if r2 != r {
                return Err(OracleError::PathDisagreement { what: format!("rho ({name})") });
            }
            if a2 != a {
                return Err(OracleError::PathDisagreement { what: format!("A ({name})") });
            }
        }
        if !self.frame_equations.ok() {
            return Err(OracleError::PathDisagreement { what: "canonical structure equation".into() });
        }
        if !self.completion_independent {
            return Err(OracleError::PathDisagreement { what: "completion independence".into() });
        }
        Ok((r.clone(), a.clone()))
    }
}

/// Run every oracle route at `(q0; u4, u5)` and collect the results.
pub fn oracle_report(frame: &Frame, q0: &[Rational], u4: &Rational, u5: &Rational, opts: OracleOptions) -> Result<OracleReport, OracleError> {
    let lift = CotangentLift::new(frame)?;
    let chart = curve_jets(&lift, q0, u4, u5, opts.order)?;
    report_from_chart(chart, opts)
}

/// Analyse an already built curve.
pub fn report_from_chart(chart: CurveChart, opts: OracleOptions) -> Result<OracleReport, OracleError> {
    let s = chart.s.clone();
    let order = s[0][0].order();
    if order < opts.tau_order + 8 || order < opts.g_tau_order + 9 {
        return Err(OracleError::InsufficientOrder { needed: (opts.tau_order + 8).max(opts.g_tau_order + 9), have: order });
    }
    let symmetric = curve::is_symmetric(&s);
    let weight = curve::weight(&s)?;
    let canon = curve::canonical_basis(&s, opts.tau_order, order - opts.tau_order)?;
    let velocity = canon.velocity.clone();

    let r_can = curve::connection(&curve::darboux_frame(&canon, &Completion::DerivativeCurve)?, &velocity)?;
    let frame_equations = curve::frame_equation_check(&r_can)?;
    let canonical = (frame_equations.rho.value().clone(), frame_equations.density.value().clone());

    let r_tr = curve::connection(&curve::darboux_frame(&canon, &Completion::Transversal)?, &velocity)?;
    let (rho_l, a_l) = moving_frame_extract(&curve::moving_frame_coeffs(&r_tr)?)?;
    let mu = [[rat(1, 2), rat(-1, 1)], [rat(-1, 1), rat(3, 1)]];
    let r_mu = curve::connection(&curve::darboux_frame(&canon, &Completion::Shifted(mu))?, &velocity)?;
    let (rho_m, a_m) = moving_frame_extract(&curve::moving_frame_coeffs(&r_mu)?)?;
    let completion_independent = rho_l == rho_m && a_l == a_m;
    let lemma = (rho_l.value().clone(), a_l.value().clone());

    let rho_g = curve::g_function(&s, weight, opts.g_tau_order, order - opts.g_tau_order)?.diagonal()?;
    let (rho_proj, a_proj) = curve::projective_density(&s, &rho_g, weight)?;
    // a projective parameter annihilates the Ricci curvature
    if !rho_proj.is_zero() {
        return Err(OracleError::PathDisagreement { what: "rho (projective parameter)".into() });
    }
    Ok(OracleReport {
        chart,
        symmetric,
        weight,
        velocity,
        frame_equations,
        canonical,
        lemma,
        projective: (rho_g.value().clone(), a_proj),
        rho_g,
        completion_independent,
    })
}

/// `(ρ, A)` at `(q0; u4, u5)` computed by the oracle; fails if the internal
/// routes disagree.
pub fn oracle_invariants(frame: &Frame, q0: &[Rational], u4: &Rational, u5: &Rational, opts: OracleOptions) -> Result<(Rational, Rational), OracleError> {
    oracle_report(frame, q0, u4, u5, opts)?.consensus()
}

/// Recompute at a higher order and check that the invariants are unchanged.
pub fn order_stable(frame: &Frame, q0: &[Rational], u4: &Rational, u5: &Rational, low: usize, high: usize) -> Result<bool, OracleError> {
    let a = oracle_invariants(frame, q0, u4, u5, OracleOptions { order: low, ..Default::default() })?;
    let b = oracle_invariants(frame, q0, u4, u5, OracleOptions { order: high, ..Default::default() })?;
    Ok(a == b)
}

/// Check the reparametrisation rules of the generating function and of `ρ`
/// for the polynomial reparametrisation with coefficients `phi`
/// (`phi[0]` is the linear coefficient, nonzero).
pub fn reparametrization_check(chart: &CurveChart, phi: &[Rational], opts: OracleOptions) -> Result<bool, OracleError> {
    let s = &chart.s;
    let order = s[0][0].order();
    if phi.is_empty() || phi[0].is_zero() {
        return Err(OracleError::InsufficientOrder { needed: 1, have: 0 });
    }
    let mut c = vec![Rational::zero()];
    c.extend(phi.iter().cloned());
    let phi = Jet::from_coeffs(c, order);
    let weight = curve::weight(s)?;
    let chain = curve::check_chain_rule(s, &phi, weight)?;
    let rho = curve::check_rho_rule(s, &phi, weight, opts.g_tau_order)?;
    Ok(chain.is_some() && rho.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Vars};
    use crate::diffgeo::{adapted_frame, AdaptedMode, VectorField};

    fn monge(f: &str) -> Frame {
        let v = Vars::new(&["x", "y", "p", "q", "z"]);
        let x1 = VectorField::parse(&["0", "0", "0", "1", "0"], &v).unwrap();
        let x2 = VectorField::parse(&["1", "p", "q", "0", f], &v).unwrap();
        adapted_frame(&x1, &x2, AdaptedMode::Adapted).unwrap()
    }

    #[test]
    fn cubic_model_values() {
        let frame = monge("q^3");
        let q = vec![int(0), int(0), int(0), int(1), int(0)];
        let rep = oracle_report(&frame, &q, &int(0), &int(1), OracleOptions::default()).unwrap();
        eprintln!("{:?} {:?} {:?} {:?}", rep.canonical, rep.lemma, rep.projective, rep.frame_equations.failures);
        assert!(rep.symmetric);
        assert_eq!(rep.weight, 4);
        assert_eq!(rep.consensus().unwrap(), (rat(-8, 15), rat(8, 125)));
    }

    #[test]
    fn quartic_and_generic_models() {
        let q = vec![int(0), int(0), int(0), int(1), int(0)];
        let got = oracle_invariants(&monge("q^4"), &q, &int(0), &int(1), OracleOptions::default()).unwrap();
        assert_eq!(got, (rat(-4, 3), rat(11, 35)));
        let q = vec![rat(1, 2), rat(1, 3), int(0), int(1), int(0)];
        let got = oracle_invariants(&monge("q^3 + q^2*y"), &q, &int(1), &int(2), OracleOptions::default()).unwrap();
        assert_eq!(got, (rat(-169, 100), rat(793557, 1120000)));
    }

    #[test]
    fn reparametrization_rules_hold() {
        let frame = monge("q^3 + q^2*y");
        let q = vec![rat(1, 2), rat(1, 3), int(0), int(1), int(0)];
        let rep = oracle_report(&frame, &q, &int(1), &int(2), OracleOptions::default()).unwrap();
        let phi = [rat(2, 1), rat(-1, 3), rat(1, 2), int(0), rat(5, 7)];
        assert!(reparametrization_check(&rep.chart, &phi, OracleOptions::default()).unwrap());
        assert!(rep.chart.self_test.hamiltonian && rep.chart.self_test.frame_expression);
    }

    #[test]
    fn stable_under_order_increase() {
        let q = vec![int(0), int(0), int(0), int(1), int(0)];
        assert!(order_stable(&monge("q^3"), &q, &int(0), &int(1), 12, 14).unwrap());
    }
}
