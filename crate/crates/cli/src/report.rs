//! Report document written by every subcommand (schema `g235-report/1`).
//!
//! Exact rationals are always serialised as `"p/q"` strings; symbolic
//! coefficients are expression texts in the model's coordinate names.

use serde::Serialize;

/// Schema tag of the report document.
pub const REPORT_SCHEMA: &str = "g235-report/1";

/// Top-level report.
#[derive(Debug, Serialize)]
pub struct Report {
    /// Always [`REPORT_SCHEMA`].
    pub schema: &'static str,
    /// Subcommand that produced the report.
    pub command: String,
    /// Model identification.
    pub model: ModelInfo,
    /// Options in effect.
    pub options: OptionsInfo,
    /// Symbolic results that do not depend on a point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<Symbolic>,
    /// Per-point results in input order.
    pub points: Vec<PointReport>,
    /// Cartan-side results.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<CartanSection>,
    /// Every verdict evaluated, in evaluation order.
    pub verdicts: Vec<Verdict>,
    /// Conjunction of all verdicts.
    pub pass: bool,
}

/// Model identification.
#[derive(Debug, Serialize)]
pub struct ModelInfo {
    /// Label from the model file.
    pub name: String,
    /// SHA-256 of the model file bytes.
    pub fingerprint: String,
    /// Coordinate names.
    pub coordinates: Vec<String>,
}

/// Options in effect.
#[derive(Debug, Serialize)]
pub struct OptionsInfo {
    /// `adapted` or `strongly-adapted`.
    pub mode: String,
    /// Jacobi-curve jet order.
    pub oracle_order: usize,
    /// τ-order of the canonical frame.
    pub tau_order: usize,
}

/// One named pass/fail verdict.
#[derive(Debug, Serialize)]
pub struct Verdict {
    /// What was checked.
    pub name: String,
    /// Outcome.
    pub pass: bool,
}

/// Coefficient of `u4^a u5^b`.
#[derive(Debug, Serialize)]
pub struct FiberTerm {
    /// Power of `u4`.
    pub u4: u8,
    /// Power of `u5`.
    pub u5: u8,
    /// Coefficient (expression text).
    pub coeff: String,
}

/// A nonzero structural function `c_{ji}^k`.
#[derive(Debug, Serialize)]
pub struct StructEntry {
    /// `j` (1-based).
    pub j: usize,
    /// `i` (1-based).
    pub i: usize,
    /// `k` (1-based).
    pub k: usize,
    /// Value (expression text).
    pub value: String,
}

/// Point-independent symbolic results.
#[derive(Debug, Default, Serialize)]
pub struct Symbolic {
    /// Adapted frame: five fields, five component texts each.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<String>>>,
    /// Nonzero structural functions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural_functions: Option<Vec<StructEntry>>,
    /// `ρ` as coefficients of `u4^a u5^b`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<FiberTerm>>,
    /// `A` as coefficients of `u4^a u5^b`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<FiberTerm>>,
}

/// `ρ` and `A` at one fiber point.
#[derive(Debug, Serialize)]
pub struct FiberValues {
    /// `u4`.
    pub u4: String,
    /// `u5`.
    pub u5: String,
    /// `ρ`.
    pub rho: String,
    /// `A`.
    pub density: String,
}

/// A quartic on `D(q)`.
#[derive(Debug, Serialize)]
pub struct QuarticOut {
    /// Basis names `(v1, v2)`.
    pub basis: [String; 2],
    /// Coefficients of `v1⁴, v1³v2, v1²v2², v1v2³, v2⁴`.
    pub coeffs: Vec<String>,
}

/// Closed-form versus oracle values at one fiber point.
#[derive(Debug, Serialize)]
pub struct OracleOut {
    /// `u4`.
    pub u4: String,
    /// `u5`.
    pub u5: String,
    /// `(ρ, A)` from the closed-form formulas.
    pub formula: [String; 2],
    /// `(ρ, A)` from the canonical moving frame of the Jacobi curve.
    pub canonical_frame: [String; 2],
    /// `(ρ, A)` from the moving-frame lemma on a transversal completion.
    pub lemma: [String; 2],
    /// `(ρ, A)` from the generating function in a projective parameter.
    pub projective: [String; 2],
    /// Weight of the curve.
    pub weight: usize,
    /// Sign of the velocity.
    pub velocity_sign: i32,
    /// All routes agree with each other and with the formulas.
    pub equal: bool,
}

/// Per-point results.
#[derive(Debug, Serialize)]
pub struct PointReport {
    /// The point.
    pub point: Vec<String>,
    /// Growth vector, e.g. `"(2,3,5)"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<String>,
    /// `ρ`, `A` at the model's fiber points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<FiberValues>>,
    /// Tangential quartic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangential: Option<QuarticOut>,
    /// Oracle comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleOut>>,
    /// Wall-clock milliseconds (only with `--timings`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

/// Quartic comparison at one point.
#[derive(Debug, Serialize)]
pub struct CartanPoint {
    /// The point.
    pub point: Vec<String>,
    /// `ℱ_q` on `(X1, X2)`.
    pub cartan_tensor: QuarticOut,
    /// `𝔸_q` on `(X1, X2)`.
    pub tangential: QuarticOut,
    /// `ℱ_q + 35 𝔸_q`.
    pub residual: QuarticOut,
}

/// Cartan-side results.
#[derive(Debug, Serialize)]
pub struct CartanSection {
    /// Structure equations whose residual is nonzero (1-based).
    pub failing_equations: Vec<usize>,
    /// `A1..A5` (expression texts), when the coframe verified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan_coeffs: Option<Vec<String>>,
    /// Comparisons at the working points.
    pub points: Vec<CartanPoint>,
}
