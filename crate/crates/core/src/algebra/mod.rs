//! Exact scalar arithmetic: rationals, sparse polynomials, rational
//! functions, truncated power series and an expression parser.
//!
//! Everything here is immutable and exact.  Truncation orders of power
//! series are explicit and never exceeded silently.

pub mod jet;
pub mod linalg;
pub mod multijet;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use jet::{BiJet, Jet};
pub use multijet::{jet_at_point, MultiJet};
pub use parse::{parse_expression, ParseError, Vars};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::{int, rat, Rational};

use thiserror::Error;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// A denominator vanished at the evaluation point.
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    /// Division by the zero polynomial or zero rational function.
    #[error("division by zero")]
    DivisionByZero,
    /// A power series with zero constant term was inverted.
    #[error("series is not a unit (zero constant term)")]
    NonUnit,
    /// Two series with different truncation orders were combined.
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    /// A computation needed more series terms than were available.
    #[error("insufficient truncation order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    /// Composition with a series whose constant term is nonzero.
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstant,
    /// A matrix was singular.
    #[error("singular matrix")]
    Singular,
}

/// A commutative ring whose elements know how to build constants of the
/// same "shape" (same variable set, same truncation order, ...).
pub trait Scalar: Clone {
    /// The additive identity of the same shape.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity of the same shape.
    fn one_like(&self) -> Self;
    /// A rational constant of the same shape.
    fn from_rational(&self, r: &Rational) -> Self;
    /// Sum.
    fn add(&self, o: &Self) -> Self;
    /// Difference.
    fn sub(&self, o: &Self) -> Self;
    /// Product.
    fn mul(&self, o: &Self) -> Self;
    /// Negation.
    fn neg(&self) -> Self;
    /// Product with a rational constant.
    fn scale(&self, r: &Rational) -> Self;
    /// Exact zero test.
    fn vanishes(&self) -> bool;
}

/// A [`Scalar`] ring in which some elements can be inverted.
pub trait ScalarField: Scalar {
    /// Inverse, or `None` when the element is not invertible.
    fn try_inv(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        <Rational as num::Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rational as num::One>::one()
    }
    fn from_rational(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn vanishes(&self) -> bool {
        num::Zero::is_zero(self)
    }
}

impl ScalarField for Rational {
    fn try_inv(&self) -> Option<Self> {
        (!num::Zero::is_zero(self)).then(|| self.recip())
    }
}
