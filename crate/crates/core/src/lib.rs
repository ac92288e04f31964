//! Exact computation of local invariants of rank-2 distributions with
//! growth vector (2,3,5) on 5-manifolds.
//!
//! The crate has two independent routes to the same invariants:
//!
//! * a closed-form pipeline — [`diffgeo`] (frames, brackets, forms),
//!   [`abnormal`] (the characteristic field on the annihilator of `D²`) and
//!   [`fundform`] (the Ricci density `ρ`, the density `A` of the fundamental
//!   form and the tangential quartic);
//! * a Jacobi-curve [`oracle`] that integrates the linearised abnormal flow
//!   as exact power series and reads `ρ` and `A` off the resulting curve of
//!   Lagrangian planes.
//!
//! [`cartan`] verifies coframes against Cartan's structure equations and
//! compares Cartan's quartic tensor with the tangential fundamental form.
//! All arithmetic is exact over ℚ ([`algebra`]); [`io`] reads model files.

pub mod abnormal;
pub mod algebra;
pub mod cartan;
pub mod diffgeo;
pub mod fundform;
pub mod io;
pub mod oracle;

pub use abnormal::{Abnormal, AbnormalError, FiberPolynomial, PiForm};
pub use algebra::{int, rat, AlgebraError, Jet, ParseError, Rational, RationalFunction, Vars};
pub use cartan::{CartanCoframe, CartanError};
pub use diffgeo::{adapted_frame, AdaptedMode, Frame, FrameKind, GeometryError, OneForm, StructuralFunctions, VectorField};
pub use fundform::{tangential_form, FundformError, Invariants, MasterSign, PipelineOptions, QuarticForm};
pub use io::{load_model, InputError, Model};
pub use oracle::{oracle_invariants, OracleError, OracleOptions, OracleReport};
