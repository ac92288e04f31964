//! Vector fields, differential forms and frames on ℝ⁵.
//!
//! All objects have [`RationalFunction`] components with respect to the
//! coordinate frame `∂1..∂5`.  Brackets, exterior derivatives and duals are
//! computed symbolically; frames are validated at rational working points.

use std::array;

use num::Zero;
use thiserror::Error;

use crate::algebra::linalg::{determinant, inverse, mat_vec, rank, Matrix};
use crate::algebra::{parse_expression, AlgebraError, ParseError, Rational, RationalFunction, Vars};

/// Dimension of the base manifold.
pub const DIM: usize = 5;

/// Errors raised by the geometry layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    /// The frame's component matrix has identically zero determinant.
    #[error("singular frame: component determinant vanishes identically")]
    SingularFrame,
    /// The frame degenerates at the working point.
    #[error("frame is degenerate at the working point")]
    DegenerateAtPoint,
    /// A coefficient has a pole at the working point.
    #[error("pole at the working point")]
    Pole,
    /// Exact arithmetic failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// Expression parse failure.
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn zero() -> RationalFunction {
    RationalFunction::zero(DIM)
}

/// A vector field `Σ V^a ∂_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    /// Components with respect to `∂1..∂5`.
    pub c: [RationalFunction; DIM],
}

impl VectorField {
    /// Field from its components.
    pub fn new(c: [RationalFunction; DIM]) -> Self {
        VectorField { c }
    }

    /// The zero field.
    pub fn zero() -> Self {
        VectorField { c: array::from_fn(|_| zero()) }
    }

    /// The coordinate field `∂_i` (0-based).
    pub fn coordinate(i: usize) -> Self {
        let mut v = Self::zero();
        v.c[i] = RationalFunction::one(DIM);
        v
    }

    /// Parse five component expressions over `vars`.
    pub fn parse<S: AsRef<str>>(components: &[S], vars: &Vars) -> Result<Self, GeometryError> {
        assert_eq!(components.len(), DIM, "a vector field needs five components");
        let mut c: [RationalFunction; DIM] = array::from_fn(|_| zero());
        for (slot, text) in c.iter_mut().zip(components) {
            *slot = parse_expression(text.as_ref(), vars)?;
        }
        Ok(VectorField { c })
    }

    /// Directional derivative `V(f) = Σ V^a ∂_a f`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = zero();
        for (a, va) in self.c.iter().enumerate() {
            if !va.is_zero() {
                let d = f.derivative(a);
                if !d.is_zero() {
                    acc = &acc + &(va * &d);
                }
            }
        }
        acc
    }

    /// Sum.
    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField { c: array::from_fn(|a| &self.c[a] + &o.c[a]) }
    }

    /// Difference.
    pub fn sub(&self, o: &VectorField) -> VectorField {
        VectorField { c: array::from_fn(|a| &self.c[a] - &o.c[a]) }
    }

    /// Product with a function.
    pub fn scale(&self, f: &RationalFunction) -> VectorField {
        VectorField { c: array::from_fn(|a| &self.c[a] * f) }
    }

    /// `true` for the zero field.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RationalFunction::is_zero)
    }

    /// Components at a rational point.
    pub fn eval(&self, q: &[Rational]) -> Result<Vec<Rational>, GeometryError> {
        self.c.iter().map(|f| f.eval(q).map_err(|_| GeometryError::Pole)).collect()
    }
}

/// Lie bracket `[V, W]^k = Σ_j (V^j ∂_j W^k − W^j ∂_j V^k)`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> VectorField {
    VectorField { c: array::from_fn(|k| &v.apply(&w.c[k]) - &w.apply(&v.c[k])) }
}

/// A one-form `Σ ω_a dx_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    /// Components with respect to `dx1..dx5`.
    pub c: [RationalFunction; DIM],
}

impl OneForm {
    /// Form from its components.
    pub fn new(c: [RationalFunction; DIM]) -> Self {
        OneForm { c }
    }

    /// The zero form.
    pub fn zero() -> Self {
        OneForm { c: array::from_fn(|_| zero()) }
    }

    /// The coordinate differential `dx_i` (0-based).
    pub fn coordinate(i: usize) -> Self {
        let mut w = Self::zero();
        w.c[i] = RationalFunction::one(DIM);
        w
    }

    /// The differential `df`.
    pub fn differential(f: &RationalFunction) -> Self {
        OneForm { c: array::from_fn(|a| f.derivative(a)) }
    }

    /// Parse five component expressions over `vars`.
    pub fn parse<S: AsRef<str>>(components: &[S], vars: &Vars) -> Result<Self, GeometryError> {
        Ok(OneForm { c: VectorField::parse(components, vars)?.c })
    }

    /// Contraction `ω(V)`.
    pub fn eval(&self, v: &VectorField) -> RationalFunction {
        let mut acc = zero();
        for (w, x) in self.c.iter().zip(&v.c) {
            if !w.is_zero() && !x.is_zero() {
                acc = &acc + &(w * x);
            }
        }
        acc
    }

    /// Sum.
    pub fn add(&self, o: &OneForm) -> OneForm {
        OneForm { c: array::from_fn(|a| &self.c[a] + &o.c[a]) }
    }

    /// Difference.
    pub fn sub(&self, o: &OneForm) -> OneForm {
        OneForm { c: array::from_fn(|a| &self.c[a] - &o.c[a]) }
    }

    /// Product with a function.
    pub fn scale(&self, f: &RationalFunction) -> OneForm {
        OneForm { c: array::from_fn(|a| &self.c[a] * f) }
    }

    /// `true` for the zero form.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RationalFunction::is_zero)
    }
}

/// Index of the pair `i < j` in the packed upper triangle.
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM);
    // rows: 0 -> 4 entries, 1 -> 3, 2 -> 2, 3 -> 1
    i * (2 * DIM - i - 1) / 2 + (j - i - 1)
}

/// A two-form `Σ_{i<j} c_ij dx_i ∧ dx_j` (antisymmetric by construction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    c: [RationalFunction; 10],
}

impl TwoForm {
    /// The zero two-form.
    pub fn zero() -> Self {
        TwoForm { c: array::from_fn(|_| zero()) }
    }

    /// Component `(i, j)` (0-based), antisymmetric in the indices.
    pub fn get(&self, i: usize, j: usize) -> RationalFunction {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.c[pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.c[pair_index(j, i)],
            std::cmp::Ordering::Equal => zero(),
        }
    }

    /// Set component `(i, j)` for `i < j`.
    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        assert!(i < j, "two-form components are stored for i < j");
        self.c[pair_index(i, j)] = v;
    }

    /// Evaluation `Σ_{i<j} c_ij (V^i W^j − V^j W^i)`.
    pub fn eval(&self, v: &VectorField, w: &VectorField) -> RationalFunction {
        let mut acc = zero();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let cij = &self.c[pair_index(i, j)];
                if cij.is_zero() {
                    continue;
                }
                let m = &(&v.c[i] * &w.c[j]) - &(&v.c[j] * &w.c[i]);
                if !m.is_zero() {
                    acc = &acc + &(cij * &m);
                }
            }
        }
        acc
    }

    /// Sum.
    pub fn add(&self, o: &TwoForm) -> TwoForm {
        TwoForm { c: array::from_fn(|a| &self.c[a] + &o.c[a]) }
    }

    /// Difference.
    pub fn sub(&self, o: &TwoForm) -> TwoForm {
        TwoForm { c: array::from_fn(|a| &self.c[a] - &o.c[a]) }
    }

    /// Product with a function.
    pub fn scale(&self, f: &RationalFunction) -> TwoForm {
        TwoForm { c: array::from_fn(|a| &self.c[a] * f) }
    }

    /// `true` for the zero form.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RationalFunction::is_zero)
    }

    /// Nonzero components as `((i, j), value)` with `i < j`.
    pub fn nonzero_components(&self) -> Vec<((usize, usize), RationalFunction)> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let v = &self.c[pair_index(i, j)];
                if !v.is_zero() {
                    out.push(((i, j), v.clone()));
                }
            }
        }
        out
    }
}

/// Exterior derivative `(dω)_ij = ∂_i ω_j − ∂_j ω_i`.
pub fn exterior_derivative(w: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for i in 0..DIM {
        for j in i + 1..DIM {
            out.set(i, j, &w.c[j].derivative(i) - &w.c[i].derivative(j));
        }
    }
    out
}

/// Wedge product `(ω∧η)_ij = ω_i η_j − ω_j η_i`.
pub fn wedge(w: &OneForm, e: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for i in 0..DIM {
        for j in i + 1..DIM {
            out.set(i, j, &(&w.c[i] * &e.c[j]) - &(&w.c[j] * &e.c[i]));
        }
    }
    out
}

/// How a frame was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameKind {
    /// `X3=[X1,X2], X4=[X1,X3], X5=[X2,X3]`.
    Adapted,
    /// `X3=[X1,X2], X4=[X1,X3], X5=[X3,X2]`.
    StronglyAdapted,
    /// Dual of a Cartan coframe with reversed indices.
    Cartan,
    /// Supplied directly.
    Raw,
}

/// Choice of the fifth field when building a frame from `(X1, X2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum AdaptedMode {
    /// `X5 = [X2, X3]`.
    #[default]
    Adapted,
    /// `X5 = [X3, X2]`.
    StronglyAdapted,
}

/// Five vector fields forming a (generic) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    /// `X1..X5`.
    pub x: [VectorField; DIM],
    /// Provenance tag.
    pub kind: FrameKind,
}

/// A coframe `ω^1..ω^5` dual to a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coframe {
    /// `ω^1..ω^5`.
    pub w: [OneForm; DIM],
}

impl Frame {
    /// Wrap five fields.
    pub fn new(x: [VectorField; DIM], kind: FrameKind) -> Self {
        Frame { x, kind }
    }

    /// The coordinate frame `∂1..∂5`.
    pub fn coordinate() -> Self {
        Frame { x: array::from_fn(VectorField::coordinate), kind: FrameKind::Raw }
    }

    /// Component matrix with the fields as columns: `M[a][k] = X_k^a`.
    pub fn matrix(&self) -> Matrix<RationalFunction> {
        (0..DIM).map(|a| (0..DIM).map(|k| self.x[k].c[a].clone()).collect()).collect()
    }

    /// Determinant of the component matrix.
    pub fn determinant(&self) -> Result<RationalFunction, GeometryError> {
        Ok(determinant(&self.matrix())?)
    }

    /// Check that the frame is a basis at `q`.
    pub fn check_at(&self, q: &[Rational]) -> Result<(), GeometryError> {
        let m: Matrix<Rational> =
            (0..DIM).map(|a| (0..DIM).map(|k| self.x[k].c[a].eval(q).map_err(|_| GeometryError::Pole)).collect()).collect::<Result<_, _>>()?;
        if rank(&m) < DIM {
            return Err(GeometryError::DegenerateAtPoint);
        }
        Ok(())
    }
}

/// Dual coframe: `ω^i(X_k) = δ_ik`, i.e. the rows of the inverse matrix.
pub fn dual_coframe(frame: &Frame) -> Result<Coframe, GeometryError> {
    let inv = inverse(&frame.matrix()).map_err(|_| GeometryError::SingularFrame)?;
    let mut rows = inv.into_iter();
    Ok(Coframe { w: array::from_fn(|_| OneForm { c: rows.next().unwrap().try_into().unwrap() }) })
}

/// Dual frame of a coframe: the columns of the inverse of the row matrix.
pub fn dual_frame(coframe: &Coframe) -> Result<[VectorField; DIM], GeometryError> {
    let m: Matrix<RationalFunction> = coframe.w.iter().map(|w| w.c.to_vec()).collect();
    let inv = inverse(&m).map_err(|_| GeometryError::SingularFrame)?;
    Ok(array::from_fn(|k| VectorField { c: array::from_fn(|a| inv[a][k].clone()) }))
}

/// Structural functions `[X_i, X_j] = Σ_k c_{ji}^k X_k` of a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralFunctions {
    /// `t[j][i][k]` holds `c_{ji}^k` with 0-based indices.
    t: Vec<Vec<Vec<RationalFunction>>>,
}

impl StructuralFunctions {
    /// `c_{ji}^k` with the 1-based indices used throughout the literature.
    pub fn get(&self, j: usize, i: usize, k: usize) -> &RationalFunction {
        &self.t[j - 1][i - 1][k - 1]
    }

    /// Build from an explicit table (0-based `t[j][i][k]`).
    pub fn from_table(t: Vec<Vec<Vec<RationalFunction>>>) -> Self {
        StructuralFunctions { t }
    }

    /// The raw 0-based table.
    pub fn table(&self) -> &Vec<Vec<Vec<RationalFunction>>> {
        &self.t
    }
}

/// Compute `c_{ji}^k = ω^k([X_i, X_j])`.
pub fn structural_functions(frame: &Frame) -> Result<StructuralFunctions, GeometryError> {
    let co = dual_coframe(frame)?;
    let mut t = vec![vec![vec![zero(); DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in i + 1..DIM {
            let br = lie_bracket(&frame.x[i], &frame.x[j]);
            for k in 0..DIM {
                let v = co.w[k].eval(&br);
                t[i][j][k] = -&v;
                t[j][i][k] = v;
            }
        }
    }
    Ok(StructuralFunctions { t })
}

/// Evaluate a list of fields at `q` as column vectors.
fn eval_fields(fields: &[&VectorField], q: &[Rational]) -> Result<Matrix<Rational>, GeometryError> {
    let cols: Vec<Vec<Rational>> = fields.iter().map(|f| f.eval(q)).collect::<Result<_, _>>()?;
    Ok((0..DIM).map(|a| cols.iter().map(|c| c[a].clone()).collect()).collect())
}

/// Small growth vector `(dim D, dim D², dim D³)` of `span(X1, X2)` at `q`.
pub fn growth_vector(x1: &VectorField, x2: &VectorField, q: &[Rational]) -> Result<(usize, usize, usize), GeometryError> {
    let x3 = lie_bracket(x1, x2);
    let x4 = lie_bracket(x1, &x3);
    let x5 = lie_bracket(x2, &x3);
    let r1 = rank(&eval_fields(&[x1, x2], q)?);
    let r2 = rank(&eval_fields(&[x1, x2, &x3], q)?);
    let r3 = rank(&eval_fields(&[x1, x2, &x3, &x4, &x5], q)?);
    Ok((r1, r2, r3))
}

/// Build the adapted (or strongly adapted) frame generated by `(X1, X2)`.
pub fn adapted_frame(x1: &VectorField, x2: &VectorField, mode: AdaptedMode) -> Result<Frame, GeometryError> {
    let x3 = lie_bracket(x1, x2);
    let x4 = lie_bracket(x1, &x3);
    let (x5, kind) = match mode {
        AdaptedMode::Adapted => (lie_bracket(x2, &x3), FrameKind::Adapted),
        AdaptedMode::StronglyAdapted => (lie_bracket(&x3, x2), FrameKind::StronglyAdapted),
    };
    let frame = Frame { x: [x1.clone(), x2.clone(), x3, x4, x5], kind };
    if frame.determinant()?.is_zero() {
        return Err(GeometryError::SingularFrame);
    }
    Ok(frame)
}

/// Express a rational vector `v` at `q` in the frame: solve `Σ a_k X_k(q) = v`.
pub fn frame_coordinates(frame: &Frame, q: &[Rational], v: &[Rational]) -> Result<Vec<Rational>, GeometryError> {
    let m = eval_fields(&frame.x.iter().collect::<Vec<_>>(), q)?;
    let inv = inverse(&m).map_err(|_| GeometryError::DegenerateAtPoint)?;
    Ok(mat_vec(&inv, v))
}

/// `true` when every component of a rational vector vanishes.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn vars() -> Vars {
        Vars::new(&["x", "y", "p", "q", "z"])
    }

    fn vf(c: [&str; 5]) -> VectorField {
        VectorField::parse(&c, &vars()).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let a = vf(["1", "0", "0", "0", "0"]);
        let b = vf(["0", "x", "0", "0", "0"]);
        assert_eq!(lie_bracket(&a, &b), vf(["0", "1", "0", "0", "0"]));
        assert!(lie_bracket(&b, &b).is_zero());
        let dq = vf(["0", "0", "0", "1", "0"]);
        let x2 = vf(["1", "p", "q", "0", "q^2"]);
        assert_eq!(lie_bracket(&dq, &x2), vf(["0", "0", "1", "0", "2*q"]));
    }

    #[test]
    fn exterior_examples() {
        let v = Vars::base5();
        let w = OneForm::parse(&["0", "x1", "0", "0", "0"], &v).unwrap();
        let d = exterior_derivative(&w);
        assert_eq!(d.get(0, 1), RationalFunction::one(5));
        assert_eq!(d.get(1, 0), -&RationalFunction::one(5));
        let f = parse_expression("x1*x3", &v).unwrap();
        assert!(exterior_derivative(&OneForm::differential(&f)).is_zero());
    }

    #[test]
    fn shear_dual() {
        let mut fr = Frame::coordinate();
        fr.x[1] = fr.x[1].add(&fr.x[0]);
        let co = dual_coframe(&fr).unwrap();
        let expected = OneForm::coordinate(0).sub(&OneForm::coordinate(1));
        assert_eq!(co.w[0], expected);
    }

    #[test]
    fn flat_model_structure() {
        let x1 = vf(["0", "0", "0", "1", "0"]);
        let x2 = vf(["1", "p", "q", "0", "q^2"]);
        let fr = adapted_frame(&x1, &x2, AdaptedMode::Adapted).unwrap();
        assert_eq!(fr.x[3], vf(["0", "0", "0", "0", "2"]));
        assert_eq!(fr.x[4], vf(["0", "-1", "0", "0", "0"]));
        let c = structural_functions(&fr).unwrap();
        assert_eq!(c.get(2, 1, 3), &RationalFunction::one(5));
        assert_eq!(c.get(3, 1, 4), &RationalFunction::one(5));
        assert_eq!(c.get(3, 2, 5), &RationalFunction::one(5));
        let origin = vec![int(0); 5];
        assert_eq!(growth_vector(&x1, &x2, &origin).unwrap(), (2, 3, 5));
        let s = adapted_frame(&x1, &x2, AdaptedMode::StronglyAdapted).unwrap();
        assert_eq!(s.x[4], vf(["0", "1", "0", "0", "0"]));
    }

    #[test]
    fn commuting_fields_growth() {
        let q = vec![rat(1, 2), int(0), int(0), int(0), int(0)];
        assert_eq!(growth_vector(&VectorField::coordinate(0), &VectorField::coordinate(1), &q).unwrap(), (2, 2, 2));
    }
}
