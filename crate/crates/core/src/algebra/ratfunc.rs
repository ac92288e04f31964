//! Exact multivariate rational functions.
//!
//! A value is stored as `num / Π atom_i^{e_i}`: the denominator is kept in
//! factored form as a sorted list of *atoms*, each a primitive polynomial with
//! positive leading coefficient.  Monomial factors are always split into the
//! single-variable atoms `x_i`.  After every operation the numerator is
//! trial-divided by each atom, so common factors that are known atoms cancel.
//!
//! No multivariate gcd is computed.  The representation is therefore not
//! unique in general (an atom may share a factor with the numerator that is
//! not itself an atom), but equality is always decided exactly by
//! cross-multiplication.

use std::fmt;

use num::{One, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use super::{AlgebraError, Scalar, ScalarField};

/// Exact rational function `num / den` over a fixed variable set.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    /// Sorted, deduplicated atoms with positive multiplicities.
    den: Vec<(Polynomial, u32)>,
}

impl RationalFunction {
    /// The zero function on `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        RationalFunction { num: Polynomial::zero(nvars), den: Vec::new() }
    }

    /// The constant one.
    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    /// A rational constant.
    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Polynomial::var(nvars, i))
    }

    /// A polynomial viewed as a rational function.
    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }

    /// `p / q`, or an error if `q` is the zero polynomial.
    pub fn from_fraction(p: Polynomial, q: &Polynomial) -> Result<Self, AlgebraError> {
        let inv = Self::from_poly(q.clone()).try_inv()?;
        Ok(Self::from_poly(p).mul_ref(&inv))
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Numerator polynomial.
    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    /// Factored denominator `[(atom, multiplicity)]`.
    pub fn denom_factors(&self) -> &[(Polynomial, u32)] {
        &self.den
    }

    /// Expanded denominator polynomial.
    pub fn denom(&self) -> Polynomial {
        let mut d = Polynomial::one(self.nvars());
        for (a, e) in &self.den {
            d = &d * &a.pow(*e);
        }
        d
    }

    /// `true` for the zero function.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `true` when the function is a polynomial (trivial denominator).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Indices of the variables that occur in numerator or denominator.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.num.support_vars();
        for (a, _) in &self.den {
            v.extend(a.support_vars());
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The same function viewed in `n ≥ nvars` variables.
    pub fn extend_vars(&self, n: usize) -> Self {
        RationalFunction { num: self.num.extend_vars(n), den: self.den.iter().map(|(a, e)| (a.extend_vars(n), *e)).collect() }
    }

    /// Split a nonzero polynomial into `unit * Π atoms`.
    fn factor_atoms(p: &Polynomial) -> (Rational, Vec<(Polynomial, u32)>) {
        let n = p.nvars();
        let mc = p.monomial_content();
        let rest = p.div_monomial(&mc).expect("monomial content divides");
        let (unit, prim) = rest.normalize();
        let mut atoms = Vec::new();
        for (i, &e) in mc.0.iter().enumerate() {
            if e > 0 {
                atoms.push((Polynomial::var(n, i), e as u32));
            }
        }
        if !prim.is_constant() {
            atoms.push((prim, 1));
        }
        (unit, atoms)
    }

    /// Merge atom lists, adding multiplicities.
    fn merge_add(a: &[(Polynomial, u32)], b: &[(Polynomial, u32)]) -> Vec<(Polynomial, u32)> {
        let mut out: Vec<(Polynomial, u32)> = a.to_vec();
        for (p, e) in b {
            match out.binary_search_by(|(q, _)| q.cmp(p)) {
                Ok(i) => out[i].1 += e,
                Err(i) => out.insert(i, (p.clone(), *e)),
            }
        }
        out
    }

    /// Least common multiple of atom lists (maximum multiplicities).
    fn merge_max(a: &[(Polynomial, u32)], b: &[(Polynomial, u32)]) -> Vec<(Polynomial, u32)> {
        let mut out: Vec<(Polynomial, u32)> = a.to_vec();
        for (p, e) in b {
            match out.binary_search_by(|(q, _)| q.cmp(p)) {
                Ok(i) => out[i].1 = out[i].1.max(*e),
                Err(i) => out.insert(i, (p.clone(), *e)),
            }
        }
        out
    }

    /// Product of `atoms^(target - have)` over the atoms of `target`.
    fn cofactor(target: &[(Polynomial, u32)], have: &[(Polynomial, u32)], nvars: usize) -> Polynomial {
        let mut c = Polynomial::one(nvars);
        for (p, e) in target {
            let h = have.binary_search_by(|(q, _)| q.cmp(p)).map(|i| have[i].1).unwrap_or(0);
            if *e > h {
                c = &c * &p.pow(e - h);
            }
        }
        c
    }

    /// Divide the numerator by denominator atoms wherever possible.
    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut keep = Vec::with_capacity(self.den.len());
        for (atom, mut e) in std::mem::take(&mut self.den) {
            let single_var = atom.len() == 1;
            while e > 0 {
                if single_var {
                    let (m, _) = atom.leading().unwrap();
                    match self.num.div_monomial(m) {
                        Some(q) => self.num = q,
                        None => break,
                    }
                } else {
                    match self.num.div_exact(&atom) {
                        Some(q) => self.num = q,
                        None => break,
                    }
                }
                e -= 1;
            }
            if e > 0 {
                keep.push((atom, e));
            }
        }
        self.den = keep;
        self
    }

    /// Product, borrowing both operands.
    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        if let Some(c) = o.as_constant() {
            return self.scale_ref(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale_ref(&c);
        }
        // Cancel each numerator against the other operand's denominator first
        // to keep intermediate products small.
        let a = RationalFunction { num: self.num.clone(), den: o.den.clone() }.cancel();
        let b = RationalFunction { num: o.num.clone(), den: self.den.clone() }.cancel();
        RationalFunction { num: &a.num * &b.num, den: Self::merge_add(&a.den, &b.den) }
    }

    /// Sum, borrowing both operands.
    pub fn add_ref(&self, o: &Self) -> Self {
        assert_eq!(self.nvars(), o.nvars(), "rational functions over different variable sets");
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction { num: &self.num + &o.num, den: self.den.clone() }.cancel();
        }
        let n = self.nvars();
        let l = Self::merge_max(&self.den, &o.den);
        let na = &self.num * &Self::cofactor(&l, &self.den, n);
        let nb = &o.num * &Self::cofactor(&l, &o.den, n);
        RationalFunction { num: &na + &nb, den: l }.cancel()
    }

    /// Negation.
    pub fn neg_ref(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    /// Difference.
    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    /// Multiply by a rational constant.
    pub fn scale_ref(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse, or an error for the zero function.
    pub fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.nvars();
        let (unit, atoms) = Self::factor_atoms(&self.num);
        let mut num = Polynomial::constant(n, unit.recip());
        for (a, e) in &self.den {
            num = &num * &a.pow(*e);
        }
        Ok(RationalFunction { num, den: Self::merge_add(&[], &atoms) }.cancel())
    }

    /// Quotient, or an error when dividing by zero.
    pub fn div_ref(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul_ref(&o.try_inv()?))
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.iter().map(|(a, m)| (a.clone(), m * e)).collect() }
    }

    /// Exact partial derivative with respect to `x_i`.
    ///
    /// With `D = Π p_j^{e_j}` and `P = Π p_j`:
    /// `(N/D)' = (N' P - N Σ e_j p_j' P/p_j) / (D P)`.
    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_empty() {
            return Self::from_poly(self.num.derivative(i));
        }
        let n = self.nvars();
        let relevant: Vec<usize> = (0..self.den.len()).filter(|&j| self.den[j].0.degree_in(i) > 0).collect();
        if relevant.is_empty() {
            return RationalFunction { num: self.num.derivative(i), den: self.den.clone() }.cancel();
        }
        let mut p_all = Polynomial::one(n);
        for &j in &relevant {
            p_all = &p_all * &self.den[j].0;
        }
        let mut num = &self.num.derivative(i) * &p_all;
        for &j in &relevant {
            let (pj, ej) = &self.den[j];
            let mut others = Polynomial::one(n);
            for &k in &relevant {
                if k != j {
                    others = &others * &self.den[k].0;
                }
            }
            let term = &(&self.num * &pj.derivative(i)) * &others;
            num = &num - &term.scale(&Rational::from_integer((*ej).into()));
        }
        let mut den = self.den.clone();
        for &j in &relevant {
            den[j].1 += 1;
        }
        RationalFunction { num, den }.cancel()
    }

    /// Evaluate at a rational point; fails at poles.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let mut d = Rational::one();
        for (a, e) in &self.den {
            let v = a.eval(point);
            if v.is_zero() {
                return Err(AlgebraError::Pole);
            }
            for _ in 0..*e {
                d *= &v;
            }
        }
        Ok(self.num.eval(point) / d)
    }

    /// Evaluate with values in any scalar field (e.g. power series);
    /// fails when a denominator atom is not invertible there.
    pub fn eval_in<S: ScalarField>(&self, values: &[S]) -> Result<S, AlgebraError> {
        let mut acc = self.num.eval_in(values);
        for (a, e) in &self.den {
            let inv = a.eval_in(values).try_inv().ok_or(AlgebraError::Pole)?;
            for _ in 0..*e {
                acc = acc.mul(&inv);
            }
        }
        Ok(acc)
    }

    /// Substitute `x_i -> values[i]` with rational-function values.
    pub fn compose(&self, values: &[RationalFunction]) -> Result<RationalFunction, AlgebraError> {
        if self.is_zero() {
            let n = values.first().map(|v| v.nvars()).unwrap_or(0);
            return Ok(RationalFunction::zero(n));
        }
        self.eval_in(values)
    }

    /// Render with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> RfDisplay<'a> {
        RfDisplay { f: self, names }
    }

    /// Canonical text form with default variable names `x1..xn`.
    pub fn to_text(&self) -> String {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        self.display(&names).to_string()
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        if self.nvars() != o.nvars() {
            return false;
        }
        if self.den == o.den {
            return self.num == o.num;
        }
        let n = self.nvars();
        let l = Self::merge_max(&self.den, &o.den);
        let na = &self.num * &Self::cofactor(&l, &self.den, n);
        let nb = &o.num * &Self::cofactor(&l, &o.den, n);
        na == nb
    }
}

impl Eq for RationalFunction {}

impl Scalar for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars())
    }
    fn from_rational(&self, r: &Rational) -> Self {
        Self::constant(self.nvars(), r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_ref(r)
    }
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
}

impl ScalarField for RationalFunction {
    fn try_inv(&self) -> Option<Self> {
        RationalFunction::try_inv(self).ok()
    }
}

macro_rules! rf_ops {
    ($tr:ident, $f:ident, $imp:ident) => {
        impl std::ops::$tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $f(self, o: &RationalFunction) -> RationalFunction {
                self.$imp(o)
            }
        }
        impl std::ops::$tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, o: RationalFunction) -> RationalFunction {
                self.$imp(&o)
            }
        }
        impl std::ops::$tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, o: &RationalFunction) -> RationalFunction {
                self.$imp(o)
            }
        }
    };
}
rf_ops!(Add, add, add_ref);
rf_ops!(Sub, sub, sub_ref);
rf_ops!(Mul, mul, mul_ref);

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl std::ops::Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

/// Helper returned by [`RationalFunction::display`].
pub struct RfDisplay<'a> {
    f: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for RfDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display(self.names).to_string();
        if self.f.den.is_empty() {
            return write!(f, "{num}");
        }
        let factors: Vec<String> = self
            .f
            .den
            .iter()
            .map(|(a, e)| {
                let s = a.display(self.names).to_string();
                let s = if a.len() > 1 { format!("({s})") } else { s };
                if *e > 1 {
                    format!("{s}^{e}")
                } else {
                    s
                }
            })
            .collect();
        let num = if self.f.num.len() > 1 { format!("({num})") } else { num };
        if factors.len() == 1 {
            write!(f, "{num}/{}", factors[0])
        } else {
            write!(f, "{num}/({})", factors.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn v(i: usize) -> RationalFunction {
        RationalFunction::var(3, i)
    }

    #[test]
    fn cancellation_through_atoms() {
        let one = RationalFunction::one(3);
        let a = (&v(0) + &one).try_inv().unwrap();
        let b = &a * &(&v(0) + &one);
        assert_eq!(b.as_constant(), Some(int(1)));
        assert!(b.is_polynomial());
    }

    #[test]
    fn monomial_atoms_cancel() {
        let f = v(0).pow(2).div_ref(&(&v(0) * &v(2))).unwrap();
        assert_eq!(f, v(0).div_ref(&v(2)).unwrap());
        assert_eq!(f.denom_factors().len(), 1);
    }

    #[test]
    fn derivative_of_quotient() {
        let f = v(0).div_ref(&v(2)).unwrap();
        let df = f.derivative(2);
        let expected = v(0).neg_ref().div_ref(&v(2).pow(2)).unwrap();
        assert_eq!(df, expected);
        assert!(f.derivative(1).is_zero());
    }

    #[test]
    fn pole_detection() {
        let f = (&v(0) - &RationalFunction::one(3)).try_inv().unwrap();
        assert_eq!(f.eval(&[int(1), int(0), int(0)]), Err(AlgebraError::Pole));
        assert_eq!(f.eval(&[int(3), int(0), int(0)]), Ok(rat(1, 2)));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let one = RationalFunction::one(3);
        let a = (&v(0) + &one).try_inv().unwrap();
        let b = (&v(0) - &one).try_inv().unwrap();
        let lhs = &a + &b;
        let rhs = (v(0).scale_ref(&int(2))).div_ref(&(&v(0).pow(2) - &one)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
