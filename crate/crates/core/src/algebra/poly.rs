//! Sparse distributed multivariate polynomials over the rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors under the
//! graded-lexicographic order, so the last entry is always the leading term.
//! Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{gcd, lcm, Rational};
use super::Scalar;

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    /// The monomial `x_i` in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Product of monomials (exponent addition).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// Quotient `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    /// Component-wise minimum (the gcd of two monomials).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// `true` for the constant monomial.
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    /// The constant `c`.
    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The constant `1`.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    /// A single term `c * m`.
    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Build from `(exponents, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent arity mismatch");
            p.add_term(Monomial(SmallVec::from_vec(e)), c);
        }
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `true` for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero); provided for container-style APIs.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over `(monomial, coefficient)` in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn as_constant_part(&self) -> Rational {
        self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// `true` when the polynomial has no non-constant terms.
    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Leading term under grlex, if nonzero.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree (`0` for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest power of `x_i` that occurs.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    /// The same polynomial viewed in `n ≥ nvars` variables (new variables
    /// are appended and do not occur).
    pub fn extend_vars(&self, n: usize) -> Polynomial {
        assert!(n >= self.nvars, "cannot drop variables");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(n, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial { nvars: n, terms }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Multiply by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate with values in any commutative scalar ring.
    ///
    /// Powers of each value are cached, so the cost is one ring product per
    /// variable occurrence plus one per term.
    pub fn eval_in<S: Scalar>(&self, values: &[S]) -> S {
        assert_eq!(values.len(), self.nvars, "point arity mismatch");
        let like = &values[0];
        let mut powers: Vec<Vec<S>> = values.iter().map(|v| vec![v.one_like(), v.clone()]).collect();
        let mut acc = like.zero_like();
        for (m, c) in &self.terms {
            let mut t: Option<S> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&values[i]);
                    powers[i].push(next);
                }
                t = Some(match t {
                    None => powers[i][e].clone(),
                    Some(t) => t.mul(&powers[i][e]),
                });
            }
            let term = match t {
                None => like.from_rational(c),
                Some(t) => t.scale(c),
            };
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute `x_i -> values[i]`, each value a polynomial in a (possibly
    /// different) variable set.
    pub fn compose(&self, values: &[Polynomial]) -> Polynomial {
        assert_eq!(values.len(), self.nvars, "substitution arity mismatch");
        let n = values.first().map(|v| v.nvars).unwrap_or(0);
        if self.is_zero() {
            return Polynomial::zero(n);
        }
        self.eval_in(values)
    }

    /// Positive rational content: `self = content * primitive` where the
    /// primitive part has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut g = num::BigInt::zero();
        let mut l = num::BigInt::one();
        for c in self.terms.values() {
            g = gcd(&g, c.numer());
            l = lcm(&l, c.denom());
        }
        if g.is_zero() {
            return Rational::one();
        }
        Rational::new(g, l)
    }

    /// Split `self = unit * p` where `p` is primitive with positive leading
    /// coefficient.  Returns `(unit, p)`; for zero returns `(0, 0)`.
    pub fn normalize(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Exact division by a monomial; `None` if it does not divide.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` when `d` does
    /// not divide `self`.
    ///
    /// Uses the grlex division algorithm, which decides divisibility: if
    /// `d | f` then the leading term of every intermediate remainder is
    /// divisible by the leading term of `d`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        self.check_arity(d);
        let (dm, dc) = d.leading().expect("division by the zero polynomial");
        if d.terms.len() == 1 {
            let inv = dc.recip();
            return self.div_monomial(dm).map(|q| q.scale(&inv));
        }
        // Cheap necessary conditions before running the division loop.
        if self.is_zero() {
            return Some(Polynomial::zero(self.nvars));
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        for i in 0..self.nvars {
            if d.degree_in(i) > self.degree_in(i) {
                return None;
            }
        }
        let dm = dm.clone();
        let dcinv = dc.recip();
        let mut r = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        while let Some((rm, rc)) = r.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc * &dcinv;
            // r -= qc * qm * d
            for (m, c) in &d.terms {
                r.add_term(m.mul(&qm), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Render with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

impl Scalar for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars)
    }
    fn from_rational(&self, r: &Rational) -> Self {
        Polynomial::constant(self.nvars, r.clone())
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
        Polynomial::scale(self, r)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.check_arity(o);
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.check_arity(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.check_arity(o);
        let mut out = Polynomial::zero(self.nvars);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, o: Polynomial) -> Polynomial {
                std::ops::$tr::$f(&self, &o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Helper returned by [`Polynomial::display`].
pub struct PolyDisplay<'a> {
    p: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.p.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                if a.is_integer() {
                    factors.push(a.numer().to_string());
                } else {
                    factors.push(format!("({}/{})", a.numer(), a.denom()));
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                let name = self.names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x(0) * &x(1)) + &x(2).pow(2);
        // x1*x2 > x3^2 in grlex (same degree, x1 wins lexicographically)
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.0.as_slice(), &[1, 1, 0]);
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &Polynomial::one(3);
        let b = &x(1) - &x(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &Polynomial::one(3)).div_exact(&a), None);
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(0).pow(2) * &x(2);
        assert_eq!(p.derivative(0), (&x(0) * &x(2)).scale(&int(2)));
        assert_eq!(p.eval(&[int(2), int(5), rat(1, 2)]), int(2));
    }

    #[test]
    fn normalize_makes_primitive() {
        let p = (&x(0).scale(&rat(-2, 3)) + &Polynomial::constant(3, rat(4, 9))).normalize();
        assert_eq!(p.0, rat(-2, 9));
        assert_eq!(p.1, &x(0).scale(&int(3)) - &Polynomial::constant(3, int(2)));
    }
}
