//! Truncated power series with exact rational coefficients.
//!
//! [`Jet`] is a univariate series `Σ_{k≤N} c_k t^k` known up to order `N`.
//! [`BiJet`] is a Laurent series in a second variable `s` whose coefficients
//! are [`Jet`]s in `τ`; it carries expansions such as `w(τ+s, τ)` around the
//! diagonal.
//!
//! Binary operators combine operands of different orders by truncating to
//! the smaller order, which is always sound.  The checked entry point
//! [`series_arith`] instead rejects mismatched orders.

use num::{BigInt, One, Zero};

use super::rational::{is_square, Rational};
use super::{AlgebraError, Scalar, ScalarField};

/// Univariate truncated power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    c: Vec<Rational>,
}

/// Binary series operation for [`series_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    /// Sum.
    Add,
    /// Difference.
    Sub,
    /// Product.
    Mul,
    /// Quotient (divisor must be a unit).
    Div,
}

/// Checked arithmetic: both operands must have the same truncation order.
pub fn series_arith(a: &Jet, b: &Jet, op: SeriesOp) -> Result<Jet, AlgebraError> {
    if a.order() != b.order() {
        return Err(AlgebraError::OrderMismatch(a.order(), b.order()));
    }
    Ok(match op {
        SeriesOp::Add => a + b,
        SeriesOp::Sub => a - b,
        SeriesOp::Mul => a * b,
        SeriesOp::Div => a.div(b)?,
    })
}

/// Invert a series with nonzero constant term.
pub fn series_invert_unit(a: &Jet) -> Result<Jet, AlgebraError> {
    a.inv()
}

/// Compose `a(b(t))`; `b` must have zero constant term.
pub fn series_compose(a: &Jet, b: &Jet) -> Result<Jet, AlgebraError> {
    a.compose(b)
}

impl Jet {
    /// Series from coefficients, padded with zeros or truncated to `order`.
    pub fn from_coeffs(mut c: Vec<Rational>, order: usize) -> Self {
        c.resize(order + 1, Rational::zero());
        Jet { c }
    }

    /// Series from integer coefficients (test convenience).
    pub fn from_ints(c: &[i64], order: usize) -> Self {
        Self::from_coeffs(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect(), order)
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Jet { c: vec![Rational::zero(); order + 1] }
    }

    /// A constant series.
    pub fn constant(order: usize, v: Rational) -> Self {
        let mut j = Self::zero(order);
        j.c[0] = v;
        j
    }

    /// The identity series `t`.
    pub fn t(order: usize) -> Self {
        let mut j = Self::zero(order);
        if order >= 1 {
            j.c[1] = Rational::one();
        }
        j
    }

    /// Truncation order `N` (coefficients `0..=N` are known).
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    /// All known coefficients.
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// Coefficient of `t^k` (zero beyond the order is *not* implied; callers
    /// must respect [`order`](Self::order)).
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.c[k]
    }

    /// Constant term.
    pub fn value(&self) -> &Rational {
        &self.c[0]
    }

    /// Truncate to a lower order.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order <= self.order(), "cannot raise truncation order");
        Jet { c: self.c[..=order].to_vec() }
    }

    /// `true` if every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// Given a known vanishing order `k`, return `(k, u)` with
    /// `self = t^k u`.  The unit part has order `N - k`.
    pub fn laurent_split(&self, k: usize) -> Result<(usize, Jet), AlgebraError> {
        if k > self.order() {
            return Err(AlgebraError::InsufficientOrder { needed: k, have: self.order() });
        }
        if self.c[..k].iter().any(|x| !x.is_zero()) {
            return Err(AlgebraError::NonUnit);
        }
        Ok((k, Jet { c: self.c[k..].to_vec() }))
    }

    /// Multiply by `t^k` (the order grows by `k`).
    pub fn shift_up(&self, k: usize) -> Jet {
        let mut c = vec![Rational::zero(); k];
        c.extend(self.c.iter().cloned());
        Jet { c }
    }

    /// Multiply every coefficient by a rational.
    pub fn scale(&self, r: &Rational) -> Jet {
        Jet { c: self.c.iter().map(|x| x * r).collect() }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Jet, AlgebraError> {
        let a0 = &self.c[0];
        if a0.is_zero() {
            return Err(AlgebraError::NonUnit);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut r = vec![Rational::zero(); n + 1];
        r[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc += &self.c[j] * &r[k - j];
                }
            }
            r[k] = -acc * &inv0;
        }
        Ok(Jet { c: r })
    }

    /// Quotient by a unit series.
    pub fn div(&self, o: &Jet) -> Result<Jet, AlgebraError> {
        Ok(self * &o.inv()?)
    }

    /// Derivative `d/dt`; the order drops by one.
    pub fn deriv(&self) -> Jet {
        let n = self.order();
        if n == 0 {
            return Jet::zero(0);
        }
        Jet { c: (1..=n).map(|k| &self.c[k] * Rational::from_integer(BigInt::from(k))).collect() }
    }

    /// Antiderivative with constant term `c0`; the order grows by one.
    pub fn integrate(&self, c0: Rational) -> Jet {
        let mut c = vec![c0];
        for (k, x) in self.c.iter().enumerate() {
            c.push(x / Rational::from_integer(BigInt::from(k + 1)));
        }
        Jet { c }
    }

    /// Composition `self(b(t))`; `b` must vanish at zero.
    pub fn compose(&self, b: &Jet) -> Result<Jet, AlgebraError> {
        if !b.c[0].is_zero() {
            return Err(AlgebraError::NonzeroConstant);
        }
        let n = self.order().min(b.order());
        let b = b.truncate(n);
        let mut acc = Jet::constant(n, self.c[n].clone());
        for k in (0..n).rev() {
            acc = &acc * &b;
            acc.c[0] += &self.c[k];
        }
        Ok(acc)
    }

    /// Square root of a series whose constant term is a rational square.
    pub fn sqrt(&self) -> Result<Jet, AlgebraError> {
        let a0 = &self.c[0];
        if a0.is_zero() || !is_square(a0) {
            return Err(AlgebraError::NonUnit);
        }
        let r0 = Rational::new(a0.numer().sqrt(), a0.denom().sqrt());
        let n = self.order();
        let two_r0_inv = (&r0 * Rational::from_integer(2.into())).recip();
        let mut r = vec![Rational::zero(); n + 1];
        r[0] = r0;
        for k in 1..=n {
            let mut acc = self.c[k].clone();
            for j in 1..k {
                acc -= &r[j] * &r[k - j];
            }
            r[k] = acc * &two_r0_inv;
        }
        Ok(Jet { c: r })
    }

    fn zip_min(&self, o: &Jet) -> usize {
        self.order().min(o.order())
    }
}

impl<'a> std::ops::Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let n = self.zip_min(o);
        Jet { c: (0..=n).map(|k| &self.c[k] + &o.c[k]).collect() }
    }
}

impl<'a> std::ops::Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let n = self.zip_min(o);
        Jet { c: (0..=n).map(|k| &self.c[k] - &o.c[k]).collect() }
    }
}

impl<'a> std::ops::Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.zip_min(o);
        let mut r = vec![Rational::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    r[i + j] += a * b;
                }
            }
        }
        Jet { c: r }
    }
}

impl std::ops::Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Scalar for Jet {
    fn zero_like(&self) -> Self {
        Jet::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Jet::constant(self.order(), Rational::one())
    }
    fn from_rational(&self, r: &Rational) -> Self {
        Jet::constant(self.order(), r.clone())
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
        Jet::scale(self, r)
    }
    fn vanishes(&self) -> bool {
        Jet::is_zero(self)
    }
}

impl ScalarField for Jet {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Laurent series in `s` with [`Jet`] coefficients in `τ`:
/// `Σ_{k = val}^{val + len - 1} c_k(τ) s^k`, known up to the last stored power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiJet {
    val: i32,
    c: Vec<Jet>,
}

impl BiJet {
    /// Series from `s`-coefficients starting at power `val`.
    pub fn new(val: i32, c: Vec<Jet>) -> Self {
        assert!(!c.is_empty(), "a bivariate jet needs at least one coefficient");
        BiJet { val, c }
    }

    /// Constant (in `s`) series.
    pub fn from_tau(j: Jet, s_len: usize) -> Self {
        let order = j.order();
        let mut c = vec![j];
        c.resize(s_len, Jet::zero(order));
        BiJet { val: 0, c }
    }

    /// The series `c · s^k` with `c` a τ-jet, known to `len` terms.
    pub fn monomial(j: Jet, k: i32, len: usize) -> Self {
        let order = j.order();
        let mut c = vec![j];
        c.resize(len, Jet::zero(order));
        BiJet { val: k, c }
    }

    /// Lowest stored `s`-power.
    pub fn val(&self) -> i32 {
        self.val
    }

    /// Number of stored `s`-coefficients.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    /// Always `false`; a bivariate jet stores at least one coefficient.
    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Highest known `s`-power.
    pub fn top(&self) -> i32 {
        self.val + self.c.len() as i32 - 1
    }

    /// Common τ truncation order.
    pub fn tau_order(&self) -> usize {
        self.c.iter().map(Jet::order).min().unwrap()
    }

    /// Coefficient of `s^k` as a τ-jet (zero below the valuation).
    pub fn coeff(&self, k: i32) -> Result<Jet, AlgebraError> {
        if k > self.top() {
            return Err(AlgebraError::InsufficientOrder { needed: k.max(0) as usize, have: self.top().max(0) as usize });
        }
        if k < self.val {
            return Ok(Jet::zero(self.tau_order()));
        }
        Ok(self.c[(k - self.val) as usize].truncate(self.tau_order()))
    }

    /// Drop leading `s`-coefficients that are exactly zero.
    pub fn normalize(&self) -> BiJet {
        let mut k = 0;
        while k + 1 < self.c.len() && self.c[k].is_zero() {
            k += 1;
        }
        BiJet { val: self.val + k as i32, c: self.c[k..].to_vec() }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i32) -> BiJet {
        BiJet { val: self.val + k, c: self.c.clone() }
    }

    /// Truncate every τ-coefficient to order `n`.
    pub fn truncate_tau(&self, n: usize) -> BiJet {
        BiJet { val: self.val, c: self.c.iter().map(|j| j.truncate(n.min(j.order()))).collect() }
    }

    /// Keep `s`-powers up to `top` inclusive.
    pub fn truncate_s(&self, top: i32) -> BiJet {
        let len = ((top - self.val + 1).max(1) as usize).min(self.c.len());
        BiJet { val: self.val, c: self.c[..len].to_vec() }
    }

    /// Sum (aligned on `s`-powers, truncated to the common precision).
    pub fn add(&self, o: &BiJet) -> BiJet {
        let val = self.val.min(o.val);
        let top = self.top().min(o.top());
        let n = self.tau_order().min(o.tau_order());
        let c = (val..=top).map(|k| &self.coeff(k).unwrap().truncate(n) + &o.coeff(k).unwrap().truncate(n)).collect();
        BiJet { val, c }
    }

    /// Negation.
    pub fn neg(&self) -> BiJet {
        BiJet { val: self.val, c: self.c.iter().map(|j| -j).collect() }
    }

    /// Difference.
    pub fn sub(&self, o: &BiJet) -> BiJet {
        self.add(&o.neg())
    }

    /// Product; relative `s`-precision is the smaller of the two.
    pub fn mul(&self, o: &BiJet) -> BiJet {
        let len = self.c.len().min(o.c.len());
        let n = self.tau_order().min(o.tau_order());
        let mut c = vec![Jet::zero(n); len];
        for i in 0..len {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..len - i {
                c[i + j] = &c[i + j] + &(&self.c[i] * &o.c[j]);
            }
        }
        BiJet { val: self.val + o.val, c }
    }

    /// Product with a τ-jet.
    pub fn mul_tau(&self, j: &Jet) -> BiJet {
        BiJet { val: self.val, c: self.c.iter().map(|x| x * j).collect() }
    }

    /// Product with a rational.
    pub fn scale(&self, r: &Rational) -> BiJet {
        BiJet { val: self.val, c: self.c.iter().map(|x| x.scale(r)).collect() }
    }

    /// Inverse; the leading `s`-coefficient must be a unit τ-jet.
    pub fn inv(&self) -> Result<BiJet, AlgebraError> {
        let a = self.normalize();
        let len = a.c.len();
        let n = a.tau_order();
        let inv0 = a.c[0].truncate(n).inv()?;
        let mut r: Vec<Jet> = vec![Jet::zero(n); len];
        r[0] = inv0.clone();
        for k in 1..len {
            let mut acc = Jet::zero(n);
            for j in 1..=k {
                acc = &acc + &(&a.c[j] * &r[k - j]);
            }
            r[k] = -&(&acc * &inv0);
        }
        Ok(BiJet { val: -a.val, c: r })
    }

    /// Partial derivative in τ (τ-order drops by one).
    pub fn d_tau(&self) -> BiJet {
        BiJet { val: self.val, c: self.c.iter().map(Jet::deriv).collect() }
    }

    /// Partial derivative in `s`.
    pub fn d_s(&self) -> BiJet {
        let c = self.c.iter().enumerate().map(|(i, j)| j.scale(&Rational::from_integer(BigInt::from(self.val + i as i32)))).collect::<Vec<_>>();
        let b = BiJet { val: self.val - 1, c };
        if self.val == 0 {
            // the s^{-1} coefficient is identically zero; drop it
            BiJet { val: 0, c: b.c[1..].to_vec() }.pad_if_empty(self.tau_order())
        } else {
            b
        }
    }

    fn pad_if_empty(self, n: usize) -> BiJet {
        if self.c.is_empty() {
            BiJet { val: self.val, c: vec![Jet::zero(n)] }
        } else {
            self
        }
    }

    /// Expand `f(τ + s)` from a univariate jet `f(t)` of order `N`:
    /// `Σ_{a ≤ nt, b ≤ ns} C(a+b, a) f_{a+b} τ^a s^b`.  Requires
    /// `nt + ns ≤ N` so that every coefficient is known.
    pub fn shifted(f: &Jet, nt: usize, ns: usize) -> Result<BiJet, AlgebraError> {
        if nt + ns > f.order() {
            return Err(AlgebraError::InsufficientOrder { needed: nt + ns, have: f.order() });
        }
        let mut c = Vec::with_capacity(ns + 1);
        for b in 0..=ns {
            let coeffs = (0..=nt).map(|a| &f.c[a + b] * Rational::from_integer(binomial(a + b, a))).collect();
            c.push(Jet::from_coeffs(coeffs, nt));
        }
        Ok(BiJet { val: 0, c })
    }

    /// Substitute `τ = 0`, giving a Laurent series in `s` as `(val, coeffs)`.
    pub fn at_tau_zero(&self) -> (i32, Vec<Rational>) {
        (self.val, self.c.iter().map(|j| j.value().clone()).collect())
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::*;

    #[test]
    fn product_truncates() {
        let a = Jet::from_ints(&[1, 1], 3);
        let b = Jet::from_ints(&[1, -1], 3);
        assert_eq!(&a * &b, Jet::from_ints(&[1, 0, -1], 3));
    }

    #[test]
    fn geometric_inverse() {
        let a = Jet::from_ints(&[1, 1], 2);
        assert_eq!(a.inv().unwrap(), Jet::from_ints(&[1, -1, 1], 2));
        assert_eq!(Jet::from_ints(&[0, 1], 2).inv(), Err(AlgebraError::NonUnit));
    }

    #[test]
    fn laurent_split_example() {
        // t^4 (1 + t)
        let a = Jet::from_ints(&[0, 0, 0, 0, 1, 1], 5);
        let (k, u) = a.laurent_split(4).unwrap();
        assert_eq!(k, 4);
        assert_eq!(u, Jet::from_ints(&[1, 1], 1));
    }

    #[test]
    fn checked_arith_rejects_mismatch() {
        let a = Jet::from_ints(&[1], 2);
        let b = Jet::from_ints(&[1], 3);
        assert_eq!(series_arith(&a, &b, SeriesOp::Add), Err(AlgebraError::OrderMismatch(2, 3)));
    }

    #[test]
    fn compose_and_sqrt() {
        // exp-like check: (1+t)^2 composed with t -> 2t gives 1 + 4t + 4t^2
        let a = Jet::from_ints(&[1, 2, 1], 3);
        let b = Jet::from_ints(&[0, 2], 3);
        assert_eq!(a.compose(&b).unwrap(), Jet::from_ints(&[1, 4, 4], 3));
        let sq = Jet::from_ints(&[4, 4, 1], 4).sqrt().unwrap();
        assert_eq!(sq, Jet::from_ints(&[2, 1], 4));
    }

    #[test]
    fn shifted_expansion_matches_taylor() {
        // f(t) = t^3; f(τ+s) = τ^3 + 3τ^2 s + 3τ s^2 + s^3
        let f = Jet::from_ints(&[0, 0, 0, 1], 6);
        let b = BiJet::shifted(&f, 3, 3).unwrap();
        assert_eq!(b.coeff(1).unwrap(), Jet::from_ints(&[0, 0, 3], 3));
        assert_eq!(b.coeff(2).unwrap(), Jet::from_ints(&[0, 3], 3));
        assert_eq!(b.coeff(3).unwrap(), Jet::from_ints(&[1], 3));
    }

    #[test]
    fn bijet_inverse() {
        // s^2 (1 + τ s)  ->  s^-2 (1 - τ s + τ^2 s^2)
        let one = Jet::constant(3, int(1));
        let tau = Jet::t(3);
        let a = BiJet::new(2, vec![one.clone(), tau.clone(), Jet::zero(3)]);
        let i = a.inv().unwrap();
        assert_eq!(i.val(), -2);
        assert_eq!(i.coeff(-1).unwrap(), -&tau);
        assert_eq!(i.coeff(0).unwrap(), &tau * &tau);
    }
}
