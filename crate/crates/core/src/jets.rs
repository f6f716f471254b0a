//! Truncated power series in the three variables `(u, v, s)`.
//!
//! A [`Jet`] of order `N` keeps every monomial `u^i v^j s^k` with
//! `i + j + k <= N`. Coefficients are stored densely in graded order, so a
//! jet of lower order is a prefix of the same series at higher order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 40;

/// Default truncation order for germs.
pub const DEFAULT_ORDER: usize = 8;

/// One of the three jet variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
    S,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::U, Var::V, Var::S];

    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::V => 1,
            Var::S => 2,
        }
    }
}

/// Exponent triple `(i, j, k)` of `u^i v^j s^k`.
pub type Exp = [usize; 3];

/// Number of monomials of total degree `<= n` in three variables.
pub const fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Dense index of a monomial.
#[inline]
pub fn monomial_index(e: Exp) -> usize {
    let d = e[0] + e[1] + e[2];
    let m = d - e[0];
    monomial_count(d).saturating_sub((d + 1) * (d + 2) / 2) + m * (m + 1) / 2 + e[2]
}

fn exponent_table() -> &'static [Exp] {
    static TABLE: OnceLock<Vec<Exp>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(monomial_count(MAX_ORDER));
        for d in 0..=MAX_ORDER {
            for i in (0..=d).rev() {
                let m = d - i;
                for k in 0..=m {
                    out.push([i, m - k, k]);
                }
            }
        }
        out
    })
}

/// Exponent triple at a dense index.
#[inline]
pub fn exponent_at(idx: usize) -> Exp {
    exponent_table()[idx]
}

/// Truncated multivariate power series.
#[derive(Clone, PartialEq)]
pub struct Jet<S> {
    order: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Jet<S> {
    pub fn zero(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        Jet {
            order,
            coeffs: vec![S::zero(); monomial_count(order)],
        }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = c;
        j
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// The coordinate function of `var`.
    pub fn var(var: Var, order: usize) -> Self {
        let mut e = [0; 3];
        e[var.index()] = 1;
        Self::monomial(e, S::one(), order)
    }

    /// `c * u^i v^j s^k`, or zero if the degree exceeds `order`.
    pub fn monomial(e: Exp, c: S, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.add_term(e, c);
        j
    }

    /// Build from `(exponent, coefficient)` pairs; terms above `order` are dropped.
    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, S)>,
    {
        let mut j = Self::zero(order);
        for (e, c) in terms {
            j.add_term(e, c);
        }
        j
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(order: usize, terms: &[(Exp, i64)]) -> Self {
        Self::from_terms(order, terms.iter().map(|&(e, c)| (e, S::from_i64(c))))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: Exp) -> S {
        if e[0] + e[1] + e[2] > self.order {
            return S::zero();
        }
        self.coeffs[monomial_index(e)].clone()
    }

    pub fn coeff_ref(&self, e: Exp) -> Option<&S> {
        (e[0] + e[1] + e[2] <= self.order).then(|| &self.coeffs[monomial_index(e)])
    }

    pub fn constant_term(&self) -> &S {
        &self.coeffs[0]
    }

    /// Adds `c` to the coefficient of `e`; ignored above the truncation order.
    pub fn add_term(&mut self, e: Exp, c: S) {
        if e[0] + e[1] + e[2] <= self.order {
            self.coeffs[monomial_index(e)].add_assign_ref(&c);
        }
    }

    pub fn set_coeff(&mut self, e: Exp, c: S) {
        if e[0] + e[1] + e[2] <= self.order {
            self.coeffs[monomial_index(e)] = c;
        }
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (exponent_at(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Zero up to the scalar tower's negligibility threshold.
    pub fn is_negligible(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible())
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms().next().map(|(e, _)| e[0] + e[1] + e[2])
    }

    /// Drop (or zero-pad) to a new order. Padding treats the jet as the
    /// polynomial it stores.
    pub fn with_order(&self, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(monomial_count(order), S::zero());
        Jet { order, coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.with_order(order.min(self.order))
    }

    /// Equality of all coefficients of total degree `<= n`.
    pub fn eq_through(&self, other: &Self, n: usize) -> bool {
        let len = monomial_count(n);
        (0..len).all(|i| {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
            a == b
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Jet<T> {
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Jet<f64> {
        self.map(|c| c.to_f64())
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    pub fn add_scalar(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.coeffs[0].add_assign_ref(c);
        out
    }

    /// `self += c * other` on the common order.
    fn axpy(&mut self, c: &S, other: &Self) {
        for (dst, src) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            if !src.is_zero() {
                dst.add_assign_ref(&c.mul_ref(src));
            }
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        let order = self.order.min(other.order);
        let n = monomial_count(order);
        Jet {
            order,
            coeffs: (0..n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }

    /// Truncated Cauchy product; the result has the smaller of the two orders.
    pub fn mul_jet(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        let table = exponent_table();
        let (short, long) = if self.nonzero_count(order) <= other.nonzero_count(order) {
            (self, other)
        } else {
            (other, self)
        };
        for ia in 0..monomial_count(order) {
            let ca = &short.coeffs[ia];
            if ca.is_zero() {
                continue;
            }
            let ea = table[ia];
            let da = ea[0] + ea[1] + ea[2];
            for ib in 0..monomial_count(order - da) {
                let cb = &long.coeffs[ib];
                if cb.is_zero() {
                    continue;
                }
                let eb = table[ib];
                let idx = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out.coeffs[idx].add_assign_ref(&ca.mul_ref(cb));
            }
        }
        out
    }

    fn nonzero_count(&self, order: usize) -> usize {
        self.coeffs[..monomial_count(order)]
            .iter()
            .filter(|c| !c.is_zero())
            .count()
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..n {
            acc = acc.mul_jet(self);
        }
        acc
    }

    /// Formal partial derivative. The order drops by one.
    pub fn differentiate(&self, var: Var) -> Self {
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero(order);
        let vi = var.index();
        for (e, c) in self.terms() {
            if e[vi] == 0 {
                continue;
            }
            let mut e2 = e;
            e2[vi] -= 1;
            out.add_term(e2, c.mul_ref(&S::from_i64(e[vi] as i64)));
        }
        out
    }

    /// Repeated partial derivative `d^n / d var^n`.
    pub fn differentiate_n(&self, var: Var, n: usize) -> Self {
        (0..n).fold(self.clone(), |j, _| j.differentiate(var))
    }

    /// Value at the origin of `d^i/du^i d^j/dv^j d^k/ds^k`.
    pub fn derivative_at_origin(&self, e: Exp) -> S {
        let fact = |n: usize| (1..=n).fold(S::one(), |a, m| a * S::from_i64(m as i64));
        self.coeff(e) * fact(e[0]) * fact(e[1]) * fact(e[2])
    }

    /// Drops the constant term (used to clear float round-off before composing).
    pub fn without_constant(mut self) -> Self {
        self.set_coeff([0, 0, 0], S::zero());
        self
    }

    /// Set `var = 0`.
    pub fn restrict_zero(&self, var: Var) -> Self {
        let vi = var.index();
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            if e[vi] == 0 {
                out.set_coeff(e, c.clone());
            }
        }
        out
    }

    /// Coefficient jet of `var^p`: the part of `self` homogeneous of degree `p`
    /// in `var`, with that power removed.
    pub fn coefficient_of(&self, var: Var, p: usize) -> Self {
        let vi = var.index();
        let mut out = Self::zero(self.order.saturating_sub(p));
        for (e, c) in self.terms() {
            if e[vi] == p {
                let mut e2 = e;
                e2[vi] = 0;
                out.set_coeff(e2, c.clone());
            }
        }
        out
    }

    /// Exact quotient by `var`, or an error if some monomial free of `var`
    /// survives. The quotient has order one lower.
    pub fn divide_by(&self, var: Var) -> Result<Self> {
        let vi = var.index();
        let mut out = Self::zero(self.order.saturating_sub(1));
        for (e, c) in self.terms() {
            if e[vi] == 0 {
                if c.is_negligible() {
                    continue;
                }
                return Err(Error::NotDivisible(var));
            }
            let mut e2 = e;
            e2[vi] -= 1;
            out.set_coeff(e2, c.clone());
        }
        Ok(out)
    }

    /// Multiply by `var^p` (order unchanged; overflowing terms are dropped).
    pub fn shift_up(&self, var: Var, p: usize) -> Self {
        let vi = var.index();
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            let mut e2 = e;
            e2[vi] += p;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitute `var -> var^2` (used to lift a function of `w = v^2`).
    pub fn square_var(&self, var: Var) -> Self {
        let vi = var.index();
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            let mut e2 = e;
            e2[vi] *= 2;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Split into parts even and odd in `var`.
    pub fn parity_split(&self, var: Var) -> (Self, Self) {
        let vi = var.index();
        let mut even = Self::zero(self.order);
        let mut odd = Self::zero(self.order);
        for (e, c) in self.terms() {
            if e[vi] % 2 == 0 {
                even.set_coeff(e, c.clone());
            } else {
                odd.set_coeff(e, c.clone());
            }
        }
        (even, odd)
    }

    /// Inverse of `var -> var^2` on a jet containing only even powers of `var`.
    pub fn halve_var(&self, var: Var) -> Result<Self> {
        let vi = var.index();
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            if e[vi] % 2 != 0 {
                return Err(Error::InvariantViolation(format!(
                    "odd power of {var:?} in a jet expected to be even"
                )));
            }
            let mut e2 = e;
            e2[vi] /= 2;
            out.set_coeff(e2, c.clone());
        }
        Ok(out)
    }

    /// Truncated substitution `(u, v, s) -> inner`.
    ///
    /// Every inner jet must have zero constant term; the result is exact
    /// through `min(order(self), order(inner))`.
    pub fn compose(&self, inner: &[Jet<S>; 3]) -> Result<Self> {
        for (var, g) in Var::ALL.iter().zip(inner) {
            if !g.constant_term().is_negligible() {
                return Err(Error::NonvanishingConstantTerm(*var));
            }
        }
        let order = inner.iter().map(|g| g.order).fold(self.order, usize::min);
        let inner = inner.clone().map(|g| g.truncate(order).without_constant());
        Ok(self.truncate(order).horner3(&inner))
    }

    /// Substitute a single variable, leaving the other two in place.
    pub fn substitute(&self, var: Var, g: &Jet<S>) -> Result<Self> {
        if !g.constant_term().is_negligible() {
            return Err(Error::NonvanishingConstantTerm(var));
        }
        let order = self.order.min(g.order);
        let src = self.truncate(order);
        let g = g.truncate(order).without_constant();
        let vi = var.index();
        let mut parts: Vec<Self> = (0..=order).map(|_| Self::zero(order)).collect();
        for (e, c) in src.terms() {
            let mut e2 = e;
            let p = e2[vi];
            e2[vi] = 0;
            parts[p].set_coeff(e2, c.clone());
        }
        let mut acc = parts.pop().unwrap_or_else(|| Self::zero(order));
        while let Some(p) = parts.pop() {
            acc = acc.mul_jet(&g) + p;
        }
        Ok(acc)
    }

    /// Re-expand the stored polynomial about `point`: returns
    /// `q(u, v, s) = p(u + point.u, v + point.v, s + point.s)`.
    ///
    /// Exact for the polynomial the jet stores, which is only an approximation
    /// of the underlying germ away from the origin.
    pub fn translate(&self, point: [S; 3]) -> Self {
        let order = self.order;
        let inner = [
            Self::var(Var::U, order).add_scalar(&point[0]),
            Self::var(Var::V, order).add_scalar(&point[1]),
            Self::var(Var::S, order).add_scalar(&point[2]),
        ];
        self.horner3(&inner)
    }

    /// Nested Horner evaluation used by `compose` and `translate`.
    ///
    /// Truncating intermediate products is exact because products of
    /// polynomials never lower total degree.
    fn horner3(&self, inner: &[Jet<S>; 3]) -> Self {
        let order = self.order;
        let [a, b, c] = inner;
        let mut cpow = Vec::with_capacity(order + 1);
        cpow.push(Self::one(order));
        for k in 1..=order {
            let next = cpow[k - 1].mul_jet(c);
            cpow.push(next);
        }
        let mut acc_i: Option<Self> = None;
        for i in (0..=order).rev() {
            let mut acc_j: Option<Self> = None;
            for j in (0..=order - i).rev() {
                let mut r = Self::zero(order);
                let mut any = false;
                for k in 0..=order - i - j {
                    let cf = &self.coeffs[monomial_index([i, j, k])];
                    if !cf.is_zero() {
                        r.axpy(cf, &cpow[k]);
                        any = true;
                    }
                }
                acc_j = Some(match acc_j {
                    None => r,
                    Some(m) if m.is_zero() => r,
                    Some(m) => {
                        let prod = m.mul_jet(b);
                        if any {
                            prod + r
                        } else {
                            prod
                        }
                    }
                });
            }
            let mi = acc_j.unwrap_or_else(|| Self::zero(order));
            acc_i = Some(match acc_i {
                None => mi,
                Some(m) if m.is_zero() => mi,
                Some(m) => m.mul_jet(a) + mi,
            });
        }
        acc_i.unwrap_or_else(|| Self::zero(order))
    }

    /// Multiplicative inverse of a jet with nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = self.constant_term().clone();
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = S::one() / a0;
        // 1/(a0 (1 + e)) = inv0 * sum (-e)^k
        let e = self.scale(&inv0).add_scalar(&-S::one());
        let neg_e = -e;
        let mut acc = Self::one(self.order);
        for _ in 0..self.order {
            acc = acc.mul_jet(&neg_e).add_scalar(&S::one());
        }
        Ok(acc.scale(&inv0))
    }

    /// Square root of a jet with positive constant term.
    ///
    /// In the exact tower the constant term must be a rational square.
    pub fn sqrt_unit(&self) -> Result<Self> {
        let a0 = self.constant_term().clone();
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if a0 < S::zero() {
            return Err(Error::NegativeConstantTerm);
        }
        let r0 = a0
            .sqrt_exact()
            .ok_or_else(|| Error::IrrationalSqrt(a0.to_string()))?;
        let e = self.scale(&(S::one() / a0)).add_scalar(&-S::one());
        // binomial series of (1 + e)^(1/2), Horner from the top coefficient
        let n = self.order;
        let mut binom = vec![S::one()];
        for k in 1..=n {
            let prev = binom[k - 1].clone();
            let num = S::from_ratio(1, 2) - S::from_i64(k as i64 - 1);
            binom.push(prev * num / S::from_i64(k as i64));
        }
        let mut acc = Self::constant(binom[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul_jet(&e).add_scalar(&binom[k]);
        }
        Ok(acc.scale(&r0))
    }

    /// Evaluate the retained polynomial at a point.
    ///
    /// Only truncation-accurate near the origin.
    pub fn evaluate(&self, point: &[S; 3]) -> S {
        let pows: Vec<Vec<S>> = point
            .iter()
            .map(|x| {
                let mut p = vec![S::one()];
                for k in 1..=self.order {
                    let next = p[k - 1].mul_ref(x);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = S::zero();
        for (e, c) in self.terms() {
            let t = c.mul_ref(&pows[0][e[0]]).mul_ref(&pows[1][e[1]]).mul_ref(&pows[2][e[2]]);
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Evaluate in double precision regardless of the scalar tower.
    pub fn evaluate_f64(&self, point: [f64; 3]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in self.terms() {
            acc += c.to_f64()
                * point[0].powi(e[0] as i32)
                * point[1].powi(e[1] as i32)
                * point[2].powi(e[2] as i32);
        }
        acc
    }

    /// Largest total degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms().map(|(e, _)| e[0] + e[1] + e[2]).max()
    }
}

impl Jet<Rational> {
    pub fn from_ratio_terms(order: usize, terms: &[(Exp, i64, i64)]) -> Self {
        Self::from_terms(
            order,
            terms.iter().map(|&(e, n, d)| (e, Rational::from_ratio(n, d))),
        )
    }
}

impl<S: Scalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet[{}](", self.order)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl<S: Scalar> Jet<S> {
    /// Human-readable polynomial, highest degree first, e.g. `1/2v^3 + u^2v - vs`.
    pub fn pretty(&self) -> String {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + e[1] + e[2], *e)));
        let mut out = String::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let neg = *c < S::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: String = ["u", "v", "s"]
                .iter()
                .zip(e)
                .map(|(name, p)| match p {
                    0 => String::new(),
                    1 => name.to_string(),
                    _ => format!("{name}^{p}"),
                })
                .collect();
            if mono.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, p) in ["u", "v", "s"].iter().zip(e) {
                match p {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{p}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for Jet<S> {
    type Output = Jet<S>;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a.clone() + b.clone())
    }
}

impl<S: Scalar> Add for &Jet<S> {
    type Output = Jet<S>;
    fn add(self, rhs: Self) -> Jet<S> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<S: Scalar> Sub for Jet<S> {
    type Output = Jet<S>;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a.clone() - b.clone())
    }
}

impl<S: Scalar> Sub for &Jet<S> {
    type Output = Jet<S>;
    fn sub(self, rhs: Self) -> Jet<S> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<S: Scalar> Mul for Jet<S> {
    type Output = Jet<S>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_jet(&rhs)
    }
}

impl<S: Scalar> Mul for &Jet<S> {
    type Output = Jet<S>;
    fn mul(self, rhs: Self) -> Jet<S> {
        self.mul_jet(rhs)
    }
}

impl<S: Scalar> Neg for Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Self {
        Jet {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<S: Scalar> Neg for &Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Jet<S> {
        -self.clone()
    }
}

/// Three jets viewed as a vector in R^3.
pub type JetVec<S> = [Jet<S>; 3];

pub fn dot<S: Scalar>(a: &JetVec<S>, b: &JetVec<S>) -> Jet<S> {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross<S: Scalar>(a: &JetVec<S>, b: &JetVec<S>) -> JetVec<S> {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn det3<S: Scalar>(a: &JetVec<S>, b: &JetVec<S>, c: &JetVec<S>) -> Jet<S> {
    dot(a, &cross(b, c))
}

pub fn differentiate_vec<S: Scalar>(a: &JetVec<S>, var: Var) -> JetVec<S> {
    [
        a[0].differentiate(var),
        a[1].differentiate(var),
        a[2].differentiate(var),
    ]
}

pub fn constant_vec<S: Scalar>(a: &JetVec<S>) -> [S; 3] {
    [
        a[0].constant_term().clone(),
        a[1].constant_term().clone(),
        a[2].constant_term().clone(),
    ]
}
