//! Laurent polynomials in `v` with `v² = q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Finitely supported map from exponents of `v` to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// `c · v^e`.
    pub fn monomial(e: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn v() -> Self {
        Self::monomial(1, C::one())
    }

    /// `q = v²`.
    pub fn q() -> Self {
        Self::monomial(2, C::one())
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(e, C::one())
    }

    /// `Σ c_k q^k` from coefficients listed by increasing power of `q`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        let mut out = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            out.add_term(2 * k as i64, C::from_i64(c));
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (&e, a) in &self.terms {
            out.add_term(e, a.clone() * c.clone());
        }
        out
    }

    /// `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Whether only even powers of `v` occur, i.e. this is a Laurent
    /// polynomial in `q`.
    pub fn is_in_q(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Degree in `q`, defined when only even powers occur.
    pub fn degree_q(&self) -> Option<i64> {
        if !self.is_in_q() {
            return None;
        }
        self.max_exp().map(|e| e / 2)
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    /// Evaluates at a numeric `q`. Fails unless every power of `v` is even
    /// and nonnegative.
    pub fn eval_q(&self, q: &C) -> Result<C> {
        let mut acc = C::zero();
        for (&e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(Error::Normalization(format!("odd power v^{e} in {self}")));
            }
            if e < 0 {
                return Err(Error::Normalization(format!("negative power v^{e} in {self}")));
            }
            let mut p = C::one();
            for _ in 0..e / 2 {
                p = p * q.clone();
            }
            acc = acc + c.clone() * p;
        }
        Ok(acc)
    }

    /// Pairs `(exponent of v, coefficient)` in increasing exponent order.
    pub fn to_pairs(&self) -> Vec<(i64, C)> {
        self.terms.iter().map(|(&e, c)| (e, c.clone())).collect()
    }

    /// Renders in `q` when possible, otherwise in `v`.
    pub fn to_q_string(&self) -> String {
        if self.is_in_q() {
            render(self, "q", 2)
        } else {
            render(self, "v", 1)
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))))
    }
}

fn render<C: Coeff>(p: &Laurent<C>, var: &str, step: i64) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let e = e / step;
        let neg = c.clone() < C::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = abs == C::one();
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        match (unit, mono.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono),
            (false, true) => out.push_str(&abs.to_string()),
            (false, false) => out.push_str(&format!("{abs}{mono}")),
        }
    }
    out
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, "v", 1))
    }
}

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<C: Coeff> Add for &Laurent<C> {
    type Output = Laurent<C>;

    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Add for Laurent<C> {
    type Output = Laurent<C>;

    fn add(mut self, rhs: Laurent<C>) -> Laurent<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;

    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;

    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Coeff> Sub for &Laurent<C> {
    type Output = Laurent<C>;

    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Sub for Laurent<C> {
    type Output = Laurent<C>;

    fn sub(self, rhs: Laurent<C>) -> Laurent<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for &Laurent<C> {
    type Output = Laurent<C>;

    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for Laurent<C> {
    type Output = Laurent<C>;

    fn mul(self, rhs: Laurent<C>) -> Laurent<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Laurent<C> {
    fn one() -> Self {
        Laurent::one()
    }
}
