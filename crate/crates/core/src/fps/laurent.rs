use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Series;
use crate::error::{Error, Result};
use crate::rational::{factorial, fmt_q, q, Q};

/// A Laurent polynomial: finitely many terms `c_j z^j` with `j` in Z.
///
/// Zero coefficients are never stored, so `min_degree`/`max_degree` are the
/// true extreme exponents of a nonzero polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `from_ints(&[(exponent, coefficient), ...])`.
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, q(c))))
    }

    /// Ordinary polynomial from its coefficient list, lowest degree first.
    pub fn from_coeffs(coeffs: &[Q]) -> Self {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    pub fn monomial(c: Q, e: i64) -> Self {
        LaurentPoly::from_terms([(e, c)])
    }

    fn add_term(&mut self, e: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> LaurentPoly {
        (0..e).fold(LaurentPoly::monomial(Q::one(), 0), |acc, _| acc.mul(self))
    }

    /// `z^k * self`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e + k, c.clone())))
    }

    /// `self(1/z)`.
    pub fn invert_var(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// `γ(1)`, the coefficient sum.
    pub fn at_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    /// `γ'(1) = Σ j c_j`.
    pub fn derivative_at_one(&self) -> Q {
        self.terms().fold(Q::zero(), |a, (e, c)| a + c * q(e))
    }

    /// Sum of the minimum and maximum degrees.
    pub fn darga(&self) -> Result<i64> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => Ok(lo + hi),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    /// `γ(z) = z^d γ(1/z)` with `d` the darga: the coefficient vector reads the
    /// same in both directions.
    pub fn is_generalized_palindrome(&self) -> bool {
        match self.darga() {
            Ok(d) => self.terms().all(|(e, c)| self.coeff(d - e) == *c),
            Err(_) => false,
        }
    }

    /// `(z^{-ℓ} γ, ℓ)` with `ℓ` the minimum degree, so the first factor is an
    /// ordinary polynomial with nonzero constant term.
    pub fn split_min_degree(&self) -> Result<(LaurentPoly, i64)> {
        let lo = self.min_degree().ok_or(Error::ZeroPolynomial)?;
        Ok((self.shift(-lo), lo))
    }

    /// `self(inner)` for an ordinary polynomial `self`.
    pub fn compose(&self, inner: &LaurentPoly) -> Result<LaurentPoly> {
        if let Some(lo) = self.min_degree() {
            if lo < 0 {
                return Err(Error::NegativeExponent(lo));
            }
        }
        let mut out = LaurentPoly::zero();
        let mut pw = LaurentPoly::monomial(Q::one(), 0);
        let hi = self.max_degree().unwrap_or(0);
        for e in 0..=hi {
            let c = self.coeff(e);
            if !c.is_zero() {
                out = out.add(&pw.scale(&c));
            }
            if e < hi {
                pw = pw.mul(inner);
            }
        }
        Ok(out)
    }

    /// `self(z^k)`.
    pub fn stretch(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        self.terms().fold(Q::zero(), |a, (e, c)| a + c * crate::rational::pow_q(x, e))
    }

    /// As a power series; fails on negative exponents.
    pub fn to_series(&self, prec: usize) -> Result<Series> {
        if let Some(lo) = self.min_degree() {
            if lo < 0 {
                return Err(Error::NegativeExponent(lo));
            }
        }
        Ok(Series::from_fn(prec, |n| self.coeff(n as i64)))
    }

    /// `γ(s)`; negative exponents use powers of `1/s`.
    pub fn eval_series(&self, s: &Series) -> Result<Series> {
        let prec = s.prec();
        let mut out = Series::zero(prec);
        let (lo, hi) = match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(out),
        };
        if hi > 0 {
            let mut pw = Series::one(prec);
            for e in 1..=hi {
                pw = pw.mul(s);
                let c = self.coeff(e);
                if !c.is_zero() {
                    out = out.add(&pw.scale(&c));
                }
            }
        }
        out = out.add_constant(&self.coeff(0));
        if lo < 0 {
            let inv = s.recip()?;
            let mut pw = Series::one(prec);
            for e in 1..=(-lo) {
                pw = pw.mul(&inv);
                let c = self.coeff(-e);
                if !c.is_zero() {
                    out = out.add(&pw.scale(&c));
                }
            }
        }
        Ok(out)
    }

    /// `γ(e^{sz})` to precision `prec`: coefficient n is `Σ_j c_j (s j)^n / n!`.
    pub fn eval_exp(&self, s: i64, prec: usize) -> Series {
        Series::from_fn(prec, |n| {
            let mut acc = Q::zero();
            for (e, c) in self.terms() {
                acc += c * num_traits::pow(q(s * e), n);
            }
            acc / Q::from_integer(factorial(n))
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            match e {
                0 => write!(f, "{}", fmt_q(&mag))?,
                _ if mag.is_one() => write!(f, "z^{e}")?,
                _ => write!(f, "{}*z^{e}", fmt_q(&mag))?,
            }
        }
        Ok(())
    }
}
