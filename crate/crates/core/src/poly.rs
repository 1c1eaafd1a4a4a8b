//! Exact bivariate polynomials with finite support.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fps::{LaurentPoly, Series};
use crate::rational::{fmt_q, q, Q};

/// `Σ c_{ij} x^i y^j` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn one() -> Self {
        BivariatePoly::monomial(Q::one(), 0, 0)
    }

    pub fn x() -> Self {
        BivariatePoly::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        BivariatePoly::monomial(Q::one(), 0, 1)
    }

    pub fn constant(c: Q) -> Self {
        BivariatePoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        BivariatePoly::from_terms([((i, j), c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Q)>) -> Self {
        let mut p = BivariatePoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// `from_ints(&[((i, j), c), ...])`.
    pub fn from_ints(terms: &[((u32, u32), i64)]) -> Self {
        BivariatePoly::from_terms(terms.iter().map(|&(k, c)| (k, q(c))))
    }

    /// An ordinary polynomial in `x`.
    pub fn from_univariate_x(p: &LaurentPoly) -> Result<Self> {
        let mut out = BivariatePoly::zero();
        for (e, c) in p.terms() {
            let e = u32::try_from(e).map_err(|_| Error::NegativeExponent(e))?;
            out.add_term((e, 0), c.clone());
        }
        Ok(out)
    }

    fn add_term(&mut self, k: (u32, u32), c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Q)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, -c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms().map(|(k, x)| (k, x * c)))
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in other.terms() {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BivariatePoly {
        (0..e).fold(BivariatePoly::one(), |acc, _| acc.mul(self))
    }

    /// `self(a(x, y), b(x, y))`.
    pub fn substitute(&self, a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
        let mut a_pows: Vec<BivariatePoly> = vec![BivariatePoly::one()];
        let mut b_pows: Vec<BivariatePoly> = vec![BivariatePoly::one()];
        let mut out = BivariatePoly::zero();
        for ((i, j), c) in self.terms() {
            while a_pows.len() <= i as usize {
                let next = a_pows.last().unwrap().mul(a);
                a_pows.push(next);
            }
            while b_pows.len() <= j as usize {
                let next = b_pows.last().unwrap().mul(b);
                b_pows.push(next);
            }
            out = out.add(&a_pows[i as usize].mul(&b_pows[j as usize]).scale(c));
        }
        out
    }

    pub fn partial_x(&self) -> BivariatePoly {
        BivariatePoly::from_terms(
            self.terms().filter(|((i, _), _)| *i > 0).map(|((i, j), c)| ((i - 1, j), c * q(i as i64))),
        )
    }

    /// Coefficients of `x^i` as series in `y = z`, i.e. `[x^i] self` evaluated at `y = z`.
    pub fn x_coefficients(&self, prec: usize) -> Vec<Series> {
        let d = self.degree_x().unwrap_or(0) as usize;
        let mut out = vec![Series::zero(prec); d + 1];
        for ((i, j), c) in self.terms() {
            if (j as usize) <= prec {
                let s = &mut out[i as usize];
                *s = s.add(&Series::monomial(c.clone(), j as usize, prec));
            }
        }
        out
    }

    /// `self(x(z), z)` by Horner's rule in `x`.
    pub fn eval_at(&self, x: &Series) -> Series {
        let prec = x.prec();
        let cs = self.x_coefficients(prec);
        let mut acc = cs.last().cloned().unwrap_or_else(|| Series::zero(prec));
        for c in cs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(fmt_q(&mag));
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("z".into()),
                _ => parts.push(format!("z^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
