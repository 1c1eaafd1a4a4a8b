use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::rational::{fmt_q, over_common_denominator, q, sqrt_q, Q};

/// A truncated formal power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`
/// with exact rational coefficients.
///
/// The precision `N` is part of the value: two series are equal only if they
/// agree on every stored coefficient *and* on precision. Operations never pad
/// unknown coefficients with zeros; precision only ever goes down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<Q>,
}

impl Series {
    /// Series whose coefficients 0..=N are `coeffs` (so `N = coeffs.len() - 1`).
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least one coefficient");
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Series::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    /// An exact polynomial viewed at precision `prec`; missing coefficients
    /// are genuinely zero, extra ones are dropped.
    pub fn polynomial(coeffs: &[Q], prec: usize) -> Self {
        Series::from_fn(prec, |n| coeffs.get(n).cloned().unwrap_or_else(Q::zero))
    }

    pub fn polynomial_ints(coeffs: &[i64], prec: usize) -> Self {
        Series::from_fn(prec, |n| coeffs.get(n).map(|&c| q(c)).unwrap_or_else(Q::zero))
    }

    pub fn from_fn(prec: usize, f: impl FnMut(usize) -> Q) -> Self {
        Series::new((0..=prec).map(f).collect())
    }

    pub fn zero(prec: usize) -> Self {
        Series::from_fn(prec, |_| Q::zero())
    }

    pub fn one(prec: usize) -> Self {
        Series::constant(Q::one(), prec)
    }

    pub fn constant(c: Q, prec: usize) -> Self {
        let mut s = Series::zero(prec);
        s.coeffs[0] = c;
        s
    }

    /// The identity function `z`.
    pub fn var(prec: usize) -> Self {
        Series::monomial(Q::one(), 1, prec)
    }

    pub fn monomial(c: Q, degree: usize, prec: usize) -> Self {
        let mut s = Series::zero(prec);
        if degree <= prec {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    /// Coefficient of `z^n`.
    ///
    /// # Panics
    /// If `n` exceeds the precision.
    pub fn coeff(&self, n: usize) -> &Q {
        &self.coeffs[n]
    }

    /// Coefficient of `z^n` or `None` if it is not known.
    pub fn get(&self, n: usize) -> Option<&Q> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient; `None` means "infinite"
    /// (every stored coefficient is zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Series {
        let p = prec.min(self.prec());
        Series::new(self.coeffs[..=p].to_vec())
    }

    /// True if both series store coefficients through `depth` and those agree.
    pub fn agrees_to(&self, other: &Series, depth: usize) -> bool {
        depth <= self.prec() && depth <= other.prec() && self.coeffs[..=depth] == other.coeffs[..=depth]
    }

    /// First index, within the common precision, at which the series differ.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        let p = self.prec().min(other.prec());
        (0..=p).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    // ---- ring structure ----

    pub fn add(&self, other: &Series) -> Series {
        let p = self.prec().min(other.prec());
        Series::from_fn(p, |n| &self.coeffs[n] + &other.coeffs[n])
    }

    pub fn sub(&self, other: &Series) -> Series {
        let p = self.prec().min(other.prec());
        Series::from_fn(p, |n| &self.coeffs[n] - &other.coeffs[n])
    }

    pub fn neg(&self) -> Series {
        Series::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Adds `c` to the constant term.
    pub fn add_constant(&self, c: &Q) -> Series {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    /// Cauchy product truncated to the smaller precision.
    pub fn mul(&self, other: &Series) -> Series {
        self.mul_with(other, Strategy::default())
    }

    pub fn mul_with(&self, other: &Series, strategy: Strategy) -> Series {
        let p = self.prec().min(other.prec());
        let (a, da) = over_common_denominator(&self.coeffs[..=p]);
        let (b, db) = over_common_denominator(&other.coeffs[..=p]);
        let den = da * db;
        Series::new(strategy.for_len(p + 1).map_range(p + 1, |n| {
            let mut acc = BigInt::zero();
            for i in 0..=n {
                if !a[i].is_zero() && !b[n - i].is_zero() {
                    acc += &a[i] * &b[n - i];
                }
            }
            Q::new(acc, den.clone())
        }))
    }

    pub fn square(&self) -> Series {
        self.mul(self)
    }

    pub fn pow(&self, e: usize) -> Series {
        let mut acc = Series::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Integer power; negative exponents go through [`Series::recip`].
    pub fn pow_i(&self, e: i64) -> Result<Series> {
        if e >= 0 {
            Ok(self.pow(e as usize))
        } else {
            Ok(self.recip()?.pow((-e) as usize))
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Series> {
        let a = &self.coeffs;
        if a[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a[0].recip();
        let mut b: Vec<Q> = Vec::with_capacity(a.len());
        b.push(inv0.clone());
        for n in 1..a.len() {
            let mut acc = Q::zero();
            for i in 1..=n {
                if !a[i].is_zero() {
                    acc += &a[i] * &b[n - i];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Series::new(b))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.recip()?))
    }

    /// `z^k * self`; precision grows by `k`.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut c = vec![Q::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Series::new(c)
    }

    /// `self / z^k`; requires the first `k` coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if k > self.prec() {
            return Err(Error::InsufficientPrecision { needed: k, available: self.prec() });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(k));
        }
        Ok(Series::new(self.coeffs[k..].to_vec()))
    }

    // ---- composition ----

    /// `outer ∘ inner` evaluated by Horner's rule.
    ///
    /// With `order(inner) = k >= 1` the result has precision
    /// `min(prec(outer) * k, prec(inner))`. An all-zero inner series yields the
    /// constant term of `outer` at the inner precision. Inner series of order 0
    /// are rejected; polynomials composed with such series go through
    /// [`crate::fps::LaurentPoly::eval_series`].
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        let k = match inner.order() {
            None => return Ok(Series::constant(self.coeffs[0].clone(), inner.prec())),
            Some(0) => return Err(Error::DivergentComposition),
            Some(k) => k,
        };
        let p = (self.prec() * k).min(inner.prec());
        let inner = inner.truncate(p);
        let top = (p / k).min(self.prec());
        let mut acc = Series::constant(self.coeffs[top].clone(), p);
        for i in (0..top).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse by the triangular coefficient solve: the degree-n
    /// coefficient of `f ∘ g = z` is linear in `g_n` with pivot `f'(0)`.
    pub fn comp_inverse(&self) -> Result<Series> {
        if self.order() != Some(1) {
            return Err(Error::NotOrderOne);
        }
        let n_max = self.prec();
        let f = &self.coeffs;
        let lead_inv = f[1].recip();
        let mut table = PowerTable::new(lead_inv.clone());
        for n in 2..=n_max {
            table.extend_to(n);
            let mut acc = Q::zero();
            for j in 2..=n {
                if !f[j].is_zero() {
                    acc += &f[j] * table.get(j, n);
                }
            }
            table.push_base(-acc * &lead_inv);
        }
        Ok(Series::new(table.base()))
    }

    /// Compositional inverse by Lagrange inversion,
    /// `[z^n] g = (1/n) [z^{n-1}] (z/f)^n`. Kept as an independent oracle for
    /// [`Series::comp_inverse`].
    pub fn comp_inverse_lagrange(&self) -> Result<Series> {
        if self.order() != Some(1) {
            return Err(Error::NotOrderOne);
        }
        let n_max = self.prec();
        let phi = self.shift_down(1)?.recip()?;
        let mut out = vec![Q::zero(); n_max + 1];
        let mut power = Series::one(phi.prec());
        for n in 1..=n_max {
            power = power.mul(&phi);
            out[n] = power.coeff(n - 1) / q(n as i64);
        }
        Ok(Series::new(out))
    }

    /// `self(-z)`.
    pub fn reflect(&self) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `self(c z)`.
    pub fn dilate(&self, c: &Q) -> Series {
        let mut pw = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x * &pw);
            pw *= c;
        }
        Series::new(out)
    }

    /// `self(z^k)`; a prec-N series becomes exact through `k(N+1) - 1`.
    pub fn stretch(&self, k: usize) -> Series {
        assert!(k >= 1);
        let p = k * (self.prec() + 1) - 1;
        let mut out = vec![Q::zero(); p + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            out[n * k] = c.clone();
        }
        Series::new(out)
    }

    pub fn derivative(&self) -> Series {
        if self.prec() == 0 {
            return Series::zero(0);
        }
        Series::from_fn(self.prec() - 1, |n| &self.coeffs[n + 1] * q(n as i64 + 1))
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Series {
        let mut out = vec![Q::zero()];
        out.extend(self.coeffs.iter().enumerate().map(|(n, c)| c / q(n as i64 + 1)));
        Series::new(out)
    }

    // ---- radicals and transcendental functions ----

    /// Square root with positive leading coefficient.
    ///
    /// For `order(self) = 2m` the result has order `m` and precision `N - m`.
    pub fn sqrt(&self) -> Result<Series> {
        let ord = self.order().ok_or(Error::IndeterminateOrder)?;
        if ord % 2 == 1 {
            return Err(Error::OddOrder);
        }
        let m = ord / 2;
        let b = self.shift_down(ord)?;
        let lead = b.coeffs[0].clone();
        let s0 = sqrt_q(&lead).ok_or_else(|| Error::NonSquareLeadingCoefficient(fmt_q(&lead)))?;
        let two_s0_inv = (&s0 * q(2)).recip();
        let mut s: Vec<Q> = Vec::with_capacity(b.coeffs.len());
        s.push(s0);
        for n in 1..b.coeffs.len() {
            let mut acc = b.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s.push(acc * &two_s0_inv);
        }
        Ok(Series::new(s).shift_up(m))
    }

    /// `exp(self)` from `e' = self' * e`; requires a zero constant term.
    pub fn exp(&self) -> Result<Series> {
        let a = &self.coeffs;
        if !a[0].is_zero() {
            return Err(Error::BadConstantTerm("exp requires a(0) = 0"));
        }
        let mut e: Vec<Q> = Vec::with_capacity(a.len());
        e.push(Q::one());
        for n in 1..a.len() {
            let mut acc = Q::zero();
            for k in 1..=n {
                if !a[k].is_zero() {
                    acc += &a[k] * &e[n - k] * q(k as i64);
                }
            }
            e.push(acc / q(n as i64));
        }
        Ok(Series::new(e))
    }

    /// `log(self)` from `self * l' = self'`; requires constant term 1.
    pub fn log(&self) -> Result<Series> {
        let a = &self.coeffs;
        if !a[0].is_one() {
            return Err(Error::BadConstantTerm("log requires a(0) = 1"));
        }
        let mut l: Vec<Q> = Vec::with_capacity(a.len());
        l.push(Q::zero());
        for n in 1..a.len() {
            let mut acc = Q::zero();
            for k in 1..n {
                if !l[k].is_zero() {
                    acc += &l[k] * &a[n - k] * q(k as i64);
                }
            }
            l.push(&a[n] - acc / q(n as i64));
        }
        Ok(Series::new(l))
    }

    // ---- parity ----

    /// Splits `h = z h_o(z^2) + z^2 h_e(z^2)`; requires `h(0) = 0`.
    pub fn parity_parts(&self) -> Result<(Series, Series)> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let n = self.prec();
        if n < 2 {
            return Err(Error::InsufficientPrecision { needed: 2, available: n });
        }
        let odd = Series::from_fn((n - 1) / 2, |i| self.coeffs[2 * i + 1].clone());
        let even = Series::from_fn((n - 2) / 2, |i| self.coeffs[2 * i + 2].clone());
        Ok((odd, even))
    }

    /// Inverse of [`Series::parity_parts`].
    pub fn from_parity_parts(odd: &Series, even: &Series) -> Series {
        odd.stretch(2).shift_up(1).add(&even.stretch(2).shift_up(2))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{}", fmt_q(&mag))?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{}*z", fmt_q(&mag))?,
                (_, true) => write!(f, "z^{n}")?,
                (_, false) => write!(f, "{}*z^{n}", fmt_q(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.prec() + 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                Series::$m(self, rhs)
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                Series::$m(&self, &rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                Series::$m(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(&self)
    }
}

/// Powers `g, g^2, g^3, ...` of an order-1 series whose coefficients are
/// discovered one degree at a time.
///
/// The degree-n coefficient of `g^j` for `j >= 2` involves only `g_1..g_{n-1}`,
/// so it can be produced before `g_n` is known. That is the structure every
/// triangular solve in the crate relies on.
pub(crate) struct PowerTable {
    // rows[j] holds the known coefficients of g^j, indices 0..len
    rows: Vec<Vec<Q>>,
}

impl PowerTable {
    pub(crate) fn new(g1: Q) -> Self {
        PowerTable { rows: vec![Vec::new(), vec![Q::zero(), g1]] }
    }

    /// Number of known coefficients of `g`.
    pub(crate) fn known(&self) -> usize {
        self.rows[1].len()
    }

    /// Fills in degree `n` of `g^j` for `2 <= j <= n`. Requires `g_1..g_{n-1}`.
    pub(crate) fn extend_to(&mut self, n: usize) {
        debug_assert_eq!(self.known(), n);
        if self.rows.len() <= n {
            // g^n starts with n zeros below its leading term
            let zeros = vec![Q::zero(); n];
            self.rows.push(zeros);
        }
        for j in 2..=n {
            // [z^n] g^j = sum_{i=1}^{n-j+1} g_i [z^{n-i}] g^{j-1}
            let mut acc = Q::zero();
            let (lower, upper) = self.rows.split_at_mut(j);
            let base = &lower[1];
            let prev = &lower[j - 1];
            for i in 1..=(n + 1 - j) {
                let gi = &base[i];
                if !gi.is_zero() {
                    let pv = &prev[n - i];
                    if !pv.is_zero() {
                        acc += gi * pv;
                    }
                }
            }
            let row = &mut upper[0];
            while row.len() < n {
                row.push(Q::zero());
            }
            row.push(acc);
        }
    }

    /// `[z^n] g^j`, valid after `extend_to(n)`.
    pub(crate) fn get(&self, j: usize, n: usize) -> &Q {
        &self.rows[j][n]
    }

    pub(crate) fn push_base(&mut self, gn: Q) {
        self.rows[1].push(gn);
    }

    pub(crate) fn base(self) -> Vec<Q> {
        self.rows.into_iter().nth(1).unwrap()
    }
}
