//! Chebyshev-derived polynomial families `p_n`, `P_n`, `Q_n`, `R_n`.
//!
//! Rows are built from the Chebyshev recurrences evaluated at `(z+2)/2`; the
//! closed-form binomial coefficients are provided separately so each can check
//! the other.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::fps::LaurentPoly;
use crate::poly::BivariatePoly;
use crate::rational::{binomial, fmt_all, frac, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `p_n`, the squares `P_l^2` and `(z+4) U_l^2` at `(z+2)/2`.
    #[serde(rename = "p")]
    LowerP,
    /// `P_n = U_n + U_{n-1}` at `(z+2)/2`.
    #[serde(rename = "P")]
    UpperP,
    /// `Q_n = 2 T_n((z+2)/2)`, `Q_0 = 1`.
    Q,
    /// `R_{2n} = Q_n(z^2)`, `R_{2n+1} = z P_n(z^2)`.
    R,
    T,
    U,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "p" => Some(Family::LowerP),
            "P" => Some(Family::UpperP),
            "Q" => Some(Family::Q),
            "R" => Some(Family::R),
            "T" => Some(Family::T),
            "U" => Some(Family::U),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::LowerP => "p",
            Family::UpperP => "P",
            Family::Q => "Q",
            Family::R => "R",
            Family::T => "T",
            Family::U => "U",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One member of a family, coefficients lowest degree first (empty for 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamilyRow {
    pub family: Family,
    pub index: i64,
    pub coeffs: Vec<Q>,
}

impl PolyFamilyRow {
    fn new(family: Family, index: i64, p: &LaurentPoly) -> Self {
        let deg = p.max_degree().unwrap_or(-1);
        let coeffs = (0..=deg).map(|k| p.coeff(k)).collect();
        PolyFamilyRow { family, index, coeffs }
    }

    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(&self.coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        fmt_all(&self.coeffs)
    }
}

fn z() -> LaurentPoly {
    LaurentPoly::from_ints(&[(1, 1)])
}

fn constant(c: i64) -> LaurentPoly {
    LaurentPoly::from_ints(&[(0, c)])
}

/// `(z + 2) / 2`.
fn shifted_arg() -> LaurentPoly {
    LaurentPoly::from_terms([(0, q(1)), (1, frac(1, 2))])
}

fn u_poly(n: i64) -> LaurentPoly {
    if n < 0 {
        // U_{-1} = 0, U_{-m-1} = -U_{m-1}
        return if n == -1 { LaurentPoly::zero() } else { u_poly(-n - 2).scale(&q(-1)) };
    }
    let two_z = z().scale(&q(2));
    let (mut prev, mut cur) = (LaurentPoly::zero(), constant(1));
    for _ in 0..n {
        let next = two_z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn t_poly(n: i64) -> LaurentPoly {
    let n = n.abs();
    let two_z = z().scale(&q(2));
    let (mut prev, mut cur) = (z(), constant(1));
    // T_{-1} = T_1 = z seeds the recurrence
    for _ in 0..n {
        let next = two_z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn at_shifted(p: &LaurentPoly) -> LaurentPoly {
    p.compose(&shifted_arg()).expect("Chebyshev polynomials have no negative exponents")
}

/// `U_n(z)`; negative indices by `U_{-n-1} = -U_{n-1}`.
pub fn cheb_u(n: i64) -> PolyFamilyRow {
    PolyFamilyRow::new(Family::U, n, &u_poly(n))
}

/// `T_n(z)`; `T_{-n} = T_n`.
pub fn cheb_t(n: i64) -> PolyFamilyRow {
    PolyFamilyRow::new(Family::T, n, &t_poly(n))
}

fn upper_p(n: i64) -> LaurentPoly {
    at_shifted(&u_poly(n).add(&u_poly(n - 1)))
}

/// `p_n` for any integer `n`.
pub fn p_poly(n: i64) -> PolyFamilyRow {
    let l = n.div_euclid(2);
    let p = if n.rem_euclid(2) == 0 {
        upper_p(l).pow(2)
    } else {
        let u = at_shifted(&u_poly(l));
        LaurentPoly::from_ints(&[(0, 4), (1, 1)]).mul(&u.pow(2))
    };
    PolyFamilyRow::new(Family::LowerP, n, &p)
}

/// `P_n` for any integer `n`.
#[allow(non_snake_case)]
pub fn P_poly(n: i64) -> PolyFamilyRow {
    PolyFamilyRow::new(Family::UpperP, n, &upper_p(n))
}

fn q_inner(n: i64) -> LaurentPoly {
    if n == 0 {
        constant(1)
    } else {
        at_shifted(&t_poly(n)).scale(&q(2))
    }
}

/// `Q_n`, `n >= 0`.
#[allow(non_snake_case)]
pub fn Q_poly(n: u32) -> PolyFamilyRow {
    PolyFamilyRow::new(Family::Q, n as i64, &q_inner(n as i64))
}

/// `R_n`, `n >= 0`.
#[allow(non_snake_case)]
pub fn R_poly(n: u32) -> PolyFamilyRow {
    let m = (n / 2) as i64;
    let p = if n.is_multiple_of(2) {
        q_inner(m).stretch(2)
    } else {
        upper_p(m).stretch(2).shift(1)
    };
    PolyFamilyRow::new(Family::R, n as i64, &p)
}

/// The member of `family` with the given index.
pub fn row(family: Family, n: i64) -> PolyFamilyRow {
    match family {
        Family::LowerP => p_poly(n),
        Family::UpperP => P_poly(n),
        Family::Q => Q_poly(n.max(0) as u32),
        Family::R => R_poly(n.max(0) as u32),
        Family::T => cheb_t(n),
        Family::U => cheb_u(n),
    }
}

/// Rows `0..=n_max` of a family's coefficient triangle, for `p`, `P`, `Q`, `R`.
pub fn triangle(family: Family, n_max: usize) -> Vec<Vec<Q>> {
    (0..=n_max as i64)
        .map(|n| {
            let r = row(family, n);
            (0..=n as usize).map(|k| r.coeff(k)).collect()
        })
        .collect()
}

fn bq(n: i64, k: i64) -> Q {
    Q::from_integer(binomial(n, k))
}

/// `d_{n,k} = (n+1)/(k+1) binom(n+k+1, 2k+1)`.
pub fn d_coeff(n: i64, k: i64) -> Q {
    frac(n + 1, k + 1) * bq(n + k + 1, 2 * k + 1)
}

/// `a_{n,k} = (2n+1)/(2k+1) binom(n+k, 2k)`.
pub fn a_coeff(n: i64, k: i64) -> Q {
    frac(2 * n + 1, 2 * k + 1) * bq(n + k, 2 * k)
}

/// `b_{n,k} = binom(n+k, 2k) + binom(n+k-1, 2k)`.
pub fn b_coeff(n: i64, k: i64) -> Q {
    bq(n + k, 2 * k) + bq(n + k - 1, 2 * k)
}

/// `α_{n,k} = binom((n+k)/2, k) + binom((n+k)/2 - 1, k)`, zero when `n+k` is odd.
pub fn alpha_coeff(n: i64, k: i64) -> Q {
    if (n + k).rem_euclid(2) != 0 {
        return Q::zero();
    }
    let h = (n + k) / 2;
    bq(h, k) + bq(h - 1, k)
}

/// Closed-form coefficient for the four named families (`n, k >= 0`).
pub fn closed_form(family: Family, n: i64, k: i64) -> Option<Q> {
    match family {
        Family::LowerP => Some(d_coeff(n, k)),
        Family::UpperP => Some(a_coeff(n, k)),
        Family::Q => Some(b_coeff(n, k)),
        Family::R => Some(alpha_coeff(n, k)),
        _ => None,
    }
}

/// The two-variable substitution identities satisfied by each family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `Σ d_{n,k} (u-v)^{2k+2} (uv)^{n-k} = (u^{n+1} - v^{n+1})^2`
    LowerP,
    /// `Σ a_{n,k} (u-v)^{2k+1} (uv)^{n-k} = u^{2n+1} - v^{2n+1}`
    UpperP,
    /// `Σ b_{n,k} (u-v)^{2k} (uv)^{n-k} = u^{2n} + v^{2n}`, `n >= 1`
    Q,
    /// `Σ α_{n,k} (u^2-v^2)^k (uv)^{n-k} = u^{2n} + (-1)^n v^{2n}`
    R,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::LowerP, Identity::UpperP, Identity::Q, Identity::R];
}

/// Both sides of an identity as bivariate polynomials in `u` (as `x`) and
/// `v` (as `y`). The left side uses the polynomial rows, not the closed forms.
pub fn identity_sides(id: Identity, n: u32) -> (BivariatePoly, BivariatePoly) {
    let u = BivariatePoly::x();
    let v = BivariatePoly::y();
    let uv = u.mul(&v);
    let diff = u.sub(&v);
    let ni = n as i64;
    let (coeffs, base, shift): (Vec<Q>, BivariatePoly, u32) = match id {
        Identity::LowerP => (p_poly(ni).coeffs, diff.pow(2), 2),
        Identity::UpperP => (P_poly(ni).coeffs, diff.pow(2), 1),
        Identity::Q => (Q_poly(n).coeffs, diff.pow(2), 0),
        Identity::R => (R_poly(n).coeffs, u.pow(2).sub(&v.pow(2)), 0),
    };
    let mut lhs = BivariatePoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let k = k as u32;
        if c.is_zero() || k > n {
            continue;
        }
        lhs = lhs.add(&base.pow(k).mul(&uv.pow(n - k)).scale(c));
    }
    lhs = lhs.mul(&diff.pow(shift));
    let rhs = match id {
        Identity::LowerP => u.pow(n + 1).sub(&v.pow(n + 1)).pow(2),
        Identity::UpperP => u.pow(2 * n + 1).sub(&v.pow(2 * n + 1)),
        Identity::Q => u.pow(2 * n).add(&v.pow(2 * n)),
        Identity::R => {
            let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
            u.pow(2 * n).add(&v.pow(2 * n).scale(&sign))
        }
    };
    (lhs, rhs)
}

pub fn identity_holds(id: Identity, n: u32) -> bool {
    let (l, r) = identity_sides(id, n);
    l == r
}
