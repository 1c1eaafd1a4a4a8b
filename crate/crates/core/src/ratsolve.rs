//! B-functions of pseudo-involutions with rational `g = p/q`.
//!
//! With `R(u,v) = p(u)p(v) - q(u)q(v) = S(u+v, uv)`, the relation
//! `p(z)p(-f) = q(z)q(-f)` becomes `S(z-f, -zf) = 0`. Since `f - z = X(zf)`
//! with `X = zB`, the series `X` is the root through the origin of
//! `Φ(x, z) = S(-x, -z)`.

use num_traits::{One, Signed, Zero};

use crate::chebfam::alpha_coeff;
use crate::error::{Error, Result};
use crate::fps::{HalfSeries, LaurentPoly, Series};
use crate::poly::BivariatePoly;
use crate::pseudo::{b_from_f, companion_of, BSequence, Method};
use crate::rational::{parse_q, q, Q};

/// `g = p/q` from numerator and denominator coefficient lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSpec {
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

impl RationalSpec {
    pub fn new(p: LaurentPoly, q: LaurentPoly) -> Result<Self> {
        for poly in [&p, &q] {
            if let Some(lo) = poly.min_degree() {
                if lo < 0 {
                    return Err(Error::NegativeExponent(lo));
                }
            }
            if !poly.coeff(0).is_one() {
                return Err(Error::NotMonicAtZero);
            }
        }
        Ok(RationalSpec { p, q })
    }

    pub fn from_ints(p: &[i64], q: &[i64]) -> Result<Self> {
        let to = |c: &[i64]| LaurentPoly::from_coeffs(&c.iter().map(|&x| crate::rational::q(x)).collect::<Vec<_>>());
        RationalSpec::new(to(p), to(q))
    }

    /// `{"p": ["1"], "q": ["1", "-1", "-1"]}`, coefficients from degree 0.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let list = |key: &str| -> Result<LaurentPoly> {
            let arr = v
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("rational spec needs a {key:?} list")))?;
            let cs = arr
                .iter()
                .map(|c| c.as_str().ok_or_else(|| Error::Parse("coefficients must be strings".into())).and_then(parse_q))
                .collect::<Result<Vec<Q>>>()?;
            Ok(LaurentPoly::from_coeffs(&cs))
        };
        RationalSpec::new(list("p")?, list("q")?)
    }

    pub fn g(&self, prec: usize) -> Result<Series> {
        self.p.to_series(prec)?.div(&self.q.to_series(prec)?)
    }

    fn degree(&self) -> i64 {
        self.p.max_degree().unwrap_or(0).max(self.q.max_degree().unwrap_or(0))
    }
}

/// `R(u, v) = p(u)p(v) - q(u)q(v)` with `u` as `x` and `v` as `y`.
pub fn r_poly(spec: &RationalSpec) -> BivariatePoly {
    let side = |p: &LaurentPoly| {
        let pu = BivariatePoly::from_univariate_x(p).expect("ordinary polynomial");
        let pv = pu.substitute(&BivariatePoly::y(), &BivariatePoly::zero());
        pu.mul(&pv)
    };
    side(&spec.p).sub(&side(&spec.q))
}

/// Power sums `u^m + v^m` as polynomials in `x = u+v`, `y = uv`.
fn power_sums(m_max: usize) -> Vec<BivariatePoly> {
    let x = BivariatePoly::x();
    let y = BivariatePoly::y();
    let mut s = vec![BivariatePoly::constant(q(2)), x.clone()];
    for m in 2..=m_max.max(1) {
        let next = x.mul(&s[m - 1]).sub(&y.mul(&s[m - 2]));
        s.push(next);
    }
    s
}

/// `S` with `S(u+v, uv) = R(u, v)`.
pub fn symmetrize(spec: &RationalSpec) -> Result<BivariatePoly> {
    if spec.p == spec.q {
        return Err(Error::DegenerateRational);
    }
    let d = spec.degree().max(0) as usize;
    let r = |a: usize, b: usize| spec.p.coeff(a as i64) * spec.p.coeff(b as i64) - spec.q.coeff(a as i64) * spec.q.coeff(b as i64);
    let s = power_sums(d);
    let y = BivariatePoly::y();
    let mut out = BivariatePoly::zero();
    for a in 0..=d {
        let raa = r(a, a);
        if !raa.is_zero() {
            out = out.add(&y.pow(a as u32).scale(&raa));
        }
        for b in 0..a {
            // u^a v^b + u^b v^a = (uv)^b (u^{a-b} + v^{a-b})
            let rab = r(a, b);
            if !rab.is_zero() {
                out = out.add(&y.pow(b as u32).mul(&s[a - b]).scale(&rab));
            }
        }
    }
    if !out.coeff(0, 0).is_zero() {
        return Err(Error::SanityCheck("S(0,0) must vanish"));
    }
    Ok(out)
}

/// `Φ(x, z) = S(-x, -z)`, negated if needed so the `x` coefficient is positive.
pub fn b_equation(spec: &RationalSpec) -> Result<BivariatePoly> {
    let s = symmetrize(spec)?;
    let minus = BivariatePoly::constant(q(-1));
    let phi = s.substitute(&BivariatePoly::x().mul(&minus), &BivariatePoly::y().mul(&minus));
    Ok(if phi.coeff(1, 0).is_negative() { phi.scale(&q(-1)) } else { phi })
}

/// The same equation in `y = B`: `-Φ(zy, z)/z`, in variables `(y, z)`.
pub fn b_equation_in_b(phi: &BivariatePoly) -> Result<BivariatePoly> {
    let mut terms = Vec::new();
    for ((i, j), c) in phi.terms() {
        let e = i + j;
        if e == 0 {
            return Err(Error::SanityCheck("Φ(0,0) must vanish"));
        }
        terms.push(((i, e - 1), -c));
    }
    Ok(BivariatePoly::from_terms(terms))
}

fn cheb_terms(coeffs: &LaurentPoly, out: &mut [Series], t_prec: usize, sign: &Q) {
    let d = coeffs.max_degree().unwrap_or(0).max(0);
    for n in 0..=d {
        for k in 0..=(d - n) {
            let w = coeffs.coeff(n) * coeffs.coeff(n + k) * sign;
            if w.is_zero() {
                continue;
            }
            // (-1)^n w t^{2n+k} R_k(-t y), R_k(s) = Σ_i α_{k,i} s^i
            for i in 0..=k {
                let a = alpha_coeff(k, i);
                if a.is_zero() {
                    continue;
                }
                let parity = if (n + i) % 2 == 0 { q(1) } else { q(-1) };
                let e = (2 * n + k + i) as usize;
                let term = Series::monomial(&w * a * parity, e, t_prec);
                let slot = &mut out[i as usize];
                *slot = slot.add(&term);
            }
        }
    }
}

/// `Σ_{n,k} (-1)^n (c_n c_{n+k} - d_n d_{n+k}) z^{n+k/2} R_k(-√z y)` as a
/// polynomial in `y` whose coefficients live in the `√z` grading.
pub fn b_equation_cheb(spec: &RationalSpec) -> Result<Vec<HalfSeries>> {
    if spec.p == spec.q {
        return Err(Error::DegenerateRational);
    }
    let d = spec.degree().max(0) as usize;
    let t_prec = 2 * d + 1;
    let mut coeffs = vec![Series::zero(t_prec); d + 1];
    cheb_terms(&spec.p, &mut coeffs, t_prec, &q(1));
    cheb_terms(&spec.q, &mut coeffs, t_prec, &q(-1));
    Ok(coeffs.into_iter().map(HalfSeries::from_t_series).collect())
}

/// Projects the Chebyshev-form equation to a polynomial in `(y, z)`; fails if
/// any half-integer power of `z` survives.
pub fn collect_cheb(eq: &[HalfSeries]) -> Result<BivariatePoly> {
    let mut terms = Vec::new();
    for (i, h) in eq.iter().enumerate() {
        let s = h.project()?;
        for (j, c) in s.coeffs().iter().enumerate() {
            terms.push(((i as u32, j as u32), c.clone()));
        }
    }
    Ok(BivariatePoly::from_terms(terms))
}

/// Rewrites an equation `E(z, y)` in `x = zy`: `E(z, x/z)`, which must be a
/// polynomial.
pub fn in_x(eq_y: &BivariatePoly) -> Result<BivariatePoly> {
    let mut terms = Vec::new();
    for ((i, j), c) in eq_y.terms() {
        if j < i {
            return Err(Error::NotDivisible(j as usize));
        }
        terms.push(((i, j - i), c.clone()));
    }
    Ok(BivariatePoly::from_terms(terms))
}

/// The root `x(z)` with `x(0) = 0` of `Φ(x, z) = 0`, through `z^n`, by Newton
/// iteration.
pub fn solve_series_root(phi: &BivariatePoly, n: usize) -> Result<Series> {
    if !phi.coeff(0, 0).is_zero() || phi.coeff(1, 0).is_zero() {
        return Err(Error::NotASimpleRoot);
    }
    let dphi = phi.partial_x();
    let steps = (usize::BITS - n.leading_zeros()) as usize + 1;
    let mut x = Series::zero(n);
    for _ in 0..steps {
        let num = phi.eval_at(&x);
        if num.order().is_none() {
            break;
        }
        let den = dphi.eval_at(&x);
        x = x.sub(&num.div(&den)?);
    }
    if phi.eval_at(&x).order().is_some() {
        return Err(Error::SanityCheck("Newton iteration did not converge"));
    }
    Ok(x)
}

/// `b_0..=b_n` for `g = p/q` from the root of [`b_equation`]. When the origin
/// is not a simple root the B-sequence comes from the companion and the
/// defining equation instead, and carries that origin.
pub fn b_from_rational(spec: &RationalSpec, n: usize) -> Result<BSequence> {
    let phi = b_equation(spec)?;
    match solve_series_root(&phi, n + 1) {
        Ok(x) => Ok(BSequence::from_series(&x.shift_down(1)?, Method::Rational)),
        Err(Error::NotASimpleRoot) => {
            log::warn!("origin is not a simple root of {phi}; using companion_of + b_from_f");
            let m = 2 * n + 2;
            let f = companion_of(&spec.g(m)?, m)?;
            b_from_f(&f, n)
        }
        Err(e) => Err(e),
    }
}

/// `b_0..=b_n` from the root of the Chebyshev-form equation.
pub fn b_from_rational_cheb(spec: &RationalSpec, n: usize) -> Result<BSequence> {
    let eq = collect_cheb(&b_equation_cheb(spec)?)?;
    let phi = in_x(&eq)?;
    let x = solve_series_root(&phi, n + 1)?;
    Ok(BSequence::from_series(&x.shift_down(1)?, Method::Rational))
}
