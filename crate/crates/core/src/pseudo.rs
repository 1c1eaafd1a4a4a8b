//! Pseudo-involutions: B-functions, β-sequences, companions, pseudo-halves.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::fps::{PowerTable, Series};
use crate::rational::{binomial, factorial, fmt_all, q, Q};
use crate::riordan::{RiordanArray, TriangularMatrix};

/// The route a B-sequence was computed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Definition,
    Matrix,
    Half,
    Gamma,
    Rational,
    ClosedForm,
}

impl Method {
    pub const ALL: [Method; 6] =
        [Method::Definition, Method::Matrix, Method::Half, Method::Gamma, Method::Rational, Method::ClosedForm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Definition => "definition",
            Method::Matrix => "matrix",
            Method::Half => "half",
            Method::Gamma => "gamma",
            Method::Rational => "rational",
            Method::ClosedForm => "closed-form",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients `b_0, b_1, ...` of a B-function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSequence {
    pub b: Vec<Q>,
    pub origin: Method,
}

impl BSequence {
    pub fn new(b: Vec<Q>, origin: Method) -> Self {
        BSequence { b, origin }
    }

    pub fn from_series(s: &Series, origin: Method) -> Self {
        BSequence { b: s.coeffs().to_vec(), origin }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn truncate(&self, len: usize) -> BSequence {
        BSequence { b: self.b.iter().take(len).cloned().collect(), origin: self.origin }
    }

    /// As a series; `None` when empty.
    pub fn series(&self) -> Option<Series> {
        (!self.b.is_empty()).then(|| Series::new(self.b.clone()))
    }

    /// `β_n = (2n+1)! b_n`.
    pub fn beta(&self) -> Vec<Q> {
        beta_from_b(&self.b)
    }

    /// `{"method": ..., "b": [...], "beta": [...]?}` with exact rationals as strings.
    pub fn to_json(&self, with_beta: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "method": self.origin.name(),
            "b": fmt_all(&self.b),
        });
        if with_beta {
            v["beta"] = serde_json::json!(fmt_all(&self.beta()));
        }
        v
    }

    /// First index where two sequences differ within their common length.
    pub fn first_difference(&self, other: &BSequence) -> Option<usize> {
        self.b.iter().zip(&other.b).position(|(a, b)| a != b)
    }
}

pub fn beta_from_b(b: &[Q]) -> Vec<Q> {
    b.iter().enumerate().map(|(n, x)| x * Q::from_integer(factorial(2 * n + 1))).collect()
}

fn require_unit_slope(f: &Series) -> Result<()> {
    if f.prec() < 1 || !f.coeff(0).is_zero() {
        return Err(Error::NotOrderOne);
    }
    if !f.coeff(1).is_one() {
        return Err(Error::NegativeLinearTerm);
    }
    Ok(())
}

/// Solves `f - z = Σ b_n (zf)^{n+1}` for every `b_n` the precision of `f`
/// determines, checking each odd-degree equation on the way.
fn solve_b_equation(f: &Series) -> Result<Vec<Q>> {
    require_unit_slope(f)?;
    let top = f.prec();
    let w = f.shift_up(1).truncate(top);
    let mut residual = f.sub(&Series::var(top));
    let mut b = Vec::new();
    let mut power = Series::one(top);
    for m in 2..=top {
        if m % 2 == 1 {
            if !residual.coeff(m).is_zero() {
                return Err(Error::InconsistentBEquation { degree: m });
            }
            continue;
        }
        // (zf)^{m/2} = z^m + ..., so b_{m/2-1} is the residual coefficient
        power = power.mul(&w);
        let bn = residual.coeff(m).clone();
        if !bn.is_zero() {
            residual = residual.sub(&power.scale(&bn));
        }
        b.push(bn);
    }
    Ok(b)
}

/// `b_0..=b_n` from the defining equation `f - z = (zB)∘(zf)`.
///
/// Needs `prec(f) >= 2n + 2`. Every coefficient equation up to `prec(f)` is
/// checked, so a non-pseudo-involutory `f` is reported even when the requested
/// prefix is short.
pub fn b_from_f(f: &Series, n: usize) -> Result<BSequence> {
    let b = solve_b_equation(f)?;
    if b.len() < n + 1 {
        return Err(Error::InsufficientPrecision { needed: 2 * n + 2, available: f.prec() });
    }
    Ok(BSequence::new(b[..=n].to_vec(), Method::Definition))
}

/// The B-sequence read off a pseudo-involution's matrix.
///
/// The `k = 0` instances of `d_{n+1,k+1} = d_{n,k} + Σ b_j d_{n-j,k+j+1}` with
/// odd `n` determine `b_j`; all other instances inside the matrix are checked.
pub fn b_from_matrix(m: &TriangularMatrix) -> Result<BSequence> {
    b_from_matrix_with(m, Strategy::default())
}

pub fn b_from_matrix_with(m: &TriangularMatrix, strategy: Strategy) -> Result<BSequence> {
    if !m.is_unit_diagonal() {
        return Err(Error::NotUnitDiagonal);
    }
    let dim = m.dim();
    let mut b: Vec<Q> = Vec::new();
    // n = 2j+1, entry d_{2j+2,1}
    let mut j = 0;
    while 2 * j + 2 < dim {
        let n = 2 * j + 1;
        let mut acc = m.get(n + 1, 1) - m.get(n, 0);
        for (i, bi) in b.iter().enumerate() {
            acc -= bi * m.get(n - i, i + 1);
        }
        b.push(acc);
        j += 1;
    }
    let rows: Vec<usize> = (0..dim.saturating_sub(1)).collect();
    let failures = strategy.for_len(rows.len()).map_slice(&rows, |&n| {
        (0..=n).find(|&k| {
            let mut rhs = m.get(n, k);
            for (jj, bj) in b.iter().enumerate() {
                if jj > n || k + jj + 1 > n - jj {
                    break;
                }
                rhs += bj * m.get(n - jj, k + jj + 1);
            }
            m.get(n + 1, k + 1) != rhs
        })
    });
    if let Some((n, k)) = failures.iter().enumerate().find_map(|(n, k)| k.map(|k| (n, k))) {
        return Err(Error::RecurrenceViolated { n: n + 1, k: k + 1 });
    }
    Ok(BSequence::new(b, Method::Matrix))
}

/// Checks `α_{n+1,k+1} = α_{n,k} + Σ_j binom(n-k, 2j+1) β_j α_{n-j,k+j+1}`
/// with `α_{n,k} = d_{n,k}/binom(n,k)` for every instance inside the matrix.
/// Entries of `beta` beyond its length count as zero.
pub fn beta_check_matrix(m: &TriangularMatrix, beta: &[Q]) -> bool {
    let alpha = |n: usize, k: usize| -> Q {
        if k > n {
            Q::zero()
        } else {
            m.get(n, k) / Q::from_integer(binomial(n as i64, k as i64))
        }
    };
    let dim = m.dim();
    let rows: Vec<usize> = (0..dim.saturating_sub(1)).collect();
    let ok = Strategy::default().for_len(rows.len()).map_slice(&rows, |&n| {
        (0..=n).all(|k| {
            let mut rhs = alpha(n, k);
            for (j, bj) in beta.iter().enumerate() {
                if 2 * j + 1 > n - k {
                    break;
                }
                if bj.is_zero() {
                    continue;
                }
                let c = Q::from_integer(binomial((n - k) as i64, 2 * j as i64 + 1));
                rhs += c * bj * alpha(n - j, k + j + 1);
            }
            alpha(n + 1, k + 1) == rhs
        })
    });
    ok.into_iter().all(|x| x)
}

/// The pseudo-involutory companion `f` of `g` through `z^n`.
///
/// Solves `g (g∘(-f)) = 1` one degree at a time, pivoting on `-g_1`, then
/// checks `f̄ = (-z)∘f∘(-z)` to depth `n`.
pub fn companion_of(g: &Series, n: usize) -> Result<Series> {
    if !g.coeff(0).is_one() {
        return Err(Error::BadConstantTerm("companion_of requires g(0) = 1"));
    }
    if n > g.prec() {
        return Err(Error::InsufficientPrecision { needed: n, available: g.prec() });
    }
    let gc = g.coeffs();
    let g1 = gc[1.min(g.prec())].clone();
    // u = -f, u_1 = -1; c_m = [z^m] g∘u
    let mut table = PowerTable::new(q(-1));
    let mut comp: Vec<Q> = vec![Q::one(), if g.prec() >= 1 { -&g1 } else { Q::zero() }];
    for deg in 2..=n {
        table.extend_to(deg);
        let mut s = Q::zero();
        for j in 2..=deg {
            if !gc[j].is_zero() {
                s += &gc[j] * table.get(j, deg);
            }
        }
        let mut rest = s.clone();
        for i in 1..=deg {
            if !gc[i].is_zero() {
                rest += &gc[i] * &comp[deg - i];
            }
        }
        if g1.is_zero() {
            return Err(if rest.is_zero() {
                Error::UnderdeterminedCompanion { degree: deg }
            } else {
                Error::NoCompanion { degree: deg }
            });
        }
        let un = -rest / &g1;
        comp.push(&g1 * &un + s);
        table.push_base(un);
    }
    if n == 0 {
        return Err(Error::InsufficientPrecision { needed: 1, available: 0 });
    }
    let f = Series::new(table.base()).neg();
    let arr = RiordanArray::ordinary(g.truncate(n), f.clone())?;
    let cert = arr.certify(n);
    if !cert.second {
        let hat = arr.pseudo_inverse()?;
        let degree = hat.f().first_difference(&f).unwrap_or(n);
        return Err(Error::NoCompanion { degree });
    }
    Ok(f)
}

/// `f̂ = (-z)∘f̄∘(-z)` of an order-1 function.
pub fn pseudo_inverse_fn(f: &Series) -> Result<Series> {
    Ok(f.comp_inverse()?.reflect().neg())
}

/// The pseudo-half `h_f`: the pseudo-inverse of `√(zf)`.
pub fn pseudo_half(f: &Series) -> Result<Series> {
    require_unit_slope(f)?;
    match solve_b_equation(f) {
        Err(Error::InconsistentBEquation { .. }) => return Err(Error::NotPseudoInvolutory),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let root = f.shift_up(1).sqrt()?;
    pseudo_inverse_fn(&root)
}

/// `zB = (2z h_e)∘inv(z h_o^2 - z^2 h_e^2)` for any invertible `h`; the
/// B-function is that of `f = h∘ĥ`, which has `f'(0) = 1` whatever `h'(0)` is.
pub fn b_from_half(h: &Series) -> Result<BSequence> {
    if h.order() != Some(1) {
        return Err(Error::NotOrderOne);
    }
    let (ho, he) = h.parity_parts()?;
    let inner = ho.square().shift_up(1).sub(&he.square().shift_up(2));
    let outer = he.scale(&q(2)).shift_up(1);
    let x = outer.compose(&inner.comp_inverse()?)?;
    Ok(BSequence::from_series(&x.shift_down(1)?, Method::Half))
}

/// `h_f = z √(1 + z^2 B(z^2)^2 / 4) + z^2 B(z^2) / 2`.
pub fn half_from_b(b: &Series) -> Result<Series> {
    let b2 = b.stretch(2);
    let rad = b2.square().shift_up(2).scale(&Q::new(1.into(), 4.into())).add_constant(&Q::one());
    let first = rad.sqrt()?.shift_up(1);
    let second = b2.shift_up(2).scale(&Q::new(1.into(), 2.into()));
    Ok(first.add(&second))
}

/// `g = exp(φ(√(zf)))` for odd `φ`.
pub fn g_family(f: &Series, phi: &Series) -> Result<Series> {
    if !phi.is_odd() {
        return Err(Error::PhiNotOdd);
    }
    require_unit_slope(f)?;
    let root = f.shift_up(1).sqrt()?;
    phi.compose(&root)?.exp()
}

/// `X = (√g, √(zf))`, a square root of `D` in the sense `X X̂ = D`.
pub fn canonical_root(d: &RiordanArray) -> Result<RiordanArray> {
    require_unit_slope(d.f())?;
    let g = d.g().sqrt()?;
    let f = d.f().shift_up(1).sqrt()?;
    let p = g.prec().min(f.prec());
    RiordanArray::new(g.truncate(p), f.truncate(p), d.flavor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::catalan;
    use crate::rational::frac;

    fn ints(v: &[Q]) -> Vec<i64> {
        v.iter().map(|x| x.to_integer().try_into().unwrap()).collect()
    }

    fn doubled_catalan(n: usize) -> Series {
        catalan(n).scale(&q(2)).add_constant(&q(-1))
    }

    #[test]
    fn first_difference_spots_disagreement() {
        let a = BSequence::new(vec![q(1), q(2), q(3)], Method::Definition);
        let b = BSequence::new(vec![q(1), q(2), q(4), q(5)], Method::Matrix);
        assert_eq!(a.first_difference(&b), Some(2));
        assert_eq!(a.first_difference(&a.clone()), None);
    }

    #[test]
    fn b_by_definition() {
        let pascal_f = Series::from_fn(12, |n| q((n > 0) as i64));
        assert_eq!(ints(&b_from_f(&pascal_f, 4).unwrap().b), vec![1, 0, 0, 0, 0]);
        let f = doubled_catalan(20).shift_up(1).truncate(20);
        assert_eq!(ints(&b_from_f(&f, 5).unwrap().b), vec![2, 2, 4, 10, 28, 84]);
        let sch = Series::from_ints(&[0, 1, 5, 25, 127, 655, 3421, 18053, 96083, 515035]);
        assert_eq!(ints(&b_from_f(&sch, 3).unwrap().b), vec![5, 2, -4, 8]);
        assert_eq!(
            b_from_f(&Series::from_ints(&[0, 1, 1, 0, 0, 0]), 1),
            Err(Error::InconsistentBEquation { degree: 3 })
        );
        assert!(matches!(b_from_f(&pascal_f, 6), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn b_by_matrix() {
        let m = RiordanArray::pascal(10).entries(9).unwrap();
        let b = b_from_matrix(&m).unwrap();
        assert_eq!(ints(&b.b), vec![1, 0, 0, 0]);
        let mut bad = m.clone();
        bad.set(5, 2, bad.get(5, 2) + q(1));
        assert!(matches!(b_from_matrix(&bad), Err(Error::RecurrenceViolated { .. })));
    }

    #[test]
    fn beta_view() {
        let b = BSequence::new(vec![q(1), frac(1, 3)], Method::Definition);
        assert_eq!(b.beta(), vec![q(1), q(2)]);
        assert_eq!(b.to_json(true)["beta"], serde_json::json!(["1", "2"]));
    }

    #[test]
    fn beta_recurrence_on_exponential_pascal() {
        let ez = Series::var(10).exp().unwrap();
        let m = RiordanArray::exponential(ez, Series::var(10)).unwrap().entries(8).unwrap();
        assert!(beta_check_matrix(&m, &[]));
        assert!(!beta_check_matrix(&m, &[q(1)]));
    }

    #[test]
    fn companions() {
        let fib = Series::polynomial_ints(&[1, -1, -1], 10).recip().unwrap();
        let f = companion_of(&fib, 10).unwrap();
        assert_eq!(ints(&f.coeffs()[..6]), vec![0, 1, 3, 9, 32, 126]);
        // (1 + z)/(1 - 2z) has companion z/(1 - z)
        let g = Series::polynomial_ints(&[1, 1], 10).div(&Series::polynomial_ints(&[1, -2], 10)).unwrap();
        assert_eq!(companion_of(&g, 10).unwrap(), Series::from_fn(10, |n| q((n > 0) as i64)));
        assert_eq!(companion_of(&Series::one(6), 6), Err(Error::UnderdeterminedCompanion { degree: 2 }));
    }

    #[test]
    fn halves() {
        let n = 16;
        let f = doubled_catalan(n).shift_up(1).truncate(n);
        let h = pseudo_half(&f).unwrap();
        let c2 = catalan(n).stretch(2);
        let expected = c2.sqrt().unwrap().shift_up(1).add(&c2.shift_up(2));
        assert!(h.agrees_to(&expected, n));
        let (ho, he) = h.parity_parts().unwrap();
        assert!(he.agrees_to(&catalan(n), he.prec()));
        let lhs = ho.square();
        let rhs = he.square().shift_up(1).add_constant(&q(1));
        assert_eq!(lhs.first_difference(&rhs), None);
        let b = b_from_half(&h).unwrap();
        assert_eq!(ints(&b.b[..5]), vec![2, 2, 4, 10, 28]);
        assert_eq!(pseudo_half(&Series::var(6)).unwrap(), Series::var(6));
        assert_eq!(pseudo_half(&Series::from_ints(&[0, 1, 1, 0, 0])), Err(Error::NotPseudoInvolutory));
    }

    #[test]
    fn half_roundtrip() {
        let b = Series::from_ints(&[2, 2, 4, 10, 28, 84]);
        let h = half_from_b(&b).unwrap();
        assert_eq!(b_from_half(&h).unwrap().b, b.coeffs().to_vec());
        let h1 = half_from_b(&Series::from_ints(&[1, 0, 0])).unwrap();
        let (ho, he) = h1.parity_parts().unwrap();
        assert!(he.coeffs().iter().enumerate().all(|(i, c)| *c == if i == 0 { frac(1, 2) } else { q(0) }));
        let quarter = Series::polynomial(&[q(1), frac(1, 4)], ho.prec());
        assert_eq!(ho.square(), quarter);
        assert_eq!(half_from_b(&Series::zero(4)).unwrap().truncate(9), Series::var(9));
        let hz = b_from_half(&Series::var(8)).unwrap();
        assert!(hz.b.iter().all(Zero::is_zero));
    }

    #[test]
    fn family_and_root() {
        let z = Series::var(12);
        assert_eq!(g_family(&z, &z).unwrap(), z.exp().unwrap());
        assert_eq!(g_family(&z, &Series::zero(12)).unwrap(), Series::one(12));
        assert_eq!(g_family(&z, &Series::from_ints(&[0, 1, 1])), Err(Error::PhiNotOdd));
        let d = RiordanArray::pascal(14);
        let x = canonical_root(&d).unwrap();
        let back = x.multiply(&x.pseudo_inverse().unwrap()).unwrap();
        assert!(back.g().agrees_to(d.g(), 12) && back.f().agrees_to(d.f(), 12));
    }
}
