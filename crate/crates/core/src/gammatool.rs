//! Pseudo-involutions generated by a Laurent polynomial `γ`:
//! `g = 1 + zγ(g)` (ordinary) or `g = e^{zγ(g)}` (exponential).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::chebfam::{p_poly, P_poly};
use crate::error::{Error, Result};
use crate::fps::{catalan, HalfSeries, LaurentPoly, Series};
use crate::pseudo::{BSequence, Method};
use crate::rational::{fmt_q, parse_q, pow_q, q, Q};
use crate::riordan::{Flavor, RiordanArray};

/// `γ` together with the functional equation it drives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSpec {
    gamma: LaurentPoly,
    flavor: Flavor,
}

impl GammaSpec {
    pub fn new(gamma: LaurentPoly, flavor: Flavor) -> Result<Self> {
        if gamma.at_one().is_zero() {
            return Err(Error::GammaVanishesAtOne);
        }
        Ok(GammaSpec { gamma, flavor })
    }

    pub fn ogf(gamma: LaurentPoly) -> Result<Self> {
        GammaSpec::new(gamma, Flavor::Ordinary)
    }

    pub fn egf(gamma: LaurentPoly) -> Result<Self> {
        GammaSpec::new(gamma, Flavor::Exponential)
    }

    pub fn gamma(&self) -> &LaurentPoly {
        &self.gamma
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `{"flavor": "ogf"|"egf", "gamma": {"<exponent>": "<rational>", ...}}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let flavor = v
            .get("flavor")
            .and_then(|f| f.as_str())
            .and_then(Flavor::parse)
            .ok_or_else(|| Error::Parse("gamma spec needs \"flavor\": \"ogf\" or \"egf\"".into()))?;
        let terms = v
            .get("gamma")
            .and_then(|g| g.as_object())
            .ok_or_else(|| Error::Parse("gamma spec needs a \"gamma\" object".into()))?;
        let mut parsed = Vec::new();
        for (k, c) in terms {
            let e: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent key {k:?}")))?;
            let c = c.as_str().ok_or_else(|| Error::Parse(format!("coefficient of z^{e} must be a string")))?;
            parsed.push((e, parse_q(c)?));
        }
        GammaSpec::new(LaurentPoly::from_terms(parsed), flavor)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: BTreeMap<String, String> = self.gamma.terms().map(|(e, c)| (e.to_string(), fmt_q(c))).collect();
        let flavor = match self.flavor {
            Flavor::Ordinary => "ogf",
            Flavor::Exponential => "egf",
        };
        serde_json::json!({ "flavor": flavor, "gamma": terms })
    }

    fn step(&self, g: &Series) -> Result<Series> {
        let zg = self.gamma.eval_series(g)?.shift_up(1);
        match self.flavor {
            Flavor::Ordinary => Ok(zg.add_constant(&Q::one())),
            Flavor::Exponential => zg.exp(),
        }
    }
}

/// The fixed point `g` through `z^n`.
///
/// Pass `i` works at precision `i`, so each pass adds one coefficient; one
/// extra pass at full precision confirms the residual vanishes.
pub fn solve_g(spec: &GammaSpec, n: usize) -> Result<Series> {
    let mut g = Series::one(0);
    for _ in 0..n {
        g = spec.step(&g)?;
    }
    let again = spec.step(&g)?.truncate(n);
    if again != g {
        return Err(Error::SanityCheck("fixed-point residual of g is nonzero"));
    }
    Ok(g)
}

/// `f = zγ(g)/(gγ(1/g))` (ordinary) or `zγ(g)/γ(1/g)` (exponential), through
/// `z^{n+1}`.
pub fn companion_from_gamma(spec: &GammaSpec, n: usize) -> Result<Series> {
    let g = solve_g(spec, n)?;
    companion_for(spec, &g)
}

fn companion_for(spec: &GammaSpec, g: &Series) -> Result<Series> {
    let num = spec.gamma.eval_series(g)?;
    let mut den = spec.gamma.invert_var().eval_series(g)?;
    if spec.flavor == Flavor::Ordinary {
        den = den.mul(g);
    }
    Ok(num.div(&den)?.shift_up(1))
}

/// The pseudo-involution `(g, f)` or `[g, f]` through `z^n`.
pub fn pseudo_involution(spec: &GammaSpec, n: usize) -> Result<RiordanArray> {
    let g = solve_g(spec, n)?;
    let f = companion_for(spec, &g)?.truncate(n);
    RiordanArray::new(g, f, spec.flavor)
}

/// `z g^{d-1}` (ordinary) or `z g^d` (exponential) when `γ` is a generalized
/// palindrome of darga `d`; `None` otherwise.
pub fn palindromic_companion(spec: &GammaSpec, n: usize) -> Result<Option<Series>> {
    if !spec.gamma.is_generalized_palindrome() {
        return Ok(None);
    }
    let d = spec.gamma.darga()?;
    let e = match spec.flavor {
        Flavor::Ordinary => d - 1,
        Flavor::Exponential => d,
    };
    let g = solve_g(spec, n)?;
    Ok(Some(g.pow_i(e)?.shift_up(1)))
}

/// A pseudo-half for the companion, through `z^{n+1}`:
/// `2z/((2+z) γ((2-z)/(2+z)))` (ordinary) or `z/γ(e^{-z})` (exponential).
pub fn h_from_gamma(spec: &GammaSpec, n: usize) -> Result<Series> {
    let den = match spec.flavor {
        Flavor::Ordinary => {
            let two_plus = Series::polynomial_ints(&[2, 1], n);
            let w = Series::polynomial_ints(&[2, -1], n).div(&two_plus)?;
            two_plus.mul(&spec.gamma.eval_series(&w)?).scale(&Q::new(1.into(), 2.into()))
        }
        Flavor::Exponential => spec.gamma.eval_exp(-1, n),
    };
    Ok(den.recip()?.shift_up(1))
}

/// `(η, H)` with `η((z-1)^2/z) = γ(z)γ(1/z)` and `H((z-1)^2/z) = (γ(z) - zγ(1/z))/(z-1)`.
pub fn eta_h_laurent(gamma: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if gamma.at_one().is_zero() {
        return Err(Error::GammaVanishesAtOne);
    }
    let (g0, _) = gamma.split_min_degree()?;
    let top = g0.max_degree().unwrap_or(0);
    let g1 = g0.at_one();
    let mut eta = LaurentPoly::monomial(&g1 * &g1, 0);
    for n in 1..=top {
        let mut s = Q::zero();
        for j in 0..=(top - n) {
            s += g0.coeff(j) * g0.coeff(n + j);
        }
        if !s.is_zero() {
            eta = eta.add(&p_poly(n - 1).poly().scale(&s).shift(1));
        }
    }
    let mut h = LaurentPoly::zero();
    for (e, c) in gamma.terms() {
        h = h.add(&P_poly(e - 1).poly().scale(c));
    }
    Ok((eta, h))
}

/// `B = H∘inv(z/η)` through `b_n`.
pub fn b_from_gamma_ogf(gamma: &LaurentPoly, n: usize) -> Result<BSequence> {
    let (eta, h) = eta_h_laurent(gamma)?;
    let expected = gamma.derivative_at_one() * q(2) - gamma.at_one();
    if h.coeff(0) != expected {
        return Err(Error::SanityCheck("H(0) differs from 2γ'(1) - γ(1)"));
    }
    let p = n + 1;
    let z_over_eta = eta.to_series(p)?.recip()?.shift_up(1).truncate(p);
    let inner = z_over_eta.comp_inverse()?;
    let b = h.to_series(p)?.compose(&inner)?;
    Ok(BSequence::from_series(&b.truncate(n), Method::Gamma))
}

/// `(ε, E)` through `z^{m-1}`, with `ε = √(γ(e^z)γ(e^{-z}))`, `ε(0) = γ(1)`,
/// and `E = (γ(e^z) - γ(e^{-z}))/z`.
pub fn eps_e_egf(gamma: &LaurentPoly, m: usize) -> Result<(Series, Series)> {
    let g1 = gamma.at_one();
    if g1.is_zero() {
        return Err(Error::GammaVanishesAtOne);
    }
    let plus = gamma.eval_exp(1, m);
    let minus = gamma.eval_exp(-1, m);
    let mut eps = plus.mul(&minus).sqrt()?;
    if g1.is_negative() {
        eps = eps.neg();
    }
    let e = plus.sub(&minus).shift_down(1)?;
    if *e.coeff(0) != gamma.derivative_at_one() * q(2) {
        return Err(Error::SanityCheck("E(0) differs from 2γ'(1)"));
    }
    Ok((eps, e))
}

/// `B = E∘inv(z/ε)∘√z` with `ε = √(γ(e^z)γ(e^{-z}))`, `ε(0) = γ(1)`, and
/// `E = (γ(e^z) - γ(e^{-z}))/z`, through `b_n`.
///
/// The composition with `√z` is carried out in the `t = √z` grading and must
/// come back integral.
pub fn b_from_gamma_egf(gamma: &LaurentPoly, n: usize) -> Result<BSequence> {
    let m = 2 * n + 1;
    let (eps, e) = eps_e_egf(gamma, m)?;
    let w = eps.recip()?.shift_up(1).truncate(m).comp_inverse()?;
    let t_series = e.compose(&w)?;
    let b = HalfSeries::from_t_series(t_series).project()?;
    Ok(BSequence::from_series(&b.truncate(n), Method::Gamma))
}

/// `B_F(z) = k B_f(k^2 z)` for `F(z) = f(kz)/k`.
pub fn b_scale(b: &BSequence, k: &Q) -> Result<BSequence> {
    if k.is_zero() {
        return Err(Error::ZeroScale);
    }
    let scaled = b.b.iter().enumerate().map(|(i, x)| x * pow_q(k, 2 * i as i64 + 1)).collect();
    Ok(BSequence::new(scaled, b.origin))
}

/// `F(z) = f(kz)/k`.
pub fn f_scale(f: &Series, k: &Q) -> Result<Series> {
    if k.is_zero() {
        return Err(Error::ZeroScale);
    }
    Ok(f.dilate(k).scale(&k.recip()))
}

/// `(-a+b+3c) + ((a+b+c) c z C(acz^2)) ∘ ((a+b+c) z / (1 - (ab+bc+4ac) z))`,
/// the B-function for `γ = a + bz + cz^2`, through `b_n`.
pub fn quad_closed_form(a: &Q, b: &Q, c: &Q, n: usize) -> Result<BSequence> {
    let s = a + b + c;
    if s.is_zero() {
        return Err(Error::GammaVanishesAtOne);
    }
    let ac = a * c;
    let cat = catalan(n).dilate(&ac).stretch(2).truncate(n);
    let outer = cat.shift_up(1).truncate(n).scale(&(&s * c));
    let lin = a * b + b * c + q(4) * &ac;
    let inner = Series::polynomial(&[Q::one(), -lin], n).recip()?.shift_up(1).truncate(n).scale(&s);
    let constant = -a + b + q(3) * c;
    let out = outer.compose(&inner)?.add_constant(&constant);
    Ok(BSequence::from_series(&out, Method::ClosedForm))
}

/// `((b+3c) - (b-c) c^2 z) / (1 - bcz)`, the `a = 0` case of [`quad_closed_form`].
pub fn quad_a_zero_form(b: &Q, c: &Q, n: usize) -> Result<Series> {
    let num = Series::polynomial(&[b + q(3) * c, -(b - c) * c * c], n);
    let den = Series::polynomial(&[Q::one(), -(b * c)], n);
    num.div(&den)
}
