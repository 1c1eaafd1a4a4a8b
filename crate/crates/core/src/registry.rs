//! Named worked examples with their expected prefixes.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fps::{catalan, LaurentPoly, Series};
use crate::gammatool::{b_from_gamma_egf, b_from_gamma_ogf, companion_from_gamma, quad_closed_form, solve_g, GammaSpec};
use crate::pseudo::{b_from_f, b_from_half, b_from_matrix, companion_of, pseudo_half, BSequence, Method};
use crate::ratsolve::{b_from_rational, RationalSpec};
use crate::rational::{factorial, parse_q, Q};
use crate::riordan::{Flavor, RiordanArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Explicit {
    Pascal,
    DoubledCatalan,
}

/// How an example's `(g, f)` is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Explicit(Explicit),
    /// Given coefficient prefixes; only as many terms as were supplied.
    Given { g: Series, f: Series, flavor: Flavor },
    Gamma(GammaSpec),
    Rational(RationalSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    G,
    F,
    B,
    Beta,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::G => "g",
            Quantity::F => "f",
            Quantity::B => "B",
            Quantity::Beta => "beta",
        }
    }
}

/// An expected coefficient prefix. For exponential examples `g` and `f`
/// prefixes are of `n! [z^n]`.
#[derive(Debug, Clone)]
pub struct Expected {
    pub quantity: Quantity,
    pub values: Vec<Q>,
    pub provenance: &'static str,
}

#[derive(Debug, Clone)]
pub struct ExampleEntry {
    pub name: &'static str,
    pub recipe: Recipe,
    pub expected: Vec<Expected>,
}

fn qs(v: &[&str]) -> Vec<Q> {
    v.iter().map(|s| parse_q(s).expect("fixture literal")).collect()
}

fn exp(quantity: Quantity, values: &[&str], provenance: &'static str) -> Expected {
    Expected { quantity, values: qs(values), provenance }
}

fn gamma_ogf(terms: &[(i64, &str)]) -> Recipe {
    let poly = LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, parse_q(c).unwrap())));
    Recipe::Gamma(GammaSpec::ogf(poly).unwrap())
}

fn gamma_egf(terms: &[(i64, i64)]) -> Recipe {
    Recipe::Gamma(GammaSpec::egf(LaurentPoly::from_ints(terms)).unwrap())
}

pub fn registry() -> Vec<ExampleEntry> {
    use Quantity::*;
    vec![
        ExampleEntry {
            name: "pascal",
            recipe: Recipe::Explicit(Explicit::Pascal),
            expected: vec![
                exp(G, &["1", "1", "1", "1", "1", "1"], "1/(1-z)"),
                exp(F, &["0", "1", "1", "1", "1", "1"], "z/(1-z)"),
                exp(B, &["1", "0", "0", "0", "0", "0"], "f - z = (z)∘(zf) by substitution"),
            ],
        },
        ExampleEntry {
            name: "catalan",
            recipe: gamma_ogf(&[(2, "1")]),
            expected: vec![
                exp(G, &["1", "1", "2", "5", "14", "42", "132", "429"], "A000108, binom(2n,n)/(n+1)"),
                exp(F, &["0", "1", "3", "9", "28", "90", "297", "1001"], "zC^3 expanded from binomials"),
                exp(B, &["3", "1", "0", "0", "0", "0", "0"], "B-equation solved on zC^3 by an exact fraction script"),
            ],
        },
        ExampleEntry {
            name: "double-cat",
            recipe: Recipe::Explicit(Explicit::DoubledCatalan),
            expected: vec![
                exp(G, &["1", "2", "4", "10", "28", "84", "264"], "2C - 1 from binom(2n,n)/(n+1)"),
                exp(F, &["0", "1", "2", "4", "10", "28", "84"], "z(2C - 1)"),
                exp(B, &["2", "2", "4", "10", "28", "84", "264"], "B = 2C"),
            ],
        },
        ExampleEntry {
            name: "schroeder-little",
            recipe: gamma_ogf(&[(1, "-1"), (2, "2")]),
            expected: vec![
                exp(G, &["1", "1", "3", "11", "45", "197", "903"], "A001003, g = 1 + zγ(g) iterated exactly"),
                exp(F, &["0", "1", "5", "25", "127", "655", "3421"], "companion expanded by a sympy script"),
                exp(B, &["5", "2", "-4", "8", "-16", "32", "-64"], "b_0 = 5, b_n = (-1)^(n-1) 2^n"),
            ],
        },
        ExampleEntry {
            name: "motzkin-ext",
            recipe: gamma_ogf(&[(0, "3/2"), (2, "1/2")]),
            expected: vec![
                exp(G, &["1", "2", "2", "4", "8", "18", "42"], "g = 1 + zγ(g) expanded by a sympy script"),
                exp(B, &["0", "2", "6", "24", "108", "522", "2646", "13878"], "(1 - 3z - sqrt(1 - 6z - 3z^2))/(3z)"),
            ],
        },
        ExampleEntry {
            name: "fibonacci",
            recipe: Recipe::Rational(RationalSpec::from_ints(&[1], &[1, -1, -1]).unwrap()),
            expected: vec![
                exp(G, &["1", "1", "2", "3", "5", "8", "13", "21"], "1/(1 - z - z^2)"),
                exp(F, &["0", "1", "3", "9", "32", "126", "538", "2429", "11412"], "companion expanded by a sympy script"),
                exp(
                    B,
                    &["3", "5", "25", "150", "1000", "7125", "53125", "409375", "3234375"],
                    "(1 + z - sqrt(1 - 10z + 5z^2))/(2z)",
                ),
            ],
        },
        ExampleEntry {
            name: "labeled-trees",
            recipe: gamma_egf(&[(1, 1)]),
            expected: vec![
                exp(G, &["1", "1", "3", "16", "125", "1296", "16807"], "(n+1)^(n-1), g = exp(zg)"),
                exp(F, &["0", "1", "4", "24", "200", "2160", "28812"], "zT^2 by exact fraction script"),
                exp(Beta, &["2", "2", "2", "2", "2", "2", "2", "2", "2", "2", "2"], "B = 2 sinh(sqrt z)/sqrt z"),
            ],
        },
        ExampleEntry {
            name: "labeled-trees-2colored",
            recipe: gamma_egf(&[(0, 1), (1, 1)]),
            expected: vec![
                exp(G, &["1", "2", "8", "56", "576", "7872", "134656"], "S = exp(z(1 + S)) by exact fraction script"),
                exp(F, &["0", "1", "4", "24", "224", "2880", "47232"], "zS"),
                exp(
                    B,
                    &["2", "4/3", "8/5", "736/315", "2144/567", "339008/51975", "2041856/173745"],
                    "B-equation solved on zS by an exact fraction script",
                ),
            ],
        },
    ]
}

pub fn lookup(name: &str) -> Option<ExampleEntry> {
    registry().into_iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    registry().iter().map(|e| e.name).collect()
}

impl Recipe {
    /// Reads a gamma spec (`{"flavor", "gamma"}`), a rational spec
    /// (`{"p", "q"}`) or given prefixes (`{"g", "f", "flavor"?}`).
    pub fn from_json(v: &serde_json::Value) -> Result<Recipe> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("spec must be a JSON object".into()))?;
        if obj.contains_key("gamma") {
            return Ok(Recipe::Gamma(GammaSpec::from_json(v)?));
        }
        if obj.contains_key("p") || obj.contains_key("q") {
            return Ok(Recipe::Rational(RationalSpec::from_json(v)?));
        }
        if obj.contains_key("g") && obj.contains_key("f") {
            let list = |key: &str| -> Result<Series> {
                let arr = obj[key].as_array().ok_or_else(|| Error::Parse(format!("{key:?} must be a list")))?;
                let cs = arr
                    .iter()
                    .map(|c| c.as_str().ok_or_else(|| Error::Parse("coefficients must be strings".into())).and_then(parse_q))
                    .collect::<Result<Vec<Q>>>()?;
                if cs.is_empty() {
                    return Err(Error::Parse(format!("{key:?} must not be empty")));
                }
                Ok(Series::new(cs))
            };
            let flavor = match obj.get("flavor") {
                None => Flavor::Ordinary,
                Some(f) => f
                    .as_str()
                    .and_then(Flavor::parse)
                    .ok_or_else(|| Error::Parse("flavor must be ordinary or exponential".into()))?,
            };
            let (g, f) = (list("g")?, list("f")?);
            RiordanArray::new(g.clone(), f.clone(), flavor)?;
            return Ok(Recipe::Given { g, f, flavor });
        }
        Err(Error::Parse("spec needs \"gamma\", \"p\"/\"q\", or \"g\"/\"f\"".into()))
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            Recipe::Gamma(spec) => spec.flavor(),
            Recipe::Given { flavor, .. } => *flavor,
            _ => Flavor::Ordinary,
        }
    }

    pub fn g(&self, n: usize) -> Result<Series> {
        match self {
            Recipe::Explicit(Explicit::Pascal) => Ok(Series::from_fn(n, |_| Q::from_integer(1.into()))),
            Recipe::Explicit(Explicit::DoubledCatalan) => Ok(doubled_catalan(n)),
            Recipe::Given { g, .. } => prefix(g, n),
            Recipe::Gamma(spec) => solve_g(spec, n),
            Recipe::Rational(spec) => spec.g(n),
        }
    }

    pub fn f(&self, n: usize) -> Result<Series> {
        match self {
            Recipe::Explicit(Explicit::Pascal) => Ok(Series::from_fn(n, |k| Q::from_integer(((k > 0) as i64).into()))),
            Recipe::Explicit(Explicit::DoubledCatalan) => Ok(doubled_catalan(n).shift_up(1).truncate(n)),
            Recipe::Given { f, .. } => prefix(f, n),
            Recipe::Gamma(spec) => Ok(companion_from_gamma(spec, n)?.truncate(n)),
            Recipe::Rational(spec) => companion_of(&spec.g(n)?, n),
        }
    }

    pub fn array(&self, n: usize) -> Result<RiordanArray> {
        RiordanArray::new(self.g(n)?, self.f(n)?, self.flavor())
    }

    pub fn methods(&self) -> Vec<Method> {
        let mut m = vec![Method::Definition, Method::Matrix, Method::Half];
        match self {
            Recipe::Gamma(spec) => {
                m.push(Method::Gamma);
                if spec.flavor() == Flavor::Ordinary && quadratic_parts(spec.gamma()).is_some() {
                    m.push(Method::ClosedForm);
                }
            }
            Recipe::Rational(_) => m.push(Method::Rational),
            Recipe::Explicit(_) | Recipe::Given { .. } => {}
        }
        m
    }

    /// `b_0..=b_n` by the given method.
    pub fn b(&self, method: Method, n: usize) -> Result<BSequence> {
        let m = 2 * n + 2;
        let out = match (method, self) {
            (Method::Definition, _) => b_from_f(&self.f(m)?, n)?,
            (Method::Matrix, _) => {
                let coeffs = RiordanArray::ordinary(self.g(m)?, self.f(m)?)?;
                b_from_matrix(&coeffs.entries(m)?)?
            }
            (Method::Half, _) => b_from_half(&pseudo_half(&self.f(m + 2)?)?)?,
            (Method::Gamma, Recipe::Gamma(spec)) => match spec.flavor() {
                Flavor::Ordinary => b_from_gamma_ogf(spec.gamma(), n)?,
                Flavor::Exponential => b_from_gamma_egf(spec.gamma(), n)?,
            },
            (Method::ClosedForm, Recipe::Gamma(spec)) => match quadratic_parts(spec.gamma()) {
                Some((a, b, c)) if spec.flavor() == Flavor::Ordinary => quad_closed_form(&a, &b, &c, n)?,
                _ => return Err(Error::InvalidArray("closed form needs a quadratic ordinary γ")),
            },
            (Method::Rational, Recipe::Rational(spec)) => b_from_rational(spec, n)?,
            _ => return Err(Error::InvalidArray("method does not apply to this input")),
        };
        if out.len() < n + 1 {
            return Err(Error::InsufficientPrecision { needed: n + 1, available: out.len() });
        }
        Ok(BSequence { b: out.b[..=n].to_vec(), origin: out.origin })
    }
}

impl ExampleEntry {
    /// Checks every expected prefix, returning a message per mismatch.
    pub fn check(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let flavor = self.recipe.flavor();
        for e in &self.expected {
            let len = e.values.len();
            let got = match e.quantity {
                Quantity::G => self.recipe.g(len - 1).map(|s| scaled(&s, flavor)),
                Quantity::F => self.recipe.f(len - 1).map(|s| scaled(&s, flavor)),
                Quantity::B => self.recipe.b(Method::Definition, len - 1).map(|b| b.b),
                Quantity::Beta => self.recipe.b(Method::Definition, len - 1).map(|b| b.beta()),
            };
            match got {
                Ok(v) if v == e.values => {}
                Ok(v) => {
                    let i = v.iter().zip(&e.values).position(|(a, b)| a != b).unwrap_or(0);
                    failures.push(format!("{} {}: index {i} differs", self.name, e.quantity.name()));
                }
                Err(err) => failures.push(format!("{} {}: {err}", self.name, e.quantity.name())),
            }
        }
        failures
    }
}

/// `n! [z^n]` for exponential series, coefficients otherwise.
pub fn scaled(s: &Series, flavor: Flavor) -> Vec<Q> {
    match flavor {
        Flavor::Ordinary => s.coeffs().to_vec(),
        Flavor::Exponential => {
            s.coeffs().iter().enumerate().map(|(n, c)| c * Q::from_integer(factorial(n))).collect()
        }
    }
}

fn prefix(s: &Series, n: usize) -> Result<Series> {
    if s.prec() < n {
        return Err(Error::InsufficientPrecision { needed: n, available: s.prec() });
    }
    Ok(s.truncate(n))
}

fn doubled_catalan(n: usize) -> Series {
    catalan(n).scale(&Q::from_integer(2.into())).add_constant(&Q::from_integer((-1).into()))
}

/// `(a, b, c)` when `γ = a + bz + cz^2`.
pub fn quadratic_parts(gamma: &LaurentPoly) -> Option<(Q, Q, Q)> {
    if gamma.min_degree().is_some_and(|d| d < 0) || gamma.max_degree().is_some_and(|d| d > 2) {
        return None;
    }
    let (a, b, c) = (gamma.coeff(0), gamma.coeff(1), gamma.coeff(2));
    if (&a + &b + &c).is_zero() {
        return None;
    }
    Some((a, b, c))
}
