//! Riordan arrays `(g, f)` as group elements and as lower-triangular matrices.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::fps::Series;
use crate::rational::{factorial, fmt_q, over_common_denominator, parse_q, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Column `k` has ordinary generating function `g f^k`.
    Ordinary,
    /// Entry `(n, k)` is `(n!/k!) [z^n] g f^k`.
    Exponential,
}

impl Flavor {
    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "ordinary" | "ogf" => Some(Flavor::Ordinary),
            "exponential" | "egf" => Some(Flavor::Exponential),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Ordinary => "ordinary",
            Flavor::Exponential => "exponential",
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A Riordan array with `g(0) = 1`, `f(0) = 0` and `f'(0) = ±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanArray {
    g: Series,
    f: Series,
    flavor: Flavor,
}

impl RiordanArray {
    pub fn new(g: Series, f: Series, flavor: Flavor) -> Result<Self> {
        if !g.coeff(0).is_one() {
            return Err(Error::InvalidArray("g(0) must be 1"));
        }
        if f.prec() < 1 || !f.coeff(0).is_zero() {
            return Err(Error::InvalidArray("f(0) must be 0"));
        }
        let lead = f.coeff(1);
        if !(lead.is_one() || *lead == -Q::one()) {
            return Err(Error::InvalidArray("f'(0) must be 1 or -1"));
        }
        Ok(RiordanArray { g, f, flavor })
    }

    pub fn ordinary(g: Series, f: Series) -> Result<Self> {
        RiordanArray::new(g, f, Flavor::Ordinary)
    }

    pub fn exponential(g: Series, f: Series) -> Result<Self> {
        RiordanArray::new(g, f, Flavor::Exponential)
    }

    /// `(1, z)`.
    pub fn identity(prec: usize, flavor: Flavor) -> Self {
        RiordanArray { g: Series::one(prec), f: Series::var(prec), flavor }
    }

    /// `(1/(1-z), z/(1-z))`.
    pub fn pascal(prec: usize) -> Self {
        let g = Series::from_fn(prec, |_| q(1));
        let f = g.shift_up(1).truncate(prec);
        RiordanArray { g, f, flavor: Flavor::Ordinary }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn prec(&self) -> usize {
        self.g.prec().min(self.f.prec())
    }

    pub fn truncate(&self, prec: usize) -> RiordanArray {
        RiordanArray { g: self.g.truncate(prec), f: self.f.truncate(prec), flavor: self.flavor }
    }

    /// Rows `0..=n` of the matrix.
    pub fn entries(&self, n: usize) -> Result<TriangularMatrix> {
        self.entries_with(n, Strategy::default())
    }

    pub fn entries_with(&self, n: usize, strategy: Strategy) -> Result<TriangularMatrix> {
        if n > self.prec() {
            return Err(Error::InsufficientPrecision { needed: n, available: self.prec() });
        }
        let g = self.g.truncate(n);
        let f = self.f.truncate(n);
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(Series::one(n));
        for k in 1..=n {
            let next = powers[k - 1].mul_with(&f, Strategy::Sequential);
            powers.push(next);
        }
        let columns: Vec<Series> =
            strategy.for_len(n + 1).map_slice(&powers, |p| g.mul_with(p, Strategy::Sequential));
        let fact: Vec<Q> = match self.flavor {
            Flavor::Ordinary => Vec::new(),
            Flavor::Exponential => (0..=n).map(|i| Q::from_integer(factorial(i))).collect(),
        };
        let rows = (0..=n)
            .map(|i| {
                (0..=i)
                    .map(|k| {
                        let c = columns[k].coeff(i);
                        match self.flavor {
                            Flavor::Ordinary => c.clone(),
                            Flavor::Exponential => c * &fact[i] / &fact[k],
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(TriangularMatrix { rows })
    }

    /// `(g, f)(G, F) = (g (G∘f), F∘f)`.
    pub fn multiply(&self, other: &RiordanArray) -> Result<RiordanArray> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch);
        }
        let g = self.g.mul(&other.g.compose(&self.f)?);
        let f = other.f.compose(&self.f)?;
        let p = g.prec().min(f.prec());
        Ok(RiordanArray { g: g.truncate(p), f: f.truncate(p), flavor: self.flavor })
    }

    /// `(1/(g∘f̄), f̄)`.
    pub fn inverse(&self) -> Result<RiordanArray> {
        let fbar = self.f.comp_inverse()?;
        let g = self.g.compose(&fbar)?.recip()?;
        Ok(RiordanArray { g, f: fbar, flavor: self.flavor })
    }

    /// `((1/g)∘(-f̂), f̂)` with `f̂ = -f̄(-z)`.
    pub fn pseudo_inverse(&self) -> Result<RiordanArray> {
        let fbar = self.f.comp_inverse()?;
        let fhat = fbar.reflect().neg();
        let g = self.g.recip()?.compose(&fhat.neg())?;
        Ok(RiordanArray { g, f: fhat, flavor: self.flavor })
    }

    /// Checks both pseudo-involution conditions through coefficient `n`.
    pub fn certify(&self, n: usize) -> PseudoInvolutionCertificate {
        let hat = match self.pseudo_inverse() {
            Ok(h) => h,
            Err(_) => {
                return PseudoInvolutionCertificate { depth: n, first: false, second: false, available: self.prec() }
            }
        };
        let available = self.prec();
        if n > available {
            return PseudoInvolutionCertificate { depth: n, first: false, second: false, available };
        }
        // g∘(-f) = 1/g
        let first = match (self.g.compose(&self.f.neg()), self.g.recip()) {
            (Ok(lhs), Ok(rhs)) => lhs.prec() >= n && lhs.agrees_to(&rhs, n),
            _ => false,
        };
        // f̄ = (-z)∘f∘(-z), i.e. f̂ = f
        let second = hat.f.prec() >= n && hat.f.agrees_to(&self.f, n);
        PseudoInvolutionCertificate { depth: n, first, second, available }
    }

    /// True iff both conditions hold through coefficient `n`. False when `n`
    /// exceeds the stored precision.
    pub fn is_pseudo_involution(&self, n: usize) -> bool {
        self.certify(n).holds()
    }

    /// `g` even and `f` odd, to stored precision.
    pub fn is_checkerboard(&self) -> bool {
        self.g.is_even() && self.f.is_odd()
    }

    /// `g (h∘f)`: the array applied to the coefficient vector of `h`
    /// (read as an exponential generating function in the exponential flavor).
    pub fn apply_sequence(&self, h: &Series) -> Result<Series> {
        Ok(self.g.mul(&h.compose(&self.f)?))
    }
}

/// Outcome of a depth-bounded pseudo-involution check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PseudoInvolutionCertificate {
    pub depth: usize,
    /// `g∘(-f) = 1/g` through `depth`.
    pub first: bool,
    /// `f̄ = (-z)∘f∘(-z)` through `depth`.
    pub second: bool,
    pub available: usize,
}

impl PseudoInvolutionCertificate {
    pub fn holds(&self) -> bool {
        self.first && self.second && self.depth <= self.available
    }
}

/// Lower-triangular exact matrix; row `n` stores entries `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    rows: Vec<Vec<Q>>,
}

impl TriangularMatrix {
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        for (n, r) in rows.iter().enumerate() {
            if r.len() != n + 1 {
                return Err(Error::InvalidArray("row n must have n+1 entries"));
            }
        }
        Ok(TriangularMatrix { rows })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        TriangularMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Number of rows.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Entry `(n, k)`, zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Q {
        if k > n {
            Q::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn entry(&self, n: usize, k: usize) -> Option<&Q> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    pub fn set(&mut self, n: usize, k: usize, value: Q) {
        self.rows[n][k] = value;
    }

    pub fn is_unit_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, r)| r[n].is_one())
    }

    pub fn truncate(&self, dim: usize) -> TriangularMatrix {
        TriangularMatrix { rows: self.rows.iter().take(dim).cloned().collect() }
    }

    pub fn product(&self, other: &TriangularMatrix) -> TriangularMatrix {
        self.product_with(other, Strategy::default())
    }

    /// Matrix product restricted to the common dimension.
    pub fn product_with(&self, other: &TriangularMatrix, strategy: Strategy) -> TriangularMatrix {
        let d = self.dim().min(other.dim());
        let cols: Vec<(Vec<BigInt>, BigInt)> = strategy.for_len(d).map_range(d, |k| {
            let col: Vec<Q> = (k..d).map(|j| other.rows[j][k].clone()).collect();
            over_common_denominator(&col)
        });
        let rows = strategy.for_len(d).map_range(d, |n| {
            let (a, da) = over_common_denominator(&self.rows[n]);
            (0..=n)
                .map(|k| {
                    let (b, db) = &cols[k];
                    let mut acc = BigInt::zero();
                    for j in k..=n {
                        if !a[j].is_zero() {
                            acc += &a[j] * &b[j - k];
                        }
                    }
                    Q::new(acc, &da * db)
                })
                .collect()
        });
        TriangularMatrix { rows }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.to_strings())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("matrix JSON must be an array of arrays of rational strings".into());
        let rows = v.as_array().ok_or_else(bad)?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_str().ok_or_else(bad).and_then(parse_q))
                    .collect::<Result<Vec<Q>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TriangularMatrix::from_rows(rows)
    }

    /// One line per row, entries comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(fmt_q).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}
