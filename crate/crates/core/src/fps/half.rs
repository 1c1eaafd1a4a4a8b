use num_traits::Zero;

use super::Series;
use crate::error::{Error, Result};
use crate::rational::Q;

/// A series in `t = √z`: the coefficient at index `i` belongs to `z^{i/2}`.
///
/// It is "integral" when every odd index vanishes; only then does it project
/// back to an ordinary [`Series`] in `z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfSeries {
    t: Series,
}

impl HalfSeries {
    /// Reinterprets a series in `t` as a series in `√z`.
    pub fn from_t_series(t: Series) -> Self {
        HalfSeries { t }
    }

    /// `√z` itself, known through `z^{max_half/2}`.
    pub fn sqrt_z(max_half: usize) -> Self {
        HalfSeries { t: Series::var(max_half.max(1)).truncate(max_half) }
    }

    /// Embeds a series in `z` at the integer slots.
    pub fn lift(a: &Series) -> Self {
        HalfSeries { t: a.stretch(2) }
    }

    pub fn as_t_series(&self) -> &Series {
        &self.t
    }

    /// Largest known half-exponent, i.e. coefficients are known through
    /// `z^{max_half_exponent/2}`.
    pub fn max_half_exponent(&self) -> usize {
        self.t.prec()
    }

    /// Coefficient at `z^{i/2}`.
    pub fn coeff_half(&self, i: usize) -> &Q {
        self.t.coeff(i)
    }

    /// First odd multiple of 1/2 carrying a nonzero coefficient.
    pub fn first_non_integral(&self) -> Option<usize> {
        self.t.coeffs().iter().enumerate().skip(1).step_by(2).find(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }

    /// Back to a series in `z`, if integral.
    pub fn project(&self) -> Result<Series> {
        if let Some(i) = self.first_non_integral() {
            return Err(Error::NonIntegralHalfSeries { half_exponent: i });
        }
        let n = self.t.prec() / 2;
        Ok(Series::from_fn(n, |k| self.t.coeff(2 * k).clone()))
    }

    pub fn add(&self, other: &HalfSeries) -> HalfSeries {
        HalfSeries { t: self.t.add(&other.t) }
    }

    pub fn sub(&self, other: &HalfSeries) -> HalfSeries {
        HalfSeries { t: self.t.sub(&other.t) }
    }

    pub fn mul(&self, other: &HalfSeries) -> HalfSeries {
        HalfSeries { t: self.t.mul(&other.t) }
    }

    pub fn scale(&self, c: &Q) -> HalfSeries {
        HalfSeries { t: self.t.scale(c) }
    }

    pub fn truncate_half(&self, max_half: usize) -> HalfSeries {
        HalfSeries { t: self.t.truncate(max_half) }
    }
}
