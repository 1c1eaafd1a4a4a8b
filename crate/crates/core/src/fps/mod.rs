//! Exact truncated power series, Laurent polynomials and series in `√z`.

mod half;
mod laurent;
mod series;

pub use half::HalfSeries;
pub use laurent::LaurentPoly;
pub use series::Series;
pub(crate) use series::PowerTable;

use crate::rational::{binomial, Q};

/// The Catalan series `C = (1 - √(1-4z)) / (2z)` through `z^prec`.
pub fn catalan(prec: usize) -> Series {
    Series::from_fn(prec, |n| {
        Q::new(binomial(2 * n as i64, n as i64), (n as i64 + 1).into())
    })
}
