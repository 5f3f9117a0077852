//! Exact scalar, series and polynomial arithmetic shared by every engine.

pub mod multipoly;
pub mod rational;
pub mod series;

pub use multipoly::{poly_divides, poly_power_substitute, Division, Monomial, MultiPoly};
pub use rational::Rational;
pub use series::TruncSeries;

use crate::error::Result;

pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.mul(b)
}

pub fn series_inv(a: &TruncSeries) -> Result<TruncSeries> {
    a.inv()
}
