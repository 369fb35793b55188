//! Exact rational algebra on R[X]: functionals, convolution, power series.

mod functional;
mod polyxy;
mod series;

pub use functional::Functional;
pub use polyxy::PolyXY;
pub use series::PowerSeries;

use crate::algebra::Coefficient;
use crate::error::Result;

pub fn convolve<C: Coefficient>(a: &Functional<C>, b: &Functional<C>) -> Result<Functional<C>> {
    a.convolve(b)
}

pub fn functional_inverse<C: Coefficient>(a: &Functional<C>) -> Result<Functional<C>> {
    a.inverse()
}

pub fn exp_star<C: Coefficient>(a: &Functional<C>) -> Result<Functional<C>> {
    a.exp_star()
}

pub fn log_star<C: Coefficient>(a: &Functional<C>) -> Result<Functional<C>> {
    a.log_star()
}

pub fn lambda<C: Coefficient>(a: &Functional<C>) -> PowerSeries<C> {
    a.lambda()
}
