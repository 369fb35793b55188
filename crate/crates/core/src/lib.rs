//! Wick renormalisation of the vacuum phi^4 model through multi-indices and Feynman graphs.
//!
//! The crate is layered bottom-up: [`exact_algebra`] supplies functionals on R[X],
//! [`wick`] the Bell-polynomial Wick map, [`feynman`] the Connes-Kreimer Hopf algebra of
//! vacuum multigraphs, [`multiindex`] its multi-index counterpart, and [`valuation`]
//! the numerical regularised valuations on the three-torus. [`verify`] ties the layers
//! together and [`cli`] exposes them on the command line.

pub mod algebra;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod exact_algebra;
pub mod feynman;
pub mod multiindex;
pub mod rational;
pub mod valuation;
pub mod verify;
pub mod wick;

pub use error::{Error, Result};
pub use rational::Rational;
