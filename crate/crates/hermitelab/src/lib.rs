//! Hermite polynomials through the Gaussian-expectation lens: scaled 1D and
//! multivariable evaluation, Plancherel-Rotach asymptotics, oscillator wave
//! functions and kernels, Dyson Brownian motion as a determinantal point
//! process with Tracy-Widom edge fluctuations, and Edgeworth corrections to
//! the central limit theorem. Every closed form is paired with an independent
//! numerical route (combinatorial enumeration, Monte Carlo or quadrature).

pub mod asymptotics;
pub mod dyson;
pub mod edgeworth;
pub mod error;
pub mod hermite;
pub mod numerics;
pub mod oscillator;
pub mod scaled;
pub mod wick;

pub use error::{Error, Result};
