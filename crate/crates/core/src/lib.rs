//! Exact spectral counting for the special orthogonal groups SO(N).
//!
//! The library computes the Laplace eigenvalue counting function N(λ) of
//! SO(N) by two independent routes — highest-weight enumeration with squared
//! Weyl dimensions, and weighted lattice-point summation over shells — and
//! provides the surrounding machinery: the exact smooth main term (a rational
//! multiple of a power of π times a power of the radius), harmonic/radial
//! decomposition of the weight polynomial, representation numbers r_n(k) and
//! polynomial shell sums, theta-coefficient statistics, dyadic envelope
//! fitting of error terms, and the low-rank toolbox (Sonin summation, the
//! SO(4) T-split, Vaaler sawtooth majorants, exponent-pair bookkeeping).
//!
//! All counting is exact big-integer arithmetic; main terms and error series
//! evaluate to configurable decimal precision (default 80 digits).

pub mod counting;
pub mod error;
pub mod exact;
pub mod fit;
pub mod lowrank;
pub mod modular;
pub mod poly;
pub mod precision;
pub mod shells;
pub mod weights;

pub use error::{Error, Result};
pub use exact::{ExactValue, Rational};
pub use precision::BigFixed;
