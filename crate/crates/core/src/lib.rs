//! Numerical companion to the fact that every Fourier multiplier on the
//! homogeneous Sobolev space `W^1_1(R^2)` has a continuous symbol.
//!
//! The crate builds every explicit object of the unboundedness argument for
//! discontinuous symbols and measures it:
//!
//! * [`freq`] exact lattice algebra: signed subset sums of lacunary centers and
//!   the dyadic expansions of Riesz-type products;
//! * [`torus`] L¹(T²) norms of sparse trigonometric polynomials (streamed grid
//!   quadrature or seeded Monte Carlo with exact phases);
//! * [`scheme`] the backward-induction ball scheme and its exact-arithmetic
//!   condition verifier;
//! * [`kernel`] the Fejér-type kernel, the lattice-to-plane transfer and
//!   L¹(R²) norms of inverse Fourier transforms of bump sums;
//! * [`symbol`] the multiplier catalog, the radial classifier, the sup-norm
//!   probe and lattice sampling;
//! * [`witness`] assembly of the lower-bound chain for a given symbol.

pub mod error;
pub mod freq;
pub mod kernel;
pub mod numeric;
pub mod scheme;
pub mod symbol;
pub mod torus;
pub mod witness;

pub use error::{Error, Result};
pub use freq::{Dyadic, Frequency, LambdaSet, SparseTrigPoly};
pub use torus::{NormEstimate, NormMethod, QuadratureMode, QuadratureSpec};

