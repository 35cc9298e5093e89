//! Exact tensor calculus for left-invariant almost contact B-metric
//! structures on Lie groups.
//!
//! The crate is layered bottom-up:
//!
//! - [`scalar`]: rationals and multivariate polynomials, the only number type.
//! - [`tensor`]: dense covariant tensors over a fixed frame, metric
//!   contraction, φ-substitution and the Kulkarni–Nomizu product.
//! - [`liealg`]: structure constants, the Jacobi check, the Levi-Civita
//!   connection of a constant metric, curvature, Ricci tensor and scalar
//!   curvature.
//! - [`acbm`]: the almost contact B-metric layer: structure relations, the
//!   fundamental tensor `F` by two independent routes, Lee forms, the
//!   Nijenhuis tensor, square norms, class membership and curvature
//!   identities.
//! - [`paperlab`]: the five-dimensional Lie group family with parameters
//!   `lambda1..lambda4, mu1..mu4` and the full claim suite that checks every
//!   published identity and component table against the engine.
//! - [`cli`]: the manifold file format, report rendering and the commands
//!   behind the `bmetric` binary.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`.

pub mod acbm;
pub mod cli;
pub mod error;
pub mod liealg;
pub mod paperlab;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Polynomial, Rational, Scalar};
