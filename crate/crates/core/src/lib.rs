//! Exact algebra for Abel equations `x' = A(t)x³ + B(t)x²` whose coefficients
//! are real trigonometric polynomials.
//!
//! The crate is layered bottom-up:
//!
//! * [`trig`] and [`laurent`]: the ring ℝ[cos t, sin t] over exact rationals
//!   or binary64, and its embedding into ℂ[z, z⁻¹].
//! * [`factorization`]: zero-free tests, exact division and gcd, and numeric
//!   factorization into irreducibles `a cos t + b sin t + c`.
//! * [`abel`]: the equation, the invariant-line criterion
//!   `P·P' + P·B + A = 0`, cofactors and the rational-cycle bound.
//! * [`construction`]: equations with two prescribed invariant lines, and
//!   the inverse map.
//! * [`darboux`]: Darboux first integrals from linear dependence of curve
//!   ratios.
//! * [`poincare`]: numerical return map, limit-cycle scan.
//! * [`json`]: the interchange format used by the `abel` command-line tool.
//!
//! Symbolic criteria are exact; floating point appears only in
//! factorization outputs and in the return-map numerics.

pub mod abel;
pub mod construction;
pub mod darboux;
pub mod error;
pub mod factorization;
pub mod json;
pub mod laurent;
pub mod linalg;
pub mod poincare;
pub mod random;
pub mod scalar;
pub mod trig;
mod upoly;

pub use abel::{AbelEquation, Cofactor, InvariantLine};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use scalar::{rat, Coefficient, Rational, Scalar};
pub use trig::{AnyTrigPoly, ExactPoly, FloatPoly, MeanIntegral, TrigPoly};

// Runs the guide's snippets under `cargo test --doc`.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/ring.md")]
    struct Ring;
    #[doc = include_str!("../../../book/src/factorization.md")]
    struct Factorization;
    #[doc = include_str!("../../../book/src/invariant-lines.md")]
    struct InvariantLines;
    #[doc = include_str!("../../../book/src/construction.md")]
    struct Construction;
    #[doc = include_str!("../../../book/src/darboux.md")]
    struct Darboux;
    #[doc = include_str!("../../../book/src/return-map.md")]
    struct ReturnMap;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
