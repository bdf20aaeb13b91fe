//! Factorization in ℝ[cos t, sin t] and ℂ[cos t, sin t].
//!
//! Two regimes that never mix: [`exact`] answers divisibility questions
//! (zero-freeness, division, gcd, shared factors) with rational arithmetic,
//! while [`numeric`] produces explicit irreducible factors from polynomial
//! roots and checks them only by re-expansion.

pub mod exact;
pub mod numeric;
mod roots;

pub use exact::{common_irreducible_factor, divides_exact, gcd_zero_free, is_zero_free_exact};
pub use numeric::{
    complex_factors, factor, is_zero_free, ComplexFactorization, ComplexLinearFactor, Factorization, LinearFactor,
    DEFAULT_TOL,
};
