//! Lower and upper bounds for the constants of the complex polynomial
//! Hardy–Littlewood inequality
//!
//! ```text
//! (Σ_{|α|=m} |a_α|^ρ)^{1/ρ} ≤ C(m, p) · sup_{z ∈ B(ℓ_p^n)} |P(z)|,
//! ```
//!
//! for `m`-homogeneous `P(z) = Σ a_α z^α`, and its Bohnenblust–Hille limit
//! `p = ∞`.
//!
//! * [`exponents`]: the exact optimal exponent `ρ(m, p)` in both regimes.
//! * [`poly`]: sparse homogeneous polynomials and the witness families.
//! * [`supnorm`]: closed-form sup-norms of witnesses and a multi-start
//!   numerical maximizer for arbitrary polynomials.
//! * [`bounds`]: certified lower bounds, upper-bound factors and reference
//!   values.
//! * [`search`]: optimization over the witness parameter `c` (certified) and
//!   free-coefficient exploration (heuristic).

pub mod bounds;
pub mod error;
pub mod exponents;
pub mod poly;
pub mod search;
pub mod supnorm;

pub use error::{Error, Result};
pub use exponents::{ExtendedExponent, Rational};
pub use poly::{HomogeneousPolynomial, MultiIndex};
pub use num_complex::Complex64;
