//! Reeb parameters and transverse Kähler-Einstein profiles for the circle
//! bundles `S_W^L` of canonical bundles over `M_W^L = P(L ⊕ O_W)`.
//!
//! The input is the constant spectrum `μ_1 ≤ … ≤ μ_n` of the curvature of
//! `L` with respect to a Kähler-Einstein form on the Fano base `W`. From it
//! the crate computes, exactly where possible:
//!
//! * the obstruction integral `F(a) = ∫_{-1/(1+2a)}^1 x ∏(1 + μ_{k,a} x) dx`
//!   with `μ_{k,a} = μ_k + a(1 + μ_k)`, its derivative, and its unique zero
//!   `a_0 > -1/2` ([`reeb`]);
//! * the profile `x_a(ρ) = B_a^{-1}(ρ)`, `u_a(ρ) = -log A_a(x_a(ρ))` solving
//!   `u'' ∏(1 + μ_{k,a} u') = e^{-u}` ([`profile`]).
//!
//! [`exact`] holds the rational polynomial kernel and [`catalog`] the input
//! spectra for the standard example families.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod profile;
pub mod reeb;
pub mod report;

pub use catalog::FanoBaseSpec;
pub use error::{Error, Result};
pub use exact::{BigRational, RationalPoly};
