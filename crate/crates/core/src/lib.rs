//! Berezin–Toeplitz reductions of metric perturbations of the Landau Hamiltonian.
//!
//! The Landau Hamiltonian `H₀` with constant field `b > 0` has the Landau levels
//! `Λ_q = b(2q + 1)` as spectrum. A metric perturbation `H_± = H₀ ± W` with a
//! decaying, positive semidefinite 2×2 matrix `m(x)` produces eigenvalue clusters
//! that accumulate at each `Λ_q` from one side. Their distances to `Λ_q` are
//! governed by Toeplitz operators `P_q 𝔸* Ω 𝔸 P_q`, whose eigenvalues decay
//! super-exponentially for compactly supported or Gaussian-like perturbations.
//!
//! Module map:
//!
//! - [`special`]: log-domain scalars, Laguerre polynomials, `ln Γ` and the
//!   saddle-centred log-domain quadrature behind every eigenvalue.
//! - [`symbol`]: closed-form radial symbol algebra (Laplacian, `∂²/∂z̄²`, the
//!   Laguerre differential transform `w_q`, `U = 𝒪* m 𝒪`, `𝒯_q`).
//! - [`toeplitz`]: angular-momentum basis matrix elements and finite sections.
//! - [`asymptotics`]: formal power series for the Laplace coefficients and the
//!   predicted expansions of the eigenvalue logarithms.
//! - [`counting`]: counting functions and semiclassical volumes.
//! - [`galerkin`]: truncated `H₀ ± W` in the Landau basis.

// `!(x > 0.0)` is the NaN-rejecting form used for argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod counting;
pub mod error;
pub mod galerkin;
pub mod special;
pub mod symbol;
pub mod toeplitz;

pub use error::{Error, Result};
pub use special::LogScalar;
pub use symbol::{AngularSymbol, Cutoff, HermitianSymbolMatrix, Radial, RadialProfile, RadialSymbol, RadialTerm};

pub use toeplitz::{BasisIndex, EigenvalueSequence, MagneticContext};
