//! Radial symbol algebra.
//!
//! Symbols are finite sums `Σ c·t^a·e^{−γt^β}` in `t = |x|²`, closed under
//! the planar Laplacian and `∂²/∂z̄²` (which adds the angular factor `z²`).

mod angular;
mod envelopes;
mod matrix;
mod radial;

pub use angular::{dbar_squared, AngularSymbol};
pub use envelopes::{build_envelopes, eta3_prefactor, eta3_symbol};
pub(crate) use matrix::check_field;
pub use matrix::{
    laguerre_of_laplacian, metric_to_u, pointwise_eigen_bounds, tq_symbol, wq_transform, EigenBound,
    HermitianSymbolMatrix, WqSymbol,
};
pub use radial::{Cutoff, Radial, RadialProfile, RadialSymbol, RadialTerm};

/// Laplacian of a radial symbol (free-function form).
pub fn laplacian(s: &RadialSymbol) -> crate::Result<RadialSymbol> {
    s.laplacian()
}
