//! Fixtures shared by the criterion benchmarks in `benches/`.

use landau_core::{HermitianSymbolMatrix, MagneticContext, RadialSymbol};

pub fn unit_field() -> MagneticContext {
    MagneticContext::new(1.0).expect("b = 1 is valid")
}

/// `e^{−γ|x|^{2β}}`.
pub fn decay(gamma: f64, beta: f64) -> RadialSymbol {
    RadialSymbol::decaying(1.0, gamma, beta)
}

/// Small Gaussian scalar metric, inside the range where `H₀ − W` stays elliptic.
pub fn small_metric() -> HermitianSymbolMatrix {
    HermitianSymbolMatrix::scalar(RadialSymbol::decaying(0.02, 1.0, 1.0))
}

/// Non-scalar metric with an imaginary off-diagonal part, so every `U` entry is active.
pub fn mixed_metric() -> HermitianSymbolMatrix {
    HermitianSymbolMatrix::new(
        RadialSymbol::decaying(0.3, 1.0, 1.0),
        RadialSymbol::decaying(0.2, 0.5, 1.0),
        RadialSymbol::zero(),
        RadialSymbol::decaying(0.1, 1.0, 1.0),
    )
}
