//! Laplace-method coefficients and predicted expansions of eigenvalue logarithms.

mod coefficients;
mod expansion;
mod series;

pub use coefficients::{f_series, g_series, objective, objective_slope, solve_minimizer, MinimizerKind};
pub use expansion::{
    compact_support_expansion, decay_expansion, disk_prediction, ln_l_numeric, lnl_prediction, mu_from_gamma,
    AsymptoticExpansion, Prediction, Remainder,
};
pub use series::{PowerSeries, MAX_ORDER};
