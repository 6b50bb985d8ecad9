//! Landau-level bases, matrix elements `Ξ` and finite Toeplitz sections.

mod basis;
mod eigen;
mod elements;
mod operators;
mod sequence;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use basis::{basis_polynomial, basis_value, BasisMonomial};
pub use eigen::{symmetric_eigensolve, tridiagonal_eigenvalues};
pub use elements::{angular_element, gauged_element, matrix_element, MatrixElement};
pub use operators::{
    quadratic_form_eigs, quadratic_form_section, scalar_quadratic_form_eigs, toeplitz_diagonal, toeplitz_eigs_radial,
    wq_route_eigs, wq_route_section, Section,
};
pub use sequence::{EigenvalueSequence, SequenceMeta};

/// Constant magnetic field strength `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagneticContext {
    pub b: f64,
}

/// Direction of a ladder step between Landau levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

impl MagneticContext {
    pub fn new(b: f64) -> Result<Self> {
        crate::symbol::check_field(b)?;
        Ok(Self { b })
    }

    /// `Λ_q = b(2q + 1)`.
    pub fn landau_level(&self, q: usize) -> f64 {
        self.b * (2 * q + 1) as f64
    }

    /// `a* φ_{q,k} = √(2b(q+1)) φ_{q+1,k}` and `a φ_{q,k} = √(2bq) φ_{q−1,k}`.
    pub fn ladder_coeff(&self, q: usize, direction: Direction) -> f64 {
        match direction {
            Direction::Raise => (2.0 * self.b * (q + 1) as f64).sqrt(),
            Direction::Lower => (2.0 * self.b * q as f64).sqrt(),
        }
    }
}

/// Basis function `φ_{q,k}`: Landau level `q`, degeneracy index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub level: usize,
    pub index: usize,
}

impl BasisIndex {
    pub fn new(level: usize, index: usize) -> Self {
        Self { level, index }
    }

    /// Angular momentum `k − q`; radial symbols couple only equal values.
    pub fn angular_momentum(&self) -> i64 {
        self.index as i64 - self.level as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_and_ladders() {
        let c = MagneticContext::new(1.0).unwrap();
        assert_eq!(c.landau_level(0), 1.0);
        assert_eq!(c.landau_level(2), 5.0);
        assert_eq!(MagneticContext::new(0.5).unwrap().landau_level(1), 1.5);
        assert_eq!(c.ladder_coeff(0, Direction::Lower), 0.0);
        assert_eq!(c.ladder_coeff(0, Direction::Raise), 2f64.sqrt());
        assert_eq!(
            MagneticContext::new(2.0).unwrap().ladder_coeff(3, Direction::Lower),
            12f64.sqrt()
        );
        assert!(MagneticContext::new(0.0).is_err());
    }
}
