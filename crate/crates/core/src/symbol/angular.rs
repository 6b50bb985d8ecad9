use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::RadialSymbol;

/// `z^w · (re + i·im)(|z|²)` for `w ≥ 0`, or `z̄^{|w|} · (re + i·im)` for `w < 0`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AngularSymbol {
    pub weight: i32,
    pub re: RadialSymbol,
    pub im: RadialSymbol,
}

impl AngularSymbol {
    pub fn new(weight: i32, re: RadialSymbol, im: RadialSymbol) -> Self {
        Self { weight, re, im }
    }

    pub fn zero(weight: i32) -> Self {
        Self::new(weight, RadialSymbol::zero(), RadialSymbol::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, x: f64) -> Self {
        Self::new(self.weight, self.re.scale(x), self.im.scale(x))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.weight != other.weight {
            return Err(Error::Unsupported(format!(
                "sum of angular weights {} and {}",
                self.weight, other.weight
            )));
        }
        Ok(Self::new(self.weight, self.re.add(&other.re)?, self.im.add(&other.im)?))
    }

    /// Complex conjugate, which flips the weight.
    pub fn conj(&self) -> Self {
        Self::new(-self.weight, self.re.clone(), self.im.scale(-1.0))
    }

    /// Planar Laplacian; the weight is preserved.
    pub fn laplacian(&self) -> Result<Self> {
        let n = self.weight.unsigned_abs();
        Ok(Self::new(
            self.weight,
            self.re.weighted_laplacian(n)?,
            self.im.weighted_laplacian(n)?,
        ))
    }

    /// Complex value `(re, im)` at the point `r e^{iθ}`.
    pub fn eval(&self, r: f64, theta: f64) -> (f64, f64) {
        let t = r * r;
        let (hr, hi) = (self.re.eval_t(t), self.im.eval_t(t));
        let mag = r.powi(self.weight.abs());
        let phase = f64::from(self.weight) * theta;
        let (pr, pi) = (mag * phase.cos(), mag * phase.sin());
        (pr * hr - pi * hi, pr * hi + pi * hr)
    }
}

/// `∂²/∂z̄² g(|z|²) = z² g″(|z|²)`.
pub fn dbar_squared(s: &RadialSymbol) -> Result<AngularSymbol> {
    s.require_smooth("the z-bar derivative")?;
    let g2 = s.derivative_t()?.derivative_t()?;
    Ok(AngularSymbol::new(2, g2, RadialSymbol::zero()))
}
