use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest truncation order accepted by the series engine.
pub const MAX_ORDER: usize = 30;

/// Truncated power series `c₀ + c₁ε + … + c_J ε^J`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// Series with the given coefficients; the order is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The expansion variable `ε` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::constant(0.0, order);
        if order > 0 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    fn zip(&self, o: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.order(), o.order(), "series orders differ");
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(*a, *b)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, x: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * x).collect())
    }

    pub fn add_const(&self, x: f64) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += x;
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order(), "series orders differ");
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `ε · s`, truncated.
    pub fn mul_eps(&self) -> Self {
        let mut out = vec![0.0; self.coeffs.len()];
        out[1..].copy_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self::new(out)
    }

    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let mut g = vec![0.0; n];
        g[0] = self.coeffs[0].exp();
        for m in 1..n {
            let s: f64 = (1..=m).map(|k| k as f64 * self.coeffs[k] * g[m - k]).sum();
            g[m] = s / m as f64;
        }
        Self::new(g)
    }

    /// Natural logarithm; needs a positive constant term.
    pub fn ln(&self) -> Result<Self> {
        let f0 = self.coeffs[0];
        if !(f0 > 0.0) {
            return domain(format!("log of a series with constant term {f0}"));
        }
        let n = self.coeffs.len();
        let mut g = vec![0.0; n];
        g[0] = f0.ln();
        for m in 1..n {
            let s: f64 = (1..m).map(|k| k as f64 * g[k] * self.coeffs[m - k]).sum();
            g[m] = (self.coeffs[m] - s / m as f64) / f0;
        }
        Ok(Self::new(g))
    }

    /// `s^a` for real `a`; needs a positive constant term.
    pub fn powf(&self, a: f64) -> Result<Self> {
        Ok(self.ln()?.scale(a).exp())
    }

    /// `self(inner(ε))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != 0.0 {
            return domain("composition needs an inner series without constant term");
        }
        let mut out = Self::constant(0.0, inner.order());
        for c in self.coeffs.iter().rev() {
            out = out.mul(inner).add_const(*c);
        }
        Ok(out)
    }

    pub fn eval(&self, eps: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * eps + c)
    }

    pub(crate) fn max_abs_diff(&self, o: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
