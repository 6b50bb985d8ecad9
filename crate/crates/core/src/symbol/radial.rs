use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::LogScalar;

/// One term `c · t^a · e^{−γ t^β}` of a radial symbol, with `t = r²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialTerm {
    pub c: f64,
    pub a: f64,
    pub gamma: f64,
    pub beta: f64,
}

impl RadialTerm {
    pub fn new(c: f64, a: f64, gamma: f64, beta: f64) -> Self {
        Self { c, a, gamma, beta }
    }

    fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.a.is_finite() && self.gamma.is_finite() && self.beta.is_finite()) {
            return domain(format!("non-finite symbol term {self:?}"));
        }
        if self.gamma < 0.0 {
            return domain(format!("decay rate must be nonnegative, got {}", self.gamma));
        }
        if self.beta <= 0.0 {
            return domain(format!("decay exponent must be positive, got {}", self.beta));
        }
        Ok(())
    }

    /// Undecayed terms are stored with `β = 1` so that equal terms merge.
    fn normalized(mut self) -> Self {
        if self.gamma == 0.0 {
            self.beta = 1.0;
        }
        self
    }

    fn key_cmp(&self, o: &Self) -> Ordering {
        self.beta
            .total_cmp(&o.beta)
            .then(self.gamma.total_cmp(&o.gamma))
            .then(self.a.total_cmp(&o.a))
    }

    fn same_family(&self, o: &Self) -> bool {
        self.key_cmp(o) == Ordering::Equal
    }

    /// `ln|term|` without the coefficient sign.
    pub fn log_abs(&self, t: f64) -> f64 {
        let mut v = self.c.abs().ln();
        if self.a != 0.0 {
            v += self.a * t.ln();
        }
        if self.gamma != 0.0 {
            v -= self.gamma * t.powf(self.beta);
        }
        v
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = self.c;
        if self.a != 0.0 {
            v *= t.powf(self.a);
        }
        if self.gamma != 0.0 {
            v *= (-self.gamma * t.powf(self.beta)).exp();
        }
        v
    }

    /// `d/dt` of the term, as up to two terms.
    fn derivative(&self) -> [RadialTerm; 2] {
        let Self { c, a, gamma, beta } = *self;
        [
            RadialTerm::new(c * a, a - 1.0, gamma, beta),
            RadialTerm::new(-c * gamma * beta, a + beta - 1.0, gamma, beta),
        ]
    }
}

/// Radial cutoff of a symbol, in terms of `|x|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Cutoff {
    #[default]
    None,
    /// Keeps `|x| < radius`.
    Inside { radius: f64 },
    /// Keeps `|x| ≥ radius`.
    Outside { radius: f64 },
}

impl Cutoff {
    /// Interval of `t = r²` on which the symbol is active.
    pub fn t_range(&self) -> (f64, f64) {
        match *self {
            Cutoff::None => (0.0, f64::INFINITY),
            Cutoff::Inside { radius } => (0.0, radius * radius),
            Cutoff::Outside { radius } => (radius * radius, f64::INFINITY),
        }
    }

    pub fn contains_t(&self, t: f64) -> bool {
        match *self {
            Cutoff::None => true,
            Cutoff::Inside { radius } => t < radius * radius,
            Cutoff::Outside { radius } => t >= radius * radius,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Cutoff::None => Ok(()),
            Cutoff::Inside { radius } | Cutoff::Outside { radius } => {
                if radius > 0.0 && radius.is_finite() {
                    Ok(())
                } else {
                    domain(format!("cutoff radius must be positive, got {radius}"))
                }
            }
        }
    }
}

/// A real function of `|x|` that the quadrature-based routines can integrate.
///
/// Arguments are `t = |x|²`.
pub trait Radial: Send + Sync {
    fn log_value(&self, t: f64) -> LogScalar;

    /// Smooth upper estimate of `ln|value(t)|`, used to place quadrature panels.
    fn log_envelope(&self, t: f64) -> f64;

    /// Intervals of `t` on which the function is smooth; it vanishes elsewhere.
    fn pieces(&self) -> Vec<(f64, f64)>;

    fn value(&self, t: f64) -> f64 {
        self.log_value(t).to_f64()
    }
}

#[derive(Deserialize)]
struct RawSymbol {
    #[serde(default)]
    terms: Vec<RadialTerm>,
    #[serde(default)]
    cutoff: Cutoff,
}

impl TryFrom<RawSymbol> for RadialSymbol {
    type Error = Error;
    fn try_from(raw: RawSymbol) -> Result<Self> {
        RadialSymbol::from_terms(raw.terms)?.with_cutoff(raw.cutoff)
    }
}

/// Finite sum of [`RadialTerm`]s, optionally restricted by a [`Cutoff`].
///
/// Terms are kept sorted by `(β, γ, a)` with equal families merged and zero
/// coefficients dropped, so structural equality is coefficient equality.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSymbol")]
pub struct RadialSymbol {
    terms: Vec<RadialTerm>,
    cutoff: Cutoff,
}

impl RadialSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::term(c, 0.0, 0.0, 1.0)
    }

    /// Single term; panics on invalid parameters.
    pub fn term(c: f64, a: f64, gamma: f64, beta: f64) -> Self {
        Self::from_terms(vec![RadialTerm::new(c, a, gamma, beta)]).expect("valid radial term")
    }

    /// `c · e^{−γ r^{2β}}`.
    pub fn decaying(c: f64, gamma: f64, beta: f64) -> Self {
        Self::term(c, 0.0, gamma, beta)
    }

    pub fn from_terms(terms: Vec<RadialTerm>) -> Result<Self> {
        for t in &terms {
            t.validate()?;
        }
        Ok(Self {
            terms: canonical(terms),
            cutoff: Cutoff::None,
        })
    }

    pub fn with_cutoff(mut self, cutoff: Cutoff) -> Result<Self> {
        cutoff.validate()?;
        self.cutoff = cutoff;
        Ok(self)
    }

    pub fn terms(&self) -> &[RadialTerm] {
        &self.terms
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_smooth(&self) -> bool {
        self.cutoff == Cutoff::None
    }

    pub(crate) fn require_smooth(&self, op: &'static str) -> Result<()> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::NotSmooth(op))
        }
    }

    /// Value at `t = r²`.
    pub fn eval_t(&self, t: f64) -> f64 {
        if !self.cutoff.contains_t(t) {
            return 0.0;
        }
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    /// Value at radius `r`.
    pub fn eval(&self, r: f64) -> f64 {
        self.eval_t(r * r)
    }

    pub fn scale(&self, x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|t| RadialTerm { c: t.c * x, ..*t }).collect(),
            cutoff: self.cutoff,
        }
    }

    /// Sum; symbols with different cutoffs can only be added to zero.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.cutoff != other.cutoff {
            return Err(Error::Unsupported(
                "sum of symbols with different cutoffs; use a RadialProfile".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self {
            terms: canonical(terms),
            cutoff: self.cutoff,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Product; decay factors must share `β` unless one of them is absent.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let cutoff = match (self.cutoff, other.cutoff) {
            (a, Cutoff::None) => a,
            (Cutoff::None, b) => b,
            (a, b) if a == b => a,
            _ => return Err(Error::Unsupported("product of differently cut off symbols".into())),
        };
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for x in &self.terms {
            for y in &other.terms {
                let (gamma, beta) = if x.gamma == 0.0 {
                    (y.gamma, y.beta)
                } else if y.gamma == 0.0 {
                    (x.gamma, x.beta)
                } else if x.beta == y.beta {
                    (x.gamma + y.gamma, x.beta)
                } else {
                    return Err(Error::Unsupported(format!(
                        "product of decay factors with exponents {} and {}",
                        x.beta, y.beta
                    )));
                };
                terms.push(RadialTerm::new(x.c * y.c, x.a + y.a, gamma, beta));
            }
        }
        Ok(Self {
            terms: canonical(terms),
            cutoff,
        })
    }

    /// Multiplies by `t^p`.
    pub fn times_power(&self, p: f64) -> Self {
        Self {
            terms: canonical(self.terms.iter().map(|t| RadialTerm { a: t.a + p, ..*t }).collect()),
            cutoff: self.cutoff,
        }
    }

    /// `d/dt` with `t = r²`.
    pub fn derivative_t(&self) -> Result<Self> {
        self.require_smooth("differentiation")?;
        let terms = self.terms.iter().flat_map(|t| t.derivative()).collect();
        Ok(Self {
            terms: canonical(terms),
            cutoff: Cutoff::None,
        })
    }

    /// The planar Laplacian of `g(|x|²)`, namely `4(t g″ + g′)`.
    pub fn laplacian(&self) -> Result<Self> {
        self.require_smooth("the Laplacian")?;
        self.weighted_laplacian(0)
    }

    /// `h ↦ 4(t h″ + (n+1) h′)`: the Laplacian of `z^n h(|z|²)` divided by `z^n`.
    pub(crate) fn weighted_laplacian(&self, n: u32) -> Result<Self> {
        let d1 = self.derivative_t()?;
        let d2 = d1.derivative_t()?;
        d2.times_power(1.0)
            .add(&d1.scale(f64::from(n) + 1.0))
            .map(|s| s.scale(4.0))
    }

    /// Structural comparison of coefficients with a tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.cutoff != other.cutoff {
            return false;
        }
        let diff = match self.sub(other) {
            Ok(d) => d,
            Err(_) => return false,
        };
        let scale = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| t.c.abs())
            .fold(0.0, f64::max)
            .max(1.0);
        diff.terms.iter().all(|t| t.c.abs() <= tol * scale)
    }
}

fn canonical(mut terms: Vec<RadialTerm>) -> Vec<RadialTerm> {
    terms = terms.into_iter().map(RadialTerm::normalized).collect();
    terms.sort_by(RadialTerm::key_cmp);
    let mut out: Vec<RadialTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.same_family(&t) => last.c += t.c,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.c != 0.0);
    out
}

impl Radial for RadialSymbol {
    fn log_value(&self, t: f64) -> LogScalar {
        if !self.cutoff.contains_t(t) {
            return LogScalar::ZERO;
        }
        self.terms
            .iter()
            .map(|term| LogScalar::new(if term.c > 0.0 { 1 } else { -1 }, term.log_abs(t)))
            .sum()
    }

    fn log_envelope(&self, t: f64) -> f64 {
        if !self.cutoff.contains_t(t) || self.terms.is_empty() {
            return f64::NEG_INFINITY;
        }
        let m = self
            .terms
            .iter()
            .map(|term| term.log_abs(t))
            .fold(f64::NEG_INFINITY, f64::max);
        m + (self.terms.len() as f64).ln()
    }

    fn pieces(&self) -> Vec<(f64, f64)> {
        if self.terms.is_empty() {
            return Vec::new();
        }
        vec![self.cutoff.t_range()]
    }
}

/// Piecewise radial function: a sum of symbols with individual cutoffs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub pieces: Vec<RadialSymbol>,
}

impl RadialProfile {
    pub fn new(pieces: Vec<RadialSymbol>) -> Self {
        Self { pieces }
    }

    pub fn eval_t(&self, t: f64) -> f64 {
        self.pieces.iter().map(|p| p.eval_t(t)).sum()
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.eval_t(r * r)
    }

    pub fn scale(&self, x: f64) -> Self {
        Self::new(self.pieces.iter().map(|p| p.scale(x)).collect())
    }

    /// Cutoff radii in increasing `t`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| {
                let (lo, hi) = p.cutoff().t_range();
                [lo, hi]
            })
            .filter(|x| *x > 0.0 && x.is_finite())
            .collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }
}

impl From<RadialSymbol> for RadialProfile {
    fn from(s: RadialSymbol) -> Self {
        Self::new(vec![s])
    }
}

impl Radial for RadialProfile {
    fn log_value(&self, t: f64) -> LogScalar {
        self.pieces.iter().map(|p| p.log_value(t)).sum()
    }

    fn log_envelope(&self, t: f64) -> f64 {
        let n = self.pieces.len().max(1) as f64;
        self.pieces
            .iter()
            .map(|p| p.log_envelope(t))
            .fold(f64::NEG_INFINITY, f64::max)
            + n.ln()
    }

    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut edges = vec![0.0];
        edges.extend(self.breakpoints());
        edges.push(f64::INFINITY);
        edges
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|&(lo, hi)| {
                let mid = if hi.is_finite() { 0.5 * (lo + hi) } else { lo + 1.0 };
                self.pieces.iter().any(|p| !p.is_zero() && p.cutoff().contains_t(mid))
            })
            .collect()
    }
}
