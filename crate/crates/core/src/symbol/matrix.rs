use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::LogScalar;
use crate::symbol::{dbar_squared, AngularSymbol, Radial, RadialSymbol};

/// Pointwise Hermitian 2×2 matrix of radial symbols.
///
/// `w12_re + i·w12_im` is the upper-right entry; the lower-left one is its
/// conjugate.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HermitianSymbolMatrix {
    #[serde(default)]
    pub w11: RadialSymbol,
    #[serde(default)]
    pub w22: RadialSymbol,
    #[serde(default)]
    pub w12_re: RadialSymbol,
    #[serde(default)]
    pub w12_im: RadialSymbol,
}

impl HermitianSymbolMatrix {
    pub fn new(w11: RadialSymbol, w22: RadialSymbol, w12_re: RadialSymbol, w12_im: RadialSymbol) -> Self {
        Self {
            w11,
            w22,
            w12_re,
            w12_im,
        }
    }

    pub fn identity() -> Self {
        Self::scalar(RadialSymbol::constant(1.0))
    }

    /// `p · I`.
    pub fn scalar(p: RadialSymbol) -> Self {
        Self::diagonal(p.clone(), p)
    }

    pub fn diagonal(p1: RadialSymbol, p2: RadialSymbol) -> Self {
        Self::new(p1, p2, RadialSymbol::zero(), RadialSymbol::zero())
    }

    fn entries(&self) -> [&RadialSymbol; 4] {
        [&self.w11, &self.w22, &self.w12_re, &self.w12_im]
    }

    pub fn scale(&self, x: f64) -> Self {
        Self::new(
            self.w11.scale(x),
            self.w22.scale(x),
            self.w12_re.scale(x),
            self.w12_im.scale(x),
        )
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(Self::new(
            self.w11.add(&o.w11)?,
            self.w22.add(&o.w22)?,
            self.w12_re.add(&o.w12_re)?,
            self.w12_im.add(&o.w12_im)?,
        ))
    }

    pub fn trace(&self) -> Result<RadialSymbol> {
        self.w11.add(&self.w22)
    }

    pub fn is_smooth(&self) -> bool {
        self.entries().iter().all(|s| s.is_smooth())
    }

    pub fn is_diagonal(&self) -> bool {
        self.w12_re.is_zero() && self.w12_im.is_zero()
    }

    /// Entry values `(m11, m22, Re m12, Im m12)` at radius `r`.
    pub fn eval(&self, r: f64) -> [f64; 4] {
        let t = r * r;
        [
            self.w11.eval_t(t),
            self.w22.eval_t(t),
            self.w12_re.eval_t(t),
            self.w12_im.eval_t(t),
        ]
    }

    /// Largest `|x|` at which any entry changes character (cutoff radii).
    fn cutoff_radii(&self) -> Vec<f64> {
        self.entries()
            .iter()
            .filter_map(|s| {
                let (lo, hi) = s.cutoff().t_range();
                if lo > 0.0 {
                    Some(lo.sqrt())
                } else if hi.is_finite() {
                    Some(hi.sqrt())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Sample radii used for pointwise checks: a geometric grid plus points
    /// on both sides of every cutoff.
    pub fn sample_radii(&self) -> Vec<f64> {
        let mut r = vec![0.0];
        let n = 400;
        for i in 0..=n {
            r.push(1e-4 * 1e7f64.powf(i as f64 / n as f64));
        }
        for c in self.cutoff_radii() {
            r.extend([c * (1.0 - 1e-9), c, c * (1.0 + 1e-9)]);
        }
        r.sort_by(f64::total_cmp);
        r
    }

    /// Rejects matrices that fail to be positive semidefinite on the sample grid.
    pub fn check_psd(&self) -> Result<()> {
        for r in self.sample_radii() {
            let (lo, hi) = pointwise_eigen_bounds(self, r);
            if lo < -1e-12 * hi.abs().max(1.0) {
                return Err(Error::NotPositive { value: lo, r });
            }
        }
        Ok(())
    }

    /// `sup_x` of the larger pointwise eigenvalue, over the sample grid.
    pub fn sup_upper_eigenvalue(&self) -> f64 {
        self.sample_radii()
            .into_iter()
            .map(|r| pointwise_eigen_bounds(self, r).1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `sup_x ‖m(x)‖` over the sample grid.
    pub fn sup_norm(&self) -> f64 {
        self.sample_radii()
            .into_iter()
            .map(|r| {
                let (lo, hi) = pointwise_eigen_bounds(self, r);
                lo.abs().max(hi.abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Closed-form eigenvalues `(m_<, m_>)` of `m(x)` at `|x| = r`.
pub fn pointwise_eigen_bounds(m: &HermitianSymbolMatrix, r: f64) -> (f64, f64) {
    let [p, s, x, y] = m.eval(r);
    let mean = 0.5 * (p + s);
    let rad = (0.5 * (p - s)).hypot(x.hypot(y));
    (mean - rad, mean + rad)
}

/// One of the two pointwise eigenvalue functions of a symbol matrix.
#[derive(Clone, Debug)]
pub struct EigenBound {
    m: HermitianSymbolMatrix,
    upper: bool,
}

impl EigenBound {
    pub fn lower(m: &HermitianSymbolMatrix) -> Self {
        Self {
            m: m.clone(),
            upper: false,
        }
    }

    pub fn upper(m: &HermitianSymbolMatrix) -> Self {
        Self {
            m: m.clone(),
            upper: true,
        }
    }

    fn eval_t(&self, t: f64) -> f64 {
        let (lo, hi) = pointwise_eigen_bounds(&self.m, t.sqrt());
        if self.upper {
            hi
        } else {
            lo
        }
    }
}

impl Radial for EigenBound {
    fn log_value(&self, t: f64) -> LogScalar {
        if self.m.is_diagonal() && self.m.w11 == self.m.w22 {
            // exact log-domain value when both eigenvalues coincide
            return self.m.w11.log_value(t);
        }
        LogScalar::from_f64(self.eval_t(t))
    }

    fn log_envelope(&self, t: f64) -> f64 {
        self.m
            .entries()
            .iter()
            .map(|s| s.log_envelope(t))
            .fold(f64::NEG_INFINITY, f64::max)
            + 2f64.ln()
    }

    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut edges: Vec<f64> = self.m.cutoff_radii().into_iter().map(|r| r * r).collect();
        edges.push(0.0);
        edges.push(f64::INFINITY);
        edges.sort_by(f64::total_cmp);
        edges.dedup();
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// `U = 𝒪* m 𝒪`, written out entrywise.
pub fn metric_to_u(m: &HermitianSymbolMatrix) -> Result<HermitianSymbolMatrix> {
    let half_trace = m.trace()?.scale(0.5);
    Ok(HermitianSymbolMatrix::new(
        half_trace.sub(&m.w12_im)?,
        half_trace.add(&m.w12_im)?,
        m.w11.sub(&m.w22)?.scale(0.5),
        m.w12_re.scale(-1.0),
    ))
}

/// `𝒯_q = ½(Λ_q Tr m − 2b Im m₁₂)`, for positive semidefinite `m`.
pub fn tq_symbol(m: &HermitianSymbolMatrix, q: usize, b: f64) -> Result<RadialSymbol> {
    check_field(b)?;
    m.check_psd()?;
    let level = b * (2 * q + 1) as f64;
    m.trace()?.scale(0.5 * level).sub(&m.w12_im.scale(b))
}

pub(crate) fn check_field(b: f64) -> Result<()> {
    if b > 0.0 && b.is_finite() {
        Ok(())
    } else {
        domain(format!("magnetic field must be positive, got {b}"))
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `L_n^{(m)}(−Δ/2b) s = Σ_j binom(n+m, n−j) Δ^j s / (j! (2b)^j)`.
pub fn laguerre_of_laplacian(s: &RadialSymbol, n: usize, m: usize, b: f64) -> Result<RadialSymbol> {
    s.require_smooth("a Laguerre differential operator")?;
    let mut out = RadialSymbol::zero();
    let mut power = s.clone();
    let mut scale = 1.0;
    for j in 0..=n {
        if j > 0 {
            power = power.laplacian()?;
            scale /= j as f64 * 2.0 * b;
        }
        out = out.add(&power.scale(binomial(n + m, n - j) * scale))?;
    }
    Ok(out)
}

fn laguerre_of_laplacian_angular(s: &AngularSymbol, n: usize, m: usize, b: f64) -> Result<AngularSymbol> {
    let mut out = AngularSymbol::zero(s.weight);
    let mut power = s.clone();
    let mut scale = 1.0;
    for j in 0..=n {
        if j > 0 {
            power = power.laplacian()?;
            scale /= j as f64 * 2.0 * b;
        }
        out = out.add(&power.scale(binomial(n + m, n - j) * scale))?;
    }
    Ok(out)
}

/// Level-0 symbol `radial + Re(angular)` equivalent to a level-`q` quadratic form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WqSymbol {
    pub radial: RadialSymbol,
    pub angular: AngularSymbol,
}

impl WqSymbol {
    /// Value at the point `r e^{iθ}`.
    pub fn eval(&self, r: f64, theta: f64) -> f64 {
        self.radial.eval(r) + self.angular.eval(r, theta).0
    }
}

/// The Laguerre differential transform
/// `2b(q+1) L_{q+1}(−Δ/2b) ω₁₁ + 2bq L_{q−1}(−Δ/2b) ω₂₂ − 8 Re L_{q−1}^{(2)}(−Δ/2b) ∂²ω₁₂/∂z̄²`.
pub fn wq_transform(omega: &HermitianSymbolMatrix, q: usize, b: f64) -> Result<WqSymbol> {
    check_field(b)?;
    for s in omega.entries() {
        s.require_smooth("the w_q transform")?;
    }
    let two_b = 2.0 * b;
    let mut radial = laguerre_of_laplacian(&omega.w11, q + 1, 0, b)?.scale(two_b * (q + 1) as f64);
    let mut angular = AngularSymbol::zero(2);
    if q > 0 {
        radial = radial.add(&laguerre_of_laplacian(&omega.w22, q - 1, 0, b)?.scale(two_b * q as f64))?;
        let d_re = dbar_squared(&omega.w12_re)?;
        let d_im = dbar_squared(&omega.w12_im)?;
        let dz = AngularSymbol::new(2, d_re.re, d_im.re);
        if !dz.is_zero() {
            angular = laguerre_of_laplacian_angular(&dz, q - 1, 2, b)?.scale(-8.0);
        }
    }
    Ok(WqSymbol { radial, angular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::RadialTerm;

    fn gauss() -> RadialSymbol {
        RadialSymbol::decaying(1.0, 1.0, 1.0)
    }

    #[test]
    fn metric_to_u_examples() {
        let id = HermitianSymbolMatrix::identity();
        assert_eq!(metric_to_u(&id).unwrap(), id);
        let p = gauss();
        let u = metric_to_u(&HermitianSymbolMatrix::diagonal(p.clone(), RadialSymbol::zero())).unwrap();
        assert_eq!(u.w11, p.scale(0.5));
        assert_eq!(u.w22, p.scale(0.5));
        assert_eq!(u.w12_re, p.scale(0.5));
        assert!(u.w12_im.is_zero());
        let s = gauss();
        let m = HermitianSymbolMatrix::new(
            RadialSymbol::zero(),
            RadialSymbol::zero(),
            RadialSymbol::zero(),
            s.clone(),
        );
        let u = metric_to_u(&m).unwrap();
        assert_eq!(u.w11, s.scale(-1.0));
        assert_eq!(u.w22, s);
        assert!(u.w12_re.is_zero() && u.w12_im.is_zero());
    }

    #[test]
    fn tq_examples() {
        for q in 0..4 {
            let t = tq_symbol(&HermitianSymbolMatrix::identity(), q, 0.5).unwrap();
            assert_eq!(t, RadialSymbol::constant(0.5 * (2 * q + 1) as f64));
        }
        // an imaginary off-diagonal entry with zero diagonal is indefinite
        let m = HermitianSymbolMatrix::new(
            RadialSymbol::zero(),
            RadialSymbol::zero(),
            RadialSymbol::zero(),
            RadialSymbol::constant(-0.5),
        );
        assert!(matches!(tq_symbol(&m, 0, 1.0), Err(Error::NotPositive { .. })));
        let m = HermitianSymbolMatrix::new(gauss(), gauss().scale(2.0), RadialSymbol::zero(), gauss().scale(0.5));
        let t1 = tq_symbol(&m, 1, 1.0).unwrap();
        let t3 = tq_symbol(&m.scale(3.0), 1, 1.0).unwrap();
        assert!(t3.approx_eq(&t1.scale(3.0), 1e-15));
    }

    #[test]
    fn eigen_bound_examples() {
        let m = HermitianSymbolMatrix::diagonal(RadialSymbol::constant(0.3), RadialSymbol::constant(0.1));
        let (lo, hi) = pointwise_eigen_bounds(&m, 1.0);
        assert!((lo - 0.1).abs() < 1e-15 && (hi - 0.3).abs() < 1e-15);
        let m = HermitianSymbolMatrix::new(
            RadialSymbol::constant(0.5),
            RadialSymbol::constant(0.5),
            RadialSymbol::constant(0.2),
            RadialSymbol::zero(),
        );
        let (lo, hi) = pointwise_eigen_bounds(&m, 0.7);
        assert!((lo - 0.3).abs() < 1e-15 && (hi - 0.7).abs() < 1e-15);
    }

    #[test]
    fn wq_examples() {
        let b = 1.3;
        for q in 0..4 {
            let w = wq_transform(&HermitianSymbolMatrix::identity().scale(0.7), q, b).unwrap();
            let level = b * (2 * q + 1) as f64;
            assert!(w.radial.approx_eq(&RadialSymbol::constant(2.0 * level * 0.7), 1e-14));
            assert!(w.angular.is_zero());
        }
        let m = HermitianSymbolMatrix::diagonal(gauss(), RadialSymbol::zero());
        let w = wq_transform(&m, 0, 1.0).unwrap();
        let expected = gauss().scale(2.0).add(&gauss().laplacian().unwrap()).unwrap();
        assert_eq!(w.radial, expected);
        let m = HermitianSymbolMatrix::new(gauss(), gauss(), gauss().scale(0.2), RadialSymbol::zero());
        let w = wq_transform(&m, 2, 1.0).unwrap();
        assert!(!w.angular.is_zero());
        assert!(wq_transform(&HermitianSymbolMatrix::diagonal(gauss(), gauss()), 2, 1.0)
            .unwrap()
            .angular
            .is_zero());
    }

    #[test]
    fn wq_is_linear() {
        let a = HermitianSymbolMatrix::new(
            gauss(),
            gauss().scale(0.5),
            RadialSymbol::decaying(0.1, 0.5, 1.0),
            RadialSymbol::zero(),
        );
        let c = HermitianSymbolMatrix::new(
            RadialSymbol::from_terms(vec![RadialTerm::new(0.2, 1.0, 1.0, 1.0)]).unwrap(),
            RadialSymbol::zero(),
            RadialSymbol::zero(),
            RadialSymbol::decaying(0.3, 1.0, 1.0),
        );
        for q in 0..3 {
            let sum = wq_transform(&a.add(&c).unwrap(), q, 1.0).unwrap();
            let wa = wq_transform(&a, q, 1.0).unwrap();
            let wc = wq_transform(&c, q, 1.0).unwrap();
            assert!(sum.radial.approx_eq(&wa.radial.add(&wc.radial).unwrap(), 1e-14));
            let ang = wa.angular.add(&wc.angular).unwrap();
            assert!(sum.angular.re.approx_eq(&ang.re, 1e-14) && sum.angular.im.approx_eq(&ang.im, 1e-14));
        }
    }

    #[test]
    fn cutoff_entries_rejected() {
        let cut = RadialSymbol::constant(1.0)
            .with_cutoff(crate::symbol::Cutoff::Inside { radius: 1.0 })
            .unwrap();
        assert!(wq_transform(&HermitianSymbolMatrix::scalar(cut), 0, 1.0).is_err());
    }
}
