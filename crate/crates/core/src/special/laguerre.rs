use serde::{Deserialize, Serialize};

/// Degree and superscript of a generalized Laguerre polynomial `L_q^{(m)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaguerreParams {
    pub degree: usize,
    pub superscript: usize,
}

impl LaguerreParams {
    pub fn new(degree: usize, superscript: usize) -> Self {
        Self { degree, superscript }
    }
}

/// `L_q^{(m)}(t)` by the three-term recurrence.
pub fn laguerre(params: LaguerreParams, t: f64) -> f64 {
    laguerre_real(params.degree, params.superscript as f64, t)
}

/// `L_n^{(α)}(t)` for real `α > −1`.
pub fn laguerre_real(n: usize, alpha: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - t;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - t) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Power-basis coefficients of `L_n^{(α)}`: entry `j` multiplies `t^j`.
pub fn laguerre_coefficients(n: usize, alpha: f64) -> Vec<f64> {
    // c_j = binom(n+α, n−j) (−1)^j / j!, built from c_n downward.
    let mut c = vec![0.0; n + 1];
    let mut fact = 1.0;
    for j in 1..=n {
        fact *= j as f64;
    }
    c[n] = if n.is_multiple_of(2) { 1.0 } else { -1.0 } / fact;
    for j in (0..n).rev() {
        // c_j / c_{j+1} = −(j+1)(α+j+1) / (n−j)
        let jf = j as f64;
        c[j] = -c[j + 1] * (jf + 1.0) * (alpha + jf + 1.0) / (n - j) as f64;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    /// Exact rational evaluation of the defining sum, rounded once at the end.
    fn direct_sum(q: usize, m: usize, t: (i64, i64)) -> f64 {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::ToPrimitive;

        let t = BigRational::new(BigInt::from(t.0), BigInt::from(t.1));
        let mut sum = BigRational::from_integer(BigInt::from(0));
        let mut power = BigRational::from_integer(BigInt::from(1));
        let mut fact = BigInt::from(1);
        for j in 0..=q {
            if j > 0 {
                power = power * (-t.clone());
                fact *= BigInt::from(j);
            }
            let mut binom = BigInt::from(1);
            for i in 0..(q - j) {
                binom = binom * BigInt::from(q + m - i) / BigInt::from(i + 1);
            }
            sum += power.clone() * BigRational::from_integer(binom) / BigRational::from_integer(fact.clone());
        }
        sum.to_f64().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(laguerre(LaguerreParams::new(1, 1), 1.0), 1.0);
        for q in 0..12 {
            for m in 0..5 {
                let v = laguerre(LaguerreParams::new(q, m), 0.0);
                assert!((v - binom(q + m, q)).abs() <= 1e-12 * binom(q + m, q));
            }
        }
        let s: f64 = (0..=2).map(|j| laguerre(LaguerreParams::new(j, 0), 1.0)).sum();
        assert!((s - 0.5).abs() < 1e-15);
        assert!((laguerre(LaguerreParams::new(2, 1), 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn recurrence_matches_direct_sum() {
        let ts = [(-100, 1), (-15, 2), (-1, 1), (3, 10), (2, 1), (9, 1), (40, 1), (100, 1)];
        for q in [0usize, 1, 3, 7, 15, 30, 50] {
            for m in [0usize, 1, 2, 5] {
                for &t in &ts {
                    let r = laguerre(LaguerreParams::new(q, m), t.0 as f64 / t.1 as f64);
                    let d = direct_sum(q, m, t);
                    assert!((r - d).abs() <= 1e-12 * d.abs(), "q={q} m={m} t={t:?}: {r} vs {d}");
                }
            }
        }
    }

    #[test]
    fn coefficients_reproduce_values() {
        for n in 0..8 {
            let c = laguerre_coefficients(n, 2.0);
            for &t in &[0.0f64, 0.5, 3.0] {
                let v: f64 = c.iter().enumerate().map(|(j, cj)| cj * t.powi(j as i32)).sum();
                assert!((v - laguerre_real(n, 2.0, t)).abs() < 1e-12 * (1.0 + v.abs()));
            }
        }
    }
}
