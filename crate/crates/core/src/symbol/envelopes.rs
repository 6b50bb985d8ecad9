use crate::error::{domain, Result};
use crate::symbol::{Cutoff, RadialProfile, RadialSymbol};

/// Sharp-cutoff model envelopes `(η_<, η_>)` for a metric whose eigenvalues
/// behave like `|x|^δ e^{−γ|x|^{2β}}`.
///
/// The lower envelope is `|x|^{δ_<} e^{−γ|x|^{2β}}` outside radius `r + 1`;
/// the upper one is `|x|^{δ_>} e^{−γ|x|^{2β}}` outside `r − 1` plus the
/// constant `cap` inside.
pub fn build_envelopes(
    gamma: f64,
    beta: f64,
    delta_lo: f64,
    delta_hi: f64,
    r: f64,
    cap: f64,
) -> Result<(RadialSymbol, RadialProfile)> {
    if !(gamma > 0.0 && beta > 0.0) {
        return domain("envelopes need gamma > 0 and beta > 0");
    }
    if delta_lo > delta_hi {
        return domain(format!("need delta_lo <= delta_hi, got {delta_lo} > {delta_hi}"));
    }
    if !(r > 1.0) {
        return domain(format!("transition radius must exceed 1, got {r}"));
    }
    if !(cap >= 0.0) {
        return domain(format!("cap must be nonnegative, got {cap}"));
    }
    let lower =
        RadialSymbol::term(1.0, 0.5 * delta_lo, gamma, beta).with_cutoff(Cutoff::Outside { radius: r + 1.0 })?;
    let tail = RadialSymbol::term(1.0, 0.5 * delta_hi, gamma, beta).with_cutoff(Cutoff::Outside { radius: r - 1.0 })?;
    let mut pieces = vec![tail];
    if cap > 0.0 {
        pieces.push(RadialSymbol::constant(cap).with_cutoff(Cutoff::Inside { radius: r - 1.0 })?);
    }
    Ok((lower, RadialProfile::new(pieces)))
}

/// The constant `C_{q,β}` in the large-`|x|` form of
/// `2b((q+1)L_{q+1}(−Δ/2b) + qL_{q−1}(−Δ/2b)) |x|^δ e^{−γ|x|^{2β}}`.
pub fn eta3_prefactor(q: usize, beta: f64, gamma: f64, b: f64) -> f64 {
    let level = b * (2 * q + 1) as f64;
    if beta < 0.5 {
        2.0 * level
    } else if beta == 0.5 {
        let x = -(2.0 * beta * gamma).powi(2) / (2.0 * b);
        let lq1 = crate::special::laguerre_real(q + 1, 0.0, x);
        let lqm = if q == 0 {
            0.0
        } else {
            q as f64 * crate::special::laguerre_real(q - 1, 0.0, x)
        };
        2.0 * b * ((q + 1) as f64 * lq1 + lqm)
    } else {
        let fact: f64 = (1..=q).map(|j| j as f64).product();
        (2.0 * beta * gamma).powi(2 * (q as i32 + 1)) / ((2.0 * b).powi(q as i32) * fact)
    }
}

/// `C_{q,β} |x|^δ e^{−γ|x|^{2β}}`, times `|x|^{2(q+1)(2β−1)}` when `β > ½`.
pub fn eta3_symbol(q: usize, beta: f64, gamma: f64, delta: f64, b: f64) -> RadialSymbol {
    let extra = if beta > 0.5 {
        (q + 1) as f64 * (2.0 * beta - 1.0)
    } else {
        0.0
    };
    RadialSymbol::term(eta3_prefactor(q, beta, gamma, b), 0.5 * delta + extra, gamma, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{laguerre_of_laplacian, pointwise_eigen_bounds, HermitianSymbolMatrix, Radial};

    #[test]
    fn prefactor_branches() {
        assert_eq!(eta3_prefactor(1, 0.25, 0.7, 1.0), 6.0);
        let g: f64 = 0.8;
        assert!((eta3_prefactor(0, 1.0, g, 1.0) - 4.0 * g * g).abs() < 1e-15);
        // β = ½ evaluates its own formula: q = 0 gives 2b L_1(−γ²/2b) = 2b + γ²
        assert!((eta3_prefactor(0, 0.5, 1.0, 1.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn envelopes_nest() {
        let (lo, hi) = build_envelopes(1.0, 0.8, -0.5, 0.5, 2.0, 1.0).unwrap();
        for i in 0..200 {
            let x = 0.05 * i as f64;
            assert!(lo.eval(x) <= hi.eval(x) + 1e-300, "x={x}");
        }
        let (lo, hi) = build_envelopes(1.0, 1.0, 0.0, 0.0, 2.0, 0.0).unwrap();
        for &x in &[3.5, 4.0, 6.0] {
            assert_eq!(lo.eval(x), hi.eval(x));
            assert_eq!(lo.eval(x), (-x * x).exp());
        }
        assert!(build_envelopes(1.0, 1.0, 1.0, 0.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn lower_envelope_below_gaussian_metric() {
        // m = diag(2e^{−r²}, 3e^{−r²}) has m_< = 2e^{−r²} ≥ e^{−r²}.
        let g = RadialSymbol::decaying(1.0, 1.0, 1.0);
        let m = HermitianSymbolMatrix::diagonal(g.scale(2.0), g.scale(3.0));
        let (lo, _) = build_envelopes(1.0, 1.0, 0.0, 0.0, 1.5, 1.0).unwrap();
        for i in 0..300 {
            let r = 2.5 + 0.01 * i as f64;
            assert!(lo.eval(r) <= pointwise_eigen_bounds(&m, r).0);
        }
    }

    #[test]
    fn transformed_envelope_approaches_model_form() {
        // Ratio η₂/η₃ at growing |x| should move toward 1.
        for &(q, beta) in &[(0usize, 1.0), (1, 1.0), (1, 0.75), (0, 0.3)] {
            let gamma = 0.5;
            let b = 1.0;
            let eta1 = RadialSymbol::decaying(1.0, gamma, beta);
            let mut eta2 = laguerre_of_laplacian(&eta1, q + 1, 0, b)
                .unwrap()
                .scale(2.0 * b * (q + 1) as f64);
            if q > 0 {
                eta2 = eta2
                    .add(
                        &laguerre_of_laplacian(&eta1, q - 1, 0, b)
                            .unwrap()
                            .scale(2.0 * b * q as f64),
                    )
                    .unwrap();
            }
            let eta3 = eta3_symbol(q, beta, gamma, 0.0, b);
            let ratio = |r: f64| {
                let t = r * r;
                let v = eta2.log_value(t) / eta3.log_value(t);
                v.to_f64()
            };
            let far = ratio(160.0);
            let near = ratio(10.0);
            assert!((far - 1.0).abs() < (near - 1.0).abs() + 1e-12, "q={q} beta={beta}");
            assert!((far - 1.0).abs() < 0.25, "q={q} beta={beta}: {far}");
        }
    }
}
