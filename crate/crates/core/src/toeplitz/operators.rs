use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::special::LogScalar;
use crate::symbol::{wq_transform, HermitianSymbolMatrix, Radial};
use crate::toeplitz::eigen::tridiagonal_eigenvalues;
use crate::toeplitz::elements::{angular_element, gauged_element};
use crate::toeplitz::{EigenvalueSequence, MagneticContext, SequenceMeta};

/// Finite section whose only couplings are between indices `k` and `k + 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    /// Diagonal entries `0..K`.
    pub diag: Vec<LogScalar>,
    /// `|entry(k, k+2)|` for `k = 0..K−2`.
    pub coupling: Vec<LogScalar>,
    /// Diagonal entry at index `K`, the first one left out.
    pub floor: LogScalar,
}

impl Section {
    /// Eigenvalues, each tagged with the index of the diagonal entry it is
    /// paired with (by rank within its parity block).
    fn eigenpairs(&self) -> Vec<(LogScalar, usize)> {
        let n = self.diag.len();
        if self.coupling.iter().all(|c| c.is_zero()) {
            return self.diag.iter().copied().zip(0..n).collect();
        }
        let mut out = Vec::with_capacity(n);
        for parity in 0..2 {
            let idx: Vec<usize> = (parity..n).step_by(2).collect();
            if idx.is_empty() {
                continue;
            }
            let entries = idx
                .iter()
                .map(|&k| self.diag[k])
                .chain(idx.iter().filter(|&&k| k + 2 < n).map(|&k| self.coupling[k]));
            let scale = entries.map(|v| v.ln_abs()).fold(f64::NEG_INFINITY, f64::max);
            if scale == f64::NEG_INFINITY {
                out.extend(idx.iter().map(|&k| (LogScalar::ZERO, k)));
                continue;
            }
            let unscale = LogScalar::from_ln(scale);
            let to_f64 = |v: LogScalar| (v / unscale).to_f64();
            let d: Vec<f64> = idx.iter().map(|&k| to_f64(self.diag[k])).collect();
            let e: Vec<f64> = idx[..idx.len() - 1].iter().map(|&k| to_f64(self.coupling[k])).collect();
            let mut eig = tridiagonal_eigenvalues(&d, &e);
            eig.reverse();
            let mut by_diag = idx.clone();
            by_diag.sort_by(|&i, &j| self.diag[j].total_cmp(&self.diag[i]).then(i.cmp(&j)));
            for (lam, k) in eig.into_iter().zip(by_diag) {
                out.push((LogScalar::from_f64(lam) * unscale, k));
            }
        }
        out.sort_by_key(|&(_, k)| k);
        out
    }

    /// Sorted eigenvalues with the truncation check applied; a diagonal
    /// section is exact and skips it.
    pub fn eigenvalues(&self, meta: SequenceMeta) -> EigenvalueSequence {
        let pairs = self.eigenpairs();
        let mut seq = EigenvalueSequence::from_indexed(pairs.iter().map(|p| p.0).collect(), meta);
        let coupled = self.coupling.iter().any(|c| !c.is_zero());
        if let Some(smallest) = seq.values().last().copied().filter(|_| coupled) {
            let floor = self.floor.abs();
            if !floor.is_zero() && floor.scale(10.0) > smallest.abs() {
                let msg = format!(
                    "truncation: smallest eigenvalue {} is within 10x of the first omitted diagonal entry {}",
                    smallest, floor
                );
                log::warn!("{msg}");
                seq.meta.warnings.push(msg);
            }
        }
        seq.with_floor(self.floor)
    }
}

fn check_size(k: usize, min: usize) -> Result<()> {
    if k < min {
        return domain(format!("truncation size must be at least {min}, got {k}"));
    }
    Ok(())
}

/// `⟨V φ_{q,k}, φ_{q,k}⟩`, the `k`-th diagonal value of `P_q V P_q`.
pub fn toeplitz_diagonal(ctx: &MagneticContext, v: &dyn Radial, q: usize, k: usize) -> Result<LogScalar> {
    gauged_element(ctx, v, q, q, k, k)
}

/// Eigenvalues of `P_q V P_q` for radial `V`: the diagonal values for `k < K`,
/// sorted.
pub fn toeplitz_eigs_radial(
    ctx: &MagneticContext,
    v: &dyn Radial,
    q: usize,
    k_max: usize,
) -> Result<EigenvalueSequence> {
    check_size(k_max, 1)?;
    let diag: Vec<LogScalar> = (0..=k_max)
        .into_par_iter()
        .map(|k| toeplitz_diagonal(ctx, v, q, k))
        .collect::<Result<_>>()?;
    let section = Section {
        diag: diag[..k_max].to_vec(),
        coupling: vec![LogScalar::ZERO; k_max.saturating_sub(2)],
        floor: diag[k_max],
    };
    Ok(section.eigenvalues(SequenceMeta {
        operator: format!("P_{q} V P_{q}"),
        truncation: k_max,
        b: ctx.b,
        level: q,
        warnings: Vec::new(),
    }))
}

fn scalar_form_diagonal(
    ctx: &MagneticContext,
    w11: &dyn Radial,
    w22: &dyn Radial,
    q: usize,
    k: usize,
) -> Result<LogScalar> {
    let two_b = 2.0 * ctx.b;
    let mut d = gauged_element(ctx, w11, q + 1, q + 1, k, k)?.scale(two_b * (q + 1) as f64);
    if q > 0 {
        d = d + gauged_element(ctx, w22, q - 1, q - 1, k, k)?.scale(two_b * q as f64);
    }
    Ok(d)
}

fn hypot(a: LogScalar, b: LogScalar) -> LogScalar {
    (a * a + b * b).powf(0.5)
}

/// The `K×K` section of `P_q 𝔸* Ω 𝔸 P_q` in the basis `{φ_{q,k}}`.
pub fn quadratic_form_section(
    ctx: &MagneticContext,
    omega: &HermitianSymbolMatrix,
    q: usize,
    k_max: usize,
) -> Result<Section> {
    let diag: Vec<LogScalar> = (0..=k_max)
        .into_par_iter()
        .map(|k| scalar_form_diagonal(ctx, &omega.w11, &omega.w22, q, k))
        .collect::<Result<_>>()?;
    let coupled = q > 0 && !omega.is_diagonal();
    let coupling: Vec<LogScalar> = (2..k_max)
        .into_par_iter()
        .map(|k| {
            if !coupled {
                return Ok(LogScalar::ZERO);
            }
            let re = gauged_element(ctx, &omega.w12_re, q + 1, q - 1, k, k - 2)?;
            let im = gauged_element(ctx, &omega.w12_im, q + 1, q - 1, k, k - 2)?;
            let c = 2.0 * ctx.b * ((q * (q + 1)) as f64).sqrt();
            Ok(hypot(re, im).scale(c))
        })
        .collect::<Result<_>>()?;
    Ok(Section {
        diag: diag[..k_max].to_vec(),
        coupling,
        floor: diag[k_max],
    })
}

/// Eigenvalues of the `K×K` section of `P_q 𝔸* Ω 𝔸 P_q`.
pub fn quadratic_form_eigs(
    ctx: &MagneticContext,
    omega: &HermitianSymbolMatrix,
    q: usize,
    k_max: usize,
) -> Result<EigenvalueSequence> {
    check_size(k_max, 4)?;
    let section = quadratic_form_section(ctx, omega, q, k_max)?;
    Ok(section.eigenvalues(SequenceMeta {
        operator: format!("P_{q} A* Omega A P_{q}"),
        truncation: k_max,
        b: ctx.b,
        level: q,
        warnings: Vec::new(),
    }))
}

/// Eigenvalues of `P_q 𝔸* (p I) 𝔸 P_q` for a scalar radial `p`, which is diagonal.
pub fn scalar_quadratic_form_eigs(
    ctx: &MagneticContext,
    p: &dyn Radial,
    q: usize,
    k_max: usize,
) -> Result<EigenvalueSequence> {
    check_size(k_max, 1)?;
    let diag: Vec<LogScalar> = (0..=k_max)
        .into_par_iter()
        .map(|k| scalar_form_diagonal(ctx, p, p, q, k))
        .collect::<Result<_>>()?;
    let section = Section {
        diag: diag[..k_max].to_vec(),
        coupling: vec![LogScalar::ZERO; k_max.saturating_sub(2)],
        floor: diag[k_max],
    };
    Ok(section.eigenvalues(SequenceMeta {
        operator: format!("P_{q} A* (p I) A P_{q}"),
        truncation: k_max,
        b: ctx.b,
        level: q,
        warnings: Vec::new(),
    }))
}

/// The `K×K` section of `P₀ w_q(Ω) P₀`.
pub fn wq_route_section(
    ctx: &MagneticContext,
    omega: &HermitianSymbolMatrix,
    q: usize,
    k_max: usize,
) -> Result<Section> {
    let w = wq_transform(omega, q, ctx.b)?;
    let diag: Vec<LogScalar> = (0..=k_max)
        .into_par_iter()
        .map(|k| gauged_element(ctx, &w.radial, 0, 0, k, k))
        .collect::<Result<_>>()?;
    let weight = w.angular.weight.unsigned_abs() as usize;
    let coupling: Vec<LogScalar> = (0..k_max.saturating_sub(2))
        .into_par_iter()
        .map(|k| {
            if w.angular.is_zero() {
                return Ok(LogScalar::ZERO);
            }
            // Re(z²H) = ½(z²H + z̄²H̄); only the first half maps φ_k to φ_{k+2}.
            let re = angular_element(ctx, &w.angular.re, weight, k)?;
            let im = angular_element(ctx, &w.angular.im, weight, k)?;
            Ok(hypot(re, im).scale(0.5))
        })
        .collect::<Result<_>>()?;
    Ok(Section {
        diag: diag[..k_max].to_vec(),
        coupling,
        floor: diag[k_max],
    })
}

/// Eigenvalues of the `K×K` section of `P₀ w_q(Ω) P₀`.
pub fn wq_route_eigs(
    ctx: &MagneticContext,
    omega: &HermitianSymbolMatrix,
    q: usize,
    k_max: usize,
) -> Result<EigenvalueSequence> {
    check_size(k_max, 4)?;
    let section = wq_route_section(ctx, omega, q, k_max)?;
    Ok(section.eigenvalues(SequenceMeta {
        operator: format!("P_0 w_{q}(Omega) P_0"),
        truncation: k_max,
        b: ctx.b,
        level: q,
        warnings: Vec::new(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{Cutoff, RadialSymbol};

    #[test]
    fn identity_sections() {
        let ctx = MagneticContext::new(1.5).unwrap();
        let id = HermitianSymbolMatrix::identity();
        for q in 0..3 {
            let two_level = 2.0 * ctx.landau_level(q);
            for seq in [
                quadratic_form_eigs(&ctx, &id, q, 8).unwrap(),
                wq_route_eigs(&ctx, &id, q, 8).unwrap(),
            ] {
                assert_eq!(seq.len(), 8);
                for v in seq.values() {
                    assert!((v.to_f64() / two_level - 1.0).abs() < 1e-10);
                }
            }
        }
        let ones = toeplitz_eigs_radial(&ctx, &RadialSymbol::constant(1.0), 1, 5).unwrap();
        assert!(ones.values().iter().all(|v| (v.to_f64() - 1.0).abs() < 1e-10));
    }

    #[test]
    fn gaussian_sequence_and_disk_sequence() {
        let ctx = MagneticContext::new(1.0).unwrap();
        let g = toeplitz_eigs_radial(&ctx, &RadialSymbol::decaying(1.0, 0.5, 1.0), 0, 50).unwrap();
        for (k, v) in g.values().iter().enumerate() {
            assert!((v.ln_abs() + (k + 1) as f64 * 2f64.ln()).abs() < 1e-10);
        }
        assert!(g.meta.warnings.is_empty(), "diagonal sections are exact");
        let disk = RadialSymbol::constant(1.0)
            .with_cutoff(Cutoff::Inside { radius: 1.0 })
            .unwrap();
        let d = toeplitz_eigs_radial(&ctx, &disk, 0, 30).unwrap();
        for w in d.values().windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn coupled_section_agrees_between_routes() {
        let ctx = MagneticContext::new(1.0).unwrap();
        let g = RadialSymbol::decaying(1.0, 1.0, 1.0);
        let omega = HermitianSymbolMatrix::new(g.clone(), g.scale(0.5), g.scale(0.3), g.scale(0.1));
        for q in 1..3 {
            let a = quadratic_form_eigs(&ctx, &omega, q, 24).unwrap();
            let b = wq_route_eigs(&ctx, &omega, q, 24).unwrap();
            for k in 0..12 {
                let (x, y) = (a.values()[k], b.values()[k]);
                assert!(x.rel_diff(y) < 1e-7, "q={q} k={k}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn rejects_small_truncation() {
        let ctx = MagneticContext::new(1.0).unwrap();
        assert!(quadratic_form_eigs(&ctx, &HermitianSymbolMatrix::identity(), 0, 3).is_err());
    }
}
