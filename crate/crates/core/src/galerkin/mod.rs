//! Truncated `H₀ ± W` in the Landau basis `{φ_{s,k} : s ≤ Q, k ≤ K}`.
//!
//! Entries are taken in the gauge `φ̃_{s,k} = i^s φ_{s,k}`, where
//! `a* φ̃_s = −i√(2b(s+1)) φ̃_{s+1}` and `a φ̃_s = i√(2bs) φ̃_{s−1}`; for real
//! `U` the matrix of `W = ½𝔸*U𝔸` is then real symmetric.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::LogScalar;
use crate::symbol::{metric_to_u, EigenBound, HermitianSymbolMatrix, Radial};
use crate::toeplitz::{
    gauged_element, quadratic_form_eigs, scalar_quadratic_form_eigs, symmetric_eigensolve, BasisIndex,
    EigenvalueSequence, MagneticContext, SequenceMeta,
};

/// Basis `{φ_{s,k} : s ≤ max_level, k ≤ max_index}` around the target `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub level: usize,
    pub max_level: usize,
    pub max_index: usize,
}

impl TruncationSpec {
    pub fn new(level: usize, max_level: usize, max_index: usize) -> Result<Self> {
        if max_level < level + 2 {
            return domain(format!(
                "max level {max_level} must be at least level + 2 = {}",
                level + 2
            ));
        }
        Ok(Self {
            level,
            max_level,
            max_index,
        })
    }

    pub fn dim(&self) -> usize {
        (self.max_level + 1) * (self.max_index + 1)
    }

    pub fn position(&self, s: usize, k: usize) -> usize {
        s * (self.max_index + 1) + k
    }

    pub fn basis(&self) -> Vec<BasisIndex> {
        (0..=self.max_level)
            .flat_map(|s| (0..=self.max_index).map(move |k| BasisIndex::new(s, k)))
            .collect()
    }

    /// Same levels, index range scaled by `factor` (rounded up).
    pub fn with_index_factor(&self, factor: f64) -> Self {
        Self {
            max_index: (self.max_index as f64 * factor).ceil() as usize,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `diag(Λ_s) ± W`, with the Landau levels and the signed perturbation kept apart
/// so that small shifts are not swamped by rounding of `Λ_s`.
#[derive(Clone, Debug)]
pub struct GalerkinMatrix {
    pub spec: TruncationSpec,
    pub sign: Sign,
    pub basis: Vec<BasisIndex>,
    pub levels: Vec<f64>,
    pub perturbation: DMatrix<f64>,
}

impl GalerkinMatrix {
    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = self.perturbation.clone();
        for (i, l) in self.levels.iter().enumerate() {
            m[(i, i)] += l;
        }
        m
    }

    pub fn asymmetry(&self) -> f64 {
        let p = &self.perturbation;
        let mut worst: f64 = 0.0;
        for i in 0..p.nrows() {
            for j in 0..i {
                worst = worst.max((p[(i, j)] - p[(j, i)]).abs());
            }
        }
        worst
    }
}

fn ladder_pair(b: f64, x: usize, y: usize) -> f64 {
    2.0 * b * ((x * y) as f64).sqrt()
}

fn g(ctx: &MagneticContext, v: &dyn Radial, m: usize, s: usize, k: usize, l: usize) -> Result<f64> {
    Ok(gauged_element(ctx, v, m, s, k, l)?.to_f64())
}

/// `⟨W φ̃_{s,k}, φ̃_{s',k'}⟩` for real `U`.
fn w_entry(ctx: &MagneticContext, u: &HermitianSymbolMatrix, a: BasisIndex, c: BasisIndex) -> Result<f64> {
    let (s, k, s2, k2) = (a.level, a.index, c.level, c.index);
    let (na, nc) = (a.angular_momentum(), c.angular_momentum());
    let b = ctx.b;
    let mut sum = 0.0;
    if na == nc {
        if !u.w11.is_zero() {
            sum += ladder_pair(b, s + 1, s2 + 1) * g(ctx, &u.w11, s + 1, s2 + 1, k, k2)?;
        }
        if s > 0 && s2 > 0 && !u.w22.is_zero() {
            sum += ladder_pair(b, s, s2) * g(ctx, &u.w22, s - 1, s2 - 1, k, k2)?;
        }
    }
    if !u.w12_re.is_zero() {
        if s > 0 && na == nc - 2 {
            sum -= ladder_pair(b, s, s2 + 1) * g(ctx, &u.w12_re, s - 1, s2 + 1, k, k2)?;
        }
        if s2 > 0 && na == nc + 2 {
            sum -= ladder_pair(b, s + 1, s2) * g(ctx, &u.w12_re, s + 1, s2 - 1, k, k2)?;
        }
    }
    Ok(0.5 * sum)
}

/// Matrix of `H₀ ± W` on the truncated basis for a radial metric perturbation `m`
/// with real off-diagonal entry.
pub fn assemble_full(
    ctx: &MagneticContext,
    m: &HermitianSymbolMatrix,
    spec: &TruncationSpec,
    sign: Sign,
) -> Result<GalerkinMatrix> {
    if !m.w12_re.is_zero() {
        return Err(Error::Unsupported(
            "a real off-diagonal part of m makes U complex; only imaginary m12 is assembled".into(),
        ));
    }
    if sign == Sign::Minus {
        let sup = m.sup_norm();
        if !(sup < 1.0) {
            return Err(Error::Hypothesis(format!("H_- needs sup|m| < 1, got {sup}")));
        }
    }
    let u = metric_to_u(m)?;
    let basis = spec.basis();
    let n = basis.len();
    let f = sign.factor();
    let rows: Vec<Vec<(usize, f64)>> = basis
        .par_iter()
        .enumerate()
        .map(|(i, &a)| {
            let mut row = Vec::new();
            for (j, &c) in basis.iter().enumerate().skip(i) {
                let dn = a.angular_momentum() - c.angular_momentum();
                if dn != 0 && dn.abs() != 2 {
                    continue;
                }
                let v = w_entry(ctx, &u, a, c)?;
                if v != 0.0 {
                    row.push((j, f * v));
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut p = DMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            p[(i, j)] = v;
            p[(j, i)] = v;
        }
    }
    Ok(GalerkinMatrix {
        spec: *spec,
        sign,
        levels: basis.iter().map(|b| ctx.landau_level(b.level)).collect(),
        basis,
        perturbation: p,
    })
}

/// Eigenvalues of `H_±` near `Λ_q`, as signed shifts `λ − Λ_q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub level: usize,
    pub sign: Sign,
    /// Sorted by decreasing `|shift|`.
    pub shifts: Vec<f64>,
    /// Angular momentum `k − s` of the block each shift came from.
    pub angular_momentum: Vec<i64>,
    pub warnings: Vec<String>,
}

impl Cluster {
    /// `±(λ − Λ_q)` as a non-increasing sequence.
    pub fn normalized(&self, b: f64, truncation: usize) -> EigenvalueSequence {
        let f = self.sign.factor();
        EigenvalueSequence::from_indexed(
            self.shifts.iter().map(|s| LogScalar::from_f64(f * s)).collect(),
            SequenceMeta {
                operator: format!("H_{} cluster", if f > 0.0 { "+" } else { "-" }),
                truncation,
                b,
                level: self.level,
                warnings: self.warnings.clone(),
            },
        )
    }
}

/// Standard window `(Λ_q − b, Λ_q + b)`.
pub fn default_window(ctx: &MagneticContext, q: usize) -> (f64, f64) {
    let l = ctx.landau_level(q);
    (l - ctx.b, l + ctx.b)
}

fn components(p: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = p.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..i {
            if p[(i, j)] != 0.0 {
                let (a, c) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = c;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Shift of the eigenvalue continuing `Λ_q` in a block with a single level-`q` state,
/// from the scalar equation `δ = w₀₀ + hᵀ(Λ_q + δ − D − W_rr)⁻¹ h`.
fn feshbach_shift(levels: &[f64], p: &DMatrix<f64>, lq: f64) -> Result<f64> {
    let n = levels.len();
    let w00 = p[(0, 0)];
    if n == 1 {
        return Ok(w00);
    }
    let h = DVector::from_iterator(n - 1, (1..n).map(|i| p[(i, 0)]));
    let mut delta = w00;
    for _ in 0..200 {
        let mut m = DMatrix::zeros(n - 1, n - 1);
        for i in 1..n {
            for j in 1..n {
                m[(i - 1, j - 1)] = -p[(i, j)];
            }
            m[(i - 1, i - 1)] += lq + delta - levels[i];
        }
        let x = m
            .lu()
            .solve(&h)
            .ok_or_else(|| Error::NonConvergence("singular reduced resolvent".into()))?;
        let next = w00 + h.dot(&x);
        let done = (next - delta).abs() <= 1e-15 * next.abs() || next == delta;
        delta = next;
        if done {
            return Ok(delta);
        }
    }
    Err(Error::NonConvergence("reduced eigenvalue equation".into()))
}

/// Eigenvalues of `matrix` inside `window ⊂ (Λ_{q−1}, Λ_{q+1})`, as shifts from `Λ_q`.
///
/// Blocks that contain exactly one level-`q` state are solved through their
/// reduced scalar equation, which keeps full relative accuracy of tiny shifts.
pub fn cluster_near(ctx: &MagneticContext, matrix: &GalerkinMatrix, q: usize, window: (f64, f64)) -> Result<Cluster> {
    let lq = ctx.landau_level(q);
    let lower = if q == 0 {
        f64::NEG_INFINITY
    } else {
        ctx.landau_level(q - 1)
    };
    if !(window.0 < lq && lq < window.1 && window.0 >= lower && window.1 <= ctx.landau_level(q + 1)) {
        return domain(format!(
            "window {window:?} must contain Λ_q and lie between its neighbours"
        ));
    }
    let inside = |x: f64| window.0 < x && x < window.1;
    let mut found: Vec<(f64, i64)> = Vec::new();
    let mut warnings = Vec::new();
    for comp in components(&matrix.perturbation) {
        let mut order = comp.clone();
        let at_q: Vec<usize> = comp.iter().copied().filter(|&i| matrix.basis[i].level == q).collect();
        let n_mom = matrix.basis[comp[0]].angular_momentum();
        let levels: Vec<f64> = order.iter().map(|&i| matrix.levels[i]).collect();
        let sub = DMatrix::from_fn(order.len(), order.len(), |i, j| {
            matrix.perturbation[(order[i], order[j])]
        });
        let mut dense = sub.clone();
        for (i, l) in levels.iter().enumerate() {
            dense[(i, i)] += l - lq;
        }
        let eig = symmetric_eigensolve(&dense)?;
        let in_window: Vec<f64> = eig.into_iter().filter(|&d| inside(lq + d)).collect();
        if at_q.len() == 1 && in_window.len() == 1 {
            order.retain(|&i| i != at_q[0]);
            order.insert(0, at_q[0]);
            let levels: Vec<f64> = order.iter().map(|&i| matrix.levels[i]).collect();
            let sub = DMatrix::from_fn(order.len(), order.len(), |i, j| {
                matrix.perturbation[(order[i], order[j])]
            });
            found.push((feshbach_shift(&levels, &sub, lq)?, n_mom));
        } else {
            if comp.len() > 1 && !in_window.is_empty() {
                warnings.push(format!(
                    "block of size {} with {} level-{q} states solved densely; shifts have absolute accuracy only",
                    comp.len(),
                    at_q.len()
                ));
            }
            found.extend(in_window.into_iter().map(|d| (d, n_mom)));
        }
    }
    if found.is_empty() {
        return Err(Error::EmptyCluster(q));
    }
    found.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()).then(a.1.cmp(&b.1)));
    Ok(Cluster {
        level: q,
        sign: matrix.sign,
        shifts: found.iter().map(|f| f.0).collect(),
        angular_momentum: found.iter().map(|f| f.1).collect(),
        warnings,
    })
}

/// Two-sided constants relating cluster shifts to `ν_k(P_q 𝔸* m_≷ 𝔸 P_q)` at `ε = ½`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichConstants {
    /// `sup |m (I ± m)⁻¹|`.
    pub resolvent_bound: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn sandwich_constants(m: &HermitianSymbolMatrix, sign: Sign) -> Result<SandwichConstants> {
    let eps = 0.5;
    let top = m.sup_upper_eigenvalue();
    Ok(match sign {
        Sign::Minus => {
            if !(top < 1.0) {
                return Err(Error::Hypothesis(format!("H_- needs sup|m| < 1, got {top}")));
            }
            let c = top / (1.0 - top);
            SandwichConstants {
                resolvent_bound: c,
                lower: 1.0 / (2.0 * (1.0 + eps)),
                upper: (1.0 + c) / (2.0 * (1.0 - eps)),
            }
        }
        Sign::Plus => {
            let c = top / (1.0 + top);
            SandwichConstants {
                resolvent_bound: c,
                lower: (1.0 - c) / (2.0 * (1.0 + eps)),
                upper: 1.0 / (2.0 * (1.0 - eps)),
            }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichRow {
    pub k: usize,
    pub shift: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderRow {
    pub k: usize,
    pub shift: f64,
    pub toeplitz: f64,
    pub rel_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub level: usize,
    pub sign: Sign,
    pub spec: TruncationSpec,
    pub constants: SandwichConstants,
    /// Smallest shift `k₀` for which every tested row holds.
    pub k0: Option<usize>,
    pub pass: bool,
    pub rows: Vec<SandwichRow>,
    /// Rows failing at the largest `k₀` tried.
    pub violations: Vec<usize>,
    pub first_order: Vec<FirstOrderRow>,
    /// Indices excluded because they moved by 1% or more when `K` grew by half.
    pub truncation_rejected: Vec<usize>,
}

/// Normalized cluster values `±(λ_k − Λ_q)` that stay within 1% when `K` grows by half.
pub fn stable_cluster(
    ctx: &MagneticContext,
    m: &HermitianSymbolMatrix,
    spec: &TruncationSpec,
    sign: Sign,
) -> Result<(Vec<f64>, Vec<usize>)> {
    let q = spec.level;
    let window = default_window(ctx, q);
    let small = cluster_near(ctx, &assemble_full(ctx, m, spec, sign)?, q, window)?;
    let big_spec = spec.with_index_factor(1.5);
    let big = cluster_near(ctx, &assemble_full(ctx, m, &big_spec, sign)?, q, window)?;
    let f = sign.factor();
    let a: Vec<f64> = small.shifts.iter().map(|s| f * s).collect();
    let rejected = a
        .iter()
        .enumerate()
        .filter(|&(k, v)| {
            let w = big.shifts.get(k).map_or(f64::NAN, |s| f * s);
            !((v / w - 1.0).abs() < 0.01)
        })
        .map(|(k, _)| k)
        .collect();
    Ok((a, rejected))
}

/// Checks `c_< ν_{k+k₀}(m_<) ≤ ±(λ_k − Λ_q) ≤ c_> ν_{k−k₀}(m_>)` for `k ≤ K/2`
/// over truncation-stable values, trying `k₀ = 0..=max_k0`.
pub fn sandwich_check(
    ctx: &MagneticContext,
    m: &HermitianSymbolMatrix,
    spec: &TruncationSpec,
    sign: Sign,
    max_k0: usize,
) -> Result<SandwichReport> {
    m.check_psd()?;
    let q = spec.level;
    let constants = sandwich_constants(m, sign)?;
    let (shifts, rejected) = stable_cluster(ctx, m, spec, sign)?;
    let kk = spec.max_index;
    let big_k = kk + max_k0 + 1;
    let lower_seq = scalar_quadratic_form_eigs(ctx, &EigenBound::lower(m), q, big_k)?;
    let upper_seq = scalar_quadratic_form_eigs(ctx, &EigenBound::upper(m), q, big_k)?;
    let nu = |s: &EigenvalueSequence, k: usize| s.get(k).map_or(0.0, |v| v.to_f64());
    let tested: Vec<usize> = (0..=kk / 2)
        .filter(|k| !rejected.contains(k) && *k < shifts.len())
        .collect();
    let rows_for = |k0: usize| -> Vec<SandwichRow> {
        tested
            .iter()
            .map(|&k| {
                let lower = constants.lower * nu(&lower_seq, k + k0);
                let upper = if k >= k0 {
                    constants.upper * nu(&upper_seq, k - k0)
                } else {
                    f64::INFINITY
                };
                let shift = shifts[k];
                // relative slack for rounding in the bounds themselves
                let tol = 1e-12 * shift.abs();
                SandwichRow {
                    k,
                    shift,
                    lower,
                    upper,
                    holds: lower <= shift + tol && shift <= upper + tol,
                }
            })
            .collect()
    };
    let mut k0 = None;
    let mut rows = Vec::new();
    for c in 0..=max_k0 {
        rows = rows_for(c);
        if rows.iter().all(|r| r.holds) {
            k0 = Some(c);
            break;
        }
    }
    let violations = rows.iter().filter(|r| !r.holds).map(|r| r.k).collect();
    let u = metric_to_u(m)?;
    let form = quadratic_form_eigs(ctx, &u, q, big_k.max(4))?;
    let first_order = (0..10.min(shifts.len()))
        .map(|k| {
            let toeplitz = 0.5 * nu(&form, k);
            FirstOrderRow {
                k,
                shift: shifts[k],
                toeplitz,
                rel_diff: (shifts[k] / toeplitz - 1.0).abs(),
            }
        })
        .collect();
    Ok(SandwichReport {
        level: q,
        sign,
        spec: *spec,
        constants,
        k0,
        pass: k0.is_some() && !tested.is_empty(),
        rows,
        violations,
        first_order,
        truncation_rejected: rejected,
    })
}
