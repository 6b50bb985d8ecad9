use landau_core::galerkin::{assemble_full, cluster_near, default_window, sandwich_check, Sign, TruncationSpec};
use landau_core::symbol::metric_to_u;
use landau_core::toeplitz::quadratic_form_eigs;
use landau_core::{HermitianSymbolMatrix, MagneticContext, RadialSymbol};

fn gaussian_metric(c: f64) -> HermitianSymbolMatrix {
    HermitianSymbolMatrix::scalar(RadialSymbol::decaying(c, 1.0, 1.0))
}

#[test]
fn lower_cluster_grows_with_more_levels() {
    let ctx = MagneticContext::new(1.0).unwrap();
    let q = 1;
    let m = gaussian_metric(0.1);
    let shifts: Vec<Vec<f64>> = (q + 2..=q + 4)
        .map(|top| {
            let spec = TruncationSpec::new(q, top, 16).unwrap();
            let mat = assemble_full(&ctx, &m, &spec, Sign::Minus).unwrap();
            let c = cluster_near(&ctx, &mat, q, default_window(&ctx, q)).unwrap();
            c.shifts.iter().map(|s| -s).collect()
        })
        .collect();
    for w in shifts.windows(2) {
        for (a, b) in w[0].iter().zip(&w[1]) {
            assert!(*b >= a - 1e-12 * a.abs(), "{a} -> {b}");
        }
    }
}

#[test]
fn clusters_are_one_sided() {
    let ctx = MagneticContext::new(0.8).unwrap();
    // m = [[p, i x], [−i x, p/2]], positive semidefinite
    let g = RadialSymbol::decaying(1.0, 0.5, 1.0);
    let m = HermitianSymbolMatrix::new(g.scale(0.2), g.scale(0.1), RadialSymbol::zero(), g.scale(0.05));
    for q in 0..2 {
        let spec = TruncationSpec::new(q, q + 2, 12).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let mat = assemble_full(&ctx, &m, &spec, sign).unwrap();
            assert!(mat.asymmetry() < 1e-14);
            let c = cluster_near(&ctx, &mat, q, default_window(&ctx, q)).unwrap();
            assert!(c.shifts.iter().all(|s| sign.factor() * s >= -1e-10), "{:?}", c.shifts);
        }
    }
}

#[test]
fn small_metrics_follow_the_toeplitz_model() {
    let ctx = MagneticContext::new(1.0).unwrap();
    let m = gaussian_metric(0.05);
    let q = 2;
    let spec = TruncationSpec::new(q, q + 3, 30).unwrap();
    let u = metric_to_u(&m).unwrap();
    let model = quadratic_form_eigs(&ctx, &u, q, 40).unwrap();
    let mat = assemble_full(&ctx, &m, &spec, Sign::Plus).unwrap();
    let c = cluster_near(&ctx, &mat, q, default_window(&ctx, q)).unwrap();
    for k in 0..10 {
        let half = 0.5 * model.get(k).unwrap().to_f64();
        assert!((c.shifts[k] / half - 1.0).abs() < 0.1);
    }
}

#[test]
fn sandwich_report_serializes() {
    let ctx = MagneticContext::new(1.0).unwrap();
    let spec = TruncationSpec::new(0, 2, 16).unwrap();
    let rep = sandwich_check(&ctx, &gaussian_metric(0.05), &spec, Sign::Minus, 3).unwrap();
    assert!(rep.pass);
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["sign"], "-");
    assert!(v["rows"].as_array().unwrap().len() > 4);
    // constant metric: flat cluster, proportional bounds, so k0 = 0
    let flat = HermitianSymbolMatrix::scalar(RadialSymbol::constant(0.05));
    let rep = sandwich_check(&ctx, &flat, &spec, Sign::Plus, 3).unwrap();
    assert_eq!(rep.k0, Some(0));
}
