//! Minimum vertical distance between two spectral curves inside a window.
//!
//! Used to resolve near-degeneracies: when two levels approach without
//! crossing, the minimum gap quantifies the avoided crossing. When the curve
//! set carries its coupling (fixed-mu energy curves), the gap is recomputed
//! from fresh fine-stepped scans rather than from the stored polylines, so
//! the answer does not depend on the plotting resolution.

use super::scan::scan_spectrum;
use super::{CurveSet, PlaneKind, Polyline, ScanConfig, SolverError, Window};

/// Result of a minimum-gap search.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    /// Abscissa (lambda) of the minimum.
    pub lambda_star: f64,
    /// The minimal vertical distance.
    pub gap: f64,
    /// The two ordinates at the minimum, lower first.
    pub energies: [f64; 2],
    /// Whether the gap came from fresh fine-stepped scans (true) or from
    /// interpolating the stored polylines (false).
    pub refined: bool,
    /// Abscissa step used for the final search pass.
    pub scan_step: f64,
    /// Number of abscissa samples inspected.
    pub samples: usize,
}

/// Minimum vertical gap between the two spectrum curves that intersect
/// `window`. Errors with `CurveCountMismatch` unless exactly two do.
pub fn min_gap(set: &CurveSet, window: &Window, cfg: &ScanConfig) -> Result<GapReport, SolverError> {
    cfg.validate()?;
    let curves = set.curves_in_window(window);
    if curves.len() != 2 {
        return Err(SolverError::CurveCountMismatch {
            expected: 2,
            found: curves.len(),
        });
    }
    if set.plane == PlaneKind::LambdaE {
        if let Some(mu) = set.mu {
            return refined_gap(mu, window, cfg);
        }
    }
    geometric_gap(curves[0], curves[1], window, cfg)
}

/// The two level energies nearest the window's vertical center at a given
/// coupling, sorted ascending. Degeneracy-2 levels count twice. A curve may
/// leave the window vertically before leaving it horizontally, so the scan
/// band is widened until both levels are caught.
fn two_levels(
    lambda: f64,
    mu: f64,
    window: &Window,
    cfg: &ScanConfig,
) -> Result<[f64; 2], SolverError> {
    let l2 = lambda * lambda;
    let e_center = 0.5 * (window.y_lo + window.y_hi);
    let mut found = 0usize;
    for widen in 0..5 {
        let pad = 0.5 * window.height() * (1 << widen) as f64;
        let out = scan_spectrum(
            lambda,
            mu,
            window.y_lo - pad + l2,
            window.y_hi + pad + l2,
            cfg,
        )?;
        let mut energies: Vec<f64> = Vec::new();
        for p in &out.points {
            for _ in 0..p.kind.degeneracy {
                energies.push(p.energy());
            }
        }
        found = energies.len();
        if found < 2 {
            continue;
        }
        if energies.len() > 2 {
            energies.sort_by(|a, b| (a - e_center).abs().total_cmp(&(b - e_center).abs()));
            energies.truncate(2);
        }
        energies.sort_by(f64::total_cmp);
        return Ok([energies[0], energies[1]]);
    }
    Err(SolverError::CurveCountMismatch {
        expected: 2,
        found,
    })
}

/// Recompute both levels by scanning the spectrum at each abscissa with a
/// fine step, then take the vertical minimum. A second pass at 1/8 the step
/// tightens the minimum locally.
fn refined_gap(mu: f64, window: &Window, cfg: &ScanConfig) -> Result<GapReport, SolverError> {
    let step = cfg.gap_scan_step.min(window.width() / 8.0);
    let n = (window.width() / step).ceil().max(8.0) as usize;
    let mut best: Option<GapReport> = None;
    let mut samples = 0usize;
    for i in 0..=n {
        let lambda = window.x_lo + window.width() * i as f64 / n as f64;
        let e = two_levels(lambda, mu, window, cfg)?;
        samples += 1;
        let gap = e[1] - e[0];
        if best.as_ref().is_none_or(|b| gap < b.gap) {
            best = Some(GapReport {
                lambda_star: lambda,
                gap,
                energies: e,
                refined: true,
                scan_step: step,
                samples: 0,
            });
        }
    }
    let mut report = best.expect("grid has at least one sample");
    // Local pass around the coarse minimum.
    let fine = step / 8.0;
    let lo = (report.lambda_star - step).max(window.x_lo);
    let hi = (report.lambda_star + step).min(window.x_hi);
    let m = ((hi - lo) / fine).ceil().max(4.0) as usize;
    for i in 0..=m {
        let lambda = lo + (hi - lo) * i as f64 / m as f64;
        let e = two_levels(lambda, mu, window, cfg)?;
        samples += 1;
        let gap = e[1] - e[0];
        if gap < report.gap {
            report = GapReport {
                lambda_star: lambda,
                gap,
                energies: e,
                refined: true,
                scan_step: fine,
                samples: 0,
            };
        }
    }
    report.samples = samples;
    Ok(report)
}

/// Interpolate both polylines on common abscissae and take the vertical
/// minimum. Used when the set has no coupling attached (e.g. synthetic or
/// plane-traced curves).
fn geometric_gap(
    a: &Polyline,
    b: &Polyline,
    window: &Window,
    cfg: &ScanConfig,
) -> Result<GapReport, SolverError> {
    let lo = window.x_lo.max(poly_x_min(a)).max(poly_x_min(b));
    let hi = window.x_hi.min(poly_x_max(a)).min(poly_x_max(b));
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(SolverError::Refine(
            "curves share no abscissa range inside the window".into(),
        ));
    }
    let step = cfg.gap_scan_step.min((hi - lo) / 8.0);
    let n = ((hi - lo) / step).ceil().max(8.0) as usize;
    let mut best: Option<GapReport> = None;
    for i in 0..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let (Some(ya), Some(yb)) = (poly_interp(a, x), poly_interp(b, x)) else {
            continue;
        };
        let gap = (ya - yb).abs();
        if best.as_ref().is_none_or(|r| gap < r.gap) {
            let (lo_e, hi_e) = if ya <= yb { (ya, yb) } else { (yb, ya) };
            best = Some(GapReport {
                lambda_star: x,
                gap,
                energies: [lo_e, hi_e],
                refined: false,
                scan_step: step,
                samples: n + 1,
            });
        }
    }
    best.ok_or_else(|| SolverError::Refine("no common sample points".into()))
}

fn poly_x_min(p: &Polyline) -> f64 {
    p.points.iter().map(|q| q[0]).fold(f64::INFINITY, f64::min)
}

fn poly_x_max(p: &Polyline) -> f64 {
    p.points
        .iter()
        .map(|q| q[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Piecewise-linear interpolation of a polyline at abscissa x. The curve
/// sweep emits strictly increasing abscissae, so a simple bracket suffices.
fn poly_interp(p: &Polyline, x: f64) -> Option<f64> {
    let pts = &p.points;
    if pts.is_empty() {
        return None;
    }
    if pts.len() == 1 {
        return (pts[0][0] == x).then_some(pts[0][1]);
    }
    for w in pts.windows(2) {
        let (x0, x1) = (w[0][0], w[1][0]);
        if (x0 <= x && x <= x1) || (x1 <= x && x <= x0) {
            if x1 == x0 {
                return Some(w[0][1]);
            }
            let t = (x - x0) / (x1 - x0);
            return Some(w[0][1] + t * (w[1][1] - w[0][1]));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{energy_curves, CurveRole, PlaneKind};

    fn synthetic(points_a: Vec<[f64; 2]>, points_b: Vec<[f64; 2]>) -> CurveSet {
        CurveSet {
            plane: PlaneKind::LambdaMu,
            label: "synthetic".into(),
            mu: None,
            curves: vec![
                Polyline {
                    label: "a".into(),
                    role: CurveRole::Spectrum,
                    points: points_a,
                },
                Polyline {
                    label: "b".into(),
                    role: CurveRole::Spectrum,
                    points: points_b,
                },
            ],
            markers: Vec::new(),
            warnings: Vec::new(),
        }
    }

    #[test]
    fn identical_curves_have_zero_gap() {
        let pts: Vec<[f64; 2]> = (0..=20)
            .map(|i| {
                let x = i as f64 / 20.0;
                [x, x * x]
            })
            .collect();
        let set = synthetic(pts.clone(), pts);
        let w = Window::new(0.0, 1.0, -1.0, 2.0).unwrap();
        let r = min_gap(&set, &w, &ScanConfig::default()).unwrap();
        assert_eq!(r.gap, 0.0);
        assert!(!r.refined);
    }

    #[test]
    fn parallel_lines_report_their_offset() {
        let a: Vec<[f64; 2]> = (0..=10).map(|i| [i as f64 / 10.0, 1.0]).collect();
        let b: Vec<[f64; 2]> = (0..=10).map(|i| [i as f64 / 10.0, 1.25]).collect();
        let set = synthetic(a, b);
        let w = Window::new(0.0, 1.0, 0.5, 1.5).unwrap();
        let r = min_gap(&set, &w, &ScanConfig::default()).unwrap();
        assert!((r.gap - 0.25).abs() < 1e-12);
        assert_eq!(r.energies, [1.0, 1.25]);
    }

    #[test]
    fn wrong_curve_count_is_rejected() {
        let a: Vec<[f64; 2]> = (0..=10).map(|i| [i as f64 / 10.0, 1.0]).collect();
        let set = synthetic(a.clone(), a);
        // Window far away from both curves: zero curves intersect it.
        let w = Window::new(0.0, 1.0, 5.0, 6.0).unwrap();
        match min_gap(&set, &w, &ScanConfig::default()) {
            Err(SolverError::CurveCountMismatch { expected: 2, found: 0 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn decoupled_limit_pairs_touch() {
        // mu = 0: every level is doubly degenerate, so the refined gap is 0.
        let cfg = ScanConfig {
            curve_step: 0.01,
            gap_scan_step: 0.02,
            ..ScanConfig::default()
        };
        let set = energy_curves(0.0, (0.05, 0.3), (0.5, 1.4), &cfg).unwrap();
        let w = Window::new(0.05, 0.3, 0.5, 1.4).unwrap();
        let r = min_gap(&set, &w, &cfg).unwrap();
        assert!(r.refined);
        assert_eq!(r.gap, 0.0);
    }

    #[test]
    fn avoided_crossing_gap_is_resolved() {
        // Small coupling at mu = 0.6: the two lowest excited levels run
        // close together and repel; the minimum stays well inside (0, 0.35).
        let cfg = ScanConfig {
            curve_step: 0.01,
            gap_scan_step: 0.005,
            ..ScanConfig::default()
        };
        let set = energy_curves(0.6, (0.1, 0.2), (0.3, 0.7), &cfg).unwrap();
        let w = Window::new(0.1, 0.2, 0.3, 0.7).unwrap();
        let r = min_gap(&set, &w, &cfg).unwrap();
        assert!(r.refined);
        assert!(r.gap > 0.0);
        assert!(
            r.gap > 0.05 && r.gap < 0.35,
            "gap = {} at lambda = {}",
            r.gap,
            r.lambda_star
        );
        assert!(r.lambda_star >= 0.1 && r.lambda_star <= 0.2);
        assert!(r.energies[0] <= r.energies[1]);
    }
}
