//! Zero-level-set tracing for a spectral condition over the (lambda, mu)
//! plane.
//!
//! The window is rasterised on a rectangular grid, node values are computed
//! in parallel, and marching squares extracts the zero contour. Each contour
//! vertex then takes one Newton step along the finite-difference gradient to
//! tighten it onto the zero set. Cells with unevaluable corners (e.g. the
//! lambda = 0 edge, where the mapping degenerates) are masked and counted in
//! the warnings.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::conditions::{judd_condition, new_state_condition_f, wronskian_condition};
use crate::rabi::RabiPoint;

use super::{CurveRole, CurveSet, PlaneKind, Polyline, ScanConfig, SolverError, Window};

/// Which condition's zero set to trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelSetCondition {
    /// Wronskian condition at fixed non-integer spectral parameter x.
    WAtX(f64),
    /// Non-degenerate integer-x condition F_n.
    F(u32),
    /// Degenerate (polynomial-truncation) condition at degree n.
    Judd(u32),
}

impl LevelSetCondition {
    pub fn label(&self) -> String {
        match self {
            LevelSetCondition::WAtX(x) => format!("W = 0 at x = {x}"),
            LevelSetCondition::F(n) => format!("F_{n} = 0"),
            LevelSetCondition::Judd(n) => format!("truncation locus, degree {n}"),
        }
    }

    /// Normalized condition value, or None where it cannot be evaluated
    /// (degenerate mapping, blocked series, non-convergence).
    fn eval(&self, lambda: f64, mu: f64) -> Option<f64> {
        match self {
            LevelSetCondition::WAtX(x) => {
                let pt = RabiPoint::new(*x, lambda, mu);
                wronskian_condition(&pt).ok().map(|v| v.normalized())
            }
            LevelSetCondition::F(n) => {
                new_state_condition_f(*n, lambda, mu).ok().map(|v| v.normalized())
            }
            LevelSetCondition::Judd(n) => Some(judd_condition(*n, lambda, mu).normalized()),
        }
    }
}

/// Edge identity in the global grid: the edge leaving node (i, j) rightwards
/// (horizontal) or upwards (vertical). Shared edges between adjacent cells
/// get the same id, which is what lets segments chain into polylines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct EdgeId {
    i: usize,
    j: usize,
    horizontal: bool,
}

/// Trace the zero set of `cond` inside `window` (lambda horizontal, mu
/// vertical). Returns one polyline per connected contour piece.
pub fn trace_level_set(
    cond: LevelSetCondition,
    window: &Window,
    cfg: &ScanConfig,
) -> Result<CurveSet, SolverError> {
    cfg.validate()?;
    if let LevelSetCondition::WAtX(x) = cond {
        let r = x.round();
        if r >= -0.5 && (x - r).abs() <= cfg.eps_int {
            return Err(SolverError::InvalidConfig(format!(
                "x = {x} is within eps_int of a non-negative integer; \
                 use the integer-x conditions instead"
            )));
        }
    }

    // Grid resolution: longer axis gets cfg.trace_cells cells, the other is
    // scaled by aspect ratio.
    let (w, h) = (window.width(), window.height());
    let (nx, ny) = if w >= h {
        let nx = cfg.trace_cells;
        (nx, ((nx as f64 * h / w).round() as usize).clamp(8, 600))
    } else {
        let ny = cfg.trace_cells;
        (((ny as f64 * w / h).round() as usize).clamp(8, 600), ny)
    };
    let dx = w / nx as f64;
    let dy = h / ny as f64;
    let xs: Vec<f64> = (0..=nx).map(|i| window.x_lo + i as f64 * dx).collect();
    let ys: Vec<f64> = (0..=ny).map(|j| window.y_lo + j as f64 * dy).collect();

    let rows: Vec<Vec<Option<f64>>> = ys
        .par_iter()
        .map(|&mu| xs.iter().map(|&l| cond.eval(l, mu)).collect())
        .collect();
    let value = |i: usize, j: usize| -> Option<f64> { rows[j][i] };

    // Marching squares. For each cell collect zero crossings on its four
    // edges keyed by global edge id, then connect them into segments.
    let mut segs: Vec<(EdgeId, EdgeId)> = Vec::new();
    let mut crossing_pos: HashMap<EdgeId, [f64; 2]> = HashMap::new();
    let mut masked = 0usize;
    let interp = |a: f64, b: f64| -> f64 {
        // Position of the zero on [0, 1] between values a, b of opposite sign.
        let t = a / (a - b);
        t.clamp(0.0, 1.0)
    };
    for j in 0..ny {
        for i in 0..nx {
            let corners = [
                value(i, j),
                value(i + 1, j),
                value(i + 1, j + 1),
                value(i, j + 1),
            ];
            if corners.iter().any(|c| c.is_none()) {
                masked += 1;
                continue;
            }
            let v = [
                corners[0].unwrap(),
                corners[1].unwrap(),
                corners[2].unwrap(),
                corners[3].unwrap(),
            ];
            // Edges in cell order: bottom, right, top, left.
            let edges = [
                (EdgeId { i, j, horizontal: true }, v[0], v[1]),
                (EdgeId { i: i + 1, j, horizontal: false }, v[1], v[2]),
                (EdgeId { i, j: j + 1, horizontal: true }, v[3], v[2]),
                (EdgeId { i, j, horizontal: false }, v[0], v[3]),
            ];
            let mut hits: Vec<EdgeId> = Vec::with_capacity(4);
            for (id, a, b) in edges {
                if (a > 0.0) != (b > 0.0) {
                    let t = interp(a, b);
                    let pos = match (id.horizontal, id.i == i) {
                        (true, _) => [xs[id.i] + t * dx, ys[id.j]],
                        (false, true) => [xs[id.i], ys[id.j] + t * dy],
                        (false, false) => [xs[id.i], ys[id.j] + t * dy],
                    };
                    crossing_pos.insert(id, pos);
                    hits.push(id);
                }
            }
            match hits.len() {
                0 => {}
                2 => segs.push((hits[0], hits[1])),
                4 => {
                    // Saddle cell: resolve pairing by the sign at the center.
                    let center = cond.eval(
                        xs[i] + 0.5 * dx,
                        ys[j] + 0.5 * dy,
                    );
                    let Some(c) = center else {
                        masked += 1;
                        continue;
                    };
                    // hits order follows edges: bottom, right, top, left.
                    // v[0] is the bottom-left corner; if the center agrees
                    // with it, the contour separates the two opposite
                    // corners from each other: bottom+left pair and
                    // right+top pair (and conversely).
                    if (c > 0.0) == (v[0] > 0.0) {
                        segs.push((hits[0], hits[3]));
                        segs.push((hits[1], hits[2]));
                    } else {
                        segs.push((hits[0], hits[1]));
                        segs.push((hits[2], hits[3]));
                    }
                }
                _ => {
                    // 1 or 3 crossings can only come from exact zeros on
                    // corners; treat as masked rather than guess.
                    masked += 1;
                }
            }
        }
    }

    let chains = chain_segments(&segs);
    let correct = |p: [f64; 2]| newton_orthogonal(&cond, p, dx, dy);
    let mut curves: Vec<Polyline> = chains
        .into_iter()
        .enumerate()
        .map(|(k, chain)| {
            let points: Vec<[f64; 2]> = chain
                .iter()
                .map(|id| {
                    let p = crossing_pos[id];
                    correct(p)
                })
                .collect();
            Polyline {
                label: format!("{} [{k}]", cond.label()),
                role: CurveRole::Spectrum,
                points,
            }
        })
        .filter(|c| c.points.len() >= 2)
        .collect();
    curves.sort_by(|a, b| {
        a.points[0][0]
            .total_cmp(&b.points[0][0])
            .then(a.points[0][1].total_cmp(&b.points[0][1]))
    });
    for (k, c) in curves.iter_mut().enumerate() {
        c.label = format!("{} [{k}]", cond.label());
    }

    let mut warnings = Vec::new();
    if masked > 0 {
        warnings.push(format!("{masked} grid cells masked (condition unevaluable)"));
    }
    Ok(CurveSet {
        plane: PlaneKind::LambdaMu,
        label: cond.label(),
        mu: None,
        curves,
        markers: Vec::new(),
        warnings,
    })
}

/// Connect edge-to-edge segments into maximal chains (open or closed).
fn chain_segments(segs: &[(EdgeId, EdgeId)]) -> Vec<Vec<EdgeId>> {
    let mut adj: HashMap<EdgeId, Vec<(usize, EdgeId)>> = HashMap::new();
    for (si, &(a, b)) in segs.iter().enumerate() {
        adj.entry(a).or_default().push((si, b));
        adj.entry(b).or_default().push((si, a));
    }
    let mut used = vec![false; segs.len()];
    let mut chains = Vec::new();
    // Deterministic iteration: walk segments in index order, extending each
    // unused one in both directions.
    for start in 0..segs.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segs[start];
        let mut chain = vec![a, b];
        // Extend forward from the back, then backward from the front.
        for dir in 0..2 {
            loop {
                let tip = if dir == 0 { *chain.last().unwrap() } else { chain[0] };
                let next = adj
                    .get(&tip)
                    .and_then(|v| v.iter().find(|(si, _)| !used[*si]).copied());
                let Some((si, other)) = next else { break };
                used[si] = true;
                if dir == 0 {
                    chain.push(other);
                } else {
                    chain.insert(0, other);
                }
            }
        }
        // Closed loop: the two tips meet through one more unused segment? No
        // — tips were exhausted; a loop shows up as identical first/last
        // neighborhoods. Re-append the first vertex when the tips are joined
        // by a segment already consumed at the start.
        if chain.len() > 2 {
            let (first, last) = (chain[0], *chain.last().unwrap());
            let joined = segs
                .iter()
                .any(|&(a, b)| (a == first && b == last) || (a == last && b == first));
            if joined && (first != last) {
                chain.push(first);
            }
        }
        chains.push(chain);
    }
    chains
}

/// One Newton step orthogonal to the contour using central finite
/// differences. The step is clamped to half the cell diagonal; if either
/// probe fails to evaluate, the vertex is left where the interpolation put
/// it.
fn newton_orthogonal(cond: &LevelSetCondition, p: [f64; 2], dx: f64, dy: f64) -> [f64; 2] {
    let hx = dx / 8.0;
    let hy = dy / 8.0;
    let Some(g0) = cond.eval(p[0], p[1]) else { return p };
    let (Some(gxp), Some(gxm)) = (cond.eval(p[0] + hx, p[1]), cond.eval(p[0] - hx, p[1])) else {
        return p;
    };
    let (Some(gyp), Some(gym)) = (cond.eval(p[0], p[1] + hy), cond.eval(p[0], p[1] - hy)) else {
        return p;
    };
    let gx = (gxp - gxm) / (2.0 * hx);
    let gy = (gyp - gym) / (2.0 * hy);
    let norm2 = gx * gx + gy * gy;
    if norm2 == 0.0 || !norm2.is_finite() {
        return p;
    }
    let mut sx = -g0 * gx / norm2;
    let mut sy = -g0 * gy / norm2;
    let max_step = 0.5 * (dx * dx + dy * dy).sqrt();
    let len = (sx * sx + sy * sy).sqrt();
    if len > max_step {
        sx *= max_step / len;
        sy *= max_step / len;
    }
    let q = [p[0] + sx, p[1] + sy];
    // Keep the correction only if it actually reduced the residual.
    match cond.eval(q[0], q[1]) {
        Some(g1) if g1.abs() < g0.abs() => q,
        _ => p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn degree_one_truncation_locus_is_the_quarter_ellipse() {
        // 4 lambda^2 + mu^2 = 1 inside the positive quadrant.
        let w = Window::new(0.01, 0.6, 0.01, 1.1).unwrap();
        let set = trace_level_set(LevelSetCondition::Judd(1), &w, &cfg()).unwrap();
        let spectral: Vec<&Polyline> = set.spectrum_curves().collect();
        assert_eq!(spectral.len(), 1, "one connected arc");
        let c = spectral[0];
        assert!(c.points.len() > 50);
        for p in &c.points {
            let r = 4.0 * p[0] * p[0] + p[1] * p[1] - 1.0;
            assert!(r.abs() < 2e-3, "ellipse residual {r} at {p:?}");
        }
    }

    #[test]
    fn degree_two_truncation_locus_has_two_branches() {
        let w = Window::new(0.01, 1.1, 0.01, 2.2).unwrap();
        let set = trace_level_set(LevelSetCondition::Judd(2), &w, &cfg()).unwrap();
        assert_eq!(set.spectrum_curves().count(), 2);
    }

    #[test]
    fn curves_stay_inside_the_window() {
        let w = Window::new(0.01, 0.6, 0.01, 1.1).unwrap();
        let set = trace_level_set(LevelSetCondition::Judd(1), &w, &cfg()).unwrap();
        let slack = 0.05;
        for c in set.spectrum_curves() {
            for p in &c.points {
                assert!(p[0] >= w.x_lo - slack && p[0] <= w.x_hi + slack);
                assert!(p[1] >= w.y_lo - slack && p[1] <= w.y_hi + slack);
            }
        }
    }

    #[test]
    fn lambda_zero_edge_is_masked_for_series_conditions() {
        let w = Window::new(0.0, 0.4, 0.5, 1.5).unwrap();
        let set = trace_level_set(LevelSetCondition::F(1), &w, &cfg()).unwrap();
        assert!(
            set.warnings.iter().any(|m| m.contains("masked")),
            "warnings: {:?}",
            set.warnings
        );
    }

    #[test]
    fn wronskian_rejects_near_integer_x() {
        let w = Window::new(0.1, 0.5, 0.1, 0.5).unwrap();
        assert!(matches!(
            trace_level_set(LevelSetCondition::WAtX(3.0), &w, &cfg()),
            Err(SolverError::InvalidConfig(_))
        ));
        // Negative x is fine: no blocking there.
        assert!(trace_level_set(LevelSetCondition::WAtX(-1.0), &w, &cfg()).is_ok());
    }

    #[test]
    fn non_degenerate_condition_crosses_near_the_decoupled_limit() {
        // As lambda -> 0 the F_1 zero approaches integer spacing in mu near
        // mu = 2 (x = 1, E = 1 meets E = m - mu branches).
        let w = Window::new(0.02, 0.3, 1.5, 2.5).unwrap();
        let set = trace_level_set(LevelSetCondition::F(1), &w, &cfg()).unwrap();
        let spectral: Vec<&Polyline> = set.spectrum_curves().collect();
        assert!(!spectral.is_empty());
        let near_axis: Vec<&[f64; 2]> = spectral
            .iter()
            .flat_map(|c| c.points.iter())
            .filter(|p| p[0] < 0.05)
            .collect();
        assert!(!near_axis.is_empty(), "curve reaches small lambda");
        for p in near_axis {
            assert!((p[1] - 2.0).abs() < 0.2, "mu near 2, got {}", p[1]);
        }
    }
}
