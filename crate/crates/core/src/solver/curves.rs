//! Spectral curves E(lambda) at fixed mu, assembled from per-lambda scans.
//!
//! Each lambda column is scanned independently (in parallel), then levels are
//! chained column-to-column by matching against a linear prediction of each
//! open curve. A degeneracy-2 level feeds two curve slots, which is what lets
//! two curves pass through a doublet crossing. Baselines E = n - lambda^2 and
//! the located integer-x points (doublet circles, non-degenerate squares) are
//! emitted alongside.

use rayon::prelude::*;

use crate::conditions::{judd_condition, new_state_condition_f, SpectralClass};

use super::root::refine_bracket;
use super::scan::scan_spectrum;
use super::{
    CurveRole, CurveSet, Marker, PlaneKind, Polyline, Refiner, ScanConfig, SolverError,
};

/// Floor on the chaining match tolerance in E.
const MATCH_FLOOR: f64 = 0.03;

/// A spectral condition restricted to one coupling axis.
type CondFn = Box<dyn Fn(f64) -> Result<f64, SolverError>>;

/// Spectral curves in the (lambda, E) plane for lambda in `lambda_range`,
/// energies in `e_range`, at fixed `mu`.
pub fn energy_curves(
    mu: f64,
    lambda_range: (f64, f64),
    e_range: (f64, f64),
    cfg: &ScanConfig,
) -> Result<CurveSet, SolverError> {
    cfg.validate()?;
    let (l_lo, l_hi) = lambda_range;
    let (e_lo, e_hi) = e_range;
    if !l_lo.is_finite() || !l_hi.is_finite() || l_lo >= l_hi || l_hi <= 0.0 {
        return Err(SolverError::InvalidRange { lo: l_lo, hi: l_hi });
    }
    if !e_lo.is_finite() || !e_hi.is_finite() || e_lo >= e_hi {
        return Err(SolverError::InvalidRange { lo: e_lo, hi: e_hi });
    }
    // Couplings are even in lambda; negative starts clamp to the axis.
    let start = l_lo.max(0.0);
    let steps = ((l_hi - start) / cfg.curve_step).ceil().max(1.0) as usize;
    let lams: Vec<f64> = (0..=steps)
        .map(|i| start + (l_hi - start) * i as f64 / steps as f64)
        .collect();

    let pad = 2.0 * cfg.grid_step;
    let columns: Vec<Result<_, SolverError>> = lams
        .par_iter()
        .map(|&l| {
            let l2 = l * l;
            scan_spectrum(l, mu, e_lo + l2 - pad, e_hi + l2 + pad, cfg)
        })
        .collect();

    let mut warnings = Vec::new();
    let mut cols: Vec<(f64, Vec<(f64, u8)>)> = Vec::with_capacity(columns.len());
    for (l, res) in lams.iter().zip(columns) {
        let out = res?;
        for w in out.warnings {
            warnings.push(format!("lambda = {l:.4}: {w}"));
        }
        let levels: Vec<(f64, u8)> = out
            .points
            .iter()
            .map(|p| (p.energy(), p.kind.degeneracy))
            .collect();
        cols.push((*l, levels));
    }

    let chains = chain_columns(&cols, cfg, &mut warnings);
    let mut curves: Vec<Polyline> = chains
        .into_iter()
        .filter(|c| c.len() >= 2)
        .filter(|c| c.iter().any(|p| p[1] >= e_lo && p[1] <= e_hi))
        .enumerate()
        .map(|(k, points)| Polyline {
            label: format!("level {k}"),
            role: CurveRole::Spectrum,
            points,
        })
        .collect();

    curves.extend(baselines(&lams, e_lo, e_hi, cfg.half_integer_baselines));
    let markers = integer_markers(mu, &lams, e_lo, e_hi, cfg, &mut warnings)?;

    Ok(CurveSet {
        plane: PlaneKind::LambdaE,
        label: format!("spectrum at mu = {mu}"),
        mu: Some(mu),
        curves,
        markers,
        warnings,
    })
}

struct Chain {
    pts: Vec<[f64; 2]>,
}

impl Chain {
    fn predict(&self, lambda: f64) -> (f64, f64) {
        let n = self.pts.len();
        let last = self.pts[n - 1];
        if n < 2 {
            return (last[1], 0.0);
        }
        let prev = self.pts[n - 2];
        let slope = (last[1] - prev[1]) / (last[0] - prev[0]);
        (last[1] + slope * (lambda - last[0]), slope)
    }
}

/// Greedy nearest-prediction chaining; a level with degeneracy d can absorb
/// d curve continuations.
fn chain_columns(
    cols: &[(f64, Vec<(f64, u8)>)],
    cfg: &ScanConfig,
    warnings: &mut Vec<String>,
) -> Vec<Vec<[f64; 2]>> {
    let mut open: Vec<Chain> = Vec::new();
    let mut closed: Vec<Vec<[f64; 2]>> = Vec::new();
    for (lambda, levels) in cols {
        let mut capacity: Vec<u8> = levels.iter().map(|l| l.1).collect();
        let mut tols = Vec::with_capacity(open.len());
        let mut cands: Vec<(f64, usize, usize)> = Vec::new();
        for (ci, ch) in open.iter().enumerate() {
            let dl = lambda - ch.pts.last().unwrap()[0];
            let (pred, slope) = ch.predict(*lambda);
            let tol = MATCH_FLOOR.max(4.0 * slope.abs() * dl).max(8.0 * cfg.curve_step);
            tols.push((pred, tol));
            for (li, &(e, _)) in levels.iter().enumerate() {
                let d = (e - pred).abs();
                if d <= tol {
                    cands.push((d, ci, li));
                }
            }
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut taken = vec![false; open.len()];
        for (_, ci, li) in cands {
            if taken[ci] || capacity[li] == 0 {
                continue;
            }
            taken[ci] = true;
            capacity[li] -= 1;
            open[ci].pts.push([*lambda, levels[li].0]);
        }
        let mut still_open = Vec::new();
        for (ci, ch) in open.drain(..).enumerate() {
            if taken[ci] {
                still_open.push(ch);
                continue;
            }
            // Chain ends here. If a level sat just beyond tolerance, the
            // curve was split rather than guessed across the jump.
            let (pred, tol) = tols[ci];
            let nearest = levels
                .iter()
                .map(|&(e, _)| (e - pred).abs())
                .fold(f64::INFINITY, f64::min);
            if nearest.is_finite() && nearest > tol && nearest <= 10.0 * tol {
                warnings.push(format!(
                    "chain break at lambda = {lambda:.4}: nearest level {nearest:.3e} beyond tolerance {tol:.3e}"
                ));
            }
            if ch.pts.len() >= 2 {
                closed.push(ch.pts);
            }
        }
        open = still_open;
        for (li, &cap) in capacity.iter().enumerate() {
            for _ in 0..cap {
                open.push(Chain {
                    pts: vec![[*lambda, levels[li].0]],
                });
            }
        }
    }
    closed.extend(open.into_iter().filter(|c| c.pts.len() >= 2).map(|c| c.pts));
    // Deterministic order: by first point.
    closed.sort_by(|a, b| {
        a[0][0]
            .total_cmp(&b[0][0])
            .then(a[0][1].total_cmp(&b[0][1]))
    });
    closed
}

/// Baselines E = n - lambda^2 (and optionally half-integer n) clipped to the
/// energy window.
fn baselines(lams: &[f64], e_lo: f64, e_hi: f64, halves: bool) -> Vec<Polyline> {
    let l_hi = lams.last().copied().unwrap_or(0.0);
    let mut out = Vec::new();
    let mut offsets = vec![0.0];
    if halves {
        offsets.push(0.5);
    }
    for offset in offsets {
        let role = if offset == 0.0 {
            CurveRole::Baseline
        } else {
            CurveRole::HalfBaseline
        };
        let n_lo = (e_lo - offset).ceil().max(0.0) as i64;
        let n_hi = (e_hi + l_hi * l_hi - offset).floor() as i64;
        for n in n_lo..=n_hi {
            let nv = n as f64 + offset;
            let points: Vec<[f64; 2]> = lams
                .iter()
                .map(|&l| [l, nv - l * l])
                .filter(|p| p[1] >= e_lo && p[1] <= e_hi)
                .collect();
            if points.len() >= 2 {
                let label = if offset == 0.0 {
                    format!("baseline {n}")
                } else {
                    format!("baseline {n}+1/2")
                };
                out.push(Polyline {
                    label,
                    role,
                    points,
                });
            }
        }
    }
    out
}

/// Integer-x points along the sweep: the lambda values where the truncation
/// condition (degeneracy 2) or F_n (degeneracy 1) vanishes at this mu.
fn integer_markers(
    mu: f64,
    lams: &[f64],
    e_lo: f64,
    e_hi: f64,
    cfg: &ScanConfig,
    warnings: &mut Vec<String>,
) -> Result<Vec<Marker>, SolverError> {
    if mu == 0.0 {
        // Decoupled limit: every baseline is spectrum; point markers carry
        // no information.
        return Ok(Vec::new());
    }
    let l_hi = lams.last().copied().unwrap_or(0.0);
    let l_lo = lams
        .iter()
        .copied()
        .find(|&l| l > 0.0)
        .unwrap_or(cfg.curve_step)
        .max(cfg.curve_step);
    if l_hi <= l_lo {
        return Ok(Vec::new());
    }
    let n_lo = e_lo.ceil().max(0.0) as i64;
    let n_hi = (e_hi + l_hi * l_hi).floor() as i64;
    let mut markers: Vec<Marker> = Vec::new();
    let steps = ((l_hi - l_lo) / cfg.curve_step).ceil().max(8.0) as usize;
    for n in n_lo..=n_hi {
        let n = n as u32;
        let conds: [(&str, CondFn, SpectralClass, u8); 2] = [
            (
                "doublet",
                Box::new(move |l: f64| Ok(judd_condition(n, l, mu).normalized())),
                SpectralClass::Judd,
                2,
            ),
            (
                "non-degenerate",
                Box::new(move |l: f64| {
                    Ok(new_state_condition_f(n, l, mu)?.normalized())
                }),
                SpectralClass::NewInteger,
                1,
            ),
        ];
        for (name, cond, class, deg) in conds {
            let mut f = |l: f64| cond(l);
            let mut prev_l = l_lo;
            let mut prev_v = match f(prev_l) {
                Ok(v) => v,
                Err(e) => {
                    warnings.push(format!("{name} marker scan at n = {n} skipped: {e}"));
                    continue;
                }
            };
            for i in 1..=steps {
                let l = l_lo + (l_hi - l_lo) * i as f64 / steps as f64;
                let v = f(l)?;
                if prev_v != 0.0 && v != 0.0 && v.signum() != prev_v.signum() {
                    let (root, _) =
                        refine_bracket(&mut f, prev_l, l, prev_v, v, Refiner::Bisection)?;
                    let e = n as f64 - root * root;
                    if e >= e_lo && e <= e_hi {
                        markers.push(Marker {
                            pos: [root, e],
                            kind: class,
                            degeneracy: deg,
                            n,
                        });
                    }
                } else if v == 0.0 {
                    let e = n as f64 - l * l;
                    if e >= e_lo && e <= e_hi {
                        markers.push(Marker {
                            pos: [l, e],
                            kind: class,
                            degeneracy: deg,
                            n,
                        });
                    }
                }
                prev_l = l;
                prev_v = v;
            }
        }
    }
    markers.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then(a.pos[0].total_cmp(&b.pos[0]))
            .then(a.degeneracy.cmp(&b.degeneracy))
    });
    markers.dedup_by(|a, b| a.n == b.n && a.kind == b.kind && (a.pos[0] - b.pos[0]).abs() < 1e-9);
    Ok(markers)
}
