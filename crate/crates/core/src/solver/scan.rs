//! Spectrum at one coupling pair: bracketed Wronskian roots on the
//! non-integer part of the x range, membership tests at every integer x, and
//! exact analytic branches for the decoupled limits lambda = 0 and mu = 0.

use crate::conditions::{
    self, judd_condition, new_state_condition_f, wronskian_condition, SpectralClass, SpectralKind,
};
use crate::oracle;
use crate::rabi::RabiPoint;

use super::root::refine_bracket;
use super::{ScanConfig, SolverError};

/// One located element of the spectrum.
#[derive(Debug, Clone)]
pub struct SpectralPoint {
    pub pt: RabiPoint,
    pub kind: SpectralKind,
    /// Normalized magnitude of the defining condition at the located point.
    pub condition_residual: f64,
    /// Distance to the nearest oracle eigenvalue, once attached.
    pub oracle_delta: Option<f64>,
}

impl SpectralPoint {
    pub fn energy(&self) -> f64 {
        self.pt.energy()
    }
}

/// Scan result: points sorted by x, plus any warnings raised along the way.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub lambda: f64,
    pub mu: f64,
    pub points: Vec<SpectralPoint>,
    pub warnings: Vec<String>,
}

/// All admissible spectral-parameter values in [x_lo, x_hi] at (lambda, mu).
///
/// lambda = 0 and mu = 0 are served by exact analytic branches. Otherwise
/// the Wronskian condition is scanned for sign changes outside the integer
/// exclusion zones, each bracket is refined, and every integer n in range is
/// tested against the truncation and F conditions.
pub fn scan_spectrum(
    lambda: f64,
    mu: f64,
    x_lo: f64,
    x_hi: f64,
    cfg: &ScanConfig,
) -> Result<ScanOutcome, SolverError> {
    cfg.validate()?;
    if !x_lo.is_finite() || !x_hi.is_finite() || x_lo >= x_hi {
        return Err(SolverError::InvalidRange { lo: x_lo, hi: x_hi });
    }
    if lambda == 0.0 {
        return Ok(analytic_lambda_zero(mu, x_lo, x_hi));
    }
    if mu == 0.0 {
        return Ok(analytic_mu_zero(lambda, x_lo, x_hi));
    }

    let mut warnings = Vec::new();
    let mut points = integer_members(lambda, mu, x_lo, x_hi, &mut warnings);

    let mut wf = |x: f64| -> Result<f64, SolverError> {
        Ok(wronskian_condition(&RabiPoint::new(x, lambda, mu))?.normalized())
    };
    for (lo, hi) in wronskian_segments(x_lo, x_hi, cfg.zone_radius()) {
        for (x, fx) in stable_roots(&mut wf, lo, hi, cfg, &mut warnings)? {
            if fx.abs() > cfg.root_tol {
                warnings.push(format!(
                    "dropping root candidate x = {x:.12} with residual {:.3e} above tolerance",
                    fx.abs()
                ));
                continue;
            }
            points.push(SpectralPoint {
                pt: RabiPoint::new(x, lambda, mu),
                kind: SpectralKind {
                    kind: SpectralClass::GenericWronskian,
                    degeneracy: 1,
                },
                condition_residual: fx.abs(),
                oracle_delta: None,
            });
        }
    }

    points.sort_by(|a, b| a.pt.x.total_cmp(&b.pt.x));
    if points.len() > cfg.max_roots {
        return Err(SolverError::TooManyRoots { max: cfg.max_roots });
    }
    Ok(ScanOutcome {
        lambda,
        mu,
        points,
        warnings,
    })
}

fn analytic_point(x: f64, lambda: f64, mu: f64, degeneracy: u8) -> SpectralPoint {
    SpectralPoint {
        pt: RabiPoint::new(x, lambda, mu),
        kind: SpectralKind {
            kind: SpectralClass::Analytic,
            degeneracy,
        },
        condition_residual: 0.0,
        oracle_delta: None,
    }
}

/// lambda = 0: the system decouples into z^(E-mu) and z^(E+mu) monomial
/// solutions, entire exactly when the exponent is a non-negative integer, so
/// E = m -+ mu. Coincidences (2 mu integer) merge into degeneracy 2.
fn analytic_lambda_zero(mu: f64, x_lo: f64, x_hi: f64) -> ScanOutcome {
    let am = mu.abs();
    let mut vals: Vec<f64> = Vec::new();
    let m_hi = (x_hi + am).floor().max(0.0) as i64;
    for m in 0..=m_hi {
        for s in [-1.0, 1.0] {
            let v = m as f64 + s * am;
            if v >= x_lo && v <= x_hi {
                vals.push(v);
            }
            if am == 0.0 {
                break; // m + 0 and m - 0 coincide; count via degeneracy below
            }
        }
    }
    vals.sort_by(f64::total_cmp);
    let mut points = Vec::new();
    let mut i = 0;
    while i < vals.len() {
        let mut deg = 1u8;
        // mu = 0 levels and exact 2mu-integer coincidences are doubly
        // degenerate (the two parity towers meet).
        if am == 0.0 {
            deg = 2;
        } else if i + 1 < vals.len() && (vals[i + 1] - vals[i]).abs() <= 1e-12 * (1.0 + vals[i].abs())
        {
            deg = 2;
            i += 1;
        }
        points.push(analytic_point(vals[i], 0.0, mu, deg));
        i += 1;
    }
    ScanOutcome {
        lambda: 0.0,
        mu,
        points,
        warnings: Vec::new(),
    }
}

/// mu = 0: displaced oscillator, E = n - lambda^2 (x = n), each level shared
/// by both parity sectors.
fn analytic_mu_zero(lambda: f64, x_lo: f64, x_hi: f64) -> ScanOutcome {
    let mut points = Vec::new();
    let lo = x_lo.ceil().max(0.0) as i64;
    let hi = x_hi.floor() as i64;
    for n in lo..=hi {
        points.push(analytic_point(n as f64, lambda, 0.0, 2));
    }
    ScanOutcome {
        lambda,
        mu: 0.0,
        points,
        warnings: Vec::new(),
    }
}

/// Integer-x membership: x = n belongs to the spectrum when either the
/// truncation condition (doubly degenerate) or F_n (non-degenerate) vanishes.
fn integer_members(
    lambda: f64,
    mu: f64,
    x_lo: f64,
    x_hi: f64,
    warnings: &mut Vec<String>,
) -> Vec<SpectralPoint> {
    let mut out = Vec::new();
    let lo = x_lo.ceil().max(0.0) as i64;
    let hi = x_hi.floor() as i64;
    for n in lo..=hi {
        let n = n as u32;
        let judd = judd_condition(n, lambda, mu);
        if judd.normalized().abs() <= conditions::MEMBERSHIP_TOL {
            out.push(SpectralPoint {
                pt: RabiPoint::new(n as f64, lambda, mu),
                kind: SpectralKind {
                    kind: SpectralClass::Judd,
                    degeneracy: 2,
                },
                condition_residual: judd.normalized().abs(),
                oracle_delta: None,
            });
            continue;
        }
        match new_state_condition_f(n, lambda, mu) {
            Ok(f) if f.normalized().abs() <= conditions::MEMBERSHIP_TOL => {
                out.push(SpectralPoint {
                    pt: RabiPoint::new(n as f64, lambda, mu),
                    kind: SpectralKind {
                        kind: SpectralClass::NewInteger,
                        degeneracy: 1,
                    },
                    condition_residual: f.normalized().abs(),
                    oracle_delta: None,
                });
            }
            Ok(_) => {}
            Err(e) => warnings.push(format!("integer test at x = {n} skipped: {e}")),
        }
    }
    out
}

/// Subintervals of [x_lo, x_hi] clear of every non-negative-integer exclusion
/// zone.
fn wronskian_segments(x_lo: f64, x_hi: f64, zone: f64) -> Vec<(f64, f64)> {
    let mut segs = Vec::new();
    let mut cursor = x_lo;
    let first = (x_lo - zone).ceil().max(0.0) as i64;
    let last = (x_hi + zone).floor() as i64;
    for n in first..=last {
        let (a, b) = (n as f64 - zone, n as f64 + zone);
        if b <= x_lo || a >= x_hi {
            continue;
        }
        if a - cursor > 1e-9 {
            segs.push((cursor, a));
        }
        cursor = cursor.max(b);
    }
    if x_hi - cursor > 1e-9 {
        segs.push((cursor, x_hi));
    }
    segs
}

/// Sign-change roots on one segment at a given step. A strict local minimum
/// of |f| with uniform sign across three nodes may hide a close pair of
/// roots inside the surrounding two cells (typical near an avoided
/// crossing); those dips get a dedicated bounded search.
fn roots_at_step<F>(
    f: &mut F,
    lo: f64,
    hi: f64,
    step: f64,
    cfg: &ScanConfig,
) -> Result<Vec<(f64, f64)>, SolverError>
where
    F: FnMut(f64) -> Result<f64, SolverError>,
{
    let cells = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut xs = Vec::with_capacity(cells + 1);
    let mut fs = Vec::with_capacity(cells + 1);
    for i in 0..=cells {
        let x = lo + (hi - lo) * i as f64 / cells as f64;
        xs.push(x);
        fs.push(f(x)?);
    }
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for i in 0..=cells {
        if fs[i] == 0.0 {
            roots.push((xs[i], 0.0));
        } else if i > 0 && fs[i - 1] != 0.0 && fs[i].signum() != fs[i - 1].signum() {
            let (r, fr) = refine_bracket(f, xs[i - 1], xs[i], fs[i - 1], fs[i], cfg.bracket_refiner)?;
            roots.push((r, fr));
        }
    }
    for i in 1..cells {
        let (a, b, c) = (fs[i - 1], fs[i], fs[i + 1]);
        if a == 0.0 || b == 0.0 || c == 0.0 {
            continue;
        }
        if a.signum() != b.signum() || b.signum() != c.signum() {
            continue;
        }
        if b.abs() < a.abs() && b.abs() < c.abs() {
            if let Some(pair) = split_dip(f, (xs[i - 1], a), (xs[i + 1], c), cfg)? {
                roots.push(pair.0);
                roots.push(pair.1);
            }
        }
    }
    roots.sort_by(|p, q| p.0.total_cmp(&q.0));
    roots.dedup_by(|a, b| (a.0 - b.0).abs() <= 2e-12 * (1.0 + a.0.abs()));
    Ok(roots)
}

/// Minimizes |f| inside (lo, hi) by golden-section steps; if the minimum
/// crosses zero, the dip holds two roots, which are bracketed and refined
/// separately. Returns None when the minimum keeps the endpoints' sign.
#[allow(clippy::type_complexity)]
fn split_dip<F>(
    f: &mut F,
    (lo, flo): (f64, f64),
    (hi, fhi): (f64, f64),
    cfg: &ScanConfig,
) -> Result<Option<((f64, f64), (f64, f64))>, SolverError>
where
    F: FnMut(f64) -> Result<f64, SolverError>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let sign = flo.signum();
    let two_brackets = |f: &mut F, xm: f64, fm: f64| {
        let r1 = refine_bracket(f, lo, xm, flo, fm, cfg.bracket_refiner)?;
        let r2 = refine_bracket(f, xm, hi, fm, fhi, cfg.bracket_refiner)?;
        Ok(Some((r1, r2)))
    };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..80 {
        if fc == 0.0 || fc.signum() != sign {
            return two_brackets(f, c, fc);
        }
        if fd == 0.0 || fd.signum() != sign {
            return two_brackets(f, d, fd);
        }
        if fc.abs() < fd.abs() {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        if b - a < 1e-13 * (1.0 + a.abs()) {
            break;
        }
    }
    Ok(None)
}

/// Roots on a segment, re-scanned at half the step until the count settles
/// (up to 4 halvings), per the grid-refinement convergence rule.
fn stable_roots<F>(
    f: &mut F,
    lo: f64,
    hi: f64,
    cfg: &ScanConfig,
    warnings: &mut Vec<String>,
) -> Result<Vec<(f64, f64)>, SolverError>
where
    F: FnMut(f64) -> Result<f64, SolverError>,
{
    // At least 8 cells even on short segments.
    let mut step = cfg.grid_step.min((hi - lo) / 8.0).max(1e-9);
    let mut current = roots_at_step(f, lo, hi, step, cfg)?;
    for _ in 0..4 {
        let finer = roots_at_step(f, lo, hi, step / 2.0, cfg)?;
        if finer.len() == current.len() {
            return Ok(finer);
        }
        warnings.push(format!(
            "grid too coarse on [{lo:.6}, {hi:.6}]: {} -> {} roots at step {:.3e}; rescanned",
            current.len(),
            finer.len(),
            step / 2.0
        ));
        step /= 2.0;
        current = finer;
    }
    warnings.push(format!(
        "root count on [{lo:.6}, {hi:.6}] still unstable after 4 halvings"
    ));
    Ok(current)
}

/// Fills `oracle_delta` on every point from a converged truncated-basis
/// diagonalization covering the scanned energy range.
pub fn attach_oracle(outcome: &mut ScanOutcome) -> Result<(), SolverError> {
    if outcome.points.is_empty() {
        return Ok(());
    }
    let e_max = outcome
        .points
        .iter()
        .map(|p| p.energy())
        .fold(f64::NEG_INFINITY, f64::max);
    let sp = oracle_covering(outcome.lambda, outcome.mu, e_max)?;
    for p in &mut outcome.points {
        let e = p.energy();
        let d = sp
            .levels
            .iter()
            .map(|l| (l.0 - e).abs())
            .fold(f64::INFINITY, f64::min);
        p.oracle_delta = Some(d);
    }
    Ok(())
}

/// Converged oracle spectrum whose top level clears `e_max`.
fn oracle_covering(lambda: f64, mu: f64, e_max: f64) -> Result<oracle::OracleSpectrum, SolverError> {
    let mut count = 16usize;
    loop {
        let sp = oracle::eigenvalues_converged(lambda, mu, count)?;
        let top = sp.levels.last().map(|l| l.0).unwrap_or(f64::INFINITY);
        if top > e_max + 0.5 || count >= 4096 {
            return Ok(sp);
        }
        count *= 2;
    }
}

/// Pairing of scanned levels (expanded by degeneracy) against oracle levels
/// inside an energy window.
#[derive(Debug, Clone)]
pub struct MatchReport {
    pub pairs: Vec<(f64, f64)>,
    pub unmatched_scan: Vec<f64>,
    pub unmatched_oracle: Vec<f64>,
    pub max_delta: f64,
}

impl MatchReport {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_scan.is_empty() && self.unmatched_oracle.is_empty()
    }
}

/// Matches the outcome's energies against the oracle spectrum on
/// [e_lo, e_hi]; both sides sorted, paired within `tol` by a two-pointer
/// sweep. Degeneracy-2 points count twice.
pub fn match_with_oracle(
    outcome: &ScanOutcome,
    e_lo: f64,
    e_hi: f64,
    tol: f64,
) -> Result<MatchReport, SolverError> {
    let sp = oracle_covering(outcome.lambda, outcome.mu, e_hi + 1.0)?;
    let oracle_side: Vec<f64> = sp
        .levels
        .iter()
        .map(|l| l.0)
        .filter(|e| *e >= e_lo && *e <= e_hi)
        .collect();
    let mut scan_side: Vec<f64> = Vec::new();
    for p in &outcome.points {
        let e = p.energy();
        if e >= e_lo && e <= e_hi {
            for _ in 0..p.kind.degeneracy {
                scan_side.push(e);
            }
        }
    }
    scan_side.sort_by(f64::total_cmp);

    let mut pairs = Vec::new();
    let mut unmatched_scan = Vec::new();
    let mut unmatched_oracle = Vec::new();
    let mut max_delta = 0.0f64;
    let (mut i, mut j) = (0, 0);
    while i < scan_side.len() && j < oracle_side.len() {
        let (a, b) = (scan_side[i], oracle_side[j]);
        if (a - b).abs() <= tol {
            max_delta = max_delta.max((a - b).abs());
            pairs.push((a, b));
            i += 1;
            j += 1;
        } else if a < b {
            unmatched_scan.push(a);
            i += 1;
        } else {
            unmatched_oracle.push(b);
            j += 1;
        }
    }
    unmatched_scan.extend_from_slice(&scan_side[i..]);
    unmatched_oracle.extend_from_slice(&oracle_side[j..]);
    Ok(MatchReport {
        pairs,
        unmatched_scan,
        unmatched_oracle,
        max_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn analytic_branch_lambda_zero_is_exact() {
        let out = scan_spectrum(0.0, 0.6, 0.0, 4.0, &cfg()).unwrap();
        let xs: Vec<f64> = out.points.iter().map(|p| p.pt.x).collect();
        let expected = [0.4, 0.6, 1.4, 1.6, 2.4, 2.6, 3.4, 3.6];
        assert_eq!(xs.len(), expected.len());
        for (a, b) in xs.iter().zip(expected.iter()) {
            // Values are m ± mu by construction; literals only to 1 ulp.
            assert_relative_eq!(a, b, epsilon = 1e-14);
        }
        assert!(out
            .points
            .iter()
            .all(|p| p.kind.kind == SpectralClass::Analytic && p.kind.degeneracy == 1));
    }

    #[test]
    fn analytic_branch_half_integer_mu_merges_towers() {
        // 2 mu = 1: m + 1/2 = (m+1) - 1/2, so interior levels are double.
        let out = scan_spectrum(0.0, 0.5, -1.0, 3.0, &cfg()).unwrap();
        let expected = [(-0.5, 1), (0.5, 2), (1.5, 2), (2.5, 2)];
        assert_eq!(out.points.len(), expected.len());
        for (p, (x, d)) in out.points.iter().zip(expected.iter()) {
            assert_eq!(p.pt.x, *x);
            assert_eq!(p.kind.degeneracy, *d);
        }
    }

    #[test]
    fn analytic_branch_mu_zero_is_the_displaced_oscillator() {
        let out = scan_spectrum(1.0, 0.0, 0.0, 3.0, &cfg()).unwrap();
        let es: Vec<f64> = out.points.iter().map(|p| p.energy()).collect();
        assert_eq!(es, vec![-1.0, 0.0, 1.0, 2.0]);
        assert!(out.points.iter().all(|p| p.kind.degeneracy == 2));
    }

    #[test]
    fn segments_avoid_integer_zones() {
        // Zones around x = 0, 1, 2 split the range into four segments.
        let segs = wronskian_segments(-1.3, 2.5, 1e-5);
        assert_eq!(segs.len(), 4);
        assert_eq!(segs[0].0, -1.3);
        assert_relative_eq!(segs[0].1, -1e-5, max_relative = 1e-9);
        assert_relative_eq!(segs[1].0, 1e-5, max_relative = 1e-9);
        assert_relative_eq!(segs[1].1, 1.0 - 1e-5, max_relative = 1e-9);
        assert_relative_eq!(segs[2].0, 1.0 + 1e-5, max_relative = 1e-9);
        assert_relative_eq!(segs[2].1, 2.0 - 1e-5, max_relative = 1e-9);
        assert_relative_eq!(segs[3].0, 2.0 + 1e-5, max_relative = 1e-9);
        assert_eq!(segs[3].1, 2.5);
        // Negative integers are not excluded.
        let neg = wronskian_segments(-2.5, -0.5, 1e-5);
        assert_eq!(neg, vec![(-2.5, -0.5)]);
    }

    #[test]
    fn scan_finds_clean_roots_at_generic_couplings() {
        let out = scan_spectrum(0.7, 1.0, -0.5, 3.5, &cfg()).unwrap();
        let generic: Vec<&SpectralPoint> = out
            .points
            .iter()
            .filter(|p| p.kind.kind == SpectralClass::GenericWronskian)
            .collect();
        assert!(generic.len() >= 3, "found {}", generic.len());
        for p in &generic {
            assert!(p.condition_residual <= 1e-10, "residual {:.3e}", p.condition_residual);
            assert!((p.pt.x - p.pt.x.round()).abs() > 1e-5);
        }
        let xs: Vec<f64> = out.points.iter().map(|p| p.pt.x).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "sorted output");
    }

    #[test]
    fn roots_are_stable_under_grid_halving() {
        let coarse = scan_spectrum(0.7, 1.0, -0.5, 3.5, &cfg()).unwrap();
        let fine_cfg = ScanConfig {
            grid_step: 0.01,
            ..cfg()
        };
        let fine = scan_spectrum(0.7, 1.0, -0.5, 3.5, &fine_cfg).unwrap();
        assert_eq!(coarse.points.len(), fine.points.len());
        for (a, b) in coarse.points.iter().zip(fine.points.iter()) {
            assert!((a.pt.x - b.pt.x).abs() <= 1e-9, "{} vs {}", a.pt.x, b.pt.x);
        }
    }

    #[test]
    fn judd_point_is_reported_once_with_degeneracy_two() {
        let out = scan_spectrum(0.4, 0.6, 0.5, 1.5, &cfg()).unwrap();
        let judd: Vec<&SpectralPoint> = out
            .points
            .iter()
            .filter(|p| p.kind.kind == SpectralClass::Judd)
            .collect();
        assert_eq!(judd.len(), 1);
        assert_eq!(judd[0].pt.x, 1.0);
        assert_eq!(judd[0].kind.degeneracy, 2);
        assert_relative_eq!(judd[0].energy(), 0.84, max_relative = 1e-14);
    }

    #[test]
    fn generic_couplings_have_no_integer_members() {
        let out = scan_spectrum(0.7, 1.0, -0.5, 3.5, &cfg()).unwrap();
        assert!(out
            .points
            .iter()
            .all(|p| p.kind.kind == SpectralClass::GenericWronskian));
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            scan_spectrum(0.5, 1.0, 3.0, 1.0, &cfg()),
            Err(SolverError::InvalidRange { .. })
        ));
        let bad = ScanConfig {
            grid_step: -1.0,
            ..cfg()
        };
        assert!(matches!(
            scan_spectrum(0.5, 1.0, 0.0, 1.0, &bad),
            Err(SolverError::InvalidConfig(_))
        ));
    }

    #[test]
    fn oracle_attachment_and_bijection_at_lambda_zero() {
        let mut out = scan_spectrum(0.0, 0.6, 0.0, 4.0, &cfg()).unwrap();
        attach_oracle(&mut out).unwrap();
        for p in &out.points {
            assert!(p.oracle_delta.unwrap() <= 1e-9);
        }
        let report = match_with_oracle(&out, 0.0, 4.0, 1e-7).unwrap();
        assert!(report.is_bijection(), "unmatched: {:?} / {:?}", report.unmatched_scan, report.unmatched_oracle);
        assert_eq!(report.pairs.len(), 8);
    }

    #[test]
    fn scan_matches_oracle_at_generic_couplings() {
        let out = scan_spectrum(0.7, 1.0, -1.0, 3.5, &cfg()).unwrap();
        let report = match_with_oracle(&out, -0.9, 3.3, 1e-6).unwrap();
        assert!(
            report.is_bijection(),
            "unmatched scan {:?}, oracle {:?}",
            report.unmatched_scan,
            report.unmatched_oracle
        );
        assert!(report.pairs.len() >= 4);
    }
}
