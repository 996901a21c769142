//! Bracketed scalar root refinement.

use super::SolverError;

/// Width in x below which a bracket counts as resolved.
const X_TOL: f64 = 1e-12;

/// Refinement algorithm for a sign-change bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refiner {
    /// Bisection to the x tolerance, then up to three secant polish steps.
    Bisection,
    /// Inverse-quadratic interpolation with bisection safeguards.
    BrentLike,
}

/// Drives `f` to a root inside [a, b], given f(a) and f(b) of opposite sign.
/// Returns the located root and the value there.
pub fn refine_bracket<F>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    refiner: Refiner,
) -> Result<(f64, f64), SolverError>
where
    F: FnMut(f64) -> Result<f64, SolverError>,
{
    if fa == 0.0 {
        return Ok((a, 0.0));
    }
    if fb == 0.0 {
        return Ok((b, 0.0));
    }
    if fa.signum() == fb.signum() {
        return Err(SolverError::Refine(format!(
            "no sign change on [{a}, {b}]: f = {fa:.3e}, {fb:.3e}"
        )));
    }
    match refiner {
        Refiner::Bisection => bisect_polish(f, a, b, fa, fb),
        Refiner::BrentLike => brent(f, a, b, fa, fb),
    }
}

fn x_resolved(a: f64, b: f64) -> bool {
    (b - a).abs() <= X_TOL * (1.0 + a.abs().max(b.abs()))
}

fn bisect_polish<F>(
    f: &mut F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
) -> Result<(f64, f64), SolverError>
where
    F: FnMut(f64) -> Result<f64, SolverError>,
{
    let (mut best_x, mut best_f) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..80 {
        if x_resolved(a, b) {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid)?;
        if fm.abs() < best_f.abs() {
            best_x = mid;
            best_f = fm;
        }
        if fm == 0.0 {
            return Ok((mid, 0.0));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    // Secant polish from the final bracket; steps leaving the bracket are
    // discarded.
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..3 {
        let denom = f1 - f0;
        if denom == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if !x2.is_finite() || x2 < a.min(b) || x2 > a.max(b) {
            break;
        }
        let f2 = f(x2)?;
        if f2.abs() < best_f.abs() {
            best_x = x2;
            best_f = f2;
        }
        if f2 == 0.0 {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    Ok((best_x, best_f))
}

fn brent<F>(
    f: &mut F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
) -> Result<(f64, f64), SolverError>
where
    F: FnMut(f64) -> Result<f64, SolverError>,
{
    // Standard Brent: b is the best iterate, a its counterpoint, c the
    // previous b.
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..120 {
        if fb == 0.0 || x_resolved(a, b) {
            break;
        }
        if fc.abs() < fb.abs() {
            // c is better: rotate so b stays best.
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 0.5 * X_TOL * (1.0 + b.abs());
        let m = 0.5 * (c - b);
        if m.abs() <= tol {
            break;
        }
        if e.abs() < tol || fa.abs() <= fb.abs() {
            d = m;
            e = m;
        } else {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                // Secant.
                (2.0 * m * s, 1.0 - s)
            } else {
                // Inverse quadratic.
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol {
            d
        } else if m > 0.0 {
            tol
        } else {
            -tol
        };
        fb = f(b)?;
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Ok((b, fb))
}
