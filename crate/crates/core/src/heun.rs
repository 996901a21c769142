//! Confluent Heun equation: parameters, Frobenius series, and polynomial truncation.
//!
//! The equation is taken in the non-symmetrical canonical form
//!
//! ```text
//! v'' + (alpha + (beta+1)/y + (gamma+1)/(y-1)) v' + (theta/y + xi/(y-1)) v = 0
//! ```
//!
//! with regular singular points at y = 0 (exponents 0 and -beta) and y = 1
//! (exponents 0 and -gamma), and an irregular one at infinity. The accessory
//! parameters are carried in the five-tuple (alpha, beta, gamma, delta, eta);
//! the equivalent pair (theta, xi) that actually enters the equation and the
//! coefficient recurrence is derived from the tuple by `theta_xi_from_accessory`.
//!
//! Power series are local Frobenius solutions around y = 0 or y = 1. Around the
//! chosen center the coefficients obey the three-term recurrence
//!
//! ```text
//! c_{k+1} (k+1+rho)(k+rho+beta+1) = c_k q_k + c_{k-1} g_k
//! q_k = (k+rho)(k+rho-1) + (k+rho)(beta+gamma+2-alpha) - theta
//! g_k = alpha (k+rho-1) + theta + xi
//! ```
//!
//! with c_0 = 1, c_{-1} = 0 and rho the local exponent. When beta = -n for a
//! positive integer n the exponent-0 recurrence denominator vanishes at step n;
//! the numerator at the blocked step (`truncation_numerator`) decides whether a
//! log-free, polynomially truncated solution exists.

use thiserror::Error;

/// Relative tolerance of the series stopping rule: summation ends once two
/// consecutive term magnitudes fall below this fraction of the partial sum.
pub const SERIES_REL_TOL: f64 = 1e-14;

/// Hard cap on the number of series coefficients.
pub const SERIES_N_MAX: usize = 2000;

/// Coefficient magnitude that triggers renormalization of the stored series.
const RESCALE_THRESHOLD: f64 = 1e100;

/// Tolerance for recognizing beta as the exact negative integer -n.
const BETA_INT_TOL: f64 = 1e-9;

/// Relative tolerance for `polynomial_solution` to accept a vanishing
/// truncation numerator.
pub const TRUNCATION_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeunError {
    #[error("coefficient recurrence produced a non-finite value at index {index}")]
    NonFiniteCoefficient { index: usize },
    #[error("evaluation point at distance {dist} from the center lies outside the unit disk")]
    OutsideDisk { dist: f64 },
    #[error("series did not converge after {terms} terms (tail estimate {tail:.3e})")]
    NotConverged { terms: usize, tail: f64 },
    #[error("fractional exponent {exponent} cannot be evaluated left of the center")]
    FractionalPower { exponent: f64 },
    #[error("truncation requires beta = -{n}, found beta = {beta}")]
    WrongBeta { n: u32, beta: f64 },
    #[error("truncation numerator {value:.6e} is not zero within tolerance {tol:.1e}")]
    NotTruncated { value: f64, tol: f64 },
}

/// Accessory-parameter set of the confluent Heun equation together with the
/// derived pair (theta, xi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    pub theta: f64,
    pub xi: f64,
}

/// Converts the five accessory parameters into the coefficients (theta, xi)
/// multiplying 1/y and 1/(y-1) in the equation:
///
/// ```text
/// theta = (alpha - beta - gamma + alpha beta - beta gamma)/2 - eta
/// xi    = (alpha + beta + gamma + alpha gamma + beta gamma)/2 + delta + eta
/// ```
pub fn theta_xi_from_accessory(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    eta: f64,
) -> (f64, f64) {
    let theta = 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - eta;
    let xi = 0.5 * (alpha + beta + gamma + alpha * gamma + beta * gamma) + delta + eta;
    (theta, xi)
}

impl HeunParams {
    pub fn from_accessory(alpha: f64, beta: f64, gamma: f64, delta: f64, eta: f64) -> Self {
        let (theta, xi) = theta_xi_from_accessory(alpha, beta, gamma, delta, eta);
        HeunParams {
            alpha,
            beta,
            gamma,
            delta,
            eta,
            theta,
            xi,
        }
    }

    /// Parameter set of the equation seen from the other regular singular
    /// point, i.e. after the substitution y -> 1 - y. Applying it twice
    /// returns the original set.
    pub fn swap_centers(&self) -> Self {
        HeunParams::from_accessory(
            -self.alpha,
            self.gamma,
            self.beta,
            -self.delta,
            self.delta + self.eta,
        )
    }

    /// Parameter set after multiplying solutions by exp(-alpha y); used to
    /// reach the second, exponentially weighted polynomial family.
    pub fn exp_weighted(&self) -> Self {
        HeunParams::from_accessory(-self.alpha, self.beta, self.gamma, self.delta, self.eta)
    }
}

/// Expansion center of a Frobenius series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Center {
    Zero,
    One,
}

/// Truncated Frobenius solution around one regular singular point.
///
/// For `Center::One` the stored coefficients are those of the series in
/// u = 1 - y of the center-swapped equation, so that real arithmetic stays on
/// positive powers for y in (0, 1); `evaluate` applies the chain-rule sign to
/// derivatives with respect to y.
#[derive(Debug, Clone)]
pub struct FrobeniusSeries {
    pub center: Center,
    pub exponent: f64,
    pub coeffs: Vec<f64>,
    /// Natural log of the factor divided out of `coeffs` by the overflow
    /// guard; 0 unless renormalization was triggered.
    pub log_scale: f64,
    /// True when the recurrence ran through the requested number of terms
    /// without blocking.
    pub converged: bool,
    /// Index of the first coefficient the recurrence could not produce, if
    /// the denominator vanished (beta = -n and exponent 0 block at step n).
    pub truncation_blocked_at: Option<usize>,
    /// Parameters of the equation the stored coefficients satisfy (already
    /// center-swapped for `Center::One`).
    local_params: HeunParams,
}

impl FrobeniusSeries {
    pub fn n_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Parameters of the equation the stored coefficients satisfy in the
    /// local variable (already center-swapped for `Center::One`); pair with
    /// [`ode_residual`] to check a summed value.
    pub fn local_params(&self) -> &HeunParams {
        &self.local_params
    }
}

/// Outcome of summing a series at a point.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: f64,
    /// Derivative with respect to y (not the local series variable).
    pub derivative: f64,
    pub terms_used: usize,
    /// Magnitude of the first omitted term.
    pub tail_estimate: f64,
}

fn recurrence_terms(p: &HeunParams, rho: f64, k: usize) -> (f64, f64, f64) {
    let kf = k as f64 + rho;
    let denom = (kf + 1.0) * (kf + p.beta + 1.0);
    let q = kf * (kf - 1.0) + kf * (p.beta + p.gamma + 2.0 - p.alpha) - p.theta;
    let g = p.alpha * (kf - 1.0) + p.theta + p.xi;
    (denom, q, g)
}

/// Builds the Frobenius series with the given exponent around a center; the
/// exponent must be an indicial root there (0 or -beta at `Zero`, 0 or -gamma
/// at `One`) for the result to solve the equation.
pub fn frobenius_series(
    p: &HeunParams,
    center: Center,
    exponent: f64,
    n_max: usize,
) -> Result<FrobeniusSeries, HeunError> {
    let local = match center {
        Center::Zero => *p,
        Center::One => p.swap_centers(),
    };
    let n_max = n_max.clamp(2, SERIES_N_MAX);
    let mut coeffs = Vec::with_capacity(n_max);
    coeffs.push(1.0);
    let mut log_scale = 0.0;
    let mut blocked = None;
    for k in 0..n_max - 1 {
        let (denom, q, g) = recurrence_terms(&local, exponent, k);
        if denom == 0.0 {
            blocked = Some(k + 1);
            break;
        }
        let prev = if k == 0 { 0.0 } else { coeffs[k - 1] };
        let mut next = (q * coeffs[k] + g * prev) / denom;
        if !next.is_finite() {
            return Err(HeunError::NonFiniteCoefficient { index: k + 1 });
        }
        if next.abs() > RESCALE_THRESHOLD {
            let factor = next.abs();
            for c in coeffs.iter_mut() {
                *c /= factor;
            }
            next /= factor;
            log_scale += factor.ln();
        }
        coeffs.push(next);
    }
    Ok(FrobeniusSeries {
        center,
        exponent,
        coeffs,
        log_scale,
        converged: blocked.is_none(),
        truncation_blocked_at: blocked,
        local_params: local,
    })
}

fn power(base: f64, exp: f64) -> Result<f64, HeunError> {
    if exp == 0.0 {
        return Ok(1.0);
    }
    if exp.fract() == 0.0 && exp.abs() < i32::MAX as f64 {
        return Ok(base.powi(exp as i32));
    }
    if base < 0.0 {
        return Err(HeunError::FractionalPower { exponent: exp });
    }
    Ok(base.powf(exp))
}

/// Sums the series and its y-derivative at a point inside the unit disk of
/// the center, using the two-consecutive-small-terms stopping rule.
pub fn evaluate(s: &FrobeniusSeries, y: f64) -> Result<EvalResult, HeunError> {
    evaluate_with_tol(s, y, SERIES_REL_TOL)
}

pub fn evaluate_with_tol(s: &FrobeniusSeries, y: f64, rel_tol: f64) -> Result<EvalResult, HeunError> {
    let (t, dsign) = match s.center {
        Center::Zero => (y, 1.0),
        Center::One => (1.0 - y, -1.0),
    };
    if t.abs() >= 1.0 {
        return Err(HeunError::OutsideDisk { dist: t.abs() });
    }
    let rho = s.exponent;
    let scale = s.log_scale.exp();
    if t == 0.0 {
        if rho < 0.0 {
            return Err(HeunError::FractionalPower { exponent: rho });
        }
        let value = if rho == 0.0 { s.coeffs[0] } else { 0.0 };
        let d = if rho == 0.0 {
            s.coeffs.get(1).copied().unwrap_or(0.0)
        } else if rho == 1.0 {
            s.coeffs[0] * rho
        } else {
            0.0
        };
        return Ok(EvalResult {
            value: value * scale,
            derivative: d * scale * dsign,
            terms_used: 2.min(s.coeffs.len()),
            tail_estimate: 0.0,
        });
    }
    let mut sum = 0.0;
    let mut dsum = 0.0;
    let mut tk = 1.0; // t^k
    let mut small_run = 0;
    let mut used = s.coeffs.len();
    let mut tail = 0.0;
    for (k, &c) in s.coeffs.iter().enumerate() {
        let term = c * tk;
        sum += term;
        dsum += term * (k as f64 + rho);
        tk *= t;
        if k >= 2 {
            if term.abs() <= rel_tol * sum.abs() {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if small_run >= 2 {
                used = k + 1;
                tail = s
                    .coeffs
                    .get(k + 1)
                    .map(|c| (c * tk).abs())
                    .unwrap_or(0.0);
                break;
            }
        }
    }
    if small_run < 2 {
        // A blocked series with an exactly-zero final stretch still counts as
        // summed; anything else ran out of terms.
        let last = s.coeffs.last().copied().unwrap_or(0.0);
        if last != 0.0 || s.coeffs.len() < 4 {
            return Err(HeunError::NotConverged {
                terms: s.coeffs.len(),
                tail: (last * tk).abs(),
            });
        }
    }
    let pref = power(t, rho)?;
    let dpref = power(t, rho - 1.0)?;
    Ok(EvalResult {
        value: sum * pref * scale,
        derivative: dsum * dpref * scale * dsign,
        terms_used: used,
        tail_estimate: tail * pref.abs() * scale,
    })
}

/// Value, first and second derivative with respect to y; same stopping rule.
pub fn evaluate_d2(s: &FrobeniusSeries, y: f64) -> Result<(f64, f64, f64), HeunError> {
    let base = evaluate(s, y)?;
    let (t, _) = match s.center {
        Center::Zero => (y, 1.0),
        Center::One => (1.0 - y, -1.0),
    };
    let rho = s.exponent;
    let mut d2sum = 0.0;
    let mut tk = 1.0;
    for (k, &c) in s.coeffs.iter().enumerate() {
        let kf = k as f64 + rho;
        d2sum += c * tk * kf * (kf - 1.0);
        tk *= t;
    }
    let d2 = d2sum * power(t, rho - 2.0)? * s.log_scale.exp();
    Ok((base.value, base.derivative, d2))
}

fn check_beta(p: &HeunParams, n: u32) -> Result<(), HeunError> {
    if (p.beta + n as f64).abs() > BETA_INT_TOL {
        return Err(HeunError::WrongBeta { n, beta: p.beta });
    }
    Ok(())
}

/// Numerator of the blocked recurrence step for beta = -n, exponent 0 at the
/// center y = 0:
///
/// ```text
/// L_n = c_{n-1} [ (n-1)(n-2) + (n-1)(beta+gamma+2-alpha) - theta ]
///     + c_{n-2} [ alpha (n-2) + theta + xi ]
/// ```
///
/// L_n = 0 is the log-free (polynomial truncation) condition.
pub fn truncation_numerator(p: &HeunParams, n: u32) -> Result<f64, HeunError> {
    truncation_numerator_scaled(p, n).map(|(v, _)| v)
}

/// Same as [`truncation_numerator`] but also returns the natural magnitude of
/// the two assembled terms, for use as a normalization scale.
pub fn truncation_numerator_scaled(p: &HeunParams, n: u32) -> Result<(f64, f64), HeunError> {
    check_beta(p, n)?;
    let prefix = polynomial_prefix(p, n)?;
    let (_, q, g) = recurrence_terms(p, 0.0, n as usize - 1);
    let c1 = prefix[n as usize - 1];
    let c0 = if n >= 2 { prefix[n as usize - 2] } else { 0.0 };
    let a = q * c1;
    let b = g * c0;
    Ok((a + b, a.abs().max(b.abs()).max(1.0)))
}

fn polynomial_prefix(p: &HeunParams, n: u32) -> Result<Vec<f64>, HeunError> {
    let mut c = Vec::with_capacity(n as usize);
    c.push(1.0);
    for k in 0..n as usize - 1 {
        let (denom, q, g) = recurrence_terms(p, 0.0, k);
        let prev = if k == 0 { 0.0 } else { c[k - 1] };
        let next = (q * c[k] + g * prev) / denom;
        if !next.is_finite() {
            return Err(HeunError::NonFiniteCoefficient { index: k + 1 });
        }
        c.push(next);
    }
    Ok(c)
}

/// Coefficients c_0..c_{n-1} of the degree-(n-1) polynomial solution that
/// exists when the truncation numerator vanishes (beta = -n). The caller is
/// expected to supply parameters for which the coefficient g_k of the
/// recurrence vanishes at k = n (automatic for the Rabi mapping at x = n), so
/// that choosing c_n = 0 truncates the series exactly.
pub fn polynomial_solution(p: &HeunParams, n: u32) -> Result<Vec<f64>, HeunError> {
    let (num, scale) = truncation_numerator_scaled(p, n)?;
    if num.abs() > TRUNCATION_TOL * scale {
        return Err(HeunError::NotTruncated {
            value: num,
            tol: TRUNCATION_TOL * scale,
        });
    }
    polynomial_prefix(p, n)
}

/// Defect of the equation for a (value, derivative, second-derivative) triple
/// at an interior point y; zero for exact solutions.
pub fn ode_residual(p: &HeunParams, v: (f64, f64, f64), y: f64) -> f64 {
    v.2 + (p.alpha + (p.beta + 1.0) / y + (p.gamma + 1.0) / (y - 1.0)) * v.1
        + (p.theta / y + p.xi / (y - 1.0)) * v.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample_params() -> HeunParams {
        // x = 0.5, lambda = 0.5, mu = 1 in the Rabi mapping.
        HeunParams::from_accessory(1.0, -0.5, -1.5, 0.5, -0.875)
    }

    #[test]
    fn theta_xi_reference_values() {
        let (theta, xi) = theta_xi_from_accessory(1.0, -0.5, -1.5, 0.5, -0.875);
        assert_relative_eq!(theta, 1.75, max_relative = 1e-15);
        assert_relative_eq!(xi, -1.25, max_relative = 1e-15);
    }

    #[test]
    fn swap_centers_matches_expected_tuple_and_is_involutive() {
        let p = sample_params();
        let s = p.swap_centers();
        assert_eq!(
            (s.alpha, s.beta, s.gamma, s.delta, s.eta),
            (-1.0, -1.5, -0.5, -0.5, -0.375)
        );
        // The swapped equation must carry (theta, xi) -> (-xi, -theta).
        assert_relative_eq!(s.theta, -p.xi, max_relative = 1e-14);
        assert_relative_eq!(s.xi, -p.theta, max_relative = 1e-14);
        let back = s.swap_centers();
        assert_eq!(
            (back.alpha, back.beta, back.gamma, back.delta, back.eta),
            (p.alpha, p.beta, p.gamma, p.delta, p.eta)
        );
    }

    #[test]
    fn first_coefficients_match_hand_computation() {
        let p = sample_params();
        let s = frobenius_series(&p, Center::Zero, 0.0, 64).unwrap();
        assert_eq!(s.coeffs[0], 1.0);
        assert_relative_eq!(s.coeffs[1], -3.5, max_relative = 1e-15);
        // c_2 = ((-3.5)(-2.75) + 0.5) / 3 = 3.375
        assert_relative_eq!(s.coeffs[2], 3.375, max_relative = 1e-15);
        assert!(s.truncation_blocked_at.is_none());
        assert!(s.converged);
    }

    #[test]
    fn evaluate_at_center_is_exactly_one() {
        let p = sample_params();
        let s = frobenius_series(&p, Center::Zero, 0.0, 64).unwrap();
        let r = evaluate(&s, 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.derivative, s.coeffs[1]);
        let s1 = frobenius_series(&p, Center::One, 0.0, 64).unwrap();
        let r1 = evaluate(&s1, 1.0).unwrap();
        assert_eq!(r1.value, 1.0);
    }

    #[test]
    fn evaluate_midpoint_partial_sums() {
        let p = sample_params();
        let s = frobenius_series(&p, Center::Zero, 0.0, 256).unwrap();
        let r = evaluate(&s, 0.5).unwrap();
        // Leading partial sums are 1 - 1.75 + 0.84375 - ...
        assert_relative_eq!(s.coeffs[1] * 0.5, -1.75, max_relative = 1e-15);
        assert_relative_eq!(s.coeffs[2] * 0.25, 0.84375, max_relative = 1e-15);
        assert!(r.terms_used > 10 && r.terms_used < 256);
        assert!(r.tail_estimate < 1e-12);
        // Pinned from exact rational summation of the recurrence; direct
        // numerical integration agrees (see tests/series_integration.rs).
        assert_relative_eq!(r.value, -0.06559736535490113, max_relative = 1e-11);
        assert_relative_eq!(r.derivative, -1.0326518829482976, max_relative = 1e-11);
    }

    #[test]
    fn evaluate_outside_disk_errors() {
        let p = sample_params();
        let s = frobenius_series(&p, Center::Zero, 0.0, 64).unwrap();
        assert!(matches!(
            evaluate(&s, 1.2),
            Err(HeunError::OutsideDisk { .. })
        ));
    }

    #[test]
    fn blocked_recurrence_at_integer_beta() {
        // x = 1 gives beta = -1: the very first step blocks.
        let p = HeunParams::from_accessory(0.64, -1.0, -2.0, 0.32, -0.6);
        let s = frobenius_series(&p, Center::Zero, 0.0, 64).unwrap();
        assert_eq!(s.truncation_blocked_at, Some(1));
        assert_eq!(s.n_terms(), 1);
        assert!(!s.converged);
    }

    #[test]
    fn truncation_numerator_n1_is_minus_theta() {
        for (lambda, mu) in [(0.3, 0.7), (0.5, 1.0), (0.9, 0.2)] {
            let (lambda, mu): (f64, f64) = (lambda, mu);
            let x = 1.0;
            let alpha = 4.0 * lambda * lambda;
            let eta = 0.5 * (1.0 + x + x * x) - mu * mu - 2.0 * lambda * lambda * (x + 1.0);
            let p = HeunParams::from_accessory(alpha, -x, -1.0 - x, 2.0 * lambda * lambda, eta);
            let l1 = truncation_numerator(&p, 1).unwrap();
            assert_relative_eq!(
                l1,
                -(4.0 * lambda * lambda + mu * mu - 1.0),
                max_relative = 1e-12,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn truncation_numerator_wrong_beta() {
        let p = sample_params();
        assert!(matches!(
            truncation_numerator(&p, 1),
            Err(HeunError::WrongBeta { .. })
        ));
    }

    #[test]
    fn polynomial_solution_rejects_generic_point() {
        let x = 2.0;
        let (lambda, mu): (f64, f64) = (0.3, 1.0);
        let alpha = 4.0 * lambda * lambda;
        let eta = 0.5 * (1.0 + x + x * x) - mu * mu - 2.0 * lambda * lambda * (x + 1.0);
        let p = HeunParams::from_accessory(alpha, -x, -1.0 - x, 2.0 * lambda * lambda, eta);
        assert!(matches!(
            polynomial_solution(&p, 2),
            Err(HeunError::NotTruncated { .. })
        ));
    }

    proptest::proptest! {
        #[test]
        fn theta_xi_recomputation_is_stable(
            alpha in -6.0..6.0f64,
            beta in -7.0..3.0f64,
            gamma in -8.0..2.0f64,
            delta in -3.0..3.0f64,
            eta in -40.0..40.0f64,
        ) {
            let p = HeunParams::from_accessory(alpha, beta, gamma, delta, eta);
            let (t2, x2) = theta_xi_from_accessory(p.alpha, p.beta, p.gamma, p.delta, p.eta);
            proptest::prop_assert_eq!(p.theta, t2);
            proptest::prop_assert_eq!(p.xi, x2);
        }

        #[test]
        fn non_integer_beta_never_blocks(
            frac in 0.01..0.99f64,
            whole in 0u32..6,
            alpha in 0.001..5.0f64,
            theta_seed in -20.0..20.0f64,
        ) {
            let beta = -(whole as f64 + frac);
            let p = HeunParams::from_accessory(alpha, beta, -1.0 - (whole as f64 + frac), alpha / 2.0, theta_seed);
            let s = frobenius_series(&p, Center::Zero, 0.0, 128).unwrap();
            proptest::prop_assert!(s.truncation_blocked_at.is_none());
        }

        #[test]
        fn integer_beta_blocks_at_n(n in 1u32..8) {
            let x = n as f64;
            let p = HeunParams::from_accessory(1.3, -x, -1.0 - x, 0.65, 0.1);
            let s = frobenius_series(&p, Center::Zero, 0.0, 128).unwrap();
            proptest::prop_assert_eq!(s.truncation_blocked_at, Some(n as usize));
        }

        #[test]
        fn derivative_consistent_with_finite_difference(
            beta in -4.9..-0.1f64,
            alpha in 0.01..4.0f64,
            eta in -10.0..10.0f64,
        ) {
            proptest::prop_assume!((beta - beta.round()).abs() > 0.05);
            let p = HeunParams::from_accessory(alpha, beta, -1.0 + beta, alpha / 2.0, eta);
            let s = frobenius_series(&p, Center::Zero, 0.0, 400).unwrap();
            let h = 1e-6;
            let mid = evaluate(&s, 0.5).unwrap();
            let up = evaluate(&s, 0.5 + h).unwrap();
            let dn = evaluate(&s, 0.5 - h).unwrap();
            let fd = (up.value - dn.value) / (2.0 * h);
            let scale = mid.derivative.abs().max(1.0);
            proptest::prop_assert!((fd - mid.derivative).abs() <= 1e-5 * scale,
                "fd={} analytic={}", fd, mid.derivative);
        }
    }

    #[test]
    fn truncated_series_residual_shrinks_with_more_terms() {
        let p = sample_params();
        for &n in &[6usize, 10, 14] {
            let short = frobenius_series(&p, Center::Zero, 0.0, n).unwrap();
            let long = frobenius_series(&p, Center::Zero, 0.0, n + 4).unwrap();
            for &y in &[0.45, -0.45] {
                let r_short = ode_residual(&p, poly_d2(&short.coeffs, y), y).abs();
                let r_long = ode_residual(&p, poly_d2(&long.coeffs, y), y).abs();
                assert!(
                    r_short > 1e-12,
                    "n={n} y={y}: residual {r_short:.3e} already at noise"
                );
                assert!(
                    r_long * 5.0 <= r_short,
                    "n={n} y={y}: {r_short:.3e} -> {r_long:.3e}"
                );
            }
        }
    }

    fn poly_d2(c: &[f64], y: f64) -> (f64, f64, f64) {
        let (mut v, mut d, mut dd) = (0.0, 0.0, 0.0);
        for &ck in c.iter().rev() {
            dd = dd * y + 2.0 * d;
            d = d * y + v;
            v = v * y + ck;
        }
        (v, d, dd)
    }
}
