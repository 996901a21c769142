//! Spectral conditions: the Wronskian condition for non-integer x, the
//! polynomial-truncation (Judd) condition, and the transcendental condition
//! F_n for the non-degenerate integer-x states.
//!
//! A point (x, lambda, mu) belongs to the spectrum exactly when the equation
//! admits an entire solution. For non-integer x that happens when the two
//! exponent-0 local solutions are proportional, i.e. their Wronskian
//!
//! ```text
//! W = H0(1/2) H1'(1/2) - H0'(1/2) H1(1/2)
//! ```
//!
//! vanishes. For integer x = n the candidate entire solutions carry exponent
//! n at y = 0 and n+1 at y = 1 instead; either the exponent-0 series itself
//! truncates to a polynomial (Judd doublet, condition L_n = 0) or the two
//! exponent-flipped solutions V10, V11 are proportional, which reduces to
//!
//! ```text
//! F_n = h0 h1' + h1 (2n h0 + h0')
//! ```
//!
//! where h_i are the C0/C1 series and their own-argument derivatives at 1/2.

use thiserror::Error;

use crate::heun::{
    self, frobenius_series, truncation_numerator_scaled, Center, HeunError, HeunParams,
};
use crate::rabi::{
    heun_params, local_solution, param_tuple, wavefunction, BargmannState, EntireSolution,
    LocalKind, MapError, RabiPoint, TupleTag,
};

/// Distance below which x counts as a non-negative integer and the Wronskian
/// basis degenerates.
pub const EPS_INT: f64 = 1e-6;

/// Normalized magnitude below which a condition value counts as a root.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

/// Series lengths tried in turn when summing condition ingredients.
const N_MAX_LADDER: [usize; 4] = [256, 512, 1024, 2000];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConditionError {
    #[error("x = {x} is within {eps:.1e} of the non-negative integer {n}; use the integer-x conditions")]
    IntegerX { x: f64, n: u32, eps: f64 },
    #[error("lambda = 0: the Heun mapping degenerates, use the analytic branch")]
    LambdaZero,
    #[error("mu = 0: the system decouples, use the analytic branch")]
    MuZero,
    #[error("({lambda}, {mu}) is not on the degree-{n} truncation set: |L_n| = {value:.3e}")]
    NotOnJuddSet { n: u32, lambda: f64, mu: f64, value: f64 },
    #[error("integer x = {n}: neither the truncation condition ({judd:.3e}) nor F ({f:.3e}) vanishes within {tol:.1e}")]
    Unclassifiable { n: u32, judd: f64, f: f64, tol: f64 },
    #[error("constructed eigenstate pair failed validation: {reason}")]
    DegenerateConstruction { reason: String },
    #[error(transparent)]
    Series(#[from] HeunError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Classification of a spectral point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralClass {
    /// Non-integer x located by the Wronskian condition.
    GenericWronskian,
    /// Integer x on the polynomial-truncation set; doubly degenerate.
    Judd,
    /// Integer x located by F_n; non-degenerate.
    NewInteger,
    /// Produced by the exact lambda = 0 or mu = 0 branches.
    Analytic,
}

impl SpectralClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectralClass::GenericWronskian => "generic",
            SpectralClass::Judd => "judd",
            SpectralClass::NewInteger => "new-integer",
            SpectralClass::Analytic => "analytic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralKind {
    pub kind: SpectralClass,
    pub degeneracy: u8,
}

/// A condition evaluation: raw value plus the natural magnitude of its
/// ingredients, so callers can form a scale-free residual.
#[derive(Debug, Clone, Copy)]
pub struct ConditionValue {
    pub value: f64,
    pub derivative: Option<f64>,
    pub terms_used: usize,
    pub scale: f64,
}

impl ConditionValue {
    pub fn normalized(&self) -> f64 {
        self.value / self.scale.max(f64::MIN_POSITIVE)
    }
}

/// Value and own-argument derivative of the exponent-0 series of `p` at 1/2,
/// retrying with longer series if the stopping rule does not fire.
fn series_half(p: &HeunParams) -> Result<(f64, f64, usize), ConditionError> {
    series_at(p, 0.5)
}

fn series_at(p: &HeunParams, y: f64) -> Result<(f64, f64, usize), ConditionError> {
    let mut last = HeunError::NotConverged { terms: 0, tail: f64::NAN };
    for &n_max in &N_MAX_LADDER {
        let s = frobenius_series(p, Center::Zero, 0.0, n_max)?;
        if let Some(index) = s.truncation_blocked_at {
            return Err(MapError::BlockedRecurrence { index }.into());
        }
        match heun::evaluate(&s, y) {
            Ok(r) => return Ok((r.value, r.derivative, r.terms_used)),
            Err(e @ HeunError::NotConverged { .. }) => last = e,
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.into())
}

fn integer_guard(x: f64, eps: f64) -> Result<(), ConditionError> {
    let r = x.round();
    if r >= -0.5 && (x - r).abs() <= eps {
        return Err(ConditionError::IntegerX {
            x,
            n: r as u32,
            eps,
        });
    }
    Ok(())
}

/// Wronskian of the two exponent-0 local solutions at an interior point y.
/// Its sign and zero set are independent of y.
pub fn wronskian_w_at(pt: &RabiPoint, y: f64) -> Result<ConditionValue, ConditionError> {
    if pt.lambda == 0.0 {
        return Err(ConditionError::LambdaZero);
    }
    integer_guard(pt.x, EPS_INT)?;
    let a0 = heun_params(pt);
    let a1 = a0.swap_centers();
    let (h0, h0d, t0) = series_at(&a0, y)?;
    let (b, bd, t1) = series_at(&a1, 1.0 - y)?;
    // H1(y) = B(1 - y), so dH1/dy = -B'(1 - y).
    let value = -(h0 * bd + h0d * b);
    Ok(ConditionValue {
        value,
        derivative: None,
        terms_used: t0.max(t1),
        scale: (h0 * bd).abs().max((h0d * b).abs()),
    })
}

/// The Wronskian condition W(x, lambda, mu), evaluated at y = 1/2.
pub fn wronskian_condition(pt: &RabiPoint) -> Result<ConditionValue, ConditionError> {
    wronskian_w_at(pt, 0.5)
}

/// Truncation numerator L_n(lambda, mu) whose zero set is the degree-n
/// doublet (Judd) set. L_1 = -(4 lambda^2 + mu^2 - 1). By convention the
/// n = 0 set is empty and the returned value is the constant 1.
pub fn judd_condition(n: u32, lambda: f64, mu: f64) -> ConditionValue {
    if n == 0 {
        return ConditionValue {
            value: 1.0,
            derivative: None,
            terms_used: 0,
            scale: 1.0,
        };
    }
    let pt = RabiPoint::new(n as f64, lambda, mu);
    let p = heun_params(&pt);
    let (value, scale) =
        truncation_numerator_scaled(&p, n).expect("beta = -n holds by construction");
    ConditionValue {
        value,
        derivative: None,
        terms_used: n as usize,
        scale,
    }
}

/// Transcendental condition for the non-degenerate integer-x states,
///
/// ```text
/// F_n = h0 h1' + h1 (2n h0 + h0')
/// ```
///
/// with h0, h1 the exponent-flipped C0/C1 series at 1/2. Proportional to the
/// Wronskian of V10 and V11 ([`wronskian_form_w`]).
pub fn new_state_condition_f(n: u32, lambda: f64, mu: f64) -> Result<ConditionValue, ConditionError> {
    if lambda == 0.0 {
        return Err(ConditionError::LambdaZero);
    }
    let pt = RabiPoint::new(n as f64, lambda, mu);
    let c0 = param_tuple(&pt, TupleTag::C0).params;
    let c1 = param_tuple(&pt, TupleTag::C1).params;
    let (h0, h0d, t0) = series_half(&c0)?;
    let (h1, h1d, t1) = series_half(&c1)?;
    let nf = n as f64;
    let value = h0 * h1d + h1 * (2.0 * nf * h0 + h0d);
    Ok(ConditionValue {
        value,
        derivative: None,
        terms_used: t0.max(t1),
        scale: (h0 * h1d)
            .abs()
            .max((h1 * h0d).abs())
            .max((2.0 * nf * h0 * h1).abs()),
    })
}

/// Determinant form of the integer-x condition: the Wronskian of the two
/// exponent-flipped local solutions V10, V11 at y = 1/2. Vanishes exactly
/// where F_n does.
pub fn wronskian_form_w(n: u32, lambda: f64, mu: f64) -> Result<ConditionValue, ConditionError> {
    if lambda == 0.0 {
        return Err(ConditionError::LambdaZero);
    }
    let pt = RabiPoint::new(n as f64, lambda, mu);
    let v10 = local_solution(&pt, LocalKind::V10, 512)?;
    let v11 = local_solution(&pt, LocalKind::V11, 512)?;
    let (a, ad) = v10.evaluate(0.5)?;
    let (b, bd) = v11.evaluate(0.5)?;
    Ok(ConditionValue {
        value: a * bd - ad * b,
        derivative: None,
        terms_used: v10.series.n_terms().max(v11.series.n_terms()),
        scale: (a * bd).abs().max((ad * b).abs()),
    })
}

/// Both eigenfunctions of a doubly degenerate integer-x point on the
/// truncation set: state 1 from the degree-(n-1) polynomial, state 2 from the
/// exponentially weighted degree-n polynomial.
pub fn judd_eigenstates(
    n: u32,
    lambda: f64,
    mu: f64,
) -> Result<(BargmannState, BargmannState), ConditionError> {
    if mu == 0.0 {
        return Err(ConditionError::MuZero);
    }
    if lambda == 0.0 {
        return Err(ConditionError::LambdaZero);
    }
    let cond = judd_condition(n, lambda, mu);
    if cond.normalized().abs() > MEMBERSHIP_TOL {
        return Err(ConditionError::NotOnJuddSet {
            n,
            lambda,
            mu,
            value: cond.value,
        });
    }
    let pt = RabiPoint::new(n as f64, lambda, mu);
    let p = heun_params(&pt);
    let q_coeffs = heun::polynomial_solution(&p, n)?;
    let state1 = wavefunction(
        &pt,
        EntireSolution::ExpPolynomial {
            exp_rate: 0.0,
            coeffs: q_coeffs,
        },
    )?;

    // Second state: v = exp(-alpha y) R_n(y) with R_n of degree n solving the
    // exponent-weighted equation; its recurrence blocks at the same step and
    // the free coefficient c_n is fixed by requiring c_{n+1} = 0.
    let pw = p.exp_weighted();
    let mut r_coeffs = heun::polynomial_solution(&pw, n)?;
    let (q_n, g_n) = step_terms(&pw, n as usize);
    if q_n.abs() < 1e-300 {
        return Err(ConditionError::DegenerateConstruction {
            reason: format!("free coefficient underdetermined at n = {n}"),
        });
    }
    let c_n = -g_n * r_coeffs[n as usize - 1] / q_n;
    r_coeffs.push(c_n);
    let state2 = wavefunction(
        &pt,
        EntireSolution::ExpPolynomial {
            exp_rate: -p.alpha,
            coeffs: r_coeffs,
        },
    )?;

    let zs = crate::rabi::default_samples(lambda);
    for (label, state) in [("polynomial", &state1), ("weighted", &state2)] {
        let r = crate::rabi::residual(state, &zs)?;
        if r > 1e-9 {
            return Err(ConditionError::DegenerateConstruction {
                reason: format!("{label} state residual {r:.3e}"),
            });
        }
    }
    independence_check(&state1, &state2)?;
    Ok((state1, state2))
}

fn step_terms(p: &HeunParams, k: usize) -> (f64, f64) {
    let kf = k as f64;
    let q = kf * (kf - 1.0) + kf * (p.beta + p.gamma + 2.0 - p.alpha) - p.theta;
    let g = p.alpha * (kf - 1.0) + p.theta + p.xi;
    (q, g)
}

fn independence_check(a: &BargmannState, b: &BargmannState) -> Result<(), ConditionError> {
    let l = a.lambda;
    let z1 = num_complex::Complex64::new(0.3 * l, 0.2 * l);
    let z2 = num_complex::Complex64::new(-0.4 * l, 0.5 * l);
    let a1 = a.components(z1)?.0;
    let a2 = a.components(z2)?.0;
    let b1 = b.components(z1)?.0;
    let b2 = b.components(z2)?.0;
    let det = a1 * b2 - a2 * b1;
    let scale = (a1.norm() * b2.norm()).max(a2.norm() * b1.norm()).max(1e-300);
    if det.norm() <= 1e-8 * scale {
        return Err(ConditionError::DegenerateConstruction {
            reason: format!("evaluation determinant {:.3e} below tolerance", det.norm()),
        });
    }
    Ok(())
}

/// Classifies a point already known to lie in the spectrum.
pub fn classify(pt: &RabiPoint, tol: f64) -> Result<SpectralKind, ConditionError> {
    if pt.mu == 0.0 || pt.lambda == 0.0 {
        let degeneracy = if pt.mu == 0.0 { 2 } else { 1 };
        return Ok(SpectralKind {
            kind: SpectralClass::Analytic,
            degeneracy,
        });
    }
    let r = pt.x.round();
    if r >= -0.5 && (pt.x - r).abs() <= EPS_INT {
        let n = r as u32;
        let judd = judd_condition(n, pt.lambda, pt.mu);
        if judd.normalized().abs() <= tol {
            return Ok(SpectralKind {
                kind: SpectralClass::Judd,
                degeneracy: 2,
            });
        }
        let f = new_state_condition_f(n, pt.lambda, pt.mu)?;
        if f.normalized().abs() <= tol {
            return Ok(SpectralKind {
                kind: SpectralClass::NewInteger,
                degeneracy: 1,
            });
        }
        return Err(ConditionError::Unclassifiable {
            n,
            judd: judd.normalized(),
            f: f.normalized(),
            tol,
        });
    }
    Ok(SpectralKind {
        kind: SpectralClass::GenericWronskian,
        degeneracy: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn judd_one_is_the_ellipse() {
        let c = judd_condition(1, 0.3, 0.8);
        assert_relative_eq!(c.value, -(4.0 * 0.09 + 0.64 - 1.0), max_relative = 1e-14);
        // On the ellipse the raw value collapses to rounding noise.
        for k in 0..32 {
            let phi = 0.19 * k as f64;
            let (lambda, mu) = (0.5 * phi.cos(), phi.sin());
            assert!(judd_condition(1, lambda, mu).value.abs() < 1e-14);
        }
    }

    #[test]
    fn judd_two_at_lambda_zero_factorizes() {
        for mu in [0.3f64, 0.9, 1.5, 2.2] {
            let c = judd_condition(2, 0.0, mu);
            let expected = (mu * mu - 4.0) * (1.0 - mu * mu);
            assert_relative_eq!(c.value, expected, max_relative = 1e-12, epsilon = 1e-13);
        }
        // Reference closed form at generic lambda.
        let (l, m): (f64, f64) = (0.35, 1.4);
        let c = judd_condition(2, l, m);
        let expected = (4.0 * l * l + m * m - 4.0) * (1.0 - 8.0 * l * l - m * m) - 4.0 * l * l;
        assert_relative_eq!(c.value, expected, max_relative = 1e-12);
    }

    #[test]
    fn judd_five_has_five_roots_at_small_lambda() {
        let lambda = 0.05;
        let mut roots = 0;
        let mut prev = judd_condition(5, lambda, 1e-3).value;
        let mut mu = 1e-3;
        while mu < 6.0 {
            let next_mu = mu + 0.01;
            let next = judd_condition(5, lambda, next_mu).value;
            if prev.signum() != next.signum() {
                roots += 1;
            }
            prev = next;
            mu = next_mu;
        }
        assert_eq!(roots, 5);
    }

    #[test]
    fn wronskian_rejects_integer_and_lambda_zero() {
        assert!(matches!(
            wronskian_condition(&RabiPoint::new(2.0 + 1e-9, 0.5, 1.0)),
            Err(ConditionError::IntegerX { n: 2, .. })
        ));
        assert!(matches!(
            wronskian_condition(&RabiPoint::new(0.5, 0.0, 1.0)),
            Err(ConditionError::LambdaZero)
        ));
    }

    #[test]
    fn wronskian_sign_is_point_independent() {
        let pt = RabiPoint::new(2.0 + std::f64::consts::PI / 10.0, 0.6, 1.3);
        let w4 = wronskian_w_at(&pt, 0.4).unwrap();
        let w5 = wronskian_w_at(&pt, 0.5).unwrap();
        let w6 = wronskian_w_at(&pt, 0.6).unwrap();
        assert_eq!(w4.value.signum(), w5.value.signum());
        assert_eq!(w5.value.signum(), w6.value.signum());
    }

    #[test]
    fn f_and_w_form_are_proportional() {
        // w(1/2) = -F_n / 2^(3n+2) exactly; check the ratio over a mu scan.
        let n = 5u32;
        let factor = -(2f64).powi(-(3 * n as i32 + 2));
        for mu in [0.7f64, 1.9, 3.1, 5.4, 7.2] {
            let f = new_state_condition_f(n, 0.5, mu).unwrap();
            let w = wronskian_form_w(n, 0.5, mu).unwrap();
            assert_relative_eq!(w.value, factor * f.value, max_relative = 1e-9);
        }
    }

    #[test]
    fn f_rejects_lambda_zero() {
        assert!(matches!(
            new_state_condition_f(5, 0.0, 2.0),
            Err(ConditionError::LambdaZero)
        ));
    }

    #[test]
    fn conditions_are_even_in_lambda_and_mu() {
        let pt = RabiPoint::new(1.37, 0.62, 2.13);
        let w0 = wronskian_condition(&pt).unwrap().value;
        for (l, m) in [(-0.62, 2.13), (0.62, -2.13), (-0.62, -2.13)] {
            let w = wronskian_condition(&RabiPoint::new(1.37, l, m)).unwrap().value;
            assert_eq!(w0.to_bits(), w.to_bits());
        }
        let f0 = new_state_condition_f(3, 0.41, 1.7).unwrap().value;
        let f1 = new_state_condition_f(3, -0.41, -1.7).unwrap().value;
        assert_eq!(f0.to_bits(), f1.to_bits());
        let j0 = judd_condition(4, 0.33, 2.9).value;
        let j1 = judd_condition(4, -0.33, 2.9).value;
        assert_eq!(j0.to_bits(), j1.to_bits());
    }

    #[test]
    fn judd_eigenstates_at_the_reference_point() {
        let (s1, s2) = judd_eigenstates(1, 0.4, 0.6).unwrap();
        assert_relative_eq!(s1.energy, 0.84, max_relative = 1e-14);
        let zs = crate::rabi::default_samples(0.4);
        assert!(crate::rabi::residual(&s1, &zs).unwrap() <= 1e-10);
        assert!(crate::rabi::residual(&s2, &zs).unwrap() <= 1e-10);
        // State 1 carries the constant polynomial, state 2 degree 1.
        match &s1.v {
            EntireSolution::ExpPolynomial { coeffs, exp_rate } => {
                assert_eq!(coeffs.len(), 1);
                assert_eq!(*exp_rate, 0.0);
            }
            _ => panic!("unexpected representation"),
        }
        match &s2.v {
            EntireSolution::ExpPolynomial { coeffs, exp_rate } => {
                assert_eq!(coeffs.len(), 2);
                assert!(*exp_rate < 0.0);
            }
            _ => panic!("unexpected representation"),
        }
    }

    #[test]
    fn judd_eigenstates_off_the_set_is_an_error() {
        assert!(matches!(
            judd_eigenstates(1, 0.4, 0.61),
            Err(ConditionError::NotOnJuddSet { .. })
        ));
    }

    #[test]
    fn classify_cases() {
        let k = classify(&RabiPoint::new(1.0, 0.4, 0.6), 1e-8).unwrap();
        assert_eq!(k.kind, SpectralClass::Judd);
        assert_eq!(k.degeneracy, 2);
        let g = classify(&RabiPoint::new(1.3, 0.4, 0.6), 1e-8).unwrap();
        assert_eq!(g.kind, SpectralClass::GenericWronskian);
        let a = classify(&RabiPoint::new(1.0, 0.7, 0.0), 1e-8).unwrap();
        assert_eq!(a.kind, SpectralClass::Analytic);
        assert_eq!(a.degeneracy, 2);
        assert!(matches!(
            classify(&RabiPoint::new(1.0, 0.5, 0.9), 1e-8),
            Err(ConditionError::Unclassifiable { .. })
        ));
    }
}
