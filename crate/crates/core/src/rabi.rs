//! Mapping between the Rabi model and the confluent Heun equation.
//!
//! In the Bargmann representation the model is the first-order system
//!
//! ```text
//! (z + lambda) psi1' = (E - lambda z) psi1 - mu psi2
//! (z - lambda) psi2' = (E + lambda z) psi2 - mu psi1
//! ```
//!
//! for entire functions (psi1, psi2). Substituting z = lambda(2y - 1) and
//! psi1 = exp(2 lambda^2 y) v(y) turns the eliminated second-order equation
//! into the confluent Heun equation of [`crate::heun`] with
//!
//! ```text
//! alpha = 4 lambda^2      beta = -x      gamma = -1 - x
//! delta = 2 lambda^2      eta  = (1 + x + x^2)/2 - mu^2 - 2 lambda^2 (x + 1)
//! ```
//!
//! where x = E + lambda^2 is the spectral parameter. Everything here is even
//! in lambda and in mu separately: only their squares enter the parameters.

use num_complex::Complex64;
use thiserror::Error;

use crate::heun::{
    self, frobenius_series, Center, FrobeniusSeries, HeunError, HeunParams,
};

/// Series length requested when building local solutions.
pub const LOCAL_N_MAX: usize = 384;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("recurrence blocked at coefficient {index}; x is a non-negative integer")]
    BlockedRecurrence { index: usize },
    #[error("lambda = 0 degenerates the y plane mapping")]
    DegenerateMap,
    #[error("mu = 0 decouples the system; use the analytic branch")]
    MuZero,
    #[error("the supplied solution is not an entire candidate: {reason}")]
    NotEntire { reason: String },
    #[error("sample point z = {z} coincides with a singular coefficient (z = ±lambda)")]
    SamplePointSingular { z: Complex64 },
    #[error("series evaluation failed: {0}")]
    Series(#[from] HeunError),
}

/// A point of the parameter space: spectral parameter x = E + lambda^2 plus
/// the couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiPoint {
    pub x: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl RabiPoint {
    pub fn new(x: f64, lambda: f64, mu: f64) -> Self {
        RabiPoint { x, lambda, mu }
    }

    pub fn from_energy(energy: f64, lambda: f64, mu: f64) -> Self {
        RabiPoint {
            x: energy + lambda * lambda,
            lambda,
            mu,
        }
    }

    pub fn energy(&self) -> f64 {
        self.x - self.lambda * self.lambda
    }
}

/// Maps a parameter-space point to the accessory parameters of the equation.
pub fn heun_params(pt: &RabiPoint) -> HeunParams {
    let l2 = pt.lambda * pt.lambda;
    let m2 = pt.mu * pt.mu;
    let x = pt.x;
    let eta = 0.5 * (1.0 + x + x * x) - m2 - 2.0 * l2 * (x + 1.0);
    HeunParams::from_accessory(4.0 * l2, -x, -1.0 - x, 2.0 * l2, eta)
}

/// The four parameter tuples used by the spectral conditions.
///
/// A0 is the direct mapping; A1 is A0 seen from the other singular point;
/// C0 and C1 are the exponent-flipped versions entering the integer-x
/// conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleTag {
    A0,
    A1,
    C0,
    C1,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamTuple {
    pub tag: TupleTag,
    pub params: HeunParams,
}

pub fn param_tuple(pt: &RabiPoint, tag: TupleTag) -> ParamTuple {
    let a0 = heun_params(pt);
    let params = match tag {
        TupleTag::A0 => a0,
        TupleTag::A1 => a0.swap_centers(),
        TupleTag::C0 => HeunParams::from_accessory(a0.alpha, -a0.beta, -a0.gamma, a0.delta, a0.eta),
        TupleTag::C1 => HeunParams::from_accessory(
            -a0.alpha,
            -a0.gamma,
            a0.beta,
            -a0.delta,
            a0.delta + a0.eta,
        ),
    };
    ParamTuple { tag, params }
}

/// The four local solutions of the transformed equation.
///
/// `H0`/`H1` are the exponent-0 solutions at y = 0 and y = 1. `V10`/`V11` are
/// the other-exponent solutions used when x = n is a non-negative integer,
/// carrying the prefactors y^x (1-y)^(1+x) and (1-y)^(1+x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalKind {
    H0,
    H1,
    V10,
    V11,
}

/// One local Frobenius solution bundled with its prefactor powers, so that
/// `value = y^pow_y (1-y)^pow_one_minus_y * series(y)`.
#[derive(Debug, Clone)]
pub struct LocalSolution {
    pub tuple: ParamTuple,
    pub series: FrobeniusSeries,
    pub pow_y: f64,
    pub pow_one_minus_y: f64,
}

impl LocalSolution {
    /// Value and d/dy at an interior point 0 < y < 1.
    pub fn evaluate(&self, y: f64) -> Result<(f64, f64), MapError> {
        let (v, d, _) = self.evaluate_d2(y)?;
        Ok((v, d))
    }

    /// Value plus first and second y-derivatives.
    pub fn evaluate_d2(&self, y: f64) -> Result<(f64, f64, f64), MapError> {
        let (s, sd, sdd) = heun::evaluate_d2(&self.series, y)?;
        let a = self.pow_y;
        let b = self.pow_one_minus_y;
        if a == 0.0 && b == 0.0 {
            return Ok((s, sd, sdd));
        }
        let p = y.powf(a) * (1.0 - y).powf(b);
        // logarithmic derivatives of the prefactor
        let l1 = a / y - b / (1.0 - y);
        let l2 = -a / (y * y) - b / ((1.0 - y) * (1.0 - y));
        let v = p * s;
        let d = p * (l1 * s + sd);
        let dd = p * ((l2 + l1 * l1) * s + 2.0 * l1 * sd + sdd);
        Ok((v, d, dd))
    }
}

/// Builds one of the four local solutions at a parameter-space point.
pub fn local_solution(pt: &RabiPoint, which: LocalKind, n_max: usize) -> Result<LocalSolution, MapError> {
    let a0 = heun_params(pt);
    let (tuple, center, pow_y, pow_1my, series_params) = match which {
        LocalKind::H0 => (param_tuple(pt, TupleTag::A0), Center::Zero, 0.0, 0.0, a0),
        LocalKind::H1 => (param_tuple(pt, TupleTag::A1), Center::One, 0.0, 0.0, a0),
        LocalKind::V10 => {
            let t = param_tuple(pt, TupleTag::C0);
            (t, Center::Zero, -a0.beta, -a0.gamma, t.params)
        }
        LocalKind::V11 => {
            let t = param_tuple(pt, TupleTag::C1);
            // The series for center One is built from the pre-swap parameter
            // set; swapping C1 back gives the gamma-flipped direct tuple.
            let pre = t.params.swap_centers();
            (t, Center::One, 0.0, -a0.gamma, pre)
        }
    };
    let series = frobenius_series(&series_params, center, 0.0, n_max)?;
    if let Some(index) = series.truncation_blocked_at {
        return Err(MapError::BlockedRecurrence { index });
    }
    Ok(LocalSolution {
        tuple,
        series,
        pow_y,
        pow_one_minus_y: pow_1my,
    })
}

/// Representation of an entire solution v(y) of the transformed equation.
#[derive(Debug, Clone)]
pub enum EntireSolution {
    /// v(y) = exp(exp_rate * y) * (c_0 + c_1 y + ...).
    ExpPolynomial { exp_rate: f64, coeffs: Vec<f64> },
    /// Two exponent-0 local series verified to be proportional, glued on the
    /// overlap of their disks: v = series at 0 for |y| <= |1-y|, otherwise
    /// `one_scale` times the series at 1.
    MatchedPair {
        at_zero: Box<FrobeniusSeries>,
        at_one: Box<FrobeniusSeries>,
        one_scale: f64,
    },
}

fn poly_eval_c(c: &[f64], y: Complex64) -> (Complex64, Complex64, Complex64) {
    let (mut v, mut d, mut dd) = (
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    );
    for &ck in c.iter().rev() {
        dd = dd * y + 2.0 * d;
        d = d * y + v;
        v = v * y + ck;
    }
    (v, d, dd)
}

fn series_eval_c(s: &FrobeniusSeries, u: Complex64) -> Result<(Complex64, Complex64, Complex64), MapError> {
    if s.exponent != 0.0 {
        return Err(MapError::NotEntire {
            reason: format!("series exponent {} is not 0", s.exponent),
        });
    }
    if u.norm() >= 1.0 {
        return Err(MapError::Series(HeunError::OutsideDisk { dist: u.norm() }));
    }
    let scale = s.log_scale.exp();
    let (v, d, dd) = poly_eval_c(&s.coeffs, u);
    Ok((v * scale, d * scale, dd * scale))
}

impl EntireSolution {
    /// Value plus first and second derivatives in y at a complex point.
    pub fn evaluate(&self, y: Complex64) -> Result<(Complex64, Complex64, Complex64), MapError> {
        match self {
            EntireSolution::ExpPolynomial { exp_rate, coeffs } => {
                let (p, pd, pdd) = poly_eval_c(coeffs, y);
                let r = *exp_rate;
                let e = (r * y).exp();
                Ok((e * p, e * (r * p + pd), e * (r * r * p + 2.0 * r * pd + pdd)))
            }
            EntireSolution::MatchedPair {
                at_zero,
                at_one,
                one_scale,
            } => {
                let u1 = Complex64::new(1.0, 0.0) - y;
                if y.norm() <= u1.norm() {
                    series_eval_c(at_zero, y)
                } else {
                    let (v, d, dd) = series_eval_c(at_one, u1)?;
                    Ok((one_scale * v, -one_scale * d, one_scale * dd))
                }
            }
        }
    }

    fn check_entire(&self) -> Result<(), MapError> {
        if let EntireSolution::MatchedPair { at_zero, at_one, .. } = self {
            for s in [at_zero, at_one] {
                if let Some(index) = s.truncation_blocked_at {
                    return Err(MapError::NotEntire {
                        reason: format!("component series blocked at coefficient {index}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Eigenfunction pair of the Bargmann system, reconstructed from an entire
/// solution v of the transformed equation via psi1 = exp(2 lambda^2 y) v(y),
/// y = z/(2 lambda) + 1/2, and the first line of the system for psi2.
#[derive(Debug, Clone)]
pub struct BargmannState {
    pub lambda: f64,
    pub mu: f64,
    pub energy: f64,
    pub v: EntireSolution,
}

pub fn wavefunction(pt: &RabiPoint, v: EntireSolution) -> Result<BargmannState, MapError> {
    if pt.lambda == 0.0 {
        return Err(MapError::DegenerateMap);
    }
    if pt.mu == 0.0 {
        return Err(MapError::MuZero);
    }
    v.check_entire()?;
    Ok(BargmannState {
        lambda: pt.lambda,
        mu: pt.mu,
        energy: pt.energy(),
        v,
    })
}

impl BargmannState {
    /// psi1, psi1', psi2, psi2' at a complex point z not equal to ±lambda.
    pub fn components(&self, z: Complex64) -> Result<(Complex64, Complex64, Complex64, Complex64), MapError> {
        let l = self.lambda;
        let e = self.energy;
        let m = self.mu;
        if (z - l).norm() < 1e-12 * (1.0 + l.abs()) || (z + l).norm() < 1e-12 * (1.0 + l.abs()) {
            return Err(MapError::SamplePointSingular { z });
        }
        let y = z / (2.0 * l) + 0.5;
        let (v, vd, vdd) = self.v.evaluate(y)?;
        let s = 2.0 * l * l; // exp factor rate in y
        let ey = (s * y).exp();
        let psi1 = ey * v;
        // d/dz = (1/(2 lambda)) d/dy
        let inv = 1.0 / (2.0 * l);
        let psi1_d = ey * (s * v + vd) * inv;
        let psi1_dd = ey * (s * s * v + 2.0 * s * vd + vdd) * inv * inv;
        // mu psi2 = (E - lambda z) psi1 - (z + lambda) psi1'
        let psi2 = ((e - l * z) * psi1 - (z + l) * psi1_d) / m;
        let psi2_d = (-l * psi1 + (e - l * z) * psi1_d - psi1_d - (z + l) * psi1_dd) / m;
        Ok((psi1, psi1_d, psi2, psi2_d))
    }
}

/// Maximum normalized defect of both lines of the Bargmann system over the
/// sample points.
pub fn residual(state: &BargmannState, sample_zs: &[Complex64]) -> Result<f64, MapError> {
    residual_of(
        &|z| state.components(z),
        state.energy,
        state.lambda,
        state.mu,
        sample_zs,
    )
}

/// Same defect measure for an arbitrary component callable; lets tests inject
/// perturbations.
pub fn residual_of(
    components: &dyn Fn(Complex64) -> Result<(Complex64, Complex64, Complex64, Complex64), MapError>,
    energy: f64,
    lambda: f64,
    mu: f64,
    sample_zs: &[Complex64],
) -> Result<f64, MapError> {
    let mut worst: f64 = 0.0;
    for &z in sample_zs {
        let (p1, p1d, p2, p2d) = components(z)?;
        let line1 = (z + lambda) * p1d - (energy - lambda * z) * p1 + mu * p2;
        let line2 = (z - lambda) * p2d - (energy + lambda * z) * p2 + mu * p1;
        let scale = p1.norm().max(p2.norm()).max(1e-300);
        worst = worst.max(line1.norm() / scale).max(line2.norm() / scale);
    }
    Ok(worst)
}

/// Default residual sample points, scaled by lambda so they stay clear of the
/// singular points ±lambda and inside the series disks.
pub fn default_samples(lambda: f64) -> Vec<Complex64> {
    let l = lambda.abs().max(1e-3);
    vec![
        Complex64::new(0.3 * l, 0.4 * l),
        Complex64::new(-0.5 * l, 0.2 * l),
        Complex64::new(0.0, 1.2 * l),
        Complex64::new(0.7 * l, -0.5 * l),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn heun_params_reference_point() {
        let p = heun_params(&RabiPoint::new(0.0, 0.0, 0.0));
        assert_eq!(
            (p.alpha, p.beta, p.gamma, p.delta, p.eta),
            (0.0, 0.0, -1.0, 0.0, 0.5)
        );
        assert_eq!((p.theta, p.xi), (0.0, 0.0));
    }

    #[test]
    fn theta_xi_match_direct_formulas() {
        for &(x, l, m) in &[
            (0.5, 0.5, 1.0),
            (1.0, 0.4, 0.6),
            (2.3, 0.9, 3.75),
            (-1.2, 0.7, 1.0),
        ] {
            let p = heun_params(&RabiPoint::new(x, l, m));
            let l2 = l * l;
            let m2 = m * m;
            assert_relative_eq!(p.theta, 4.0 * l2 + m2 - x * x, epsilon = 1e-12);
            assert_relative_eq!(p.xi, x * (x - 4.0 * l2) - m2, epsilon = 1e-12);
        }
    }

    #[test]
    fn tuples_match_reference_values() {
        let pt = RabiPoint::new(0.5, 0.5, 1.0);
        let a1 = param_tuple(&pt, TupleTag::A1).params;
        assert_eq!(
            (a1.alpha, a1.beta, a1.gamma, a1.delta, a1.eta),
            (-1.0, -1.5, -0.5, -0.5, -0.375)
        );
        let pt2 = RabiPoint::new(2.0, 0.3, 1.0);
        let c0 = param_tuple(&pt2, TupleTag::C0).params;
        assert_relative_eq!(c0.beta, 2.0);
        assert_relative_eq!(c0.gamma, 3.0);
        assert_relative_eq!(c0.alpha, 0.36, max_relative = 1e-14);
    }

    #[test]
    fn a1_transform_is_involutive_bitwise() {
        let pt = RabiPoint::new(1.7, 0.83, 2.4);
        let p = heun_params(&pt);
        let q = p.swap_centers().swap_centers();
        assert_eq!(p.alpha.to_bits(), q.alpha.to_bits());
        assert_eq!(p.beta.to_bits(), q.beta.to_bits());
        assert_eq!(p.gamma.to_bits(), q.gamma.to_bits());
        assert_eq!(p.delta.to_bits(), q.delta.to_bits());
    }

    #[test]
    fn params_even_in_lambda_and_mu() {
        let a = heun_params(&RabiPoint::new(1.3, 0.77, 2.1));
        let b = heun_params(&RabiPoint::new(1.3, -0.77, 2.1));
        let c = heun_params(&RabiPoint::new(1.3, 0.77, -2.1));
        for (u, v) in [(a, b), (a, c)] {
            assert_eq!(u.alpha.to_bits(), v.alpha.to_bits());
            assert_eq!(u.eta.to_bits(), v.eta.to_bits());
            assert_eq!(u.theta.to_bits(), v.theta.to_bits());
            assert_eq!(u.xi.to_bits(), v.xi.to_bits());
        }
    }

    #[test]
    fn h0_blocks_at_positive_integer_x() {
        let pt = RabiPoint::new(3.0, 0.1, 0.5);
        match local_solution(&pt, LocalKind::H0, 64) {
            Err(MapError::BlockedRecurrence { index }) => assert_eq!(index, 3),
            other => panic!("expected blocked recurrence, got {other:?}"),
        }
    }

    #[test]
    fn h1_blocks_at_x_zero() {
        let pt = RabiPoint::new(0.0, 0.1, 0.5);
        assert!(matches!(
            local_solution(&pt, LocalKind::H1, 64),
            Err(MapError::BlockedRecurrence { index: 1 })
        ));
    }

    #[test]
    fn v10_prefactor_powers() {
        let pt = RabiPoint::new(5.0, 0.8, 2.0);
        let v10 = local_solution(&pt, LocalKind::V10, 64).unwrap();
        assert_eq!((v10.pow_y, v10.pow_one_minus_y), (5.0, 6.0));
        let v11 = local_solution(&pt, LocalKind::V11, 64).unwrap();
        assert_eq!((v11.pow_y, v11.pow_one_minus_y), (0.0, 6.0));
    }

    #[test]
    fn local_solutions_satisfy_the_equation() {
        // Non-integer x: H0 and H1 solve the direct equation.
        let pt = RabiPoint::new(0.5, 0.5, 1.0);
        let p = heun_params(&pt);
        for kind in [LocalKind::H0, LocalKind::H1] {
            let s = local_solution(&pt, kind, 384).unwrap();
            for &y in &[0.25, 0.5, 0.75] {
                let triple = s.evaluate_d2(y).unwrap();
                let r = crate::heun::ode_residual(&p, triple, y);
                let scale = triple.0.abs().max(triple.1.abs()).max(1.0);
                assert!(r.abs() <= 1e-9 * scale, "{kind:?} y={y}: residual {r:.3e}");
            }
        }
        // Integer x: V10 and V11 solve the same direct equation.
        let pt5 = RabiPoint::new(5.0, 0.8, 2.0);
        let p5 = heun_params(&pt5);
        for kind in [LocalKind::V10, LocalKind::V11] {
            let s = local_solution(&pt5, kind, 384).unwrap();
            for &y in &[0.3, 0.5, 0.7] {
                let triple = s.evaluate_d2(y).unwrap();
                let r = crate::heun::ode_residual(&p5, triple, y);
                let scale = triple.0.abs().max(triple.1.abs()).max(1.0);
                assert!(r.abs() <= 1e-9 * scale, "{kind:?} y={y}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn matched_pair_is_an_eigenfunction_at_a_wronskian_root() {
        // Lowest Wronskian root at (0.7, 1.0), pinned from the spectrum scan.
        let pt = RabiPoint::new(0.594_842_723_894_537_4, 0.7, 1.0);
        let h0 = local_solution(&pt, LocalKind::H0, 512).unwrap();
        let h1 = local_solution(&pt, LocalKind::H1, 512).unwrap();
        let (v0, _) = h0.evaluate(0.5).unwrap();
        let (v1, _) = h1.evaluate(0.5).unwrap();
        let v = EntireSolution::MatchedPair {
            at_zero: Box::new(h0.series),
            at_one: Box::new(h1.series),
            one_scale: v0 / v1,
        };
        // The glue is seamless: both branches give the same value and
        // derivative where the disks overlap.
        for &re in &[0.35, 0.5, 0.65] {
            let y = Complex64::new(re, 0.1);
            let a = v.evaluate(y).unwrap();
            let u = Complex64::new(1.0, 0.0) - y;
            let direct = series_eval_c(
                match &v {
                    EntireSolution::MatchedPair { at_one, .. } => at_one,
                    _ => unreachable!(),
                },
                u,
            )
            .unwrap();
            let b = (v0 / v1 * direct.0, -v0 / v1 * direct.1);
            assert!((a.0 - b.0).norm() <= 1e-10 * a.0.norm().max(1.0));
            assert!((a.1 - b.1).norm() <= 1e-10 * a.1.norm().max(1.0));
        }
        // And the result is a genuine eigenfunction of the first-order system.
        let state = wavefunction(&pt, v).unwrap();
        let r = residual(&state, &default_samples(pt.lambda)).unwrap();
        assert!(r <= 1e-9, "residual {r:.3e}");
    }

    #[test]
    fn wavefunction_rejects_degenerate_parameters() {
        let v = EntireSolution::ExpPolynomial {
            exp_rate: 0.0,
            coeffs: vec![1.0],
        };
        assert!(matches!(
            wavefunction(&RabiPoint::new(1.0, 0.0, 0.6), v.clone()),
            Err(MapError::DegenerateMap)
        ));
        assert!(matches!(
            wavefunction(&RabiPoint::new(1.0, 0.4, 0.0), v),
            Err(MapError::MuZero)
        ));
    }

    #[test]
    fn residual_scales_linearly_with_injected_defect() {
        // Constant v = 1 at the x = 1 Judd point (0.4, 0.6): psi1 ~ exp(lambda z).
        let pt = RabiPoint::from_energy(0.84, 0.4, 0.6);
        let state = wavefunction(
            &pt,
            EntireSolution::ExpPolynomial {
                exp_rate: 0.0,
                coeffs: vec![1.0],
            },
        )
        .unwrap();
        let zs = default_samples(0.4);
        let clean = residual(&state, &zs).unwrap();
        assert!(clean <= 1e-11, "clean residual {clean:.3e}");

        let eps = 1e-3;
        let perturbed = residual_of(
            &|z| {
                let (p1, p1d, p2, p2d) = state.components(z)?;
                Ok((p1, p1d, p2 + eps * z, p2d + eps))
            },
            state.energy,
            state.lambda,
            state.mu,
            &zs,
        )
        .unwrap();
        assert!(
            perturbed > 1e-4 && perturbed < 1e-2,
            "perturbed residual {perturbed:.3e}"
        );
    }

    #[test]
    fn scaling_the_solution_scales_both_components() {
        let pt = RabiPoint::from_energy(0.84, 0.4, 0.6);
        let s1 = wavefunction(
            &pt,
            EntireSolution::ExpPolynomial {
                exp_rate: 0.0,
                coeffs: vec![1.0],
            },
        )
        .unwrap();
        let s7 = wavefunction(
            &pt,
            EntireSolution::ExpPolynomial {
                exp_rate: 0.0,
                coeffs: vec![7.0],
            },
        )
        .unwrap();
        let z = Complex64::new(0.2, 0.1);
        let a = s1.components(z).unwrap();
        let b = s7.components(z).unwrap();
        assert_relative_eq!((b.0 / a.0).re, 7.0, max_relative = 1e-12);
        assert_relative_eq!((b.2 / a.2).re, 7.0, max_relative = 1e-12);
    }

    #[test]
    fn sample_at_singular_point_is_rejected() {
        let pt = RabiPoint::from_energy(0.84, 0.4, 0.6);
        let state = wavefunction(
            &pt,
            EntireSolution::ExpPolynomial {
                exp_rate: 0.0,
                coeffs: vec![1.0],
            },
        )
        .unwrap();
        assert!(matches!(
            state.components(Complex64::new(0.4, 0.0)),
            Err(MapError::SamplePointSingular { .. })
        ));
    }
}
