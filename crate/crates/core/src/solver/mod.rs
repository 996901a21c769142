//! Root-finding and curve-tracing driver.
//!
//! Four entry points cover the ways the spectrum is explored:
//!
//! * [`scan_spectrum`] — all admissible energies at one coupling pair, by
//!   bracketing roots of the Wronskian condition in the spectral parameter x
//!   and testing every integer x against the truncation and F conditions;
//! * [`energy_curves`] — spectral curves E(lambda) at fixed mu, chained from
//!   per-lambda scans, with the integer baselines E = n - lambda^2 and the
//!   integer-x points marked;
//! * [`trace_level_set`] — zero contours of a single condition in the
//!   (lambda, mu) plane by marching squares;
//! * [`min_gap`] — the minimal vertical distance between two spectral curves
//!   over a window, for resolving avoided crossings.

mod curves;
mod gap;
mod levelset;
mod root;
mod scan;

pub use curves::energy_curves;
pub use gap::{min_gap, GapReport};
pub use levelset::{trace_level_set, LevelSetCondition};
pub use root::{refine_bracket, Refiner};
pub use scan::{
    attach_oracle, match_with_oracle, scan_spectrum, MatchReport, ScanOutcome, SpectralPoint,
};

use thiserror::Error;

use crate::conditions::{ConditionError, SpectralClass};
use crate::oracle::OracleError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("more than {max} roots located; raise max_roots or narrow the range")]
    TooManyRoots { max: usize },
    #[error("expected exactly {expected} spectral curves in the window, found {found}")]
    CurveCountMismatch { expected: usize, found: usize },
    #[error("root refinement failed: {0}")]
    Refine(String),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Knobs shared by all solver operations.
#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    /// Grid step in x for Wronskian sign scans.
    pub grid_step: f64,
    /// Bracket refinement algorithm.
    pub bracket_refiner: Refiner,
    /// Normalized-residual tolerance a located root must satisfy.
    pub root_tol: f64,
    /// Distance below which x counts as a non-negative integer.
    pub eps_int: f64,
    /// Hard cap on roots per scan (defense against runaway ranges).
    pub max_roots: usize,
    /// Lambda step for energy-curve chaining.
    pub curve_step: f64,
    /// Marching-squares cells along the wider window axis.
    pub trace_cells: usize,
    /// Lambda step of the refined scans inside `min_gap`.
    pub gap_scan_step: f64,
    /// Also emit E = (n + 1/2) - lambda^2 baselines from `energy_curves`.
    pub half_integer_baselines: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid_step: 0.02,
            bracket_refiner: Refiner::Bisection,
            root_tol: 1e-10,
            eps_int: 1e-6,
            max_roots: 512,
            curve_step: 0.005,
            trace_cells: 220,
            gap_scan_step: 1e-4,
            half_integer_baselines: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let positives = [
            ("grid_step", self.grid_step),
            ("root_tol", self.root_tol),
            ("eps_int", self.eps_int),
            ("curve_step", self.curve_step),
            ("gap_scan_step", self.gap_scan_step),
        ];
        for (name, v) in positives {
            if !v.is_finite() || v <= 0.0 {
                return Err(SolverError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.grid_step >= 0.5 {
            return Err(SolverError::InvalidConfig(format!(
                "grid_step {} would stride across integer gaps",
                self.grid_step
            )));
        }
        if self.eps_int > 1e-2 {
            return Err(SolverError::InvalidConfig(format!(
                "eps_int {} swallows a visible neighborhood of every integer",
                self.eps_int
            )));
        }
        if self.eps_int < crate::conditions::EPS_INT {
            return Err(SolverError::InvalidConfig(format!(
                "eps_int {} is below the condition evaluator's own integer guard {}",
                self.eps_int,
                crate::conditions::EPS_INT
            )));
        }
        if self.max_roots == 0 {
            return Err(SolverError::InvalidConfig("max_roots must be nonzero".into()));
        }
        if self.trace_cells < 8 {
            return Err(SolverError::InvalidConfig(format!(
                "trace_cells {} is below the minimum of 8",
                self.trace_cells
            )));
        }
        Ok(())
    }

    /// Half-width of the x-interval around each non-negative integer that is
    /// handled by the integer-x conditions instead of the Wronskian.
    pub fn zone_radius(&self) -> f64 {
        10.0 * self.eps_int
    }
}

/// Axis-aligned rectangle; `x` is the horizontal axis (always lambda here),
/// `y` the vertical one (mu or E depending on the plane).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Window {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self, SolverError> {
        if !x_lo.is_finite() || !x_hi.is_finite() || x_lo >= x_hi {
            return Err(SolverError::InvalidRange { lo: x_lo, hi: x_hi });
        }
        if !y_lo.is_finite() || !y_hi.is_finite() || y_lo >= y_hi {
            return Err(SolverError::InvalidRange { lo: y_lo, hi: y_hi });
        }
        Ok(Window {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        })
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_lo && x <= self.x_hi && y >= self.y_lo && y <= self.y_hi
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }
}

/// Coordinate plane of a curve set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneKind {
    /// (lambda, mu): level sets of one condition.
    LambdaMu,
    /// (lambda, E): spectral curves at fixed mu.
    LambdaE,
}

/// What a polyline represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveRole {
    Spectrum,
    Baseline,
    HalfBaseline,
}

/// Ordered point list in the set's plane.
#[derive(Debug, Clone)]
pub struct Polyline {
    pub label: String,
    pub role: CurveRole,
    pub points: Vec<[f64; 2]>,
}

impl Polyline {
    /// True when any vertex or edge enters the window.
    pub fn intersects(&self, w: &Window) -> bool {
        if self.points.iter().any(|p| w.contains(p[0], p[1])) {
            return true;
        }
        self.points.windows(2).any(|s| {
            // Conservative segment test: bounding boxes overlap.
            let (a, b) = (s[0], s[1]);
            a[0].min(b[0]) <= w.x_hi
                && a[0].max(b[0]) >= w.x_lo
                && a[1].min(b[1]) <= w.y_hi
                && a[1].max(b[1]) >= w.y_lo
        })
    }
}

/// An isolated labeled point (Judd or new-integer state on a curve plot).
#[derive(Debug, Clone, Copy)]
pub struct Marker {
    pub pos: [f64; 2],
    pub kind: SpectralClass,
    pub degeneracy: u8,
    /// The integer spectral parameter the marker sits on.
    pub n: u32,
}

/// A family of curves in one plane, with markers and any warnings raised
/// while building it.
#[derive(Debug, Clone)]
pub struct CurveSet {
    pub plane: PlaneKind,
    pub label: String,
    /// The fixed mu of a LambdaE set; None for LambdaMu planes.
    pub mu: Option<f64>,
    pub curves: Vec<Polyline>,
    pub markers: Vec<Marker>,
    pub warnings: Vec<String>,
}

impl CurveSet {
    pub fn spectrum_curves(&self) -> impl Iterator<Item = &Polyline> {
        self.curves
            .iter()
            .filter(|c| c.role == CurveRole::Spectrum)
    }

    /// Spectrum polylines that enter the window.
    pub fn curves_in_window(&self, w: &Window) -> Vec<&Polyline> {
        self.spectrum_curves().filter(|c| c.intersects(w)).collect()
    }
}
