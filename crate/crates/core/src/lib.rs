//! Spectral determination of the quantum Rabi model
//!
//! ```text
//! H = a'a + mu sigma_z + lambda (sigma_+ + sigma_-)(a' + a)
//! ```
//!
//! through the confluent Heun equation satisfied by the Bargmann-space
//! eigenfunctions. The crate exposes:
//!
//! * [`heun`] — Frobenius series, coefficient recurrences and polynomial
//!   truncation for the confluent Heun equation;
//! * [`rabi`] — the mapping between model parameters and Heun accessory
//!   parameters, local solutions, and eigenfunction reconstruction;
//! * [`conditions`] — the three spectral conditions: the Wronskian condition
//!   for non-integer spectral parameter, the polynomial-truncation condition
//!   for the doubly degenerate integer levels, and the transcendental
//!   condition selecting the remaining non-degenerate integer levels;
//! * [`oracle`] — an independent truncated-Fock-space diagonalization used to
//!   cross-check every computed level;
//! * [`solver`] — root scans over the spectral parameter, level curves over
//!   the coupling, level-set tracing in parameter planes, and gap
//!   measurement;
//! * [`acceptance`] — the end-to-end checks gating a release.
//!
//! The spectral parameter throughout is `x = E + lambda^2`; the couplings are
//! the light-matter coupling `lambda` and the level splitting `mu` (cavity
//! frequency 1). All conditions are even in `lambda` and `mu` separately.

pub mod acceptance;
pub mod conditions;
pub mod heun;
pub mod oracle;
pub mod rabi;
pub mod solver;
