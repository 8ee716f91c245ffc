//! Large-`N` behaviour of the SU(2) typical entropy.
//!
//! With `f = N_A/N` and `s = 2j/N` fixed, the mean grows like
//! `β(s)·min(f, 1−f)·N`, picks up a `√N` correction exactly at `f = ½`, and
//! is asymmetric under `f ↔ 1−f` at order one. The extremal spins `s = 0`
//! and `s = 1` have their own expansions. [`laplace`] holds the generic
//! one-dimensional Laplace expansion used to derive such formulas.

mod table;
mod thermo;

pub mod laplace;

pub use laplace::{laplace_expand, Curvature, Jet, LaplaceEstimate, LaplaceProblem};
pub use table::{comparison_table, CoefficientRow, ComparisonTable, TableCase};
pub use thermo::{
    avg_thermo, avg_thermo_j0, beta, beta_prime, beta_second, exact_logdomain_average,
    exact_logdomain_stats, exact_logdomain_variance, jmax_stats, ln_var_thermo, var_thermo,
    var_thermo_j0, ThermoPoint, LOGDOMAIN_MAX_N,
};
