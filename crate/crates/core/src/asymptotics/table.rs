use std::f64::consts::{E, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use super::thermo::{beta, beta_prime, beta_second};
use crate::error::{Error, Result};
use crate::special_fn::EULER_GAMMA;

/// Which spin regime a comparison table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableCase {
    /// `j = N/2`.
    Jmax,
    /// `j = 0`.
    J0,
    /// `s = 2j/N` fixed in `(0, 1)`.
    FixedS,
}

impl TableCase {
    pub const ALL: [TableCase; 3] = [TableCase::Jmax, TableCase::J0, TableCase::FixedS];
}

impl fmt::Display for TableCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableCase::Jmax => "jmax",
            TableCase::J0 => "j0",
            TableCase::FixedS => "fixed_s",
        })
    }
}

impl FromStr for TableCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jmax" => Ok(TableCase::Jmax),
            "j0" => Ok(TableCase::J0),
            "fixed_s" | "fixed-s" => Ok(TableCase::FixedS),
            other => Err(Error::InvalidArgument(format!(
                "unknown table case {other:?}"
            ))),
        }
    }
}

/// Coefficients of `N`, `√N δ`, `log N`, `1` and `δ` in a large-`N`
/// expansion, where `δ` is one exactly at `f = ½`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CoefficientRow {
    pub n: f64,
    pub sqrt_n_delta: f64,
    pub log_n: f64,
    pub constant: f64,
    pub delta: f64,
}

impl CoefficientRow {
    pub fn evaluate(&self, n: f64, half: bool) -> f64 {
        let d = if half { 1.0 } else { 0.0 };
        self.n * n
            + self.sqrt_n_delta * n.sqrt() * d
            + self.log_n * n.ln()
            + self.constant
            + self.delta * d
    }

    pub fn as_array(&self) -> [f64; 5] {
        [
            self.n,
            self.sqrt_n_delta,
            self.log_n,
            self.constant,
            self.delta,
        ]
    }

    fn minus(&self, o: &CoefficientRow) -> CoefficientRow {
        CoefficientRow {
            n: self.n - o.n,
            sqrt_n_delta: self.sqrt_n_delta - o.sqrt_n_delta,
            log_n: self.log_n - o.log_n,
            constant: self.constant - o.constant,
            delta: self.delta - o.delta,
        }
    }
}

/// The G-local mean (derived here) next to the K-local mean.
///
/// The K-local row is an external reference value quoted from prior work on
/// fixed-magnetization states, not something this crate computes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonTable {
    pub case: TableCase,
    pub f: f64,
    pub s: Option<f64>,
    pub ga: CoefficientRow,
    pub ka: CoefficientRow,
    pub ka_external_reference: bool,
}

impl ComparisonTable {
    /// K-local minus G-local, coefficient by coefficient.
    pub fn difference(&self) -> CoefficientRow {
        self.ka.minus(&self.ga)
    }

    pub const COLUMNS: [&'static str; 5] = ["N", "sqrt(N)*delta", "log(N)", "1", "delta"];
}

fn mirror(f: f64) -> f64 {
    f.min(1.0 - f)
}

fn a_ka(f: f64) -> f64 {
    let g = mirror(f);
    1.5 * g + 1.5 * (1.0 - g).ln()
}

fn a_ga(f: f64) -> f64 {
    let g = mirror(f);
    1.5 * g + (1.0 - g).ln() - 0.5 * g.ln() + 0.5 * LN_2 - 1.0 + EULER_GAMMA / 2.0
}

fn magnetic(f: f64) -> f64 {
    0.5 * (PI * E * f * (1.0 - f) / 2.0).ln()
}

fn b_ka(f: f64, s: f64) -> f64 {
    let g = mirror(f);
    let l = ((1.0 + s) / (1.0 - s)).ln();
    (g + (1.0 - g).ln()) / 2.0 - (1.0 - 2.0 * g * (1.0 - s)) / (2.0 * s) * l
        + (2.0 * s.powf(1.5) / (1.0 - s * s).sqrt()).ln()
        + magnetic(g)
}

fn b_ga(f: f64, s: f64) -> f64 {
    let q = (1.0 - s) / (2.0 * s) * ((1.0 + s) / (1.0 - s)).ln();
    if f <= 0.5 {
        (f + (1.0 - f).ln()) / 2.0 - (1.0 - f) * q + (2.0 * s / (1.0 + s)).ln()
    } else {
        ((1.0 - f) + f.ln()) / 2.0 + (1.0 - f) * q
    }
}

fn c_ga(s: f64) -> f64 {
    let q = (1.0 - s) / (2.0 * s) * ((1.0 + s) / (1.0 - s)).ln();
    0.5 * q - 0.5 * (2.0 * s / (1.0 + s)).ln()
}

/// Builds the coefficient table for one regime. `s` is only read for
/// [`TableCase::FixedS`].
///
/// ```
/// use symres::asymptotics::{comparison_table, TableCase};
/// let t = comparison_table(TableCase::FixedS, 0.25, Some(0.5)).unwrap();
/// assert_eq!(t.difference().log_n, 0.5);
/// ```
pub fn comparison_table(case: TableCase, f: f64, s: Option<f64>) -> Result<ComparisonTable> {
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "subsystem fraction f = {f} must lie in (0, 1)"
        )));
    }
    let (ga, ka, s) = match case {
        TableCase::Jmax => {
            let ka = CoefficientRow {
                log_n: 0.5,
                constant: magnetic(f),
                ..Default::default()
            };
            (CoefficientRow::default(), ka, None)
        }
        TableCase::J0 => {
            let n = mirror(f) * LN_2;
            let ga = CoefficientRow {
                n,
                sqrt_n_delta: 0.0,
                log_n: -0.5,
                constant: a_ga(f),
                delta: -0.5,
            };
            let ka = CoefficientRow {
                n,
                sqrt_n_delta: 0.0,
                log_n: 0.0,
                constant: a_ka(f),
                delta: -0.5,
            };
            (ga, ka, None)
        }
        TableCase::FixedS => {
            let s =
                s.ok_or_else(|| Error::InvalidArgument("fixed_s needs a spin density".into()))?;
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "spin density s = {s} must lie in (0, 1)"
                )));
            }
            let n = beta(s)? * mirror(f);
            let root = -beta_prime(s)?.abs() / (2.0 * PI * beta_second(s)?.abs()).sqrt();
            let ga = CoefficientRow {
                n,
                sqrt_n_delta: root,
                log_n: 0.0,
                constant: b_ga(f, s),
                delta: c_ga(s),
            };
            let ka = CoefficientRow {
                n,
                sqrt_n_delta: root,
                log_n: 0.5,
                constant: b_ka(f, s),
                delta: 0.0,
            };
            (ga, ka, Some(s))
        }
    };
    Ok(ComparisonTable {
        case,
        f,
        s,
        ga,
        ka,
        ka_external_reference: true,
    })
}
