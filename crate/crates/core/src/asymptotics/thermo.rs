use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::special_fn::{Dim, LogDimension, EULER_GAMMA, EXACT_LIMIT};
use crate::spin::TwiceSpin;
use crate::su2_dims::ln_sector_dims;
use crate::typical_entropy::{average_entropy_of, variance_entropy_of, EntropyStats};

/// A point `(N, N_A, j)` viewed through the densities `f = N_A/N` and
/// `s = 2j/N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThermoPoint {
    n: u64,
    n_a: u64,
    j: TwiceSpin,
}

impl ThermoPoint {
    pub fn new(n: u64, n_a: u64, j: TwiceSpin) -> Result<Self> {
        let tj = u64::from(j.twice());
        if n_a == 0 || n_a >= n {
            return Err(Error::InvalidArgument(format!(
                "need 0 < n_a < n, got n_a = {n_a}, n = {n}"
            )));
        }
        if tj > n || (n + tj) % 2 != 0 {
            return Err(Error::Parity {
                n,
                twice: tj as i64,
            });
        }
        Ok(ThermoPoint { n, n_a, j })
    }

    /// Maps `(N, f, s)` back to integers; fails unless `fN` and `sN` are
    /// integers (to 1e-9).
    pub fn from_fractions(n: u64, f: f64, s: f64) -> Result<Self> {
        let to_int = |x: f64, what: &str| {
            let r = x.round();
            if (x - r).abs() > 1e-9 || r < 0.0 {
                Err(Error::InvalidArgument(format!(
                    "{what} = {x} is not an integer for N = {n}"
                )))
            } else {
                Ok(r as u64)
            }
        };
        let n_a = to_int(f * n as f64, "f*N")?;
        let tj = to_int(s * n as f64, "s*N")?;
        let tj = u32::try_from(tj).map_err(|_| Error::InvalidArgument("spin too large".into()))?;
        ThermoPoint::new(n, n_a, TwiceSpin::new(tj))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_a(&self) -> u64 {
        self.n_a
    }

    pub fn j(&self) -> TwiceSpin {
        self.j
    }

    pub fn f(&self) -> f64 {
        self.n_a as f64 / self.n as f64
    }

    pub fn s(&self) -> f64 {
        f64::from(self.j.twice()) / self.n as f64
    }

    /// Exactly half of the system.
    pub fn is_half(&self) -> bool {
        2 * self.n_a == self.n
    }
}

fn check_s(s: f64, open_top: bool) -> Result<()> {
    let ok = if open_top {
        (0.0..1.0).contains(&s)
    } else {
        (0.0..=1.0).contains(&s)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "spin density s = {s} out of range"
        )))
    }
}

/// `β(s) = −(1−s)/2 log((1−s)/2) − (1+s)/2 log((1+s)/2)`.
///
/// ```
/// use symres::asymptotics::beta;
/// assert!((beta(0.0).unwrap() - 2f64.ln()).abs() < 1e-15);
/// assert_eq!(beta(1.0).unwrap(), 0.0);
/// ```
pub fn beta(s: f64) -> Result<f64> {
    check_s(s, false)?;
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    Ok(term((1.0 - s) / 2.0) + term((1.0 + s) / 2.0))
}

/// `β'(s) = −½ log((1+s)/(1−s))`.
pub fn beta_prime(s: f64) -> Result<f64> {
    check_s(s, true)?;
    Ok(-0.5 * ((1.0 + s) / (1.0 - s)).ln())
}

/// `β''(s) = −1/(1−s²)`.
pub fn beta_second(s: f64) -> Result<f64> {
    check_s(s, true)?;
    Ok(-1.0 / (1.0 - s * s))
}

fn interior(p: &ThermoPoint) -> Result<f64> {
    let s = p.s();
    if s <= 0.0 || s >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "s = {s} is extremal; use avg_thermo_j0 or jmax_stats"
        )));
    }
    Ok(s)
}

/// Large-`N` mean entropy at fixed `0 < s < 1`, through order one.
///
/// ```
/// use symres::asymptotics::{avg_thermo, beta, ThermoPoint};
/// let p = ThermoPoint::from_fractions(4096, 0.25, 0.5).unwrap();
/// let lead = beta(0.5).unwrap() * 0.25 * 4096.0;
/// assert!((avg_thermo(&p).unwrap() - lead).abs() < 2.0);
/// ```
pub fn avg_thermo(p: &ThermoPoint) -> Result<f64> {
    let s = interior(p)?;
    let (f, n) = (p.f(), p.n as f64);
    let b = beta(s)?;
    let l = ((1.0 + s) / (1.0 - s)).ln();
    let q = (1.0 - s) / (2.0 * s) * l;
    if 2 * p.n_a <= p.n {
        let delta = if p.is_half() { 1.0 } else { 0.0 };
        let root = beta_prime(s)?.abs() / (2.0 * PI * beta_second(s)?.abs()).sqrt();
        Ok(b * f * n - root * n.sqrt() * delta
            + (f + (1.0 - f).ln()) / 2.0
            + (1.0 - delta / 2.0) * (2.0 * s / (1.0 + s)).ln()
            - (1.0 - f - delta / 2.0) * q)
    } else {
        Ok(b * (1.0 - f) * n + ((1.0 - f) + f.ln()) / 2.0 + (1.0 - f) * q)
    }
}

/// Natural log of [`var_thermo`], finite even when the variance underflows.
pub fn ln_var_thermo(p: &ThermoPoint) -> Result<f64> {
    let s = interior(p)?;
    let (f, n) = (p.f(), p.n as f64);
    let delta = if p.is_half() { 1.0 } else { 0.0 };
    let pref = f * (1.0 - f) - delta / (2.0 * PI);
    let l = ((1.0 + s) / (1.0 - s)).ln();
    Ok(
        0.5 * (PI / 2.0).ln() + pref.ln() + 1.5 * (1.0 - s).ln() + 2.5 * (1.0 + s).ln()
            - (8.0 * s).ln()
            + 2.0 * l.ln()
            + 1.5 * n.ln()
            - n * beta(s)?,
    )
}

/// Leading large-`N` variance at fixed `0 < s < 1`; exponentially small.
pub fn var_thermo(p: &ThermoPoint) -> Result<f64> {
    Ok(ln_var_thermo(p)?.exp())
}

fn j0_fraction(n: u64, n_a: u64) -> Result<(f64, f64)> {
    if n % 2 != 0 || n_a == 0 || n_a >= n {
        return Err(Error::InvalidArgument(format!(
            "spin 0 needs even N and 0 < N_A < N (N = {n}, N_A = {n_a})"
        )));
    }
    let f = n_a.min(n - n_a) as f64 / n as f64;
    let delta = if 2 * n_a == n { 1.0 } else { 0.0 };
    Ok((f, delta))
}

/// Large-`N` mean entropy at `j = 0`, through order one; exactly symmetric
/// under `N_A ↔ N − N_A`.
pub fn avg_thermo_j0(n: u64, n_a: u64) -> Result<f64> {
    let (f, delta) = j0_fraction(n, n_a)?;
    let nf = n as f64;
    Ok(
        f * nf * LN_2 - 0.5 * nf.ln() - 0.5 * f.ln() + (1.0 - f).ln() + 0.5 * LN_2 + 1.5 * f - 1.0
            + EULER_GAMMA / 2.0
            - 0.5 * delta,
    )
}

/// Leading large-`N` variance at `j = 0`.
pub fn var_thermo_j0(n: u64, n_a: u64) -> Result<f64> {
    let (f, delta) = j0_fraction(n, n_a)?;
    let nf = n as f64;
    let pref = (2.0 * PI).sqrt() / 4.0 * (f * (1.5 * f - 1.0) + PI * PI / 8.0 - 1.0 + 0.25 * delta);
    Ok(pref * (1.5 * nf.ln() - nf * LN_2).exp())
}

/// At `j = N/2` every state has zero restricted entropy.
pub fn jmax_stats() -> EntropyStats {
    EntropyStats {
        mean: 0.0,
        variance: 0.0,
    }
}

/// Largest `N` accepted by the log-domain evaluators.
pub const LOGDOMAIN_MAX_N: u64 = 4000;

fn log_dims(n: u64, n_a: u64, j: TwiceSpin) -> Result<(Vec<(Dim, Dim)>, Dim)> {
    if n > LOGDOMAIN_MAX_N {
        return Err(Error::SizeLimit(format!("N <= {LOGDOMAIN_MAX_N}, got {n}")));
    }
    let (rows, total) = ln_sector_dims(n, n_a, j)?;
    // small dimensions are recovered exactly so both evaluation paths agree
    let wrap = |x: f64| {
        let x = x.max(0.0);
        if x < (EXACT_LIMIT as f64).ln() {
            Ok(Dim::Exact(x.exp().round() as u64))
        } else {
            LogDimension::new(x).map(Dim::Log)
        }
    };
    let sectors = rows
        .into_iter()
        .map(|(_, d, b)| Ok((wrap(d)?, wrap(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((sectors, wrap(total)?))
}

/// The exact mean entropy evaluated with log-gamma dimensions, usable for
/// `N` in the thousands.
pub fn exact_logdomain_average(n: u64, n_a: u64, j: TwiceSpin) -> Result<f64> {
    let (sectors, total) = log_dims(n, n_a, j)?;
    Ok(average_entropy_of(&sectors, total))
}

/// The exact variance evaluated with log-gamma dimensions.
pub fn exact_logdomain_variance(n: u64, n_a: u64, j: TwiceSpin) -> Result<f64> {
    let (sectors, total) = log_dims(n, n_a, j)?;
    Ok(variance_entropy_of(&sectors, total))
}

/// Mean and variance together in the log domain.
pub fn exact_logdomain_stats(n: u64, n_a: u64, j: TwiceSpin) -> Result<EntropyStats> {
    let (sectors, total) = log_dims(n, n_a, j)?;
    Ok(EntropyStats {
        mean: average_entropy_of(&sectors, total),
        variance: variance_entropy_of(&sectors, total),
    })
}
