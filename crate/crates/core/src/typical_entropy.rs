//! Exact mean and variance of the restricted entanglement entropy over
//! random states of a sector decomposition.
//!
//! For sectors `(d_r, b_r)` with `D = Σ d_r b_r`, writing `ρ_r = d_r b_r / D`,
//!
//! ```text
//! ⟨S⟩    = Σ_r ρ_r φ_r
//! (ΔS)²  = ( Σ_r ρ_r (φ_r² + χ_r) − ⟨S⟩² ) / (D + 1)
//! ```
//!
//! where `φ_r` and `χ_r` are given by [`sector_phi`] and [`sector_chi`].
//! All entropies are in nats.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Neumaier;
use crate::special_fn::{digamma_shifted, ln_biguint, scaled_trigamma, Dim};
use crate::spin::TwiceSpin;
use crate::su2_dims::{dim_invariant, sector_dims, SectorDims};

/// Mean and variance of an entropy distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EntropyStats {
    pub mean: f64,
    pub variance: f64,
}

impl EntropyStats {
    pub fn std(&self) -> f64 {
        self.variance.max(0.0).sqrt()
    }
}

fn is_le(a: Dim, b: Dim) -> bool {
    match (a, b) {
        (Dim::Exact(x), Dim::Exact(y)) => x <= y,
        _ => a.ln() <= b.ln(),
    }
}

fn ratio(a: Dim, b: Dim) -> f64 {
    match (a, b) {
        (Dim::Exact(x), Dim::Exact(y)) => x as f64 / y as f64,
        _ => (a.ln() - b.ln()).exp(),
    }
}

fn min_max(d: Dim, b: Dim) -> (Dim, Dim) {
    if is_le(d, b) {
        (d, b)
    } else {
        (b, d)
    }
}

/// `ρ = d·b / D`.
///
/// ```
/// use symres::typical_entropy::sector_weight;
/// assert!((sector_weight(2u64, 3u64, 9u64) - 2.0 / 3.0).abs() < 1e-16);
/// ```
pub fn sector_weight(d: impl Into<Dim>, b: impl Into<Dim>, total: impl Into<Dim>) -> f64 {
    let (d, b, total) = (d.into(), b.into(), total.into());
    if let (Dim::Exact(x), Dim::Exact(y), Dim::Exact(z)) = (d, b, total) {
        return (u128::from(x) * u128::from(y)) as f64 / z as f64;
    }
    (d.ln() + b.ln() - total.ln()).exp()
}

/// `φ = Ψ(D+1) − Ψ(max+1) − (min−1)/(2 max)`, the mean entropy of a random
/// state restricted to one sector.
///
/// ```
/// use symres::typical_entropy::sector_phi;
/// assert!((sector_phi(2u64, 2u64, 4u64) - 1.0 / 3.0).abs() < 1e-15);
/// ```
pub fn sector_phi(d: impl Into<Dim>, b: impl Into<Dim>, total: impl Into<Dim>) -> f64 {
    let (mn, mx) = min_max(d.into(), b.into());
    let total = total.into();
    let r = ratio(mn, mx);
    (digamma_shifted(total) - digamma_shifted(mx)) - 0.5 * (r - mx.recip())
}

/// `χ = (d+b) Ψ'(max+1) − (D+1) Ψ'(D+1) − (min−1)(d+b+max−1)/(4 max²)`.
pub fn sector_chi(d: impl Into<Dim>, b: impl Into<Dim>, total: impl Into<Dim>) -> f64 {
    let (mn, mx) = min_max(d.into(), b.into());
    let total = total.into();
    let r = ratio(mn, mx);
    let inv = mx.recip();
    // (d+b)Ψ'(max+1) = (1 + min/max)·max Ψ'(max+1), likewise for D.
    scaled_trigamma(mx) * (1.0 + r)
        - scaled_trigamma(total) * (1.0 + total.recip())
        - 0.25 * (r - inv) * (r + 2.0 - inv)
}

fn to_dims(dims: &SectorDims) -> (Vec<(Dim, Dim)>, Dim) {
    let sectors = dims
        .sectors()
        .iter()
        .map(|s| (Dim::from_biguint(&s.d), Dim::from_biguint(&s.b)))
        .collect();
    (sectors, Dim::from_biguint(dims.total()))
}

/// Mean entropy from sector sizes given as [`Dim`]s (exact or logarithmic).
pub fn average_entropy_of(sectors: &[(Dim, Dim)], total: Dim) -> f64 {
    sectors
        .iter()
        .map(|&(d, b)| sector_weight(d, b, total) * sector_phi(d, b, total))
        .collect::<Neumaier>()
        .total()
}

/// Variance from sector sizes given as [`Dim`]s.
pub fn variance_entropy_of(sectors: &[(Dim, Dim)], total: Dim) -> f64 {
    let rows: Vec<(f64, f64, f64)> = sectors
        .iter()
        .map(|&(d, b)| {
            (
                sector_weight(d, b, total),
                sector_phi(d, b, total),
                sector_chi(d, b, total),
            )
        })
        .collect();
    let mean = rows
        .iter()
        .map(|&(w, p, _)| w * p)
        .collect::<Neumaier>()
        .total();
    // centred form of Σρ(φ²+χ) − (Σρφ)², which avoids the cancellation
    let mut bracket = Neumaier::default();
    for &(w, p, c) in &rows {
        bracket.add(w * (p - mean) * (p - mean));
        bracket.add(w * c);
    }
    let inv = total.recip();
    (bracket.total() * inv / (1.0 + inv)).max(0.0)
}

/// Exact mean entropy `⟨S⟩`.
///
/// ```
/// use symres::{su2_dims::sector_dims, typical_entropy::average_entropy, TwiceSpin};
/// let top = sector_dims(8, 3, TwiceSpin::new(8)).unwrap();
/// assert_eq!(average_entropy(&top), 0.0);
/// ```
pub fn average_entropy(dims: &SectorDims) -> f64 {
    let (sectors, total) = to_dims(dims);
    average_entropy_of(&sectors, total)
}

/// Exact variance `(ΔS)²`.
pub fn variance_entropy(dims: &SectorDims) -> f64 {
    let (sectors, total) = to_dims(dims);
    variance_entropy_of(&sectors, total)
}

/// Mean and variance together.
pub fn entropy_stats(dims: &SectorDims) -> EntropyStats {
    let (sectors, total) = to_dims(dims);
    EntropyStats {
        mean: average_entropy_of(&sectors, total),
        variance: variance_entropy_of(&sectors, total),
    }
}

/// Lower and upper bounds bracketing [`average_entropy`]; they differ by at
/// most one half.
pub fn entropy_bounds(dims: &SectorDims) -> (f64, f64) {
    let (sectors, total) = to_dims(dims);
    let mut lower = Neumaier::default();
    let mut upper = Neumaier::default();
    for &(d, b) in &sectors {
        let (mn, mx) = min_max(d, b);
        let w = sector_weight(d, b, total);
        let log_term = total.ln() - mx.ln();
        upper.add(w * log_term);
        lower.add(w * (log_term - 0.5 * ratio(mn, mx)));
    }
    (lower.total(), upper.total())
}

/// `log Σ_r min(d_r, b_r)`, the largest entropy any state can reach.
pub fn max_entropy(dims: &SectorDims) -> f64 {
    let sum: BigUint = dims
        .sectors()
        .iter()
        .map(|s| s.d.clone().min(s.b.clone()))
        .sum();
    ln_biguint(&sum)
}

/// Entropy of the ensemble-averaged reduced state, `Σ_r ρ_r log(D/b_r)`.
pub fn entropy_of_average(dims: &SectorDims) -> f64 {
    let (sectors, total) = to_dims(dims);
    sectors
        .iter()
        .map(|&(d, b)| sector_weight(d, b, total) * (total.ln() - b.ln()))
        .collect::<Neumaier>()
        .total()
}

/// One point of a Page curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRow {
    pub n_a: u64,
    pub mean: f64,
    pub std: f64,
}

/// Mean and standard deviation of the entropy for every subsystem size in
/// `n_a_range`. The endpoints `0` and `n` are allowed and give zero.
///
/// ```
/// use symres::{typical_entropy::page_curve, TwiceSpin};
/// let rows = page_curve(10, TwiceSpin::new(10), 0..=10).unwrap();
/// assert!(rows.iter().all(|r| r.mean == 0.0));
/// ```
pub fn page_curve(n: u64, j: TwiceSpin, n_a_range: RangeInclusive<u64>) -> Result<Vec<PageRow>> {
    if dim_invariant(n, j) == BigUint::ZERO {
        return Err(Error::Parity {
            n,
            twice: i64::from(j.twice()),
        });
    }
    if *n_a_range.end() > n {
        return Err(Error::InvalidArgument(format!(
            "subsystem size exceeds n = {n}"
        )));
    }
    let sizes: Vec<u64> = n_a_range.collect();
    sizes
        .into_par_iter()
        .map(|n_a| {
            if n_a == 0 || n_a == n {
                return Ok(PageRow {
                    n_a,
                    mean: 0.0,
                    std: 0.0,
                });
            }
            let stats = entropy_stats(&sector_dims(n, n_a, j)?);
            Ok(PageRow {
                n_a,
                mean: stats.mean,
                std: stats.std(),
            })
        })
        .collect()
}
