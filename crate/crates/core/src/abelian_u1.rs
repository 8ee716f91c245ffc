//! The abelian baseline: spin-½ chains with conserved total magnetization.
//!
//! Sectors are labelled by the doubled magnetization `m_A` of the first
//! `N_A` sites; `d = C(N_A, (N_A+m_A)/2)` and `b = C(N_B, (N_B+m−m_A)/2)`.
//! Because every sector projector is itself a local operator, the restricted
//! and ordinary entanglement entropies coincide for states of fixed `m`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{schmidt_spectrum, shannon};
use crate::random_states::SeededSampler;
use crate::recoupling::{entropy_ka, FullStateVector, MAX_SITES};
use crate::su2_dims::{binomial, SectorDims};

const SECTOR_TOL: f64 = 1e-10;

/// Sector dimensions of the fixed-magnetization space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U1SectorDims {
    pub n: u64,
    pub n_a: u64,
    /// Doubled total magnetization.
    pub m: i64,
    dims: SectorDims,
}

impl U1SectorDims {
    /// The same sectors as a generic decomposition, labelled by `2m_A`.
    pub fn as_sector_dims(&self) -> &SectorDims {
        &self.dims
    }

    pub fn total(&self) -> &BigUint {
        self.dims.total()
    }
}

/// Sectors of the `m` space (doubled magnetization) for a split `n_a | n − n_a`.
///
/// ```
/// use symres::abelian_u1::u1_sector_dims;
/// let u = u1_sector_dims(4, 2, 0).unwrap();
/// let dims: Vec<_> = u.as_sector_dims().sectors().iter()
///     .map(|s| (s.label, s.d.to_string(), s.b.to_string())).collect();
/// assert_eq!(dims, [(-2, "1".into(), "1".into()), (0, "2".into(), "2".into()), (2, "1".into(), "1".into())]);
/// ```
pub fn u1_sector_dims(n: u64, n_a: u64, m: i64) -> Result<U1SectorDims> {
    if m.unsigned_abs() > n || (n as i64 + m) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "magnetization {m}/2 impossible for {n} sites"
        )));
    }
    if n_a > n {
        return Err(Error::InvalidArgument(format!(
            "n_a = {n_a} exceeds n = {n}"
        )));
    }
    let n_b = n - n_a;
    let triples = (-(n_a as i64)..=n_a as i64).step_by(2).map(|ma| {
        let d = binomial(n_a, (n_a as i64 + ma) / 2);
        let mb = m - ma;
        let b = binomial(n_b, (n_b as i64 + mb).div_euclid(2));
        let b = if (n_b as i64 + mb) % 2 == 0 {
            b
        } else {
            BigUint::ZERO
        };
        (ma, d, b)
    });
    let dims = SectorDims::from_triples(triples)?;
    debug_assert_eq!(dims.total(), &binomial(n, (n as i64 + m) / 2));
    Ok(U1SectorDims { n, n_a, m, dims })
}

/// Doubled magnetization of a product-basis index (`bit = 0` is up).
pub fn magnetization(index: usize, n: usize) -> i64 {
    n as i64 - 2 * i64::from(index.count_ones())
}

fn fixed_m(psi: &FullStateVector) -> Result<i64> {
    let n = psi.n();
    let mut weights: BTreeMap<i64, f64> = BTreeMap::new();
    for (i, z) in psi.amplitudes().iter().enumerate() {
        *weights.entry(magnetization(i, n)).or_default() += z.norm_sqr();
    }
    let total: f64 = weights.values().sum();
    let (&m, &w) = weights
        .iter()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least one amplitude");
    let residual = ((total - w).max(0.0) / total).sqrt();
    if residual > SECTOR_TOL {
        return Err(Error::OutsideSector { residual });
    }
    Ok(m)
}

/// Restricted entropy from the magnetization blocks, and the ordinary
/// entropy from the full partial trace. They agree for fixed-`m` states.
pub fn u1_entropy_pair(psi: &FullStateVector, n_a: usize) -> Result<(f64, f64)> {
    let n = psi.n();
    if n_a == 0 || n_a >= n {
        return Err(Error::InvalidArgument(format!(
            "1 <= n_a <= n-1 required, got {n_a}"
        )));
    }
    let m = fixed_m(psi)?;
    let n_b = n - n_a;
    let amps = psi.amplitudes();
    let mut number = Vec::new();
    let mut conf = 0.0;
    for ma in (-(n_a as i64)..=n_a as i64).step_by(2) {
        let rows: Vec<usize> = (0..1usize << n_a)
            .filter(|&a| magnetization(a, n_a) == ma)
            .collect();
        let cols: Vec<usize> = (0..1usize << n_b)
            .filter(|&b| magnetization(b, n_b) == m - ma)
            .collect();
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let block = DMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            amps[(rows[r] << n_b) | cols[c]]
        });
        let p = block.norm_squared();
        if p > 0.0 {
            conf += p * shannon(schmidt_spectrum(&block));
        }
        number.push(p);
    }
    let s_ga = conf + shannon(number);
    Ok((s_ga, entropy_ka(psi, n_a)?))
}

/// A random state of `n` sites with doubled magnetization `m`: independent
/// complex Gaussian amplitudes on the allowed configurations.
pub fn random_fixed_m_state(
    n: usize,
    m: i64,
    sampler: &mut SeededSampler,
) -> Result<FullStateVector> {
    if n == 0 || n > MAX_SITES {
        return Err(Error::SizeLimit(format!("1 <= n <= {MAX_SITES} sites")));
    }
    if m.unsigned_abs() > n as u64 || (n as i64 + m) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "magnetization {m}/2 impossible for {n} sites"
        )));
    }
    let mut rng = sampler.next_rng();
    let amps = (0..1usize << n)
        .map(|i| {
            if magnetization(i, n) == m {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            } else {
                Complex64::from(0.0)
            }
        })
        .collect();
    FullStateVector::from_unnormalized(n, amps)
}
