//! Dimensions of SU(2) intertwiner spaces.
//!
//! For `N` spin-½ particles, `D_j` counts the independent ways to couple them
//! to total spin `j`. Splitting the particles into `A` (the first `N_A`) and
//! `B` gives a sector decomposition labelled by the spin `ℓ` of `A`:
//! `D_j = Σ_ℓ d_ℓ · b_{jℓ}` with `d_ℓ = D_ℓ(N_A)` and `b_{jℓ}` the number of
//! ways `ℓ` and the `B` spins couple to `j`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::spin::TwiceSpin;

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `ln C(n, k)`, or `None` when the coefficient is zero.
pub fn ln_binomial(n: u64, k: i64) -> Option<f64> {
    if k < 0 || k as u64 > n {
        return None;
    }
    let (n, k) = (n as f64, k as f64);
    Some(ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0))
}

/// `D_j`: dimension of the spin-`j` intertwiner space of `n` spin-½ particles.
///
/// Zero when `n + 2j` is odd or `j > n/2`.
///
/// ```
/// use symres::{su2_dims::dim_invariant, TwiceSpin};
/// assert_eq!(dim_invariant(6, TwiceSpin::ONE), 9u32.into());
/// assert_eq!(dim_invariant(4, TwiceSpin::ZERO), 2u32.into());
/// ```
pub fn dim_invariant(n: u64, j: TwiceSpin) -> BigUint {
    let tj = u64::from(j.twice());
    if (n + tj) % 2 == 1 || tj > n {
        return BigUint::zero();
    }
    let k = (n + tj) / 2;
    // (2j+1)/(j+n/2+1) · C(n, n/2+j); the division is exact
    binomial(n, k as i64) * (tj + 1) / (k + 1)
}

/// `ln D_j`, or `None` when `D_j = 0`.
pub fn ln_dim_invariant(n: u64, j: TwiceSpin) -> Option<f64> {
    let tj = u64::from(j.twice());
    if (n + tj) % 2 == 1 || tj > n {
        return None;
    }
    let k = (n + tj) / 2;
    Some(ln_binomial(n, k as i64)? + ((tj + 1) as f64).ln() - ((k + 1) as f64).ln())
}

/// Signed pieces of the complement formula in twice-units:
/// `b = C(n_b, (n_b+2j−2ℓ)/2) − num/den · C(n_b, (n_b+2j+2ℓ)/2)`.
struct ComplementTerms {
    n_b: u64,
    k1: i64,
    k2: i64,
    num: i64,
    den: i64,
}

fn complement_terms(n: u64, n_a: u64, j: TwiceSpin, l: TwiceSpin) -> Option<ComplementTerms> {
    if n_a > n {
        return None;
    }
    let n_b = n - n_a;
    let (tj, tl) = (i64::from(j.twice()), i64::from(l.twice()));
    let nb = n_b as i64;
    if (nb + tj + tl) % 2 != 0 {
        return None;
    }
    Some(ComplementTerms {
        n_b,
        k1: (nb + tj - tl) / 2,
        k2: (nb + tj + tl) / 2,
        num: nb - tj - tl,
        den: nb + tj + tl + 2,
    })
}

/// `b_{jℓ}`: number of ways a spin `ℓ` and the `n − n_a` spin-½ particles of
/// `B` couple to total spin `j`.
///
/// ```
/// use symres::{su2_dims::dim_complement, TwiceSpin};
/// let b = dim_complement(6, 3, TwiceSpin::ONE, TwiceSpin::HALF);
/// assert_eq!(b, 3u32.into());
/// ```
pub fn dim_complement(n: u64, n_a: u64, j: TwiceSpin, l: TwiceSpin) -> BigUint {
    let Some(t) = complement_terms(n, n_a, j, l) else {
        return BigUint::zero();
    };
    let c1 = BigInt::from(binomial(t.n_b, t.k1));
    let c2 = BigInt::from(binomial(t.n_b, t.k2));
    let den = BigInt::from(t.den);
    let total = c1 * &den - c2 * BigInt::from(t.num);
    debug_assert!((&total % &den).is_zero());
    let (sign, mag) = (total / den).into_parts();
    debug_assert!(sign != Sign::Minus);
    mag
}

/// `ln b_{jℓ}`, or `None` when `b_{jℓ} = 0`.
pub fn ln_dim_complement(n: u64, n_a: u64, j: TwiceSpin, l: TwiceSpin) -> Option<f64> {
    let t = complement_terms(n, n_a, j, l)?;
    let ln_c1 = ln_binomial(t.n_b, t.k1)?;
    if t.num == 0 || t.k2 as u64 > t.n_b {
        return Some(ln_c1);
    }
    // Δ = ln(c2/c1) as a short telescoping sum, then
    // b = c1 · ((den − num) − num·expm1(Δ)) / den without cancellation.
    let delta: f64 = (0..t.k2 - t.k1)
        .map(|i| ((t.n_b as i64 - t.k1 - i) as f64 / (t.k1 + i + 1) as f64).ln())
        .sum();
    let factor = (t.den - t.num) as f64 - t.num as f64 * delta.exp_m1();
    if factor <= 0.0 {
        return None;
    }
    Some(ln_c1 + factor.ln() - (t.den as f64).ln())
}

/// One sector `(ℓ, d, b)` of a decomposition.
///
/// `label` is a doubled charge: `2ℓ` for SU(2), `2m_A` for U(1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub label: i64,
    pub d: BigUint,
    pub b: BigUint,
}

/// Where an SU(2) decomposition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Su2Origin {
    pub n: u64,
    pub n_a: u64,
    pub j: TwiceSpin,
}

/// A sector decomposition `D = Σ_r d_r b_r`, the input to every entropy
/// formula in this crate.
///
/// Sectors with `d = 0` or `b = 0` are dropped and labels are kept strictly
/// increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorDims {
    sectors: Vec<Sector>,
    total: BigUint,
    origin: Option<Su2Origin>,
}

impl SectorDims {
    /// Builds a decomposition from arbitrary `(label, d, b)` triples.
    ///
    /// ```
    /// use symres::SectorDims;
    /// let dims = SectorDims::from_triples([(0, 2u32, 2u32), (2, 3, 3)]).unwrap();
    /// assert_eq!(dims.total(), &13u32.into());
    /// ```
    pub fn from_triples<I, D>(triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, D, D)>,
        D: Into<BigUint>,
    {
        let mut sectors: Vec<Sector> = triples
            .into_iter()
            .map(|(label, d, b)| Sector {
                label,
                d: d.into(),
                b: b.into(),
            })
            .filter(|s| !s.d.is_zero() && !s.b.is_zero())
            .collect();
        sectors.sort_by_key(|s| s.label);
        if sectors.windows(2).any(|w| w[0].label == w[1].label) {
            return Err(Error::InvalidArgument("duplicate sector label".into()));
        }
        if sectors.is_empty() {
            return Err(Error::EmptySector);
        }
        let total = sectors.iter().map(|s| &s.d * &s.b).sum();
        Ok(SectorDims {
            sectors,
            total,
            origin: None,
        })
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    /// `D = Σ d·b`.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn origin(&self) -> Option<Su2Origin> {
        self.origin
    }

    /// `D` as a machine integer, if it fits.
    pub fn total_usize(&self) -> Option<usize> {
        self.total.to_usize()
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }
}

/// The `ℓ`-decomposition of the spin-`j` intertwiner space of `n` particles
/// with the first `n_a` forming subsystem `A`.
///
/// ```
/// use symres::{su2_dims::sector_dims, TwiceSpin};
/// let dims = sector_dims(6, 3, TwiceSpin::ONE).unwrap();
/// let rows: Vec<_> = dims
///     .sectors()
///     .iter()
///     .map(|s| (s.label, s.d.to_string(), s.b.to_string()))
///     .collect();
/// assert_eq!(rows, [(1, "2".into(), "3".into()), (3, "1".into(), "3".into())]);
/// ```
pub fn sector_dims(n: u64, n_a: u64, j: TwiceSpin) -> Result<SectorDims> {
    if n_a == 0 || n_a >= n {
        return Err(Error::InvalidArgument(format!(
            "subsystem size must satisfy 1 <= n_a <= n-1 (n = {n}, n_a = {n_a})"
        )));
    }
    let total = dim_invariant(n, j);
    if total.is_zero() {
        return Err(Error::Parity {
            n,
            twice: i64::from(j.twice()),
        });
    }
    let mut sectors = Vec::new();
    for tl in (n_a % 2..=n_a).step_by(2) {
        let l = TwiceSpin::new(tl as u32);
        let d = dim_invariant(n_a, l);
        let b = dim_complement(n, n_a, j, l);
        if !d.is_zero() && !b.is_zero() {
            sectors.push(Sector {
                label: tl as i64,
                d,
                b,
            });
        }
    }
    debug_assert_eq!(sectors.iter().map(|s| &s.d * &s.b).sum::<BigUint>(), total);
    Ok(SectorDims {
        sectors,
        total,
        origin: Some(Su2Origin { n, n_a, j }),
    })
}

/// `(2ℓ, ln d_ℓ, ln b_{jℓ})` per sector, and `ln D_j`.
pub type LnSectors = (Vec<(i64, f64, f64)>, f64);

/// Log-domain sector list.
pub fn ln_sector_dims(n: u64, n_a: u64, j: TwiceSpin) -> Result<LnSectors> {
    if n_a == 0 || n_a >= n {
        return Err(Error::InvalidArgument(format!(
            "subsystem size must satisfy 1 <= n_a <= n-1 (n = {n}, n_a = {n_a})"
        )));
    }
    let ln_total = ln_dim_invariant(n, j).ok_or(Error::Parity {
        n,
        twice: i64::from(j.twice()),
    })?;
    let mut out = Vec::new();
    for tl in (n_a % 2..=n_a).step_by(2) {
        let l = TwiceSpin::new(tl as u32);
        if let (Some(d), Some(b)) = (ln_dim_invariant(n_a, l), ln_dim_complement(n, n_a, j, l)) {
            out.push((tl as i64, d, b));
        }
    }
    Ok((out, ln_total))
}

/// Largest particle count accepted by [`dim_oracle_branching`].
pub const ORACLE_MAX_N: u64 = 24;

/// Independent count of `dim Inv(V_j ⊗ V_{e_1} ⊗ … ⊗ (V_{1/2})^{⊗n})`.
///
/// Starts from the multiplet `j`, couples each extra spin and then `n`
/// spin-½ factors one at a time, tracking how many coupling paths reach each
/// intermediate spin; the answer is the number of paths ending at spin 0.
///
/// ```
/// use symres::{su2_dims::dim_oracle_branching, TwiceSpin};
/// let b = dim_oracle_branching(3, &[TwiceSpin::ONE, TwiceSpin::HALF], TwiceSpin::ZERO).unwrap();
/// assert_eq!(b, 3u32.into());
/// ```
pub fn dim_oracle_branching(n: u64, extra: &[TwiceSpin], j: TwiceSpin) -> Result<BigUint> {
    if n > ORACLE_MAX_N {
        return Err(Error::SizeLimit(format!(
            "oracle supports n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    let max_twice =
        j.twice() as usize + extra.iter().map(|e| e.twice() as usize).sum::<usize>() + n as usize;
    let mut counts = vec![0u128; max_twice + 1];
    counts[j.twice() as usize] = 1;
    let couple = |counts: &[u128], e: usize| {
        let mut next = vec![0u128; counts.len()];
        for (k, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            let lo = k.abs_diff(e);
            for kk in (lo..=k + e).step_by(2) {
                next[kk] += c;
            }
        }
        next
    };
    for e in extra {
        counts = couple(&counts, e.twice() as usize);
    }
    for _ in 0..n {
        counts = couple(&counts, 1);
    }
    Ok(BigUint::from(counts[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(t: u32) -> TwiceSpin {
        TwiceSpin::new(t)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10u32.into());
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(200, 100).to_string().len(), 59);
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(dim_invariant(6, ts(2)), 9u32.into());
        assert_eq!(dim_invariant(4, ts(0)), 2u32.into());
        assert_eq!(dim_invariant(8, ts(8)), 1u32.into());
        assert_eq!(dim_invariant(5, ts(2)), BigUint::zero());
        assert_eq!(dim_invariant(4, ts(6)), BigUint::zero());
        assert_eq!(dim_invariant(0, ts(0)), BigUint::one());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(dim_complement(6, 3, ts(2), ts(1)), 3u32.into());
        assert_eq!(dim_complement(6, 3, ts(2), ts(3)), 3u32.into());
        for n in 2..12u64 {
            for n_a in 0..=n {
                for tl in 0..=(n_a as u32) {
                    assert_eq!(
                        dim_complement(n, n_a, ts(0), ts(tl)),
                        dim_invariant(n - n_a, ts(tl))
                    );
                }
                for tj in 0..=(n as u32) {
                    assert_eq!(
                        dim_complement(n, n_a, ts(tj), ts(0)),
                        dim_invariant(n - n_a, ts(tj))
                    );
                }
            }
        }
    }

    #[test]
    fn sector_examples() {
        let dims = sector_dims(10, 1, ts(4)).unwrap();
        assert_eq!(dims.len(), 1);
        assert_eq!(dims.sectors()[0].d, BigUint::one());
        assert_eq!(&dims.sectors()[0].b, dims.total());

        let top = sector_dims(10, 4, ts(10)).unwrap();
        assert_eq!(
            top.sectors(),
            &[Sector {
                label: 4,
                d: 1u32.into(),
                b: 1u32.into()
            }]
        );

        assert!(matches!(
            sector_dims(5, 2, ts(2)),
            Err(Error::Parity { .. })
        ));
        assert!(sector_dims(6, 0, ts(2)).is_err());
        assert!(sector_dims(6, 6, ts(2)).is_err());
    }

    #[test]
    fn j0_exchange_symmetry() {
        for n in (2..=16u64).step_by(2) {
            for n_a in 1..n {
                let a = sector_dims(n, n_a, ts(0)).unwrap();
                let b = sector_dims(n, n - n_a, ts(0)).unwrap();
                let mut fwd: Vec<_> = a
                    .sectors()
                    .iter()
                    .map(|s| (s.d.clone(), s.b.clone()))
                    .collect();
                let mut rev: Vec<_> = b
                    .sectors()
                    .iter()
                    .map(|s| (s.b.clone(), s.d.clone()))
                    .collect();
                fwd.sort();
                rev.sort();
                assert_eq!(fwd, rev);
            }
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(dim_oracle_branching(6, &[], ts(2)).unwrap(), 9u32.into());
        assert_eq!(dim_oracle_branching(2, &[], ts(0)).unwrap(), 1u32.into());
        assert!(dim_oracle_branching(25, &[], ts(0)).is_err());
    }

    #[test]
    fn log_domain_matches_exact() {
        for (n, n_a, tj) in [(20u64, 5u64, 4u32), (40, 13, 6), (60, 30, 0), (61, 20, 11)] {
            let (ln_rows, ln_total) = ln_sector_dims(n, n_a, ts(tj)).unwrap();
            let exact = sector_dims(n, n_a, ts(tj)).unwrap();
            assert_eq!(ln_rows.len(), exact.len());
            let rel = |ln: f64, v: &BigUint| (ln - crate::special_fn::ln_biguint(v)).abs();
            assert!(rel(ln_total, exact.total()) < 1e-11);
            for ((label, ld, lb), s) in ln_rows.iter().zip(exact.sectors()) {
                assert_eq!(*label, s.label);
                assert!(rel(*ld, &s.d) < 1e-11);
                assert!(rel(*lb, &s.b) < 1e-9, "{n} {n_a} {tj} {label}");
            }
        }
    }

    #[test]
    fn from_triples_prunes_and_sorts() {
        let dims = SectorDims::from_triples([(4, 1u32, 0u32), (2, 3, 3), (0, 2, 2)]).unwrap();
        assert_eq!(dims.len(), 2);
        assert_eq!(dims.sectors()[0].label, 0);
        assert!(SectorDims::from_triples([(0, 1u32, 1u32), (0, 2, 2)]).is_err());
        assert!(SectorDims::from_triples([(0, 0u32, 1u32)]).is_err());
    }
}
