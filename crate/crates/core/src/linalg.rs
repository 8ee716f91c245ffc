use nalgebra::DMatrix;
use num_complex::Complex64;

/// Singular values below this are treated as exact zeros.
pub(crate) const SV_CUTOFF: f64 = 1e-15;

/// Normalised Schmidt spectrum `σ_i² / Σσ²` of a coefficient matrix.
pub(crate) fn schmidt_spectrum(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let sv = m.clone().singular_values();
    let kept: Vec<f64> = sv
        .iter()
        .filter(|&&s| s > SV_CUTOFF)
        .map(|s| s * s)
        .collect();
    let norm: f64 = kept.iter().sum();
    if norm == 0.0 {
        return Vec::new();
    }
    kept.into_iter().map(|p| p / norm).collect()
}

/// `−Σ p ln p` with `0 ln 0 = 0`.
pub(crate) fn shannon(ps: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    for p in ps {
        if p > 0.0 {
            acc.add(-p * p.ln());
        }
    }
    acc.total()
}

pub(crate) fn schmidt_entropy(m: &DMatrix<Complex64>) -> f64 {
    shannon(schmidt_spectrum(m))
}

/// Neumaier's compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair_has_log2() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(h, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, h),
            ],
        );
        assert!((schmidt_entropy(&m) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let acc: Neumaier = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.total(), 2.0);
    }

    #[test]
    fn shannon_ignores_zeros() {
        assert_eq!(shannon([1.0, 0.0]), 0.0);
        assert!((shannon([0.5, 0.5]) - 2f64.ln()).abs() < 1e-16);
    }
}
