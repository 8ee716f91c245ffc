//! Digamma and trigamma at shifted arguments `Ψ(n+1)`, `Ψ'(n+1)`.
//!
//! Integer arguments up to [`EXACT_LIMIT`] come from lazily built tables of
//! harmonic-type sums accumulated in double-double arithmetic. Everything
//! else (larger integers, dimensions only known through their logarithm,
//! real arguments) uses the Bernoulli asymptotic series.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Euler–Mascheroni constant, `0.577215664901532860606512090082`.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;
// Low word of the double-double representation of the same constant.
const EULER_GAMMA_LO: f64 = -4.942915152430645e-18;

const ZETA2_HI: f64 = 1.644_934_066_848_226_4;
const ZETA2_LO: f64 = 3.040672350398476e-17;

/// Largest integer argument served from the summation tables.
pub const EXACT_LIMIT: u64 = 1_000_000;

/// Natural logarithm of a (possibly astronomically large) positive dimension.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogDimension(f64);

impl LogDimension {
    pub fn new(log_value: f64) -> Result<Self> {
        if !log_value.is_finite() || log_value < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "log-dimension must be finite and >= 0, got {log_value}"
            )));
        }
        Ok(LogDimension(log_value))
    }

    /// `None` for zero, which has no logarithm.
    pub fn of_biguint(n: &BigUint) -> Option<Self> {
        if n.is_zero() {
            None
        } else {
            Some(LogDimension(ln_biguint(n)))
        }
    }

    pub fn log_value(self) -> f64 {
        self.0
    }
}

/// A non-negative integer count, either known exactly or through its log.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Dim {
    Exact(u64),
    Log(LogDimension),
}

impl Dim {
    /// Exact when the value fits in a `u64`, logarithmic otherwise.
    pub fn from_biguint(n: &BigUint) -> Dim {
        match n.to_u64() {
            Some(v) => Dim::Exact(v),
            None => Dim::Log(LogDimension(ln_biguint(n))),
        }
    }

    /// `ln n`; `-inf` for an exact zero.
    pub fn ln(self) -> f64 {
        match self {
            Dim::Exact(n) => (n as f64).ln(),
            Dim::Log(l) => l.0,
        }
    }

    /// Floating value, `inf` if it overflows.
    pub fn to_f64(self) -> f64 {
        match self {
            Dim::Exact(n) => n as f64,
            Dim::Log(l) => l.0.exp(),
        }
    }

    /// `1/n`, computed without overflow.
    pub(crate) fn recip(self) -> f64 {
        match self {
            Dim::Exact(n) => 1.0 / n as f64,
            Dim::Log(l) => (-l.0).exp(),
        }
    }
}

impl From<u64> for Dim {
    fn from(n: u64) -> Dim {
        Dim::Exact(n)
    }
}

impl From<LogDimension> for Dim {
    fn from(l: LogDimension) -> Dim {
        Dim::Log(l)
    }
}

/// `ln n` for an arbitrary-precision integer, accurate to a few ulps even
/// when `n` is far beyond the `f64` range.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits fit");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

// --- double-double helpers -------------------------------------------------

#[derive(Clone, Copy, Default)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl DoubleDouble {
    fn add(self, other: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        DoubleDouble { hi, lo }
    }

    /// `1/k^p` for `p` in {1, 2}, with its rounding error captured by fma.
    fn recip_power(k: f64, p: u32) -> DoubleDouble {
        let den = if p == 1 { k } else { k * k };
        let q = 1.0 / den;
        let r = (-q).mul_add(den, 1.0);
        DoubleDouble { hi: q, lo: r / den }
    }

    fn sub_into(hi: f64, lo: f64, s: DoubleDouble) -> f64 {
        (hi - s.hi) + (lo - s.lo)
    }
}

struct Tables {
    digamma: Vec<f64>,
    trigamma: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let len = EXACT_LIMIT as usize + 1;
        let mut digamma = Vec::with_capacity(len);
        let mut trigamma = Vec::with_capacity(len);
        let mut h = DoubleDouble::default();
        let mut h2 = DoubleDouble::default();
        for n in 0..len {
            if n > 0 {
                h = h.add(DoubleDouble::recip_power(n as f64, 1));
                h2 = h2.add(DoubleDouble::recip_power(n as f64, 2));
            }
            digamma.push((h.hi - EULER_GAMMA) + (h.lo - EULER_GAMMA_LO));
            trigamma.push(DoubleDouble::sub_into(ZETA2_HI, ZETA2_LO, h2));
        }
        Tables { digamma, trigamma }
    })
}

// --- asymptotic series in the shifted variable ------------------------------

/// `Ψ(x+1)` from `ln x` and `1/x`; accurate to 1e-16 relative for x ≥ 10.
fn digamma_series(ln_x: f64, inv: f64) -> f64 {
    let z = inv * inv;
    let tail = z
        * (1.0 / 12.0
            - z * (1.0 / 120.0
                - z * (1.0 / 252.0
                    - z * (1.0 / 240.0 - z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z / 12.0))))));
    ln_x + 0.5 * inv - tail
}

/// `x Ψ'(x+1)` from `1/x`.
fn scaled_trigamma_series(inv: f64) -> f64 {
    let z = inv * inv;
    let tail = z
        * (1.0 / 6.0
            - z * (1.0 / 30.0
                - z * (1.0 / 42.0
                    - z * (1.0 / 30.0 - z * (5.0 / 66.0 - z * (691.0 / 2730.0 - z * 7.0 / 6.0))))));
    1.0 - 0.5 * inv + tail
}

const SHIFT_TO: f64 = 12.0;

/// `Ψ(n+1)`.
///
/// ```
/// use symres::special_fn::{digamma_shifted, EULER_GAMMA};
/// assert!((digamma_shifted(4u64) - (25.0 / 12.0 - EULER_GAMMA)).abs() < 1e-15);
/// ```
pub fn digamma_shifted(n: impl Into<Dim>) -> f64 {
    match n.into() {
        Dim::Exact(n) if n <= EXACT_LIMIT => tables().digamma[n as usize],
        Dim::Exact(n) => {
            let x = n as f64;
            digamma_series(x.ln(), 1.0 / x)
        }
        Dim::Log(l) => {
            if l.0 < (EXACT_LIMIT as f64).ln() {
                digamma_real_unchecked(l.0.exp())
            } else {
                digamma_series(l.0, (-l.0).exp())
            }
        }
    }
}

/// `Ψ'(n+1)`.
pub fn trigamma_shifted(n: impl Into<Dim>) -> f64 {
    match n.into() {
        Dim::Exact(n) if n <= EXACT_LIMIT => tables().trigamma[n as usize],
        Dim::Exact(n) => {
            let inv = 1.0 / n as f64;
            inv * scaled_trigamma_series(inv)
        }
        Dim::Log(l) => {
            if l.0 < (EXACT_LIMIT as f64).ln() {
                trigamma_real_unchecked(l.0.exp())
            } else {
                let inv = (-l.0).exp();
                inv * scaled_trigamma_series(inv)
            }
        }
    }
}

/// `n Ψ'(n+1)`, which stays finite when `n` itself overflows `f64`.
pub(crate) fn scaled_trigamma(n: Dim) -> f64 {
    match n {
        Dim::Exact(0) => 0.0,
        Dim::Exact(k) if k <= EXACT_LIMIT => k as f64 * tables().trigamma[k as usize],
        Dim::Log(l) if l.0 < (EXACT_LIMIT as f64).ln() => {
            let x = l.0.exp();
            x * trigamma_real_unchecked(x)
        }
        other => scaled_trigamma_series(other.recip()),
    }
}

/// `Ψ(x+1)` for real `x ≥ 0`.
pub fn digamma_shifted_real(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 || !x.is_finite() {
        return Err(Error::NonPositive(x));
    }
    Ok(digamma_real_unchecked(x))
}

/// `Ψ'(x+1)` for real `x ≥ 0`.
pub fn trigamma_shifted_real(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 || !x.is_finite() {
        return Err(Error::NonPositive(x));
    }
    Ok(trigamma_real_unchecked(x))
}

fn digamma_real_unchecked(x: f64) -> f64 {
    if x.fract() == 0.0 && x <= EXACT_LIMIT as f64 {
        return tables().digamma[x as usize];
    }
    if x >= SHIFT_TO {
        return digamma_series(x.ln(), 1.0 / x);
    }
    // Ψ(x+1) = Ψ(x+1+k) - Σ_{i=1..k} 1/(x+i)
    let mut y = x;
    let mut acc = 0.0;
    while y < SHIFT_TO {
        y += 1.0;
        acc += 1.0 / y;
    }
    digamma_series(y.ln(), 1.0 / y) - acc
}

fn trigamma_real_unchecked(x: f64) -> f64 {
    if x.fract() == 0.0 && x <= EXACT_LIMIT as f64 {
        return tables().trigamma[x as usize];
    }
    if x >= SHIFT_TO {
        let inv = 1.0 / x;
        return inv * scaled_trigamma_series(inv);
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < SHIFT_TO {
        y += 1.0;
        acc += 1.0 / (y * y);
    }
    let inv = 1.0 / y;
    inv * scaled_trigamma_series(inv) + acc
}
