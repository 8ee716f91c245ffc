//! Laplace expansion of `I(N) = ∫ h(x) e^{N g(x)} dx` around an interior
//! maximum `x0` of `g` with `g(x0) = 0`.
//!
//! Callers describe `h` and `g` by Taylor jets at `x0`. Each side of `x0`
//! gets its own jet, so a kink of `h` (or `g`) at the maximum is handled by
//! integrating the two half-lines separately. The odd half-line moments then
//! no longer cancel and an `O(1/N)` term appears next to the `O(N^{-1/2})`
//! leading one. Contributions from outside a neighbourhood of `x0` are
//! exponentially small and ignored.

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Value and first two derivatives at the expansion point.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Jet { value, d1, d2 }
    }

    pub const fn constant(value: f64) -> Self {
        Jet {
            value,
            d1: 0.0,
            d2: 0.0,
        }
    }
}

/// Second, third and fourth derivatives of `g` at `x0` on one side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvature {
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
}

/// The local data of a Laplace integral: one-sided jets of `h` and `g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceProblem {
    h_left: Jet,
    h_right: Jet,
    g_left: Curvature,
    g_right: Curvature,
}

impl LaplaceProblem {
    /// Both `h` and `g` smooth at `x0`; `g` is given by `(g'', g''', g'''')`.
    pub fn smooth(h: Jet, g: [f64; 3]) -> Result<Self> {
        Self::one_sided(h, h, g, g)
    }

    /// `h` has a kink at `x0`; `g` is smooth.
    pub fn kinked(h_left: Jet, h_right: Jet, g: [f64; 3]) -> Result<Self> {
        Self::one_sided(h_left, h_right, g, g)
    }

    /// Fully one-sided data. Derivatives on the left are ordinary
    /// derivatives of the left branch, evaluated at `x0`.
    pub fn one_sided(
        h_left: Jet,
        h_right: Jet,
        g_left: [f64; 3],
        g_right: [f64; 3],
    ) -> Result<Self> {
        let curv = |g: [f64; 3]| {
            if g[0] < 0.0 && g.iter().all(|x| x.is_finite()) {
                Ok(Curvature {
                    g2: g[0],
                    g3: g[1],
                    g4: g[2],
                })
            } else {
                Err(Error::InvalidArgument(format!(
                    "need g''(x0) < 0, got {}",
                    g[0]
                )))
            }
        };
        Ok(LaplaceProblem {
            h_left,
            h_right,
            g_left: curv(g_left)?,
            g_right: curv(g_right)?,
        })
    }

    /// True when the two sides carry different data.
    pub fn is_kinked(&self) -> bool {
        self.h_left != self.h_right || self.g_left != self.g_right
    }
}

/// The expansion split by order in `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceEstimate {
    /// `O(N^{-1/2})`: the Gaussian term.
    pub leading: f64,
    /// `O(N^{-1})`: nonzero only when the sides differ.
    pub half_order: f64,
    /// `O(N^{-3/2})`: the usual next-to-leading correction.
    pub next: f64,
}

impl LaplaceEstimate {
    /// Everything through `O(N^{-3/2})`.
    pub fn nlo(&self) -> f64 {
        self.leading + self.half_order + self.next
    }

    /// `C₁` in `leading·(1 + C₁/N)`, meaningful in the smooth case.
    pub fn c1(&self, n: f64) -> f64 {
        (self.half_order + self.next) / self.leading * n
    }
}

// ∫_0^∞ u^k e^{−a u²/2} du
fn half_moment(k: u32, a: f64) -> f64 {
    let p = f64::from(k + 1) / 2.0;
    0.5 * gamma(p) * (2.0 / a).powf(p)
}

fn half_line(h: Jet, g: Curvature, sign: f64, n: f64) -> [f64; 3] {
    let a = -n * g.g2;
    let m = |k| half_moment(k, a);
    let (h1, g3) = (sign * h.d1, sign * g.g3);
    let c3 = n * g3 / 6.0;
    [
        h.value * m(0),
        h1 * m(1) + c3 * h.value * m(3),
        0.5 * h.d2 * m(2)
            + c3 * h1 * m(4)
            + n * g.g4 / 24.0 * h.value * m(4)
            + 0.5 * c3 * c3 * h.value * m(6),
    ]
}

/// Expands the integral for a given `N > 0`.
///
/// ```
/// use symres::asymptotics::{laplace_expand, Jet, LaplaceProblem};
/// // ∫(1 + x²) e^{−N x²/2} dx = √(2π/N)(1 + 1/N)
/// let p = LaplaceProblem::smooth(Jet::new(1.0, 0.0, 2.0), [-1.0, 0.0, 0.0]).unwrap();
/// let n = 50.0;
/// let exact = (2.0 * std::f64::consts::PI / n).sqrt() * (1.0 + 1.0 / n);
/// assert!((laplace_expand(&p, n).unwrap().nlo() - exact).abs() < 1e-14);
/// ```
pub fn laplace_expand(problem: &LaplaceProblem, n: f64) -> Result<LaplaceEstimate> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::NonPositive(n));
    }
    let r = half_line(problem.h_right, problem.g_right, 1.0, n);
    let l = half_line(problem.h_left, problem.g_left, -1.0, n);
    Ok(LaplaceEstimate {
        leading: r[0] + l[0],
        half_order: r[1] + l[1],
        next: r[2] + l[2],
    })
}
