//! The sequential recoupling basis inside the `2^N` product space.
//!
//! Spins are coupled one at a time: particle 1 alone has spin ½, and adding
//! particle `r` takes the running spin `k_{r−1}` to `k_r = k_{r−1} ± ½`. A
//! basis vector of the spin-`j` space is labelled by the intermediate spins
//! `k_2, …, k_{N−1}` (with `k_N = j`) and a magnetization `m`.
//!
//! Product basis convention: amplitude index `Σ_n bit_n · 2^{N−n}`, so
//! particle 1 is the most significant bit, and `bit = 0` means spin up.
//! Clebsch–Gordan coefficients use the Condon–Shortley phase.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{schmidt_entropy, schmidt_spectrum, shannon};
use crate::random_states::{Block, BlockState};
use crate::spin::TwiceSpin;

/// Largest number of sites handled by the dense constructions.
pub const MAX_SITES: usize = 14;

const SECTOR_TOL: f64 = 1e-10;

/// Amplitudes of an `N`-site spin-½ state in the product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FullStateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl FullStateVector {
    /// Wraps amplitudes that must already have unit norm (to 1e-12).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let v = Self::from_unnormalized(n, amps)?;
        Ok(v)
    }

    /// Normalises the amplitudes first.
    pub fn from_unnormalized(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_SITES {
            return Err(Error::SizeLimit(format!(
                "1 <= n <= {MAX_SITES} sites, got {n}"
            )));
        }
        if amps.len() != 1 << n {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for {n} sites",
                amps.len()
            )));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("state has no finite norm".into()));
        }
        for z in &mut amps {
            *z /= norm;
        }
        Ok(FullStateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FullStateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Normalised linear combination `Σ c_i |v_i⟩`.
    pub fn superpose(terms: &[(Complex64, &FullStateVector)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidArgument("empty superposition".into()));
        };
        let mut amps = vec![Complex64::from(0.0); first.amps.len()];
        for (c, v) in terms {
            if v.n != first.n {
                return Err(Error::ShapeMismatch("mixed site counts".into()));
            }
            for (a, b) in amps.iter_mut().zip(&v.amps) {
                *a += c * b;
            }
        }
        Self::from_unnormalized(first.n, amps)
    }

    /// The same state with the site order reversed (site `n` becomes site
    /// `N+1−n`).
    pub fn reversed(&self) -> FullStateVector {
        let shift = usize::BITS - self.n as u32;
        let amps = (0..self.amps.len())
            .map(|i| self.amps[i.reverse_bits() >> shift])
            .collect();
        FullStateVector { n: self.n, amps }
    }
}

/// `⟨k, m; ½, σ | K, m+σ⟩` with all arguments doubled (`σ = ±1`).
///
/// ```
/// use symres::{recoupling::cg_add_half, TwiceSpin};
/// let h = std::f64::consts::FRAC_1_SQRT_2;
/// assert_eq!(cg_add_half(TwiceSpin::HALF, 1, 1, TwiceSpin::ONE).unwrap(), 1.0);
/// assert!((cg_add_half(TwiceSpin::HALF, 1, -1, TwiceSpin::ZERO).unwrap() - h).abs() < 1e-15);
/// assert!((cg_add_half(TwiceSpin::HALF, -1, 1, TwiceSpin::ZERO).unwrap() + h).abs() < 1e-15);
/// ```
pub fn cg_add_half(k: TwiceSpin, m: i32, sigma: i32, k_out: TwiceSpin) -> Result<f64> {
    let tk = i64::from(k.twice());
    let tm = i64::from(m);
    let tko = i64::from(k_out.twice());
    let bad = || {
        Error::InvalidArgument(format!(
            "inconsistent coupling <{k},{m}/2; 1/2,{sigma}/2 | {k_out}>"
        ))
    };
    if sigma.abs() != 1 || tm.abs() > tk || (tk - tm) % 2 != 0 || (tko - tk).abs() != 1 {
        return Err(bad());
    }
    if (tm + i64::from(sigma)).abs() > tko {
        return Err(bad());
    }
    Ok(cg_half_unchecked(tk, tm, sigma, tko))
}

fn cg_half_unchecked(tk: i64, tm: i64, sigma: i32, tko: i64) -> f64 {
    let den = (2 * (tk + 1)) as f64;
    match (tko > tk, sigma > 0) {
        (true, true) => ((tk + tm + 2) as f64 / den).sqrt(),
        (true, false) => ((tk - tm + 2) as f64 / den).sqrt(),
        (false, true) => -((tk - tm) as f64 / den).sqrt(),
        (false, false) => ((tk + tm) as f64 / den).sqrt(),
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// General Clebsch–Gordan coefficient `⟨j1 m1; j2 m2 | j m⟩`, all arguments
/// doubled, from Racah's closed form. Small spins only.
pub(crate) fn clebsch_gordan(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> f64 {
    if m1 + m2 != m
        || m1.abs() > j1
        || m2.abs() > j2
        || m.abs() > j
        || j > j1 + j2
        || j < (j1 - j2).abs()
        || (j1 + j2 + j) % 2 != 0
        || (j1 - m1) % 2 != 0
        || (j2 - m2) % 2 != 0
    {
        return 0.0;
    }
    let h = |x: i64| x / 2;
    let tri = factorial(h(j1 + j2 - j)) * factorial(h(j1 - j2 + j)) * factorial(h(-j1 + j2 + j))
        / factorial(h(j1 + j2 + j) + 1);
    let pre = ((j + 1) as f64 * tri).sqrt()
        * (factorial(h(j1 + m1))
            * factorial(h(j1 - m1))
            * factorial(h(j2 + m2))
            * factorial(h(j2 - m2))
            * factorial(h(j + m))
            * factorial(h(j - m)))
        .sqrt();
    let args = |k: i64| {
        [
            k,
            h(j1 + j2 - j) - k,
            h(j1 - m1) - k,
            h(j2 + m2) - k,
            h(j - j2 + m1) + k,
            h(j - j1 - m2) + k,
        ]
    };
    let mut sum = 0.0;
    for k in 0..=h(j1 + j2 - j) {
        let a = args(k);
        if a.iter().any(|&x| x < 0) {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / a.iter().map(|&x| factorial(x)).product::<f64>();
    }
    pre * sum
}

/// A recoupling basis label: total spin `j`, doubled magnetization `m`, and
/// the intermediate spins `k_2 … k_{N−1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecouplingLabel {
    j: TwiceSpin,
    m: i32,
    intermediates: Vec<TwiceSpin>,
}

impl RecouplingLabel {
    pub fn new(j: TwiceSpin, m: i32, intermediates: Vec<TwiceSpin>) -> Result<Self> {
        let label = RecouplingLabel {
            j,
            m,
            intermediates,
        };
        let path = label.path();
        if path.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(Error::InvalidArgument(format!(
                "intermediate spins {path:?} do not change by 1/2 at every step"
            )));
        }
        let tj = j.twice() as i32;
        if m.abs() > tj || (tj - m) % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "magnetization {m}/2 invalid for j = {j}"
            )));
        }
        Ok(label)
    }

    pub fn j(&self) -> TwiceSpin {
        self.j
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn intermediates(&self) -> &[TwiceSpin] {
        &self.intermediates
    }

    pub fn n_sites(&self) -> usize {
        self.intermediates.len() + 2
    }

    /// Doubled running spins `k_1 = ½, k_2, …, k_N = j`.
    pub fn path(&self) -> Vec<u32> {
        let mut p = Vec::with_capacity(self.n_sites());
        p.push(1);
        p.extend(self.intermediates.iter().map(|k| k.twice()));
        p.push(self.j.twice());
        p
    }
}

/// All continuations of a coupling path: `steps` moves of ±1 (doubled) from
/// `start`, staying non-negative and ending at `end`, in lexicographic order.
fn paths(start: u32, steps: usize, end: u32) -> Vec<Vec<u32>> {
    fn go(k: u32, left: usize, end: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if k == end {
                out.push(cur.clone());
            }
            return;
        }
        for next in [k.wrapping_sub(1), k + 1] {
            if next > k + 1 || next.abs_diff(end) as usize > left - 1 {
                continue;
            }
            cur.push(next);
            go(next, left - 1, end, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if start.abs_diff(end) as usize <= steps && (start as usize + steps + end as usize) % 2 == 0 {
        go(start, steps, end, &mut Vec::new(), &mut out);
    }
    out
}

/// Every recoupling label of the spin-`j`, magnetization-`m` space of `n`
/// sites (there are `D_j` of them).
pub fn all_labels(n: usize, j: TwiceSpin, m: i32) -> Result<Vec<RecouplingLabel>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "recoupling labels need at least 2 sites".into(),
        ));
    }
    paths(1, n - 1, j.twice())
        .into_iter()
        .map(|p| {
            let mids = p[..n - 2].iter().map(|&k| TwiceSpin::new(k)).collect();
            RecouplingLabel::new(j, m, mids)
        })
        .collect()
}

/// A full multiplet of states on a block of consecutive sites, indexed by
/// `(m + 2k)/2`.
#[derive(Clone, Debug)]
struct Multiplet {
    sites: usize,
    spin: i64,
    comps: Vec<Vec<f64>>,
}

impl Multiplet {
    fn single() -> Multiplet {
        // m = −½ is spin down (bit 1), m = +½ is spin up (bit 0)
        Multiplet {
            sites: 1,
            spin: 1,
            comps: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        }
    }

    fn along_path(path: &[u32]) -> Multiplet {
        debug_assert_eq!(path[0], 1);
        let mut cur = Multiplet::single();
        for &k in &path[1..] {
            cur = Multiplet::couple(&cur, &Multiplet::single(), i64::from(k));
        }
        cur
    }

    /// Couples `a` (left sites) and `b` (right sites) to total spin `spin`.
    fn couple(a: &Multiplet, b: &Multiplet, spin: i64) -> Multiplet {
        let len = 1usize << (a.sites + b.sites);
        let lb = 1usize << b.sites;
        let mut comps = Vec::with_capacity(spin as usize + 1);
        for mm in (-spin..=spin).step_by(2) {
            let mut v = vec![0.0; len];
            for (ia, ma) in (-a.spin..=a.spin).step_by(2).enumerate() {
                let mb = mm - ma;
                if mb.abs() > b.spin {
                    continue;
                }
                let c = if b.spin == 1 && (spin - a.spin).abs() == 1 {
                    cg_half_unchecked(a.spin, ma, mb as i32, spin)
                } else {
                    clebsch_gordan(a.spin, ma, b.spin, mb, spin, mm)
                };
                if c == 0.0 {
                    continue;
                }
                let va = &a.comps[ia];
                let vb = &b.comps[((mb + b.spin) / 2) as usize];
                for (x, &ca) in va.iter().enumerate().filter(|(_, c)| **c != 0.0) {
                    for (y, &cb) in vb.iter().enumerate().filter(|(_, c)| **c != 0.0) {
                        v[x * lb + y] += c * ca * cb;
                    }
                }
            }
            comps.push(v);
        }
        Multiplet {
            sites: a.sites + b.sites,
            spin,
            comps,
        }
    }

    fn state(&self, m: i64) -> FullStateVector {
        let amps = self.comps[((m + self.spin) / 2) as usize]
            .iter()
            .map(|&x| Complex64::from(x))
            .collect();
        FullStateVector {
            n: self.sites,
            amps,
        }
    }
}

/// The product-basis vector of a recoupling label.
///
/// ```
/// use symres::recoupling::{basis_vector, RecouplingLabel};
/// use symres::TwiceSpin;
/// let singlet = basis_vector(&RecouplingLabel::new(TwiceSpin::ZERO, 0, vec![]).unwrap()).unwrap();
/// let a = singlet.amplitudes();
/// let h = std::f64::consts::FRAC_1_SQRT_2;
/// assert!((a[0b01].re - h).abs() < 1e-15 && (a[0b10].re + h).abs() < 1e-15);
/// ```
pub fn basis_vector(label: &RecouplingLabel) -> Result<FullStateVector> {
    if label.n_sites() > MAX_SITES {
        return Err(Error::SizeLimit(format!("at most {MAX_SITES} sites")));
    }
    Ok(Multiplet::along_path(&label.path()).state(i64::from(label.m)))
}

/// Amplitudes in the coupled basis, keyed by the full doubled path
/// `k_1 … k_N` and indexed by `(m + k_N)/2`.
type Coupled = BTreeMap<Vec<u32>, Vec<Complex64>>;

const SIGMAS: [(i64, usize); 2] = [(1, 0), (-1, 1)];

/// Orthogonal change of basis from the product basis to the sequentially
/// coupled basis, one particle at a time.
fn to_coupled(psi: &FullStateVector) -> Coupled {
    let n = psi.n;
    let mut rest = 1usize << (n - 1);
    let mut init = vec![Complex64::from(0.0); 2 * rest];
    init[..rest].copy_from_slice(&psi.amps[rest..]);
    init[rest..].copy_from_slice(&psi.amps[..rest]);
    let mut stage: Coupled = BTreeMap::from([(vec![1u32], init)]);
    for _ in 1..n {
        let half = rest / 2;
        let mut next = Coupled::new();
        for (path, data) in &stage {
            let k = i64::from(*path.last().unwrap());
            for kk in [k - 1, k + 1].into_iter().filter(|&x| x >= 0) {
                let mut out = vec![Complex64::from(0.0); (kk as usize + 1) * half];
                for (mi_out, mm) in (-kk..=kk).step_by(2).enumerate() {
                    for (sigma, bit) in SIGMAS {
                        let m = mm - sigma;
                        if m.abs() > k {
                            continue;
                        }
                        let c = cg_half_unchecked(k, m, sigma as i32, kk);
                        let mi = ((m + k) / 2) as usize;
                        let src = &data[mi * rest + bit * half..mi * rest + bit * half + half];
                        let dst = &mut out[mi_out * half..(mi_out + 1) * half];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d += c * s;
                        }
                    }
                }
                let mut p = path.clone();
                p.push(kk as u32);
                next.insert(p, out);
            }
        }
        stage = next;
        rest = half;
    }
    stage
}

/// Inverse of [`to_coupled`]; paths absent from the map count as zero.
fn from_coupled(n: usize, coupled: &Coupled) -> Vec<Complex64> {
    let mut stage: Coupled = coupled.clone();
    let mut rest = 1usize;
    for r in (2..=n).rev() {
        let parent_rest = rest * 2;
        let mut prev = Coupled::new();
        for (path, data) in &stage {
            debug_assert_eq!(path.len(), r);
            let parent = path[..r - 1].to_vec();
            let k = i64::from(parent[r - 2]);
            let kk = i64::from(path[r - 1]);
            let out = prev
                .entry(parent)
                .or_insert_with(|| vec![Complex64::from(0.0); (k as usize + 1) * parent_rest]);
            for (mi_child, mm) in (-kk..=kk).step_by(2).enumerate() {
                for (sigma, bit) in SIGMAS {
                    let m = mm - sigma;
                    if m.abs() > k {
                        continue;
                    }
                    let c = cg_half_unchecked(k, m, sigma as i32, kk);
                    let mi = ((m + k) / 2) as usize;
                    let src = &data[mi_child * rest..(mi_child + 1) * rest];
                    let off = mi * parent_rest + bit * rest;
                    for (d, s) in out[off..off + rest].iter_mut().zip(src) {
                        *d += c * s;
                    }
                }
            }
        }
        stage = prev;
        rest = parent_rest;
    }
    let data = stage
        .remove(&vec![1u32])
        .unwrap_or_else(|| vec![Complex64::from(0.0); 2 * rest]);
    let mut amps = vec![Complex64::from(0.0); 2 * rest];
    amps[rest..].copy_from_slice(&data[..rest]);
    amps[..rest].copy_from_slice(&data[rest..]);
    amps
}

fn check_split(n: usize, n_a: usize) -> Result<()> {
    if n_a == 0 || n_a >= n {
        return Err(Error::InvalidArgument(format!(
            "subsystem size must satisfy 1 <= n_a <= n-1 (n = {n}, n_a = {n_a})"
        )));
    }
    Ok(())
}

/// Places a block state (sectors of `sector_dims(n, n_a, j)`) and a
/// magnetization profile `xi` (indexed by `(m + 2j)/2`) into the product
/// space.
pub fn embed_block_state(
    state: &BlockState,
    xi: &[Complex64],
    n: usize,
    n_a: usize,
) -> Result<FullStateVector> {
    check_split(n, n_a)?;
    if n > MAX_SITES {
        return Err(Error::SizeLimit(format!("at most {MAX_SITES} sites")));
    }
    let j = state
        .j()
        .ok_or_else(|| Error::InvalidArgument("block state carries no total spin".into()))?;
    let tj = j.twice();
    if xi.len() != tj as usize + 1 {
        return Err(Error::ShapeMismatch(format!(
            "xi has {} entries, spin {j} needs {}",
            xi.len(),
            tj + 1
        )));
    }
    let xi_norm = xi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (xi_norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument("xi must have unit norm".into()));
    }
    let mut coupled = Coupled::new();
    for block in state.blocks() {
        let l = u32::try_from(block.label)
            .map_err(|_| Error::ShapeMismatch(format!("negative label {}", block.label)))?;
        let a_paths = paths(1, n_a - 1, l);
        let b_paths = paths(l, n - n_a, tj);
        if (a_paths.len(), b_paths.len()) != block.chi.shape() {
            return Err(Error::ShapeMismatch(format!(
                "block 2l = {l} has shape {:?}, expected ({}, {})",
                block.chi.shape(),
                a_paths.len(),
                b_paths.len()
            )));
        }
        let amp = block.p.sqrt();
        for (ia, a) in a_paths.iter().enumerate() {
            for (ib, b) in b_paths.iter().enumerate() {
                let mut full = Vec::with_capacity(n);
                full.push(1);
                full.extend_from_slice(a);
                full.extend_from_slice(b);
                let c = block.chi[(ia, ib)] * amp;
                coupled.insert(full, xi.iter().map(|x| x * c).collect());
            }
        }
    }
    FullStateVector::new(n, from_coupled(n, &coupled))
}

/// Recovers the block form of a state of total spin `j`: for each spin `ℓ`
/// of the first `n_a` sites, the matrix with rows indexed by the `A` path
/// and columns by the `B` path and magnetization.
pub fn project_to_blocks(psi: &FullStateVector, n_a: usize, j: TwiceSpin) -> Result<BlockState> {
    check_split(psi.n, n_a)?;
    let coupled = to_coupled(psi);
    let tj = j.twice();
    let norm2 = psi.norm().powi(2);
    let outside: f64 = coupled
        .iter()
        .filter(|(p, _)| *p.last().unwrap() != tj)
        .flat_map(|(_, d)| d.iter().map(|z| z.norm_sqr()))
        .sum();
    let residual = (outside / norm2).sqrt();
    if residual > SECTOR_TOL {
        return Err(Error::OutsideSector { residual });
    }
    type Entries = Vec<(Vec<u32>, (Vec<u32>, usize), Complex64)>;
    let mut by_l: BTreeMap<u32, Entries> = BTreeMap::new();
    for (path, data) in coupled.iter().filter(|(p, _)| *p.last().unwrap() == tj) {
        let l = path[n_a - 1];
        let a = path[..n_a].to_vec();
        let b = path[n_a..].to_vec();
        for (mi, z) in data.iter().enumerate() {
            by_l.entry(l)
                .or_default()
                .push((a.clone(), (b.clone(), mi), *z));
        }
    }
    let mut blocks = Vec::new();
    for (l, entries) in by_l {
        let rows: BTreeMap<&Vec<u32>, usize> = entries
            .iter()
            .map(|e| &e.0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .zip(0..)
            .collect();
        let cols: BTreeMap<&(Vec<u32>, usize), usize> = entries
            .iter()
            .map(|e| &e.1)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .zip(0..)
            .collect();
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for (a, bc, z) in &entries {
            m[(rows[a], cols[bc])] = *z;
        }
        let w = m.norm_squared() / norm2;
        let chi = if w > 0.0 { m.unscale(m.norm()) } else { m };
        blocks.push(Block {
            label: i64::from(l),
            p: w,
            chi,
        });
    }
    let total: f64 = blocks.iter().map(|b| b.p).sum();
    for b in &mut blocks {
        b.p /= total;
    }
    Ok(BlockState::from_parts_unchecked(Some(j), blocks))
}

/// Restricted entanglement entropy of the first `n_a` sites, computed in the
/// full product space through the recoupling basis.
pub fn entropy_ga_fullspace(psi: &FullStateVector, n_a: usize, j: TwiceSpin) -> Result<f64> {
    let state = project_to_blocks(psi, n_a, j)?;
    let conf: f64 = state
        .blocks()
        .iter()
        .filter(|b| b.p > 0.0)
        .map(|b| b.p * shannon(schmidt_spectrum(&b.chi)))
        .sum();
    Ok(conf + shannon(state.blocks().iter().map(|b| b.p)))
}

/// Ordinary entanglement entropy of the first `n_a` sites.
///
/// ```
/// use symres::recoupling::{entropy_ka, example_state};
/// let s = example_state("singlet").unwrap();
/// assert!((entropy_ka(&s, 1).unwrap() - 2f64.ln()).abs() < 1e-15);
/// ```
pub fn entropy_ka(psi: &FullStateVector, n_a: usize) -> Result<f64> {
    check_split(psi.n, n_a)?;
    let m = DMatrix::from_row_slice(1 << n_a, 1 << (psi.n - n_a), &psi.amps);
    Ok(schmidt_entropy(&m))
}

/// `(Σ_{n∈sites} S_n)² |psi⟩`, unnormalised; sites are 1-based.
pub fn apply_total_spin_squared(psi: &FullStateVector, sites: &[usize]) -> Result<Vec<Complex64>> {
    if sites.iter().any(|&s| s == 0 || s > psi.n) {
        return Err(Error::InvalidArgument(format!(
            "sites must lie in 1..={}",
            psi.n
        )));
    }
    let n = psi.n;
    let mask = |s: usize| 1usize << (n - s);
    let mut out = vec![Complex64::from(0.0); psi.amps.len()];
    for (i, &z) in psi.amps.iter().enumerate() {
        if z == Complex64::from(0.0) {
            continue;
        }
        for &a in sites {
            for &b in sites {
                if a == b {
                    out[i] += 0.75 * z;
                    continue;
                }
                let (ba, bb) = (i & mask(a) != 0, i & mask(b) != 0);
                out[i] += if ba == bb { 0.25 } else { -0.25 } * z;
                if ba != bb {
                    out[i ^ mask(a) ^ mask(b)] += 0.5 * z;
                }
            }
        }
    }
    Ok(out)
}

/// Named example states with known entropies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleState {
    /// Two-site singlet.
    Singlet,
    /// Two-site triplet with doubled magnetization `m ∈ {−2, 0, 2}`.
    Triplet(i32),
    /// Two singlets, total spin 0.
    Psi0N4,
    /// Two triplets coupled to spin 0.
    Psi1N4,
    /// Singlet on sites 1–2 times the `m = 1` triplet on sites 3–4.
    Eta1N4,
    /// Two triplets coupled to spin 1, `m = 1`.
    Eta2N4,
    /// Six sites, `j = m = 1`; sites 1–3 in the spin-½ state built from a
    /// 1–2 triplet.
    Psi1N6,
    /// Six sites, `j = m = 1`; sites 1–3 in the spin-3/2 state.
    Psi2N6,
}

impl ExampleState {
    pub const ALL: [ExampleState; 10] = [
        ExampleState::Singlet,
        ExampleState::Triplet(2),
        ExampleState::Triplet(0),
        ExampleState::Triplet(-2),
        ExampleState::Psi0N4,
        ExampleState::Psi1N4,
        ExampleState::Eta1N4,
        ExampleState::Eta2N4,
        ExampleState::Psi1N6,
        ExampleState::Psi2N6,
    ];

    /// Total spin of the state.
    pub fn spin(self) -> TwiceSpin {
        match self {
            ExampleState::Singlet | ExampleState::Psi0N4 | ExampleState::Psi1N4 => TwiceSpin::ZERO,
            _ => TwiceSpin::ONE,
        }
    }

    pub fn build(self) -> FullStateVector {
        let single = Multiplet::single;
        let pair = |s| Multiplet::couple(&single(), &single(), s);
        let (mult, m) = match self {
            ExampleState::Singlet => (pair(0), 0),
            ExampleState::Triplet(m) => (pair(2), i64::from(m)),
            ExampleState::Psi0N4 => (Multiplet::couple(&pair(0), &pair(0), 0), 0),
            ExampleState::Psi1N4 => (Multiplet::couple(&pair(2), &pair(2), 0), 0),
            ExampleState::Eta1N4 => (Multiplet::couple(&pair(0), &pair(2), 2), 2),
            ExampleState::Eta2N4 => (Multiplet::couple(&pair(2), &pair(2), 2), 2),
            ExampleState::Psi1N6 | ExampleState::Psi2N6 => {
                let l = if self == ExampleState::Psi1N6 { 1 } else { 3 };
                let a = Multiplet::along_path(&[1, 2, l as u32]);
                let b = Multiplet::couple(&single(), &pair(0), 1);
                (Multiplet::couple(&a, &b, 2), 2)
            }
        };
        mult.state(m)
    }
}

impl fmt::Display for ExampleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleState::Singlet => write!(f, "singlet"),
            ExampleState::Triplet(m) => write!(f, "triplet({:+})", m / 2),
            ExampleState::Psi0N4 => write!(f, "psi0_N4"),
            ExampleState::Psi1N4 => write!(f, "psi1_N4"),
            ExampleState::Eta1N4 => write!(f, "eta1_N4"),
            ExampleState::Eta2N4 => write!(f, "eta2_N4"),
            ExampleState::Psi1N6 => write!(f, "psi1_N6"),
            ExampleState::Psi2N6 => write!(f, "psi2_N6"),
        }
    }
}

impl FromStr for ExampleState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let found = match t {
            "singlet" => Some(ExampleState::Singlet),
            "psi0_N4" => Some(ExampleState::Psi0N4),
            "psi1_N4" => Some(ExampleState::Psi1N4),
            "eta1_N4" => Some(ExampleState::Eta1N4),
            "eta2_N4" => Some(ExampleState::Eta2N4),
            "psi1_N6" => Some(ExampleState::Psi1N6),
            "psi2_N6" => Some(ExampleState::Psi2N6),
            _ => t
                .strip_prefix("triplet(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|m| m.trim().parse::<i32>().ok())
                .filter(|m| m.abs() <= 1)
                .map(|m| ExampleState::Triplet(2 * m)),
        };
        found.ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

/// Builds a named example state, e.g. `"psi1_N4"` or `"triplet(-1)"`.
pub fn example_state(name: &str) -> Result<FullStateVector> {
    Ok(name.parse::<ExampleState>()?.build())
}
