use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::Serialize;
use symres::asymptotics::{
    avg_thermo, avg_thermo_j0, comparison_table, exact_logdomain_average, jmax_stats,
    CoefficientRow, ComparisonTable, TableCase, ThermoPoint,
};
use symres::random_states::{empirical_stats_with, SamplingOptions, SeededSampler};
use symres::recoupling::{entropy_ga_fullspace, entropy_ka, example_state, FullStateVector};
use symres::su2_dims::{dim_invariant, sector_dims};
use symres::typical_entropy::{entropy_stats, page_curve};
use symres::TwiceSpin;

use crate::args::{AsymptoticsArgs, DimsArgs, PageCurveArgs, SampleArgs};
use crate::error::CliError;
use crate::output::{fmt12, r12, Report, Table};

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SectorRow {
    pub l: String,
    pub twice_l: i64,
    pub d: String,
    pub b: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DimsReport {
    pub n: u64,
    pub n_a: Option<u64>,
    pub j: String,
    pub twice_j: u32,
    /// Decimal string; may exceed 64 bits.
    pub dimension: String,
    pub sectors: Vec<SectorRow>,
    pub sum_rule_ok: Option<bool>,
}

pub fn cmd_dims(args: &DimsArgs) -> Result<DimsReport, CliError> {
    let (n, j) = (args.n, args.spin.get()?);
    let total = dim_invariant(n, j);
    if total == num_bigint::BigUint::ZERO {
        return Err(symres::Error::Parity {
            n,
            twice: i64::from(j.twice()),
        }
        .into());
    }
    let mut report = DimsReport {
        n,
        n_a: args.na,
        j: j.to_string(),
        twice_j: j.twice(),
        dimension: total.to_string(),
        sectors: Vec::new(),
        sum_rule_ok: None,
    };
    if let Some(n_a) = args.na {
        let dims = sector_dims(n, n_a, j)?;
        let sum: num_bigint::BigUint = dims.sectors().iter().map(|s| &s.d * &s.b).sum();
        report.sum_rule_ok = Some(sum == total);
        report.sectors = dims
            .sectors()
            .iter()
            .map(|s| SectorRow {
                l: TwiceSpin::new(s.label as u32).to_string(),
                twice_l: s.label,
                d: s.d.to_string(),
                b: s.b.to_string(),
            })
            .collect();
    }
    Ok(report)
}

impl Report for DimsReport {
    fn command(&self) -> &'static str {
        "dims"
    }

    fn tables(&self) -> Vec<Table> {
        let Some(n_a) = self.n_a else {
            let mut t = Table::new("dimension", &["n", "j", "dimension"]);
            t.push(vec![
                self.n.to_string(),
                self.j.clone(),
                self.dimension.clone(),
            ]);
            return vec![t];
        };
        let mut sectors = Table::new("sectors", &["l", "d", "b"]);
        for s in &self.sectors {
            sectors.push(vec![s.l.clone(), s.d.clone(), s.b.clone()]);
        }
        let mut summary = Table::new("summary", &["n", "n_a", "j", "dimension", "sum_rule_ok"]);
        summary.push(vec![
            self.n.to_string(),
            n_a.to_string(),
            self.j.clone(),
            self.dimension.clone(),
            self.sum_rule_ok.unwrap_or(false).to_string(),
        ]);
        vec![sectors, summary]
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PageRow {
    pub n_a: u64,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PageCurveReport {
    pub n: u64,
    pub j: String,
    pub twice_j: u32,
    pub rows: Vec<PageRow>,
}

pub fn cmd_page_curve(args: &PageCurveArgs) -> Result<PageCurveReport, CliError> {
    let j = args.spin.get()?;
    let rows = page_curve(args.n, j, 0..=args.n)?
        .into_iter()
        .map(|r| PageRow {
            n_a: r.n_a,
            mean: r12(r.mean),
            std: r12(r.std),
        })
        .collect();
    Ok(PageCurveReport {
        n: args.n,
        j: j.to_string(),
        twice_j: j.twice(),
        rows,
    })
}

impl Report for PageCurveReport {
    fn command(&self) -> &'static str {
        "page-curve"
    }

    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new("page_curve", &["n_a", "mean", "std"]);
        for r in &self.rows {
            t.push(vec![r.n_a.to_string(), fmt12(r.mean), fmt12(r.std)]);
        }
        vec![t]
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Bin {
    pub bin_left: f64,
    pub bin_right: f64,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ZScores {
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SampleSummary {
    pub n: u64,
    pub n_a: u64,
    pub j: String,
    pub samples: u64,
    pub seed: u64,
    pub empirical_mean: f64,
    pub empirical_var: f64,
    pub exact_mean: f64,
    pub exact_var: f64,
    pub std_error_mean: f64,
    pub std_error_var: f64,
    pub z_scores: ZScores,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SampleReport {
    pub summary: SampleSummary,
    pub histogram: Vec<Bin>,
}

fn z(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff.abs() < 1e-12 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

pub fn cmd_sample(args: &SampleArgs) -> Result<SampleReport, CliError> {
    let j = args.spin.get()?;
    if args.samples == 0 {
        return Err(CliError::Invalid("--samples must be at least 1".into()));
    }
    if args.bins == 0 || args.workers == Some(0) {
        return Err(CliError::Invalid(
            "--bins and --workers must be positive".into(),
        ));
    }
    let dims = sector_dims(args.n, args.na, j)?;
    let exact = entropy_stats(&dims);
    let opts = SamplingOptions {
        samples: args.samples,
        bins: args.bins,
        workers: args.workers,
    };
    let emp = empirical_stats_with(&dims, &opts, &mut SeededSampler::new(args.seed))?;
    let summary = SampleSummary {
        n: args.n,
        n_a: args.na,
        j: j.to_string(),
        samples: args.samples,
        seed: args.seed,
        empirical_mean: r12(emp.stats.mean),
        empirical_var: r12(emp.stats.variance),
        exact_mean: r12(exact.mean),
        exact_var: r12(exact.variance),
        std_error_mean: r12(emp.std_error_mean),
        std_error_var: r12(emp.std_error_variance),
        z_scores: ZScores {
            mean: r12(z(emp.stats.mean - exact.mean, emp.std_error_mean)),
            variance: r12(z(
                emp.stats.variance - exact.variance,
                emp.std_error_variance,
            )),
        },
    };
    let histogram = emp
        .histogram
        .bins()
        .map(|(l, r, c)| Bin {
            bin_left: r12(l),
            bin_right: r12(r),
            count: c,
        })
        .collect();
    Ok(SampleReport { summary, histogram })
}

impl Report for SampleReport {
    fn command(&self) -> &'static str {
        "sample"
    }

    fn tables(&self) -> Vec<Table> {
        let mut h = Table::new("histogram", &["bin_left", "bin_right", "count"]);
        for b in &self.histogram {
            h.push(vec![
                fmt12(b.bin_left),
                fmt12(b.bin_right),
                b.count.to_string(),
            ]);
        }
        let s = &self.summary;
        let mut t = Table::new(
            "summary",
            &[
                "n",
                "n_a",
                "j",
                "samples",
                "seed",
                "empirical_mean",
                "empirical_var",
                "exact_mean",
                "exact_var",
                "std_error_mean",
                "std_error_var",
                "z_mean",
                "z_var",
            ],
        );
        t.push(vec![
            s.n.to_string(),
            s.n_a.to_string(),
            s.j.clone(),
            s.samples.to_string(),
            s.seed.to_string(),
            fmt12(s.empirical_mean),
            fmt12(s.empirical_var),
            fmt12(s.exact_mean),
            fmt12(s.exact_var),
            fmt12(s.std_error_mean),
            fmt12(s.std_error_var),
            fmt12(s.z_scores.mean),
            fmt12(s.z_scores.variance),
        ]);
        vec![h, t]
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AsymptoticRow {
    pub n: u64,
    pub n_a: u64,
    pub twice_j: u32,
    pub exact: f64,
    pub asymptotic: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Coefficients {
    pub n: f64,
    pub sqrt_n_delta: f64,
    pub log_n: f64,
    pub constant: f64,
    pub delta: f64,
}

impl From<CoefficientRow> for Coefficients {
    fn from(c: CoefficientRow) -> Self {
        Coefficients {
            n: r12(c.n),
            sqrt_n_delta: r12(c.sqrt_n_delta),
            log_n: r12(c.log_n),
            constant: r12(c.constant),
            delta: r12(c.delta),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CoefficientTable {
    pub case: String,
    pub ga: Coefficients,
    /// Quoted from prior work on fixed-magnetization states.
    pub ka: Coefficients,
    pub ka_external_reference: bool,
    pub difference: Coefficients,
}

impl From<ComparisonTable> for CoefficientTable {
    fn from(t: ComparisonTable) -> Self {
        CoefficientTable {
            case: t.case.to_string(),
            ga: t.ga.into(),
            ka: t.ka.into(),
            ka_external_reference: t.ka_external_reference,
            difference: t.difference().into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AsymptoticsReport {
    pub f: f64,
    pub s: f64,
    /// `β(s)·min(f, 1−f)` (`min(f, 1−f)·log 2` at `s = 0`).
    pub leading_coefficient: f64,
    pub rows: Vec<AsymptoticRow>,
    pub coefficients: CoefficientTable,
}

pub fn cmd_asymptotics(args: &AsymptoticsArgs) -> Result<AsymptoticsReport, CliError> {
    let (f, s) = (args.f, args.s);
    if !(f > 0.0 && f < 1.0) || !(0.0..=1.0).contains(&s) {
        return Err(CliError::Invalid(format!(
            "need 0 < f < 1 and 0 <= s <= 1, got f = {f}, s = {s}"
        )));
    }
    let case = if s == 0.0 {
        TableCase::J0
    } else if s == 1.0 {
        TableCase::Jmax
    } else {
        TableCase::FixedS
    };
    let table = comparison_table(case, f, (case == TableCase::FixedS).then_some(s))?;
    let mut rows = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let p = ThermoPoint::from_fractions(n, f, s)?;
        let exact = exact_logdomain_average(n, p.n_a(), p.j())?;
        let asymptotic = match case {
            TableCase::J0 => avg_thermo_j0(n, p.n_a())?,
            TableCase::Jmax => jmax_stats().mean,
            TableCase::FixedS => avg_thermo(&p)?,
        };
        rows.push(AsymptoticRow {
            n,
            n_a: p.n_a(),
            twice_j: p.j().twice(),
            exact: r12(exact),
            asymptotic: r12(asymptotic),
            difference: r12(exact - asymptotic),
        });
    }
    let leading = if case == TableCase::J0 {
        f.min(1.0 - f) * LN_2
    } else {
        table.ga.n
    };
    Ok(AsymptoticsReport {
        f,
        s,
        leading_coefficient: r12(leading),
        rows,
        coefficients: table.into(),
    })
}

impl Report for AsymptoticsReport {
    fn command(&self) -> &'static str {
        "asymptotics"
    }

    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new("asymptotics", &["n", "exact", "asymptotic", "difference"]);
        for r in &self.rows {
            t.push(vec![
                r.n.to_string(),
                fmt12(r.exact),
                fmt12(r.asymptotic),
                fmt12(r.difference),
            ]);
        }
        let mut c = Table::new(
            "coefficients",
            &[
                "row",
                "N",
                "sqrt_n_delta",
                "log_n",
                "constant",
                "delta",
                "external_reference",
            ],
        );
        let co = &self.coefficients;
        for (name, row, ext) in [
            ("ga", co.ga, false),
            ("ka", co.ka, co.ka_external_reference),
            ("ka_minus_ga", co.difference, false),
        ] {
            c.push(vec![
                name.to_string(),
                fmt12(row.n),
                fmt12(row.sqrt_n_delta),
                fmt12(row.log_n),
                fmt12(row.constant),
                fmt12(row.delta),
                ext.to_string(),
            ]);
        }
        vec![t, c]
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExampleRow {
    pub state: String,
    pub quantity: String,
    pub expected: f64,
    pub computed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExamplesReport {
    pub tolerance: f64,
    pub rows: Vec<ExampleRow>,
}

impl ExamplesReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

const EXAMPLE_TOL: f64 = 1e-12;

fn h2(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|x| -x * x.ln())
        .sum()
}

fn mix(p: f64, a: &FullStateVector, b: &FullStateVector) -> Result<FullStateVector, CliError> {
    let c = |w: f64| Complex64::new(w.sqrt(), 0.0);
    Ok(FullStateVector::superpose(&[(c(1.0 - p), a), (c(p), b)])?)
}

pub fn cmd_examples() -> Result<ExamplesReport, CliError> {
    let mut rows = Vec::new();
    let mut push = |state: String, quantity: &str, expected: f64, computed: f64| {
        rows.push(ExampleRow {
            state,
            quantity: quantity.into(),
            expected: r12(expected),
            computed: r12(computed),
            pass: (expected - computed).abs() <= EXAMPLE_TOL,
        })
    };
    let ln2 = LN_2;
    let (zero, one) = (TwiceSpin::ZERO, TwiceSpin::ONE);
    for (name, n_a, j, ka) in [
        ("singlet", 1, zero, ln2),
        ("triplet(+1)", 1, one, 0.0),
        ("triplet(0)", 1, one, ln2),
        ("triplet(-1)", 1, one, 0.0),
        ("psi0_N4", 2, zero, 0.0),
        ("psi1_N4", 2, zero, 3f64.ln()),
        ("eta1_N4", 2, one, 0.0),
        ("eta2_N4", 2, one, ln2),
    ] {
        let psi = example_state(name)?;
        push(name.into(), "S_KA", ka, entropy_ka(&psi, n_a)?);
        push(
            name.into(),
            "S_GA",
            0.0,
            entropy_ga_fullspace(&psi, n_a, j)?,
        );
    }
    let (eta1, eta2) = (example_state("eta1_N4")?, example_state("eta2_N4")?);
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let psi = mix(p, &eta1, &eta2)?;
        let name = format!("eta_p(p={p})");
        push(name.clone(), "S_KA", h2(p / 2.0), entropy_ka(&psi, 2)?);
        push(name, "S_GA", h2(p), entropy_ga_fullspace(&psi, 2, one)?);
    }
    let (a, b) = (example_state("psi1_N6")?, example_state("psi2_N6")?);
    push(
        "psi1_N6".into(),
        "S_GA",
        0.0,
        entropy_ga_fullspace(&a, 3, one)?,
    );
    push(
        "psi2_N6".into(),
        "S_GA",
        0.0,
        entropy_ga_fullspace(&b, 3, one)?,
    );
    let psi = mix(0.5, &a, &b)?;
    let name = "superposition_N6".to_string();
    push(name.clone(), "S_KA", h2(3.0 / 8.0), entropy_ka(&psi, 3)?);
    push(
        name.clone(),
        "S_GA",
        ln2,
        entropy_ga_fullspace(&psi, 3, one)?,
    );
    push(
        name,
        "S_GB",
        0.0,
        entropy_ga_fullspace(&psi.reversed(), 3, one)?,
    );
    Ok(ExamplesReport {
        tolerance: EXAMPLE_TOL,
        rows,
    })
}

impl Report for ExamplesReport {
    fn command(&self) -> &'static str {
        "examples"
    }

    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(
            "examples",
            &["state", "quantity", "expected", "computed", "pass"],
        );
        for r in &self.rows {
            t.push(vec![
                r.state.clone(),
                r.quantity.clone(),
                fmt12(r.expected),
                fmt12(r.computed),
                r.pass.to_string(),
            ]);
        }
        vec![t]
    }
}
