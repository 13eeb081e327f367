//! Pointwise sensitivity, per-coordinate influence, and the functionals
//! used by the isoperimetric inequalities.
//!
//! Counts come from bit-parallel kernels over the packed truth table;
//! probabilities are exact rationals with power-of-two denominators.
//! Floating point enters only through square roots and logarithms, always
//! via `libm` so results are bit-identical across platforms.
//!
//! Negative (directed) quantities follow the convention that a violated
//! edge is attributed to its lower endpoint: `neg_sens[x]` counts
//! coordinates `i` with `x_i = 0`, `f(x) = 1` and `f(x^i) = 0`, and the
//! negative influence of `i` is the violated-edge count over `2^(m-1)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::hypercube::BooleanFunction;
use crate::rational::Rational;
use crate::{Error, Result};

/// Per-point sensitivity and negative sensitivity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SensitivityProfile {
    arity: u32,
    sens: Vec<u8>,
    neg_sens: Vec<u8>,
}

impl SensitivityProfile {
    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// `sens[ix] = #{i : f(ix) != f(ix^i)}`.
    pub fn sens(&self) -> &[u8] {
        &self.sens
    }

    /// `neg_sens[ix] = #{i : ix_i = 0, f(ix) = 1, f(ix^i) = 0}`.
    pub fn neg_sens(&self) -> &[u8] {
        &self.neg_sens
    }

    pub fn sum_sens(&self) -> u64 {
        self.sens.iter().map(|&v| v as u64).sum()
    }

    pub fn sum_neg_sens(&self) -> u64 {
        self.neg_sens.iter().map(|&v| v as u64).sum()
    }

    /// Exact `E[sens_f]`, which equals the total influence.
    pub fn mean_sens(&self) -> Rational {
        Rational::new(self.sum_sens() as i128, 1i128 << self.arity)
    }

    /// Counts of each sensitivity value `0..=m`.
    pub fn sens_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.arity as usize + 1];
        for &v in &self.sens {
            hist[v as usize] += 1;
        }
        hist
    }

    pub fn neg_sens_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.arity as usize + 1];
        for &v in &self.neg_sens {
            hist[v as usize] += 1;
        }
        hist
    }

    /// `E[sqrt(sens)]`, or `E[sqrt(neg_sens)]` for the directed variant.
    pub fn expected_sqrt(&self, directed: bool) -> f64 {
        let hist = if directed {
            self.neg_sens_histogram()
        } else {
            self.sens_histogram()
        };
        let total = (1u64 << self.arity) as f64;
        hist.iter()
            .enumerate()
            .map(|(v, &count)| count as f64 * libm::sqrt(v as f64))
            .sum::<f64>()
            / total
    }
}

/// Adds a 0/1 plane into bit-sliced counters (little-endian planes).
fn ripple_add(counters: &mut [Vec<u64>], w: usize, mut plane: u64) {
    for c in counters.iter_mut() {
        if plane == 0 {
            break;
        }
        let carry = c[w] & plane;
        c[w] ^= plane;
        plane = carry;
    }
    debug_assert_eq!(plane, 0, "counter overflow");
}

/// Computes the full per-point sensitivity and negative-sensitivity
/// profile with bit-sliced counters (one pass of word operations per
/// coordinate, then one extraction pass).
pub fn sensitivity_profile(f: &BooleanFunction) -> SensitivityProfile {
    let m = f.arity();
    let words = f.words();
    let n_words = words.len();
    // counts fit in 5 bits for m <= 26
    let mut sens_planes = vec![vec![0u64; n_words]; 5];
    let mut neg_planes = vec![vec![0u64; n_words]; 5];

    for i in 1..=m {
        let s = i - 1;
        for (w, &word) in words.iter().enumerate().take(n_words) {
            let swapped = f.swapped_word(w, s);
            ripple_add(&mut sens_planes, w, word ^ swapped);
            let neg = word & !swapped & !BooleanFunction::upper_mask(w, s);
            ripple_add(&mut neg_planes, w, neg);
        }
    }

    let size = f.size() as usize;
    let mut sens = vec![0u8; size];
    let mut neg_sens = vec![0u8; size];
    for ix in 0..size {
        let w = ix >> 6;
        let b = ix & 63;
        let mut sv = 0u8;
        let mut nv = 0u8;
        for plane in 0..5 {
            sv |= ((sens_planes[plane][w] >> b & 1) as u8) << plane;
            nv |= ((neg_planes[plane][w] >> b & 1) as u8) << plane;
        }
        sens[ix] = sv;
        neg_sens[ix] = nv;
    }
    SensitivityProfile {
        arity: m,
        sens,
        neg_sens,
    }
}

fn check_coord(f: &BooleanFunction, i: u32) -> Result<()> {
    if !(1..=f.arity()).contains(&i) {
        return Err(Error::Coordinate {
            coord: i,
            arity: f.arity(),
        });
    }
    Ok(())
}

/// `Inf_i[f] = Pr_x[f(x) != f(x^i)]`, exact.
pub fn influence(f: &BooleanFunction, i: u32) -> Result<Rational> {
    check_coord(f, i)?;
    Ok(Rational::from_count(f.sensitive_point_count(i), f.arity()))
}

/// All `m` influences.
pub fn influences(f: &BooleanFunction) -> Vec<Rational> {
    (1..=f.arity())
        .map(|i| Rational::from_count(f.sensitive_point_count(i), f.arity()))
        .collect()
}

/// `Inf^-_i[f]`: the number of coordinate-`i` edges where `f` decreases
/// going up, over `2^(m-1)`. Zero exactly when `f` is non-decreasing in
/// coordinate `i`.
pub fn negative_influence(f: &BooleanFunction, i: u32) -> Result<Rational> {
    check_coord(f, i)?;
    Ok(Rational::from_count(
        f.violated_edge_count(i),
        f.arity() - 1,
    ))
}

/// All `m` negative influences.
pub fn negative_influences(f: &BooleanFunction) -> Vec<Rational> {
    (1..=f.arity())
        .map(|i| Rational::from_count(f.violated_edge_count(i), f.arity() - 1))
        .collect()
}

/// `TInf[f] = sum_i Inf_i[f]`, exact; equals `E[sens_f]`.
pub fn total_influence(f: &BooleanFunction) -> Rational {
    let total: u64 = (1..=f.arity()).map(|i| f.sensitive_point_count(i)).sum();
    Rational::new(total as i128, 1i128 << f.arity())
}

/// `E[sqrt(sens)]`, or `E[sqrt(neg_sens)]` when `directed`.
pub fn talagrand_functional(f: &BooleanFunction, directed: bool) -> f64 {
    sensitivity_profile(f).expected_sqrt(directed)
}

/// `Var[f] * sqrt(ln(2 + e / sum_i Inf_i^2))`, with the value pinned to 0
/// when `Var[f] = 0` (the influence sum may then vanish too).
pub fn eldan_gross_rhs(f: &BooleanFunction) -> f64 {
    let (_, var) = f.mean_variance();
    if var.is_zero() {
        return 0.0;
    }
    let sum_sq: f64 = influences(f)
        .iter()
        .map(|r| {
            let v = r.to_f64();
            v * v
        })
        .sum();
    var.to_f64() * libm::sqrt(libm::log(2.0 + core::f64::consts::E / sum_sq))
}

/// `max_i Inf_i * m / (Var[f] * ln m)` — the quantity the KKL theorem
/// bounds below by a universal constant.
pub fn kkl_witness_ratio(f: &BooleanFunction) -> Result<f64> {
    let m = f.arity();
    if m < 2 {
        return Err(Error::UndefinedRatio {
            reason: "KKL ratio needs arity >= 2",
        });
    }
    let (_, var) = f.mean_variance();
    if var.is_zero() {
        return Err(Error::UndefinedRatio {
            reason: "KKL ratio needs positive variance",
        });
    }
    let max_inf = influences(f)
        .into_iter()
        .max()
        .expect("arity >= 2 has influences");
    Ok(max_inf.to_f64() * m as f64 / (var.to_f64() * libm::log(m as f64)))
}

/// `max_neg_inf * m / (eps * ln m)` — the directed analogue tracked by the
/// counterexample experiments. `None` when `eps = 0` or `m < 2`.
pub fn directed_kkl_ratio(max_neg_inf: f64, eps: f64, m: u32) -> Option<f64> {
    if m < 2 || eps <= 0.0 {
        return None;
    }
    Some(max_neg_inf * m as f64 / (eps * libm::log(m as f64)))
}

/// Exact influence vectors plus the derived functionals, computed in one
/// sweep.
#[derive(Clone, Debug)]
pub struct InfluenceReport {
    pub inf: Vec<Rational>,
    pub neg_inf: Vec<Rational>,
    pub total_influence: Rational,
    pub variance: Rational,
    /// `E[sqrt(sens)]`.
    pub talagrand: f64,
    /// `E[sqrt(neg_sens)]`.
    pub directed_talagrand: f64,
    pub eg_rhs: f64,
    /// `None` when the ratio is undefined (zero variance or arity 1).
    pub kkl_witness_ratio: Option<f64>,
}

impl InfluenceReport {
    pub fn max_influence(&self) -> Rational {
        self.inf.iter().copied().max().unwrap_or(Rational::ZERO)
    }

    pub fn max_negative_influence(&self) -> Rational {
        self.neg_inf.iter().copied().max().unwrap_or(Rational::ZERO)
    }
}

/// Builds the [`InfluenceReport`] for `f`.
pub fn influence_report(f: &BooleanFunction) -> InfluenceReport {
    let profile = sensitivity_profile(f);
    let inf = influences(f);
    let neg_inf = negative_influences(f);
    let (_, variance) = f.mean_variance();
    InfluenceReport {
        total_influence: total_influence(f),
        talagrand: profile.expected_sqrt(false),
        directed_talagrand: profile.expected_sqrt(true),
        eg_rhs: eldan_gross_rhs(f),
        kkl_witness_ratio: kkl_witness_ratio(f).ok(),
        inf,
        neg_inf,
        variance,
    }
}

/// Either an exact rational or a floating-point functional value.
#[derive(Clone, Copy, Debug)]
pub enum MetricValue {
    Exact(Rational),
    Real(f64),
}

impl MetricValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            MetricValue::Exact(r) => r.to_f64(),
            MetricValue::Real(v) => *v,
        }
    }
}

/// One inequality: left-hand side, right-hand side without its hidden
/// constant, and their ratio (`None` rendered as "undefined" downstream).
#[derive(Clone, Copy, Debug)]
pub struct InequalityLine {
    pub lhs: MetricValue,
    pub rhs: MetricValue,
    pub ratio: Option<f64>,
}

fn line(lhs: MetricValue, rhs: MetricValue) -> InequalityLine {
    let r = rhs.to_f64();
    let ratio = if r > 0.0 {
        Some(lhs.to_f64() / r)
    } else {
        None
    };
    InequalityLine { lhs, rhs, ratio }
}

/// LHS/RHS/ratio for each inequality; the directed rows require the exact
/// distance to monotonicity and are present only when it is supplied.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    /// `TInf >= Var`, constant 1.
    pub poincare: InequalityLine,
    /// `E[sqrt(sens)] >= c * Var`.
    pub talagrand: InequalityLine,
    /// `max Inf >= c * Var * ln(m)/m`.
    pub kkl: InequalityLine,
    /// `E[sqrt(sens)] >= c * Var * sqrt(ln(2 + e/sum Inf^2))`.
    pub eldan_gross: InequalityLine,
    /// `E[sqrt(neg_sens)] >= c * eps`.
    pub directed_talagrand: Option<InequalityLine>,
    /// The refuted directed analogue: `max NegInf` vs `eps * ln(m)/m`.
    pub directed_kkl: Option<InequalityLine>,
}

/// Builds the inequality report from an [`InfluenceReport`]; pass the
/// distance to monotonicity to include the directed rows.
pub fn inequality_report(
    f: &BooleanFunction,
    report: &InfluenceReport,
    eps: Option<Rational>,
) -> InequalityReport {
    let m = f.arity();
    let var = report.variance;
    let log_m_over_m = if m >= 2 {
        libm::log(m as f64) / m as f64
    } else {
        0.0
    };

    let poincare = line(
        MetricValue::Exact(report.total_influence),
        MetricValue::Exact(var),
    );
    let talagrand = line(MetricValue::Real(report.talagrand), MetricValue::Exact(var));
    let kkl = line(
        MetricValue::Exact(report.max_influence()),
        MetricValue::Real(var.to_f64() * log_m_over_m),
    );
    let eldan_gross = line(
        MetricValue::Real(report.talagrand),
        MetricValue::Real(report.eg_rhs),
    );
    let directed = eps.map(|eps| {
        (
            line(
                MetricValue::Real(report.directed_talagrand),
                MetricValue::Exact(eps),
            ),
            line(
                MetricValue::Exact(report.max_negative_influence()),
                MetricValue::Real(eps.to_f64() * log_m_over_m),
            ),
        )
    });
    let (directed_talagrand, directed_kkl) = match directed {
        Some((t, k)) => (Some(t), Some(k)),
        None => (None, None),
    };
    InequalityReport {
        poincare,
        talagrand,
        kkl,
        eldan_gross,
        directed_talagrand,
        directed_kkl,
    }
}
