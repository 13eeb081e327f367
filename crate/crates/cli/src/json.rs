//! JSON shapes shared by the report-emitting commands.
//!
//! Rationals serialize as `{"num": .., "den": ..}`, reals as doubles, and
//! undefined ratios as the explicit string `"undefined"`. Exact fields of
//! a record are byte-identical across reruns; only `wall_time_ms` varies.

use hyperiso_core::metrics::{InequalityLine, InequalityReport, InfluenceReport, MetricValue};
use hyperiso_core::monotonicity::EpsResult;
use hyperiso_core::Rational;
use serde::Serialize;

#[derive(Serialize, Clone, Copy)]
pub struct JsonRational {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for JsonRational {
    fn from(r: Rational) -> Self {
        // every reported quantity is a count over at most 2^52
        JsonRational {
            num: i64::try_from(r.num()).expect("rational numerator fits i64"),
            den: i64::try_from(r.den()).expect("rational denominator fits i64"),
        }
    }
}

/// A ratio that may be undefined (zero denominator).
#[derive(Serialize, Clone, Copy)]
#[serde(untagged)]
pub enum RealOrUndefined {
    Real(f64),
    Undefined(&'static str),
}

pub fn ratio_json(r: Option<f64>) -> RealOrUndefined {
    match r {
        Some(v) => RealOrUndefined::Real(v),
        None => RealOrUndefined::Undefined("undefined"),
    }
}

/// Renders an undefined ratio as the string `undefined` in CSV.
pub fn ratio_csv(r: Option<f64>) -> String {
    match r {
        Some(v) => format!("{v}"),
        None => "undefined".to_string(),
    }
}

#[derive(Serialize)]
pub struct JsonInfluenceReport {
    pub inf: Vec<JsonRational>,
    pub neg_inf: Vec<JsonRational>,
    pub total_influence: JsonRational,
    pub variance: JsonRational,
    pub talagrand: f64,
    pub directed_talagrand: f64,
    pub eg_rhs: f64,
    pub kkl_witness_ratio: RealOrUndefined,
}

impl JsonInfluenceReport {
    pub fn of(report: &InfluenceReport) -> Self {
        JsonInfluenceReport {
            inf: report.inf.iter().map(|&r| r.into()).collect(),
            neg_inf: report.neg_inf.iter().map(|&r| r.into()).collect(),
            total_influence: report.total_influence.into(),
            variance: report.variance.into(),
            talagrand: report.talagrand,
            directed_talagrand: report.directed_talagrand,
            eg_rhs: report.eg_rhs,
            kkl_witness_ratio: ratio_json(report.kkl_witness_ratio),
        }
    }
}

#[derive(Serialize)]
pub struct JsonEps {
    pub eps: JsonRational,
    pub changed_points: u64,
    pub method: &'static str,
    pub matching_lower_bound: Option<JsonRational>,
}

impl JsonEps {
    pub fn of(result: &EpsResult) -> Self {
        JsonEps {
            eps: result.eps.into(),
            changed_points: result.changed_points,
            method: result.method.as_str(),
            matching_lower_bound: result.matching_lower_bound.map(Into::into),
        }
    }
}

#[derive(Serialize, Clone, Copy)]
#[serde(untagged)]
pub enum JsonMetricValue {
    Exact(JsonRational),
    Real(f64),
}

impl From<MetricValue> for JsonMetricValue {
    fn from(v: MetricValue) -> Self {
        match v {
            MetricValue::Exact(r) => JsonMetricValue::Exact(r.into()),
            MetricValue::Real(x) => JsonMetricValue::Real(x),
        }
    }
}

#[derive(Serialize)]
pub struct JsonInequalityLine {
    pub lhs: JsonMetricValue,
    pub rhs: JsonMetricValue,
    pub ratio: RealOrUndefined,
}

impl JsonInequalityLine {
    fn of(line: &InequalityLine) -> Self {
        JsonInequalityLine {
            lhs: line.lhs.into(),
            rhs: line.rhs.into(),
            ratio: ratio_json(line.ratio),
        }
    }
}

#[derive(Serialize)]
pub struct JsonInequalities {
    pub poincare: JsonInequalityLine,
    pub talagrand: JsonInequalityLine,
    pub kkl: JsonInequalityLine,
    pub eldan_gross: JsonInequalityLine,
    pub directed_talagrand: Option<JsonInequalityLine>,
    pub directed_kkl: Option<JsonInequalityLine>,
}

impl JsonInequalities {
    pub fn of(report: &InequalityReport) -> Self {
        JsonInequalities {
            poincare: JsonInequalityLine::of(&report.poincare),
            talagrand: JsonInequalityLine::of(&report.talagrand),
            kkl: JsonInequalityLine::of(&report.kkl),
            eldan_gross: JsonInequalityLine::of(&report.eldan_gross),
            directed_talagrand: report
                .directed_talagrand
                .as_ref()
                .map(JsonInequalityLine::of),
            directed_kkl: report.directed_kkl.as_ref().map(JsonInequalityLine::of),
        }
    }
}

/// Pretty JSON with a trailing newline; field order is declaration order,
/// so identical values give identical bytes.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
