//! `analyze`: the full metric report for one function as a JSON document.

use std::path::PathBuf;
use std::time::Instant;

use hyperiso_core::hypercube::MAX_ARITY;
use hyperiso_core::metrics;
use hyperiso_core::monotonicity;
use serde::Serialize;

use crate::commands::emit;
use crate::error::CliResult;
use crate::json::{self, JsonEps, JsonInequalities, JsonInfluenceReport};
use crate::spec::{self, InstanceJson};

#[derive(Serialize)]
struct Parameters {
    spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<InstanceJson>,
}

#[derive(Serialize)]
struct SensitivitySummary {
    sens_histogram: Vec<u64>,
    neg_sens_histogram: Vec<u64>,
    max_sens: u8,
    max_neg_sens: u8,
}

#[derive(Serialize)]
struct AnalyzeRecord {
    command: &'static str,
    version: &'static str,
    parameters: Parameters,
    arity: u32,
    ones: u64,
    influence_report: JsonInfluenceReport,
    sensitivity_summary: SensitivitySummary,
    eps: Option<JsonEps>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps_skipped: Option<String>,
    inequalities: JsonInequalities,
    wall_time_ms: f64,
}

pub fn run(spec_str: &str, out: &Option<PathBuf>) -> CliResult<()> {
    let start = Instant::now();
    let parsed = spec::parse_func_spec(spec_str)?;
    let loaded = spec::load_function(&parsed)?;
    let f = &loaded.function;

    let report = metrics::influence_report(f);
    let profile = metrics::sensitivity_profile(f);

    let (eps_json, eps_rational, eps_skipped) = if f.arity() <= monotonicity::MAX_MINCUT_ARITY {
        let mut eps = monotonicity::distance_to_monotone_exact(f)?;
        if f.arity() <= monotonicity::MAX_MATCHING_ARITY {
            eps.matching_lower_bound = Some(monotonicity::matching_lower_bound(f)?);
        }
        (Some(JsonEps::of(&eps)), Some(eps.eps), None)
    } else {
        (
            None,
            None,
            Some(format!(
                "arity {} above the min-cut guard {}; use the sampled counterexample/sweep paths",
                f.arity(),
                monotonicity::MAX_MINCUT_ARITY
            )),
        )
    };

    let inequalities = metrics::inequality_report(f, &report, eps_rational);

    debug_assert!(f.arity() <= MAX_ARITY);
    let record = AnalyzeRecord {
        command: "analyze",
        version: env!("CARGO_PKG_VERSION"),
        parameters: Parameters {
            spec: spec_str.to_string(),
            instance: loaded.instance.as_ref().map(InstanceJson::of),
        },
        arity: f.arity(),
        ones: f.ones(),
        influence_report: JsonInfluenceReport::of(&report),
        sensitivity_summary: SensitivitySummary {
            sens_histogram: profile.sens_histogram(),
            neg_sens_histogram: profile.neg_sens_histogram(),
            max_sens: profile.sens().iter().copied().max().unwrap_or(0),
            max_neg_sens: profile.neg_sens().iter().copied().max().unwrap_or(0),
        },
        eps: eps_json,
        eps_skipped,
        inequalities: JsonInequalities::of(&inequalities),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    emit(out, json::render(&record))
}
