//! `verify`: scan a corpus, check the exact inequalities, and compare the
//! measured minimum ratios of the hidden-constant inequalities against
//! frozen regression baselines.
//!
//! Corpus items:
//! - `exhaustive:m=<1..4>` — every function on `m` bits;
//! - `random:m=<int>,count=<int>,seed=<int>` — a seeded batch;
//! - any function spec (`zoo:...`, `file:...`, `tribes-ce:...`).
//!
//! The Poincaré inequality is checked as an exact rational comparison on
//! every function; a violation (impossible for a correct implementation)
//! exits with the verification failure code, as does an undercut
//! baseline.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use hyperiso_core::metrics::{self, InequalityReport};
use hyperiso_core::monotonicity;
use hyperiso_core::rng::Xoshiro256;
use hyperiso_core::BooleanFunction;
use serde::Serialize;

use crate::commands::emit;
use crate::error::{CliError, CliResult};
use crate::json::{self, ratio_json, RealOrUndefined};
use crate::spec;

/// Measured minimum ratios over the exhaustive corpora, frozen as
/// regression floors (a hair below the deterministic measured values).
/// Indexed by inequality name, then by `m`.
fn baselines() -> BTreeMap<&'static str, [(u32, f64); 3]> {
    let mut map = BTreeMap::new();
    map.insert(
        "talagrand",
        [(2, 3.999_999), (3, 3.999_999), (4, 3.999_999)],
    );
    map.insert("kkl", [(2, 7.694_373), (3, 5.461_434), (4, 4.396_784)]);
    map.insert(
        "eldan_gross",
        [(2, 3.211_380), (3, 3.211_380), (4, 3.211_380)],
    );
    map.insert(
        "directed_talagrand",
        [(2, 0.999_999), (3, 0.999_999), (4, 0.999_999)],
    );
    map.insert(
        "directed_kkl",
        [(2, 5.770_779), (3, 2.730_717), (4, 2.308_311)],
    );
    map
}

enum CorpusItem {
    Exhaustive { m: u32 },
    RandomBatch { m: u32, count: u32, seed: u64 },
    Single(spec::FuncSpec, String),
}

fn parse_corpus_item(s: &str) -> CliResult<CorpusItem> {
    if let Some(rest) = s.strip_prefix("exhaustive:") {
        let m: u32 = rest
            .strip_prefix("m=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| CliError::usage(format!("expected exhaustive:m=<int>, got `{s}`")))?;
        if !(1..=4).contains(&m) {
            return Err(CliError::usage(format!(
                "exhaustive corpus supports m in 1..=4, got `{s}`"
            )));
        }
        return Ok(CorpusItem::Exhaustive { m });
    }
    if let Some(rest) = s.strip_prefix("random:") {
        let mut m = None;
        let mut count = None;
        let mut seed = None;
        for kv in rest.split(',') {
            match kv.split_once('=') {
                Some(("m", v)) => m = v.parse().ok(),
                Some(("count", v)) => count = v.parse().ok(),
                Some(("seed", v)) => seed = v.parse().ok(),
                _ => {
                    return Err(CliError::usage(format!("unknown token `{kv}` in `{s}`")));
                }
            }
        }
        return match (m, count, seed) {
            (Some(m), Some(count), Some(seed)) => Ok(CorpusItem::RandomBatch { m, count, seed }),
            _ => Err(CliError::usage(format!(
                "expected random:m=..,count=..,seed=.., got `{s}`"
            ))),
        };
    }
    Ok(CorpusItem::Single(spec::parse_func_spec(s)?, s.to_string()))
}

#[derive(Clone)]
struct MinTracker {
    min: Option<(f64, String)>,
}

impl MinTracker {
    fn new() -> Self {
        MinTracker { min: None }
    }

    fn update(&mut self, ratio: Option<f64>, label: &str) {
        if let Some(r) = ratio {
            if self.min.as_ref().map_or(true, |(best, _)| r < *best) {
                self.min = Some((r, label.to_string()));
            }
        }
    }

    fn merge(&mut self, other: &MinTracker) {
        if let Some((r, label)) = &other.min {
            self.update(Some(*r), label);
        }
    }
}

struct Trackers {
    poincare: MinTracker,
    talagrand: MinTracker,
    kkl: MinTracker,
    eldan_gross: MinTracker,
    directed_talagrand: MinTracker,
    directed_kkl: MinTracker,
    poincare_violations: u64,
    functions_seen: u64,
}

impl Trackers {
    fn new() -> Self {
        Trackers {
            poincare: MinTracker::new(),
            talagrand: MinTracker::new(),
            kkl: MinTracker::new(),
            eldan_gross: MinTracker::new(),
            directed_talagrand: MinTracker::new(),
            directed_kkl: MinTracker::new(),
            poincare_violations: 0,
            functions_seen: 0,
        }
    }

    fn absorb(&mut self, f: &BooleanFunction, label: &str) -> CliResult<()> {
        self.functions_seen += 1;
        let report = metrics::influence_report(f);
        if report.total_influence < report.variance {
            self.poincare_violations += 1;
        }
        let eps = monotonicity::distance_to_monotone_exact(f)?.eps;
        let ineq: InequalityReport = metrics::inequality_report(f, &report, Some(eps));
        self.poincare.update(ineq.poincare.ratio, label);
        self.talagrand.update(ineq.talagrand.ratio, label);
        self.kkl.update(ineq.kkl.ratio, label);
        self.eldan_gross.update(ineq.eldan_gross.ratio, label);
        self.directed_talagrand
            .update(ineq.directed_talagrand.and_then(|l| l.ratio), label);
        self.directed_kkl
            .update(ineq.directed_kkl.and_then(|l| l.ratio), label);
        Ok(())
    }

    fn min_of(&self, name: &str) -> &MinTracker {
        match name {
            "talagrand" => &self.talagrand,
            "kkl" => &self.kkl,
            "eldan_gross" => &self.eldan_gross,
            "directed_talagrand" => &self.directed_talagrand,
            "directed_kkl" => &self.directed_kkl,
            _ => unreachable!(),
        }
    }
}

#[derive(Serialize)]
struct IneqSummary {
    min_ratio: RealOrUndefined,
    witness: Option<String>,
    baseline: Option<f64>,
    meets_baseline: Option<bool>,
}

#[derive(Serialize)]
struct VerifyRecord {
    command: &'static str,
    version: &'static str,
    parameters: Parameters,
    functions_checked: u64,
    poincare_holds_exactly: bool,
    results: BTreeMap<&'static str, IneqSummary>,
    baseline_failures: Vec<String>,
    ok: bool,
    wall_time_ms: f64,
}

#[derive(Serialize)]
struct Parameters {
    corpus: Vec<String>,
}

fn table_label(prefix: &str, f: &BooleanFunction) -> String {
    match f.table_u64() {
        Some(table) => format!("{prefix},table=0x{table:x}"),
        None => prefix.to_string(),
    }
}

pub fn run(corpus: &[String], out: &Option<PathBuf>) -> CliResult<()> {
    let start = Instant::now();
    let baselines = baselines();
    let mut global = Trackers::new();
    let mut baseline_failures: Vec<String> = Vec::new();

    for item_str in corpus {
        let item = parse_corpus_item(item_str)?;
        let mut local = Trackers::new();
        match item {
            CorpusItem::Exhaustive { m } => {
                let size = 1u64 << m;
                for table in 0..(1u128 << size) {
                    let f = BooleanFunction::from_fn(m, |ix| table >> ix.value() & 1 == 1)?;
                    let label = table_label(&format!("exhaustive:m={m}"), &f);
                    local.absorb(&f, &label)?;
                }
                for (name, floors) in &baselines {
                    if let Some(&(_, floor)) = floors.iter().find(|(fm, _)| *fm == m) {
                        if let Some((min, witness)) = &local.min_of(name).min {
                            if *min < floor {
                                baseline_failures.push(format!(
                                    "{name} over exhaustive:m={m}: min ratio {min} below frozen baseline {floor} (witness {witness})"
                                ));
                            }
                        }
                    }
                }
            }
            CorpusItem::RandomBatch { m, count, seed } => {
                let mut rng = Xoshiro256::seeded(seed);
                for index in 0..count {
                    let f = BooleanFunction::random(m, &mut rng)?;
                    let label = table_label(&format!("random:m={m},seed={seed},index={index}"), &f);
                    local.absorb(&f, &label)?;
                }
            }
            CorpusItem::Single(parsed, label) => {
                let f = spec::load_function(&parsed)?.function;
                local.absorb(&f, &label)?;
            }
        }
        global.poincare_violations += local.poincare_violations;
        global.functions_seen += local.functions_seen;
        global.poincare.merge(&local.poincare);
        global.talagrand.merge(&local.talagrand);
        global.kkl.merge(&local.kkl);
        global.eldan_gross.merge(&local.eldan_gross);
        global.directed_talagrand.merge(&local.directed_talagrand);
        global.directed_kkl.merge(&local.directed_kkl);
    }

    let poincare_ok = global.poincare_violations == 0;
    let ok = poincare_ok && baseline_failures.is_empty();

    let mut results = BTreeMap::new();
    let summarize = |tracker: &MinTracker, baseline: Option<f64>| {
        let meets = match (baseline, &tracker.min) {
            (Some(b), Some((min, _))) => Some(*min >= b),
            _ => None,
        };
        IneqSummary {
            min_ratio: ratio_json(tracker.min.as_ref().map(|(r, _)| *r)),
            witness: tracker.min.as_ref().map(|(_, w)| w.clone()),
            baseline,
            meets_baseline: meets,
        }
    };
    // baselines reported only when the corpus is a single exhaustive item
    // (the floors are tied to those corpora)
    let single_exhaustive_m = if corpus.len() == 1 {
        corpus[0]
            .strip_prefix("exhaustive:m=")
            .and_then(|v| v.parse::<u32>().ok())
    } else {
        None
    };
    let baseline_for = |name: &str| {
        single_exhaustive_m.and_then(|m| {
            baselines
                .get(name)?
                .iter()
                .find(|(fm, _)| *fm == m)
                .map(|(_, b)| *b)
        })
    };
    results.insert("poincare", summarize(&global.poincare, None));
    for name in [
        "talagrand",
        "kkl",
        "eldan_gross",
        "directed_talagrand",
        "directed_kkl",
    ] {
        results.insert(name, summarize(global.min_of(name), baseline_for(name)));
    }

    let record = VerifyRecord {
        command: "verify",
        version: env!("CARGO_PKG_VERSION"),
        parameters: Parameters {
            corpus: corpus.to_vec(),
        },
        functions_checked: global.functions_seen,
        poincare_holds_exactly: poincare_ok,
        results,
        baseline_failures: baseline_failures.clone(),
        ok,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    emit(out, json::render(&record))?;

    if !ok {
        let mut reasons = Vec::new();
        if !poincare_ok {
            reasons.push(format!(
                "{} Poincare violations",
                global.poincare_violations
            ));
        }
        reasons.extend(baseline_failures);
        return Err(CliError::Verification(reasons.join("; ")));
    }
    Ok(())
}
