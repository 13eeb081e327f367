//! `sweep`: CSV of the directed ratio across tribe counts.
//!
//! One row per `(n, seed)`, exact for materializable arities and sampled
//! beyond, plus optional injected functions (`--inject <spec>`) reported
//! through the exact route with their arity in the `n` column.

use std::path::PathBuf;

use hyperiso_core::metrics;
use hyperiso_core::monotonicity;

use crate::commands::{emit, solve_instance, InstanceSolution};
use crate::error::CliResult;
use crate::json::ratio_csv;
use crate::spec;

pub const CSV_HEADER: &str = "n,seed,method,max_neg_inf,eps_or_proxy,ratio";

pub fn run(
    n_list: &[u64],
    seeds: u32,
    seed_base: u64,
    samples: u64,
    inject: &[String],
    out: &Option<PathBuf>,
) -> CliResult<()> {
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');

    for &n in n_list {
        for j in 0..seeds {
            let seed = seed_base + j as u64;
            match solve_instance(n, seed, samples)? {
                InstanceSolution::Exact {
                    max_neg_first,
                    max_neg_second,
                    eps,
                    ratio,
                    ..
                } => {
                    let max_neg = max_neg_first.max(max_neg_second);
                    csv.push_str(&format!(
                        "{n},{seed},mincut,{},{},{}\n",
                        max_neg.to_f64(),
                        eps.eps.to_f64(),
                        ratio_csv(ratio)
                    ));
                }
                InstanceSolution::Sampled {
                    max_neg_second,
                    eps_proxy,
                    ratio,
                    ..
                } => {
                    csv.push_str(&format!(
                        "{n},{seed},bilinear-proxy,{max_neg_second},{eps_proxy},{}\n",
                        ratio_csv(ratio)
                    ));
                }
            }
        }
    }

    for spec_str in inject {
        let parsed = spec::parse_func_spec(spec_str)?;
        let f = spec::load_function(&parsed)?.function;
        let max_neg = metrics::negative_influences(&f)
            .into_iter()
            .max()
            .unwrap_or(hyperiso_core::Rational::ZERO);
        let eps = monotonicity::distance_to_monotone_exact(&f)?;
        let ratio = metrics::directed_kkl_ratio(max_neg.to_f64(), eps.eps.to_f64(), f.arity());
        csv.push_str(&format!(
            "{},0,mincut,{},{},{}\n",
            f.arity(),
            max_neg.to_f64(),
            eps.eps.to_f64(),
            ratio_csv(ratio)
        ));
    }

    emit(out, csv)
}
