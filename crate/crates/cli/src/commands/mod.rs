pub mod analyze;
pub mod counterexample;
pub mod gen;
pub mod sweep;
pub mod verify;

use std::path::PathBuf;

use hyperiso_core::constructions::{self, SampledReport, TribesInstance};
use hyperiso_core::metrics;
use hyperiso_core::monotonicity::{self, EpsResult};
use hyperiso_core::Rational;

use crate::error::CliResult;

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(out: &Option<PathBuf>, content: String) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| crate::error::CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Whether an `n`-tribe instance takes the exact route (materialized
/// table within the min-cut guard).
pub fn exact_route(n: u32) -> bool {
    2 * n <= monotonicity::MAX_MINCUT_ARITY
}

/// One solved instance: exact when the min-cut guard admits the arity,
/// otherwise sampled through the closed forms.
pub enum InstanceSolution {
    Exact {
        /// Over coordinates `1..=n`; zero by construction, computed anyway.
        max_neg_first: Rational,
        /// Over coordinates `n+1..=2n`.
        max_neg_second: Rational,
        eps: EpsResult,
        ratio: Option<f64>,
    },
    Sampled {
        report: SampledReport,
        max_neg_second: f64,
        /// `E_x[Var_y]`, the labeled stand-in for the exact distance.
        eps_proxy: f64,
        ratio: Option<f64>,
    },
}

/// Solves one `(n, seed)` instance. The Monte Carlo stream uses
/// [`constructions::mc_seed`] so sampling never replays the tribe draw.
pub fn solve_instance(n: u64, seed: u64, samples: u64) -> CliResult<InstanceSolution> {
    let instance = TribesInstance::sample(n, seed)?;
    let m = instance.arity();
    if exact_route(instance.n()) {
        let f = instance.to_function()?;
        let neg = metrics::negative_influences(&f);
        let split = instance.n() as usize;
        let max_neg_first = neg[..split].iter().copied().max().unwrap_or(Rational::ZERO);
        let max_neg_second = neg[split..].iter().copied().max().unwrap_or(Rational::ZERO);
        let eps = monotonicity::distance_to_monotone_exact(&f)?;
        let max_neg = max_neg_first.max(max_neg_second);
        let ratio = metrics::directed_kkl_ratio(max_neg.to_f64(), eps.eps.to_f64(), m);
        Ok(InstanceSolution::Exact {
            max_neg_first,
            max_neg_second,
            eps,
            ratio,
        })
    } else {
        let report = instance.estimate_metrics(samples, constructions::mc_seed(seed));
        let (_, max_neg_second) = report.max_neg_inf_y();
        let eps_proxy = report.mean_cond_var;
        let ratio = metrics::directed_kkl_ratio(max_neg_second, eps_proxy, m);
        Ok(InstanceSolution::Sampled {
            report,
            max_neg_second,
            eps_proxy,
            ratio,
        })
    }
}
