//! Cross-path consistency: the Monte Carlo estimate of `E_x[Var_y]` must
//! agree with the exact bilinear variance within three reported standard
//! errors on at least 95% of the pinned (n, seed) grid.

use hyperiso_core::constructions::{mc_seed, TribesInstance};
use hyperiso_core::monotonicity;

#[test]
fn sampled_conditional_variance_tracks_exact() {
    let mut agree = 0u32;
    let mut total = 0u32;
    for n in [2u64, 4, 8] {
        for seed in 0..20u64 {
            let inst = TribesInstance::sample(n, seed).unwrap();
            let f = inst.to_function().unwrap();
            let exact = monotonicity::bilinear_variance(&f, inst.n())
                .unwrap()
                .to_f64();
            let est = inst.estimate_metrics(20_000, mc_seed(seed));
            total += 1;
            if (est.mean_cond_var - exact).abs() <= 3.0 * est.se_cond_var {
                agree += 1;
            }
        }
    }
    assert!(
        agree * 20 >= total * 19,
        "only {agree}/{total} within three standard errors"
    );
}
