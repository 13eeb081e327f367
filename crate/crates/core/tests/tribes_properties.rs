//! Structural properties of the two-block tribes construction, checked
//! exactly on materialized instances.

use hyperiso_core::constructions::{self, TribesInstance, ZooSpec};
use hyperiso_core::metrics;
use hyperiso_core::monotonicity;
use hyperiso_core::{BooleanFunction, Rational};

#[test]
fn first_block_never_decreases_and_second_is_bounded() {
    for n in [2u64, 4, 8] {
        for seed in 0..6u64 {
            let inst = TribesInstance::sample(n, seed).unwrap();
            let f = inst.to_function().unwrap();
            let neg = metrics::negative_influences(&f);
            let split = inst.n() as usize;
            for (i, r) in neg[..split].iter().enumerate() {
                assert!(r.is_zero(), "n={n} seed={seed} x{}", i + 1);
            }
            let bound = Rational::new(1, n as i128);
            for (i, r) in neg[split..].iter().enumerate() {
                assert!(*r <= bound, "n={n} seed={seed} y{}: {r} > {bound}", i + 1);
            }
        }
    }
}

#[test]
fn bilinear_variance_equals_fired_count_formula() {
    for n in [2u64, 4, 8] {
        for seed in 0..6u64 {
            let inst = TribesInstance::sample(n, seed).unwrap();
            let f = inst.to_function().unwrap();
            assert_eq!(
                monotonicity::bilinear_variance(&f, inst.n()).unwrap(),
                inst.exact_conditional_variance_mean().unwrap(),
                "n={n} seed={seed}"
            );
        }
    }
}

#[test]
fn eps_and_bilinear_variance_vanish_together_on_structured_inputs() {
    // functions of the x-block alone: monotone, both quantities zero
    for n in [1u32, 2, 3] {
        let g = BooleanFunction::from_fn(2 * n, |ix| (1..=n).all(|c| ix.coordinate(c))).unwrap();
        let eps = monotonicity::distance_to_monotone_exact(&g).unwrap().eps;
        let bv = monotonicity::bilinear_variance(&g, n).unwrap();
        assert!(eps.is_zero());
        assert!(bv.is_zero());
    }
    // and a genuinely two-block function has both positive
    let inst = TribesInstance::sample(4, 0).unwrap();
    let f = inst.to_function().unwrap();
    let eps = monotonicity::distance_to_monotone_exact(&f).unwrap().eps;
    let bv = monotonicity::bilinear_variance(&f, 4).unwrap();
    assert!(!eps.is_zero() && !bv.is_zero());
}

#[test]
fn sampled_estimates_track_exact_values() {
    for (n, seed) in [(2u64, 1u64), (4, 3), (8, 5)] {
        let inst = TribesInstance::sample(n, seed).unwrap();
        let est = inst.estimate_metrics(30_000, constructions::mc_seed(seed));

        let dist = inst.exact_fired_distribution().unwrap();
        let total = 1u64 << inst.n();
        let exact_p0 = dist[0] as f64 / total as f64;
        assert!((est.p_zero - exact_p0).abs() <= 3.0 * est.se_p_zero.max(1e-4));

        let exact_mean = inst.exact_conditional_variance_mean().unwrap().to_f64();
        assert!((est.mean_cond_var - exact_mean).abs() <= 3.0 * est.se_cond_var.max(1e-5));

        // expected fired count is exactly one by linearity
        assert!((est.mean_fired - 1.0).abs() <= 3.0 * est.se_mean_fired.max(1e-4));
    }
}

#[test]
fn zoo_members_are_what_they_claim() {
    // tribes_bl satisfies its defining identity up to arity 12
    for (b, s) in [(2u32, 2u32), (3, 4), (2, 6)] {
        let f = constructions::zoo(&ZooSpec::TribesBl { width: b, count: s }).unwrap();
        assert_eq!(f.arity(), b * s);
        for ix in 0..f.size() {
            let fired = (0..s).any(|t| (0..b).all(|j| ix >> (t * b + j) & 1 == 1));
            assert_eq!(f.get(ix), fired);
        }
        // an OR of ANDs is monotone
        assert!(f.is_monotone());
    }

    let maj = constructions::zoo(&ZooSpec::Majority { m: 7 }).unwrap();
    assert!(maj.is_monotone());
    assert_eq!(maj.mean_variance().0, Rational::new(1, 2));

    let anti = constructions::zoo(&ZooSpec::AntiDictator { m: 6, i: 4 }).unwrap();
    for ix in 0..anti.size() {
        assert_eq!(anti.get(ix), ix >> 3 & 1 == 0);
    }
}
