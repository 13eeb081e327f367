//! Function families used as experiment corpus.
//!
//! The centerpiece is [`TribesInstance`]: `n` random width-`log2(n)`
//! tribes over the x-block, OR-combined and each gated by the negation of
//! one y-coordinate,
//!
//! ```text
//! f(x, y) = OR_i ( AND_{j in T_i} x_j ) AND (1 - y_i)
//! ```
//!
//! so the function is monotone on the x-block and anti-monotone on the
//! y-block. Small instances materialize into truth tables; larger ones
//! are analyzed through closed forms over the fired-tribe set plus seeded
//! Monte Carlo over x, never materializing the table.

use alloc::vec;
use alloc::vec::Vec;

use crate::hypercube::{BooleanFunction, MAX_ARITY};
use crate::rational::Rational;
use crate::rng::Xoshiro256;
use crate::{Error, Result};

/// Largest tribe count accepted by the symbolic path.
pub const MAX_TRIBE_COUNT: u64 = 1 << 20;
/// Largest tribe count for exact enumeration over the x-block.
pub const MAX_EXACT_ENUM_N: u32 = 20;

/// Derives the Monte Carlo stream seed for an instance seed, so x-samples
/// never replay the values that chose the tribe sets.
pub fn mc_seed(instance_seed: u64) -> u64 {
    instance_seed ^ 0xa5a5_a5a5_5a5a_5a5a
}

/// A sampled counterexample instance: `n` tribes of width `log2(n)`,
/// drawn independently and uniformly from the size-`w` subsets of `[n]`.
/// Coordinates are 1-based; regeneration from `(n, seed)` is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TribesInstance {
    n: u32,
    width: u32,
    seed: u64,
    tribes: Vec<Vec<u32>>,
}

fn check_tribe_count(n: u64) -> Result<u32> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { n });
    }
    if n > MAX_TRIBE_COUNT {
        return Err(Error::Capacity {
            what: "tribe count",
            limit: MAX_TRIBE_COUNT,
            requested: n,
        });
    }
    Ok(n as u32)
}

impl TribesInstance {
    /// Draws the `n` tribes from the seed; deterministic and uniform over
    /// size-`w` subsets (partial Fisher–Yates per tribe). Tribes may
    /// repeat across indices, matching independent draws.
    pub fn sample(n: u64, seed: u64) -> Result<Self> {
        let n = check_tribe_count(n)?;
        let width = n.trailing_zeros();
        let mut rng = Xoshiro256::seeded(seed);
        let mut pool: Vec<u32> = (1..=n).collect();
        let mut tribes = Vec::with_capacity(n as usize);
        for _ in 0..n {
            for slot in 0..width as usize {
                let pick = slot + rng.below((n as usize - slot) as u64) as usize;
                pool.swap(slot, pick);
            }
            let mut tribe = pool[..width as usize].to_vec();
            tribe.sort_unstable();
            tribes.push(tribe);
        }
        Ok(TribesInstance {
            n,
            width,
            seed,
            tribes,
        })
    }

    /// Rebuilds an instance from explicit tribe sets (e.g. a JSON file).
    /// The sets are validated and canonicalized to sorted order; the seed
    /// is kept as metadata.
    pub fn from_parts(n: u64, seed: u64, tribes: Vec<Vec<u32>>) -> Result<Self> {
        let n = check_tribe_count(n)?;
        let width = n.trailing_zeros();
        if tribes.len() != n as usize {
            return Err(Error::InvalidParameter {
                what: "tribe list length must equal n",
            });
        }
        let mut canon = Vec::with_capacity(tribes.len());
        for tribe in tribes {
            let mut t = tribe;
            t.sort_unstable();
            if t.len() != width as usize {
                return Err(Error::InvalidParameter {
                    what: "each tribe must have exactly log2(n) members",
                });
            }
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter {
                    what: "tribe members must be distinct",
                });
            }
            if t[0] < 1 || *t.last().unwrap() > n {
                return Err(Error::InvalidParameter {
                    what: "tribe members must lie in 1..=n",
                });
            }
            canon.push(t);
        }
        Ok(TribesInstance {
            n,
            width,
            seed,
            tribes: canon,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Tribe width `w = log2(n)`.
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The tribe sets, each sorted ascending, 1-based coordinates.
    pub fn tribes(&self) -> &[Vec<u32>] {
        &self.tribes
    }

    /// Arity of the materialized function.
    pub fn arity(&self) -> u32 {
        2 * self.n
    }

    fn tribe_masks(&self) -> Vec<u64> {
        self.tribes
            .iter()
            .map(|t| t.iter().fold(0u64, |acc, &c| acc | 1 << (c - 1)))
            .collect()
    }

    /// Materializes the truth table on `2n` coordinates: the x-block is
    /// `1..=n`, the y-block `n+1..=2n`.
    pub fn to_function(&self) -> Result<BooleanFunction> {
        let arity = self.arity();
        if arity > MAX_ARITY {
            return Err(Error::Capacity {
                what: "materialized tribes arity",
                limit: MAX_ARITY as u64,
                requested: arity as u64,
            });
        }
        let masks = self.tribe_masks();
        let x_mask = (1u64 << self.n) - 1;
        BooleanFunction::from_fn(arity, |ix| {
            let x = ix.value() & x_mask;
            let y = ix.value() >> self.n;
            masks
                .iter()
                .enumerate()
                .any(|(i, &t)| x & t == t && y >> i & 1 == 0)
        })
    }

    /// Indices (1-based) of tribes whose coordinates are all set in `x`,
    /// given as packed words of the `n`-bit point.
    pub fn fired_tribes(&self, x: &[u64]) -> Vec<u32> {
        debug_assert!(x.len() * 64 >= self.n as usize);
        let mut fired = Vec::new();
        'tribe: for (i, tribe) in self.tribes.iter().enumerate() {
            for &c in tribe {
                let bit = (c - 1) as usize;
                if x[bit >> 6] >> (bit & 63) & 1 == 0 {
                    continue 'tribe;
                }
            }
            fired.push(i as u32 + 1);
        }
        fired
    }

    /// Convenience for `n <= 64`: the point as a single word.
    pub fn fired_tribes_u64(&self, x: u64) -> Vec<u32> {
        self.fired_tribes(&[x])
    }

    /// `Var_y f(x, .)` for a point firing `k` tribes: the restriction is
    /// an OR of `k` distinct anti-dictators, so the variance is
    /// `(1 - 2^-k) * 2^-k` exactly.
    pub fn conditional_variance_for_count(k: u32) -> Rational {
        assert!(k <= 63, "exact conditional variance needs k <= 63");
        if k == 0 {
            return Rational::ZERO;
        }
        Rational::new(((1u128 << k) - 1) as i128, 1i128 << (2 * k))
    }

    /// Exact `Var_y f(x, .)` at the given x-point.
    pub fn conditional_variance(&self, x: &[u64]) -> Rational {
        Self::conditional_variance_for_count(self.fired_tribes(x).len() as u32)
    }

    /// Counts of fired-tribe multiplicities over every x in `{0,1}^n`,
    /// by direct enumeration (guarded at `n <= 20`).
    pub fn exact_fired_distribution(&self) -> Result<Vec<u64>> {
        self.check_enumerable()?;
        let masks = self.tribe_masks();
        let mut counts = vec![0u64; self.n as usize + 1];
        for x in 0..(1u64 << self.n) {
            let k = masks.iter().filter(|&&t| x & t == t).count();
            counts[k] += 1;
        }
        Ok(counts)
    }

    /// Exact negative influence of each y-coordinate of the materialized
    /// function, computed symbolically: flipping `y_i` up at `(x, y)`
    /// drops `f` iff tribe `i` fires at `x` and every other fired tribe
    /// `j` has `y_j = 1`, giving `sum_{x: i fired} 2^(n - k(x))` violated
    /// edges out of `2^(2n-1)`.
    pub fn exact_negative_influences_y(&self) -> Result<Vec<Rational>> {
        self.check_enumerable()?;
        let masks = self.tribe_masks();
        let mut sums = vec![0u64; self.n as usize];
        for x in 0..(1u64 << self.n) {
            let mut k = 0u32;
            for &t in &masks {
                if x & t == t {
                    k += 1;
                }
            }
            if k == 0 {
                continue;
            }
            let weight = 1u64 << (self.n - k);
            for (i, &t) in masks.iter().enumerate() {
                if x & t == t {
                    sums[i] += weight;
                }
            }
        }
        Ok(sums
            .into_iter()
            .map(|s| Rational::new(s as i128, 1i128 << (2 * self.n - 1)))
            .collect())
    }

    /// Exact `E_x[Var_y f(x, .)]` from the fired distribution; this is
    /// the quantity the bilinear-variance computation on the materialized
    /// table must reproduce.
    pub fn exact_conditional_variance_mean(&self) -> Result<Rational> {
        let counts = self.exact_fired_distribution()?;
        let mut sum = Rational::ZERO;
        for (k, &count) in counts.iter().enumerate() {
            if count > 0 && k > 0 {
                sum += Rational::from_int(count as i64)
                    * Self::conditional_variance_for_count(k as u32);
            }
        }
        Ok(sum * Rational::new(1, 1i128 << self.n))
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.n > MAX_EXACT_ENUM_N {
            return Err(Error::Capacity {
                what: "exact x-block enumeration",
                limit: MAX_EXACT_ENUM_N as u64,
                requested: self.n as u64,
            });
        }
        Ok(())
    }

    /// Seeded Monte Carlo over uniform x: fired-count distribution, the
    /// conditional-variance mean (the sampled stand-in for the distance
    /// to monotonicity), and per-y-coordinate negative-influence
    /// estimates from the closed form `2^-(k-1)` per fired tribe.
    pub fn estimate_metrics(&self, samples: u64, seed: u64) -> SampledReport {
        assert!(samples >= 1, "need at least one sample");
        let n = self.n as usize;
        let words = n.div_ceil(64);
        let tail_mask = if n % 64 == 0 {
            u64::MAX
        } else {
            (1u64 << (n % 64)) - 1
        };
        let mut rng = Xoshiro256::seeded(seed);
        let mut x = vec![0u64; words];

        let mut hist: Vec<u64> = Vec::new();
        let mut sum_k = 0.0f64;
        let mut sum_k2 = 0.0f64;
        let mut zero_count = 0u64;
        let mut two_plus_count = 0u64;
        let mut sum_v = 0.0f64;
        let mut sum_v2 = 0.0f64;
        let mut z_sum = vec![0.0f64; n];
        let mut z_sum2 = vec![0.0f64; n];

        for _ in 0..samples {
            rng.fill_words(&mut x);
            x[words - 1] &= tail_mask;
            let fired = self.fired_tribes(&x);
            let k = fired.len();
            if hist.len() <= k {
                hist.resize(k + 1, 0);
            }
            hist[k] += 1;
            sum_k += k as f64;
            sum_k2 += (k * k) as f64;
            if k == 0 {
                zero_count += 1;
            }
            if k >= 2 {
                two_plus_count += 1;
            }
            let v = cond_var_f64(k as u32);
            sum_v += v;
            sum_v2 += v * v;
            if k >= 1 {
                // exact fraction of decreasing y_i-edges at this x
                let z = libm::exp2(1.0 - k as f64);
                for &i in &fired {
                    z_sum[(i - 1) as usize] += z;
                    z_sum2[(i - 1) as usize] += z * z;
                }
            }
        }

        let s = samples as f64;
        let mean_fired = sum_k / s;
        let p_zero = zero_count as f64 / s;
        let p_two_plus = two_plus_count as f64 / s;
        let mean_cond_var = sum_v / s;
        let neg_inf_y: Vec<f64> = z_sum.iter().map(|&z| z / s).collect();
        let neg_inf_y_se: Vec<f64> = z_sum
            .iter()
            .zip(&z_sum2)
            .map(|(&z, &z2)| se_of_mean(z, z2, samples))
            .collect();
        SampledReport {
            samples,
            seed,
            fired_histogram: hist,
            mean_fired,
            se_mean_fired: se_of_mean(sum_k, sum_k2, samples),
            p_zero,
            se_p_zero: binomial_se(p_zero, s),
            p_two_plus,
            se_p_two_plus: binomial_se(p_two_plus, s),
            mean_cond_var,
            se_cond_var: se_of_mean(sum_v, sum_v2, samples),
            neg_inf_y,
            neg_inf_y_se,
        }
    }
}

fn cond_var_f64(k: u32) -> f64 {
    if k == 0 {
        0.0
    } else {
        let p = libm::exp2(-(k as f64));
        (1.0 - p) * p
    }
}

fn se_of_mean(sum: f64, sum_sq: f64, samples: u64) -> f64 {
    if samples < 2 {
        return 0.0;
    }
    let s = samples as f64;
    let var = ((sum_sq - sum * sum / s) / (s - 1.0)).max(0.0);
    libm::sqrt(var / s)
}

fn binomial_se(p: f64, s: f64) -> f64 {
    libm::sqrt(p * (1.0 - p) / s)
}

/// Monte Carlo estimates over uniform x, deterministic in the seed.
#[derive(Clone, Debug)]
pub struct SampledReport {
    pub samples: u64,
    pub seed: u64,
    /// `fired_histogram[k]` = samples firing exactly `k` tribes.
    pub fired_histogram: Vec<u64>,
    pub mean_fired: f64,
    pub se_mean_fired: f64,
    pub p_zero: f64,
    pub se_p_zero: f64,
    pub p_two_plus: f64,
    pub se_p_two_plus: f64,
    /// Estimate of `E_x[Var_y f]` (the distance-to-monotonicity proxy).
    pub mean_cond_var: f64,
    pub se_cond_var: f64,
    /// `neg_inf_y[i]` estimates the negative influence of `y_{i+1}`.
    pub neg_inf_y: Vec<f64>,
    pub neg_inf_y_se: Vec<f64>,
}

impl SampledReport {
    /// Largest estimated y-block negative influence, with its 1-based
    /// tribe index.
    pub fn max_neg_inf_y(&self) -> (u32, f64) {
        let mut best = (1u32, 0.0f64);
        for (i, &v) in self.neg_inf_y.iter().enumerate() {
            if v > best.1 {
                best = (i as u32 + 1, v);
            }
        }
        best
    }
}

/// The classic-function zoo.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ZooSpec {
    Constant {
        m: u32,
        value: bool,
    },
    Dictator {
        m: u32,
        i: u32,
    },
    AntiDictator {
        m: u32,
        i: u32,
    },
    Parity {
        m: u32,
    },
    Majority {
        m: u32,
    },
    /// OR of `count` disjoint ANDs of `width` consecutive coordinates.
    TribesBl {
        width: u32,
        count: u32,
    },
    Random {
        m: u32,
        seed: u64,
    },
}

/// Materializes a zoo function.
pub fn zoo(spec: &ZooSpec) -> Result<BooleanFunction> {
    match *spec {
        ZooSpec::Constant { m, value } => BooleanFunction::from_fn(m, |_| value),
        ZooSpec::Dictator { m, i } => {
            check_zoo_coord(m, i)?;
            BooleanFunction::from_fn(m, |ix| ix.coordinate(i))
        }
        ZooSpec::AntiDictator { m, i } => {
            check_zoo_coord(m, i)?;
            BooleanFunction::from_fn(m, |ix| !ix.coordinate(i))
        }
        ZooSpec::Parity { m } => BooleanFunction::from_fn(m, |ix| ix.value().count_ones() % 2 == 1),
        ZooSpec::Majority { m } => {
            if m % 2 == 0 {
                return Err(Error::InvalidParameter {
                    what: "majority needs odd arity",
                });
            }
            BooleanFunction::from_fn(m, |ix| ix.value().count_ones() > m / 2)
        }
        ZooSpec::TribesBl { width, count } => {
            if width == 0 || count == 0 {
                return Err(Error::InvalidParameter {
                    what: "tribes_bl needs width >= 1 and count >= 1",
                });
            }
            let m =
                width
                    .checked_mul(count)
                    .filter(|&m| m <= MAX_ARITY)
                    .ok_or(Error::ArityRange {
                        arity: width.saturating_mul(count),
                        max: MAX_ARITY,
                    })?;
            let block_mask = (1u64 << width) - 1;
            BooleanFunction::from_fn(m, |ix| {
                (0..count).any(|t| {
                    let block = ix.value() >> (t * width) & block_mask;
                    block == block_mask
                })
            })
        }
        ZooSpec::Random { m, seed } => {
            let mut rng = Xoshiro256::seeded(seed);
            BooleanFunction::random(m, &mut rng)
        }
    }
}

fn check_zoo_coord(m: u32, i: u32) -> Result<()> {
    if i < 1 || i > m {
        return Err(Error::Coordinate { coord: i, arity: m });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::MonotoneDirection;
    use crate::metrics;
    use crate::monotonicity;

    #[test]
    fn sampling_shape_and_determinism() {
        let inst = TribesInstance::sample(2, 1).unwrap();
        assert_eq!(inst.width(), 1);
        for t in inst.tribes() {
            assert_eq!(t.len(), 1);
            assert!(t[0] >= 1 && t[0] <= 2);
        }

        let inst4 = TribesInstance::sample(4, 9).unwrap();
        assert_eq!(inst4.width(), 2);
        for t in inst4.tribes() {
            assert_eq!(t.len(), 2);
            assert!(t[0] < t[1] && t[1] <= 4);
        }

        assert_eq!(TribesInstance::sample(4, 9).unwrap(), inst4);
        assert_ne!(TribesInstance::sample(4, 10).unwrap(), inst4);

        assert!(matches!(
            TribesInstance::sample(3, 0),
            Err(Error::NotPowerOfTwo { n: 3 })
        ));
        assert!(matches!(
            TribesInstance::sample(1, 0),
            Err(Error::NotPowerOfTwo { n: 1 })
        ));
    }

    #[test]
    fn subset_sampling_is_uniform_ish() {
        // all six 2-subsets of [4] should appear across many seeds
        let mut seen = [0u32; 16];
        for seed in 0..600u64 {
            let inst = TribesInstance::sample(4, seed).unwrap();
            for t in inst.tribes() {
                let mask = t.iter().fold(0u32, |a, &c| a | 1 << (c - 1));
                seen[mask as usize] += 1;
            }
        }
        let subsets: Vec<u32> = (0..16u32).filter(|m| m.count_ones() == 2).collect();
        for &mask in &subsets {
            // 2400 draws over 6 subsets: each should be far from starved
            assert!(seen[mask as usize] > 250, "subset {mask:04b} undersampled");
        }
    }

    #[test]
    fn from_parts_validation() {
        let ok = TribesInstance::from_parts(2, 7, vec![vec![2], vec![1]]).unwrap();
        assert_eq!(ok.tribes()[0], vec![2]);
        assert!(TribesInstance::from_parts(2, 0, vec![vec![1]]).is_err());
        assert!(TribesInstance::from_parts(2, 0, vec![vec![1, 2], vec![1]]).is_err());
        assert!(TribesInstance::from_parts(2, 0, vec![vec![3], vec![1]]).is_err());
        assert!(TribesInstance::from_parts(
            4,
            0,
            vec![vec![1, 1], vec![1, 2], vec![1, 2], vec![1, 2]]
        )
        .is_err());
    }

    #[test]
    fn explicit_small_instance_table() {
        // T_1 = {1}, T_2 = {2}: f = (x1 and not y1) or (x2 and not y2)
        let inst = TribesInstance::from_parts(2, 0, vec![vec![1], vec![2]]).unwrap();
        let f = inst.to_function().unwrap();
        assert_eq!(f.to_bit_string(), "0111001101010000");

        // all tribes fire at the all-ones x with all-zero y
        assert!(f.get(0b0011));
        // all-ones y kills every disjunct
        for x in 0..4u64 {
            assert!(!f.get(0b1100 | x));
        }
    }

    #[test]
    fn fired_tribes_examples() {
        let inst = TribesInstance::from_parts(2, 0, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(inst.fired_tribes_u64(0b11), vec![1, 2]);
        assert_eq!(inst.fired_tribes_u64(0), Vec::<u32>::new());
        // x = (x1, x2) = (1, 0)
        assert_eq!(inst.fired_tribes_u64(0b01), vec![1]);

        for seed in 0..5u64 {
            let inst = TribesInstance::sample(8, seed).unwrap();
            assert_eq!(
                inst.fired_tribes_u64((1 << 8) - 1).len(),
                8,
                "all tribes fire on all-ones"
            );
            assert!(inst.fired_tribes_u64(0).is_empty());
        }
    }

    #[test]
    fn conditional_variance_values() {
        assert_eq!(
            TribesInstance::conditional_variance_for_count(0),
            Rational::ZERO
        );
        assert_eq!(
            TribesInstance::conditional_variance_for_count(1),
            Rational::new(1, 4)
        );
        assert_eq!(
            TribesInstance::conditional_variance_for_count(2),
            Rational::new(3, 16)
        );
        for k in 0..=10u32 {
            let exact = TribesInstance::conditional_variance_for_count(k).to_f64();
            assert!((exact - cond_var_f64(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn materialized_block_structure() {
        for seed in [0u64, 3, 11] {
            let inst = TribesInstance::sample(4, seed).unwrap();
            let f = inst.to_function().unwrap();
            for i in 1..=4u32 {
                assert!(matches!(
                    f.monotone_direction(i).unwrap(),
                    MonotoneDirection::Increasing | MonotoneDirection::Irrelevant
                ));
            }
            for i in 5..=8u32 {
                assert!(matches!(
                    f.monotone_direction(i).unwrap(),
                    MonotoneDirection::Decreasing | MonotoneDirection::Irrelevant
                ));
            }
        }
    }

    #[test]
    fn fire_probability_is_one_over_n() {
        for seed in 0..4u64 {
            let inst = TribesInstance::sample(8, seed).unwrap();
            let masks = inst.tribe_masks();
            for &mask in &masks {
                let fired_x = (0..(1u64 << 8)).filter(|&x| x & mask == mask).count() as u64;
                assert_eq!(Rational::from_count(fired_x, 8), Rational::new(1, 8));
            }
        }
    }

    #[test]
    fn exact_negative_influences_match_materialized() {
        for n in [2u64, 4] {
            for seed in 0..4u64 {
                let inst = TribesInstance::sample(n, seed).unwrap();
                let f = inst.to_function().unwrap();
                let symbolic = inst.exact_negative_influences_y().unwrap();
                for (i, &expect) in symbolic.iter().enumerate() {
                    let coord = inst.n() + i as u32 + 1;
                    assert_eq!(
                        metrics::negative_influence(&f, coord).unwrap(),
                        expect,
                        "n={n} seed={seed} y{}",
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn bilinear_variance_matches_closed_form() {
        for n in [2u64, 4] {
            for seed in 0..4u64 {
                let inst = TribesInstance::sample(n, seed).unwrap();
                let f = inst.to_function().unwrap();
                let by_restriction = monotonicity::bilinear_variance(&f, inst.n()).unwrap();
                let by_counting = inst.exact_conditional_variance_mean().unwrap();
                assert_eq!(by_restriction, by_counting, "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn restriction_with_one_fired_tribe_is_anti_dictator() {
        use crate::hypercube::Assignment;
        let inst = TribesInstance::sample(4, 7).unwrap();
        let f = inst.to_function().unwrap();
        // find an x firing exactly one tribe
        let (x, tribe) = (0..16u64)
            .find_map(|x| {
                let fired = inst.fired_tribes_u64(x);
                (fired.len() == 1).then(|| (x, fired[0]))
            })
            .expect("some x fires exactly one tribe");
        let a = Assignment::new((1..=4u32).map(|c| (c, x >> (c - 1) & 1 == 1))).unwrap();
        let restricted = f.restrict(&a).unwrap();
        let anti = BooleanFunction::from_fn(4, |iy| !iy.coordinate(tribe)).unwrap();
        assert_eq!(restricted, anti);
        assert_eq!(
            restricted.mean_variance().1,
            Rational::new(1, 4),
            "anti-dictator restriction has variance 1/4"
        );
    }

    #[test]
    fn estimator_is_deterministic_and_sane() {
        let inst = TribesInstance::sample(8, 5).unwrap();
        let a = inst.estimate_metrics(5000, 99);
        let b = inst.estimate_metrics(5000, 99);
        assert_eq!(a.mean_fired, b.mean_fired);
        assert_eq!(a.neg_inf_y, b.neg_inf_y);
        assert_eq!(a.fired_histogram, b.fired_histogram);

        // E[#fired] = 1 by linearity; generous 5-sigma guard here, the
        // calibrated 3-sigma checks live in the acceptance suite
        assert!((a.mean_fired - 1.0).abs() <= 5.0 * a.se_mean_fired + 1e-9);
        assert!(a.p_two_plus <= 0.5 + 5.0 * a.se_p_two_plus);
        let total: u64 = a.fired_histogram.iter().sum();
        assert_eq!(total, 5000);
    }

    #[test]
    fn estimator_matches_exact_small() {
        let inst = TribesInstance::sample(2, 1).unwrap();
        let est = inst.estimate_metrics(20000, 4);
        let exact = inst.exact_conditional_variance_mean().unwrap().to_f64();
        assert!((est.mean_cond_var - exact).abs() <= 3.0 * est.se_cond_var + 1e-9);

        let exact_neg = inst.exact_negative_influences_y().unwrap();
        for (i, &e) in exact_neg.iter().enumerate() {
            let se = est.neg_inf_y_se[i].max(1e-6);
            assert!((est.neg_inf_y[i] - e.to_f64()).abs() <= 4.0 * se);
        }
    }

    #[test]
    fn zoo_definitions_pointwise() {
        let d = zoo(&ZooSpec::Dictator { m: 3, i: 2 }).unwrap();
        for ix in 0..8u64 {
            assert_eq!(d.get(ix), ix >> 1 & 1 == 1);
        }

        let t = zoo(&ZooSpec::TribesBl { width: 2, count: 2 }).unwrap();
        for ix in 0..16u64 {
            let expect = (ix & 0b0011 == 0b0011) || (ix & 0b1100 == 0b1100);
            assert_eq!(t.get(ix), expect);
        }

        let r1 = zoo(&ZooSpec::Random { m: 4, seed: 8 }).unwrap();
        let r2 = zoo(&ZooSpec::Random { m: 4, seed: 8 }).unwrap();
        assert_eq!(r1, r2);

        let p = zoo(&ZooSpec::Parity { m: 5 }).unwrap();
        for ix in 0..32u64 {
            assert_eq!(p.get(ix), ix.count_ones() % 2 == 1);
        }

        let maj = zoo(&ZooSpec::Majority { m: 5 }).unwrap();
        for ix in 0..32u64 {
            assert_eq!(maj.get(ix), ix.count_ones() >= 3);
        }

        assert!(zoo(&ZooSpec::Majority { m: 4 }).is_err());
        assert!(zoo(&ZooSpec::Dictator { m: 3, i: 4 }).is_err());
        assert!(zoo(&ZooSpec::TribesBl { width: 9, count: 3 }).is_err());

        let c = zoo(&ZooSpec::Constant { m: 2, value: true }).unwrap();
        assert_eq!(c.ones(), 4);
    }
}
