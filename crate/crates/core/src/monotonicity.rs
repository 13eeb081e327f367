//! Exact distance to monotonicity and related certificates.
//!
//! The distance is computed as a minimum-cost up-set selection: a flow
//! network with a unit arc from the source for every 1-point, a unit arc
//! to the sink for every 0-point, and effectively-infinite arcs along
//! covering pairs `x < y`. Infinite arcs force the source side to be
//! up-closed, so every finite cut prices exactly the disagreements of `f`
//! with the monotone indicator of that up-set, and the minimum cut equals
//! `2^m * eps(f)`. Among optimal repairs, the one returned is the minimal
//! up-set (source-side reachability in the residual graph), which makes
//! results byte-stable for golden tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::flow::{FlowBuilder, FlowGraph};
use crate::hypercube::BooleanFunction;
use crate::matching::BipartiteGraph;
use crate::metrics;
use crate::rational::Rational;
use crate::{Error, Result};

/// Arity guard for the min-cut network (2^20 nodes plus source and sink).
pub const MAX_MINCUT_ARITY: u32 = 20;
/// Arity guard for brute-force enumeration of all monotone functions.
pub const MAX_BRUTEFORCE_ARITY: u32 = 5;
/// Arity guard for the violation-graph matching bound (up to 3^m pairs).
pub const MAX_MATCHING_ARITY: u32 = 14;

/// How an [`EpsResult`] was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EpsMethod {
    MinCut,
    BruteForce,
}

impl EpsMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EpsMethod::MinCut => "mincut",
            EpsMethod::BruteForce => "bruteforce",
        }
    }
}

/// Exact distance to monotonicity together with an optimal monotone
/// repair.
#[derive(Clone, Debug)]
pub struct EpsResult {
    /// `min_g monotone Pr[f != g]`, exact.
    pub eps: Rational,
    /// `2^m * eps`: how many table entries an optimal repair changes.
    pub changed_points: u64,
    pub method: EpsMethod,
    /// Filled in by callers that also run [`matching_lower_bound`].
    pub matching_lower_bound: Option<Rational>,
    /// An optimal monotone repair attaining `eps`.
    pub repair: BooleanFunction,
}

/// Per-coordinate counts of monotonicity-violating edges:
/// `count_i = #{x : x_i = 0, f(x) = 1, f(x^i) = 0}`. The identity
/// `count_i = NegInf_i * 2^(m-1)` is exact.
pub fn violated_edge_counts(f: &BooleanFunction) -> Vec<u64> {
    (1..=f.arity()).map(|i| f.violated_edge_count(i)).collect()
}

/// The closure network whose minimum cut is `2^m * eps(f)`.
pub struct FlowNetwork {
    arity: u32,
    graph: FlowGraph,
    source: usize,
    sink: usize,
    covering_arcs: u64,
}

impl FlowNetwork {
    /// Builds the network: node per point plus source and sink,
    /// unit arcs source->x for `f(x) = 1` and x->sink for `f(x) = 0`,
    /// and arcs of capacity `2^m + 1` (above any finite cut) along each
    /// covering pair.
    pub fn build(f: &BooleanFunction) -> Result<Self> {
        let m = f.arity();
        if m > MAX_MINCUT_ARITY {
            return Err(Error::Capacity {
                what: "min-cut network arity",
                limit: MAX_MINCUT_ARITY as u64,
                requested: m as u64,
            });
        }
        let size = f.size();
        let source = size as usize;
        let sink = size as usize + 1;
        let unbounded = (size + 1) as u32;
        let covering_arcs = m as u64 * (size >> 1);
        let mut b = FlowBuilder::with_capacity(size as usize + 2, (size + covering_arcs) as usize);
        for ix in 0..size {
            if f.get(ix) {
                b.add_edge(source as u32, ix as u32, 1);
            } else {
                b.add_edge(ix as u32, sink as u32, 1);
            }
            // covering arcs out of x along coordinates where x_i = 0
            let mut free = !ix & (size - 1);
            while free != 0 {
                let bit = free & free.wrapping_neg();
                b.add_edge(ix as u32, (ix | bit) as u32, unbounded);
                free ^= bit;
            }
        }
        Ok(FlowNetwork {
            arity: m,
            graph: b.build(),
            source,
            sink,
            covering_arcs,
        })
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn covering_arc_count(&self) -> u64 {
        self.covering_arcs
    }

    /// Solves the network: minimum-cut value and the minimal optimal
    /// up-set as a monotone indicator function.
    pub fn solve(mut self) -> (u64, BooleanFunction) {
        let cut = self.graph.max_flow(self.source, self.sink);
        let side = self.graph.source_side(self.source);
        let up_set = BooleanFunction::from_fn(self.arity, |ix| side[ix.value() as usize])
            .expect("arity validated at build");
        (cut, up_set)
    }
}

/// Exact `eps(f)` by minimum cut, with the minimal optimal repair as
/// witness. Guarded at arity [`MAX_MINCUT_ARITY`].
pub fn distance_to_monotone_exact(f: &BooleanFunction) -> Result<EpsResult> {
    let (cut, repair) = FlowNetwork::build(f)?.solve();
    // paranoid checks: the witness must be a monotone function at the
    // reported distance
    assert!(repair.is_monotone(), "min-cut witness not monotone");
    let disagreements: u64 = f
        .words()
        .iter()
        .zip(repair.words())
        .map(|(a, b)| (a ^ b).count_ones() as u64)
        .sum();
    assert_eq!(disagreements, cut, "witness distance differs from cut");
    Ok(EpsResult {
        eps: Rational::from_count(cut, f.arity()),
        changed_points: cut,
        method: EpsMethod::MinCut,
        matching_lower_bound: None,
        repair,
    })
}

/// All monotone truth tables on `m <= 5` variables, as the low `2^m` bits
/// of each word, built by the doubling recurrence: a function is monotone
/// on `m` variables iff both halves are monotone on `m-1` and the lower
/// half is pointwise below the upper.
pub fn monotone_truth_tables(m: u32) -> Result<Vec<u64>> {
    if m > MAX_BRUTEFORCE_ARITY {
        return Err(Error::Capacity {
            what: "monotone enumeration arity",
            limit: MAX_BRUTEFORCE_ARITY as u64,
            requested: m as u64,
        });
    }
    let mut family: Vec<u64> = vec![0b0, 0b1];
    for level in 1..=m {
        let half_bits = 1u32 << (level - 1);
        let mut next = Vec::new();
        for &lo in &family {
            for &hi in &family {
                if lo & !hi == 0 {
                    next.push(lo | hi << half_bits);
                }
            }
        }
        family = next;
    }
    Ok(family)
}

/// Exact `eps(f)` by scanning every monotone function; the oracle the
/// min-cut path is tested against. Guarded at arity
/// [`MAX_BRUTEFORCE_ARITY`].
pub fn distance_to_monotone_bruteforce(f: &BooleanFunction) -> Result<EpsResult> {
    let m = f.arity();
    if m > MAX_BRUTEFORCE_ARITY {
        return Err(Error::Capacity {
            what: "brute-force distance arity",
            limit: MAX_BRUTEFORCE_ARITY as u64,
            requested: m as u64,
        });
    }
    let table = f.table_u64().expect("arity <= 5 fits one word");
    let mut best_dist = u64::MAX;
    let mut best_table = 0u64;
    for g in monotone_truth_tables(m)? {
        let d = (table ^ g).count_ones() as u64;
        if d < best_dist {
            best_dist = d;
            best_table = g;
        }
    }
    Ok(EpsResult {
        eps: Rational::from_count(best_dist, m),
        changed_points: best_dist,
        method: EpsMethod::BruteForce,
        matching_lower_bound: None,
        repair: BooleanFunction::from_table_u64(m, best_table)?,
    })
}

/// The bipartite graph of violated comparable pairs: 1-points on the
/// left, 0-points on the right, an edge when `x <= y`. Empty iff `f` is
/// monotone.
pub struct ViolationGraph {
    ones: Vec<u64>,
    zeros: Vec<u64>,
    graph: BipartiteGraph,
}

impl ViolationGraph {
    /// Enumerates violated pairs by walking submasks of each 0-point.
    /// Guarded at arity [`MAX_MATCHING_ARITY`] (the pair count can reach
    /// `3^m`).
    pub fn build(f: &BooleanFunction) -> Result<Self> {
        let m = f.arity();
        if m > MAX_MATCHING_ARITY {
            return Err(Error::Capacity {
                what: "violation graph arity",
                limit: MAX_MATCHING_ARITY as u64,
                requested: m as u64,
            });
        }
        let mut ones = Vec::new();
        let mut zeros = Vec::new();
        let mut left_of = vec![u32::MAX; f.size() as usize];
        for ix in 0..f.size() {
            if f.get(ix) {
                left_of[ix as usize] = ones.len() as u32;
                ones.push(ix);
            } else {
                zeros.push(ix);
            }
        }
        let mut graph = BipartiteGraph::new(ones.len(), zeros.len());
        for (r, &y) in zeros.iter().enumerate() {
            // all x strictly below y with f(x) = 1
            let mut sub = y;
            loop {
                if sub != y && left_of[sub as usize] != u32::MAX {
                    graph.add_edge(left_of[sub as usize] as usize, r);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & y;
            }
        }
        Ok(ViolationGraph { ones, zeros, graph })
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count() == 0
    }

    pub fn ones(&self) -> &[u64] {
        &self.ones
    }

    pub fn zeros(&self) -> &[u64] {
        &self.zeros
    }

    pub fn max_matching(&self) -> usize {
        self.graph.max_matching()
    }
}

/// `(maximum matching of the violation graph) / 2^m`. Any monotone repair
/// must change an endpoint of every violated pair, and matched pairs are
/// disjoint, so this never exceeds `eps(f)`.
pub fn matching_lower_bound(f: &BooleanFunction) -> Result<Rational> {
    let vg = ViolationGraph::build(f)?;
    Ok(Rational::from_count(vg.max_matching() as u64, f.arity()))
}

/// `E_x[Var_y f(x, y)]` over the split `{0,1}^n x {0,1}^n`, exact.
///
/// Requires arity `2n`, `f` non-decreasing in coordinates `1..=n` and
/// non-increasing in `n+1..=2n`; computed by restricting the x-block to
/// each assignment and averaging `mean * (1 - mean)` of the restrictions.
pub fn bilinear_variance(f: &BooleanFunction, n: u32) -> Result<Rational> {
    use crate::hypercube::{Assignment, MonotoneDirection};

    if n == 0 || f.arity() != 2 * n {
        return Err(Error::SplitMismatch {
            arity: f.arity(),
            split: n,
        });
    }
    for i in 1..=n {
        match f.monotone_direction(i)? {
            MonotoneDirection::Increasing | MonotoneDirection::Irrelevant => {}
            _ => {
                return Err(Error::StructureViolation {
                    coord: i,
                    expected: "monotone non-decreasing",
                })
            }
        }
    }
    for i in n + 1..=2 * n {
        match f.monotone_direction(i)? {
            MonotoneDirection::Decreasing | MonotoneDirection::Irrelevant => {}
            _ => {
                return Err(Error::StructureViolation {
                    coord: i,
                    expected: "monotone non-increasing",
                })
            }
        }
    }

    let mut sum = Rational::ZERO;
    for x in 0..(1u64 << n) {
        let a = Assignment::new((1..=n).map(|c| (c, x >> (c - 1) & 1 == 1)))?;
        let (mean, var) = f.restrict(&a)?.mean_variance();
        debug_assert_eq!(var, mean * (Rational::ONE - mean));
        sum += var;
    }
    Ok(sum * Rational::new(1, 1i128 << n))
}

/// True when every coordinate is non-decreasing; used by tests and the
/// CLI to validate witnesses independently of `is_monotone`'s kernels.
pub fn eps_is_zero(f: &BooleanFunction) -> bool {
    metrics::negative_influences(f).iter().all(|r| r.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Xoshiro256;

    fn parity2() -> BooleanFunction {
        BooleanFunction::from_bit_string(2, "0110").unwrap()
    }

    #[test]
    fn violated_counts_examples() {
        let or2 = BooleanFunction::from_bit_string(2, "0111").unwrap();
        assert_eq!(violated_edge_counts(&or2), vec![0, 0]);

        let anti1 = BooleanFunction::from_bit_string(1, "10").unwrap();
        assert_eq!(violated_edge_counts(&anti1), vec![1]);

        assert_eq!(violated_edge_counts(&parity2()), vec![1, 1]);
    }

    #[test]
    fn monotone_family_counts() {
        // Dedekind numbers for m = 0..5
        let expected = [2usize, 3, 6, 20, 168, 7581];
        for m in 0..=5u32 {
            let family = monotone_truth_tables(m).unwrap();
            assert_eq!(family.len(), expected[m as usize]);
        }
        // every member of the family really is monotone, and distinct
        for m in 1..=4u32 {
            let mut family = monotone_truth_tables(m).unwrap();
            for &g in &family {
                let f = BooleanFunction::from_table_u64(m, g).unwrap();
                assert!(f.is_monotone());
            }
            family.sort_unstable();
            family.dedup();
            assert_eq!(family.len(), [3, 6, 20, 168][m as usize - 1]);
        }
        assert!(matches!(
            monotone_truth_tables(6),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn exact_distance_examples() {
        // monotone input: distance 0, repair is f itself
        let or2 = BooleanFunction::from_bit_string(2, "0111").unwrap();
        let r = distance_to_monotone_exact(&or2).unwrap();
        assert_eq!(r.eps, Rational::ZERO);
        assert_eq!(r.changed_points, 0);
        assert_eq!(r.repair, or2);

        // anti-dictator on one bit: either constant works, distance 1/2;
        // the minimal up-set is the empty one (constant 0)
        let anti1 = BooleanFunction::from_bit_string(1, "10").unwrap();
        let r = distance_to_monotone_exact(&anti1).unwrap();
        assert_eq!(r.eps, Rational::new(1, 2));
        assert_eq!(r.repair.to_bit_string(), "00");

        // anti-dictator embedded in two bits
        let anti2 = BooleanFunction::from_bit_string(2, "1010").unwrap();
        let r = distance_to_monotone_exact(&anti2).unwrap();
        assert_eq!(r.eps, Rational::new(1, 2));

        // parity on two bits: one change (11 -> 1) yields OR
        let r = distance_to_monotone_exact(&parity2()).unwrap();
        assert_eq!(r.eps, Rational::new(1, 4));
        assert_eq!(r.changed_points, 1);
        assert_eq!(r.repair.to_bit_string(), "0111");
    }

    #[test]
    fn bruteforce_matches_mincut_exhaustive_m2() {
        // all 16 functions on two bits, plus an independent third route:
        // scan all 16 candidate repairs filtered by pairwise monotonicity
        for table in 0..16u64 {
            let f = BooleanFunction::from_table_u64(2, table).unwrap();
            let bf = distance_to_monotone_bruteforce(&f).unwrap();
            let mc = distance_to_monotone_exact(&f).unwrap();
            assert_eq!(bf.eps, mc.eps, "table {table:04b}");

            let mut best = u64::MAX;
            for g in 0..16u64 {
                let gf = BooleanFunction::from_table_u64(2, g).unwrap();
                if gf.is_monotone() {
                    best = best.min((table ^ g).count_ones() as u64);
                }
            }
            assert_eq!(bf.changed_points, best);
        }
    }

    #[test]
    fn network_shape() {
        let f = BooleanFunction::from_bit_string(3, "01100101").unwrap();
        let net = FlowNetwork::build(&f).unwrap();
        assert_eq!(net.node_count(), 8 + 2);
        assert_eq!(net.covering_arc_count(), 3 * 4);
    }

    #[test]
    fn capacity_guards() {
        let f = BooleanFunction::from_fn(21, |_| false).unwrap();
        assert!(matches!(
            distance_to_monotone_exact(&f),
            Err(Error::Capacity { .. })
        ));
        let f6 = BooleanFunction::from_fn(6, |_| false).unwrap();
        assert!(matches!(
            distance_to_monotone_bruteforce(&f6),
            Err(Error::Capacity { .. })
        ));
        let f15 = BooleanFunction::from_fn(15, |_| false).unwrap();
        assert!(matches!(
            matching_lower_bound(&f15),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn matching_bound_examples() {
        let or2 = BooleanFunction::from_bit_string(2, "0111").unwrap();
        assert_eq!(matching_lower_bound(&or2).unwrap(), Rational::ZERO);

        let anti1 = BooleanFunction::from_bit_string(1, "10").unwrap();
        assert_eq!(matching_lower_bound(&anti1).unwrap(), Rational::new(1, 2));

        // anti-dictator on two bits: both violated pairs are disjoint
        let anti2 = BooleanFunction::from_bit_string(2, "1010").unwrap();
        let vg = ViolationGraph::build(&anti2).unwrap();
        assert_eq!(vg.edge_count(), 3);
        assert_eq!(matching_lower_bound(&anti2).unwrap(), Rational::new(1, 2));
    }

    #[test]
    fn matching_bound_sandwich_random() {
        let mut rng = Xoshiro256::seeded(31);
        for m in 1..=5u32 {
            for _ in 0..40 {
                let f = BooleanFunction::random(m, &mut rng).unwrap();
                let lb = matching_lower_bound(&f).unwrap();
                let exact = distance_to_monotone_exact(&f).unwrap();
                assert!(lb <= exact.eps);
                // distance to either constant bounds eps above
                let to_zero = Rational::from_count(f.ones(), m);
                let to_one = Rational::from_count(f.size() - f.ones(), m);
                assert!(exact.eps <= to_zero && exact.eps <= to_one);
                assert!(exact.repair.is_monotone());
            }
        }
    }

    #[test]
    fn eps_zero_iff_no_violations() {
        for table in 0..256u64 {
            let f = BooleanFunction::from_table_u64(3, table).unwrap();
            let vg = ViolationGraph::build(&f).unwrap();
            let exact = distance_to_monotone_exact(&f).unwrap();
            assert_eq!(vg.is_empty(), exact.eps.is_zero());
            assert_eq!(eps_is_zero(&f), exact.eps.is_zero());
        }
    }

    #[test]
    fn bilinear_variance_examples() {
        // f(x, y) = x_1 and not y_1
        let f = BooleanFunction::from_fn(2, |ix| ix.coordinate(1) && !ix.coordinate(2)).unwrap();
        assert_eq!(bilinear_variance(&f, 1).unwrap(), Rational::new(1, 8));

        // function of the x-block alone has zero conditional variance
        let g = BooleanFunction::from_fn(4, |ix| ix.coordinate(1) && ix.coordinate(2)).unwrap();
        assert_eq!(bilinear_variance(&g, 2).unwrap(), Rational::ZERO);

        // wrong split
        assert!(matches!(
            bilinear_variance(&f, 2),
            Err(Error::SplitMismatch { .. })
        ));

        // parity is neither monotone nor anti-monotone in any coordinate
        let parity4 = BooleanFunction::from_fn(4, |ix| ix.value().count_ones() % 2 == 1).unwrap();
        assert!(matches!(
            bilinear_variance(&parity4, 2),
            Err(Error::StructureViolation { .. })
        ));

        // monotone where anti-monotone is required
        let and4 = BooleanFunction::from_fn(4, |ix| ix.value() == 15).unwrap();
        assert!(matches!(
            bilinear_variance(&and4, 2),
            Err(Error::StructureViolation { coord: 3, .. })
        ));
    }
}
