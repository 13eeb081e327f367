//! Dinic maximum flow with blocking-flow phases, on a compact CSR
//! adjacency. Capacities are integral; the computed flow is exact.

use alloc::vec;
use alloc::vec::Vec;

/// Edge-list builder; freeze into a [`FlowGraph`] before solving.
pub struct FlowBuilder {
    nodes: usize,
    edges: Vec<(u32, u32, u32)>,
}

impl FlowBuilder {
    pub fn new(nodes: usize) -> Self {
        FlowBuilder {
            nodes,
            edges: Vec::new(),
        }
    }

    pub fn with_capacity(nodes: usize, edges: usize) -> Self {
        FlowBuilder {
            nodes,
            edges: Vec::with_capacity(edges),
        }
    }

    pub fn add_edge(&mut self, from: u32, to: u32, cap: u32) {
        debug_assert!((from as usize) < self.nodes && (to as usize) < self.nodes);
        self.edges.push((from, to, cap));
    }

    pub fn build(self) -> FlowGraph {
        let n = self.nodes;
        let mut degree = vec![0u32; n + 1];
        for &(u, v, _) in &self.edges {
            degree[u as usize + 1] += 1;
            degree[v as usize + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let start = degree;
        let total = start[n] as usize;
        let mut eto = vec![0u32; total];
        let mut ecap = vec![0u32; total];
        let mut epair = vec![0u32; total];
        let mut cursor: Vec<u32> = start[..n].to_vec();
        for &(u, v, cap) in &self.edges {
            let a = cursor[u as usize];
            cursor[u as usize] += 1;
            let b = cursor[v as usize];
            cursor[v as usize] += 1;
            eto[a as usize] = v;
            ecap[a as usize] = cap;
            epair[a as usize] = b;
            eto[b as usize] = u;
            ecap[b as usize] = 0;
            epair[b as usize] = a;
        }
        FlowGraph {
            n,
            start,
            eto,
            ecap,
            epair,
            level: vec![0; n],
            iter: vec![0; n],
        }
    }
}

/// A directed flow network in CSR form, with residual capacities updated
/// in place by [`max_flow`](FlowGraph::max_flow).
pub struct FlowGraph {
    n: usize,
    start: Vec<u32>,
    eto: Vec<u32>,
    ecap: Vec<u32>,
    epair: Vec<u32>,
    level: Vec<i32>,
    iter: Vec<u32>,
}

impl FlowGraph {
    pub fn node_count(&self) -> usize {
        self.n
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = Vec::with_capacity(self.n / 4 + 1);
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for e in self.start[u]..self.start[u + 1] {
                let v = self.eto[e as usize] as usize;
                if self.ecap[e as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push(v as u32);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64) -> u64 {
        if u == t {
            return limit;
        }
        while self.iter[u] < self.start[u + 1] {
            let e = self.iter[u] as usize;
            let v = self.eto[e] as usize;
            let cap = self.ecap[e];
            if cap > 0 && self.level[v] == self.level[u] + 1 {
                let pushed = self.dfs(v, t, limit.min(cap as u64));
                if pushed > 0 {
                    self.ecap[e] -= pushed as u32;
                    self.ecap[self.epair[e] as usize] += pushed as u32;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Exact maximum `s`-`t` flow. Residual capacities stay in the graph,
    /// so [`source_side`](Self::source_side) afterwards yields a minimum
    /// cut.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        assert!(s != t);
        let mut total = 0u64;
        while self.bfs(s, t) {
            self.iter.copy_from_slice(&self.start[..self.n]);
            loop {
                let pushed = self.dfs(s, t, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual graph; after `max_flow`
    /// this is the minimal source side over all minimum cuts.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s as u32];
        while let Some(u) = stack.pop() {
            let u = u as usize;
            for e in self.start[u]..self.start[u + 1] {
                let v = self.eto[e as usize] as usize;
                if self.ecap[e as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v as u32);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_network() {
        let mut b = FlowBuilder::new(6);
        b.add_edge(0, 1, 10);
        b.add_edge(0, 2, 10);
        b.add_edge(1, 3, 4);
        b.add_edge(1, 4, 8);
        b.add_edge(2, 4, 9);
        b.add_edge(3, 5, 10);
        b.add_edge(4, 3, 6);
        b.add_edge(4, 5, 10);
        let mut g = b.build();
        assert_eq!(g.max_flow(0, 5), 19);
    }

    #[test]
    fn disconnected_and_trivial() {
        let mut b = FlowBuilder::new(4);
        b.add_edge(0, 1, 10);
        b.add_edge(2, 3, 5);
        let mut g = b.build();
        assert_eq!(g.max_flow(0, 3), 0);

        let mut b = FlowBuilder::new(3);
        b.add_edge(0, 1, 10);
        let mut g = b.build();
        assert_eq!(g.max_flow(0, 2), 0);
    }

    #[test]
    fn multiple_paths() {
        let mut b = FlowBuilder::new(4);
        b.add_edge(0, 1, 10);
        b.add_edge(0, 2, 5);
        b.add_edge(1, 3, 10);
        b.add_edge(2, 3, 5);
        let mut g = b.build();
        assert_eq!(g.max_flow(0, 3), 15);
    }

    #[test]
    fn cut_separates_and_matches_flow() {
        let mut b = FlowBuilder::new(7);
        b.add_edge(0, 1, 10);
        b.add_edge(0, 2, 5);
        b.add_edge(1, 3, 9);
        b.add_edge(1, 4, 3);
        b.add_edge(2, 4, 7);
        b.add_edge(2, 5, 2);
        b.add_edge(3, 6, 10);
        b.add_edge(4, 6, 10);
        b.add_edge(5, 6, 5);
        let mut g = b.build();
        let flow = g.max_flow(0, 6);
        assert_eq!(flow, 15);

        let side = g.source_side(0);
        assert!(side[0] && !side[6]);
        // cut capacity across (side, complement) equals the flow
        let mut cut = 0u64;
        let mut builder_edges = vec![
            (0u32, 1u32, 10u32),
            (0, 2, 5),
            (1, 3, 9),
            (1, 4, 3),
            (2, 4, 7),
            (2, 5, 2),
            (3, 6, 10),
            (4, 6, 10),
            (5, 6, 5),
        ];
        for (u, v, c) in builder_edges.drain(..) {
            if side[u as usize] && !side[v as usize] {
                cut += c as u64;
            }
        }
        assert_eq!(cut, flow);
    }
}
