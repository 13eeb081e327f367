//! Hopcroft–Karp maximum bipartite matching.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const UNMATCHED: u32 = u32::MAX;
const INF: u32 = u32::MAX;

/// Bipartite graph with `left` and `right` node counts and adjacency from
/// the left side.
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(l < self.left && r < self.right);
        self.adj[l].push(r as u32);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum()
    }

    fn bfs(&self, match_l: &[u32], match_r: &[u32], dist: &mut [u32]) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.left {
            if match_l[l] == UNMATCHED {
                dist[l] = 0;
                queue.push_back(l as u32);
            } else {
                dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l as usize] {
                let next = match_r[r as usize];
                if next == UNMATCHED {
                    found = true;
                } else if dist[next as usize] == INF {
                    dist[next as usize] = dist[l as usize] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn dfs(&self, l: usize, match_l: &mut [u32], match_r: &mut [u32], dist: &mut [u32]) -> bool {
        for idx in 0..self.adj[l].len() {
            let r = self.adj[l][idx] as usize;
            let next = match_r[r];
            if next == UNMATCHED
                || (dist[next as usize] == dist[l] + 1
                    && self.dfs(next as usize, match_l, match_r, dist))
            {
                match_l[l] = r as u32;
                match_r[r] = l as u32;
                return true;
            }
        }
        dist[l] = INF;
        false
    }

    /// Size of a maximum matching.
    pub fn max_matching(&self) -> usize {
        let mut match_l = vec![UNMATCHED; self.left];
        let mut match_r = vec![UNMATCHED; self.right];
        let mut dist = vec![INF; self.left];
        let mut size = 0;
        while self.bfs(&match_l, &match_r, &mut dist) {
            for l in 0..self.left {
                if match_l[l] == UNMATCHED && self.dfs(l, &mut match_l, &mut match_r, &mut dist) {
                    size += 1;
                }
            }
        }
        size
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain() {
        let mut g = BipartiteGraph::new(4, 4);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(1, 2);
        g.add_edge(2, 1);
        g.add_edge(2, 3);
        g.add_edge(3, 2);
        assert_eq!(g.max_matching(), 4);
    }

    #[test]
    fn classic() {
        let mut g = BipartiteGraph::new(5, 5);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        g.add_edge(2, 4);
        assert_eq!(g.max_matching(), 3);
    }

    #[test]
    fn empty() {
        let g = BipartiteGraph::new(0, 0);
        assert_eq!(g.max_matching(), 0);
        let g = BipartiteGraph::new(3, 3);
        assert_eq!(g.max_matching(), 0);
    }

    #[test]
    fn star() {
        let mut g = BipartiteGraph::new(3, 1);
        for l in 0..3 {
            g.add_edge(l, 0);
        }
        assert_eq!(g.max_matching(), 1);
    }
}
