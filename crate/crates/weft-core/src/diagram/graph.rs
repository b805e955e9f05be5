//! Minimal simple digraph on vertices 1..=n.
//!
//! The wiring diagram keeps this in sync with its wire multiset: there is an
//! edge (u, v) exactly when at least one wire runs from a port of u to a port
//! of v. Vertex ids are dense and 1-based; slot 0 of the adjacency vectors is
//! unused.

use std::collections::BTreeSet;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct DiGraph {
    out_adj: Vec<BTreeSet<usize>>,
    in_adj: Vec<BTreeSet<usize>>,
}

impl DiGraph {
    pub fn with_vertices(n: usize) -> Self {
        DiGraph {
            out_adj: vec![BTreeSet::new(); n + 1],
            in_adj: vec![BTreeSet::new(); n + 1],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len().saturating_sub(1)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.out_adj.push(BTreeSet::new());
        self.in_adj.push(BTreeSet::new());
        self.vertex_count()
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= self.vertex_count()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(self.contains(u) && self.contains(v));
        self.out_adj[u].insert(v);
        self.in_adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.contains(u) && self.out_adj[u].contains(&v)
    }

    pub fn out_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.in_adj[v]
    }

    /// All edges in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.vertex_count() {
            for &v in &self.out_adj[u] {
                out.push((u, v));
            }
        }
        out
    }

    /// True if `to` is reachable from `from` along directed edges.
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.vertex_count() + 1];
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if seen[v] {
                continue;
            }
            seen[v] = true;
            stack.extend(self.out_adj[v].iter().copied().filter(|&w| !seen[w]));
        }
        false
    }

    /// Finds a directed cycle among vertices >= `min_vertex`, if any.
    ///
    /// Returns the cycle as a vertex list [v0, .., vk] meaning
    /// v0 -> .. -> vk -> v0; a self-loop yields a single-element list.
    /// Deterministic: vertices and neighbors are explored in ascending order.
    pub fn find_cycle_among(&self, min_vertex: usize) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.vertex_count();
        let mut color = vec![WHITE; n + 1];
        let mut path: Vec<usize> = Vec::new();

        for start in min_vertex..=n {
            if color[start] != WHITE {
                continue;
            }
            color[start] = GRAY;
            path.push(start);
            let mut stack: Vec<(usize, Vec<usize>)> =
                vec![(start, self.inner_succ(start, min_vertex))];
            while let Some(frame) = stack.last_mut() {
                let v = frame.0;
                if let Some(w) = frame.1.pop() {
                    match color[w] {
                        WHITE => {
                            color[w] = GRAY;
                            path.push(w);
                            stack.push((w, self.inner_succ(w, min_vertex)));
                        }
                        GRAY => {
                            let pos = path.iter().position(|&p| p == w).unwrap();
                            return Some(path[pos..].to_vec());
                        }
                        _ => {}
                    }
                } else {
                    color[v] = BLACK;
                    path.pop();
                    stack.pop();
                }
            }
        }
        None
    }

    /// Successors of `v` restricted to vertices >= `min_vertex`, in
    /// descending order so that popping yields ascending order.
    fn inner_succ(&self, v: usize, min_vertex: usize) -> Vec<usize> {
        self.out_adj[v]
            .iter()
            .copied()
            .filter(|&w| w >= min_vertex)
            .rev()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_reachability() {
        let mut g = DiGraph::with_vertices(4);
        g.add_edge(1, 3);
        g.add_edge(3, 4);
        g.add_edge(4, 2);
        g.add_edge(3, 4);
        assert_eq!(g.edges(), vec![(1, 3), (3, 4), (4, 2)]);
        assert!(g.reaches(1, 2));
        assert!(g.reaches(3, 2));
        assert!(!g.reaches(4, 3));
        assert_eq!(g.out_neighbors(3).iter().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(g.in_neighbors(4).iter().copied().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn two_cycle_witness() {
        let mut g = DiGraph::with_vertices(4);
        g.add_edge(3, 4);
        g.add_edge(4, 3);
        assert_eq!(g.find_cycle_among(3), Some(vec![3, 4]));
    }

    #[test]
    fn self_loop_witness() {
        let mut g = DiGraph::with_vertices(3);
        g.add_edge(3, 3);
        assert_eq!(g.find_cycle_among(3), Some(vec![3]));
    }

    #[test]
    fn acyclic_has_no_witness() {
        let mut g = DiGraph::with_vertices(5);
        g.add_edge(1, 3);
        g.add_edge(3, 4);
        g.add_edge(3, 5);
        g.add_edge(4, 5);
        g.add_edge(5, 2);
        assert_eq!(g.find_cycle_among(3), None);
    }

    #[test]
    fn growth() {
        let mut g = DiGraph::with_vertices(2);
        assert_eq!(g.add_vertex(), 3);
        assert_eq!(g.vertex_count(), 3);
        assert!(g.contains(3));
        assert!(!g.contains(4));
    }
}
