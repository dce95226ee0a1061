//! Undirected weighted graphs with self-loop weights.
//!
//! Vertices are dense ids `0..n` assigned in order of first appearance; the
//! original string labels are kept in a side table. Non-loop edges carry a
//! positive integer weight. A self-loop at `v` is not an edge in the adjacency
//! lists: it only contributes its weight `L(v)` to coverage and to the
//! incident weight of `v`.

mod io;
mod ordering;

pub use io::{parse_edge_list, read_edge_list};
pub use ordering::{degeneracy_ordering, greedy_coloring, DegeneracyOrdering};

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    /// Sorted by neighbor id.
    adj: Vec<Vec<(VertexId, u64)>>,
    loops: Vec<u64>,
    edge_count: usize,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on `n` isolated vertices labelled `"0"`, `"1"`, ...
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        g
    }

    /// Returns the id of `label`, creating the vertex if it does not exist yet.
    pub fn add_vertex(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.adj.push(Vec::new());
        self.loops.push(0);
        id
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edge count with a loop of weight `L` counted as `L` parallel loops, so
    /// that `sum |N(v)| == 2 * (m - sum L(v))`.
    pub fn m(&self) -> u64 {
        self.edge_count as u64 + self.loops.iter().sum::<u64>()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::input(format!("unknown vertex id {v} (n = {})", self.n())))
        }
    }

    /// Adds an undirected edge. `u == v` adds `w` to the loop weight of `u`.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, w: u64) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            self.loops[u] += w;
            return Ok(());
        }
        if w == 0 {
            return Err(Error::input(format!(
                "edge {} {} has weight 0; non-loop weights must be >= 1",
                self.labels[u], self.labels[v]
            )));
        }
        let pos = match self.adj[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(_) => {
                return Err(Error::input(format!(
                    "duplicate edge {} {}",
                    self.labels[u], self.labels[v]
                )))
            }
            Err(pos) => pos,
        };
        self.adj[u].insert(pos, (v, w));
        let pos = self.adj[v].binary_search_by_key(&u, |&(x, _)| x).unwrap_err();
        self.adj[v].insert(pos, (u, w));
        self.edge_count += 1;
        Ok(())
    }

    pub fn add_loop_weight(&mut self, v: VertexId, w: u64) -> Result<()> {
        self.add_edge(v, v, w)
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, u64)] {
        &self.adj[v]
    }

    pub fn neighbor_ids(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    /// Loopless degree `|N(v)|`.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn loop_weight(&self, v: VertexId) -> u64 {
        self.loops[v]
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<u64> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Non-loop edges as `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| {
            row.iter()
                .filter(move |&&(v, _)| v > u)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// Sum of all non-loop edge weights and loop weights.
    pub fn total_weight(&self) -> u64 {
        self.edges().map(|(_, _, w)| w).sum::<u64>() + self.loops.iter().sum::<u64>()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.adj.iter().flatten().all(|&(_, w)| w == 1)
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l > 0)
    }

    /// `sum_{u in N(v)} w(u, v) + L(v)`.
    pub fn incident_weight(&self, v: VertexId) -> Result<u64> {
        self.check(v)?;
        Ok(self.incident_weight_unchecked(v))
    }

    pub(crate) fn incident_weight_unchecked(&self, v: VertexId) -> u64 {
        self.adj[v].iter().map(|&(_, w)| w).sum::<u64>() + self.loops[v]
    }

    /// Total weight of edges with at least one endpoint in `s`; the loop at
    /// `v` counts once when `v` is in `s`. Repeated ids are treated as one.
    pub fn coverage(&self, s: &[VertexId]) -> Result<u64> {
        let mut in_set = vec![false; self.n()];
        for &v in s {
            self.check(v)?;
            in_set[v] = true;
        }
        Ok(self.coverage_of_mask(&in_set))
    }

    pub(crate) fn coverage_of_mask(&self, in_set: &[bool]) -> u64 {
        let mut total = 0;
        for (v, _) in in_set.iter().enumerate().filter(|(_, &b)| b) {
            total += self.loops[v];
            for &(u, w) in &self.adj[v] {
                // inner edges are charged to their larger endpoint only
                if !in_set[u] || u < v {
                    total += w;
                }
            }
        }
        total
    }

    /// Deletes `v` and its incident edges. Ids above `v` shift down by one,
    /// so the relative id order of the remaining vertices is unchanged.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        self.check(v)?;
        let removed = self.adj[v].len();
        for &(u, _) in &self.adj[v].clone() {
            let row = &mut self.adj[u];
            let pos = row.binary_search_by_key(&v, |&(x, _)| x).unwrap();
            row.remove(pos);
        }
        self.adj.remove(v);
        self.loops.remove(v);
        let label = self.labels.remove(v);
        self.index.remove(&label);
        for row in &mut self.adj {
            for entry in row.iter_mut() {
                if entry.0 > v {
                    entry.0 -= 1;
                }
            }
        }
        for id in self.index.values_mut() {
            if *id > v {
                *id -= 1;
            }
        }
        self.edge_count -= removed;
        Ok(())
    }

    /// Copy of the graph with every loop weight set to zero.
    pub fn without_loops(&self) -> WeightedGraph {
        let mut g = self.clone();
        g.loops.iter_mut().for_each(|l| *l = 0);
        g
    }

    /// Maps a list of labels to ids.
    pub fn resolve_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<VertexId>> {
        labels
            .iter()
            .map(|l| {
                self.vertex_id(l.as_ref())
                    .ok_or_else(|| Error::input(format!("unknown vertex label {:?}", l.as_ref())))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        let mut g = WeightedGraph::with_vertices(3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(0, 2, 1).unwrap();
        g
    }

    fn star(leaves: usize) -> WeightedGraph {
        let mut g = WeightedGraph::with_vertices(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(0, i, 1).unwrap();
        }
        g
    }

    #[test]
    fn coverage_examples() {
        let g = triangle();
        assert_eq!(g.coverage(&[0]).unwrap(), 2);
        assert_eq!(g.coverage(&[0, 1]).unwrap(), 3);
        assert_eq!(g.coverage(&[]).unwrap(), 0);
        assert_eq!(g.coverage(&[0, 1, 2]).unwrap(), 3);

        let mut iso = WeightedGraph::with_vertices(1);
        iso.add_loop_weight(0, 4).unwrap();
        assert_eq!(iso.coverage(&[0]).unwrap(), 4);
    }

    #[test]
    fn coverage_rejects_unknown_vertex() {
        assert!(matches!(triangle().coverage(&[7]), Err(Error::Input(_))));
    }

    #[test]
    fn incident_weight_examples() {
        let g = star(5);
        assert_eq!(g.incident_weight(0).unwrap(), 5);
        assert_eq!(g.incident_weight(3).unwrap(), 1);
        let mut iso = WeightedGraph::with_vertices(1);
        iso.add_loop_weight(0, 3).unwrap();
        assert_eq!(iso.incident_weight(0).unwrap(), 3);
        assert!(iso.incident_weight(1).is_err());
    }

    #[test]
    fn duplicate_and_zero_weight_edges_are_rejected() {
        let mut g = triangle();
        assert!(g.add_edge(1, 0, 1).is_err());
        assert!(g.add_edge(0, 0, 0).is_ok());
        let mut h = WeightedGraph::with_vertices(2);
        assert!(h.add_edge(0, 1, 0).is_err());
    }

    #[test]
    fn loops_stay_out_of_adjacency() {
        let mut g = triangle();
        g.add_loop_weight(1, 2).unwrap();
        g.add_loop_weight(1, 3).unwrap();
        assert_eq!(g.loop_weight(1), 5);
        assert_eq!(g.degree(1), 2);
        assert!(!g.neighbor_ids(1).any(|u| u == 1));
        assert_eq!(g.m(), 8);
        let sum_deg: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(sum_deg as u64, 2 * (g.m() - 5));
    }

    #[test]
    fn remove_vertex_compacts_ids() {
        let mut g = star(3);
        g.add_loop_weight(2, 1).unwrap();
        g.remove_vertex(0).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.label(1), "2");
        assert_eq!(g.vertex_id("2"), Some(1));
        assert_eq!(g.loop_weight(1), 1);

        let mut p = WeightedGraph::with_vertices(4);
        p.add_edge(0, 1, 1).unwrap();
        p.add_edge(1, 2, 2).unwrap();
        p.add_edge(2, 3, 3).unwrap();
        p.remove_vertex(1).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(1, 2, 3)]);
        assert_eq!(p.vertex_id("0"), Some(0));
    }
}
