use std::collections::BTreeSet;

use super::{VertexId, WeightedGraph};

/// A vertex ordering together with each vertex's posterior neighbors (the
/// neighbors that come later in the order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<VertexId>,
    /// `position[v]` is the index of `v` in `order`.
    pub position: Vec<usize>,
    /// Posterior neighbors of each vertex, sorted by id.
    pub posterior: Vec<Vec<VertexId>>,
    pub degeneracy: usize,
}

impl DegeneracyOrdering {
    pub fn posterior(&self, v: VertexId) -> &[VertexId] {
        &self.posterior[v]
    }

    pub fn is_posterior(&self, v: VertexId, u: VertexId) -> bool {
        self.posterior[v].binary_search(&u).is_ok()
    }
}

/// Min-degree peeling. Loops are ignored and ties go to the smallest id.
pub fn degeneracy_ordering(g: &WeightedGraph) -> DegeneracyOrdering {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, VertexId)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut posterior = vec![Vec::new(); n];
    let mut degeneracy = 0;

    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for u in g.neighbor_ids(v) {
            if removed[u] {
                continue;
            }
            posterior[v].push(u);
            queue.remove(&(degree[u], u));
            degree[u] -= 1;
            queue.insert((degree[u], u));
        }
    }

    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    DegeneracyOrdering {
        order,
        position,
        posterior,
        degeneracy,
    }
}

/// Greedy coloring along the reverse peeling order. Each vertex sees only
/// its posterior neighbors already colored, so at most `d* + 1` colors are used.
pub fn greedy_coloring(g: &WeightedGraph, ord: &DegeneracyOrdering) -> Vec<usize> {
    const UNCOLORED: usize = usize::MAX;
    let mut color = vec![UNCOLORED; g.n()];
    let mut taken = Vec::new();
    for &v in ord.order.iter().rev() {
        taken.clear();
        taken.extend(
            g.neighbor_ids(v)
                .map(|u| color[u])
                .filter(|&c| c != UNCOLORED),
        );
        taken.sort_unstable();
        taken.dedup();
        let mut c = 0;
        for &t in &taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        color[v] = c;
    }
    color
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let mut g = WeightedGraph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1).unwrap();
        }
        g
    }

    fn grid(rows: usize, cols: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        graph(rows * cols, &edges)
    }

    /// Degeneracy as the maximum, over all non-empty vertex subsets, of the
    /// minimum degree in the induced subgraph.
    fn brute_degeneracy(g: &WeightedGraph) -> usize {
        let n = g.n();
        (1u32..(1 << n))
            .map(|mask| {
                (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| g.neighbor_ids(v).filter(|&u| mask >> u & 1 == 1).count())
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap_or(0)
    }

    fn is_proper(g: &WeightedGraph, color: &[usize]) -> bool {
        g.edges().all(|(u, v, _)| color[u] != color[v])
    }

    #[test]
    fn small_examples() {
        assert_eq!(degeneracy_ordering(&graph(4, &[(0, 1), (1, 2), (2, 3)])).degeneracy, 1);
        assert_eq!(degeneracy_ordering(&graph(3, &[(0, 1), (1, 2), (0, 2)])).degeneracy, 2);
        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let ord = degeneracy_ordering(&star);
        assert_eq!(ord.degeneracy, 1);
        assert_eq!(ord.order[..5], [1, 2, 3, 4, 0]);
        let empty = degeneracy_ordering(&WeightedGraph::new());
        assert!(empty.order.is_empty());
        assert_eq!(empty.degeneracy, 0);
    }

    #[test]
    fn grid_degeneracy_matches_brute_force() {
        let g = grid(3, 3);
        assert_eq!(brute_degeneracy(&g), 2);
        assert_eq!(degeneracy_ordering(&g).degeneracy, 2);
    }

    #[test]
    fn loops_do_not_change_degeneracy() {
        let mut g = graph(3, &[(0, 1), (1, 2)]);
        g.add_loop_weight(1, 9).unwrap();
        let ord = degeneracy_ordering(&g);
        assert_eq!(ord.degeneracy, 1);
        assert!(ord.posterior.iter().enumerate().all(|(v, p)| !p.contains(&v)));
    }

    #[test]
    fn coloring_examples() {
        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let c = greedy_coloring(&star, &degeneracy_ordering(&star));
        assert_eq!(c.iter().max().unwrap() + 1, 2);
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = greedy_coloring(&tri, &degeneracy_ordering(&tri));
        assert_eq!(c.iter().max().unwrap() + 1, 3);
        let p5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let c = greedy_coloring(&p5, &degeneracy_ordering(&p5));
        assert!(is_proper(&p5, &c));
        assert_eq!(c.iter().max().unwrap() + 1, 2);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = WeightedGraph::with_vertices(n);
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            g.add_edge(u, v, 1).unwrap();
                        }
                        i += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn ordering_properties(g in arb_graph(10)) {
            let ord = degeneracy_ordering(&g);
            prop_assert_eq!(ord.degeneracy, brute_degeneracy(&g));
            prop_assert_eq!(&ord, &degeneracy_ordering(&g));
            let d = ord.degeneracy;
            prop_assert!(ord.posterior.iter().all(|p| p.len() <= d));
            prop_assert!(g.n() == 0 || ord.posterior.iter().any(|p| p.len() == d));
            for v in 0..g.n() {
                let expected: Vec<_> = g
                    .neighbor_ids(v)
                    .filter(|&u| ord.position[u] > ord.position[v])
                    .collect();
                prop_assert_eq!(&ord.posterior[v], &expected);
            }
            let color = greedy_coloring(&g, &ord);
            prop_assert!(is_proper(&g, &color));
            prop_assert!(color.iter().all(|&c| c <= d));

            let sum_deg: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert!(sum_deg <= 2 * g.n() * d);
            let low = (0..g.n()).filter(|&v| g.degree(v) <= 2 * d).count();
            prop_assert!(low * (2 * d + 1) >= g.n());
        }
    }
}
