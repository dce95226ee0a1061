//! Ground truth for the solver and compressor: exhaustive search, seeded
//! instance generators and a biclique certificate checker.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, VertexId, WeightedGraph};
use crate::solver::{Algorithm, Solution, SolutionProvenance};
use crate::uset::{binomial, next_combination};

/// Largest number of `k`-subsets the brute-force solver will enumerate.
pub const BRUTE_MAX_SUBSETS: u128 = 10_000_000;

/// Maximum coverage over all `k`-subsets, ties to the lexicographically
/// smallest set.
pub fn brute_force_solve(g: &WeightedGraph, k: usize) -> Result<Solution> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::input(format!("k must satisfy 1 <= k <= n = {n}, got {k}")));
    }
    let count = binomial(n, k).filter(|&c| c <= BRUTE_MAX_SUBSETS).ok_or_else(|| {
        Error::capability(format!(
            "brute force needs C(n,k) <= {BRUTE_MAX_SUBSETS}, got n = {n}, k = {k}"
        ))
    })?;

    // Split by first element; each block is enumerated in lexicographic order.
    let best = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut in_set = vec![false; n];
            let mut rest: Vec<usize> = (0..k - 1).collect();
            let span = n - first - 1;
            let mut best: Option<(u64, Vec<VertexId>)> = None;
            loop {
                let set: Vec<VertexId> = std::iter::once(first)
                    .chain(rest.iter().map(|&r| first + 1 + r))
                    .collect();
                for &v in &set {
                    in_set[v] = true;
                }
                let value = g.coverage_of_mask(&in_set);
                for &v in &set {
                    in_set[v] = false;
                }
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, set));
                }
                if rest.is_empty() || !next_combination(&mut rest, span) {
                    break;
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }),
                (a, None) => a,
                (None, b) => b,
            },
        );
    let (value, vertices) = best.ok_or_else(|| Error::internal("empty enumeration"))?;
    Ok(Solution {
        vertices,
        value,
        reported_value: value,
        provenance: SolutionProvenance {
            algorithm: Algorithm::Brute,
            strategy: None,
            seed: None,
            delta: None,
            degeneracy: degeneracy_ordering(g).degeneracy,
            l: None,
            family_size: None,
            members_evaluated: count as u64,
        },
    })
}

/// Whether `left` and `right` are disjoint `p`-sets with every cross pair an edge.
pub fn check_biclique(g: &WeightedGraph, left: &[VertexId], right: &[VertexId], p: usize) -> bool {
    let distinct = |s: &[VertexId]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len() == s.len()
    };
    left.len() == p
        && right.len() == p
        && distinct(left)
        && distinct(right)
        && left.iter().all(|u| !right.contains(u))
        && left.iter().all(|&u| right.iter().all(|&v| g.has_edge(u, v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// Vertex `i` attaches to `min(d, i)` distinct earlier vertices.
    Degenerate { n: usize, d: usize },
    /// Vertex `i > 0` attaches to a uniformly random earlier vertex with
    /// probability 3/4 and starts a new tree otherwise.
    Forest { n: usize },
    Grid { rows: usize, cols: usize },
    Star { leaves: usize },
    Path { n: usize },
    /// Hub `0`, members `1..=members` adjacent to the hub, and `privates`
    /// fresh leaves hanging off each member.
    GadgetNice { k: usize, privates: usize, members: usize },
    /// `p` hubs joined to every one of `right` vertices, followed by a random
    /// forest of `noise` vertices attached to the right side.
    Biclique { p: usize, right: usize, noise: usize },
}

impl Model {
    /// The nice-subset gadget with `k + 2` members.
    pub fn gadget(k: usize, privates: usize) -> Model {
        Model::GadgetNice {
            k,
            privates,
            members: k + 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Degenerate { .. } => "degenerate",
            Model::Forest { .. } => "forest",
            Model::Grid { .. } => "grid",
            Model::Star { .. } => "star",
            Model::Path { .. } => "path",
            Model::GadgetNice { .. } => "gadget",
            Model::Biclique { .. } => "biclique",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Uniform integer weights in `1..=max`.
    Uniform(u64),
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "unit" {
            return Ok(WeightMode::Unit);
        }
        s.strip_prefix("uniform:")
            .and_then(|m| m.parse::<u64>().ok())
            .filter(|&m| m >= 1)
            .map(WeightMode::Uniform)
            .ok_or_else(|| Error::input(format!("weights must be `unit` or `uniform:MAX`, got {s:?}")))
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::Unit => f.write_str("unit"),
            WeightMode::Uniform(m) => write!(f, "uniform:{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub model: Model,
    pub seed: u64,
    pub weights: WeightMode,
}

impl GeneratorSpec {
    pub fn unit(model: Model, seed: u64) -> Self {
        GeneratorSpec {
            model,
            seed,
            weights: WeightMode::Unit,
        }
    }
}

/// Builds the instance described by `spec`. Identical specs give identical graphs.
pub fn generate(spec: &GeneratorSpec) -> Result<WeightedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let n = match spec.model {
        Model::Degenerate { n, d } => {
            for i in 1..n {
                for j in sample(&mut rng, i, d.min(i)).into_vec() {
                    edges.push((j, i));
                }
            }
            n
        }
        Model::Forest { n } => {
            for i in 1..n {
                if rng.gen_bool(0.75) {
                    edges.push((rng.gen_range(0..i), i));
                }
            }
            n
        }
        Model::Grid { rows, cols } => {
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
            rows * cols
        }
        Model::Star { leaves } => {
            edges.extend((1..=leaves).map(|i| (0, i)));
            leaves + 1
        }
        Model::Path { n } => {
            edges.extend((1..n).map(|i| (i - 1, i)));
            n
        }
        Model::GadgetNice { privates, members, .. } => {
            let mut next = members + 1;
            for u in 1..=members {
                edges.push((0, u));
                for _ in 0..privates {
                    edges.push((u, next));
                    next += 1;
                }
            }
            next
        }
        Model::Biclique { p, right, noise } => {
            for h in 0..p {
                for r in p..p + right {
                    edges.push((h, r));
                }
            }
            for i in 0..noise {
                let v = p + right + i;
                let parent = rng.gen_range(p..v);
                edges.push((parent, v));
            }
            p + right + noise
        }
    };
    if n == 0 {
        return Err(Error::input("generator parameters must be positive"));
    }

    let mut g = WeightedGraph::with_vertices(n);
    for (u, v) in edges {
        let w = match spec.weights {
            WeightMode::Unit => 1,
            WeightMode::Uniform(max) => rng.gen_range(1..=max),
        };
        g.add_edge(u, v, w)?;
    }
    check_promise(&spec.model, &g)?;
    Ok(g)
}

fn check_promise(model: &Model, g: &WeightedGraph) -> Result<()> {
    let d = degeneracy_ordering(g).degeneracy;
    let ok = match *model {
        Model::Degenerate { d: bound, .. } => d <= bound,
        Model::Forest { .. } | Model::Star { .. } | Model::Path { .. } | Model::GadgetNice { .. } => {
            is_acyclic(g)
        }
        Model::Grid { rows, cols } => {
            g.edge_count() == rows * (cols - 1) + cols * (rows - 1) && d <= 2
        }
        Model::Biclique { p, right, .. } => right < p || d == p,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::internal(format!("generated {} graph violates its promise", model.name())))
    }
}

fn is_acyclic(g: &WeightedGraph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    g.edges().all(|(u, v, _)| {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
        a != b
    })
}
