//! Exact Partial Vertex Cover via universal families over a degeneracy order.
//!
//! For a family member `U`, the value of `v` is its incident weight minus the
//! weight of edges to posterior neighbors that lie in `U`. Summing values over
//! any `A ⊆ U` never exceeds the coverage of `A`, since an edge inside `A` is
//! only charged to its later endpoint. If `U` separates an optimal `S` from the
//! posterior neighbors of `S` outside it, the sum is exact, and a universal
//! family over `l = k + k·d*` elements contains such a `U`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, DegeneracyOrdering, VertexId, WeightedGraph};
use crate::uset::{bits_to_vertices, build_universal_set, Strategy, SubsetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fpt,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveConfig {
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub delta: Option<f64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            strategy: Strategy::Auto,
            seed: None,
            delta: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionProvenance {
    pub algorithm: Algorithm,
    /// Concrete family strategy (FPT only).
    pub strategy: Option<Strategy>,
    pub seed: Option<u64>,
    pub delta: Option<f64>,
    pub degeneracy: usize,
    pub l: Option<usize>,
    pub family_size: Option<u64>,
    /// Family members with at least `k` elements, or `C(n, k)` for brute force.
    pub members_evaluated: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    /// Sorted ascending.
    pub vertices: Vec<VertexId>,
    /// Coverage of `vertices`, recomputed on the graph.
    pub value: u64,
    /// `val(U)` of the winning member; equals `value` for brute force.
    pub reported_value: u64,
    pub provenance: SolutionProvenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberEvaluation {
    pub member: usize,
    pub solution: Vec<VertexId>,
    pub value: u64,
}

fn val_with(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    v: VertexId,
    in_u: impl Fn(VertexId) -> bool,
) -> u64 {
    let excluded: u64 = ord
        .posterior(v)
        .iter()
        .filter(|&&u| in_u(u))
        .map(|&u| g.edge_weight(u, v).unwrap_or(0))
        .sum();
    g.incident_weight_unchecked(v) - excluded
}

/// `val_U(v)`: weight of edges from `v` to neighbors outside `PN(v) ∩ U`,
/// plus the loop weight of `v`.
pub fn value_of_vertex(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    u_set: &[VertexId],
    v: VertexId,
) -> Result<u64> {
    g.incident_weight(v)?;
    let mut mask = vec![false; g.n()];
    for &u in u_set {
        if u >= g.n() {
            return Err(Error::input(format!("unknown vertex id {u}")));
        }
        mask[u] = true;
    }
    Ok(val_with(g, ord, v, |u| mask[u]))
}

/// The `k` most valuable vertices of `members` (ties to the smaller id) and
/// their total value. `None` when fewer than `k` candidates exist.
fn top_k(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    members: &[VertexId],
    k: usize,
    in_u: impl Fn(VertexId) -> bool,
) -> Option<(Vec<VertexId>, u64)> {
    if members.len() < k {
        return None;
    }
    let mut scored: Vec<(u64, VertexId)> = members
        .iter()
        .map(|&v| (val_with(g, ord, v, &in_u), v))
        .collect();
    let by_value = |a: &(u64, VertexId), b: &(u64, VertexId)| b.0.cmp(&a.0).then(a.1.cmp(&b.1));
    if k < scored.len() {
        scored.select_nth_unstable_by(k - 1, by_value);
        scored.truncate(k);
    }
    let total = scored.iter().map(|&(val, _)| val).sum();
    let mut sol: Vec<VertexId> = scored.into_iter().map(|(_, v)| v).collect();
    sol.sort_unstable();
    Some((sol, total))
}

/// `sol(U)` and `val(U)` for an explicit vertex set `U`.
pub fn evaluate_family_member(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    u_set: &[VertexId],
    k: usize,
) -> Result<Option<(Vec<VertexId>, u64)>> {
    let mut mask = vec![false; g.n()];
    for &u in u_set {
        if u >= g.n() {
            return Err(Error::input(format!("unknown vertex id {u}")));
        }
        mask[u] = true;
    }
    let members: Vec<VertexId> = (0..g.n()).filter(|&v| mask[v]).collect();
    Ok(top_k(g, ord, &members, k, |u| mask[u]))
}

fn evaluate_member(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    family: &SubsetFamily,
    i: usize,
    k: usize,
) -> Option<MemberEvaluation> {
    let bits = family.member(i);
    let members = bits_to_vertices(bits);
    top_k(g, ord, &members, k, |u| bits[u / 64] >> (u % 64) & 1 == 1).map(|(solution, value)| {
        MemberEvaluation {
            member: i,
            solution,
            value,
        }
    })
}

/// Evaluates every member with at least `k` elements, in member order.
pub fn evaluate_family(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    family: &SubsetFamily,
    k: usize,
) -> Vec<MemberEvaluation> {
    (0..family.len())
        .into_par_iter()
        .filter_map(|i| evaluate_member(g, ord, family, i, k))
        .collect()
}

/// Total order on candidate answers: larger value wins, then the
/// lexicographically smaller vertex set.
fn better(a: MemberEvaluation, b: MemberEvaluation) -> MemberEvaluation {
    match a.value.cmp(&b.value).then_with(|| b.solution.cmp(&a.solution)) {
        Ordering::Less => b,
        Ordering::Greater => a,
        Ordering::Equal if a.member <= b.member => a,
        Ordering::Equal => b,
    }
}

fn check_k(g: &WeightedGraph, k: usize) -> Result<()> {
    if k == 0 || k > g.n() {
        return Err(Error::input(format!("k must satisfy 1 <= k <= n = {}, got {k}", g.n())));
    }
    Ok(())
}

/// Size of the universe subsets the family must shatter: `min(n, k + k·d)`.
pub fn required_l(n: usize, k: usize, degeneracy: usize) -> usize {
    n.min(k.saturating_mul(degeneracy + 1))
}

/// Solves with a caller-supplied family over the vertex universe.
pub fn solve_with_family(
    g: &WeightedGraph,
    ord: &DegeneracyOrdering,
    family: &SubsetFamily,
    k: usize,
) -> Result<Solution> {
    check_k(g, k)?;
    if family.n != g.n() {
        return Err(Error::input(format!(
            "family universe {} does not match n = {}",
            family.n,
            g.n()
        )));
    }
    let (best, evaluated) = (0..family.len())
        .into_par_iter()
        .filter_map(|i| evaluate_member(g, ord, family, i, k).map(|e| (Some(e), 1u64)))
        .reduce(
            || (None, 0),
            |(a, na), (b, nb)| {
                let best = match (a, b) {
                    (Some(a), Some(b)) => Some(better(a, b)),
                    (a, None) => a,
                    (None, b) => b,
                };
                (best, na + nb)
            },
        );
    let best = best.ok_or_else(|| {
        Error::capability(format!(
            "no family member has at least k = {k} elements ({} members)",
            family.len()
        ))
    })?;
    let value = g.coverage(&best.solution)?;
    if value < best.value {
        return Err(Error::internal(format!(
            "coverage {value} of sol(U) is below val(U) = {}",
            best.value
        )));
    }
    Ok(Solution {
        vertices: best.solution,
        value,
        reported_value: best.value,
        provenance: SolutionProvenance {
            algorithm: Algorithm::Fpt,
            strategy: Some(family.provenance.strategy),
            seed: family.provenance.seed,
            delta: family.provenance.delta,
            degeneracy: ord.degeneracy,
            l: Some(family.l),
            family_size: Some(family.len() as u64),
            members_evaluated: evaluated,
        },
    })
}

/// Exact Partial Vertex Cover with an `(n, min(n, k + k·d*))`-universal family.
pub fn solve(g: &WeightedGraph, k: usize, config: &SolveConfig) -> Result<Solution> {
    check_k(g, k)?;
    let ord = degeneracy_ordering(g);
    if k == g.n() {
        let vertices: Vec<VertexId> = (0..g.n()).collect();
        let value = g.coverage(&vertices)?;
        return Ok(Solution {
            vertices,
            value,
            reported_value: value,
            provenance: SolutionProvenance {
                algorithm: Algorithm::Fpt,
                strategy: None,
                seed: None,
                delta: None,
                degeneracy: ord.degeneracy,
                l: None,
                family_size: None,
                members_evaluated: 0,
            },
        });
    }
    let l = required_l(g.n(), k, ord.degeneracy);
    let family = build_universal_set(g.n(), l, config.strategy, config.seed, config.delta)?;
    solve_with_family(g, &ord, &family, k)
}

/// Exhaustive search, exposed next to the FPT solver for `--algorithm brute`.
pub fn solve_bruteforce_delegate(g: &WeightedGraph, k: usize) -> Result<Solution> {
    crate::oracle::brute_force_solve(g, k)
}

pub fn solve_with(
    g: &WeightedGraph,
    k: usize,
    algorithm: Algorithm,
    config: &SolveConfig,
) -> Result<Solution> {
    match algorithm {
        Algorithm::Fpt => solve(g, k, config),
        Algorithm::Brute => solve_bruteforce_delegate(g, k),
    }
}
