//! Polynomial compression for unit-weight Partial Vertex Cover.
//!
//! While the graph is large, a low-degree independent set `I` contains either
//! a nice subset (k + 1 vertices whose pairwise common neighborhoods are all
//! one set `C`) or a `K_{p,p}`. Some optimal solution avoids the member of a
//! nice subset with the smallest `|N(u)| + L(u)`, so that member is deleted and
//! each of its edges becomes one unit of loop weight on the other endpoint.
//! The loop weights left at the end are exported as `ρ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, greedy_coloring, VertexId, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceOutcome {
    Nice {
        members: Vec<VertexId>,
        common: Vec<VertexId>,
    },
    Biclique {
        left: Vec<VertexId>,
        right: Vec<VertexId>,
    },
    None,
}

/// The largest color class among vertices of degree at most `2·d*`, using the
/// greedy `(d* + 1)`-coloring. Ties go to the smaller color.
pub fn low_degree_independent_set(g: &WeightedGraph) -> Vec<VertexId> {
    let ord = degeneracy_ordering(g);
    let d = ord.degeneracy;
    let color = greedy_coloring(g, &ord);
    let mut classes = vec![Vec::new(); d + 1];
    for v in 0..g.n() {
        if g.degree(v) <= 2 * d {
            classes[color[v]].push(v);
        }
    }
    let mut best = 0;
    for (c, class) in classes.iter().enumerate() {
        if class.len() > classes[best].len() {
            best = c;
        }
    }
    std::mem::take(&mut classes[best])
}

/// `p · (h·k)^e`, saturating.
fn threshold(p: usize, h: usize, k: usize, e: usize) -> u128 {
    let base = (h as u128).saturating_mul(k as u128);
    let mut acc = p as u128;
    for _ in 0..e {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Size above which an independent set of degree-`≤ h` vertices must contain
/// a nice subset or witness a `K_{p,p}`.
pub fn nice_threshold(p: usize, h: usize, k: usize) -> u128 {
    threshold(p, h, k, p)
}

/// Searches `independent` for a nice subset of size `k + 1` or a `K_{p,p}`.
///
/// Step `i` looks, in id order, for a pivot outside `Q` with more than
/// `p·(h·k)^(p−i)` neighbors in the current candidate set and narrows to those
/// neighbors. Without a pivot, candidates are picked greedily in id order,
/// each pick marking every candidate that shares a neighbor outside `Q`; with
/// at least `k + 1` picks, the first `k + 1` form a nice subset with common
/// neighborhood `Q`. After `p` pivots, `Q` and any `p` candidates form a `K_{p,p}`.
pub fn find_nice_or_biclique(
    g: &WeightedGraph,
    independent: &[VertexId],
    k: usize,
    p: usize,
    h_bound: usize,
) -> Result<NiceOutcome> {
    if k == 0 || p == 0 || h_bound == 0 {
        return Err(Error::input(format!(
            "need k, p, h >= 1, got k = {k}, p = {p}, h = {h_bound}"
        )));
    }
    let n = g.n();
    let mut in_u = vec![false; n];
    for &v in independent {
        if v >= n {
            return Err(Error::input(format!("unknown vertex id {v}")));
        }
        if g.degree(v) > h_bound {
            return Err(Error::input(format!(
                "vertex {} has degree {} > h = {h_bound}",
                g.label(v),
                g.degree(v)
            )));
        }
        in_u[v] = true;
    }
    if let Some((a, b, _)) = g.edges().find(|&(a, b, _)| in_u[a] && in_u[b]) {
        return Err(Error::input(format!(
            "candidate set is not independent: edge {} {}",
            g.label(a),
            g.label(b)
        )));
    }

    let mut candidates: Vec<VertexId> = (0..n).filter(|&v| in_u[v]).collect();
    let mut in_q = vec![false; n];
    let mut common: Vec<VertexId> = Vec::new();

    for i in 1..=p {
        let limit = threshold(p, h_bound, k, p - i);
        let mut hits = vec![0u128; n];
        for &u in &candidates {
            for x in g.neighbor_ids(u) {
                hits[x] += 1;
            }
        }
        if let Some(pivot) = (0..n).find(|&v| !in_q[v] && hits[v] > limit) {
            candidates.retain(|&u| g.has_edge(u, pivot));
            in_q[pivot] = true;
            common.push(pivot);
            continue;
        }

        let picked = mark_and_pick(g, &candidates, &in_q, &mut in_u, k + 1);
        if picked.len() > k {
            common.sort_unstable();
            return Ok(NiceOutcome::Nice {
                members: picked,
                common,
            });
        }
        if independent.len() as u128 > nice_threshold(p, h_bound, k) {
            return Err(Error::internal(format!(
                "no nice subset and no K_{{p,p}} although |I| = {} > {} (step {i}, |U| = {}, Q = {:?}, picks = {:?})",
                independent.len(),
                nice_threshold(p, h_bound, k),
                candidates.len(),
                common,
                picked
            )));
        }
        return Ok(NiceOutcome::None);
    }

    candidates.truncate(p);
    common.sort_unstable();
    Ok(NiceOutcome::Biclique {
        left: candidates,
        right: common,
    })
}

/// Greedy picking over `candidates` in id order; stops once `want` vertices are picked.
/// `scratch` is reused as the "still a candidate" mask and left cleared.
fn mark_and_pick(
    g: &WeightedGraph,
    candidates: &[VertexId],
    in_q: &[bool],
    scratch: &mut [bool],
    want: usize,
) -> Vec<VertexId> {
    scratch.iter_mut().for_each(|s| *s = false);
    for &u in candidates {
        scratch[u] = true;
    }
    let mut marked = vec![false; g.n()];
    let mut picked = Vec::new();
    for &u in candidates {
        if marked[u] {
            continue;
        }
        picked.push(u);
        marked[u] = true;
        if picked.len() == want {
            break;
        }
        for x in g.neighbor_ids(u).filter(|&x| !in_q[x]) {
            for y in g.neighbor_ids(x) {
                if scratch[y] {
                    marked[y] = true;
                }
            }
        }
    }
    scratch.iter_mut().for_each(|s| *s = false);
    picked
}

/// Direct check of the nice predicate: `members` independent, of size `k + 1`,
/// with `N(u) ∩ N(u') = common` for every distinct pair.
pub fn is_nice(g: &WeightedGraph, members: &[VertexId], common: &[VertexId], k: usize) -> bool {
    if members.len() != k + 1 {
        return false;
    }
    let neighborhoods: Vec<Vec<VertexId>> =
        members.iter().map(|&u| g.neighbor_ids(u).collect()).collect();
    let mut c = common.to_vec();
    c.sort_unstable();
    for (i, &u) in members.iter().enumerate() {
        if members.iter().any(|&w| g.has_edge(u, w)) || members[..i].contains(&u) {
            return false;
        }
        for j in i + 1..members.len() {
            let shared: Vec<VertexId> = neighborhoods[i]
                .iter()
                .copied()
                .filter(|x| neighborhoods[j].binary_search(x).is_ok())
                .collect();
            if shared != c {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionEvent {
    pub removed: String,
    pub incident_weight: u64,
    pub members: Vec<String>,
    pub common: Vec<String>,
}

/// Deletes the member of a nice subset with the smallest incident weight
/// (ties to the smaller id) and moves each of its edges onto the loop weight
/// of the other endpoint.
pub fn reduce_once(
    g: &mut WeightedGraph,
    members: &[VertexId],
    common: &[VertexId],
) -> Result<ReductionEvent> {
    if !g.has_unit_weights() {
        return Err(Error::capability(
            "reduction requires unit weights on non-loop edges",
        ));
    }
    let mut chosen: Option<(u64, VertexId)> = None;
    for &u in members {
        let w = g.incident_weight(u)?;
        if chosen.is_none_or(|c| (w, u) < c) {
            chosen = Some((w, u));
        }
    }
    let (weight, victim) = chosen.ok_or_else(|| Error::input("empty nice subset"))?;
    let event = ReductionEvent {
        removed: g.label(victim).to_string(),
        incident_weight: weight,
        members: members.iter().map(|&u| g.label(u).to_string()).collect(),
        common: common.iter().map(|&u| g.label(u).to_string()).collect(),
    };
    let transfers: Vec<(VertexId, u64)> = g.neighbors(victim).to_vec();
    for (v, w) in transfers {
        g.add_loop_weight(v, w)?;
    }
    g.remove_vertex(victim)?;
    Ok(event)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressParams {
    pub k: usize,
    pub p: usize,
    /// Degeneracy of the input graph.
    pub degeneracy: usize,
    /// Degree bound for the independent sets, `max(1, 2·d*)`.
    pub h_bound: usize,
    pub planar: bool,
    pub input_n: usize,
    pub input_m: u64,
    pub output_n: usize,
    pub output_m: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedInstance {
    /// Loopless subgraph of the input with unit weights.
    pub h: WeightedGraph,
    /// `rho[v]` for each vertex of `h`.
    pub rho: Vec<u64>,
    /// Input id of each vertex of `h`.
    pub origin: Vec<VertexId>,
    pub trace: Vec<ReductionEvent>,
    pub params: CompressParams,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueCertificate {
    /// Input ids.
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    pub p: usize,
    /// Reductions applied before the certificate was found.
    pub reductions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CompressOutcome {
    Reduced(ReducedInstance),
    Biclique(BicliqueCertificate),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lifted {
    pub coverage_g: u64,
    pub coverage_h: u64,
    pub rho_sum: u64,
}

impl ReducedInstance {
    /// `h` with each `ρ(v)` put back as a loop, ready for the solvers.
    pub fn weighted_graph(&self) -> WeightedGraph {
        let mut g = self.h.clone();
        for (v, &r) in self.rho.iter().enumerate() {
            g.add_loop_weight(v, r).expect("vertex exists");
        }
        g
    }

    pub fn max_rho(&self) -> u64 {
        self.rho.iter().copied().max().unwrap_or(0)
    }

    /// Vertex-set upper bound guaranteed at termination:
    /// `(d*+1)(2d*+1) · p · (h·k)^p`.
    pub fn size_bound(&self) -> u128 {
        let d = self.params.degeneracy as u128;
        ((d + 1) * (2 * d + 1))
            .saturating_mul(nice_threshold(self.params.p, self.params.h_bound, self.params.k))
    }

    /// Maps a solution of the compressed instance (ids of `h`) to ids of `g`,
    /// checking `E_G(S') = E_H(S') + Σ ρ(S')`.
    pub fn lift(&self, g: &WeightedGraph, solution: &[VertexId]) -> Result<(Vec<VertexId>, Lifted)> {
        let coverage_h = self.h.coverage(solution)?;
        let mut seen = vec![false; self.h.n()];
        let mut rho_sum = 0;
        for &v in solution {
            if !std::mem::replace(&mut seen[v], true) {
                rho_sum += self.rho[v];
            }
        }
        let lifted: Vec<VertexId> = solution.iter().map(|&v| self.origin[v]).collect();
        let coverage_g = g.coverage(&lifted)?;
        if coverage_g != coverage_h + rho_sum {
            return Err(Error::internal(format!(
                "lifting identity violated: E_G = {coverage_g}, E_H = {coverage_h}, rho = {rho_sum}"
            )));
        }
        Ok((
            lifted,
            Lifted {
                coverage_g,
                coverage_h,
                rho_sum,
            },
        ))
    }
}

/// Runs the reduction loop until no nice subset is found.
///
/// `p` defaults to `d* + 1`. `planar` forces `p = 3` and requires `d* <= 5`.
/// A `K_{p,p}` found on the way is returned as a certificate.
pub fn compress(g: &WeightedGraph, k: usize, p: Option<usize>, planar: bool) -> Result<CompressOutcome> {
    if k == 0 || k > g.n() {
        return Err(Error::input(format!("k must satisfy 1 <= k <= n = {}, got {k}", g.n())));
    }
    if !g.has_unit_weights() {
        return Err(Error::capability(
            "compression supports unit weights on non-loop edges only",
        ));
    }
    let d = degeneracy_ordering(g).degeneracy;
    let p = if planar {
        if d > 5 {
            return Err(Error::input(format!("--planar requires degeneracy <= 5, got {d}")));
        }
        if p.is_some_and(|p| p != 3) {
            return Err(Error::input("--planar fixes p = 3"));
        }
        3
    } else {
        p.unwrap_or(d + 1)
    };
    if p == 0 {
        return Err(Error::input("p must be at least 1"));
    }

    let mut work = g.clone();
    let mut origin: Vec<VertexId> = (0..g.n()).collect();
    let mut trace = Vec::new();
    loop {
        let independent = low_degree_independent_set(&work);
        let h = (2 * degeneracy_ordering(&work).degeneracy).max(1);
        match find_nice_or_biclique(&work, &independent, k, p, h)? {
            NiceOutcome::Nice { members, common } => {
                let victim = members
                    .iter()
                    .copied()
                    .min_by_key(|&u| (work.incident_weight_unchecked(u), u))
                    .expect("nice subset is non-empty");
                trace.push(reduce_once(&mut work, &members, &common)?);
                origin.remove(victim);
            }
            NiceOutcome::Biclique { left, right } => {
                return Ok(CompressOutcome::Biclique(BicliqueCertificate {
                    left: left.iter().map(|&v| origin[v]).collect(),
                    right: right.iter().map(|&v| origin[v]).collect(),
                    p,
                    reductions: trace.len(),
                }));
            }
            NiceOutcome::None => break,
        }
    }

    let rho: Vec<u64> = (0..work.n()).map(|v| work.loop_weight(v)).collect();
    let h = work.without_loops();
    let params = CompressParams {
        k,
        p,
        degeneracy: d,
        h_bound: (2 * d).max(1),
        planar,
        input_n: g.n(),
        input_m: g.m(),
        output_n: h.n(),
        output_m: h.m(),
    };
    let reduced = ReducedInstance {
        h,
        rho,
        origin,
        trace,
        params,
    };
    if reduced.h.n() as u128 > reduced.size_bound() {
        return Err(Error::internal(format!(
            "compressed instance has {} vertices, above the bound {}",
            reduced.h.n(),
            reduced.size_bound()
        )));
    }
    Ok(CompressOutcome::Reduced(reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_solve, check_biclique, generate, GeneratorSpec, Model};

    fn gadget(k: usize, privates: usize, members: usize) -> WeightedGraph {
        generate(&GeneratorSpec::unit(
            Model::GadgetNice {
                k,
                privates,
                members,
            },
            0,
        ))
        .unwrap()
    }

    fn all_subsets_identity(g: &WeightedGraph, r: &ReducedInstance) {
        let n = r.h.n();
        assert!(n <= 16);
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            r.lift(g, &s).unwrap();
        }
    }

    #[test]
    fn isolated_vertices_are_one_nice_subset() {
        let g = WeightedGraph::with_vertices(5);
        let i = low_degree_independent_set(&g);
        assert_eq!(i, vec![0, 1, 2, 3, 4]);
        let out = find_nice_or_biclique(&g, &i[..3], 2, 1, 1).unwrap();
        assert_eq!(
            out,
            NiceOutcome::Nice {
                members: vec![0, 1, 2],
                common: vec![]
            }
        );
    }

    #[test]
    fn independent_set_bounds_on_small_graphs() {
        let p5 = generate(&GeneratorSpec::unit(Model::Path { n: 5 }, 0)).unwrap();
        let i = low_degree_independent_set(&p5);
        assert!(!i.is_empty());
        assert!(i.iter().all(|&v| p5.degree(v) <= 2));
        assert!(i.iter().all(|&a| i.iter().all(|&b| !p5.has_edge(a, b))));
        assert!(i.len() * 2 * 3 >= 5);

        let star = generate(&GeneratorSpec::unit(Model::Star { leaves: 9 }, 0)).unwrap();
        let i = low_degree_independent_set(&star);
        assert!(!i.contains(&0));
        assert!(i.len() >= 2);
    }

    #[test]
    fn hub_gadget_yields_nice_subset_around_the_hub() {
        // Five members clear the pivot threshold p·(h·k)^(p−1) = 4 for the hub.
        let g = gadget(1, 1, 5);
        let members: Vec<usize> = (1..=5).collect();
        match find_nice_or_biclique(&g, &members, 1, 2, 2).unwrap() {
            NiceOutcome::Nice { members, common } => {
                assert_eq!(members, vec![1, 2]);
                assert_eq!(common, vec![0]);
                assert!(is_nice(&g, &members, &common, 1));
            }
            other => panic!("expected nice subset, got {other:?}"),
        }
    }

    #[test]
    fn small_hub_gadget_falls_below_the_pivot_threshold() {
        let g = gadget(1, 1, 3);
        let out = find_nice_or_biclique(&g, &[1, 2, 3], 1, 2, 2).unwrap();
        assert_eq!(out, NiceOutcome::None);
    }

    #[test]
    fn gadget_reduction_moves_edges_to_loops() {
        let g = gadget(1, 1, 5);
        let mut work = g.clone();
        let ev = reduce_once(&mut work, &[1, 2], &[0]).unwrap();
        assert_eq!(ev.removed, "1");
        assert_eq!(ev.incident_weight, 2);
        assert_eq!(work.n(), g.n() - 1);
        let hub = work.vertex_id("0").unwrap();
        let leaf = work.vertex_id("6").unwrap();
        assert_eq!(work.loop_weight(hub), 1);
        assert_eq!(work.loop_weight(leaf), 1);
        assert_eq!(work.total_weight(), g.total_weight());

        // coverage identity on every subset of the reduced graph
        let n = work.n();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let in_g: Vec<usize> = s.iter().map(|&v| g.vertex_id(work.label(v)).unwrap()).collect();
            assert_eq!(work.coverage(&s).unwrap(), g.coverage(&in_g).unwrap());
        }
        assert_eq!(brute_force_solve(&g, 1).unwrap().value, brute_force_solve(&work, 1).unwrap().value);
    }

    #[test]
    fn weighted_input_is_a_capability_error() {
        let mut g = WeightedGraph::with_vertices(3);
        g.add_edge(0, 1, 2).unwrap();
        assert!(matches!(compress(&g, 1, None, false), Err(Error::Capability(_))));
        assert!(matches!(reduce_once(&mut g, &[2], &[]), Err(Error::Capability(_))));
    }

    #[test]
    fn small_input_is_left_alone() {
        let g = generate(&GeneratorSpec::unit(Model::Path { n: 4 }, 0)).unwrap();
        let CompressOutcome::Reduced(r) = compress(&g, 3, None, false).unwrap() else {
            panic!("unexpected certificate");
        };
        assert_eq!(r.h, g);
        assert!(r.rho.iter().all(|&x| x == 0));
        assert!(r.trace.is_empty());
        let (lifted, l) = r.lift(&g, &[0, 2]).unwrap();
        assert_eq!(lifted, vec![0, 2]);
        assert_eq!(l.coverage_g, l.coverage_h);
    }

    #[test]
    fn forest_compression_preserves_optimum() {
        let g = generate(&GeneratorSpec::unit(Model::Forest { n: 600 }, 5)).unwrap();
        let CompressOutcome::Reduced(r) = compress(&g, 2, Some(2), false).unwrap() else {
            panic!("forests have no K_2,2");
        };
        assert!(r.h.n() <= 192);
        assert_eq!(r.size_bound(), 192);
        assert_eq!(r.trace.len(), 600 - r.h.n());
        let opt_g = brute_force_solve(&g, 2).unwrap().value;
        let opt_h = brute_force_solve(&r.weighted_graph(), 2).unwrap().value;
        assert_eq!(opt_g, opt_h);
        for (v, &o) in r.origin.iter().enumerate() {
            assert_eq!(r.h.label(v), g.label(o));
        }
        for (a, b, _) in r.h.edges() {
            assert!(g.has_edge(r.origin[a], r.origin[b]));
        }
    }

    #[test]
    fn compressed_star_passes_exhaustive_identity() {
        let g = generate(&GeneratorSpec::unit(Model::Star { leaves: 30 }, 0)).unwrap();
        let CompressOutcome::Reduced(r) = compress(&g, 2, None, false).unwrap() else {
            panic!("stars have no K_2,2");
        };
        assert!(r.h.n() <= 16, "{}", r.h.n());
        assert!(r.rho[0] > 0);
        all_subsets_identity(&g, &r);
    }

    #[test]
    fn planted_biclique_is_certified() {
        let g = generate(&GeneratorSpec::unit(Model::Biclique { p: 2, right: 60, noise: 20 }, 3)).unwrap();
        match compress(&g, 1, Some(2), false).unwrap() {
            CompressOutcome::Biclique(c) => assert!(check_biclique(&g, &c.left, &c.right, 2)),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn planar_preset_checks_degeneracy() {
        let k7 = {
            let mut g = WeightedGraph::with_vertices(7);
            for u in 0..7 {
                for v in u + 1..7 {
                    g.add_edge(u, v, 1).unwrap();
                }
            }
            g
        };
        assert!(matches!(compress(&k7, 1, None, true), Err(Error::Input(_))));
        let grid = generate(&GeneratorSpec::unit(Model::Grid { rows: 4, cols: 4 }, 0)).unwrap();
        let CompressOutcome::Reduced(r) = compress(&grid, 1, None, true).unwrap() else {
            panic!("grids are K_3,3-free");
        };
        assert_eq!(r.params.p, 3);
    }
}
