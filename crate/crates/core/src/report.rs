//! JSON payloads printed by the command-line front end, and loading of the
//! compressed-instance format back into a graph.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::compress::{BicliqueCertificate, CompressParams, ReducedInstance};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, greedy_coloring, parse_edge_list, WeightedGraph};
use crate::solver::{Algorithm, Solution};
use crate::uset::{Strategy, SubsetFamily, Verification, Witness};

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SolvePayload {
    pub value: u64,
    pub reported_value: u64,
    pub solution: Vec<String>,
    pub k: usize,
    pub degeneracy: usize,
    pub l: Option<usize>,
    pub algorithm: String,
    pub strategy: Option<String>,
    pub family_size: Option<u64>,
    pub members_evaluated: u64,
    pub seed: Option<u64>,
    pub delta: Option<f64>,
    pub wall_time_ms: f64,
}

impl SolvePayload {
    pub fn new(g: &WeightedGraph, k: usize, s: &Solution, wall_time_ms: f64) -> Self {
        let p = &s.provenance;
        SolvePayload {
            value: s.value,
            reported_value: s.reported_value,
            solution: s.vertices.iter().map(|&v| g.label(v).to_string()).collect(),
            k,
            degeneracy: p.degeneracy,
            l: p.l,
            algorithm: match p.algorithm {
                Algorithm::Fpt => "fpt".into(),
                Algorithm::Brute => "brute".into(),
            },
            strategy: p.strategy.map(|s| s.to_string()),
            family_size: p.family_size,
            members_evaluated: p.members_evaluated,
            seed: p.seed,
            delta: p.delta,
            wall_time_ms,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct VertexRho {
    pub label: String,
    pub rho: u64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub m: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degeneracy: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CompressPayload {
    pub params: CompressParamsOut,
    pub vertices: Vec<VertexRho>,
    pub edges: Vec<[String; 2]>,
    pub input: SizeSummary,
    pub output: SizeSummary,
    pub reductions: usize,
    pub max_rho: u64,
    pub size_bound: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CompressParamsOut {
    pub k: usize,
    pub p: usize,
    pub degeneracy: usize,
    pub h_bound: usize,
    pub planar: bool,
}

impl From<&CompressParams> for CompressParamsOut {
    fn from(p: &CompressParams) -> Self {
        CompressParamsOut {
            k: p.k,
            p: p.p,
            degeneracy: p.degeneracy,
            h_bound: p.h_bound,
            planar: p.planar,
        }
    }
}

impl CompressPayload {
    pub fn new(r: &ReducedInstance) -> Self {
        let h = &r.h;
        CompressPayload {
            params: (&r.params).into(),
            vertices: (0..h.n())
                .map(|v| VertexRho {
                    label: h.label(v).to_string(),
                    rho: r.rho[v],
                })
                .collect(),
            edges: h
                .edges()
                .map(|(u, v, _)| [h.label(u).to_string(), h.label(v).to_string()])
                .collect(),
            input: SizeSummary {
                n: r.params.input_n,
                m: r.params.input_m,
                degeneracy: Some(r.params.degeneracy),
            },
            output: SizeSummary {
                n: r.params.output_n,
                m: r.params.output_m,
                degeneracy: None,
            },
            reductions: r.trace.len(),
            max_rho: r.max_rho(),
            size_bound: r.size_bound().to_string(),
        }
    }

    /// Rebuilds the compressed instance with `ρ` as loop weights.
    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new();
        for v in &self.vertices {
            if g.vertex_id(&v.label).is_some() {
                return Err(Error::input(format!("duplicate vertex {:?}", v.label)));
            }
            let id = g.add_vertex(&v.label);
            g.add_loop_weight(id, v.rho)?;
        }
        for [a, b] in &self.edges {
            let (u, v) = (
                g.vertex_id(a).ok_or_else(|| Error::input(format!("unknown vertex {a:?}")))?,
                g.vertex_id(b).ok_or_else(|| Error::input(format!("unknown vertex {b:?}")))?,
            );
            if u == v {
                return Err(Error::input(format!("self-loop {a:?} in edge list")));
            }
            g.add_edge(u, v, 1)?;
        }
        Ok(g)
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct BicliqueBody {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub p: usize,
    pub reductions: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct BicliquePayload {
    pub biclique: BicliqueBody,
}

impl BicliquePayload {
    pub fn new(g: &WeightedGraph, c: &BicliqueCertificate) -> Self {
        let labels = |s: &[usize]| s.iter().map(|&v| g.label(v).to_string()).collect();
        BicliquePayload {
            biclique: BicliqueBody {
                left: labels(&c.left),
                right: labels(&c.right),
                p: c.p,
                reductions: c.reductions,
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct UsetPayload {
    pub n: usize,
    pub l: usize,
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub delta: Option<f64>,
    pub size: usize,
    /// `"verified"`, `"failed"` or `"unverified"`.
    pub verified: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl UsetPayload {
    pub fn new(f: &SubsetFamily) -> Self {
        let (verified, witness) = match &f.verified {
            Verification::Verified => ("verified", None),
            Verification::Failed(w) => ("failed", Some(w.clone())),
            Verification::Unverified => ("unverified", None),
        };
        UsetPayload {
            n: f.n,
            l: f.l,
            strategy: f.provenance.strategy,
            seed: f.provenance.seed,
            delta: f.provenance.delta,
            size: f.len(),
            verified: verified.into(),
            witness,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct DegeneracyPayload {
    pub n: usize,
    pub m: u64,
    pub degeneracy: usize,
    pub order: Vec<String>,
    pub colors: usize,
    pub low_degree_count: usize,
}

impl DegeneracyPayload {
    pub fn new(g: &WeightedGraph) -> Self {
        let ord = degeneracy_ordering(g);
        let coloring = greedy_coloring(g, &ord);
        DegeneracyPayload {
            n: g.n(),
            m: g.m(),
            degeneracy: ord.degeneracy,
            order: ord.order.iter().map(|&v| g.label(v).to_string()).collect(),
            colors: coloring.iter().max().map_or(0, |c| c + 1),
            low_degree_count: (0..g.n()).filter(|&v| g.degree(v) <= 2 * ord.degeneracy).count(),
        }
    }
}

/// Envelope written by `--report`: the payload plus run metadata.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<String>,
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub result: serde_json::Value,
    pub wall_time_ms: f64,
    /// Peak resident set size in KiB, when the platform reports it.
    pub peak_rss_kb: Option<u64>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|l| l.strip_prefix("VmHWM:"))
        .and_then(|rest| rest.trim().trim_end_matches("kB").trim().parse().ok())
}

/// A graph read from disk plus the SHA-256 of the file.
pub struct LoadedGraph {
    pub graph: WeightedGraph,
    pub digest: String,
}

/// Reads an edge list, or a compressed instance when the file is a JSON object.
pub fn load_graph(path: &str) -> Result<LoadedGraph> {
    let bytes = std::fs::read(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::input(format!("{path} is not valid UTF-8")))?;
    let graph = if text.trim_start().starts_with('{') {
        let payload: CompressPayload = serde_json::from_str(&text)
            .map_err(|e| Error::input(format!("{path}: not a compressed instance: {e}")))?;
        payload.to_graph()?
    } else {
        parse_edge_list(&text)?
    };
    Ok(LoadedGraph {
        graph,
        digest: digest(&bytes),
    })
}

/// Drops timing fields so payloads from repeated runs can be compared.
pub fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("wall_time_ms");
            map.remove("peak_rss_kb");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
