//! Measurement harness: generate instances, solve them, and tabulate family
//! sizes, evaluation counts and timings.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cli::ModelArgs;
use crate::error::{Error, Result};
use crate::graph::degeneracy_ordering;
use crate::oracle::{generate, GeneratorSpec, WeightMode};
use crate::solver::{required_l, solve_with, Algorithm, SolveConfig};
use crate::uset::{binomial, randomized_size, Strategy, AUTO_DELTA};

/// One line of a bench suite; expands to one row per `k`.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SuiteEntry {
    #[serde(flatten)]
    pub model: ModelArgs,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "unit")]
    pub weights: String,
    pub ks: Vec<usize>,
    #[serde(default = "fpt")]
    pub algorithm: String,
    #[serde(default = "auto")]
    pub strategy: String,
    #[serde(default)]
    pub solver_seed: u64,
    #[serde(default)]
    pub delta: Option<f64>,
}

fn unit() -> String {
    "unit".into()
}
fn fpt() -> String {
    "fpt".into()
}
fn auto() -> String {
    "auto".into()
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Suite {
    pub rows: Vec<SuiteEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub model: String,
    pub n: usize,
    pub m: u64,
    pub degeneracy: usize,
    pub k: usize,
    pub algorithm: String,
    pub strategy: Option<String>,
    pub l: Option<usize>,
    pub family_size: Option<u64>,
    /// Closed-form size for the strategy that ran: `2^n`, the randomized
    /// union-bound count, or `C(n, k)` for brute force.
    pub expected_family_size: Option<String>,
    pub members_evaluated: Option<u64>,
    pub value: Option<u64>,
    pub status: String,
    pub wall_time_ms: f64,
}

pub fn parse_algorithm(s: &str) -> Result<Algorithm> {
    match s {
        "fpt" => Ok(Algorithm::Fpt),
        "brute" => Ok(Algorithm::Brute),
        other => Err(Error::input(format!("unknown algorithm {other:?}"))),
    }
}

/// Runs every entry. Errors while building an instance abort the suite;
/// solver errors are recorded in the row's `status`.
pub fn run_suite(suite: &Suite) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for entry in &suite.rows {
        let model = entry.model.to_model()?;
        let spec = GeneratorSpec {
            model: model.clone(),
            seed: entry.seed,
            weights: entry.weights.parse::<WeightMode>()?,
        };
        let g = generate(&spec)?;
        let degeneracy = degeneracy_ordering(&g).degeneracy;
        let algorithm = parse_algorithm(&entry.algorithm)?;
        let strategy: Strategy = entry.strategy.parse()?;
        let delta = entry.delta.or(Some(AUTO_DELTA));
        let config = SolveConfig {
            strategy,
            seed: Some(entry.solver_seed),
            delta,
        };
        for &k in &entry.ks {
            let start = Instant::now();
            let result = solve_with(&g, k, algorithm, &config);
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut row = BenchRow {
                model: model.name().to_string(),
                n: g.n(),
                m: g.m(),
                degeneracy,
                k,
                algorithm: entry.algorithm.clone(),
                strategy: None,
                l: None,
                family_size: None,
                expected_family_size: None,
                members_evaluated: None,
                value: None,
                status: "ok".into(),
                wall_time_ms,
            };
            match result {
                Ok(sol) => {
                    let p = &sol.provenance;
                    row.strategy = p.strategy.map(|s| s.to_string());
                    row.l = p.l;
                    row.family_size = p.family_size;
                    row.members_evaluated = Some(p.members_evaluated);
                    row.value = Some(sol.value);
                    row.expected_family_size = match (algorithm, p.strategy, p.l) {
                        (Algorithm::Brute, _, _) => binomial(g.n(), k).map(|c| c.to_string()),
                        (_, Some(Strategy::Exhaustive), _) => Some((1u128 << g.n()).to_string()),
                        (_, Some(Strategy::Randomized), Some(l)) => {
                            Some(randomized_size(g.n(), l, p.delta.unwrap_or(AUTO_DELTA)).to_string())
                        }
                        _ => None,
                    };
                }
                Err(e) => {
                    row.status = e.to_string();
                    if algorithm == Algorithm::Fpt && k >= 1 && k <= g.n() {
                        row.l = Some(required_l(g.n(), k, degeneracy));
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "model,n,m,degeneracy,k,algorithm,strategy,l,family_size,expected_family_size,members_evaluated,value,status,wall_time_ms\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}\n",
            r.model,
            r.n,
            r.m,
            r.degeneracy,
            r.k,
            r.algorithm,
            cell(&r.strategy),
            cell(&r.l),
            cell(&r.family_size),
            cell(&r.expected_family_size),
            cell(&r.members_evaluated),
            cell(&r.value),
            r.status.replace(',', ";"),
            r.wall_time_ms
        ));
    }
    out
}
