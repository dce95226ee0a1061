//! The `pvc` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 capability error (a size guard),
//! 3 biclique certificate from `compress`, 4 internal assertion. Payloads go
//! to standard output as JSON, diagnostics to standard error.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bench::{parse_algorithm, run_suite, to_csv, Suite, SuiteEntry};
use crate::compress::{compress, CompressOutcome};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::oracle::{brute_force_solve, check_biclique, generate, GeneratorSpec, Model, WeightMode};
use crate::report::{
    digest, load_graph, peak_rss_kb, BicliquePayload, CompressPayload, DegeneracyPayload, RunReport,
    SolvePayload, UsetPayload,
};
use crate::solver::{solve_with, SolveConfig};
use crate::uset::{build_universal_set, verify_universal, Strategy, AUTO_DELTA};

pub const EXIT_BICLIQUE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pvc", version, about = "Partial Vertex Cover on bounded-degeneracy graphs")]
pub struct Cli {
    /// Worker threads (falls back to PVC_THREADS). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write a run report (payload, input digest, timing) to this file.
    #[arg(long, global = true)]
    pub report: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find a k-set of maximum coverage.
    Solve(SolveArgs),
    /// Shrink a unit-weight instance, or report a K_{p,p}.
    Compress(CompressArgs),
    /// Degeneracy, peeling order and coloring summary.
    Degeneracy(InputArgs),
    /// Build (and optionally verify) an (n, l)-universal family.
    Uset(UsetArgs),
    /// Generate an instance in edge-list format.
    Gen(GenArgs),
    /// Run a benchmark suite.
    Bench(BenchArgs),
    /// Check a compressed instance, a certificate, or a solution against a graph.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    #[arg(long)]
    pub input: String,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "fpt")]
    pub algorithm: String,
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: Option<usize>,
    /// Planar preset: p = 3, requires degeneracy <= 5.
    #[arg(long)]
    pub planar: bool,
    #[arg(long)]
    pub output: Option<String>,
    #[arg(long)]
    pub trace: Option<String>,
}

#[derive(Args, Debug)]
pub struct UsetArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub verify: bool,
    /// Write members as 0/1 strings, one per line.
    #[arg(long)]
    pub dump: Option<String>,
}

/// Generator model and its parameters. Shared by `gen` and bench suites.
#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
pub struct ModelArgs {
    /// degenerate | forest | grid | star | path | gadget | biclique
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub leaves: Option<usize>,
    /// Gadget size parameter.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub privates: Option<usize>,
    #[arg(long)]
    pub members: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub right: Option<usize>,
    #[arg(long)]
    pub noise: Option<usize>,
}

impl ModelArgs {
    pub fn to_model(&self) -> Result<Model> {
        let model = self.model.as_deref().ok_or_else(|| Error::input("--model is required"))?;
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::input(format!("model {model} needs --{name}")))
        };
        Ok(match model {
            "degenerate" => Model::Degenerate {
                n: need(self.n, "n")?,
                d: need(self.d, "d")?,
            },
            "forest" => Model::Forest { n: need(self.n, "n")? },
            "grid" => Model::Grid {
                rows: need(self.rows, "rows")?,
                cols: need(self.cols, "cols")?,
            },
            "star" => Model::Star {
                leaves: need(self.leaves.or(self.n), "leaves")?,
            },
            "path" => Model::Path { n: need(self.n, "n")? },
            "gadget" => {
                let k = need(self.k, "k")?;
                Model::GadgetNice {
                    k,
                    privates: self.privates.unwrap_or(1),
                    members: self.members.unwrap_or(k + 2),
                }
            }
            "biclique" => Model::Biclique {
                p: need(self.p, "p")?,
                right: need(self.right, "right")?,
                noise: self.noise.unwrap_or(0),
            },
            other => return Err(Error::input(format!("unknown model {other:?}"))),
        })
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// unit | uniform:MAX
    #[arg(long, default_value = "unit")]
    pub weights: String,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// JSON suite: {"rows": [{"model": ..., "ks": [...], ...}]}
    #[arg(long)]
    pub config: Option<String>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "unit")]
    pub weights: String,
    /// Comma-separated list of k values.
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<usize>,
    #[arg(long, default_value = "fpt")]
    pub algorithm: String,
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    #[arg(long, default_value_t = 0)]
    pub solver_seed: u64,
    #[arg(long)]
    pub delta: Option<f64>,
    /// csv | json
    #[arg(long, default_value = "csv")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// The original graph.
    #[arg(long)]
    pub input: String,
    /// Output of `compress` (reduced instance or certificate).
    #[arg(long)]
    pub compressed: Option<String>,
    /// Comma-separated vertex labels.
    #[arg(long, value_delimiter = ',')]
    pub solution: Option<Vec<String>>,
    /// Also compare the solution against the brute-force optimum.
    #[arg(long)]
    pub optimal: bool,
    /// Random subsets checked when the compressed instance has more than 16 vertices.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What a subcommand produced: text for stdout, an exit code, and metadata
/// for the run report.
struct Outcome {
    stdout: String,
    result: serde_json::Value,
    code: i32,
    input_digest: Option<String>,
    seed: Option<u64>,
}

impl Outcome {
    fn json(value: serde_json::Value) -> Self {
        Outcome {
            stdout: format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
            result: value,
            code: 0,
            input_digest: None,
            seed: None,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn write_file(path: &str, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::input(format!("cannot write {path}: {e}")))
}

fn run_solve(a: &SolveArgs) -> Result<Outcome> {
    let loaded = load_graph(&a.input)?;
    let g = &loaded.graph;
    let algorithm = parse_algorithm(&a.algorithm)?;
    let strategy: Strategy = a.strategy.parse()?;
    let config = SolveConfig {
        strategy,
        seed: Some(a.seed),
        delta: Some(a.delta.unwrap_or(AUTO_DELTA)),
    };
    let start = Instant::now();
    let sol = solve_with(g, a.k, algorithm, &config)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let payload = SolvePayload::new(g, a.k, &sol, elapsed);
    let mut out = Outcome::json(to_value(&payload));
    if !a.json {
        out.stdout = format!(
            "value {}\nsolution {}\nk {} degeneracy {} l {} family_size {}\n",
            payload.value,
            payload.solution.join(" "),
            payload.k,
            payload.degeneracy,
            payload.l.map_or("-".into(), |l| l.to_string()),
            payload.family_size.map_or("-".into(), |f| f.to_string()),
        );
    }
    out.input_digest = Some(loaded.digest);
    out.seed = Some(a.seed);
    Ok(out)
}

fn run_compress(a: &CompressArgs) -> Result<Outcome> {
    let loaded = load_graph(&a.input)?;
    let g = &loaded.graph;
    let mut out = match compress(g, a.k, a.p, a.planar)? {
        CompressOutcome::Reduced(r) => {
            if let Some(path) = &a.trace {
                write_file(path, &serde_json::to_string_pretty(&r.trace).expect("serializable"))?;
            }
            Outcome::json(to_value(&CompressPayload::new(&r)))
        }
        CompressOutcome::Biclique(c) => {
            if !check_biclique(g, &c.left, &c.right, c.p) {
                return Err(Error::internal("emitted biclique certificate fails its own check"));
            }
            let mut out = Outcome::json(to_value(&BicliquePayload::new(g, &c)));
            out.code = EXIT_BICLIQUE;
            out
        }
    };
    if let Some(path) = &a.output {
        write_file(path, &out.stdout)?;
    }
    out.input_digest = Some(loaded.digest);
    Ok(out)
}

fn run_uset(a: &UsetArgs) -> Result<Outcome> {
    let strategy: Strategy = a.strategy.parse()?;
    let (seed, delta) = match strategy {
        Strategy::Randomized | Strategy::Auto => {
            (Some(a.seed.unwrap_or(0)), Some(a.delta.unwrap_or(AUTO_DELTA)))
        }
        _ => (a.seed, a.delta),
    };
    let mut family = build_universal_set(a.n, a.l, strategy, seed, delta)?;
    if a.verify {
        verify_universal(&mut family)?;
    }
    if let Some(path) = &a.dump {
        let mut text = String::new();
        for i in 0..family.len() {
            text.push_str(&family.member_bitstring(i));
            text.push('\n');
        }
        write_file(path, &text)?;
    }
    let mut out = Outcome::json(to_value(&UsetPayload::new(&family)));
    out.seed = family.provenance.seed;
    Ok(out)
}

fn run_gen(a: &GenArgs) -> Result<Outcome> {
    let spec = GeneratorSpec {
        model: a.model.to_model()?,
        seed: a.seed,
        weights: a.weights.parse::<WeightMode>()?,
    };
    let g = generate(&spec)?;
    let text = g.to_edge_list();
    let mut out = match &a.output {
        Some(path) => {
            write_file(path, &text)?;
            Outcome::json(json!({
                "model": spec.model.name(),
                "n": g.n(),
                "m": g.m(),
                "seed": a.seed,
                "weights": spec.weights.to_string(),
                "digest": digest(text.as_bytes()),
                "output": path,
            }))
        }
        None => Outcome {
            stdout: text,
            result: json!({ "model": spec.model.name(), "n": g.n(), "m": g.m() }),
            code: 0,
            input_digest: None,
            seed: None,
        },
    };
    out.seed = Some(a.seed);
    Ok(out)
}

fn run_bench(a: &BenchArgs) -> Result<Outcome> {
    let suite = match (&a.config, &a.model.model) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
            serde_json::from_str::<Suite>(&text)
                .map_err(|e| Error::input(format!("{path}: bad suite: {e}")))?
        }
        (None, Some(_)) => Suite {
            rows: vec![SuiteEntry {
                model: a.model.clone(),
                seed: a.seed,
                weights: a.weights.clone(),
                ks: a.ks.clone(),
                algorithm: a.algorithm.clone(),
                strategy: a.strategy.clone(),
                solver_seed: a.solver_seed,
                delta: a.delta,
            }],
        },
        (None, None) => return Err(Error::input("bench needs --config or --model")),
    };
    let rows = run_suite(&suite)?;
    let value = to_value(&rows);
    let mut out = Outcome::json(value);
    match a.format.as_str() {
        "json" => {}
        "csv" => out.stdout = to_csv(&rows),
        other => return Err(Error::input(format!("unknown format {other:?}"))),
    }
    Ok(out)
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome> {
    let loaded = load_graph(&a.input)?;
    let g = &loaded.graph;
    let mut report = serde_json::Map::new();
    let mut ok = true;

    if let Some(path) = &a.compressed {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
        if let Ok(b) = serde_json::from_str::<BicliquePayload>(&text) {
            let left = g.resolve_labels(&b.biclique.left)?;
            let right = g.resolve_labels(&b.biclique.right)?;
            let valid = check_biclique(g, &left, &right, b.biclique.p);
            ok &= valid;
            report.insert("biclique_valid".into(), json!(valid));
        } else {
            let payload: CompressPayload = serde_json::from_str(&text)
                .map_err(|e| Error::input(format!("{path}: not a compress output: {e}")))?;
            let h = payload.to_graph()?;
            let (checked, violations, exhaustive) = check_compressed(g, &h, a.samples, a.seed)?;
            ok &= violations == 0;
            report.insert("subsets_checked".into(), json!(checked));
            report.insert("exhaustive".into(), json!(exhaustive));
            report.insert("violations".into(), json!(violations));
        }
    }
    if let Some(labels) = &a.solution {
        let s = g.resolve_labels(labels)?;
        let coverage = g.coverage(&s)?;
        report.insert("coverage".into(), json!(coverage));
        if a.optimal {
            let opt = brute_force_solve(g, s.len())?.value;
            ok &= opt == coverage;
            report.insert("optimum".into(), json!(opt));
        }
    }
    if a.compressed.is_none() && a.solution.is_none() {
        return Err(Error::input("verify needs --compressed or --solution"));
    }
    report.insert("ok".into(), json!(ok));
    let mut out = Outcome::json(serde_json::Value::Object(report));
    out.input_digest = Some(loaded.digest);
    if !ok {
        out.code = Error::internal("").exit_code();
    }
    Ok(out)
}

/// Checks that `h` (with `ρ` as loops) is a subgraph of `g` and that
/// `E_G(S) = E_H(S) + ρ(S)` on all subsets (small `h`) or on random ones.
fn check_compressed(
    g: &WeightedGraph,
    h: &WeightedGraph,
    samples: usize,
    seed: u64,
) -> Result<(usize, usize, bool)> {
    let origin = g.resolve_labels(h.labels())?;
    for (a, b, _) in h.edges() {
        if !g.has_edge(origin[a], origin[b]) {
            return Err(Error::input(format!(
                "edge {} {} is not in the input graph",
                h.label(a),
                h.label(b)
            )));
        }
    }
    let n = h.n();
    let check = |s: &[usize]| -> Result<bool> {
        let lifted: Vec<usize> = s.iter().map(|&v| origin[v]).collect();
        Ok(g.coverage(&lifted)? == h.coverage(s)?)
    };
    let mut violations = 0;
    if n <= 16 {
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            violations += usize::from(!check(&s)?);
        }
        return Ok((1 << n, violations, true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        violations += usize::from(!check(&s)?);
    }
    Ok((samples, violations, false))
}

fn thread_count(cli: &Cli) -> Result<Option<usize>> {
    if let Some(t) = cli.threads {
        return Ok(Some(t));
    }
    match std::env::var("PVC_THREADS") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::input(format!("PVC_THREADS must be an integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Compress(a) => run_compress(a),
        Command::Degeneracy(a) => {
            let loaded = load_graph(&a.input)?;
            let mut out = Outcome::json(to_value(&DegeneracyPayload::new(&loaded.graph)));
            out.input_digest = Some(loaded.digest);
            Ok(out)
        }
        Command::Uset(a) => run_uset(a),
        Command::Gen(a) => run_gen(a),
        Command::Bench(a) => run_bench(a),
        Command::Verify(a) => run_verify(a),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Compress(_) => "compress",
        Command::Degeneracy(_) => "degeneracy",
        Command::Uset(_) => "uset",
        Command::Gen(_) => "gen",
        Command::Bench(_) => "bench",
        Command::Verify(_) => "verify",
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = thread_count(&cli).and_then(|threads| match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::input(format!("cannot start {t} threads: {e}")))?
            .install(|| execute(&cli)),
        None => execute(&cli),
    });
    match outcome {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            if let Some(path) = &cli.report {
                let report = RunReport {
                    command: command_name(&cli.command).into(),
                    parameters: args.iter().skip(1).cloned().collect(),
                    input_digest: out.input_digest.clone(),
                    seed: out.seed,
                    result: out.result.clone(),
                    wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                    peak_rss_kb: peak_rss_kb(),
                };
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                if let Err(e) = write_file(path, &text) {
                    let _ = writeln!(stderr, "error: {e}");
                    return e.exit_code();
                }
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_with_args(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
