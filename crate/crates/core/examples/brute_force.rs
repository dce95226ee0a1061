//! The exhaustive reference solver on a weighted random graph.
//!
//!     cargo run --example brute_force

use pvc::oracle::{brute_force_solve, generate, GeneratorSpec, Model, WeightMode};

fn main() -> pvc::Result<()> {
    let spec = GeneratorSpec {
        model: Model::Degenerate { n: 16, d: 2 },
        seed: 3,
        weights: WeightMode::Uniform(10),
    };
    let g = generate(&spec)?;
    println!("n = {}, total weight = {}", g.n(), g.total_weight());
    for k in 1..=4 {
        let s = brute_force_solve(&g, k)?;
        println!("k = {k}: {:?} -> {} ({} subsets)", s.vertices, s.value, s.provenance.members_evaluated);
    }
    Ok(())
}
