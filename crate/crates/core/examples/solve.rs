//! Solve partial vertex cover with the universal-set solver and compare
//! against exhaustive search.
//!
//!     cargo run --example solve

use pvc::graph::parse_edge_list;
use pvc::oracle::brute_force_solve;
use pvc::solver::{solve, SolveConfig};
use pvc::uset::Strategy;

const GRAPH: &str = "
# two triangles joined by a heavy edge, plus a weighted loop
a b
b c
c a
c d 4
d e
e f
f d
f f 2
";

fn main() -> pvc::Result<()> {
    let g = parse_edge_list(GRAPH)?;
    for k in 1..=3 {
        let sol = solve(&g, k, &SolveConfig::default())?;
        let brute = brute_force_solve(&g, k)?;
        let names: Vec<&str> = sol.vertices.iter().map(|&v| g.label(v)).collect();
        println!(
            "k = {k}: {names:?} covers {} (brute force {}), l = {:?}, {} members",
            sol.value, brute.value, sol.provenance.l, sol.provenance.family_size.unwrap_or(0)
        );
    }

    let config = SolveConfig { strategy: Strategy::Randomized, seed: Some(7), delta: Some(1e-3) };
    let sol = solve(&g, 2, &config)?;
    println!("randomized, seed 7: value {} from {} members", sol.value, sol.provenance.members_evaluated);
    Ok(())
}
