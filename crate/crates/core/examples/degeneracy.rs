//! Peel a grid into a degeneracy ordering and color it greedily.
//!
//!     cargo run --example degeneracy

use pvc::compress::low_degree_independent_set;
use pvc::graph::{degeneracy_ordering, greedy_coloring};
use pvc::oracle::{generate, GeneratorSpec, Model};

fn main() -> pvc::Result<()> {
    let g = generate(&GeneratorSpec::unit(Model::Grid { rows: 4, cols: 5 }, 0))?;
    let ord = degeneracy_ordering(&g);
    println!("n = {}, m = {}, degeneracy = {}", g.n(), g.m(), ord.degeneracy);

    for &v in ord.order.iter().take(6) {
        let later: Vec<&str> = ord.posterior(v).iter().map(|&u| g.label(u)).collect();
        println!("  {:>2} -> posterior {:?}", g.label(v), later);
    }

    let colors = greedy_coloring(&g, &ord);
    let used = colors.iter().max().map_or(0, |c| c + 1);
    println!("greedy coloring uses {used} colors (bound {})", ord.degeneracy + 1);

    let set = low_degree_independent_set(&g);
    println!("independent set of low-degree vertices: {} vertices", set.len());
    Ok(())
}
