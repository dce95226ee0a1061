//! Every instance model, with its size and degeneracy.
//!
//!     cargo run --example generators

use pvc::graph::degeneracy_ordering;
use pvc::oracle::{generate, GeneratorSpec, Model, WeightMode};

fn main() -> pvc::Result<()> {
    let models = [
        Model::Degenerate { n: 50, d: 3 },
        Model::Forest { n: 50 },
        Model::Grid { rows: 5, cols: 8 },
        Model::Star { leaves: 9 },
        Model::Path { n: 12 },
        Model::gadget(2, 1),
        Model::Biclique { p: 2, right: 30, noise: 10 },
    ];
    for model in models {
        let g = generate(&GeneratorSpec { model: model.clone(), seed: 1, weights: WeightMode::Uniform(10) })?;
        let d = degeneracy_ordering(&g).degeneracy;
        println!("{:>10}: n = {:>3}, edges = {:>3}, weight = {:>4}, d* = {d}", model.name(), g.n(), g.edge_count(), g.total_weight());
    }

    let path = generate(&GeneratorSpec::unit(Model::Path { n: 4 }, 0))?;
    print!("\npath(4) as an edge list:\n{}", path.to_edge_list());
    Ok(())
}
