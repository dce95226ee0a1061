//! Shrink a random forest, solve the small instance, and lift the answer.
//!
//!     cargo run --release --example compress_forest

use pvc::compress::{compress, CompressOutcome};
use pvc::oracle::{brute_force_solve, generate, GeneratorSpec, Model};

fn main() -> pvc::Result<()> {
    let g = generate(&GeneratorSpec::unit(Model::Forest { n: 600 }, 11))?;
    let k = 2;
    let CompressOutcome::Reduced(r) = compress(&g, k, Some(2), false)? else {
        unreachable!("forests contain no K_2,2");
    };
    println!(
        "{} vertices / {} edges -> {} vertices, {} reductions, max rho {}, bound {}",
        g.n(),
        g.edge_count(),
        r.h.n(),
        r.trace.len(),
        r.max_rho(),
        r.size_bound()
    );

    let small = brute_force_solve(&r.weighted_graph(), k)?;
    let (lifted, check) = r.lift(&g, &small.vertices)?;
    let labels: Vec<&str> = lifted.iter().map(|&v| g.label(v)).collect();
    println!("optimum on the reduced graph: {} -> vertices {labels:?} in the input", small.value);
    println!("coverage in input {} = {} + rho {}", check.coverage_g, check.coverage_h, check.rho_sum);
    println!("direct optimum on the input: {}", brute_force_solve(&g, k)?.value);
    Ok(())
}
