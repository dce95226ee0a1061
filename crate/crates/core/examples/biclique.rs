//! Plant a K_3,3 among many shared neighbors and let the compressor find it.
//!
//!     cargo run --release --example biclique

use pvc::compress::{compress, CompressOutcome};
use pvc::oracle::{check_biclique, generate, GeneratorSpec, Model};

fn main() -> pvc::Result<()> {
    let g = generate(&GeneratorSpec::unit(Model::Biclique { p: 3, right: 900, noise: 30 }, 5))?;
    match compress(&g, 1, Some(3), false)? {
        CompressOutcome::Biclique(c) => {
            let ok = check_biclique(&g, &c.left, &c.right, c.p);
            let name = |s: &[usize]| s.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>();
            println!("K_{0},{0}: left {1:?}, right {2:?}, valid = {ok}", c.p, name(&c.left), name(&c.right));
            println!("found after {} reductions", c.reductions);
        }
        CompressOutcome::Reduced(r) => println!("no certificate; reduced to {} vertices", r.h.n()),
    }
    Ok(())
}
