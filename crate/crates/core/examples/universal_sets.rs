//! Build (n, l)-universal families with each strategy and check them.
//!
//!     cargo run --example universal_sets

use pvc::uset::{build_universal_set, randomized_size, verify_universal, SubsetFamily, Strategy};

fn main() -> pvc::Result<()> {
    let (n, l) = (10, 3);
    for strategy in [Strategy::Exhaustive, Strategy::Greedy, Strategy::Randomized] {
        let (seed, delta) = match strategy {
            Strategy::Randomized => (Some(42), Some(0.01)),
            _ => (None, None),
        };
        let mut family = build_universal_set(n, l, strategy, seed, delta)?;
        let witness = verify_universal(&mut family)?;
        println!("{strategy:>10}: {:>5} members, missing pattern: {witness:?}", family.len());
    }
    println!("randomized size formula for (10, 3, 0.01): {}", randomized_size(n, l, 0.01));

    // a family that cannot separate 1 from 2
    let mut bad = SubsetFamily::from_sets(3, 2, &[&[], &[1, 2, 3]])?;
    println!("{{∅, {{1,2,3}}}} fails with {:?}", verify_universal(&mut bad)?);
    Ok(())
}
