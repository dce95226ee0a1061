//! Read an edge list with labels, weights and loops, then write it back.
//!
//!     cargo run --example edge_list

use pvc::graph::parse_edge_list;

fn main() -> pvc::Result<()> {
    let g = parse_edge_list("alice bob\nbob carol 3\ncarol carol 2\ndave dave 0\n")?;
    println!("n = {}, edges = {}, m = {}", g.n(), g.edge_count(), g.m());
    for v in 0..g.n() {
        println!("  {:>5}: degree {}, loop {}, incident weight {}", g.label(v), g.degree(v), g.loop_weight(v), g.incident_weight(v)?);
    }
    print!("{}", g.to_edge_list());

    let bad = parse_edge_list("a b\nb c -1\n");
    println!("negative weight: {}", bad.unwrap_err());
    Ok(())
}
