//! A small benchmark suite printed as CSV.
//!
//!     cargo run --release --example bench

use pvc::bench::{run_suite, to_csv, Suite};

const SUITE: &str = r#"{ "rows": [
    { "model": "forest", "n": 200, "seed": 1, "ks": [1, 2, 3], "strategy": "randomized", "delta": 0.001 },
    { "model": "grid", "rows": 3, "cols": 4, "ks": [2, 3], "strategy": "exhaustive" },
    { "model": "degenerate", "n": 14, "d": 2, "ks": [3], "algorithm": "brute" }
] }"#;

fn main() -> pvc::Result<()> {
    let suite: Suite = serde_json::from_str(SUITE).expect("valid suite");
    print!("{}", to_csv(&run_suite(&suite)?));
    Ok(())
}
