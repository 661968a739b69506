//! Save a sparsifier as an artifact, load it back and run the invariant suite.
//!
//!     cargo run --release --example check

use stochastic_matching::harness::{check_artifact, Artifact, CheckOptions};
use stochastic_matching::sparsifier::{build_sparsifier, compute_params};
use stochastic_matching::{RngSeed, StochasticGraph};

fn main() -> stochastic_matching::Result<()> {
    let g = StochasticGraph::unweighted(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (2, 6)], 0.9, 0.6)?;
    let params = compute_params(0.2, g.p_v(), g.p_e(), Some(400))?;
    let artifact = Artifact::Sparsifier {
        sparsifier: build_sparsifier(&g, &params, RngSeed::new(8)),
        graph: g,
        seed: 8,
    };
    let path = std::env::temp_dir().join("stochmatch-check-example.json");
    artifact.save(&path)?;

    let loaded = Artifact::load(&path)?;
    for o in check_artifact(&loaded, &CheckOptions::default())? {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    Ok(())
}
