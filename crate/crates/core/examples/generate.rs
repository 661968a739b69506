//! Random graph families and the plain-text graph format.
//!
//!     cargo run --example generate

use stochastic_matching::harness::{format_graph, parse_graph, GeneratorSpec};

fn main() -> stochastic_matching::Result<()> {
    for (family, weights) in [
        ("er:8:0.4", "unit"),
        ("bipartite-random:3:4:0.6", "uniform:1:10"),
        ("complete:5", "exponential:0.5"),
        ("path:6", "unit"),
        ("star:5", "uniform:0:1"),
    ] {
        let spec = GeneratorSpec {
            family: family.parse()?,
            weights: weights.parse()?,
            seed: 1,
        };
        let g = spec.generate_with(0.9, 0.5)?;
        println!("{family} / {weights}: {g}");
        let text = format_graph(&g);
        assert_eq!(parse_graph(&text, "<memory>")?, g);
    }

    let spec = GeneratorSpec {
        family: "er:4:0.7".parse()?,
        weights: "uniform:1:3".parse()?,
        seed: 2,
    };
    print!("\n{}", format_graph(&spec.generate_with(0.5, 0.5)?));
    Ok(())
}
