//! Build the sampled-matching sparsifier of a random graph and measure how
//! much of the expected matching it keeps as the number of rounds grows.
//!
//!     cargo run --release --example sparsify

use stochastic_matching::estimator::{approximation_ratio, Evaluation};
use stochastic_matching::harness::{GeneratorSpec, WeightModel};
use stochastic_matching::sparsifier::{build_sparsifier, compute_params};
use stochastic_matching::RngSeed;

fn main() -> stochastic_matching::Result<()> {
    let spec = GeneratorSpec {
        family: "er:40:0.3".parse()?,
        weights: WeightModel::Unit,
        seed: 3,
    };
    let g = spec.generate_with(0.6, 0.7)?;
    println!("{g}, max degree {}", g.max_degree());

    let eps = 0.2;
    for cap in [1, 3, 10, 30, 300] {
        let params = compute_params(eps, g.p_v(), g.p_e(), Some(cap))?;
        let s = build_sparsifier(&g, &params, RngSeed::new(7));
        let r = approximation_ratio(&g, s.edges(), Evaluation::auto(10_000, RngSeed::new(1)))?;
        println!(
            "R = {:>3} (formula {:.2e}): |Q| = {:>3}, max deg {:>2}, ratio {:.4} +- {:.4} ({})",
            params.rounds,
            params.formula_rounds,
            s.edges().len(),
            s.max_degree(&g),
            r.ratio,
            r.ci_halfwidth(),
            r.numerator.mode.label()
        );
    }
    Ok(())
}
