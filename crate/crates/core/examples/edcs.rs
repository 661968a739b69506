//! Edge-degree constrained subgraphs: construction, verification, and the
//! deterministic and stochastic ratios.
//!
//!     cargo run --example edcs

use stochastic_matching::edcs::{build_edcs, edcs_matching_ratio, edcs_stochastic_ratio, verify_edcs, EdcsParams};
use stochastic_matching::estimator::Evaluation;
use stochastic_matching::harness::{Family, GeneratorSpec, WeightModel};
use stochastic_matching::RngSeed;

fn main() -> stochastic_matching::Result<()> {
    let g = GeneratorSpec {
        family: Family::ErdosRenyi { n: 40, p: 0.3 },
        weights: WeightModel::Unit,
        seed: 5,
    }
    .generate_with(0.8, 0.5)?;
    println!("{g}, max degree {}", g.max_degree());

    for beta in [2, 4, 8, 16] {
        let params = EdcsParams::custom(beta, beta - 1, 0.1)?;
        let h = build_edcs(&g, &params)?;
        assert!(verify_edcs(&g, &h).is_empty());
        println!(
            "beta {beta:>2}: |H| = {:>3}, max deg {:>2}, mu(H)/mu(G) = {:.3}",
            h.edges().len(),
            h.max_degree(&g),
            edcs_matching_ratio(&g, &h)
        );
    }

    let params = EdcsParams::custom(6, 5, 0.1)?;
    let (_, r) = edcs_stochastic_ratio(&g, &params, Evaluation::monte_carlo(20_000, RngSeed::new(1)))?;
    println!("beta 6, stochastic ratio {:.3} +- {:.3}", r.ratio, r.ci_halfwidth());
    Ok(())
}
