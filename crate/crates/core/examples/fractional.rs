//! The fractional matching behind the analysis: the non-crucial step, the
//! crucial step and the rounding back to an integral matching.
//!
//!     cargo run --release --example fractional

use std::collections::BTreeMap;

use stochastic_matching::fractional::{check_blossom_constraints, compute_edge_stats, round_to_integral, run_fractional, QSource};
use stochastic_matching::harness::{Family, GeneratorSpec, WeightModel};
use stochastic_matching::realization::sample_realization;
use stochastic_matching::sparsifier::{build_sparsifier, SparsifierParams};
use stochastic_matching::RngSeed;

fn main() -> stochastic_matching::Result<()> {
    let g = GeneratorSpec {
        family: Family::Complete { n: 6 },
        weights: WeightModel::Uniform { lo: 1.0, hi: 10.0 },
        seed: 4,
    }
    .generate_with(0.9, 0.8)?;
    let eps = 0.3;
    // The formula's tau is tiny at this size, so every edge would be crucial.
    // A larger threshold shows both classes.
    let params = SparsifierParams::custom(eps, 1000, 0.12)?;
    let s = build_sparsifier(&g, &params, RngSeed::new(11));
    let stats = compute_edge_stats(&g, QSource::exact())?;
    println!("{g}: R = {}, tau = {:.4}", params.rounds, params.tau);

    let seed = RngSeed::new(12);
    let realized = sample_realization(&g, seed.child(0));
    let run = run_fractional(&g, &s, &stats, &realized, true, seed.child(1))?;

    println!("{:>4} {:>7} {:>6} {:>7} {:>8}  label", "edge", "(u,v)", "w", "q", "x");
    let mut labels = BTreeMap::new();
    for r in run.report(&g) {
        if r.x > 0.0 {
            println!(
                "{:>4} {:>7} {:>6.2} {:>7.4} {:>8.4}  {}",
                r.edge.0,
                format!("({},{})", r.u, r.v),
                r.weight,
                stats.q[r.edge.0],
                r.x,
                r.label
            );
        }
        *labels.entry(r.label).or_insert(0) += 1;
    }
    println!("labels over all edges: {labels:?}");
    println!("fractional weight {:.4}", run.x.weight(&g));
    println!("odd-set violations: {}", check_blossom_constraints(&g, &run.x, eps)?.len());

    let available = s.edges().intersection(realized.edges());
    let m = round_to_integral(&g, &run.x, &available, eps)?;
    println!("rounded matching weight {:.4}", m.total_weight());
    Ok(())
}
