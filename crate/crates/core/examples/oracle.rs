//! Matching probabilities `q_e` and `E[μ(𝒢)]`, exactly by enumeration and
//! by Monte Carlo.
//!
//!     cargo run --example oracle

use stochastic_matching::estimator::{expected_matching, Evaluation};
use stochastic_matching::fractional::{compute_edge_stats, QSource};
use stochastic_matching::{RngSeed, StochasticGraph};

fn main() -> stochastic_matching::Result<()> {
    let g = StochasticGraph::unweighted(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)], 0.8, 0.6)?;
    let stats = compute_edge_stats(&g, QSource::exact())?;
    for (e, q) in g.edges().iter().zip(&stats.q) {
        println!("{:?}  q = {q:.6}", e.endpoints());
    }
    println!("sum w_e q_e  = {:.6}", stats.expected_matching(&g));

    let exact = expected_matching(&g, None, Evaluation::exact())?;
    println!("exact E[mu]  = {:.6}", exact.mean);
    for samples in [1_000, 100_000] {
        let mc = expected_matching(&g, None, Evaluation::monte_carlo(samples, RngSeed::new(1)))?;
        println!("{samples:>7} draws: {:.6} +- {:.6}", mc.mean, mc.ci_halfwidth);
    }
    Ok(())
}
