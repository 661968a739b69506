//! The exact maximum-weight matching engine and its tie-break.
//!
//!     cargo run --example matching

use stochastic_matching::{max_weight_matching, max_weight_matching_all, EdgeSet, StochasticGraph};

fn main() -> stochastic_matching::Result<()> {
    // A 5-cycle with a chord. Without the chord, {0-1, 2-3}, {0-1, 3-4} and
    // {1-2, 3-4} all weigh 4; the lexicographically smallest edge list wins.
    let g = StochasticGraph::new(
        5,
        [(0, 1, 2.0), (1, 2, 2.0), (2, 3, 2.0), (3, 4, 2.0), (0, 4, 1.5), (1, 3, 3.0)],
        1.0,
        1.0,
    )?;
    let m = max_weight_matching_all(&g);
    println!("best matching, weight {}:", m.total_weight());
    for &id in m.edges() {
        let e = g.edge(id);
        println!("  e{} = {:?} w {}", id.0, e.endpoints(), e.weight);
    }

    // Restrict to a subset of edges.
    let sub = EdgeSet::from_ids(g.m(), g.edge_ids().filter(|id| g.weight(*id) < 3.0));
    let m = max_weight_matching(&g, &sub);
    println!("without the chord: weight {}, edges {:?}", m.total_weight(), m.edges());
    Ok(())
}
