//! Sparsification for stochastic matching where both vertices and edges may
//! fail to materialize.
//!
//! The crate builds constant-degree subgraphs `Q` of a stochastic graph `G`
//! (by repeated sampled matchings, or as an edge-degree constrained
//! subgraph) and measures how much of `E[μ(𝒢)]` survives in `E[μ(Q ∩ 𝒢)]`,
//! exactly by enumeration on small graphs or by Monte Carlo otherwise. The
//! fractional matchings used to certify the approximation guarantees are
//! executable too, together with checkers for their invariants.
//!
//! ```
//! use stochastic_matching::estimator::{approximation_ratio, Evaluation};
//! use stochastic_matching::sparsifier::{build_sparsifier, compute_params};
//! use stochastic_matching::{RngSeed, StochasticGraph};
//!
//! # fn main() -> stochastic_matching::Result<()> {
//! let g = StochasticGraph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)], 0.8, 0.5)?;
//! let params = compute_params(0.2, g.p_v(), g.p_e(), Some(500))?;
//! let q = build_sparsifier(&g, &params, RngSeed::new(1));
//! let r = approximation_ratio(&g, q.edges(), Evaluation::exact())?;
//! assert!(r.ratio > 0.99);
//! # Ok(())
//! # }
//! ```

pub mod edcs;
pub mod error;
pub mod estimator;
pub mod fractional;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod realization;
pub mod sparsifier;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, EdgeSet, StochasticGraph, VertexId};
pub use matching::{max_matching_value, max_weight_matching, max_weight_matching_all, Matching};
pub use realization::{RngSeed, Realization};
