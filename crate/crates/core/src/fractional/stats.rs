//! Matching probabilities `q_e` and their aggregates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::EstimateMode;
use crate::graph::{EdgeId, EdgeSet, StochasticGraph};
use crate::matching::MatchingSolver;
use crate::realization::{self, sample_into, Realization, RngSeed, DEFAULT_ENUMERATION_BITS};

/// Where matching probabilities come from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum QSource {
    /// Exhaustive enumeration within `n + |E| ≤ bits`.
    Exact { bits: u32 },
    MonteCarlo { samples: u64, seed: RngSeed },
}

impl QSource {
    pub fn exact() -> Self {
        QSource::Exact {
            bits: DEFAULT_ENUMERATION_BITS,
        }
    }

    /// Exact if `g` is enumerable within the default budget, Monte Carlo otherwise.
    pub fn auto(g: &StochasticGraph, samples: u64, seed: RngSeed) -> Self {
        if realization::is_enumerable(g, DEFAULT_ENUMERATION_BITS) {
            QSource::exact()
        } else {
            QSource::MonteCarlo { samples, seed }
        }
    }
}

/// `q_e`: probability that `e` is in the canonical maximum matching of `𝒢`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeStats {
    pub q: Vec<f64>,
    pub mode: EstimateMode,
}

/// Per-vertex sums over an edge subset `X`: `q_v^X` and `φ_v^X`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexLoads {
    pub q: Vec<f64>,
    pub phi: Vec<f64>,
}

impl EdgeStats {
    pub fn from_q(q: Vec<f64>, mode: EstimateMode) -> Self {
        EdgeStats { q, mode }
    }

    #[inline]
    pub fn q(&self, id: EdgeId) -> f64 {
        self.q[id.0]
    }

    /// `φ_e = w_e·q_e`.
    #[inline]
    pub fn phi(&self, g: &StochasticGraph, id: EdgeId) -> f64 {
        g.weight(id) * self.q[id.0]
    }

    /// `φ(X) = Σ_{e ∈ X} w_e·q_e`.
    pub fn phi_of(&self, g: &StochasticGraph, set: &EdgeSet) -> f64 {
        set.iter().map(|id| self.phi(g, id)).sum()
    }

    /// `Σ_e w_e·q_e`, which equals `E[μ(𝒢)]`.
    pub fn expected_matching(&self, g: &StochasticGraph) -> f64 {
        g.edge_ids().map(|id| self.phi(g, id)).sum()
    }

    /// Loads restricted to `set`.
    pub fn loads(&self, g: &StochasticGraph, set: &EdgeSet) -> VertexLoads {
        let mut q = vec![0.0; g.n()];
        let mut phi = vec![0.0; g.n()];
        for id in set.iter() {
            let (u, v) = g.edge(id).endpoints();
            let (qe, pe) = (self.q[id.0], self.phi(g, id));
            q[u] += qe;
            q[v] += qe;
            phi[u] += pe;
            phi[v] += pe;
        }
        VertexLoads { q, phi }
    }

    /// `q_v` over all edges.
    pub fn vertex_q(&self, g: &StochasticGraph) -> Vec<f64> {
        self.loads(g, &EdgeSet::full(g.m())).q
    }
}

/// Computes `q_e` for every edge under the canonical tie-break.
pub fn compute_edge_stats(g: &StochasticGraph, source: QSource) -> Result<EdgeStats> {
    match source {
        QSource::Exact { bits } => {
            let table = realization::edge_mask_distribution(g, bits)?;
            let mut solver = MatchingSolver::new(g.n());
            let mut q = vec![0.0; g.m()];
            for (mask, p) in realization::support(&table) {
                let ids = (0..g.m()).filter(|&i| mask >> i & 1 == 1).map(EdgeId);
                for &id in solver.solve(g, ids).edges() {
                    q[id.0] += p;
                }
            }
            Ok(EdgeStats::from_q(q, EstimateMode::Exact))
        }
        QSource::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::input("Monte Carlo estimation needs at least one sample"));
            }
            const PER_STREAM: u64 = 512;
            let streams = samples.div_ceil(PER_STREAM);
            let counts: Vec<Vec<u64>> = (0..streams)
                .into_par_iter()
                .map(|s| {
                    let mut rng = seed.child(s).rng();
                    let mut solver = MatchingSolver::new(g.n());
                    let mut r = Realization::full(g);
                    let mut counts = vec![0u64; g.m()];
                    for _ in 0..PER_STREAM.min(samples - s * PER_STREAM) {
                        sample_into(g, &mut rng, &mut r);
                        for &id in solver.solve(g, r.edges().iter()).edges() {
                            counts[id.0] += 1;
                        }
                    }
                    counts
                })
                .collect();
            let mut total = vec![0u64; g.m()];
            for c in counts {
                total.iter_mut().zip(c).for_each(|(t, x)| *t += x);
            }
            let q = total.into_iter().map(|c| c as f64 / samples as f64).collect();
            Ok(EdgeStats::from_q(q, EstimateMode::MonteCarlo))
        }
    }
}
