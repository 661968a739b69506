//! Fractional matchings on the realized sparsifier.
//!
//! These procedures turn matching probabilities into a fractional matching
//! of `Q ∩ 𝒢` whose expected weight lower-bounds `E[μ(Q ∩ 𝒢)]`:
//!
//! * [`non_crucial_procedure`] spreads capped frequencies over realized
//!   low-probability edges and scales them so each vertex keeps budget;
//! * [`crucial_procedure_unweighted`] and [`crucial_procedure_weighted`] add
//!   a sampled matching of high-probability edges on top;
//! * [`check_blossom_constraints`] and [`round_to_integral`] verify that the
//!   result can be rounded to an integral matching with little loss.

mod blossom;
mod crucial;
mod non_crucial;
mod pipeline;
mod stats;
mod weighted;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, EdgeSet, StochasticGraph};

pub use blossom::{
    algebraic_ratio, check_blossom_constraints, check_subset_loads, round_to_integral, SubsetViolation, ALGEBRAIC_BOUND,
    MAX_BLOSSOM_SUBSET, MAX_SUBSETS_CHECKED,
};
pub use crucial::{crucial_procedure_unweighted, sample_crucial_matching};
pub use non_crucial::non_crucial_procedure;
pub use pipeline::{run_fractional, EdgeReport, FractionalRun};
pub use stats::{compute_edge_stats, EdgeStats, QSource, VertexLoads};
pub use weighted::{
    best_alpha, classify_crucial_weighted, crucial_procedure_weighted, CrucialClassification, CrucialKind, EdgeType,
    DEFAULT_ALPHA_GRID, DEFAULT_DELTA,
};

/// Edge values `x_e ∈ [0, 1]` together with the scaling factor applied to each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalMatching {
    x: Vec<f64>,
    scale: Vec<f64>,
}

impl FractionalMatching {
    pub fn zeros(m: usize) -> Self {
        FractionalMatching {
            x: vec![0.0; m],
            scale: vec![1.0; m],
        }
    }

    pub fn from_values(x: Vec<f64>) -> Self {
        let scale = vec![1.0; x.len()];
        FractionalMatching { x, scale }
    }

    #[inline]
    pub fn value(&self, id: EdgeId) -> f64 {
        self.x[id.0]
    }

    #[inline]
    pub fn scale(&self, id: EdgeId) -> f64 {
        self.scale[id.0]
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub(crate) fn set(&mut self, id: EdgeId, value: f64) {
        self.x[id.0] = value;
    }

    pub(crate) fn rescale(&mut self, id: EdgeId, factor: f64) {
        self.x[id.0] *= factor;
        self.scale[id.0] *= factor;
    }

    /// `x_v = Σ_{e ∋ v} x_e` for every vertex.
    pub fn vertex_loads(&self, g: &StochasticGraph) -> Vec<f64> {
        let mut load = vec![0.0; g.n()];
        for (i, e) in g.edges().iter().enumerate() {
            let (u, v) = e.endpoints();
            load[u] += self.x[i];
            load[v] += self.x[i];
        }
        load
    }

    /// `Σ_e x_e`.
    pub fn size(&self) -> f64 {
        self.x.iter().sum()
    }

    /// `Σ_e w_e·x_e`.
    pub fn weight(&self, g: &StochasticGraph) -> f64 {
        g.edges().iter().zip(&self.x).map(|(e, x)| e.weight * x).sum()
    }

    /// `Σ_{e ∈ set} w_e·x_e`.
    pub fn weight_on(&self, g: &StochasticGraph, set: &EdgeSet) -> f64 {
        set.iter().map(|id| g.weight(id) * self.x[id.0]).sum()
    }

    /// Edges with `x_e > 0`.
    pub fn support(&self) -> EdgeSet {
        EdgeSet::from_ids(self.x.len(), (0..self.x.len()).filter(|&i| self.x[i] > 0.0).map(EdgeId))
    }
}
