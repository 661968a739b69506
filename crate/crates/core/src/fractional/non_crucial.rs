use crate::graph::{EdgeSet, StochasticGraph};
use crate::realization::Realization;
use crate::sparsifier::Sparsifier;

use super::{EdgeStats, FractionalMatching};

/// Fractional matching on the realized non-crucial edges of `Q`.
///
/// 1. Every realized `e ∈ ℰ_Q ∩ N` gets `x̃_e = min{f_e, 2τ} / (p_v²·p_e)`.
/// 2. Vertices are visited in ascending id; each lowers the scaling factor of
///    its incident edges to `max{q_v^N, ε} / (p_v · Σ_{e∋v} x̃_e)` when that is
///    smaller. A vertex with no incident mass imposes nothing.
/// 3. `x_e = x̃_e · s_e`.
pub fn non_crucial_procedure(
    g: &StochasticGraph,
    s: &Sparsifier,
    stats: &EdgeStats,
    non_crucial: &EdgeSet,
    realized: &Realization,
    epsilon: f64,
) -> FractionalMatching {
    let survive = g.edge_survival();
    let cap = 2.0 * s.params().tau;
    let mut x = FractionalMatching::zeros(g.m());
    for id in non_crucial.iter() {
        if s.edges().contains(id) && realized.has_edge(id) {
            x.set(id, s.frequency(id).min(cap) / survive);
        }
    }

    let q_n = stats.loads(g, non_crucial).q;
    let mut scale = vec![1.0f64; g.m()];
    for (v, &qv) in q_n.iter().enumerate() {
        let incident = g.incident_unchecked(v);
        let mass: f64 = incident.iter().map(|&id| x.value(id)).sum();
        if mass <= 0.0 {
            continue;
        }
        let limit = qv.max(epsilon) / (g.p_v() * mass);
        for &id in incident {
            scale[id.0] = scale[id.0].min(limit);
        }
    }
    for id in g.edge_ids() {
        if x.value(id) > 0.0 {
            x.rescale(id, scale[id.0]);
        }
    }
    x
}
