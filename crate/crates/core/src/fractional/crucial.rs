use crate::graph::{EdgeSet, StochasticGraph};
use crate::matching::{Matching, MatchingSolver};
use crate::realization::{resample_outside, Realization, RngSeed};
use crate::sparsifier::Sparsifier;

use super::{FractionalMatching, VertexLoads};

/// Draws `M_C ⊆ ℰ_Q ∩ C` with the law of the crucial part of `M(𝒢)` inside `Q`.
///
/// A second realization `𝒢'` keeps the crucial edges of `realized` (and the
/// state of their endpoints) and redraws everything else. `𝒢'` has the law of
/// `𝒢`, so `P(e ∈ M_C) = q_e` for every `e ∈ C ∩ Q`, and any crucial edge of
/// `M(𝒢')` is realized in `realized` as well.
pub fn sample_crucial_matching(
    g: &StochasticGraph,
    s: &Sparsifier,
    crucial: &EdgeSet,
    realized: &Realization,
    seed: RngSeed,
) -> Matching {
    if crucial.is_empty() {
        return Matching::empty();
    }
    let mut rng = seed.rng();
    let shadow = resample_outside(g, realized, crucial, &mut rng);
    let m = MatchingSolver::new(g.n()).solve(g, shadow.edges().iter());
    let picked = m.filter(g, |id| crucial.contains(id) && s.edges().contains(id));
    debug_assert!(picked.edges().iter().all(|&id| realized.has_edge(id)));
    picked
}

/// Unweighted crucial step: `x_e = (1−ε)·min{1 − q_u^N, 1 − q_v^N}` on `M_C`.
pub fn crucial_procedure_unweighted(
    g: &StochasticGraph,
    x: &FractionalMatching,
    m_c: &Matching,
    non_crucial_loads: &VertexLoads,
    epsilon: f64,
) -> FractionalMatching {
    let mut out = x.clone();
    let q = &non_crucial_loads.q;
    for &id in m_c.edges() {
        let (u, v) = g.edge(id).endpoints();
        let room = (1.0 - q[u]).min(1.0 - q[v]).max(0.0);
        out.set(id, (1.0 - epsilon) * room);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;
    use crate::matching::max_weight_matching_all;
    use crate::realization::sample_with;
    use crate::sparsifier::SparsifierParams;

    fn loads(q: Vec<f64>) -> VertexLoads {
        let phi = vec![0.0; q.len()];
        VertexLoads { q, phi }
    }

    #[test]
    fn unweighted_formula() {
        let g = StochasticGraph::unweighted(2, [(0, 1)], 1.0, 1.0).unwrap();
        let m = Matching::from_edges(&g, [EdgeId(0)]).unwrap();
        let x0 = FractionalMatching::zeros(1);
        let x = crucial_procedure_unweighted(&g, &x0, &m, &loads(vec![0.2, 0.3]), 0.1);
        assert!((x.value(EdgeId(0)) - 0.63).abs() < 1e-15);
        let x = crucial_procedure_unweighted(&g, &x0, &m, &loads(vec![0.0, 0.0]), 0.0);
        assert_eq!(x.value(EdgeId(0)), 1.0);
        let x = crucial_procedure_unweighted(&g, &x0, &m, &loads(vec![1.0, 0.0]), 0.1);
        assert_eq!(x.value(EdgeId(0)), 0.0);
    }

    #[test]
    fn empty_crucial_set() {
        let g = StochasticGraph::unweighted(2, [(0, 1)], 0.5, 0.5).unwrap();
        let s = Sparsifier::from_counts(vec![3], SparsifierParams::custom(0.1, 3, 0.01).unwrap()).unwrap();
        let m = sample_crucial_matching(&g, &s, &EdgeSet::empty(1), &Realization::full(&g), RngSeed::new(0));
        assert!(m.is_empty());
    }

    #[test]
    fn certain_graph_is_deterministic() {
        let g = StochasticGraph::unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], 1.0, 1.0).unwrap();
        let s = Sparsifier::from_counts(vec![2, 2, 0, 2, 2], SparsifierParams::custom(0.1, 2, 0.01).unwrap()).unwrap();
        let c = EdgeSet::from_ids(5, [EdgeId(0), EdgeId(1), EdgeId(2)]);
        let expected = max_weight_matching_all(&g).filter(&g, |id| c.contains(id) && s.edges().contains(id));
        for k in 0..10 {
            let m = sample_crucial_matching(&g, &s, &c, &Realization::full(&g), RngSeed::new(k));
            assert_eq!(m, expected);
        }
    }

    #[test]
    fn single_edge_appearance_frequency() {
        let g = StochasticGraph::unweighted(2, [(0, 1)], 0.5, 0.5).unwrap();
        let s = Sparsifier::from_counts(vec![1], SparsifierParams::custom(0.1, 1, 0.01).unwrap()).unwrap();
        let c = EdgeSet::full(1);
        let trials = 100_000u64;
        let mut rng = RngSeed::new(17).rng();
        let hits = (0..trials)
            .filter(|&t| {
                let r = sample_with(&g, &mut rng);
                !sample_crucial_matching(&g, &s, &c, &r, RngSeed::with_stream(17, t + 1)).is_empty()
            })
            .count();
        let p = 0.125;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((hits as f64 / trials as f64 - p).abs() < 3.0 * sigma);
    }
}
