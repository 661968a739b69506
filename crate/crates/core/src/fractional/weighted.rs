//! Weighted crucial edges: heavy / semi-heavy classification and the
//! budget-trading step that lets a crucial edge displace non-crucial mass.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, StochasticGraph, VertexId};
use crate::matching::Matching;

use super::{FractionalMatching, VertexLoads};

pub const DEFAULT_DELTA: f64 = 0.09;
pub const DEFAULT_ALPHA_GRID: usize = 1001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeType {
    One,
    Two,
    Three,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrucialKind {
    Heavy,
    SemiHeavy,
    /// A `C*` edge, directed toward one endpoint.
    Directed { toward: VertexId, edge_type: EdgeType },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrucialClassification {
    labels: Vec<Option<CrucialKind>>,
    pub delta: f64,
}

impl CrucialClassification {
    pub fn label(&self, id: EdgeId) -> Option<CrucialKind> {
        self.labels[id.0]
    }

    fn collect(&self, pred: impl Fn(&CrucialKind) -> bool) -> EdgeSet {
        let m = self.labels.len();
        EdgeSet::from_ids(m, (0..m).filter(|&i| self.labels[i].as_ref().is_some_and(&pred)).map(EdgeId))
    }

    /// `H`.
    pub fn heavy(&self) -> EdgeSet {
        self.collect(|k| matches!(k, CrucialKind::Heavy))
    }

    /// `H*`.
    pub fn semi_heavy(&self) -> EdgeSet {
        self.collect(|k| matches!(k, CrucialKind::SemiHeavy))
    }

    /// `C* = C ∖ (H ∪ H*)`.
    pub fn c_star(&self) -> EdgeSet {
        self.collect(|k| matches!(k, CrucialKind::Directed { .. }))
    }
}

/// Orders the endpoints of `id` as `(u, v)` with `q_v^N ≥ q_u^N`; on ties the
/// lower vertex id plays `v`.
fn orient(g: &StochasticGraph, id: EdgeId, q: &[f64]) -> (usize, usize) {
    let (a, b) = g.edge(id).endpoints();
    if q[b] > q[a] {
        (a, b)
    } else {
        (b, a)
    }
}

/// Splits crucial edges into heavy, semi-heavy and directed `C*` edges.
///
/// With `v` the endpoint of larger `q^N`:
/// heavy iff `w_e ≥ (1+δ)(φ_u^N + φ_v^N)`; otherwise semi-heavy iff
/// `w_e ≥ 2(1+δ)φ_v^N` and `q_u^N ≤ 1−δ`. The rest are typed
/// 1 (`φ_v^N ≥ φ_u^N`, toward `v`), 2 (`w_e ≤ 2(1+δ)φ_v^N`, toward `v`) or
/// 3 (toward `u`).
pub fn classify_crucial_weighted(
    g: &StochasticGraph,
    non_crucial_loads: &VertexLoads,
    crucial: &EdgeSet,
    delta: f64,
) -> Result<CrucialClassification> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::input(format!("delta must lie in (0, 1), got {delta}")));
    }
    let (q, phi) = (&non_crucial_loads.q, &non_crucial_loads.phi);
    let mut labels = vec![None; g.m()];
    for id in crucial.iter() {
        let w = g.weight(id);
        let (u, v) = orient(g, id, q);
        let kind = if w >= (1.0 + delta) * (phi[u] + phi[v]) {
            CrucialKind::Heavy
        } else if w >= 2.0 * (1.0 + delta) * phi[v] && q[u] <= 1.0 - delta {
            CrucialKind::SemiHeavy
        } else if phi[v] >= phi[u] {
            CrucialKind::Directed {
                toward: VertexId(v),
                edge_type: EdgeType::One,
            }
        } else if w <= 2.0 * (1.0 + delta) * phi[v] {
            CrucialKind::Directed {
                toward: VertexId(v),
                edge_type: EdgeType::Two,
            }
        } else {
            CrucialKind::Directed {
                toward: VertexId(u),
                edge_type: EdgeType::Three,
            }
        };
        labels[id.0] = Some(kind);
    }
    Ok(CrucialClassification { labels, delta })
}

/// `g(v, α) = min{q_v^N, 1−α} / q_v^N · φ_v^N`, and 0 when `q_v^N = 0`.
pub(crate) fn retained(q: f64, phi: f64, alpha: f64) -> f64 {
    if q <= 0.0 {
        0.0
    } else {
        q.min(1.0 - alpha) / q * phi
    }
}

/// Maximizer of `h(α) = g(u,α) + g(v,α) + α·w_e` over `[0, 1]`.
///
/// `h` is piecewise linear with breakpoints at `1 − q_u^N` and `1 − q_v^N`,
/// so evaluating those together with the uniform grid of `grid` points
/// yields the exact maximum. Ties go to the smallest `α`.
pub fn best_alpha(q_u: f64, phi_u: f64, q_v: f64, phi_v: f64, w: f64, grid: usize) -> f64 {
    let grid = grid.max(2);
    let mut candidates: Vec<f64> = (0..grid).map(|i| i as f64 / (grid - 1) as f64).collect();
    for q in [q_u, q_v] {
        if q > 0.0 {
            candidates.push((1.0 - q).clamp(0.0, 1.0));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let h = |a: f64| retained(q_u, phi_u, a) + retained(q_v, phi_v, a) + a * w;
    let mut best = (0.0, h(0.0));
    for &a in &candidates[1..] {
        let value = h(a);
        if value > best.1 + 1e-12 * best.1.abs().max(1.0) {
            best = (a, value);
        }
    }
    best.0
}

/// Weighted crucial step.
///
/// Each `e = (u, v) ∈ M_C` gets `x_e = (1−ε)·α*`. Then, at every endpoint of
/// `M_C` whose load exceeds 1, the incident non-crucial values are scaled by
/// one common factor so that the load becomes exactly 1. An edge touching two
/// such vertices takes the smaller factor.
pub fn crucial_procedure_weighted(
    g: &StochasticGraph,
    x: &FractionalMatching,
    m_c: &Matching,
    non_crucial_loads: &VertexLoads,
    non_crucial: &EdgeSet,
    epsilon: f64,
    alpha_grid: usize,
) -> Result<FractionalMatching> {
    if alpha_grid < 2 {
        return Err(Error::input("the alpha grid needs at least two points"));
    }
    let (q, phi) = (&non_crucial_loads.q, &non_crucial_loads.phi);
    let mut out = x.clone();
    let mut crucial_load = vec![0.0; g.n()];
    let mut covered = vec![false; g.n()];
    for &id in m_c.edges() {
        let (u, v) = g.edge(id).endpoints();
        let alpha = best_alpha(q[u], phi[u], q[v], phi[v], g.weight(id), alpha_grid);
        let value = (1.0 - epsilon) * alpha;
        out.set(id, value);
        crucial_load[u] += value;
        crucial_load[v] += value;
        covered[u] = true;
        covered[v] = true;
    }

    let mut other_load = vec![0.0; g.n()];
    for id in non_crucial.iter() {
        let (u, v) = g.edge(id).endpoints();
        other_load[u] += out.value(id);
        other_load[v] += out.value(id);
    }
    let factor: Vec<f64> = (0..g.n())
        .map(|v| {
            if covered[v] && crucial_load[v] + other_load[v] > 1.0 && other_load[v] > 0.0 {
                ((1.0 - crucial_load[v]).max(0.0) / other_load[v]).min(1.0)
            } else {
                1.0
            }
        })
        .collect();
    for id in non_crucial.iter() {
        let (u, v) = g.edge(id).endpoints();
        let f = factor[u].min(factor[v]);
        if f < 1.0 && out.value(id) > 0.0 {
            out.rescale(id, f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loads(q: Vec<f64>, phi: Vec<f64>) -> VertexLoads {
        VertexLoads { q, phi }
    }

    fn single(w: f64) -> StochasticGraph {
        StochasticGraph::new(2, [(0, 1, w)], 1.0, 1.0).unwrap()
    }

    #[test]
    fn heavy_example() {
        let g = single(10.0);
        let c = classify_crucial_weighted(&g, &loads(vec![0.3, 0.3], vec![2.0, 2.0]), &EdgeSet::full(1), DEFAULT_DELTA).unwrap();
        assert_eq!(c.label(EdgeId(0)), Some(CrucialKind::Heavy));
        assert_eq!(c.heavy().len(), 1);
    }

    #[test]
    fn semi_heavy_example() {
        // Vertex 0 plays u (q = 0.3, φ = 2), vertex 1 plays v (q = 0.5, φ = 1).
        let g = single(3.0);
        let c = classify_crucial_weighted(&g, &loads(vec![0.3, 0.5], vec![2.0, 1.0]), &EdgeSet::full(1), DEFAULT_DELTA).unwrap();
        assert_eq!(c.label(EdgeId(0)), Some(CrucialKind::SemiHeavy));
    }

    #[test]
    fn type_two_example() {
        let g = single(1.0);
        let c = classify_crucial_weighted(&g, &loads(vec![0.3, 0.5], vec![3.0, 2.0]), &EdgeSet::full(1), DEFAULT_DELTA).unwrap();
        assert_eq!(
            c.label(EdgeId(0)),
            Some(CrucialKind::Directed {
                toward: VertexId(1),
                edge_type: EdgeType::Two
            })
        );
    }

    #[test]
    fn type_one_and_three() {
        let g = single(1.0);
        // φ_v ≥ φ_u.
        let c = classify_crucial_weighted(&g, &loads(vec![0.3, 0.5], vec![1.0, 1.0]), &EdgeSet::full(1), DEFAULT_DELTA).unwrap();
        assert!(matches!(
            c.label(EdgeId(0)),
            Some(CrucialKind::Directed {
                toward: VertexId(1),
                edge_type: EdgeType::One
            })
        ));
        // φ_v < φ_u, w too large for v, but q_u high enough to block semi-heavy.
        let g = single(2.0);
        let c = classify_crucial_weighted(&g, &loads(vec![0.95, 0.96], vec![1.5, 0.5]), &EdgeSet::full(1), DEFAULT_DELTA).unwrap();
        assert_eq!(
            c.label(EdgeId(0)),
            Some(CrucialKind::Directed {
                toward: VertexId(0),
                edge_type: EdgeType::Three
            })
        );
    }

    #[test]
    fn rejects_bad_delta() {
        let g = single(1.0);
        assert!(classify_crucial_weighted(&g, &loads(vec![0.0; 2], vec![0.0; 2]), &EdgeSet::full(1), 1.0).is_err());
    }

    #[test]
    fn retained_mass_examples() {
        assert!((retained(0.5, 0.3, 0.6) - 0.24).abs() < 1e-15);
        assert_eq!(retained(0.5, 0.3, 0.0), 0.3);
        assert_eq!(retained(0.0, 0.0, 0.5), 0.0);
    }

    #[test]
    fn heavy_edge_takes_full_budget() {
        let g = StochasticGraph::new(4, [(0, 1, 10.0), (0, 2, 1.0), (1, 3, 1.0)], 1.0, 1.0).unwrap();
        let nl = loads(vec![0.5, 0.5, 0.5, 0.5], vec![0.5, 0.5, 0.5, 0.5]);
        assert_eq!(best_alpha(0.5, 0.5, 0.5, 0.5, 10.0, DEFAULT_ALPHA_GRID), 1.0);
        let n = EdgeSet::from_ids(3, [EdgeId(1), EdgeId(2)]);
        let x = FractionalMatching::from_values(vec![0.0, 0.4, 0.4]);
        let mc = Matching::from_edges(&g, [EdgeId(0)]).unwrap();
        let out = crucial_procedure_weighted(&g, &x, &mc, &nl, &n, 0.0, DEFAULT_ALPHA_GRID).unwrap();
        assert_eq!(out.value(EdgeId(0)), 1.0);
        assert_eq!(out.value(EdgeId(1)), 0.0);
        assert_eq!(out.value(EdgeId(2)), 0.0);

        let out = crucial_procedure_weighted(&g, &x, &mc, &nl, &n, 0.1, DEFAULT_ALPHA_GRID).unwrap();
        assert!((out.value(EdgeId(0)) - 0.9).abs() < 1e-15);
        for l in out.vertex_loads(&g) {
            assert!(l <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn zero_weight_edge_changes_nothing() {
        let g = StochasticGraph::new(3, [(0, 1, 0.0), (1, 2, 1.0)], 1.0, 1.0).unwrap();
        let nl = loads(vec![0.0, 0.2, 0.2], vec![0.0, 0.2, 0.2]);
        assert_eq!(best_alpha(0.0, 0.0, 0.2, 0.2, 0.0, DEFAULT_ALPHA_GRID), 0.0);
        let n = EdgeSet::from_ids(2, [EdgeId(1)]);
        let x = FractionalMatching::from_values(vec![0.0, 0.3]);
        let mc = Matching::from_edges(&g, [EdgeId(0)]).unwrap();
        let out = crucial_procedure_weighted(&g, &x, &mc, &nl, &n, 0.1, DEFAULT_ALPHA_GRID).unwrap();
        assert_eq!(out.value(EdgeId(0)), 0.0);
        assert_eq!(out.value(EdgeId(1)), 0.3);
    }

    proptest! {
        #[test]
        fn breakpoints_beat_any_dense_grid(
            q_u in 0.0f64..1.0, q_v in 0.0f64..1.0, pu in 0.0f64..3.0, pv in 0.0f64..3.0, w in 0.0f64..6.0,
        ) {
            let phi_u = if q_u == 0.0 { 0.0 } else { pu };
            let phi_v = if q_v == 0.0 { 0.0 } else { pv };
            let h = |a: f64| retained(q_u, phi_u, a) + retained(q_v, phi_v, a) + a * w;
            let a = best_alpha(q_u, phi_u, q_v, phi_v, w, 3);
            let dense = (0..=20_000).map(|i| h(i as f64 / 20_000.0)).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(h(a) >= dense - 1e-9);
        }
    }
}
