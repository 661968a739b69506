//! Edge-degree constrained subgraphs.
//!
//! `H` is an EDCS(G, β, β⁻) when every edge of `H` has endpoint degree sum
//! (degrees taken in `H`) at most `β`, and every edge of `G` outside `H` has
//! sum at least `β⁻`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{approximation_ratio, deterministic_ratio, Evaluation, RatioEstimate};
use crate::graph::{EdgeId, EdgeSet, StochasticGraph};

pub const DEFAULT_C: f64 = 128.0;
pub const DEFAULT_FIXUP_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdcsParams {
    pub beta: u64,
    pub beta_minus: u64,
    pub epsilon: f64,
    /// The constant in the β formula; `None` when β was chosen directly.
    pub c_const: Option<f64>,
}

impl EdcsParams {
    pub fn custom(beta: u64, beta_minus: u64, epsilon: f64) -> Result<Self> {
        if beta == 0 || beta_minus >= beta {
            return Err(Error::input(format!("need beta > beta_minus >= 0, got {beta} and {beta_minus}")));
        }
        Ok(EdcsParams {
            beta,
            beta_minus,
            epsilon,
            c_const: None,
        })
    }
}

fn ceil_u64(x: f64) -> Result<u64> {
    let c = x.ceil();
    if c.is_finite() && c >= 0.0 && c < u64::MAX as f64 {
        Ok(c as u64)
    } else {
        Err(Error::input(format!("beta {x} is out of range")))
    }
}

/// `β = ⌈C·ln(1/(ε·p_v·p_e)) / (ε²·p_v·p_e)⌉`, `β⁻ = β − 1`.
pub fn compute_beta(epsilon: f64, p_v: f64, p_e: f64, c_const: f64) -> Result<EdcsParams> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::input(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    for (name, p) in [("p_v", p_v), ("p_e", p_e)] {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::input(format!("{name} must lie in (0, 1], got {p}")));
        }
    }
    if !(c_const > 0.0 && c_const.is_finite()) {
        return Err(Error::input(format!("C must be positive, got {c_const}")));
    }
    let p = p_v * p_e;
    let beta = ceil_u64(c_const * (1.0 / (epsilon * p)).ln() / (epsilon * epsilon * p))?.max(2);
    Ok(EdcsParams {
        beta,
        beta_minus: beta - 1,
        epsilon,
        c_const: Some(c_const),
    })
}

/// Parameters meeting the deterministic 2/3 guarantee: `λ = ε/32`,
/// `β = ⌈8λ⁻²·ln(1/λ)⌉`, `β⁻ = ⌈(1−λ)·β⌉`.
pub fn theorem_params(epsilon: f64) -> Result<EdcsParams> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::input(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    let lambda = epsilon / 32.0;
    let beta = ceil_u64(8.0 / (lambda * lambda) * (1.0 / lambda).ln())?;
    let beta_minus = ceil_u64((1.0 - lambda) * beta as f64)?.min(beta - 1);
    EdcsParams::custom(beta, beta_minus, epsilon)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// An `H` edge with degree sum above β.
    Overfull,
    /// A missing edge with degree sum below β⁻.
    Underfull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdcsViolation {
    pub edge: EdgeId,
    pub degree_sum: u64,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdcsSubgraph {
    edges: EdgeSet,
    params: EdcsParams,
    certified: bool,
}

impl EdcsSubgraph {
    /// Wraps an arbitrary edge subset, certifying it if it has no violations.
    pub fn from_edges(g: &StochasticGraph, edges: EdgeSet, params: EdcsParams) -> Result<Self> {
        if edges.universe() != g.m() {
            return Err(Error::input(format!(
                "edge set covers {} edges, graph has {}",
                edges.universe(),
                g.m()
            )));
        }
        let certified = violations(g, &edges, &params).is_empty();
        Ok(EdcsSubgraph {
            edges,
            params,
            certified,
        })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn params(&self) -> &EdcsParams {
        &self.params
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn max_degree(&self, g: &StochasticGraph) -> usize {
        g.degrees_in(&self.edges).into_iter().max().unwrap_or(0)
    }
}

fn degrees(g: &StochasticGraph, h: &EdgeSet) -> Vec<u64> {
    g.degrees_in(h).into_iter().map(|d| d as u64).collect()
}

fn violations(g: &StochasticGraph, h: &EdgeSet, params: &EdcsParams) -> Vec<EdcsViolation> {
    let deg = degrees(g, h);
    g.edge_ids()
        .filter_map(|id| {
            let (u, v) = g.edge(id).endpoints();
            let degree_sum = deg[u] + deg[v];
            let kind = if h.contains(id) {
                (degree_sum > params.beta).then_some(ViolationKind::Overfull)
            } else {
                (degree_sum < params.beta_minus).then_some(ViolationKind::Underfull)
            }?;
            Some(EdcsViolation { edge: id, degree_sum, kind })
        })
        .collect()
}

/// Every edge breaking one of the two EDCS properties, in canonical order.
pub fn verify_edcs(g: &StochasticGraph, h: &EdcsSubgraph) -> Vec<EdcsViolation> {
    violations(g, &h.edges, &h.params)
}

/// Local fix-up from `H = ∅` with the default cap.
pub fn build_edcs(g: &StochasticGraph, params: &EdcsParams) -> Result<EdcsSubgraph> {
    build_edcs_with_cap(g, params, DEFAULT_FIXUP_CAP)
}

/// Sweeps the edges in canonical order, first dropping overfull `H` edges,
/// then adding underfull missing ones, until a sweep changes nothing.
/// Terminates whenever `β > β⁻`; `cap` bounds the number of single-edge fixes.
pub fn build_edcs_with_cap(g: &StochasticGraph, params: &EdcsParams, cap: u64) -> Result<EdcsSubgraph> {
    if params.beta_minus >= params.beta {
        return Err(Error::input("need beta > beta_minus"));
    }
    let mut h = EdgeSet::empty(g.m());
    let mut deg = vec![0u64; g.n()];
    let mut fixes = 0u64;
    loop {
        let mut changed = false;
        for id in g.edge_ids() {
            let (u, v) = g.edge(id).endpoints();
            if h.contains(id) && deg[u] + deg[v] > params.beta {
                h.remove(id);
                deg[u] -= 1;
                deg[v] -= 1;
                fixes += 1;
                changed = true;
            }
        }
        for id in g.edge_ids() {
            let (u, v) = g.edge(id).endpoints();
            if !h.contains(id) && deg[u] + deg[v] < params.beta_minus {
                h.insert(id);
                deg[u] += 1;
                deg[v] += 1;
                fixes += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if fixes > cap {
            return Err(Error::EdcsDiverged {
                iterations: fixes,
                violations: violations(g, &h, params).len(),
            });
        }
    }
    EdcsSubgraph::from_edges(g, h, *params)
}

/// `μ(H) / μ(G)`, ignoring probabilities; 1 when `μ(G) = 0`.
pub fn edcs_matching_ratio(g: &StochasticGraph, h: &EdcsSubgraph) -> f64 {
    deterministic_ratio(g, &h.edges)
}

/// Builds the EDCS of `G` and evaluates `E[μ(H ∩ 𝒢)] / E[μ(𝒢)]`.
pub fn edcs_stochastic_ratio(g: &StochasticGraph, params: &EdcsParams, eval: Evaluation) -> Result<(EdcsSubgraph, RatioEstimate)> {
    let h = build_edcs(g, params)?;
    let r = approximation_ratio(g, &h.edges, eval)?;
    Ok((h, r))
}
