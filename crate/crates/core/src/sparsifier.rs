//! The sampled-matching sparsifier.
//!
//! `Q` is the union of the canonical maximum matchings of `R` independent
//! realizations of `G`. Each vertex gains at most one `Q`-edge per round, so
//! `deg_Q ≤ R`. The per-edge hit count divided by `R` is `f_e`, an unbiased
//! estimate of the matching probability `q_e`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, StochasticGraph};
use crate::matching::MatchingSolver;
use crate::realization::{sample_into, Realization, RngSeed};

/// Default cap on the number of rounds.
pub const DEFAULT_ROUND_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifierParams {
    pub epsilon: f64,
    /// Rounds actually run.
    pub rounds: u64,
    /// Uncapped round count `2000·ln(1/ε)·ln(1/(ε·p_v²·p_e)) / (ε⁴·p_v²·p_e)`.
    pub formula_rounds: f64,
    /// Crucial-edge threshold `ε³·p_v²·p_e / (20·ln(1/ε))`.
    pub tau: f64,
    pub round_cap: Option<u64>,
}

impl SparsifierParams {
    /// Parameters with an explicit round count and threshold, bypassing the
    /// formulas. Mostly useful in tests.
    pub fn custom(epsilon: f64, rounds: u64, tau: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if rounds == 0 {
            return Err(Error::input("at least one round is required"));
        }
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::input(format!("tau must lie in (0, 1), got {tau}")));
        }
        Ok(SparsifierParams {
            epsilon,
            rounds,
            formula_rounds: rounds as f64,
            tau,
            round_cap: None,
        })
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::input(format!("epsilon must lie in (0, 1), got {epsilon}")))
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::input(format!("{name} must lie in (0, 1], got {p}")))
    }
}

/// Round count and crucial threshold for accuracy `epsilon`. Logarithms are natural.
pub fn compute_params(epsilon: f64, p_v: f64, p_e: f64, round_cap: Option<u64>) -> Result<SparsifierParams> {
    check_epsilon(epsilon)?;
    check_probability("p_v", p_v)?;
    check_probability("p_e", p_e)?;
    if round_cap == Some(0) {
        return Err(Error::input("round cap must be positive"));
    }
    let survive = p_v * p_v * p_e;
    let log_inv_eps = (1.0 / epsilon).ln();
    let formula_rounds = (2000.0 * log_inv_eps * (1.0 / (epsilon * survive)).ln() / (epsilon.powi(4) * survive)).ceil();
    let tau = epsilon.powi(3) * survive / (20.0 * log_inv_eps);
    let uncapped = if formula_rounds >= u64::MAX as f64 { u64::MAX } else { formula_rounds as u64 };
    let rounds = match round_cap {
        Some(cap) => uncapped.min(cap),
        None => uncapped,
    };
    Ok(SparsifierParams {
        epsilon,
        rounds,
        formula_rounds,
        tau,
        round_cap,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "SparsifierRecord", try_from = "SparsifierRecord")]
pub struct Sparsifier {
    edges: EdgeSet,
    appear_count: Vec<u64>,
    params: SparsifierParams,
}

#[derive(Serialize, Deserialize)]
struct SparsifierRecord {
    params: SparsifierParams,
    appear_count: Vec<u64>,
}

impl From<Sparsifier> for SparsifierRecord {
    fn from(s: Sparsifier) -> Self {
        SparsifierRecord {
            params: s.params,
            appear_count: s.appear_count,
        }
    }
}

impl TryFrom<SparsifierRecord> for Sparsifier {
    type Error = Error;

    fn try_from(r: SparsifierRecord) -> Result<Self> {
        Sparsifier::from_counts(r.appear_count, r.params)
    }
}

impl Sparsifier {
    /// Reassembles a sparsifier from stored counts.
    pub fn from_counts(appear_count: Vec<u64>, params: SparsifierParams) -> Result<Self> {
        if let Some(c) = appear_count.iter().find(|&&c| c > params.rounds) {
            return Err(Error::input(format!("appearance count {c} exceeds {} rounds", params.rounds)));
        }
        let edges = EdgeSet::from_ids(
            appear_count.len(),
            appear_count.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| EdgeId(i)),
        );
        Ok(Sparsifier {
            edges,
            appear_count,
            params,
        })
    }

    /// `Q`.
    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn appear_count(&self, id: EdgeId) -> u64 {
        self.appear_count[id.0]
    }

    pub fn appear_counts(&self) -> &[u64] {
        &self.appear_count
    }

    /// `f_e = count / R`.
    pub fn frequency(&self, id: EdgeId) -> f64 {
        self.appear_count[id.0] as f64 / self.params.rounds as f64
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.appear_count.len()).map(|i| self.frequency(EdgeId(i))).collect()
    }

    pub fn params(&self) -> &SparsifierParams {
        &self.params
    }

    pub fn max_degree(&self, g: &StochasticGraph) -> usize {
        g.degrees_in(&self.edges).into_iter().max().unwrap_or(0)
    }
}

/// Runs `params.rounds` rounds. Round `i` draws its realization from
/// `seed.child(i)`, so the result is independent of the worker count.
pub fn build_sparsifier(g: &StochasticGraph, params: &SparsifierParams, seed: RngSeed) -> Sparsifier {
    const ROUNDS_PER_TASK: u64 = 64;
    let tasks = params.rounds.div_ceil(ROUNDS_PER_TASK);
    let appear_count = (0..tasks)
        .into_par_iter()
        .fold(
            || (vec![0u64; g.m()], MatchingSolver::new(g.n()), Realization::full(g)),
            |(mut counts, mut solver, mut r), task| {
                let end = ((task + 1) * ROUNDS_PER_TASK).min(params.rounds);
                for round in task * ROUNDS_PER_TASK..end {
                    sample_into(g, &mut seed.child(round).rng(), &mut r);
                    for &id in solver.solve(g, r.edges().iter()).edges() {
                        counts[id.0] += 1;
                    }
                }
                (counts, solver, r)
            },
        )
        .map(|(counts, _, _)| counts)
        .reduce(
            || vec![0u64; g.m()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Sparsifier::from_counts(appear_count, *params).expect("counts are bounded by the round count")
}

/// Crucial / non-crucial split of the edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    pub crucial: EdgeSet,
    pub non_crucial: EdgeSet,
}

/// `C = {e : q_e ≥ τ}`, `N = E ∖ C`.
pub fn classify_edges(s: &Sparsifier, q: &[f64]) -> Result<EdgePartition> {
    classify_by_threshold(q, s.params.tau)
}

pub fn classify_by_threshold(q: &[f64], tau: f64) -> Result<EdgePartition> {
    if let Some(bad) = q.iter().find(|x| !x.is_finite()) {
        return Err(Error::input(format!("matching probability {bad} is not finite")));
    }
    let m = q.len();
    let crucial = EdgeSet::from_ids(m, (0..m).filter(|&i| q[i] >= tau).map(EdgeId));
    let non_crucial = EdgeSet::full(m).difference(&crucial);
    Ok(EdgePartition { crucial, non_crucial })
}
