//! Exact and Monte Carlo estimates of `E[μ(Q ∩ 𝒢)]` and approximation ratios.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, StochasticGraph};
use crate::matching::{max_matching_value, MatchingSolver};
use crate::realization::{self, sample_into, Realization, RngSeed, DEFAULT_ENUMERATION_BITS};

/// Realizations drawn from one RNG stream before moving to the next.
/// Fixed so results do not depend on the worker count.
const SAMPLES_PER_STREAM: u64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMode {
    Exact,
    MonteCarlo,
}

impl EstimateMode {
    pub fn label(self) -> &'static str {
        match self {
            EstimateMode::Exact => "exact",
            EstimateMode::MonteCarlo => "mc",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Zero in exact mode.
    pub ci_halfwidth: f64,
    /// Monte Carlo draws, or the number of distinct realized edge sets in exact mode.
    pub samples: u64,
    pub mode: EstimateMode,
}

/// How expectations are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Evaluation {
    /// Full enumeration; fails beyond `bits` = `n + |E|`.
    Exact { bits: u32 },
    MonteCarlo { samples: u64, seed: RngSeed, confidence: f64 },
    /// Exact when the graph fits in `bits`, Monte Carlo otherwise.
    Auto {
        bits: u32,
        samples: u64,
        seed: RngSeed,
        confidence: f64,
    },
}

impl Evaluation {
    pub fn exact() -> Self {
        Evaluation::Exact {
            bits: DEFAULT_ENUMERATION_BITS,
        }
    }

    pub fn monte_carlo(samples: u64, seed: RngSeed) -> Self {
        Evaluation::MonteCarlo {
            samples,
            seed,
            confidence: 0.99,
        }
    }

    /// Exact when the graph is within the default enumeration budget,
    /// Monte Carlo otherwise.
    pub fn auto(samples: u64, seed: RngSeed) -> Self {
        Evaluation::Auto {
            bits: DEFAULT_ENUMERATION_BITS,
            samples,
            seed,
            confidence: 0.99,
        }
    }

    /// Resolves `Auto` against a concrete graph.
    pub fn resolve(self, g: &StochasticGraph) -> Evaluation {
        match self {
            Evaluation::Auto {
                bits,
                samples,
                seed,
                confidence,
            } => {
                if realization::is_enumerable(g, bits) {
                    Evaluation::Exact { bits }
                } else {
                    Evaluation::MonteCarlo {
                        samples,
                        seed,
                        confidence,
                    }
                }
            }
            other => other,
        }
    }

    pub fn mode(self, g: &StochasticGraph) -> EstimateMode {
        match self.resolve(g) {
            Evaluation::Exact { .. } => EstimateMode::Exact,
            _ => EstimateMode::MonteCarlo,
        }
    }
}

fn ids_of(mask: u64) -> impl Iterator<Item = EdgeId> {
    (0..64).filter(move |&i| mask >> i & 1 == 1).map(EdgeId)
}

/// `E[μ(𝒢 ∩ restrict_to)]` by enumeration, using the default budget.
pub fn expected_matching_exact(g: &StochasticGraph, restrict_to: Option<&EdgeSet>) -> Result<Estimate> {
    expected_matching_exact_within(g, restrict_to, DEFAULT_ENUMERATION_BITS)
}

pub fn expected_matching_exact_within(g: &StochasticGraph, restrict_to: Option<&EdgeSet>, bits: u32) -> Result<Estimate> {
    let table = realization::edge_mask_distribution(g, bits)?;
    let keep = restrict_to.map_or(u64::MAX, EdgeSet::to_mask);
    let mut solver = MatchingSolver::new(g.n());
    let mut memo: HashMap<u64, f64> = HashMap::new();
    let mut mean = 0.0;
    let mut outcomes = 0u64;
    for (mask, p) in realization::support(&table) {
        let kept = mask & keep;
        let mu = *memo
            .entry(kept)
            .or_insert_with(|| solver.solve(g, ids_of(kept)).total_weight());
        mean += p * mu;
        outcomes += 1;
    }
    Ok(Estimate {
        mean,
        ci_halfwidth: 0.0,
        samples: outcomes,
        mode: EstimateMode::Exact,
    })
}

/// Hoeffding halfwidth for the mean of `samples` draws lying in an interval
/// of length `range`.
pub fn hoeffding_halfwidth(range: f64, samples: u64, confidence: f64) -> f64 {
    if range <= 0.0 || samples == 0 {
        return 0.0;
    }
    let delta = (1.0 - confidence).max(f64::MIN_POSITIVE);
    range * ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

#[derive(Clone, Copy, Debug)]
struct Moments {
    sum: f64,
    min: f64,
    max: f64,
}

impl Moments {
    const EMPTY: Moments = Moments {
        sum: 0.0,
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
    };

    fn push(&mut self, x: f64) {
        self.sum += x;
        self.min = self.min.min(x);
        self.max = self.max.max(x);
    }

    fn merge(self, o: Moments) -> Moments {
        Moments {
            sum: self.sum + o.sum,
            min: self.min.min(o.min),
            max: self.max.max(o.max),
        }
    }

    fn estimate(self, samples: u64, confidence: f64) -> Estimate {
        Estimate {
            mean: self.sum / samples as f64,
            ci_halfwidth: hoeffding_halfwidth(self.max - self.min, samples, confidence),
            samples,
            mode: EstimateMode::MonteCarlo,
        }
    }
}

/// Runs `samples` draws split across fixed streams, evaluating every target
/// subgraph on each draw. Per-stream results are combined in stream order.
fn monte_carlo<const K: usize>(g: &StochasticGraph, targets: [Option<&EdgeSet>; K], samples: u64, seed: RngSeed) -> [Moments; K] {
    let streams = samples.div_ceil(SAMPLES_PER_STREAM);
    let per_stream: Vec<[Moments; K]> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let mut rng = seed.child(s).rng();
            let mut solver = MatchingSolver::new(g.n());
            let mut r = Realization::full(g);
            let mut acc = [Moments::EMPTY; K];
            let draws = SAMPLES_PER_STREAM.min(samples - s * SAMPLES_PER_STREAM);
            for _ in 0..draws {
                sample_into(g, &mut rng, &mut r);
                for (k, target) in targets.iter().enumerate() {
                    let mu = match target {
                        Some(q) => solver.solve(g, r.edges().iter().filter(|&id| q.contains(id))),
                        None => solver.solve(g, r.edges().iter()),
                    }
                    .total_weight();
                    acc[k].push(mu);
                }
            }
            acc
        })
        .collect();
    per_stream.into_iter().fold([Moments::EMPTY; K], |mut total, part| {
        for k in 0..K {
            total[k] = total[k].merge(part[k]);
        }
        total
    })
}

/// Sample mean of `μ(𝒢 ∩ restrict_to)` over `samples` draws.
///
/// The halfwidth is Hoeffding's bound over the observed range of the
/// sampled values, which lies inside `[0, μ(G)]`.
pub fn expected_matching_mc(
    g: &StochasticGraph,
    restrict_to: Option<&EdgeSet>,
    samples: u64,
    seed: RngSeed,
    confidence: f64,
) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::input("Monte Carlo estimation needs at least one sample"));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::input(format!("confidence must lie in (0, 1), got {confidence}")));
    }
    let [m] = monte_carlo(g, [restrict_to], samples, seed);
    Ok(m.estimate(samples, confidence))
}

/// Evaluates `E[μ(𝒢 ∩ restrict_to)]` under the given evaluation mode.
pub fn expected_matching(g: &StochasticGraph, restrict_to: Option<&EdgeSet>, eval: Evaluation) -> Result<Estimate> {
    match eval.resolve(g) {
        Evaluation::Exact { bits } => expected_matching_exact_within(g, restrict_to, bits),
        Evaluation::MonteCarlo {
            samples,
            seed,
            confidence,
        } => expected_matching_mc(g, restrict_to, samples, seed, confidence),
        Evaluation::Auto { .. } => unreachable!("resolved above"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioEstimate {
    pub ratio: f64,
    pub numerator: Estimate,
    pub denominator: Estimate,
}

impl RatioEstimate {
    /// Largest deviation of the ratio compatible with both halfwidths.
    pub fn ci_halfwidth(&self) -> f64 {
        let (n, d) = (self.numerator, self.denominator);
        if n.ci_halfwidth == 0.0 && d.ci_halfwidth == 0.0 {
            return 0.0;
        }
        let lo_den = d.mean - d.ci_halfwidth;
        if lo_den <= 0.0 {
            return f64::INFINITY;
        }
        let hi = (n.mean + n.ci_halfwidth) / lo_den;
        let lo = ((n.mean - n.ci_halfwidth) / (d.mean + d.ci_halfwidth)).max(0.0);
        (hi - self.ratio).max(self.ratio - lo)
    }
}

fn ratio_of(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        1.0
    } else {
        num / den
    }
}

/// `E[μ(Q ∩ 𝒢)] / E[μ(𝒢)]`; defined as 1 when the denominator is zero.
///
/// In Monte Carlo mode both expectations are estimated on the same draws.
pub fn approximation_ratio(g: &StochasticGraph, q: &EdgeSet, eval: Evaluation) -> Result<RatioEstimate> {
    let (numerator, denominator) = match eval.resolve(g) {
        Evaluation::Exact { bits } => (
            expected_matching_exact_within(g, Some(q), bits)?,
            expected_matching_exact_within(g, None, bits)?,
        ),
        Evaluation::MonteCarlo {
            samples,
            seed,
            confidence,
        } => {
            if samples == 0 {
                return Err(Error::input("Monte Carlo estimation needs at least one sample"));
            }
            let [num, den] = monte_carlo(g, [Some(q), None], samples, seed);
            (num.estimate(samples, confidence), den.estimate(samples, confidence))
        }
        Evaluation::Auto { .. } => unreachable!("resolved above"),
    };
    Ok(RatioEstimate {
        ratio: ratio_of(numerator.mean, denominator.mean),
        numerator,
        denominator,
    })
}

/// `μ(Q) / μ(G)` for deterministic graphs; 1 when `μ(G) = 0`.
pub fn deterministic_ratio(g: &StochasticGraph, q: &EdgeSet) -> f64 {
    ratio_of(max_matching_value(g, q), max_matching_value(g, &EdgeSet::full(g.m())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::enumerate_realizations;

    fn single_edge(p_v: f64, p_e: f64) -> StochasticGraph {
        StochasticGraph::unweighted(2, [(0, 1)], p_v, p_e).unwrap()
    }

    /// Independent oracle: walk every realization and solve each one.
    fn slow_exact(g: &StochasticGraph, restrict: Option<&EdgeSet>) -> f64 {
        enumerate_realizations(g, 22)
            .unwrap()
            .map(|(r, p)| {
                let edges = match restrict {
                    Some(q) => r.edges().intersection(q),
                    None => r.edges().clone(),
                };
                p * max_matching_value(g, &edges)
            })
            .sum()
    }

    #[test]
    fn exact_examples() {
        let g = single_edge(0.5, 0.5);
        assert_eq!(expected_matching_exact(&g, None).unwrap().mean, 0.125);
        let path = StochasticGraph::unweighted(3, [(0, 1), (1, 2)], 0.5, 1.0).unwrap();
        let e = expected_matching_exact(&path, None).unwrap();
        assert!((e.mean - 0.375).abs() < 1e-15);
        assert_eq!(e.ci_halfwidth, 0.0);
        assert_eq!(expected_matching_exact(&path, Some(&EdgeSet::empty(2))).unwrap().mean, 0.0);
    }

    #[test]
    fn exact_agrees_with_realization_walk() {
        let g = StochasticGraph::new(5, [(0, 1, 2.0), (1, 2, 1.0), (2, 3, 3.5), (3, 4, 0.5), (0, 4, 1.5), (1, 3, 2.5)], 0.7, 0.6)
            .unwrap();
        let q = EdgeSet::from_ids(6, [EdgeId(0), EdgeId(2), EdgeId(5)]);
        let fast = expected_matching_exact(&g, Some(&q)).unwrap().mean;
        assert!((fast - slow_exact(&g, Some(&q))).abs() < 1e-12);
        let fast = expected_matching_exact(&g, None).unwrap().mean;
        assert!((fast - slow_exact(&g, None)).abs() < 1e-12);
    }

    #[test]
    fn certain_graph_has_zero_width() {
        let g = StochasticGraph::unweighted(4, [(0, 1), (1, 2), (2, 3)], 1.0, 1.0).unwrap();
        let e = expected_matching_mc(&g, None, 1000, RngSeed::new(1), 0.999).unwrap();
        assert_eq!(e.mean, 2.0);
        assert_eq!(e.ci_halfwidth, 0.0);
    }

    #[test]
    fn monte_carlo_single_edge_within_three_sigma() {
        let g = single_edge(0.5, 0.5);
        let n = 100_000;
        let e = expected_matching_mc(&g, None, n, RngSeed::new(5), 0.99).unwrap();
        let sigma = (0.125f64 * 0.875 / n as f64).sqrt();
        assert!((e.mean - 0.125).abs() < 3.0 * sigma, "{}", e.mean);
        assert!(e.ci_halfwidth > 0.0);
    }

    #[test]
    fn one_sample_is_that_draw() {
        let g = single_edge(0.5, 0.5);
        let seed = RngSeed::new(42);
        let e = expected_matching_mc(&g, None, 1, seed, 0.99).unwrap();
        let r = crate::realization::sample_with(&g, &mut seed.child(0).rng());
        assert_eq!(e.mean, if r.has_edge(EdgeId(0)) { 1.0 } else { 0.0 });
        assert!(expected_matching_mc(&g, None, 0, seed, 0.99).is_err());
    }

    #[test]
    fn ratio_examples() {
        let g = StochasticGraph::unweighted(4, [(0, 1), (1, 2), (2, 3), (0, 3)], 0.6, 0.8).unwrap();
        let all = approximation_ratio(&g, &EdgeSet::full(4), Evaluation::exact()).unwrap();
        assert_eq!(all.ratio, 1.0);
        let none = approximation_ratio(&g, &EdgeSet::empty(4), Evaluation::exact()).unwrap();
        assert_eq!(none.ratio, 0.0);
        let empty = StochasticGraph::unweighted(3, [], 0.5, 0.5).unwrap();
        assert_eq!(approximation_ratio(&empty, &EdgeSet::empty(0), Evaluation::exact()).unwrap().ratio, 1.0);
        assert_eq!(deterministic_ratio(&empty, &EdgeSet::empty(0)), 1.0);
    }

    #[test]
    fn monte_carlo_is_worker_count_independent() {
        let g = StochasticGraph::unweighted(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)], 0.7, 0.7).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| expected_matching_mc(&g, None, 5000, RngSeed::new(9), 0.99).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn monte_carlo_covers_exact_value() {
        // Repeated seeds; at 99% confidence a handful of misses out of 20 would
        // already be suspicious, and Hoeffding is conservative.
        let g = StochasticGraph::new(5, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 4, 2.0), (0, 2, 1.5)], 0.8, 0.6).unwrap();
        let exact = expected_matching_exact(&g, None).unwrap().mean;
        let misses = (0..20)
            .filter(|&s| {
                let e = expected_matching_mc(&g, None, 4000, RngSeed::new(s), 0.99).unwrap();
                (e.mean - exact).abs() > e.ci_halfwidth
            })
            .count();
        assert!(misses <= 1, "{misses} misses");
    }
}
