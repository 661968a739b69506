//! Saved sparsifiers and their invariant checks.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::edcs::{verify_edcs, EdcsSubgraph};
use crate::error::{Error, Result};
use crate::fractional::{
    check_blossom_constraints, check_subset_loads, compute_edge_stats, round_to_integral, run_fractional, QSource,
    MAX_BLOSSOM_SUBSET,
};
use crate::graph::StochasticGraph;
use crate::realization::{sample_realization, RngSeed};
use crate::sparsifier::Sparsifier;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Artifact {
    Sparsifier {
        graph: StochasticGraph,
        seed: u64,
        sparsifier: Sparsifier,
    },
    Edcs {
        graph: StochasticGraph,
        subgraph: EdcsSubgraph,
    },
}

impl Artifact {
    pub fn graph(&self) -> &StochasticGraph {
        match self {
            Artifact::Sparsifier { graph, .. } | Artifact::Edcs { graph, .. } => graph,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let a: Artifact = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let m = a.graph().m();
        let universe = match &a {
            Artifact::Sparsifier { sparsifier, .. } => sparsifier.appear_counts().len(),
            Artifact::Edcs { subgraph, .. } => subgraph.edges().universe(),
        };
        if universe != m {
            return Err(Error::input(format!("artifact covers {universe} edges but the graph has {m}")));
        }
        Ok(a)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Realizations drawn for the fractional checks.
    pub trials: u64,
    pub seed: RngSeed,
    /// Monte Carlo draws for `q` when the graph is too large to enumerate.
    pub samples: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            trials: 20,
            seed: RngSeed::new(0),
            samples: 100_000,
        }
    }
}

#[derive(Default)]
struct Tally {
    runs: u64,
    failures: u64,
    skipped: u64,
}

impl Tally {
    fn record(&mut self, ok: Option<bool>) {
        match ok {
            None => self.skipped += 1,
            Some(ok) => {
                self.runs += 1;
                self.failures += u64::from(!ok);
            }
        }
    }

    fn outcome(&self, name: &str) -> CheckOutcome {
        let mut detail = format!("{} of {} realizations failed", self.failures, self.runs);
        if self.skipped > 0 {
            detail.push_str(&format!(", {} skipped (subset budget)", self.skipped));
        }
        CheckOutcome::new(name, self.failures == 0, detail)
    }
}

/// Runs the invariant suite that applies to the artifact's kind.
pub fn check_artifact(artifact: &Artifact, opts: &CheckOptions) -> Result<Vec<CheckOutcome>> {
    match artifact {
        Artifact::Edcs { graph, subgraph } => {
            let v = verify_edcs(graph, subgraph);
            let beta = subgraph.params().beta;
            let deg = subgraph.max_degree(graph);
            Ok(vec![
                CheckOutcome::new("edcs-properties", v.is_empty(), format!("{} violating edges", v.len())),
                CheckOutcome::new(
                    "certified-flag",
                    subgraph.certified() == v.is_empty(),
                    format!("stored {}, recomputed {}", subgraph.certified(), v.is_empty()),
                ),
                CheckOutcome::new("degree-bound", deg as u64 <= beta, format!("max degree {deg}, beta {beta}")),
            ])
        }
        Artifact::Sparsifier { graph: g, sparsifier: s, .. } => {
            let rounds = s.params().rounds;
            let eps = s.params().epsilon;
            let deg = s.max_degree(g);
            let mut out = vec![CheckOutcome::new(
                "degree-bound",
                deg as u64 <= rounds,
                format!("max degree {deg}, rounds {rounds}"),
            )];
            let stats = compute_edge_stats(g, QSource::auto(g, opts.samples, opts.seed.child(0)))?;
            let q_v = stats.vertex_q(g);
            let subset_size = ((1.0 / eps).floor() as usize).min(MAX_BLOSSOM_SUBSET);
            let mut t = [(); 5].map(|_| Tally::default());
            for trial in 0..opts.trials {
                let seed = opts.seed.child(trial + 1);
                let realized = sample_realization(g, seed.child(0));
                let run = run_fractional(g, s, &stats, &realized, g.is_weighted(), seed.child(1))?;

                let xn = run.non_crucial_x.vertex_loads(g);
                t[0].record(Some((0..g.n()).all(|v| xn[v] <= q_v[v].max(eps) / g.p_v() + 1e-9)));
                t[1].record(optional(check_subset_loads(g, &run.non_crucial_x, subset_size, eps))?.map(|v| v.is_empty()));
                t[2].record(Some(run.x.vertex_loads(g).iter().all(|&l| l <= 1.0 + 1e-9)));
                t[3].record(optional(check_blossom_constraints(g, &run.x, eps))?.map(|v| v.is_empty()));
                let available = s.edges().intersection(realized.edges());
                t[4].record(Some(round_to_integral(g, &run.x, &available, eps).is_ok()));
            }
            let names = [
                "non-crucial-vertex-bound",
                "non-crucial-subset-load",
                "vertex-budget",
                "blossom",
                "rounding",
            ];
            out.extend(names.iter().zip(&t).map(|(n, t)| t.outcome(n)));
            Ok(out)
        }
    }
}

fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edcs::{build_edcs, EdcsParams};
    use crate::graph::EdgeSet;
    use crate::sparsifier::{build_sparsifier, compute_params};

    fn graph() -> StochasticGraph {
        StochasticGraph::unweighted(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)], 0.8, 0.7).unwrap()
    }

    #[test]
    fn sparsifier_round_trip_and_checks() {
        let g = graph();
        let params = compute_params(0.2, g.p_v(), g.p_e(), Some(200)).unwrap();
        let a = Artifact::Sparsifier {
            sparsifier: build_sparsifier(&g, &params, RngSeed::new(5)),
            graph: g,
            seed: 5,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.json");
        a.save(&path).unwrap();
        let back = Artifact::load(&path).unwrap();
        assert_eq!(back, a);
        let outcomes = check_artifact(&back, &CheckOptions { trials: 5, ..Default::default() }).unwrap();
        assert_eq!(outcomes.len(), 6);
        assert!(outcomes.iter().all(|o| o.passed), "{outcomes:?}");
    }

    #[test]
    fn edcs_checks_catch_tampering() {
        let g = graph();
        let params = EdcsParams::custom(3, 2, 0.1).unwrap();
        let good = Artifact::Edcs {
            subgraph: build_edcs(&g, &params).unwrap(),
            graph: g.clone(),
        };
        assert!(check_artifact(&good, &CheckOptions::default()).unwrap().iter().all(|o| o.passed));
        let bad = Artifact::Edcs {
            subgraph: EdcsSubgraph::from_edges(&g, EdgeSet::full(g.m()), params).unwrap(),
            graph: g,
        };
        let outcomes = check_artifact(&bad, &CheckOptions::default()).unwrap();
        assert!(!outcomes[0].passed);
        assert!(outcomes[1].passed);
    }
}
