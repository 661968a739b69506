use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{EdgeId, StochasticGraph};
use crate::matching::Matching;
use crate::realization::{Realization, RngSeed};
use crate::sparsifier::{classify_edges, EdgePartition, Sparsifier};

use super::{
    classify_crucial_weighted, crucial_procedure_unweighted, crucial_procedure_weighted, non_crucial_procedure,
    sample_crucial_matching, CrucialClassification, CrucialKind, EdgeStats, EdgeType, FractionalMatching,
    DEFAULT_ALPHA_GRID, DEFAULT_DELTA,
};

/// Everything produced by one pass of the fractional construction.
#[derive(Clone, Debug)]
pub struct FractionalRun {
    pub partition: EdgePartition,
    /// `x` after the non-crucial procedure only.
    pub non_crucial_x: FractionalMatching,
    pub crucial_matching: Matching,
    /// Final `x`.
    pub x: FractionalMatching,
    /// Present for the weighted procedure.
    pub classification: Option<CrucialClassification>,
}

/// Runs the non-crucial procedure and then the crucial procedure matching
/// `weighted` on one realization. `ε` is taken from the sparsifier.
pub fn run_fractional(
    g: &StochasticGraph,
    s: &Sparsifier,
    stats: &EdgeStats,
    realized: &Realization,
    weighted: bool,
    seed: RngSeed,
) -> Result<FractionalRun> {
    let epsilon = s.params().epsilon;
    let partition = classify_edges(s, &stats.q)?;
    let non_crucial_x = non_crucial_procedure(g, s, stats, &partition.non_crucial, realized, epsilon);
    let loads = stats.loads(g, &partition.non_crucial);
    let crucial_matching = sample_crucial_matching(g, s, &partition.crucial, realized, seed);
    let (x, classification) = if weighted {
        let c = classify_crucial_weighted(g, &loads, &partition.crucial, DEFAULT_DELTA)?;
        let x = crucial_procedure_weighted(
            g,
            &non_crucial_x,
            &crucial_matching,
            &loads,
            &partition.non_crucial,
            epsilon,
            DEFAULT_ALPHA_GRID,
        )?;
        (x, Some(c))
    } else {
        (crucial_procedure_unweighted(g, &non_crucial_x, &crucial_matching, &loads, epsilon), None)
    };
    Ok(FractionalRun {
        partition,
        non_crucial_x,
        crucial_matching,
        x,
        classification,
    })
}

/// One row of a fractional-matching report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub edge: EdgeId,
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub x: f64,
    pub scale: f64,
    pub label: String,
}

impl FractionalRun {
    /// Per-edge values, scaling factors and labels.
    pub fn report(&self, g: &StochasticGraph) -> Vec<EdgeReport> {
        g.edge_ids()
            .map(|id| {
                let (u, v) = g.edge(id).endpoints();
                EdgeReport {
                    edge: id,
                    u,
                    v,
                    weight: g.weight(id),
                    x: self.x.value(id),
                    scale: self.x.scale(id),
                    label: self.label(id),
                }
            })
            .collect()
    }

    fn label(&self, id: EdgeId) -> String {
        if self.partition.non_crucial.contains(id) {
            return "non-crucial".into();
        }
        match self.classification.as_ref().and_then(|c| c.label(id)) {
            None => "crucial".into(),
            Some(CrucialKind::Heavy) => "heavy".into(),
            Some(CrucialKind::SemiHeavy) => "semi-heavy".into(),
            Some(CrucialKind::Directed { toward, edge_type }) => {
                let t = match edge_type {
                    EdgeType::One => 1,
                    EdgeType::Two => 2,
                    EdgeType::Three => 3,
                };
                format!("type-{t}->{}", toward.0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractional::{compute_edge_stats, QSource};
    use crate::sparsifier::{build_sparsifier, compute_params};

    #[test]
    fn certain_graph_matches_everything() {
        let g = StochasticGraph::unweighted(4, [(0, 1), (1, 2), (2, 3)], 1.0, 1.0).unwrap();
        let params = compute_params(0.2, 1.0, 1.0, Some(20)).unwrap();
        let s = build_sparsifier(&g, &params, RngSeed::new(1));
        let stats = compute_edge_stats(&g, QSource::exact()).unwrap();
        let run = run_fractional(&g, &s, &stats, &Realization::full(&g), false, RngSeed::new(2)).unwrap();
        assert_eq!(run.crucial_matching.len(), 2);
        assert!((run.x.size() - 2.0 * 0.8).abs() < 1e-12);
        let report = run.report(&g);
        assert_eq!(report[1].label, "non-crucial");
        assert_eq!(report[0].label, "crucial");
    }

    #[test]
    fn weighted_labels() {
        let g = StochasticGraph::new(3, [(0, 1, 5.0), (1, 2, 1.0)], 1.0, 1.0).unwrap();
        let params = compute_params(0.2, 1.0, 1.0, Some(20)).unwrap();
        let s = build_sparsifier(&g, &params, RngSeed::new(1));
        let stats = compute_edge_stats(&g, QSource::exact()).unwrap();
        let run = run_fractional(&g, &s, &stats, &Realization::full(&g), true, RngSeed::new(2)).unwrap();
        assert_eq!(run.report(&g)[0].label, "heavy");
        assert!((run.x.value(EdgeId(0)) - 0.8).abs() < 1e-12);
    }
}
