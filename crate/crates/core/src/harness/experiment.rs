//! Parameter sweeps.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edcs::{build_edcs, compute_beta, verify_edcs, EdcsParams, DEFAULT_C};
use crate::error::{Error, Result};
use crate::estimator::{approximation_ratio, Evaluation};
use crate::fractional::{check_blossom_constraints, compute_edge_stats, round_to_integral, run_fractional, QSource};
use crate::graph::StochasticGraph;
use crate::realization::{sample_realization, RngSeed, DEFAULT_ENUMERATION_BITS};
use crate::sparsifier::{build_sparsifier, compute_params, DEFAULT_ROUND_CAP};

use super::generate::{Family, GeneratorSpec, WeightModel};
use super::io::parse_graph_file;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Algorithm1,
    Edcs,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Algorithm1 => "algorithm1",
            Algorithm::Edcs => "edcs",
        }
    }
}

/// One `[[graphs]]` entry: either `file = "..."` or a generator
/// (`family`, optional `weights`, `seed`, `count`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default)]
    pub weights: WeightModel,
    /// Seed of the first instance; instance `i` uses `seed + i`. Defaults to the master seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "one")]
    pub count: usize,
}

fn one() -> usize {
    1
}
fn default_samples() -> u64 {
    100_000
}
fn default_r_cap() -> u64 {
    DEFAULT_ROUND_CAP
}
fn default_c() -> f64 {
    DEFAULT_C
}
fn default_bits() -> u32 {
    DEFAULT_ENUMERATION_BITS
}
fn default_confidence() -> f64 {
    0.99
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graphs: Vec<GraphEntry>,
    pub p_v: Vec<f64>,
    pub p_e: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub algorithm: Algorithm,
    /// Use the weighted crucial procedure in the fractional checks.
    #[serde(default)]
    pub weighted: bool,
    #[serde(default = "default_r_cap")]
    pub r_cap: u64,
    /// Monte Carlo draws when a graph is too large to enumerate.
    #[serde(default = "default_samples")]
    pub samples: u64,
    pub seed: u64,
    pub output: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default = "default_c")]
    pub c_const: f64,
    /// Fixed EDCS β (with β⁻ = β − 1) instead of the formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<u64>,
    #[serde(default = "default_bits")]
    pub enumeration_bits: u32,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a TOML config; relative graph files and output paths are taken
    /// relative to the config's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::from_toml(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for g in &mut cfg.graphs {
            if let Some(f) = &g.file {
                if f.is_relative() {
                    g.file = Some(base.join(f));
                }
            }
        }
        if cfg.output.is_relative() {
            cfg.output = base.join(&cfg.output);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.graphs.is_empty() {
            return bad("no graphs given".into());
        }
        for (name, list) in [("p_v", &self.p_v), ("p_e", &self.p_e), ("epsilon", &self.epsilon)] {
            if list.is_empty() {
                return bad(format!("`{name}` sweep is empty"));
            }
        }
        if let Some(p) = self.p_v.iter().chain(&self.p_e).find(|p| !(**p > 0.0 && **p <= 1.0)) {
            return bad(format!("probability {p} outside (0, 1]"));
        }
        let eps_max = if self.algorithm == Algorithm::Edcs { 0.5 } else { 1.0 };
        if let Some(e) = self.epsilon.iter().find(|e| !(**e > 0.0 && **e < eps_max)) {
            return bad(format!("epsilon {e} outside (0, {eps_max})"));
        }
        if self.samples == 0 || self.r_cap == 0 {
            return bad("samples and r_cap must be positive".into());
        }
        if self.beta == Some(0) || self.beta == Some(1) {
            return bad("beta must be at least 2".into());
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return bad(format!("confidence {} outside (0, 1)", self.confidence));
        }
        for (i, g) in self.graphs.iter().enumerate() {
            match (&g.file, &g.family) {
                (Some(_), None) if g.count == 1 => {}
                (None, Some(f)) => {
                    f.validate()?;
                    g.weights.validate()?;
                }
                _ => return bad(format!("graph entry {i} needs exactly one of `file` or `family` (files take count = 1)")),
            }
        }
        Ok(())
    }

    /// Materializes every graph instance with its id, in config order.
    pub fn instances(&self) -> Result<Vec<(String, StochasticGraph)>> {
        let mut out = Vec::new();
        for (i, entry) in self.graphs.iter().enumerate() {
            let name = entry.name.clone().unwrap_or_else(|| format!("g{i}"));
            if let Some(file) = &entry.file {
                out.push((name, parse_graph_file(file)?));
                continue;
            }
            let family = entry.family.expect("validated");
            let base = entry.seed.unwrap_or(self.seed);
            for k in 0..entry.count {
                let spec = GeneratorSpec {
                    family,
                    weights: entry.weights,
                    seed: base.wrapping_add(k as u64),
                };
                let id = if entry.count == 1 { name.clone() } else { format!("{name}-{k}") };
                out.push((id, spec.generate()?));
            }
        }
        Ok(out)
    }
}

/// One output row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub p_v: f64,
    pub p_e: f64,
    pub epsilon: f64,
    pub algorithm: String,
    #[serde(rename = "R_or_beta")]
    pub r_or_beta: u64,
    pub q_mode: String,
    pub ratio: f64,
    pub ratio_ci: f64,
    #[serde(rename = "max_deg_Q")]
    pub max_deg_q: usize,
    pub checks_passed: bool,
}

struct Point<'a> {
    id: &'a str,
    graph: &'a StochasticGraph,
    p_v: f64,
    p_e: f64,
    epsilon: f64,
    seed: RngSeed,
}

fn run_point(cfg: &ExperimentConfig, pt: &Point) -> Result<Row> {
    let g = pt.graph.with_probabilities(pt.p_v, pt.p_e)?;
    if g.is_weighted() && !cfg.weighted && cfg.algorithm == Algorithm::Algorithm1 {
        return Err(Error::Config("weighted graph in an unweighted experiment; set `weighted = true`".into()));
    }
    let eval = Evaluation::Auto {
        bits: cfg.enumeration_bits,
        samples: cfg.samples,
        seed: pt.seed.child(1),
        confidence: cfg.confidence,
    };
    let (q_edges, r_or_beta, max_deg, checks_passed) = match cfg.algorithm {
        Algorithm::Algorithm1 => {
            let params = compute_params(pt.epsilon, pt.p_v, pt.p_e, Some(cfg.r_cap))?;
            let s = build_sparsifier(&g, &params, pt.seed.child(0));
            let max_deg = s.max_degree(&g);
            let source = match eval.resolve(&g) {
                Evaluation::Exact { bits } => QSource::Exact { bits },
                _ => QSource::MonteCarlo {
                    samples: cfg.samples,
                    seed: pt.seed.child(2),
                },
            };
            let stats = compute_edge_stats(&g, source)?;
            let realized = sample_realization(&g, pt.seed.child(3));
            let run = run_fractional(&g, &s, &stats, &realized, cfg.weighted, pt.seed.child(4))?;
            let loads_ok = run.x.vertex_loads(&g).iter().all(|&l| l <= 1.0 + 1e-9);
            let blossom_ok = match check_blossom_constraints(&g, &run.x, pt.epsilon) {
                Ok(v) => v.is_empty(),
                Err(Error::BudgetExceeded { .. }) => true,
                Err(e) => return Err(e),
            };
            let available = s.edges().intersection(realized.edges());
            let rounding_ok = round_to_integral(&g, &run.x, &available, pt.epsilon).is_ok();
            let ok = max_deg as u64 <= params.rounds && loads_ok && blossom_ok && rounding_ok;
            (s.edges().clone(), params.rounds, max_deg, ok)
        }
        Algorithm::Edcs => {
            let params = match cfg.beta {
                Some(b) => EdcsParams::custom(b, b - 1, pt.epsilon)?,
                None => compute_beta(pt.epsilon, pt.p_v, pt.p_e, cfg.c_const)?,
            };
            let h = build_edcs(&g, &params)?;
            let max_deg = h.max_degree(&g);
            let ok = h.certified() && verify_edcs(&g, &h).is_empty() && max_deg as u64 <= params.beta;
            (h.edges().clone(), params.beta, max_deg, ok)
        }
    };
    let r = approximation_ratio(&g, &q_edges, eval)?;
    Ok(Row {
        graph_id: pt.id.to_string(),
        n: g.n(),
        m: g.m(),
        p_v: pt.p_v,
        p_e: pt.p_e,
        epsilon: pt.epsilon,
        algorithm: cfg.algorithm.label().to_string(),
        r_or_beta,
        q_mode: eval.mode(&g).label().to_string(),
        ratio: r.ratio,
        ratio_ci: r.ci_halfwidth(),
        max_deg_q: max_deg,
        checks_passed,
    })
}

/// Runs every sweep point (graph × p_v × p_e × ε, in that nesting) and
/// returns rows in config order. Point `k` uses `RngSeed::new(seed).child(k)`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    cfg.validate()?;
    let graphs = cfg.instances()?;
    let master = RngSeed::new(cfg.seed);
    let mut points = Vec::new();
    for (id, graph) in &graphs {
        for &p_v in &cfg.p_v {
            for &p_e in &cfg.p_e {
                for &epsilon in &cfg.epsilon {
                    let seed = master.child(points.len() as u64);
                    points.push(Point {
                        id,
                        graph,
                        p_v,
                        p_e,
                        epsilon,
                        seed,
                    });
                }
            }
        }
    }
    let work = || -> Result<Vec<Row>> {
        points
            .par_iter()
            .map(|pt| {
                run_point(cfg, pt).map_err(|e| Error::SweepPoint {
                    point: format!("{} p_v={} p_e={} epsilon={}", pt.id, pt.p_v, pt.p_e, pt.epsilon),
                    source: Box::new(e),
                })
            })
            .collect()
    };
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work),
        None => work(),
    }
}

pub fn write_csv(rows: &[Row], path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Path of the JSON config sidecar for a CSV output.
pub fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("json")
}

/// Runs the experiment, writes the CSV to `cfg.output` and the config next to it.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let rows = run_experiment(cfg)?;
    if let Some(dir) = cfg.output.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    write_csv(&rows, &cfg.output)?;
    std::fs::write(sidecar_path(&cfg.output), serde_json::to_string_pretty(cfg)?)?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONFIG: &str = r#"
        p_v = [1.0, 0.7]
        p_e = [1.0]
        epsilon = [0.3]
        algorithm = "algorithm1"
        r_cap = 50
        seed = 11
        output = "out.csv"

        [[graphs]]
        family = { kind = "erdos-renyi", n = 6, p = 0.5 }
        count = 2

        [[graphs]]
        name = "p5"
        family = { kind = "path", n = 5 }
    "#;

    #[test]
    fn parses_and_sweeps() {
        let cfg = ExperimentConfig::from_toml(CONFIG).unwrap();
        let rows = run_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        let ids: Vec<_> = rows.iter().map(|r| r.graph_id.as_str()).collect();
        assert_eq!(ids, ["g0-0", "g0-0", "g0-1", "g0-1", "p5", "p5"]);
        for r in rows.iter().filter(|r| r.p_v == 1.0) {
            assert_eq!(r.ratio, 1.0);
        }
        assert!(rows.iter().all(|r| r.checks_passed && r.q_mode == "exact" && r.ratio_ci == 0.0));
    }

    #[test]
    fn edcs_rows() {
        let text = CONFIG.replace("\"algorithm1\"", "\"edcs\"") + "";
        let mut cfg = ExperimentConfig::from_toml(&text).unwrap();
        cfg.beta = Some(4);
        let rows = run_experiment(&cfg).unwrap();
        assert!(rows.iter().all(|r| r.algorithm == "edcs" && r.r_or_beta == 4 && r.max_deg_q <= 4 && r.checks_passed));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(ExperimentConfig::from_toml(&CONFIG.replace("p_e = [1.0]", "p_e = []")).is_err());
        assert!(ExperimentConfig::from_toml(&CONFIG.replace("seed = 11", "")).is_err());
        assert!(ExperimentConfig::from_toml(&CONFIG.replace("epsilon = [0.3]", "epsilon = [1.0]")).is_err());
        assert!(ExperimentConfig::from_toml(&(CONFIG.to_string() + "\nbogus = 1\n")).is_err());
        let edcs = CONFIG.replace("\"algorithm1\"", "\"edcs\"").replace("epsilon = [0.3]", "epsilon = [0.6]");
        assert!(ExperimentConfig::from_toml(&edcs).is_err());
    }

    #[test]
    fn weighted_graph_needs_weighted_flag() {
        let text = CONFIG.replace(
            "family = { kind = \"path\", n = 5 }",
            "family = { kind = \"path\", n = 5 }\nweights = { kind = \"uniform\", lo = 1.0, hi = 2.0 }",
        );
        let cfg = ExperimentConfig::from_toml(&text).unwrap();
        match run_experiment(&cfg) {
            Err(Error::SweepPoint { point, .. }) => assert!(point.starts_with("p5")),
            other => panic!("expected a sweep-point error, got {other:?}"),
        }
    }
}
