use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use stochastic_matching::edcs::{build_edcs, compute_beta, theorem_params, EdcsParams, DEFAULT_C};
use stochastic_matching::estimator::{approximation_ratio, expected_matching, Evaluation};
use stochastic_matching::fractional::{compute_edge_stats, QSource};
use stochastic_matching::harness::{
    check_artifact, parse_graph_file, run_and_write, write_graph_file, Artifact, CheckOptions, ExperimentConfig,
    Family, GeneratorSpec, WeightModel,
};
use stochastic_matching::realization::DEFAULT_ENUMERATION_BITS;
use stochastic_matching::sparsifier::{build_sparsifier, compute_params, DEFAULT_ROUND_CAP};
use stochastic_matching::{Result, RngSeed, StochasticGraph};

#[derive(Parser)]
#[command(name = "stochmatch", version, about = "Stochastic matching sparsifiers and their evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sampled-matching sparsifier of a graph file.
    Sparsify {
        graph: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_ROUND_CAP)]
        r_cap: u64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build an EDCS of a graph file.
    Edcs {
        graph: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Fixed β with β⁻ = β − 1.
        #[arg(long, conflicts_with = "theorem")]
        beta: Option<u64>,
        /// Use λ = ε/32, β = ⌈8λ⁻² ln(1/λ)⌉, β⁻ = ⌈(1−λ)β⌉.
        #[arg(long)]
        theorem: bool,
        #[arg(long, default_value_t = DEFAULT_C)]
        c_const: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Estimate E[μ] of a graph, or the approximation ratio of a saved sparsifier.
    Estimate {
        graph: PathBuf,
        /// Artifact from `sparsify` or `edcs`; its graph must match.
        #[arg(long)]
        subgraph: Option<PathBuf>,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Exact matching probabilities q_e and E[μ] by enumeration.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BITS)]
        bits: u32,
    },
    /// Run a parameter sweep from a TOML config.
    Experiment {
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        r_cap: Option<u64>,
    },
    /// Run the invariant suite on a saved artifact.
    Check {
        artifact: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Write a random graph file.
    Generate {
        /// erdos-renyi:N:P, bipartite-random:L:R:P, complete:N, path:N or star:N
        #[arg(long)]
        family: Family,
        /// unit, uniform:LO:HI or exponential:RATE
        #[arg(long, default_value = "unit")]
        weights: WeightModel,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        p_v: f64,
        #[arg(long, default_value_t = 1.0)]
        p_e: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Force Monte Carlo even when enumeration is feasible.
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.99)]
    confidence: f64,
}

impl EvalArgs {
    fn evaluation(&self) -> Evaluation {
        let seed = RngSeed::new(self.seed);
        if self.mc {
            Evaluation::MonteCarlo {
                samples: self.samples,
                seed,
                confidence: self.confidence,
            }
        } else {
            Evaluation::Auto {
                bits: DEFAULT_ENUMERATION_BITS,
                samples: self.samples,
                seed,
                confidence: self.confidence,
            }
        }
    }
}

// Write errors (a closed pipe, say) are ignored.
fn print(v: serde_json::Value) {
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&v).expect("json values always serialize"));
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sparsify {
            graph,
            epsilon,
            r_cap,
            seed,
            output,
        } => {
            let g = parse_graph_file(&graph)?;
            let params = compute_params(epsilon, g.p_v(), g.p_e(), Some(r_cap))?;
            let s = build_sparsifier(&g, &params, RngSeed::new(seed));
            print(json!({
                "rounds": params.rounds,
                "formula_rounds": params.formula_rounds,
                "tau": params.tau,
                "edges_in_Q": s.edges().len(),
                "max_deg_Q": s.max_degree(&g),
            }));
            Artifact::Sparsifier {
                graph: g,
                seed,
                sparsifier: s,
            }
            .save(output)?;
        }
        Command::Edcs {
            graph,
            epsilon,
            beta,
            theorem,
            c_const,
            output,
        } => {
            let g = parse_graph_file(&graph)?;
            let params = match (beta, theorem) {
                (Some(b), _) => EdcsParams::custom(b, b.saturating_sub(1), epsilon)?,
                (None, true) => theorem_params(epsilon)?,
                (None, false) => compute_beta(epsilon, g.p_v(), g.p_e(), c_const)?,
            };
            let h = build_edcs(&g, &params)?;
            print(json!({
                "beta": params.beta,
                "beta_minus": params.beta_minus,
                "c_const": params.c_const,
                "edges_in_H": h.edges().len(),
                "max_deg_H": h.max_degree(&g),
                "certified": h.certified(),
            }));
            Artifact::Edcs { graph: g, subgraph: h }.save(output)?;
        }
        Command::Estimate { graph, subgraph, eval } => {
            let g = parse_graph_file(&graph)?;
            let e = eval.evaluation();
            match subgraph {
                None => print(serde_json::to_value(expected_matching(&g, None, e)?)?),
                Some(path) => {
                    let a = Artifact::load(path)?;
                    if a.graph() != &g {
                        return Err(stochastic_matching::Error::Input("artifact was built for a different graph".into()));
                    }
                    let q = match &a {
                        Artifact::Sparsifier { sparsifier, .. } => sparsifier.edges().clone(),
                        Artifact::Edcs { subgraph, .. } => subgraph.edges().clone(),
                    };
                    let r = approximation_ratio(&g, &q, e)?;
                    print(json!({
                        "ratio": r.ratio,
                        "ratio_ci": r.ci_halfwidth(),
                        "numerator": r.numerator,
                        "denominator": r.denominator,
                    }));
                }
            }
        }
        Command::Oracle { graph, bits } => {
            let g = parse_graph_file(&graph)?;
            let stats = compute_edge_stats(&g, QSource::Exact { bits })?;
            let edges: Vec<_> = g
                .edges()
                .iter()
                .zip(&stats.q)
                .map(|(e, q)| {
                    let (u, v) = e.endpoints();
                    json!({ "u": u, "v": v, "w": e.weight, "q": q })
                })
                .collect();
            print(json!({ "expected_matching": stats.expected_matching(&g), "edges": edges }));
        }
        Command::Experiment {
            config,
            threads,
            seed,
            output,
            samples,
            r_cap,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            cfg.threads = threads.or(cfg.threads);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.output = output.unwrap_or(cfg.output);
            cfg.samples = samples.unwrap_or(cfg.samples);
            cfg.r_cap = r_cap.unwrap_or(cfg.r_cap);
            let rows = run_and_write(&cfg)?;
            let failed = rows.iter().filter(|r| !r.checks_passed).count();
            eprintln!("{} rows written to {}, {failed} with failed checks", rows.len(), cfg.output.display());
            return Ok(failed == 0);
        }
        Command::Check {
            artifact,
            trials,
            seed,
            samples,
        } => {
            let a = Artifact::load(artifact)?;
            let opts = CheckOptions {
                trials,
                seed: RngSeed::new(seed),
                samples,
            };
            let outcomes = check_artifact(&a, &opts)?;
            for o in &outcomes {
                let _ = writeln!(io::stdout().lock(), "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
            return Ok(outcomes.iter().all(|o| o.passed));
        }
        Command::Generate {
            family,
            weights,
            seed,
            p_v,
            p_e,
            output,
        } => {
            let g: StochasticGraph = GeneratorSpec { family, weights, seed }.generate_with(p_v, p_e)?;
            write_graph_file(&g, &output)?;
            eprintln!("{g} written to {}", output.display());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
