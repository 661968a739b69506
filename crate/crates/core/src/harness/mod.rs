//! Experiment driver: graph files, generators, sweeps and saved artifacts.

mod artifact;
mod experiment;
mod generate;
mod io;

pub use artifact::{check_artifact, Artifact, CheckOptions, CheckOutcome};
pub use experiment::{
    run_and_write, run_experiment, sidecar_path, write_csv, Algorithm, ExperimentConfig, GraphEntry, Row,
};
pub use generate::{Family, GeneratorSpec, WeightModel};
pub use io::{format_graph, parse_graph, parse_graph_file, write_graph_file};
