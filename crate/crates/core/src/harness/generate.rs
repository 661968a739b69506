//! Seeded random graph families.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::StochasticGraph;
use crate::realization::RngSeed;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Family {
    ErdosRenyi { n: usize, p: f64 },
    /// Left side is `0..n_left`, right side follows.
    BipartiteRandom { n_left: usize, n_right: usize, p: f64 },
    Complete { n: usize },
    Path { n: usize },
    /// Vertex 0 is the centre, joined to the `n − 1` others.
    Star { n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WeightModel {
    #[default]
    Unit,
    Uniform { lo: f64, hi: f64 },
    Exponential { rate: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default)]
    pub weights: WeightModel,
    pub seed: u64,
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::input(format!("edge density must lie in [0, 1], got {p}")))
    }
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::ErdosRenyi { p, .. } | Family::BipartiteRandom { p, .. } => check_p(p),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::ErdosRenyi { n, .. } | Family::Complete { n } | Family::Path { n } | Family::Star { n } => n,
            Family::BipartiteRandom { n_left, n_right, .. } => n_left + n_right,
        }
    }

    fn pairs<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        match *self {
            Family::ErdosRenyi { n, p } => {
                for a in 0..n {
                    for b in a + 1..n {
                        if rng.random_bool(p) {
                            out.push((a, b));
                        }
                    }
                }
            }
            Family::BipartiteRandom { n_left, n_right, p } => {
                for a in 0..n_left {
                    for b in n_left..n_left + n_right {
                        if rng.random_bool(p) {
                            out.push((a, b));
                        }
                    }
                }
            }
            Family::Complete { n } => {
                for a in 0..n {
                    out.extend((a + 1..n).map(|b| (a, b)));
                }
            }
            Family::Path { n } => out.extend((1..n).map(|b| (b - 1, b))),
            Family::Star { n } => out.extend((1..n).map(|b| (0, b))),
        }
        out
    }
}

impl WeightModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightModel::Unit => Ok(()),
            WeightModel::Uniform { lo, hi } if lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi => Ok(()),
            WeightModel::Exponential { rate } if rate.is_finite() && rate > 0.0 => Ok(()),
            other => Err(Error::input(format!("invalid weight model {other}"))),
        }
    }
}

impl GeneratorSpec {
    /// Draws the graph with unit survival probabilities. Topology is drawn
    /// first, then weights in canonical edge order.
    pub fn generate(&self) -> Result<StochasticGraph> {
        self.generate_with(1.0, 1.0)
    }

    pub fn generate_with(&self, p_v: f64, p_e: f64) -> Result<StochasticGraph> {
        self.family.validate()?;
        self.weights.validate()?;
        let mut rng = RngSeed::new(self.seed).rng();
        let n = self.family.vertex_count();
        let pairs = self.family.pairs(&mut rng);
        match self.weights {
            WeightModel::Unit => StochasticGraph::unweighted(n, pairs, p_v, p_e),
            WeightModel::Uniform { lo, hi } => {
                let edges: Vec<_> = pairs
                    .into_iter()
                    .map(|(a, b)| (a, b, if lo == hi { lo } else { rng.random_range(lo..hi) }))
                    .collect();
                StochasticGraph::new(n, edges, p_v, p_e)
            }
            WeightModel::Exponential { rate } => {
                let exp = Exp::new(rate).map_err(|e| Error::input(e.to_string()))?;
                let edges: Vec<_> = pairs.into_iter().map(|(a, b)| (a, b, exp.sample(&mut rng))).collect();
                StochasticGraph::new(n, edges, p_v, p_e)
            }
        }
    }
}

fn parse_fields<const K: usize>(s: &str, rest: &[&str]) -> Result<[f64; K]> {
    if rest.len() != K {
        return Err(Error::input(format!("`{s}` needs {K} parameter(s)")));
    }
    let mut out = [0.0; K];
    for (o, r) in out.iter_mut().zip(rest) {
        *o = r.parse().map_err(|_| Error::input(format!("bad number `{r}` in `{s}`")))?;
    }
    Ok(out)
}

fn count(x: f64, s: &str) -> Result<usize> {
    if x >= 0.0 && x.fract() == 0.0 {
        Ok(x as usize)
    } else {
        Err(Error::input(format!("`{s}`: vertex counts must be whole numbers")))
    }
}

/// `erdos-renyi:N:P`, `bipartite-random:L:R:P`, `complete:N`, `path:N`, `star:N`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let family = match parts[0] {
            "erdos-renyi" | "er" => {
                let [n, p] = parse_fields(s, &parts[1..])?;
                Family::ErdosRenyi { n: count(n, s)?, p }
            }
            "bipartite-random" | "bipartite" => {
                let [l, r, p] = parse_fields(s, &parts[1..])?;
                Family::BipartiteRandom {
                    n_left: count(l, s)?,
                    n_right: count(r, s)?,
                    p,
                }
            }
            "complete" => Family::Complete {
                n: count(parse_fields::<1>(s, &parts[1..])?[0], s)?,
            },
            "path" => Family::Path {
                n: count(parse_fields::<1>(s, &parts[1..])?[0], s)?,
            },
            "star" => Family::Star {
                n: count(parse_fields::<1>(s, &parts[1..])?[0], s)?,
            },
            other => return Err(Error::input(format!("unknown graph family `{other}`"))),
        };
        family.validate()?;
        Ok(family)
    }
}

/// `unit`, `uniform:LO:HI`, `exponential:RATE`.
impl FromStr for WeightModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let model = match parts[0] {
            "unit" => {
                parse_fields::<0>(s, &parts[1..])?;
                WeightModel::Unit
            }
            "uniform" => {
                let [lo, hi] = parse_fields(s, &parts[1..])?;
                WeightModel::Uniform { lo, hi }
            }
            "exponential" | "exp" => {
                let [rate] = parse_fields(s, &parts[1..])?;
                WeightModel::Exponential { rate }
            }
            other => return Err(Error::input(format!("unknown weight model `{other}`"))),
        };
        model.validate()?;
        Ok(model)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ErdosRenyi { n, p } => write!(f, "erdos-renyi:{n}:{p}"),
            Family::BipartiteRandom { n_left, n_right, p } => write!(f, "bipartite-random:{n_left}:{n_right}:{p}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Star { n } => write!(f, "star:{n}"),
        }
    }
}

impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightModel::Unit => write!(f, "unit"),
            WeightModel::Uniform { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
            WeightModel::Exponential { rate } => write!(f, "exponential:{rate}"),
        }
    }
}
