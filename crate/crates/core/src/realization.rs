//! Sampling and exhaustive enumeration of realized subgraphs.
//!
//! A realization first flips one coin per vertex (`p_v`) and then one coin
//! per edge whose endpoints both survived (`p_e`). Edges sharing a vertex are
//! therefore correlated through that vertex.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, StochasticGraph, VertexId};

/// Default limit on `n + |E|` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BITS: u32 = 22;

/// Reproducible source of randomness: `(seed, stream)` fixes the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        RngSeed { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        RngSeed { seed, stream }
    }

    /// Independent sub-stream `i` of this stream. Children of distinct
    /// parents, or distinct children of one parent, never share a sequence.
    pub fn child(&self, i: u64) -> RngSeed {
        RngSeed {
            seed: splitmix64(self.seed ^ splitmix64(self.stream.wrapping_add(0x5851_f42d_4c95_7f2d))),
            stream: i,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// One sampled outcome `𝒢 = (𝒱, ℰ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    vertices: FixedBitSet,
    edges: EdgeSet,
}

impl Realization {
    /// Every vertex and every edge present.
    pub fn full(g: &StochasticGraph) -> Self {
        let mut vertices = FixedBitSet::with_capacity(g.n());
        vertices.insert_range(..);
        Realization {
            vertices,
            edges: EdgeSet::full(g.m()),
        }
    }

    /// Builds a realization, rejecting edges whose endpoints are missing.
    pub fn from_parts(g: &StochasticGraph, vertices: &[VertexId], edges: &[EdgeId]) -> Result<Self> {
        let mut vs = FixedBitSet::with_capacity(g.n());
        for v in vertices {
            if v.0 >= g.n() {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            vs.insert(v.0);
        }
        let mut es = EdgeSet::empty(g.m());
        for &id in edges {
            if id.0 >= g.m() {
                return Err(Error::input(format!("edge {id} out of range")));
            }
            let (u, v) = g.edge(id).endpoints();
            if !vs.contains(u) || !vs.contains(v) {
                return Err(Error::input(format!("edge {id} realized without both endpoints")));
            }
            es.insert(id);
        }
        Ok(Realization { vertices: vs, edges: es })
    }

    fn from_masks(g: &StochasticGraph, vmask: u64, emask: u64) -> Self {
        let mut vertices = FixedBitSet::with_capacity(g.n());
        for v in 0..g.n() {
            if vmask >> v & 1 == 1 {
                vertices.insert(v);
            }
        }
        let edges = EdgeSet::from_ids(g.m(), (0..g.m()).filter(|&i| emask >> i & 1 == 1).map(EdgeId));
        Realization { vertices, edges }
    }

    #[inline]
    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(v.0)
    }

    #[inline]
    pub fn has_edge(&self, id: EdgeId) -> bool {
        self.edges.contains(id)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.ones().map(VertexId)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones(..)
    }

    /// Realized edges `ℰ`.
    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    /// `Q ∩ 𝒢`: same vertices, edges intersected with `q`.
    pub fn restrict(&self, q: &EdgeSet) -> Realization {
        Realization {
            vertices: self.vertices.clone(),
            edges: self.edges.intersection(q),
        }
    }

    /// True if no realized edge is missing an endpoint.
    pub fn is_consistent(&self, g: &StochasticGraph) -> bool {
        self.edges.iter().all(|id| {
            let (u, v) = g.edge(id).endpoints();
            self.vertices.contains(u) && self.vertices.contains(v)
        })
    }
}

/// Draws one realization from `(seed, stream)`.
pub fn sample_realization(g: &StochasticGraph, seed: RngSeed) -> Realization {
    let mut rng = seed.rng();
    sample_with(g, &mut rng)
}

/// Draws a realization from an existing generator: vertices in id order,
/// then edges in canonical order.
pub fn sample_with<R: Rng + ?Sized>(g: &StochasticGraph, rng: &mut R) -> Realization {
    let mut r = Realization {
        vertices: FixedBitSet::with_capacity(g.n()),
        edges: EdgeSet::empty(g.m()),
    };
    sample_into(g, rng, &mut r);
    r
}

pub(crate) fn sample_into<R: Rng + ?Sized>(g: &StochasticGraph, rng: &mut R, r: &mut Realization) {
    r.vertices.clear();
    r.edges = EdgeSet::empty(g.m());
    let (p_v, p_e) = (g.p_v(), g.p_e());
    for v in 0..g.n() {
        if rng.random::<f64>() < p_v {
            r.vertices.insert(v);
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        let (u, v) = e.endpoints();
        if r.vertices.contains(u) && r.vertices.contains(v) && rng.random::<f64>() < p_e {
            r.edges.insert(EdgeId(i));
        }
    }
}

/// Redraws everything outside `keep` and the endpoints of `keep`.
///
/// Edges in `keep` and their endpoint vertices retain their state in `base`;
/// all other vertices and edges are sampled afresh. The result has the same
/// law as an unconditioned realization.
pub fn resample_outside<R: Rng + ?Sized>(g: &StochasticGraph, base: &Realization, keep: &EdgeSet, rng: &mut R) -> Realization {
    let mut pinned = FixedBitSet::with_capacity(g.n());
    for id in keep.iter() {
        let (u, v) = g.edge(id).endpoints();
        pinned.insert(u);
        pinned.insert(v);
    }
    let mut vertices = FixedBitSet::with_capacity(g.n());
    for v in 0..g.n() {
        let fresh = rng.random::<f64>() < g.p_v();
        let alive = if pinned.contains(v) { base.vertices.contains(v) } else { fresh };
        vertices.set(v, alive);
    }
    let mut edges = EdgeSet::empty(g.m());
    for (i, e) in g.edges().iter().enumerate() {
        let id = EdgeId(i);
        let (u, v) = e.endpoints();
        let fresh = rng.random::<f64>() < g.p_e();
        let alive = if keep.contains(id) {
            base.edges.contains(id)
        } else {
            vertices.contains(u) && vertices.contains(v) && fresh
        };
        if alive {
            edges.insert(id);
        }
    }
    Realization { vertices, edges }
}

fn check_budget(g: &StochasticGraph, bits: u32) -> Result<()> {
    let needed = (g.n() + g.m()) as u64;
    if needed > u64::from(bits) || needed > 62 {
        return Err(Error::BudgetExceeded {
            what: "realization enumeration (n + |E| bits)",
            needed,
            limit: u64::from(bits.min(62)),
        });
    }
    Ok(())
}

/// Whether `g` is small enough for exhaustive enumeration under `bits`.
pub fn is_enumerable(g: &StochasticGraph, bits: u32) -> bool {
    check_budget(g, bits).is_ok()
}

/// Iterator over every realization with its exact probability.
#[derive(Debug)]
pub struct Enumeration<'g> {
    g: &'g StochasticGraph,
    vmask: u64,
    eligible: u64,
    sub: u64,
    base: f64,
    k: u32,
    done: bool,
}

/// Every consistent `(vertices, edges)` outcome exactly once, with its
/// probability. Refuses graphs with `n + |E| > bits`.
pub fn enumerate_realizations(g: &StochasticGraph, bits: u32) -> Result<Enumeration<'_>> {
    check_budget(g, bits)?;
    let mut it = Enumeration {
        g,
        vmask: 0,
        eligible: 0,
        sub: 0,
        base: 0.0,
        k: 0,
        done: false,
    };
    it.load_vertex_mask();
    Ok(it)
}

fn eligible_edges(g: &StochasticGraph, vmask: u64) -> u64 {
    g.edges().iter().enumerate().fold(0u64, |acc, (i, e)| {
        let (u, v) = e.endpoints();
        if vmask >> u & 1 == 1 && vmask >> v & 1 == 1 {
            acc | 1 << i
        } else {
            acc
        }
    })
}

fn vertex_mask_probability(g: &StochasticGraph, vmask: u64) -> f64 {
    let alive = vmask.count_ones() as i32;
    g.p_v().powi(alive) * (1.0 - g.p_v()).powi(g.n() as i32 - alive)
}

impl Enumeration<'_> {
    fn load_vertex_mask(&mut self) {
        self.eligible = eligible_edges(self.g, self.vmask);
        self.k = self.eligible.count_ones();
        self.base = vertex_mask_probability(self.g, self.vmask);
        self.sub = 0;
    }
}

impl Iterator for Enumeration<'_> {
    type Item = (Realization, f64);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.done {
                return None;
            }
            if self.base == 0.0 {
                // p_v = 1 makes every vertex mask but the full one impossible.
                if !self.advance_vertex_mask() {
                    return None;
                }
                continue;
            }
            let sub = self.sub;
            let j = sub.count_ones() as i32;
            let p = self.base * self.g.p_e().powi(j) * (1.0 - self.g.p_e()).powi(self.k as i32 - j);
            let item = (Realization::from_masks(self.g, self.vmask, sub), p);
            // Next submask of `eligible` in increasing order.
            if sub == self.eligible {
                self.advance_vertex_mask();
            } else {
                self.sub = (sub.wrapping_sub(self.eligible)) & self.eligible;
            }
            if p == 0.0 {
                continue;
            }
            return Some(item);
        }
    }
}

impl Enumeration<'_> {
    fn advance_vertex_mask(&mut self) -> bool {
        self.vmask += 1;
        if self.vmask >> self.g.n() != 0 {
            self.done = true;
            return false;
        }
        self.load_vertex_mask();
        true
    }
}

/// Exact law of the realized edge set, as a dense table indexed by edge
/// mask. Zero-probability outcomes are skipped by [`enumerate_realizations`]
/// and simply stay zero here.
pub(crate) fn edge_mask_distribution(g: &StochasticGraph, bits: u32) -> Result<Vec<f64>> {
    check_budget(g, bits)?;
    let mut table = vec![0.0; 1usize << g.m()];
    let (p_e, q_e) = (g.p_e(), 1.0 - g.p_e());
    for vmask in 0u64..(1u64 << g.n()) {
        let base = vertex_mask_probability(g, vmask);
        if base == 0.0 {
            continue;
        }
        let eligible = eligible_edges(g, vmask);
        let k = eligible.count_ones() as i32;
        let mut sub = 0u64;
        loop {
            let j = sub.count_ones() as i32;
            table[sub as usize] += base * p_e.powi(j) * q_e.powi(k - j);
            if sub == eligible {
                break;
            }
            sub = sub.wrapping_sub(eligible) & eligible;
        }
    }
    Ok(table)
}

/// Edge masks with positive probability, ascending.
pub(crate) fn support(table: &[f64]) -> impl Iterator<Item = (u64, f64)> + '_ {
    table.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(mask, &p)| (mask as u64, p))
}
