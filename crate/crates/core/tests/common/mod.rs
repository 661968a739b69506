//! Brute-force reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's matching, enumeration or estimation
//! code: probabilities come from enumerating vertex subsets, matching values
//! from a subset DP or plain exhaustive search.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stochastic_matching::{EdgeSet, StochasticGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn endpoints_mask(g: &StochasticGraph) -> Vec<u32> {
    g.edges()
        .iter()
        .map(|e| {
            let (u, v) = e.endpoints();
            (1u32 << u) | (1u32 << v)
        })
        .collect()
}

/// `P(ℰ = mask)` for every realized edge mask, by summing over vertex subsets.
pub fn mask_distribution(g: &StochasticGraph) -> Vec<f64> {
    let (n, m) = (g.n(), g.m());
    assert!(n <= 20 && m <= 24, "reference enumeration is for tiny graphs");
    let ends = endpoints_mask(g);
    let (pv, pe) = (g.p_v(), g.p_e());
    let mut table = vec![0.0; 1 << m];
    for s in 0u32..(1 << n) {
        let k = s.count_ones() as i32;
        let ps = pv.powi(k) * (1.0 - pv).powi(n as i32 - k);
        if ps == 0.0 {
            continue;
        }
        let induced: usize = (0..m).filter(|&i| ends[i] & s == ends[i]).map(|i| 1usize << i).sum();
        let total = induced.count_ones() as i32;
        let mut sub = induced;
        loop {
            let j = sub.count_ones() as i32;
            table[sub] += ps * pe.powi(j) * (1.0 - pe).powi(total - j);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & induced;
        }
    }
    table
}

/// `best[mask]` = maximum matching weight using only edges in `mask`.
pub fn matching_values(g: &StochasticGraph) -> Vec<f64> {
    let m = g.m();
    let ends = endpoints_mask(g);
    let mut best = vec![0.0f64; 1 << m];
    for mask in 1usize..(1 << m) {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let compatible: usize = (0..m)
            .filter(|&j| rest >> j & 1 == 1 && ends[j] & ends[i] == 0)
            .map(|j| 1usize << j)
            .sum();
        let with = if g.edges()[i].weight > 0.0 { g.edges()[i].weight + best[compatible] } else { 0.0 };
        best[mask] = best[rest].max(with);
    }
    best
}

fn mask_of(set: Option<&EdgeSet>, m: usize) -> usize {
    (0..m).filter(|&i| set.is_none_or(|s| s.contains(stochastic_matching::EdgeId(i)))).map(|i| 1usize << i).sum()
}

/// `E[μ(𝒢 ∩ restrict)]`.
pub fn expected_value(g: &StochasticGraph, restrict: Option<&EdgeSet>) -> f64 {
    let dist = mask_distribution(g);
    let best = matching_values(g);
    let keep = mask_of(restrict, g.m());
    dist.iter().enumerate().map(|(mask, p)| p * best[mask & keep]).sum()
}

/// Canonical maximum-weight matching inside `mask` by exhaustive search:
/// largest total (summed in ascending edge order), then the lexicographically
/// smallest ascending edge list. Zero-weight edges are never used.
pub fn canonical_matching(g: &StochasticGraph, mask: usize) -> (f64, Vec<usize>) {
    let ends = endpoints_mask(g);
    let m = g.m();
    let mut best: (f64, Vec<usize>) = (0.0, Vec::new());
    let mut sub = mask;
    loop {
        let ids: Vec<usize> = (0..m).filter(|&i| sub >> i & 1 == 1).collect();
        let mut used = 0u32;
        let mut ok = true;
        for &i in &ids {
            if used & ends[i] != 0 || g.edges()[i].weight <= 0.0 {
                ok = false;
                break;
            }
            used |= ends[i];
        }
        if ok {
            let w: f64 = ids.iter().map(|&i| g.edges()[i].weight).sum();
            if w > best.0 || (w == best.0 && ids < best.1) {
                best = (w, ids);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    best
}

/// `q_e` under the canonical tie-break.
pub fn q_values(g: &StochasticGraph) -> Vec<f64> {
    let dist = mask_distribution(g);
    let mut q = vec![0.0; g.m()];
    for (mask, &p) in dist.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for i in canonical_matching(g, mask).1 {
            q[i] += p;
        }
    }
    q
}

/// Random simple graph with `n` vertices and at most `max_m` edges.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_m: usize, weights: Weights, p_v: f64, p_e: f64) -> StochasticGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.random_range(0..=i));
    }
    let density: f64 = rng.random_range(0.2..1.0);
    let m = ((pairs.len() as f64 * density).round() as usize).min(max_m);
    pairs.truncate(m);
    match weights {
        Weights::Unit => StochasticGraph::unweighted(n, pairs, p_v, p_e).unwrap(),
        Weights::Uniform(lo, hi) => {
            let e: Vec<_> = pairs.into_iter().map(|(a, b)| (a, b, rng.random_range(lo..hi))).collect();
            StochasticGraph::new(n, e, p_v, p_e).unwrap()
        }
        Weights::Small => {
            let e: Vec<_> = pairs.into_iter().map(|(a, b)| (a, b, rng.random_range(0..=3) as f64)).collect();
            StochasticGraph::new(n, e, p_v, p_e).unwrap()
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Weights {
    Unit,
    Uniform(f64, f64),
    /// Integers 0..=3, to force ties and zero weights.
    Small,
}

/// Every `U ⊆ V` with `|U| ≤ max_size` whose induced load exceeds
/// `scale·⌊|U|/2⌋ + 1e-9`, as vertex bitmasks.
pub fn subset_violations(g: &StochasticGraph, x: &[f64], max_size: usize, scale: f64) -> Vec<u32> {
    let n = g.n();
    assert!(n <= 24);
    let ends = endpoints_mask(g);
    let mut out = Vec::new();
    for u in 0u32..(1 << n) {
        let size = u.count_ones() as usize;
        if size < 2 || size > max_size {
            continue;
        }
        let load: f64 = (0..g.m()).filter(|&i| ends[i] & u == ends[i]).map(|i| x[i]).sum();
        if load > scale * (size / 2) as f64 + 1e-9 {
            out.push(u);
        }
    }
    out
}
