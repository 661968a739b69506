//! Exact maximum-weight matching with a canonical tie-break.
//!
//! The solver is a depth-first branch and bound over edges in canonical
//! order, taking the "include" branch first. Leaves are therefore visited in
//! lexicographic order of their sorted edge-id sequences, and the first leaf
//! reaching the optimum weight is the canonical answer. Connected components
//! are solved independently; the union of per-component lexicographic minima
//! is the global lexicographic minimum.
//!
//! Edges of weight zero are never matched. With strictly positive weights no
//! optimum is a proper prefix of another, so the order above is a total order
//! on optima.
//!
//! Components with more than [`SEARCH_EDGE_LIMIT`] edges, and any component
//! whose search runs past [`SEARCH_NODE_BUDGET`] nodes, go to Edmonds'
//! blossom algorithm instead. It runs on exact integer images of the weights
//! with a lexicographic bonus folded in, so it lands on the same canonical
//! optimum; the two paths can only disagree when optima differ by less than
//! floating-point rounding.

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, EdgeSet, StochasticGraph};

mod edmonds;

/// Largest component (in edges) solved by branch and bound.
pub const SEARCH_EDGE_LIMIT: usize = 24;

/// Branch-and-bound nodes per component before switching to the blossom
/// algorithm.
pub const SEARCH_NODE_BUDGET: u64 = 50_000;

/// A set of vertex-disjoint edges, kept sorted by edge id.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<EdgeId>,
    total_weight: f64,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Builds a matching from edge ids, summing weights in canonical order.
    ///
    /// Returns `None` if two edges share a vertex.
    pub fn from_edges(g: &StochasticGraph, edges: impl IntoIterator<Item = EdgeId>) -> Option<Self> {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut seen = vec![false; g.n()];
        for &id in &edges {
            let (u, v) = g.edge(id).endpoints();
            if seen[u] || seen[v] {
                return None;
            }
            seen[u] = true;
            seen[v] = true;
        }
        let total_weight = canonical_weight(g, &edges);
        Some(Matching { edges, total_weight })
    }

    #[inline]
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    #[inline]
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.edges.binary_search(&id).is_ok()
    }

    pub fn to_edge_set(&self, m: usize) -> EdgeSet {
        EdgeSet::from_ids(m, self.edges.iter().copied())
    }

    /// Keeps only the edges for which `keep` holds.
    pub fn filter(&self, g: &StochasticGraph, mut keep: impl FnMut(EdgeId) -> bool) -> Matching {
        let edges: Vec<EdgeId> = self.edges.iter().copied().filter(|&id| keep(id)).collect();
        let total_weight = canonical_weight(g, &edges);
        Matching { edges, total_weight }
    }

    /// True if no two edges share an endpoint.
    pub fn is_valid(&self, g: &StochasticGraph) -> bool {
        Matching::from_edges(g, self.edges.iter().copied()).is_some()
    }
}

/// Weight of an edge list summed in ascending id order.
pub fn canonical_weight(g: &StochasticGraph, sorted: &[EdgeId]) -> f64 {
    sorted.iter().fold(0.0, |acc, &id| acc + g.weight(id))
}

/// Maximum-weight matching of the subgraph spanned by `subset`.
pub fn max_weight_matching(g: &StochasticGraph, subset: &EdgeSet) -> Matching {
    MatchingSolver::new(g.n()).solve(g, subset.iter())
}

/// Maximum-weight matching of the whole graph.
pub fn max_weight_matching_all(g: &StochasticGraph) -> Matching {
    MatchingSolver::new(g.n()).solve(g, g.edge_ids())
}

/// `μ` of the subgraph spanned by `subset`.
pub fn max_matching_value(g: &StochasticGraph, subset: &EdgeSet) -> f64 {
    max_weight_matching(g, subset).total_weight()
}

/// Reusable solver; keeps scratch buffers between calls so that tight
/// Monte Carlo loops do not allocate per sample.
#[derive(Debug)]
pub struct MatchingSolver {
    parent: Vec<usize>,
    local: Vec<usize>,
    candidates: Vec<(EdgeId, usize, usize, f64)>,
    search: Search,
}

impl MatchingSolver {
    pub fn new(n: usize) -> Self {
        MatchingSolver {
            parent: vec![0; n],
            local: vec![usize::MAX; n],
            candidates: Vec::new(),
            search: Search::default(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Solves over the given edge ids. The ids must be ascending.
    pub fn solve(&mut self, g: &StochasticGraph, ids: impl Iterator<Item = EdgeId>) -> Matching {
        if self.parent.len() < g.n() {
            self.parent.resize(g.n(), 0);
            self.local.resize(g.n(), usize::MAX);
        }
        self.candidates.clear();
        for id in ids {
            let e = g.edge(id);
            if e.weight > 0.0 {
                debug_assert!(self.candidates.last().is_none_or(|c| c.0 < id), "ids must ascend");
                self.candidates.push((id, e.u.0, e.v.0, e.weight));
            }
        }
        match self.candidates.len() {
            0 => return Matching::empty(),
            1 => {
                let (id, _, _, w) = self.candidates[0];
                return Matching {
                    edges: vec![id],
                    total_weight: w,
                };
            }
            _ => {}
        }

        for i in 0..self.candidates.len() {
            let (_, u, v, _) = self.candidates[i];
            self.parent[u] = u;
            self.parent[v] = v;
        }
        for i in 0..self.candidates.len() {
            let (_, u, v, _) = self.candidates[i];
            let (ru, rv) = (self.find(u), self.find(v));
            if ru != rv {
                self.parent[ru.max(rv)] = ru.min(rv);
            }
        }

        // Group candidate indices by component root, preserving id order.
        let mut roots: Vec<usize> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.candidates.len() {
            let u = self.candidates[i].1;
            let r = self.find(u);
            match roots.iter().position(|&x| x == r) {
                Some(k) => groups[k].push(i),
                None => {
                    roots.push(r);
                    groups.push(vec![i]);
                }
            }
        }

        let mut chosen: Vec<EdgeId> = Vec::new();
        for group in &groups {
            if group.len() == 1 {
                chosen.push(self.candidates[group[0]].0);
                continue;
            }
            // Local vertex numbering for the component.
            let mut k = 0;
            self.search.edges.clear();
            for &i in group {
                let (_, u, v, w) = self.candidates[i];
                for x in [u, v] {
                    if self.local[x] == usize::MAX {
                        self.local[x] = k;
                        k += 1;
                    }
                }
                self.search.edges.push((self.local[u], self.local[v], w));
            }
            if group.len() > SEARCH_EDGE_LIMIT || !self.search.run(k) {
                self.search.best = edmonds::canonical_max_weight(k, &self.search.edges);
            }
            chosen.extend(self.search.best.iter().map(|&j| self.candidates[group[j]].0));
            for &i in group {
                let (_, u, v, _) = self.candidates[i];
                self.local[u] = usize::MAX;
                self.local[v] = usize::MAX;
            }
        }
        chosen.sort_unstable();
        let total_weight = canonical_weight(g, &chosen);
        Matching {
            edges: chosen,
            total_weight,
        }
    }
}

#[derive(Debug, Default)]
struct Search {
    edges: Vec<(usize, usize, f64)>,
    used: Vec<bool>,
    maxinc: Vec<f64>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_weight: f64,
    best_from_search: bool,
    nodes: u64,
}

impl Search {
    /// False if the node budget ran out.
    fn run(&mut self, k: usize) -> bool {
        self.used.clear();
        self.used.resize(k, false);
        self.maxinc.clear();
        self.maxinc.resize(k, 0.0);
        self.chosen.clear();
        self.greedy_incumbent();
        self.nodes = 0;
        self.dfs(0, 0.0);
        self.nodes <= SEARCH_NODE_BUDGET
    }

    /// Heaviest-first greedy matching; only seeds the pruning bound.
    fn greedy_incumbent(&mut self) {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&a, &b| self.edges[b].2.total_cmp(&self.edges[a].2).then(a.cmp(&b)));
        let mut picked = Vec::new();
        for j in order {
            let (u, v, _) = self.edges[j];
            if !self.used[u] && !self.used[v] {
                self.used[u] = true;
                self.used[v] = true;
                picked.push(j);
            }
        }
        picked.sort_unstable();
        self.best_weight = picked.iter().fold(0.0, |acc, &j| acc + self.edges[j].2);
        self.best = picked;
        self.best_from_search = false;
        self.used.iter_mut().for_each(|u| *u = false);
    }

    fn upper_bound(&mut self, from: usize) -> f64 {
        self.maxinc.iter_mut().for_each(|x| *x = 0.0);
        for &(u, v, w) in &self.edges[from..] {
            if !self.used[u] && !self.used[v] {
                if w > self.maxinc[u] {
                    self.maxinc[u] = w;
                }
                if w > self.maxinc[v] {
                    self.maxinc[v] = w;
                }
            }
        }
        self.maxinc.iter().sum::<f64>() * 0.5
    }

    fn dfs(&mut self, mut i: usize, cur: f64) {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_BUDGET {
            return;
        }
        while i < self.edges.len() {
            let (u, v, _) = self.edges[i];
            if !self.used[u] && !self.used[v] {
                break;
            }
            i += 1;
        }
        if i == self.edges.len() {
            if cur > self.best_weight || (cur == self.best_weight && !self.best_from_search) {
                self.best_weight = cur;
                self.best.clone_from(&self.chosen);
                self.best_from_search = true;
            }
            return;
        }
        let bound = self.upper_bound(i);
        if cur + bound * (1.0 + 1e-9) + 1e-12 < self.best_weight {
            return;
        }
        let (u, v, w) = self.edges[i];
        self.used[u] = true;
        self.used[v] = true;
        self.chosen.push(i);
        self.dfs(i + 1, cur + w);
        self.chosen.pop();
        self.used[u] = false;
        self.used[v] = false;
        self.dfs(i + 1, cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive oracle: every subset of edges, filtered to matchings,
    /// scanned in lexicographic order of sorted id sequences.
    fn brute_force(g: &StochasticGraph) -> (Vec<EdgeId>, f64) {
        let m = g.m();
        let mut best: Option<(Vec<EdgeId>, f64)> = None;
        for mask in 0u32..(1 << m) {
            let ids: Vec<EdgeId> = (0..m).filter(|&i| mask >> i & 1 == 1).map(EdgeId).collect();
            if ids.iter().any(|&id| g.weight(id) == 0.0) {
                continue;
            }
            let Some(mm) = Matching::from_edges(g, ids.iter().copied()) else {
                continue;
            };
            let w = mm.total_weight();
            best = match best {
                None => Some((ids, w)),
                Some((bi, bw)) if w > bw || (w == bw && ids < bi) => Some((ids, w)),
                keep => keep,
            };
        }
        best.unwrap_or_default()
    }

    fn ids(g: &StochasticGraph, pairs: &[(usize, usize)]) -> Vec<EdgeId> {
        let mut v: Vec<_> = pairs.iter().map(|&(a, b)| g.find_edge(a, b).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn single_edge() {
        let g = StochasticGraph::new(2, [(0, 1, 3.0)], 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&g);
        assert_eq!(m.edges(), ids(&g, &[(0, 1)]).as_slice());
        assert_eq!(m.total_weight(), 3.0);
    }

    #[test]
    fn paths_use_lexicographic_tie_break() {
        let p3 = StochasticGraph::unweighted(3, [(0, 1), (1, 2)], 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&p3);
        assert_eq!(m.edges(), ids(&p3, &[(0, 1)]).as_slice());
        assert_eq!(m.total_weight(), 1.0);

        let p4 = StochasticGraph::unweighted(4, [(0, 1), (1, 2), (2, 3)], 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&p4);
        assert_eq!(m.edges(), ids(&p4, &[(0, 1), (2, 3)]).as_slice());
        assert_eq!(m.total_weight(), 2.0);
    }

    #[test]
    fn equal_triangle_picks_first_edge() {
        let g = StochasticGraph::new(3, [(0, 1, 5.0), (1, 2, 5.0), (0, 2, 5.0)], 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&g);
        assert_eq!(m.edges(), &[EdgeId(0)]);
        assert_eq!(m.total_weight(), 5.0);
    }

    #[test]
    fn empty_and_zero_weight() {
        let g = StochasticGraph::new(3, [], 1.0, 1.0).unwrap();
        assert!(max_weight_matching_all(&g).is_empty());
        let g = StochasticGraph::new(2, [(0, 1, 0.0)], 1.0, 1.0).unwrap();
        assert!(max_weight_matching_all(&g).is_empty());
    }

    #[test]
    fn heavier_middle_edge_wins() {
        let g = StochasticGraph::new(4, [(0, 1, 1.0), (1, 2, 3.0), (2, 3, 1.0)], 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&g);
        assert_eq!(m.edges(), ids(&g, &[(1, 2)]).as_slice());
    }

    #[test]
    fn six_vertex_random_matches_brute_force() {
        let g = StochasticGraph::new(
            6,
            [
                (0, 1, 2.7),
                (0, 3, 1.1),
                (1, 2, 4.2),
                (1, 4, 0.9),
                (2, 5, 3.3),
                (3, 4, 2.2),
                (4, 5, 1.6),
                (0, 5, 0.4),
            ],
            1.0,
            1.0,
        )
        .unwrap();
        let (bi, bw) = brute_force(&g);
        let m = max_weight_matching_all(&g);
        assert_eq!(m.total_weight(), bw);
        assert_eq!(m.edges(), bi.as_slice());
    }

    #[test]
    fn subset_solve_ignores_outside_edges() {
        let g = StochasticGraph::unweighted(4, [(0, 1), (1, 2), (2, 3)], 1.0, 1.0).unwrap();
        let only_middle = EdgeSet::from_ids(3, [EdgeId(1)]);
        assert_eq!(max_weight_matching(&g, &only_middle).edges(), &[EdgeId(1)]);
        assert_eq!(max_matching_value(&g, &EdgeSet::empty(3)), 0.0);
    }

    fn small_graph(max_edges: usize, weights: impl Strategy<Value = f64> + Clone) -> impl Strategy<Value = StochasticGraph> {
        graph_on(2..=7, max_edges, weights)
    }

    fn graph_on(
        sizes: std::ops::RangeInclusive<usize>,
        max_edges: usize,
        weights: impl Strategy<Value = f64> + Clone,
    ) -> impl Strategy<Value = StochasticGraph> {
        sizes.prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let k = pairs.len().min(max_edges);
            (
                Just(n),
                proptest::sample::subsequence(pairs, 0..=k),
                proptest::collection::vec(weights.clone(), k),
            )
                .prop_map(|(n, chosen, ws)| {
                    let edges = chosen.into_iter().zip(ws).map(|((a, b), w)| (a, b, w));
                    StochasticGraph::new(n, edges, 1.0, 1.0).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(g in small_graph(8, 0.0f64..10.0)) {
            let (bi, bw) = brute_force(&g);
            let m = max_weight_matching_all(&g);
            prop_assert!(m.is_valid(&g));
            prop_assert_eq!(m.total_weight(), bw);
            prop_assert_eq!(m.edges(), bi.as_slice());
        }

        #[test]
        fn tie_break_matches_exhaustive_search(g in small_graph(8, (1u8..=3).prop_map(f64::from))) {
            let (bi, _) = brute_force(&g);
            let first = max_weight_matching_all(&g);
            prop_assert_eq!(first.edges(), bi.as_slice());
            prop_assert_eq!(first, max_weight_matching_all(&g));
        }

        #[test]
        fn blossom_path_agrees_on_ties(g in small_graph(8, (0u8..=3).prop_map(f64::from))) {
            let (bi, _) = brute_force(&g);
            let edges: Vec<_> = g.edges().iter().map(|e| (e.u.0, e.v.0, e.weight)).collect();
            let got: Vec<EdgeId> = edmonds::canonical_max_weight(g.n(), &edges).into_iter().map(EdgeId).collect();
            prop_assert_eq!(got, bi);
        }

        #[test]
        fn search_and_blossom_paths_agree(
            g in prop_oneof![
                graph_on(6..=12, SEARCH_EDGE_LIMIT, (0u8..=2).prop_map(f64::from)),
                graph_on(6..=12, SEARCH_EDGE_LIMIT, 0.0f64..10.0),
            ]
        ) {
            let edges: Vec<_> = g.edges().iter().map(|e| (e.u.0, e.v.0, e.weight)).collect();
            let got: Vec<EdgeId> = edmonds::canonical_max_weight(g.n(), &edges).into_iter().map(EdgeId).collect();
            let m = max_weight_matching_all(&g);
            prop_assert_eq!(m.edges(), got.as_slice());
        }

        #[test]
        fn adding_an_edge_never_decreases_value(g in small_graph(10, 0.0f64..5.0), drop in 0usize..10) {
            prop_assume!(g.m() > 0);
            let all = EdgeSet::full(g.m());
            let mut fewer = all.clone();
            fewer.remove(EdgeId(drop % g.m()));
            prop_assert!(max_matching_value(&g, &fewer) <= max_matching_value(&g, &all));
        }
    }

    #[test]
    fn dense_graph_beyond_the_search_budget() {
        // K_30 with distinct weights: far too many nodes for branch and bound.
        let n = 30;
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b, ((a * 31 + b * 17) % 23 + 1) as f64)));
        let g = StochasticGraph::new(n, edges, 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&g);
        assert!(m.is_valid(&g));
        assert_eq!(m.len(), 15);
        let unit = StochasticGraph::unweighted(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))), 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&unit);
        // Lexicographically first perfect matching of K_30: (0,1), (2,3), ...
        let want: Vec<EdgeId> = (0..15).map(|i| unit.find_edge(2 * i, 2 * i + 1).unwrap()).collect();
        assert_eq!(m.edges(), want.as_slice());
    }
}
