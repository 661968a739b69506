//! Odd-set constraints and rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, StochasticGraph, VertexId};
use crate::matching::{max_weight_matching, Matching};

use super::FractionalMatching;

/// Largest subset size the exhaustive check accepts.
pub const MAX_BLOSSOM_SUBSET: usize = 11;

/// Upper limit on the number of subsets one check may visit.
pub const MAX_SUBSETS_CHECKED: u64 = 50_000_000;

/// `6 − 4√2`, the supremum of `Σ a_i b_i / Σ (a_i + b_i/2)`.
pub const ALGEBRAIC_BOUND: f64 = 6.0 - 4.0 * std::f64::consts::SQRT_2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetViolation {
    pub vertices: Vec<VertexId>,
    pub load: f64,
    pub bound: f64,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// Reports every `U` with `2 ≤ |U| ≤ max_size` whose induced load
/// `Σ_{e ∈ E(U)} x_e` exceeds `scale·⌊|U|/2⌋ + 1e-9`.
///
/// Only vertices touched by the support of `x` are enumerated: adding an
/// isolated vertex never raises the load.
pub fn check_subset_loads(
    g: &StochasticGraph,
    x: &FractionalMatching,
    max_size: usize,
    scale: f64,
) -> Result<Vec<SubsetViolation>> {
    let mut index = vec![usize::MAX; g.n()];
    let mut verts = Vec::new();
    for id in x.support().iter() {
        let (a, b) = g.edge(id).endpoints();
        for v in [a, b] {
            if index[v] == usize::MAX {
                index[v] = 0;
                verts.push(v);
            }
        }
    }
    verts.sort_unstable();
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let k = verts.len();
    let max_size = max_size.min(k);
    let needed: u64 = (2..=max_size as u64).map(|s| binomial(k as u64, s)).fold(0, u64::saturating_add);
    if needed > MAX_SUBSETS_CHECKED {
        return Err(Error::BudgetExceeded {
            what: "subset check",
            needed,
            limit: MAX_SUBSETS_CHECKED,
        });
    }
    let mut w = vec![0.0; k * k];
    for id in x.support().iter() {
        let (a, b) = g.edge(id).endpoints();
        let (i, j) = (index[a], index[b]);
        w[i * k + j] += x.value(id);
        w[j * k + i] += x.value(id);
    }

    struct Walk<'a> {
        w: &'a [f64],
        k: usize,
        max_size: usize,
        scale: f64,
        verts: &'a [usize],
        chosen: Vec<usize>,
        out: Vec<SubsetViolation>,
    }
    impl Walk<'_> {
        fn go(&mut self, start: usize, load: f64) {
            let size = self.chosen.len();
            if size >= 2 {
                let bound = self.scale * (size / 2) as f64;
                if load > bound + 1e-9 {
                    self.out.push(SubsetViolation {
                        vertices: self.chosen.iter().map(|&i| VertexId(self.verts[i])).collect(),
                        load,
                        bound,
                    });
                }
            }
            if size == self.max_size {
                return;
            }
            for next in start..self.k {
                let row = &self.w[next * self.k..(next + 1) * self.k];
                let extra: f64 = self.chosen.iter().map(|&i| row[i]).sum();
                self.chosen.push(next);
                self.go(next + 1, load + extra);
                self.chosen.pop();
            }
        }
    }
    let mut walk = Walk {
        w: &w,
        k,
        max_size,
        scale,
        verts: &verts,
        chosen: Vec::with_capacity(max_size),
        out: Vec::new(),
    };
    walk.go(0, 0.0);
    Ok(walk.out)
}

/// Odd-set constraints `Σ_{e ∈ E(U)} x_e ≤ ⌊|U|/2⌋` for all `|U| ≤ ⌊1/ε⌋`.
pub fn check_blossom_constraints(g: &StochasticGraph, x: &FractionalMatching, epsilon: f64) -> Result<Vec<SubsetViolation>> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::input(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let size = (1.0 / epsilon).floor() as usize;
    if size > MAX_BLOSSOM_SUBSET {
        return Err(Error::BudgetExceeded {
            what: "odd-set size",
            needed: size as u64,
            limit: MAX_BLOSSOM_SUBSET as u64,
        });
    }
    check_subset_loads(g, x, size, 1.0)
}

/// Maximum-weight matching on the support of `x` inside `available`.
///
/// When `x` satisfies the odd-set constraints up to size `⌊1/ε⌋` the result
/// weighs at least `(1−ε)·Σ w_e·x_e`; a shortfall is returned as an error.
pub fn round_to_integral(
    g: &StochasticGraph,
    x: &FractionalMatching,
    available: &EdgeSet,
    epsilon: f64,
) -> Result<Matching> {
    let support = x.support().intersection(available);
    let m = max_weight_matching(g, &support);
    let fractional = x.weight_on(g, &support);
    if m.total_weight() < (1.0 - epsilon) * fractional - 1e-9 {
        return Err(Error::Rounding {
            integral: m.total_weight(),
            fractional,
            epsilon,
        });
    }
    Ok(m)
}

/// `Σ a_i b_i / Σ (a_i + b_i/2)`; 0 on an empty denominator.
pub fn algebraic_ratio(pairs: &[(f64, f64)]) -> f64 {
    let num: f64 = pairs.iter().map(|(a, b)| a * b).sum();
    let den: f64 = pairs.iter().map(|(a, b)| a + b / 2.0).sum();
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::max_weight_matching_all;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 5), 792);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(4, 0), 1);
    }

    #[test]
    fn half_triangle_violates() {
        let g = StochasticGraph::unweighted(3, [(0, 1), (1, 2), (0, 2)], 1.0, 1.0).unwrap();
        let x = FractionalMatching::from_values(vec![0.5; 3]);
        let v = check_blossom_constraints(&g, &x, 0.3).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
        assert!((v[0].load - 1.5).abs() < 1e-15);
        assert_eq!(v[0].bound, 1.0);
        // Sets of size 2 are fine, and ε too large to see |U| = 3 finds nothing.
        assert!(check_blossom_constraints(&g, &x, 0.4).unwrap().is_empty());
    }

    #[test]
    fn integral_matching_is_clean() {
        let g = StochasticGraph::unweighted(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)], 1.0, 1.0).unwrap();
        let m = max_weight_matching_all(&g);
        let mut x = vec![0.0; g.m()];
        for &id in m.edges() {
            x[id.0] = 1.0;
        }
        let x = FractionalMatching::from_values(x);
        assert!(check_blossom_constraints(&g, &x, 0.1).unwrap().is_empty());
        let r = round_to_integral(&g, &x, &EdgeSet::full(g.m()), 0.1).unwrap();
        assert_eq!(r.total_weight(), m.total_weight());
    }

    #[test]
    fn zero_rounds_to_empty() {
        let g = StochasticGraph::unweighted(3, [(0, 1), (1, 2)], 1.0, 1.0).unwrap();
        let r = round_to_integral(&g, &FractionalMatching::zeros(2), &EdgeSet::full(2), 0.1).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn rounding_shortfall_is_reported() {
        let g = StochasticGraph::unweighted(3, [(0, 1), (1, 2), (0, 2)], 1.0, 1.0).unwrap();
        let x = FractionalMatching::from_values(vec![0.5; 3]);
        assert!(matches!(
            round_to_integral(&g, &x, &EdgeSet::full(3), 0.1),
            Err(Error::Rounding { .. })
        ));
    }

    #[test]
    fn refuses_large_subsets() {
        let g = StochasticGraph::unweighted(2, [(0, 1)], 1.0, 1.0).unwrap();
        let x = FractionalMatching::zeros(1);
        assert!(matches!(
            check_blossom_constraints(&g, &x, 0.05),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn scaled_check_flags_pairs() {
        let g = StochasticGraph::unweighted(2, [(0, 1)], 1.0, 1.0).unwrap();
        let x = FractionalMatching::from_values(vec![0.3]);
        assert_eq!(check_subset_loads(&g, &x, 5, 0.2).unwrap().len(), 1);
        assert!(check_subset_loads(&g, &x, 5, 0.3).unwrap().is_empty());
    }

    #[test]
    fn algebraic_extremum() {
        let a = std::f64::consts::SQRT_2 - 1.0;
        let b = 2.0 - std::f64::consts::SQRT_2;
        let r = algebraic_ratio(&[(a, b)]);
        assert!((r - ALGEBRAIC_BOUND).abs() < 1e-12);
        assert!((ALGEBRAIC_BOUND - 0.34315).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn algebraic_bound_holds(pairs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..20)) {
            let pairs: Vec<(f64, f64)> = pairs.into_iter().map(|(a, t)| (a, t * (1.0 - a))).collect();
            prop_assert!(algebraic_ratio(&pairs) <= ALGEBRAIC_BOUND + 1e-9);
        }
    }
}
