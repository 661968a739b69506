//! Edmonds' weighted blossom algorithm, primal-dual, `O(n³)`.
//!
//! Weights are integers so that every dual update and slack test is exact.
//! Vertex duals are stored doubled, as is usual for this formulation.

const NONE: usize = usize::MAX;

/// Maximum-weight matching (not necessarily of maximum cardinality) of the
/// graph on `n` vertices. Returns the matched edge indices, ascending.
pub(crate) fn max_weight_edges(n: usize, edges: &[(usize, usize, i128)]) -> Vec<usize> {
    if edges.is_empty() {
        return Vec::new();
    }
    let mut s = Edmonds::new(n, edges);
    s.solve();
    let mut out: Vec<usize> = (0..n)
        .filter(|&v| s.mate[v] != NONE && v < s.endpoint[s.mate[v]])
        .map(|v| s.mate[v] / 2)
        .collect();
    out.sort_unstable();
    out
}

/// Exact integer images of non-negative weights: `w_i · 2^s` for a common `s`.
///
/// If the weights span too many binary orders to fit in 100 bits, the
/// smallest ones are rounded.
pub(crate) fn integer_weights(w: &[f64]) -> Vec<i128> {
    const BITS: i32 = 100;
    // (mantissa, exponent) with w = mantissa · 2^exponent.
    let parts: Vec<(u64, i32)> = w
        .iter()
        .map(|&x| {
            debug_assert!(x.is_finite() && x >= 0.0);
            if x == 0.0 {
                return (0, 0);
            }
            let bits = x.to_bits();
            let raw_exp = ((bits >> 52) & 0x7ff) as i32;
            let frac = bits & ((1u64 << 52) - 1);
            let (mant, exp) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
            let tz = mant.trailing_zeros();
            (mant >> tz, exp + tz as i32)
        })
        .collect();
    let nonzero = parts.iter().filter(|p| p.0 > 0);
    let Some(low) = nonzero.clone().map(|p| p.1).min() else {
        return vec![0; w.len()];
    };
    let high = nonzero.map(|&(m, e)| e + 64 - m.leading_zeros() as i32).max().unwrap_or(low);
    let shift = low.max(high - BITS);
    parts
        .iter()
        .map(|&(m, e)| {
            if m == 0 {
                0
            } else if e >= shift {
                (m as i128) << (e - shift)
            } else {
                let d = shift - e;
                if d >= 64 {
                    0
                } else {
                    ((m as i128) + (1i128 << (d - 1))) >> d
                }
            }
        })
        .collect()
}

struct Edmonds<'a> {
    n: usize,
    edges: &'a [(usize, usize, i128)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i128>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

/// Python-style index into a cyclic list: negative values count from the end.
fn at(v: &[usize], i: isize) -> usize {
    v[if i < 0 { (v.len() as isize + i) as usize } else { i as usize }]
}

impl<'a> Edmonds<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i128)]) -> Self {
        let m = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        Edmonds {
            n,
            edges,
            endpoint: (0..2 * m).map(|p| if p % 2 == 0 { edges[p / 2].0 } else { edges[p / 2].1 }).collect(),
            neighbend,
            mate: vec![NONE; n],
            label: vec![0; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase: (0..n).chain(std::iter::repeat_n(NONE, n)).collect(),
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![None; 2 * n],
            unusedblossoms: (n..2 * n).collect(),
            dualvar: std::iter::repeat_n(maxweight, n).chain(std::iter::repeat_n(0, n)).collect(),
            allowedge: vec![false; m],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> i128 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.n {
                out.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            let leaves = self.leaves(b);
            self.queue.extend(leaves);
        } else {
            let base = self.blossombase[b];
            let mb = self.mate[base];
            debug_assert!(mb != NONE);
            self.assign_label(self.endpoint[mb], 1, mb ^ 1);
        }
    }

    /// Traces back from `v` and `w` to find a new blossom's base, or `NONE`
    /// if the two S-vertices lie in different trees (an augmenting path).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let n = self.n;
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("at most n blossoms exist");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        let mut bestedgeto = vec![NONE; 2 * n];
        for &bv in &path {
            let lists: Vec<Vec<usize>> = match self.blossombestedges[bv].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for list in lists {
                for k in list {
                    let (i, j, _) = self.edges[k];
                    let j = if self.inblossom[j] == b { i } else { j };
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[bv] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for &k in &list {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
        self.blossombestedges[b] = Some(list);
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let n = self.n;
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let endps = self.blossomendps[b].clone();
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).expect("entry child") as isize;
            let (jstep, trick): (isize, usize) = if j & 1 != 0 {
                j -= childs.len() as isize;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                self.label[self.endpoint[at(&endps, j - trick as isize) ^ trick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowedge[at(&endps, j - trick as isize) / 2] = true;
                j += jstep;
                p = at(&endps, j - trick as isize) ^ trick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = at(&childs, j);
            let ep = self.endpoint[p ^ 1];
            self.label[ep] = 2;
            self.label[bv] = 2;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while at(&childs, j) != entrychild {
                let bv = at(&childs, j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                if let Some(v) = self.leaves(bv).into_iter().find(|&v| self.label[v] != 0) {
                    debug_assert_eq!(self.label[v], 2);
                    self.label[v] = 0;
                    self.label[self.endpoint[self.mate[self.blossombase[bv]]]] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.label[b] = 0;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Swaps matched and unmatched edges along the even path from `v` to the
    /// base of `b`, then rotates `b` so that `v` becomes its base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let n = self.n;
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= n {
            self.augment_blossom(t, v);
        }
        let childs = self.blossomchilds[b].clone();
        let endps = self.blossomendps[b].clone();
        let i = childs.iter().position(|&c| c == t).expect("child of b");
        let mut j = i as isize;
        let (jstep, trick): (isize, usize) = if i & 1 != 0 {
            j -= childs.len() as isize;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = at(&childs, j);
            let p = at(&endps, j - trick as isize) ^ trick;
            if t >= n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = at(&childs, j);
            if t >= n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let n = self.n;
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                if bs >= n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self) {
        let n = self.n;
        for _ in 0..n {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            self.blossombestedges[n..].iter_mut().for_each(|e| *e = None);
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0 && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w])) {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // Dual adjustment. Type 1 ends the stage: some free vertex's
                // dual has reached zero.
                let mut deltatype = 1;
                let mut delta = self.dualvar[..n].iter().copied().min().unwrap_or(0);
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for v in 0..n {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE && self.label[b] == 1 && self.bestedge[b] != NONE {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == 2
                        && self.dualvar[b] < delta
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 | 3 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

/// The lexicographically smallest (ascending index sequence) among the
/// maximum-weight matchings of `edges`, which must already be in canonical
/// order.
///
/// Edges are taken in chunks of `L`. For each chunk the weights become
/// `w·2^L + 2^(L−1−j)` for the chunk's `j`-th edge (later edges get no
/// bonus): the bonuses sum to less than `2^L`, so weight decides first and,
/// among optima, the bonus picks the lexicographically smallest restriction
/// to the chunk. Those edges are fixed and the next chunk is solved on what
/// is left.
pub(crate) fn canonical_max_weight(n: usize, edges: &[(usize, usize, f64)]) -> Vec<usize> {
    let ints = integer_weights(&edges.iter().map(|e| e.2).collect::<Vec<_>>());
    let bits = ints.iter().map(|w| 128 - w.leading_zeros()).max().unwrap_or(0);
    let chunk = (120 - bits as usize).max(1);
    let mut used = vec![false; n];
    let mut picked = Vec::new();
    let mut local = Vec::new();
    let mut index = Vec::new();
    for start in (0..edges.len()).step_by(chunk) {
        local.clear();
        index.clear();
        for (k, (&(u, v, _), &w)) in edges.iter().zip(&ints).enumerate().skip(start) {
            if used[u] || used[v] || w <= 0 {
                continue;
            }
            let bonus = if k < start + chunk { 1i128 << (start + chunk - 1 - k) } else { 0 };
            local.push((u, v, (w << chunk) + bonus));
            index.push(k);
        }
        for j in max_weight_edges(n, &local) {
            let k = index[j];
            if k < start + chunk {
                let (u, v, _) = edges[k];
                used[u] = true;
                used[v] = true;
                picked.push(k);
            }
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(n: usize, edges: &[(usize, usize, i128)]) -> i128 {
        let m = edges.len();
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let mut used = vec![false; n];
            let mut w = 0;
            let mut ok = true;
            for (k, &(u, v, x)) in edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                    w += x;
                }
            }
            if ok {
                best = best.max(w);
            }
        }
        best
    }

    #[test]
    fn integer_images_are_exact() {
        assert_eq!(integer_weights(&[1.0, 2.0, 0.5, 0.0]), vec![2, 4, 1, 0]);
        assert_eq!(integer_weights(&[3.0, 6.0]), vec![3, 6]);
        let i = integer_weights(&[0.1, 0.2, 0.75, 0.25]);
        assert_eq!(i[1], 2 * i[0]);
        assert_eq!(i[2], 3 * i[3]);
        // Far-apart magnitudes are rounded at the bottom rather than overflowing.
        let i = integer_weights(&[1e30, 1e-30]);
        assert!(i[0] > 0 && i[0] < 1 << 101);
    }

    #[test]
    fn blossom_needed() {
        // Odd cycle 0-1-2 with a pendant edge 2-3: the optimum takes 0-1 and 2-3.
        let edges = [(0, 1, 5), (1, 2, 6), (0, 2, 5), (2, 3, 4)];
        let m = max_weight_edges(4, &edges);
        assert_eq!(m, vec![0, 3]);
    }

    #[test]
    fn nested_blossoms() {
        // Test cases from the classic reference implementation.
        let e = [(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7), (1, 6, 5), (4, 5, 6)];
        let got: i128 = max_weight_edges(7, &e).iter().map(|&k| e[k].2).sum();
        assert_eq!(got, 21);
        let e = [(1, 2, 9), (1, 3, 9), (2, 3, 10), (2, 4, 8), (3, 5, 8), (4, 5, 10), (5, 6, 6)];
        let got: i128 = max_weight_edges(7, &e).iter().map(|&k| e[k].2).sum();
        assert_eq!(got, 23);
        let e = [
            (1, 2, 45),
            (1, 5, 45),
            (2, 3, 50),
            (3, 4, 45),
            (4, 5, 50),
            (1, 6, 30),
            (3, 9, 35),
            (4, 8, 35),
            (5, 7, 26),
            (9, 10, 5),
        ];
        let m = max_weight_edges(11, &e);
        assert_eq!(m.iter().map(|&k| e[k].2).sum::<i128>(), brute(11, &e));
        let e = [
            (1, 2, 40),
            (1, 3, 40),
            (2, 3, 60),
            (2, 4, 55),
            (3, 5, 55),
            (4, 5, 50),
            (1, 8, 15),
            (5, 7, 30),
            (7, 6, 10),
            (8, 10, 10),
            (4, 9, 30),
        ];
        let m = max_weight_edges(11, &e);
        assert_eq!(m.iter().map(|&k| e[k].2).sum::<i128>(), brute(11, &e));
    }

    fn graphs() -> impl Strategy<Value = (usize, Vec<(usize, usize, i128)>)> {
        (2usize..9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let len = pairs.len();
            (Just(n), proptest::sample::subsequence(pairs, 0..=len.min(14)), proptest::collection::vec(0i128..20, 14))
                .prop_map(|(n, pairs, w)| (n, pairs.into_iter().zip(w).map(|((a, b), w)| (a, b, w)).collect()))
        })
    }

    proptest! {
        #[test]
        fn optimum_matches_exhaustive_search((n, edges) in graphs()) {
            let m = max_weight_edges(n, &edges);
            let mut used = vec![false; n];
            for &k in &m {
                let (u, v, _) = edges[k];
                prop_assert!(!used[u] && !used[v]);
                used[u] = true;
                used[v] = true;
            }
            prop_assert_eq!(m.iter().map(|&k| edges[k].2).sum::<i128>(), brute(n, &edges));
        }
    }
}
