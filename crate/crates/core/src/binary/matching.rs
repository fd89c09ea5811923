//! Maximum weight matching in general graphs (Edmonds' blossom algorithm,
//! primal-dual with integer duals). Maximum cardinality matching is the
//! unit-weight special case.

use thiserror::Error;

use crate::cost::{Cost, CostError, Scale};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range (|V| = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge weight must be finite")]
    InfiniteWeight,
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// Undirected graph with finite non-negative rational edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingGraph {
    n: usize,
    edges: Vec<(usize, usize, Cost)>,
}

impl MatchingGraph {
    pub fn new(n: usize) -> MatchingGraph {
        MatchingGraph { n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Cost) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w.is_inf() {
            return Err(GraphError::InfiniteWeight);
        }
        let key = (u.min(v), u.max(v));
        if self.edges.iter().any(|&(a, b, _)| (a.min(b), a.max(b)) == key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        self.edges.push((u, v, w));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Cost)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Cost> {
        self.edges
            .iter()
            .find(|&&(a, b, _)| (a == u && b == v) || (a == v && b == u))
            .map(|&(_, _, w)| w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Partner of each vertex.
    pub mate: Vec<Option<usize>>,
    /// Matched edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub weight: Cost,
}

/// A matching of maximum total weight (not necessarily perfect).
pub fn max_weight_matching(g: &MatchingGraph) -> Result<Matching, GraphError> {
    let scale = Scale::for_costs(g.edges.iter().map(|e| e.2))?;
    let mut edges = Vec::with_capacity(g.edges.len());
    for &(u, v, w) in &g.edges {
        let w = scale.to_int(w)?.expect("finite weight");
        edges.push((u, v, i128::from(w)));
    }
    let mate_raw = Blossom::new(g.n, edges).solve();
    let mate: Vec<Option<usize>> = mate_raw.into_iter().map(|m| (m != NONE).then_some(m)).collect();
    let mut matched = Vec::new();
    let mut weight = Cost::ZERO;
    for (u, m) in mate.iter().enumerate() {
        if let Some(v) = *m {
            if u < v {
                matched.push((u, v));
                weight = weight.checked_add(g.weight(u, v).expect("matched edge exists"))?;
            }
        }
    }
    Ok(Matching { mate, edges: matched, weight })
}

/// Maximum cardinality matching: every edge weighs one.
pub fn max_cardinality_matching(n: usize, edges: &[(usize, usize)]) -> Result<Matching, GraphError> {
    let mut g = MatchingGraph::new(n);
    for &(u, v) in edges {
        g.add_edge(u, v, Cost::ONE)?;
    }
    max_weight_matching(&g)
}

const NONE: usize = usize::MAX;

/// Working state. Vertices are `0..n`, blossoms `n..2n`; endpoint `p` of
/// edge `k` is `2k` (first end) or `2k + 1` (second end), and `p ^ 1` is
/// the opposite endpoint. Vertex duals are stored doubled so that integer
/// weights keep every dual integral.
struct Blossom {
    nv: usize,
    edges: Vec<(usize, usize, i128)>,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    // 0 free, 1 S, 2 T; bit 4 marks blossoms during scans.
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

fn wrap(len: usize, j: isize) -> usize {
    j.rem_euclid(len as isize) as usize
}

impl Blossom {
    fn new(nv: usize, edges: Vec<(usize, usize, i128)>) -> Blossom {
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let endpoint = (0..2 * edges.len()).map(|p| if p % 2 == 0 { edges[p / 2].0 } else { edges[p / 2].1 }).collect();
        let mut neighbend = vec![Vec::new(); nv];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut dualvar = vec![maxweight; nv];
        dualvar.extend(std::iter::repeat(0).take(nv));
        Blossom {
            nv,
            endpoint,
            neighbend,
            mate: vec![NONE; nv],
            label: vec![0; 2 * nv],
            labelend: vec![NONE; 2 * nv],
            inblossom: (0..nv).collect(),
            blossomparent: vec![NONE; 2 * nv],
            blossomchilds: vec![Vec::new(); 2 * nv],
            blossombase: (0..nv).chain(std::iter::repeat(NONE).take(nv)).collect(),
            blossomendps: vec![Vec::new(); 2 * nv],
            bestedge: vec![NONE; 2 * nv],
            blossombestedges: vec![None; 2 * nv],
            unusedblossoms: (nv..2 * nv).collect(),
            dualvar,
            allowedge: vec![false; edges.len()],
            queue: Vec::new(),
            edges,
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
            if t < self.nv {
                out.push(t);
            } else {
                // Reverse so leaves come out in child order.
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
        } else if t == 2 {
            let base = self.blossombase[b];
            let mb = self.mate[base];
            debug_assert!(mb != NONE);
            self.assign_label(self.endpoint[mb], 1, mb ^ 1);
        }
    }

    /// Traces back from `v` and `w` to find a new blossom base, or `NONE`
    /// when the two paths reach distinct roots (augmenting path).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], 2);
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
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom slot available");
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
        debug_assert_eq!(self.label[bb], 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        for leaf in self.leaves(b) {
            if self.label[self.inblossom[leaf]] == 2 {
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.nv];
        for &sub in &path {
            let nblists: Vec<Vec<usize>> = match self.blossombestedges[sub].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(sub)
                    .into_iter()
                    .map(|leaf| self.neighbend[leaf].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for kk in nblist {
                    let (i, mut j, _) = self.edges[kk];
                    if self.inblossom[j] == b {
                        j = i;
                    }
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(kk) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = kk;
                    }
                }
            }
            self.bestedge[sub] = NONE;
        }
        let best: Vec<usize> = bestedgeto.into_iter().filter(|&e| e != NONE).collect();
        self.bestedge[b] = NONE;
        for &e in &best {
            if self.bestedge[b] == NONE || self.slack(e) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = e;
            }
        }
        self.blossombestedges[b] = Some(best);
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.nv {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for leaf in self.leaves(s) {
                    self.inblossom[leaf] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let len = childs.len();
            let endps = self.blossomendps[b].clone();
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).expect("entry child") as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 == 1 {
                j -= len as isize;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                // Relabel the T-sub-blossom.
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = endps[wrap(len, j - endptrick as isize)];
                self.label[self.endpoint[q ^ endptrick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                // Step to the next S-sub-blossom and note its forward endpoint.
                self.allowedge[q / 2] = true;
                j += jstep;
                p = endps[wrap(len, j - endptrick as isize)] ^ endptrick;
                // Step to the next T-sub-blossom.
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            // Relabel the base T-sub-blossom without stepping through to its mate.
            let bv = childs[wrap(len, j)];
            let ep = self.endpoint[p ^ 1];
            self.label[ep] = 2;
            self.label[bv] = 2;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[wrap(len, j)] != entrychild {
                let bv = childs[wrap(len, j)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let reached = self.leaves(bv).into_iter().find(|&v| self.label[v] != 0);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], 2);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = 0;
                    let mb = self.mate[self.blossombase[bv]];
                    self.label[self.endpoint[mb]] = 0;
                    let le = self.labelend[v];
                    self.assign_label(v, 2, le);
                }
                j += jstep;
            }
        }
        self.label[b] = 0;
        self.labelend[b] = NONE;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Swaps matched and unmatched edges along the even path from `v` to
    /// the base of blossom `b`, rotating `b` so that `v` becomes the base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nv {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len();
        let i = self.blossomchilds[b].iter().position(|&c| c == t).expect("child") as isize;
        let mut j = i;
        let (jstep, endptrick): (isize, usize) = if i & 1 == 1 {
            j -= len as isize;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t1 = self.blossomchilds[b][wrap(len, j)];
            let p = self.blossomendps[b][wrap(len, j - endptrick as isize)] ^ endptrick;
            if t1 >= self.nv {
                self.augment_blossom(t1, self.endpoint[p]);
            }
            j += jstep;
            let t2 = self.blossomchilds[b][wrap(len, j)];
            if t2 >= self.nv {
                self.augment_blossom(t2, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        let i = i as usize;
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], 1);
                if bs >= self.nv {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], 2);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.nv {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(mut self) -> Vec<usize> {
        let nv = self.nv;
        if self.edges.is_empty() {
            return vec![NONE; nv];
        }
        for _stage in 0..nv {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in nv..2 * nv {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..nv {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while let Some(v) = (!augmented).then(|| self.queue.pop()).flatten() {
                    debug_assert_eq!(self.label[self.inblossom[v]], 1);
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
                                debug_assert_eq!(self.label[self.inblossom[w]], 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }
                // Dual adjustment: pick the smallest admissible step.
                let mut deltatype = 1;
                let mut delta = self.dualvar[..nv].iter().copied().min().expect("non-empty");
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for v in 0..nv {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * nv {
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
                for b in nv..2 * nv {
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
                for v in 0..nv {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in nv..2 * nv {
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
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            if !augmented {
                break;
            }
            // End of stage: expand S-blossoms with zero dual.
            for b in nv..2 * nv {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
        self.mate.iter().map(|&p| if p == NONE { NONE } else { self.endpoint[p] }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> MatchingGraph {
        let mut g = MatchingGraph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, Cost::int(w)).unwrap();
        }
        g
    }

    /// Exhaustive search over all matchings.
    fn brute(g: &MatchingGraph) -> Cost {
        fn rec(k: usize, used: &mut Vec<bool>, g: &MatchingGraph) -> Cost {
            if k == g.edges().len() {
                return Cost::ZERO;
            }
            let skip = rec(k + 1, used, g);
            let (u, v, w) = g.edges()[k];
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = rec(k + 1, used, g) + w;
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        rec(0, &mut vec![false; g.vertex_count()], g)
    }

    fn assert_is_matching(m: &Matching) {
        for (u, v) in &m.edges {
            assert_eq!(m.mate[*u], Some(*v));
            assert_eq!(m.mate[*v], Some(*u));
        }
        let matched = m.mate.iter().filter(|x| x.is_some()).count();
        assert_eq!(matched, 2 * m.edges.len());
    }

    #[test]
    fn single_edge() {
        let m = max_weight_matching(&graph(2, &[(0, 1, 5)])).unwrap();
        assert_eq!(m.edges, vec![(0, 1)]);
        assert_eq!(m.weight, Cost::int(5));
    }

    #[test]
    fn triangle_takes_heaviest() {
        let m = max_weight_matching(&graph(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 5)])).unwrap();
        assert_eq!(m.edges, vec![(0, 2)]);
        assert_eq!(m.weight, Cost::int(5));
    }

    #[test]
    fn empty_graph() {
        let m = max_weight_matching(&MatchingGraph::new(4)).unwrap();
        assert!(m.edges.is_empty());
        assert_eq!(m.weight, Cost::ZERO);
    }

    #[test]
    fn blossom_cases() {
        // Classic cases exercising blossom creation, relabelling and expansion.
        let cases: Vec<(usize, Vec<(usize, usize, u32)>)> = vec![
            (4, vec![(0, 1, 2), (0, 2, 1), (1, 2, 1), (2, 3, 3)]),
            (6, vec![(0, 1, 8), (0, 2, 9), (1, 2, 10), (2, 3, 7), (0, 5, 5), (3, 4, 6)]),
            (8, vec![(0, 1, 23), (0, 4, 22), (0, 5, 15), (1, 2, 25), (2, 3, 22), (3, 4, 25), (3, 7, 14), (4, 6, 13)]),
            (10, vec![(0, 1, 45), (0, 4, 45), (1, 2, 50), (2, 3, 45), (3, 4, 50), (0, 5, 30), (2, 8, 35), (3, 7, 35), (4, 6, 26), (8, 9, 5)]),
            (10, vec![(0, 1, 40), (0, 2, 40), (1, 2, 60), (1, 3, 55), (2, 4, 55), (3, 4, 50), (0, 7, 15), (4, 6, 30), (6, 5, 10), (7, 9, 10), (3, 8, 30)]),
        ];
        for (n, edges) in cases {
            let g = graph(n, &edges);
            let m = max_weight_matching(&g).unwrap();
            assert_is_matching(&m);
            assert_eq!(m.weight, brute(&g), "{edges:?}");
        }
    }

    #[test]
    fn random_graphs_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1500 {
            let n = rng.gen_range(1..=10);
            let p: f64 = rng.gen_range(0.2..0.9);
            let mut g = MatchingGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        let w = Cost::ratio(rng.gen_range(0..12), rng.gen_range(1..4)).unwrap();
                        g.add_edge(u, v, w).unwrap();
                    }
                }
            }
            let m = max_weight_matching(&g).unwrap();
            assert_is_matching(&m);
            assert_eq!(m.weight, brute(&g), "{g:?}");
        }
    }

    #[test]
    fn cardinality_special_case() {
        // Path on 4 vertices: perfect matching of size 2.
        let m = max_cardinality_matching(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(m.edges.len(), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = MatchingGraph::new(3);
        assert!(g.add_edge(0, 0, Cost::ONE).is_err());
        assert!(g.add_edge(0, 5, Cost::ONE).is_err());
        g.add_edge(0, 1, Cost::ONE).unwrap();
        assert!(g.add_edge(1, 0, Cost::ONE).is_err());
        assert!(g.add_edge(1, 2, Cost::INF).is_err());
    }
}
