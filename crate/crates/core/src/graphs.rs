//! Finite simple graphs on vertices `1..=n`, matchings, induced structure and
//! distant leaves of forests.
//!
//! Vertex sets are `u64` bitmasks with bit `v` standing for vertex `v` (bit 0 is
//! never used), so graphs are capped at [`MAX_VERTICES`] vertices.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Error, Result};

pub const MAX_VERTICES: usize = 63;

/// An edge `{u, v}` stored with `u < v`.
pub type Edge = (usize, usize);

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Vertices of a mask in increasing order.
pub fn vertices_of(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vertices: impl IntoIterator<Item = usize>) -> u64 {
    vertices.into_iter().fold(0, |m, v| m | bit(v))
}

#[inline]
pub(crate) fn edge_mask(e: Edge) -> u64 {
    bit(e.0) | bit(e.1)
}

fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite simple graph on the vertex set `1..=n`. Isolated vertices are part
/// of the graph, so `n` is also the number of variables of its edge ideal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphData", try_from = "GraphData")]
pub struct Graph {
    n: usize,
    /// `adj[v]` is the neighbour mask of `v`; `adj[0]` is always zero.
    adj: Vec<u64>,
}

/// Serialized form: `{"n": 3, "edges": [[1, 2], [2, 3]]}`.
#[derive(Serialize, Deserialize)]
struct GraphData {
    n: usize,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData { n: g.n, edges: g.edges() }
    }
}

impl TryFrom<GraphData> for Graph {
    type Error = Error;

    fn try_from(d: GraphData) -> Result<Self> {
        Graph::from_edges(d.n, &d.edges)
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Star,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n + 1] })
    }

    /// Builds a graph from a list of vertex pairs, dropping duplicates.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in pairs {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    pub fn family(kind: Family, n: usize) -> Result<Self> {
        match kind {
            Family::Path => Self::path(n),
            Family::Cycle => Self::cycle(n),
            Family::Star => Self::star(n),
        }
    }

    /// `P_n` with edges `{i, i+1}`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return input("path needs at least one vertex");
        }
        let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &pairs)
    }

    /// `C_n`: the path plus the edge `{1, n}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return input(format!("cycle needs at least 3 vertices, got {n}"));
        }
        let mut pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        pairs.push((1, n));
        Self::from_edges(n, &pairs)
    }

    /// Star on `n` vertices: centre 1 joined to `2..=n`.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 {
            return input("star needs at least one vertex");
        }
        let pairs: Vec<_> = (2..=n).map(|i| (1, i)).collect();
        Self::from_edges(n, &pairs)
    }

    /// Broom: a path `1..=handle` with `bristles` extra leaves hung on vertex `handle`.
    pub fn broom(handle: usize, bristles: usize) -> Result<Self> {
        if handle == 0 {
            return input("broom handle needs at least one vertex");
        }
        let n = handle + bristles;
        let mut pairs: Vec<_> = (1..handle).map(|i| (i, i + 1)).collect();
        pairs.extend((handle + 1..=n).map(|j| (handle, j)));
        Self::from_edges(n, &pairs)
    }

    /// A random forest on `n` vertices, fully determined by `seed`.
    ///
    /// The number of components is drawn first, vertices are shuffled and cut
    /// into that many blocks, and each block gets a uniform random labelled tree
    /// from a Prüfer sequence.
    pub fn random_forest(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return input("random forest needs at least one vertex");
        }
        let mut g = Graph::empty(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let components = rng.gen_range(1..=(n / 2).max(1));
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(&mut rng);
        let mut cuts: Vec<usize> = (1..n).collect();
        cuts.shuffle(&mut rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(components - 1).collect();
        cuts.sort_unstable();
        cuts.push(n);
        let mut start = 0;
        for end in cuts {
            let block = &order[start..end];
            for (a, b) in prufer_tree(block.len(), &mut rng) {
                let (u, v) = (block[a], block[b]);
                g.adj[u] |= bit(v);
                g.adj[v] |= bit(u);
            }
            start = end;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask of all vertices `1..=n`.
    pub fn vertex_mask(&self) -> u64 {
        ((1u64 << self.n) - 1) << 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && v <= self.n && self.adj[u] & bit(v) != 0
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in vertices_of(self.adj[u] & u64::MAX.checked_shl(u as u32 + 1).unwrap_or(0)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Vertices touched by at least one edge.
    pub fn covered_mask(&self) -> u64 {
        (1..=self.n).filter(|&v| self.adj[v] != 0).fold(0, |m, v| m | bit(v))
    }

    pub fn isolated_count(&self) -> usize {
        self.n - self.covered_mask().count_ones() as usize
    }

    /// The induced subgraph on `a`, relabelled `1..=|a|` in increasing order.
    pub fn induced_subgraph(&self, a: u64) -> Result<InducedSubgraph> {
        if a & !self.vertex_mask() != 0 {
            return input("vertex subset is not contained in 1..=n");
        }
        let labels: Vec<usize> = vertices_of(a).collect();
        let mut position = vec![0usize; self.n + 1];
        for (i, &v) in labels.iter().enumerate() {
            position[v] = i + 1;
        }
        let mut g = Graph::empty(labels.len())?;
        for &v in &labels {
            for u in vertices_of(self.adj[v] & a) {
                g.adj[position[v]] |= bit(position[u]);
            }
        }
        Ok(InducedSubgraph { graph: g, labels })
    }

    /// The induced subgraph on `a` keeping the original labels and the ambient
    /// vertex count; vertices outside `a` become isolated.
    pub fn restrict(&self, a: u64) -> Graph {
        let mut adj = self.adj.clone();
        for (v, m) in adj.iter_mut().enumerate() {
            *m = if a & bit(v) != 0 { *m & a } else { 0 };
        }
        Graph { n: self.n, adj }
    }

    /// Same ambient, the given vertices made isolated.
    pub fn delete_vertices(&self, removed: u64) -> Graph {
        self.restrict(self.vertex_mask() & !removed)
    }

    /// Relabels vertex `v` as `perm[v]`; `perm` is a bijection on `1..=n` (index 0 ignored).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n + 1];
        for (u, v) in self.edges() {
            adj[perm[u]] |= bit(perm[v]);
            adj[perm[v]] |= bit(perm[u]);
        }
        Graph { n: self.n, adj }
    }

    /// All `k`-matchings, each exactly once, in lexicographic order of edge indices.
    pub fn k_matchings(&self, k: usize) -> KMatchings {
        KMatchings::new(self.edges(), k)
    }

    /// Matching number, by exhaustive branching on the lowest uncovered vertex.
    pub fn matching_number(&self) -> usize {
        fn go(g: &Graph, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
            let Some(v) = vertices_of(avail).find(|&v| g.adj[v] & avail != 0) else {
                return 0;
            };
            if let Some(&r) = memo.get(&avail) {
                return r;
            }
            let mut best = go(g, avail & !bit(v), memo);
            for u in vertices_of(g.adj[v] & avail) {
                best = best.max(1 + go(g, avail & !bit(v) & !bit(u), memo));
            }
            memo.insert(avail, best);
            best
        }
        go(self, self.covered_mask(), &mut HashMap::new())
    }

    /// Induced matching number: choosing an edge `uv` forbids the closed
    /// neighbourhoods of `u` and `v` for every other chosen edge.
    pub fn induced_matching_number(&self) -> usize {
        fn go(g: &Graph, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
            let Some(v) = vertices_of(avail).find(|&v| g.adj[v] & avail != 0) else {
                return 0;
            };
            if let Some(&r) = memo.get(&avail) {
                return r;
            }
            let mut best = go(g, avail & !bit(v), memo);
            for u in vertices_of(g.adj[v] & avail) {
                let blocked = g.adj[u] | g.adj[v] | bit(u) | bit(v);
                best = best.max(1 + go(g, avail & !blocked, memo));
            }
            memo.insert(avail, best);
            best
        }
        go(self, self.covered_mask(), &mut HashMap::new())
    }

    /// Whether `{e, f}` is a gap: disjoint edges with no edge of the graph between them.
    pub fn is_gap(&self, e: Edge, f: Edge) -> Result<bool> {
        for x in [e, f] {
            if !self.has_edge(x.0, x.1) {
                return input(format!("{{{},{}}} is not an edge", x.0, x.1));
            }
        }
        let (e, f) = (normalize(e.0, e.1), normalize(f.0, f.1));
        if e == f {
            return input("a gap needs two distinct edges");
        }
        let (me, mf) = (edge_mask(e), edge_mask(f));
        Ok(me & mf == 0 && (self.adj[e.0] | self.adj[e.1]) & mf == 0)
    }

    /// Whether the edge set of the subgraph induced on `V(M)` is exactly `M`.
    pub fn is_induced_matching(&self, m: &Matching) -> bool {
        let vm = m.vertex_mask();
        self.restrict(vm).edge_count() == m.len()
    }

    pub fn connected_components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let next = vertices_of(frontier).fold(0, |m, v| m | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.connected_components().len() == self.n
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Number of vertices of a longest induced path, by exhaustive search.
    pub fn longest_induced_path_order(&self) -> usize {
        fn extend(g: &Graph, path: u64, last: usize, len: usize, best: &mut usize) {
            *best = (*best).max(len);
            for x in vertices_of(g.adj[last] & !path) {
                // x may touch the path only at its current end
                if g.adj[x] & path == bit(last) {
                    extend(g, path | bit(x), x, len + 1, best);
                }
            }
        }
        let mut best = usize::from(self.n > 0);
        for s in 1..=self.n {
            extend(self, bit(s), s, 1, &mut best);
        }
        best
    }

    /// For forests: one more than the largest component diameter, found by a
    /// double breadth-first sweep per component. `None` if not a forest.
    pub fn tree_longest_path_order(&self) -> Option<usize> {
        if !self.is_forest() {
            return None;
        }
        let mut best = usize::from(self.n > 0);
        for comp in self.connected_components() {
            let start = comp.trailing_zeros() as usize;
            let (far, _) = self.farthest(start);
            let (_, dist) = self.farthest(far);
            best = best.max(dist + 1);
        }
        Some(best)
    }

    fn farthest(&self, s: usize) -> (usize, usize) {
        let mut dist = vec![usize::MAX; self.n + 1];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut last = (s, 0);
        while let Some(v) = queue.pop_front() {
            last = (v, dist[v]);
            for u in vertices_of(self.adj[v]) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        last
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Every distant leaf with its support, by definition: `v` is a leaf and at
    /// most one neighbour of its support is not a leaf.
    pub fn distant_edges(&self) -> Vec<DistantEdge> {
        (1..=self.n)
            .filter(|&v| self.is_leaf(v))
            .filter_map(|v| {
                let w = self.adj[v].trailing_zeros() as usize;
                let non_leaves = vertices_of(self.adj[w]).filter(|&x| !self.is_leaf(x)).count();
                (non_leaves <= 1).then_some(DistantEdge { leaf: v, support: w })
            })
            .collect()
    }

    /// A distant edge of a forest with at least one edge.
    ///
    /// Among distant leaves whose support has degree at least two, the largest
    /// label wins, so a labelling that already puts the leaf last is kept. When
    /// every component with an edge is a single edge, the smallest leaf wins.
    pub fn find_distant_edge(&self) -> Result<DistantEdge> {
        if !self.is_forest() {
            return domain("distant edges are only defined for forests");
        }
        if self.edge_count() == 0 {
            return domain("an edgeless graph has no distant edge");
        }
        let all = self.distant_edges();
        let preferred = all.iter().filter(|d| self.degree(d.support) >= 2).max_by_key(|d| d.leaf);
        Ok(*preferred.or_else(|| all.iter().min_by_key(|d| d.leaf)).expect("forests with edges have distant leaves"))
    }

    /// The construction from the existence argument: the far endpoint of a
    /// longest induced path inside a component with at least three vertices.
    /// `None` when no such component exists.
    pub fn distant_leaf_from_longest_path(&self) -> Option<DistantEdge> {
        fn longest(g: &Graph, path: u64, seq: &mut Vec<usize>, best: &mut Vec<usize>) {
            if seq.len() > best.len() {
                *best = seq.clone();
            }
            let last = *seq.last().unwrap();
            for x in vertices_of(g.adj[last] & !path) {
                if g.adj[x] & path == bit(last) {
                    seq.push(x);
                    longest(g, path | bit(x), seq, best);
                    seq.pop();
                }
            }
        }
        let comp = self.connected_components().into_iter().find(|c| c.count_ones() >= 3)?;
        let mut best = Vec::new();
        for s in vertices_of(comp) {
            longest(self, bit(s), &mut vec![s], &mut best);
        }
        let r = best.len();
        Some(DistantEdge { leaf: best[r - 1], support: best[r - 2] })
    }

    /// Canonical form of a forest: each tree is encoded as a parenthesised
    /// rooted tree at its centre (minimum over the centres), and the codes are
    /// sorted. Isolated vertices contribute `()`. Two forests on the same
    /// number of vertices get the same code iff they are isomorphic.
    pub fn forest_canonical_form(&self) -> Option<String> {
        if !self.is_forest() {
            return None;
        }
        let mut codes: Vec<String> = self
            .connected_components()
            .into_iter()
            .map(|c| {
                self.centres(c)
                    .into_iter()
                    .map(|r| self.rooted_code(r, 0))
                    .min()
                    .unwrap()
            })
            .collect();
        codes.sort();
        Some(codes.concat())
    }

    fn centres(&self, comp: u64) -> Vec<usize> {
        let mut remaining = comp;
        loop {
            if remaining.count_ones() <= 2 {
                return vertices_of(remaining).collect();
            }
            let leaves = vertices_of(remaining)
                .filter(|&v| (self.adj[v] & remaining).count_ones() <= 1)
                .fold(0, |m, v| m | bit(v));
            remaining &= !leaves;
        }
    }

    fn rooted_code(&self, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = vertices_of(self.adj[v] & !bit(parent))
            .map(|c| self.rooted_code(c, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
}

fn prufer_tree(m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    match m {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..m - 2).map(|_| rng.gen_range(0..m)).collect();
            let mut degree = vec![1usize; m];
            for &x in &seq {
                degree[x] += 1;
            }
            let mut edges = Vec::with_capacity(m - 1);
            for &x in &seq {
                let leaf = (0..m).find(|&i| degree[i] == 1).unwrap();
                edges.push((leaf, x));
                degree[leaf] -= 1;
                degree[x] -= 1;
            }
            let rest: Vec<usize> = (0..m).filter(|&i| degree[i] == 1).collect();
            edges.push((rest[0], rest[1]));
            edges
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} E={{", self.n)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "}}")
    }
}

/// An induced subgraph relabelled to `1..=|A|`; `labels[i]` is the original
/// label of new vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

/// A set of pairwise disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<Edge> = edges.into_iter().map(|(u, v)| normalize(u, v)).collect();
        list.sort_unstable();
        list.dedup();
        let mut seen = 0u64;
        for &e in &list {
            if e.0 == e.1 {
                return Err(Error::Loop(e.0));
            }
            if e.1 > MAX_VERTICES {
                return input(format!("vertex {} exceeds the supported range", e.1));
            }
            if seen & edge_mask(e) != 0 {
                return input(format!("edges of a matching must be disjoint; {{{},{}}} overlaps", e.0, e.1));
            }
            seen |= edge_mask(e);
        }
        Ok(Matching { edges: list })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &e| m | edge_mask(e))
    }

    pub fn is_matching_of(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "}}")
    }
}

/// Lazy stream of `k`-matchings; restart by calling [`Graph::k_matchings`] again.
#[derive(Debug, Clone)]
pub struct KMatchings {
    edges: Vec<Edge>,
    k: usize,
    stack: Vec<usize>,
    used: u64,
    cursor: usize,
    done: bool,
}

impl KMatchings {
    fn new(edges: Vec<Edge>, k: usize) -> Self {
        KMatchings { edges, k, stack: Vec::new(), used: 0, cursor: 0, done: k == 0 }
    }

    fn backtrack(&mut self) -> bool {
        match self.stack.pop() {
            Some(last) => {
                self.used &= !edge_mask(self.edges[last]);
                self.cursor = last + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for KMatchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        loop {
            if self.stack.len() == self.k {
                let m = Matching { edges: self.stack.iter().map(|&i| self.edges[i]).collect() };
                self.backtrack();
                return Some(m);
            }
            let need = self.k - self.stack.len();
            let found = (self.cursor..self.edges.len())
                .take_while(|&i| self.edges.len() - i >= need)
                .find(|&i| edge_mask(self.edges[i]) & self.used == 0);
            match found {
                Some(i) => {
                    self.stack.push(i);
                    self.used |= edge_mask(self.edges[i]);
                    self.cursor = i + 1;
                }
                None => {
                    if !self.backtrack() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// A leaf together with its unique neighbour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistantEdge {
    pub leaf: usize,
    pub support: usize,
}

/// Roles around a distant edge in the leaf-last labelling used by the forest
/// splitting: the leaf becomes `n`, its support `n-1`, the anchor (the support's
/// one neighbour that may be interior) `n-2`, and the remaining neighbours of
/// the support are the pendant leaves `i_1..i_t`.
///
/// Everything is kept in the caller's labels; [`SetupLabeling::permutation`]
/// records the map to the leaf-last labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetupLabeling {
    pub leaf: usize,
    pub support: usize,
    pub anchor: usize,
    pub pendants: Vec<usize>,
    n: usize,
    perm: Vec<usize>,
}

impl SetupLabeling {
    /// Fails unless the graph is a forest with a distant edge whose support has
    /// degree at least two.
    pub fn new(g: &Graph) -> Result<Self> {
        let d = g.find_distant_edge()?;
        let (v, w) = (d.leaf, d.support);
        if g.degree(w) < 2 {
            return domain("every component with an edge is a single edge; no anchor vertex exists");
        }
        let others = g.neighbors(w) & !bit(v);
        let anchor = vertices_of(others)
            .find(|&x| !g.is_leaf(x))
            .unwrap_or_else(|| vertices_of(others).last().unwrap());
        let pendants: Vec<usize> = vertices_of(others & !bit(anchor)).collect();
        let n = g.n();
        let mut perm = vec![0usize; n + 1];
        perm[v] = n;
        perm[w] = n - 1;
        perm[anchor] = n - 2;
        let mut next = 1;
        for x in 1..=n {
            if x != v && x != w && x != anchor {
                perm[x] = next;
                next += 1;
            }
        }
        Ok(SetupLabeling { leaf: v, support: w, anchor, pendants, n, perm })
    }

    pub fn t(&self) -> usize {
        self.pendants.len()
    }

    /// `perm[old] = new` in the leaf-last labelling.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn relabeled(&self, g: &Graph) -> Graph {
        g.relabel(&self.perm)
    }

    /// Leaf removed (kept as an isolated vertex of the ambient).
    pub fn g1(&self, g: &Graph) -> Graph {
        g.delete_vertices(bit(self.leaf))
    }

    /// Leaf and support removed.
    pub fn g2(&self, g: &Graph) -> Graph {
        g.delete_vertices(bit(self.leaf) | bit(self.support))
    }

    /// Leaf, support and anchor removed.
    pub fn g3(&self, g: &Graph) -> Graph {
        g.delete_vertices(bit(self.leaf) | bit(self.support) | bit(self.anchor))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pendant_forest() -> Graph {
        Graph::from_edges(
            11,
            &[(1, 2), (2, 3), (3, 4), (3, 9), (9, 10), (10, 5), (10, 6), (10, 7), (10, 8), (10, 11)],
        )
        .unwrap()
    }

    #[test]
    fn constructor_normalizes_and_rejects() {
        let p4 = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p4, Graph::path(4).unwrap());
        let g = Graph::from_edges(3, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);
        let err = Graph::from_edges(2, &[(1, 1)]).unwrap_err();
        assert!(err.to_string().contains("loop"));
        assert!(matches!(Graph::from_edges(2, &[(1, 3)]), Err(Error::VertexOutOfRange { u: 1, v: 3, n: 2 })));
        assert!(Graph::empty(64).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(Graph::path(5).unwrap().edges(), vec![(1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(Graph::cycle(4).unwrap().edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::star(4).unwrap().edges(), vec![(1, 2), (1, 3), (1, 4)]);
        let b = Graph::broom(3, 2).unwrap();
        assert_eq!(b.edges(), vec![(1, 2), (2, 3), (3, 4), (3, 5)]);
    }

    #[test]
    fn random_forest_is_deterministic_and_acyclic() {
        for seed in 0..200 {
            let n = 1 + (seed as usize % 12);
            let a = Graph::random_forest(n, seed).unwrap();
            assert_eq!(a, Graph::random_forest(n, seed).unwrap());
            assert!(a.is_forest(), "{a}");
            assert_eq!(a.n(), n);
        }
        assert_eq!(Graph::random_forest(8, 1).unwrap(), Graph::random_forest(8, 1).unwrap());
    }

    #[test]
    fn induced_subgraphs() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.induced_subgraph(mask_of([1, 2, 3])).unwrap().graph, Graph::path(3).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.induced_subgraph(mask_of([1, 2, 3])).unwrap().graph, Graph::path(3).unwrap());
        let sub = c4.induced_subgraph(mask_of([2, 4])).unwrap();
        assert_eq!(sub.labels, vec![2, 4]);
        assert_eq!(sub.graph.edge_count(), 0);

        let g = pendant_forest();
        let g3 = g.restrict(mask_of(1..=8));
        assert_eq!(g3.n(), 11);
        assert_eq!(g3.edges(), vec![(1, 2), (2, 3), (3, 4)]);
        assert_eq!(g3.isolated_count(), 8 - 4 + 3);
    }

    #[test]
    fn matchings_stream() {
        let p4 = Graph::path(4).unwrap();
        let two: Vec<_> = p4.k_matchings(2).collect();
        assert_eq!(two, vec![Matching::new([(1, 2), (3, 4)]).unwrap()]);
        assert_eq!(p4.k_matchings(3).count(), 0);
        let p5 = Graph::path(5).unwrap();
        let got: Vec<Vec<Edge>> = p5.k_matchings(2).map(|m| m.edges().to_vec()).collect();
        assert_eq!(got, vec![vec![(1, 2), (3, 4)], vec![(1, 2), (4, 5)], vec![(2, 3), (4, 5)]]);
        // restartable
        assert_eq!(p5.k_matchings(2).count(), p5.k_matchings(2).count());
    }

    #[test]
    fn matching_numbers() {
        for n in 2..=8 {
            assert_eq!(Graph::path(n).unwrap().matching_number(), n / 2);
        }
        assert_eq!(Graph::path(5).unwrap().induced_matching_number(), 2);
        assert_eq!(Graph::path(4).unwrap().induced_matching_number(), 1);
        assert_eq!(pendant_forest().matching_number(), 3);
        assert_eq!(Graph::cycle(6).unwrap().induced_matching_number(), 2);
    }

    #[test]
    fn gaps() {
        let p5 = Graph::path(5).unwrap();
        assert!(p5.is_gap((1, 2), (4, 5)).unwrap());
        assert!(!p5.is_gap((1, 2), (3, 4)).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert!(!c4.is_gap((1, 2), (3, 4)).unwrap());
        assert!(p5.is_gap((1, 3), (4, 5)).is_err());
        assert!(p5.is_gap((1, 2), (2, 1)).is_err());
    }

    #[test]
    fn distant_edges() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.find_distant_edge().unwrap(), DistantEdge { leaf: 4, support: 3 });
        let g = pendant_forest();
        assert_eq!(g.find_distant_edge().unwrap(), DistantEdge { leaf: 11, support: 10 });
        let s = SetupLabeling::new(&g).unwrap();
        assert_eq!((s.leaf, s.support, s.anchor), (11, 10, 9));
        assert_eq!(s.pendants, vec![5, 6, 7, 8]);
        assert_eq!(s.t(), 4);
        assert_eq!(s.relabeled(&g), g);
        let e = Graph::path(2).unwrap();
        assert_eq!(e.find_distant_edge().unwrap(), DistantEdge { leaf: 1, support: 2 });
        assert!(SetupLabeling::new(&e).is_err());
        assert!(Graph::cycle(3).unwrap().find_distant_edge().is_err());
        assert!(Graph::empty(3).unwrap().find_distant_edge().is_err());
    }

    #[test]
    fn setup_labeling_moves_roles_to_the_end() {
        let g = Graph::from_edges(7, &[(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (5, 7)]).unwrap();
        let s = SetupLabeling::new(&g).unwrap();
        let r = s.relabeled(&g);
        let n = g.n();
        assert!(r.is_leaf(n));
        assert!(r.has_edge(n - 1, n) && r.has_edge(n - 1, n - 2));
        for p in &s.pendants {
            assert!(g.is_leaf(*p));
            assert!(r.has_edge(n - 1, s.permutation()[*p]));
        }
    }

    #[test]
    fn forests_and_paths() {
        assert!(!Graph::cycle(3).unwrap().is_forest());
        assert!(pendant_forest().is_forest());
        for n in 1..=9 {
            assert_eq!(Graph::path(n).unwrap().longest_induced_path_order(), n);
        }
        assert_eq!(Graph::cycle(6).unwrap().longest_induced_path_order(), 5);
        assert_eq!(pendant_forest().longest_induced_path_order(), 6);
        assert_eq!(pendant_forest().tree_longest_path_order(), Some(6));
        assert_eq!(Graph::cycle(5).unwrap().tree_longest_path_order(), None);
        assert_eq!(pendant_forest().connected_components().len(), 1);
        assert_eq!(Graph::empty(3).unwrap().connected_components().len(), 3);
    }

    #[test]
    fn canonical_forms() {
        let a = Graph::from_edges(5, &[(1, 2), (2, 3), (4, 5)]).unwrap();
        let b = Graph::from_edges(5, &[(5, 1), (2, 4), (4, 3)]).unwrap();
        assert_eq!(a.forest_canonical_form(), b.forest_canonical_form());
        let star = Graph::star(4).unwrap();
        let p4 = Graph::path(4).unwrap();
        assert_ne!(star.forest_canonical_form(), p4.forest_canonical_form());
        assert_eq!(Graph::cycle(4).unwrap().forest_canonical_form(), None);
    }
}
