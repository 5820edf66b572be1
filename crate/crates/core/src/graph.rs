//! Simple undirected graphs and the structural predicates the constructions
//! rely on: girth, bipartiteness, regularity, induced-subgraph detection and
//! edge subdivision.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::trace::{ReductionTrace, RoleKind, RoleOrigin, VertexRole};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid parameter for {kind}: {reason}")]
    InvalidParameter { kind: &'static str, reason: String },
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

/// Length of a shortest cycle; `Infinite` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(x) => x >= g,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(x) => Some(x),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(x) => write!(f, "{x}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Structural profile of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProfile {
    pub connected: bool,
    pub bipartite: bool,
    pub max_degree: usize,
    /// Present iff all degrees are equal.
    pub regular_degree: Option<usize>,
    pub girth: Girth,
}

impl GraphProfile {
    pub fn subcubic(&self) -> bool {
        self.max_degree <= 3
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Immutable after construction; the edge list is kept sorted with `u < v` in
/// every pair, and adjacency lists are sorted ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m(), self.edges)
    }
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity and ranges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::new();
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!side[u].unwrap());
                            queue.push_back(w);
                        }
                        Some(s) if s == side[u].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Length of a shortest cycle, by BFS from every vertex.
    ///
    /// Exact in O(n·m): the BFS rooted at a vertex of a shortest cycle sees
    /// that cycle as a non-tree edge closing two root paths of total length
    /// `girth - 1`.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w && parent[w] != u {
                        // Non-tree edge: cycle through the root of length
                        // dist[u] + dist[w] + 1 (an upper bound in general,
                        // exact when the root lies on a shortest cycle).
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn profile(&self) -> GraphProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let regular_degree = match (degrees.first(), degrees.iter().all(|&d| Some(&d) == degrees.first())) {
            (Some(&d), true) => Some(d),
            _ => None,
        };
        GraphProfile {
            connected: self.is_connected(),
            bipartite: self.is_bipartite(),
            max_degree,
            regular_degree,
            girth: self.girth(),
        }
    }

    /// Induced subgraph on `keep` (sorted, deduplicated internally).
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs: Vec<usize> = keep.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut b = GraphBuilder::new(vs.len());
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                b.add_edge(pos[u], pos[v]).expect("induced edges are simple");
            }
        }
        (b.build(), vs)
    }

    /// The farthest pair of vertices (maximum BFS distance), lowest ids on
    /// ties. Returns `(u, v, dist)`; `None` on an empty graph.
    pub fn farthest_pair(&self) -> Option<(usize, usize, usize)> {
        if self.n == 0 {
            return None;
        }
        let mut best = (0, 0, 0);
        for u in 0..self.n {
            let dist = self.bfs_distances(u);
            for v in u + 1..self.n {
                if let Some(d) = dist[v] {
                    if d > best.2 {
                        best = (u, v, d);
                    }
                }
            }
        }
        Some(best)
    }
}

/// Incremental edge-set builder used by the gadget assemblers.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> GraphBuilder {
        GraphBuilder { n, adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn build(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        self.edges.sort_unstable();
        Graph { n: self.n, edges: self.edges, adj: self.adj }
    }
}

/// The named graph patterns used throughout: paths, cycles, cliques, stars and
/// the H-shaped graphs with a length-`i` middle path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    /// `P_t`, the path on `t` vertices.
    Path(usize),
    /// `C_s`, the cycle on `s` vertices.
    Cycle(usize),
    /// `K_n`, the complete graph.
    Complete(usize),
    /// `K_{1,r}`, the star with `r` leaves.
    Star(usize),
    /// `H_i^*`: two claw centres joined by a path of length `i`, each centre
    /// carrying two pendant leaves. `H_1^*` is the letter-H graph.
    HStar(usize),
}

impl NamedGraph {
    pub fn parse(kind: &str, params: &[usize]) -> Result<NamedGraph, GraphError> {
        let one = |kind: &'static str| -> Result<usize, GraphError> {
            if params.len() == 1 {
                Ok(params[0])
            } else {
                Err(GraphError::InvalidParameter { kind, reason: "expected one parameter".into() })
            }
        };
        match kind {
            "path" => Ok(NamedGraph::Path(one("path")?)),
            "cycle" => Ok(NamedGraph::Cycle(one("cycle")?)),
            "complete" => Ok(NamedGraph::Complete(one("complete")?)),
            "star" => Ok(NamedGraph::Star(one("star")?)),
            "hstar" => Ok(NamedGraph::HStar(one("hstar")?)),
            other => Err(GraphError::InvalidParameter {
                kind: "make_named",
                reason: format!("unknown kind `{other}`"),
            }),
        }
    }
}

/// Constructs a named pattern with deterministic vertex numbering.
pub fn make_named(kind: NamedGraph) -> Result<Graph, GraphError> {
    match kind {
        NamedGraph::Path(t) => {
            if t == 0 {
                return Err(GraphError::InvalidParameter { kind: "path", reason: "P_0 is empty".into() });
            }
            let edges: Vec<_> = (0..t - 1).map(|i| (i, i + 1)).collect();
            Graph::new(t, &edges)
        }
        NamedGraph::Cycle(s) => {
            if s < 3 {
                return Err(GraphError::InvalidParameter {
                    kind: "cycle",
                    reason: format!("C_{s} is not a simple cycle"),
                });
            }
            let edges: Vec<_> = (0..s).map(|i| (i, (i + 1) % s)).collect();
            Graph::new(s, &edges)
        }
        NamedGraph::Complete(n) => {
            if n == 0 {
                return Err(GraphError::InvalidParameter { kind: "complete", reason: "K_0 is empty".into() });
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::new(n, &edges)
        }
        NamedGraph::Star(r) => {
            if r == 0 {
                return Err(GraphError::InvalidParameter { kind: "star", reason: "K_{1,0} has no leaves".into() });
            }
            let edges: Vec<_> = (1..=r).map(|i| (0, i)).collect();
            Graph::new(r + 1, &edges)
        }
        NamedGraph::HStar(i) => {
            if i == 0 {
                return Err(GraphError::InvalidParameter { kind: "hstar", reason: "index must be >= 1".into() });
            }
            // 0 = u, 1 = v, 2..=i are the path internals, then two leaves on
            // each centre. i+5 vertices, i+4 edges.
            let mut edges = Vec::new();
            if i == 1 {
                edges.push((0, 1));
            } else {
                edges.push((0, 2));
                for w in 2..i {
                    edges.push((w, w + 1));
                }
                edges.push((i, 1));
            }
            edges.push((0, i + 1));
            edges.push((0, i + 2));
            edges.push((1, i + 3));
            edges.push((1, i + 4));
            Graph::new(i + 5, &edges)
        }
    }
}

/// Complete bipartite graph `K_{a,b}`; left side `0..a`, right side `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::new(a + b, &edges).expect("K_{a,b} is simple")
}

/// Scope of a subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdivisionScope {
    OneEdge(usize, usize),
    AllEdges,
}

/// Replaces each selected edge `uv` by a path from `u` to `v` of length
/// `p + 1` through `p` fresh internal vertices. Originals keep their ids; new
/// vertices are appended per edge in canonical edge order.
pub fn subdivide(g: &Graph, p: usize, scope: SubdivisionScope) -> Result<(Graph, ReductionTrace), GraphError> {
    let selected: Vec<(usize, usize)> = match scope {
        SubdivisionScope::AllEdges => g.edges().to_vec(),
        SubdivisionScope::OneEdge(u, v) => {
            if !g.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            vec![(u.min(v), u.max(v))]
        }
    };
    let mut trace = ReductionTrace::new();
    let mut b = GraphBuilder::new(g.n());
    for v in 0..g.n() {
        trace.push(VertexRole::original(v));
    }
    for &(u, v) in g.edges() {
        if !selected.contains(&(u, v)) {
            b.add_edge(u, v)?;
        }
    }
    for &(u, v) in &selected {
        let mut prev = u;
        for pos in 1..=p {
            let w = b.add_vertex();
            trace.push(VertexRole::new(
                RoleKind::SubdivisionPoint,
                RoleOrigin::SourceEdge(u, v),
                vec![pos],
            ));
            b.add_edge(prev, w)?;
            prev = w;
        }
        b.add_edge(prev, v)?;
    }
    Ok((b.build(), trace))
}

/// Exhaustive induced-subgraph search: an injective map `pattern -> host`
/// preserving both edges and non-edges, or `None` if no embedding exists.
///
/// Backtracking over a connectivity-first vertex order with degree and
/// adjacency-consistency pruning. Worst case is exponential, so the search
/// counts nodes against `budget` and reports exhaustion as an error rather
/// than returning a wrong answer.
pub fn contains_induced(host: &Graph, pattern: &Graph, budget: u64) -> Result<Option<Vec<usize>>, GraphError> {
    let k = pattern.n();
    if k == 0 {
        return Ok(Some(vec![]));
    }
    if k > host.n() {
        return Ok(None);
    }

    // Order pattern vertices: highest degree first, then prefer vertices
    // adjacent to already-ordered ones so partial maps stay constrained.
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = pattern.adj(v).iter().filter(|&&w| placed[w]).count();
                (attached, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; host.n()];
    let mut nodes: u64 = 0;

    fn go(
        host: &Graph,
        pattern: &Graph,
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool, GraphError> {
        if depth == order.len() {
            return Ok(true);
        }
        let p = order[depth];
        'candidates: for cand in 0..host.n() {
            if used[cand] || host.degree(cand) < pattern.degree(p) {
                continue;
            }
            for q in 0..pattern.n() {
                if map[q] != usize::MAX && pattern.has_edge(p, q) != host.has_edge(cand, map[q]) {
                    continue 'candidates;
                }
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(GraphError::BudgetExceeded(budget));
            }
            map[p] = cand;
            used[cand] = true;
            if go(host, pattern, order, depth + 1, map, used, nodes, budget)? {
                return Ok(true);
            }
            map[p] = usize::MAX;
            used[cand] = false;
        }
        Ok(false)
    }

    if go(host, pattern, &order, 0, &mut map, &mut used, &mut nodes, budget)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Result of an `H*`-freeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HStarFreeness {
    Free,
    /// An induced `H_{i'}^*` exists; the embedding maps the pattern built by
    /// `make_named(HStar(i_prime))` into the host.
    Contains { i_prime: usize, embedding: Vec<usize> },
}

impl HStarFreeness {
    pub fn is_free(&self) -> bool {
        matches!(self, HStarFreeness::Free)
    }
}

/// Checks whether `g` contains an induced `H_{i'}^*` for any `1 <= i' <= i`.
pub fn is_hstar_free(g: &Graph, i: usize, budget: u64) -> Result<HStarFreeness, GraphError> {
    if i == 0 {
        return Err(GraphError::InvalidParameter { kind: "hstar-free", reason: "index must be >= 1".into() });
    }
    // Every H_i^* has two degree-3 vertices; hosts of max degree < 3 are free.
    if g.max_degree() < 3 {
        return Ok(HStarFreeness::Free);
    }
    for i_prime in 1..=i {
        if i_prime + 5 > g.n() {
            break;
        }
        let pattern = make_named(NamedGraph::HStar(i_prime))?;
        if let Some(embedding) = contains_induced(g, &pattern, budget)? {
            return Ok(HStarFreeness::Contains { i_prime, embedding });
        }
    }
    Ok(HStarFreeness::Free)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(k: NamedGraph) -> Graph {
        make_named(k).unwrap()
    }

    #[test]
    fn path_has_expected_size() {
        let p6 = named(NamedGraph::Path(6));
        assert_eq!(p6.n(), 6);
        assert_eq!(p6.m(), 5);
        assert_eq!(p6.girth(), Girth::Infinite);
    }

    #[test]
    fn hstar_1_is_the_letter_h() {
        let h = named(NamedGraph::HStar(1));
        assert_eq!(h.n(), 6);
        assert_eq!(h.m(), 5);
        let deg3: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) == 3).collect();
        assert_eq!(deg3, vec![0, 1]);
        assert!(h.has_edge(0, 1));
    }

    #[test]
    fn hstar_counts_and_centre_distance() {
        for i in 1..=3 {
            let h = named(NamedGraph::HStar(i));
            assert_eq!(h.n(), i + 5, "vertices of H_{i}^*");
            assert_eq!(h.m(), i + 4, "edges of H_{i}^*");
            let deg3: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) == 3).collect();
            assert_eq!(deg3.len(), 2);
            assert_eq!(h.distance(deg3[0], deg3[1]), Some(i));
        }
    }

    #[test]
    fn girth_examples() {
        assert_eq!(named(NamedGraph::Cycle(5)).girth(), Girth::Finite(5));
        assert_eq!(named(NamedGraph::Complete(4)).girth(), Girth::Finite(3));
        assert_eq!(named(NamedGraph::Path(6)).girth(), Girth::Infinite);
        assert_eq!(complete_bipartite(3, 3).girth(), Girth::Finite(4));
    }

    #[test]
    fn profile_examples() {
        let k4 = named(NamedGraph::Complete(4)).profile();
        assert!(k4.connected && !k4.bipartite);
        assert_eq!(k4.max_degree, 3);
        assert_eq!(k4.regular_degree, Some(3));
        assert_eq!(k4.girth, Girth::Finite(3));

        let c6 = named(NamedGraph::Cycle(6)).profile();
        assert!(c6.bipartite);
        assert_eq!(c6.regular_degree, Some(2));
        assert_eq!(c6.girth, Girth::Finite(6));

        let star = named(NamedGraph::Star(4)).profile();
        assert!(star.bipartite);
        assert_eq!(star.max_degree, 4);
        assert!(!star.subcubic());
        assert_eq!(star.girth, Girth::Infinite);
        assert_eq!(star.regular_degree, None);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange(2, 2)));
        assert!(make_named(NamedGraph::Cycle(2)).is_err());
    }

    #[test]
    fn induced_search_examples() {
        let budget = 1 << 20;
        let p6 = named(NamedGraph::Path(6));
        let p4 = named(NamedGraph::Path(4));
        let found = contains_induced(&p6, &p4, budget).unwrap();
        assert!(found.is_some());

        let k4 = named(NamedGraph::Complete(4));
        let c4 = named(NamedGraph::Cycle(4));
        assert_eq!(contains_induced(&k4, &c4, budget).unwrap(), None);

        // H_2^* does not contain H_1^* as an induced subgraph.
        let h2 = named(NamedGraph::HStar(2));
        let h1 = named(NamedGraph::HStar(1));
        assert_eq!(contains_induced(&h2, &h1, budget).unwrap(), None);
    }

    #[test]
    fn induced_embedding_is_injective_and_consistent() {
        let host = named(NamedGraph::Cycle(7));
        let pattern = named(NamedGraph::Path(4));
        let map = contains_induced(&host, &pattern, 1 << 20).unwrap().unwrap();
        let mut seen = std::collections::HashSet::new();
        for &h in &map {
            assert!(seen.insert(h));
        }
        for p in 0..pattern.n() {
            for q in p + 1..pattern.n() {
                assert_eq!(pattern.has_edge(p, q), host.has_edge(map[p], map[q]));
            }
        }
    }

    #[test]
    fn hstar_freeness_examples() {
        let k4 = named(NamedGraph::Complete(4));
        assert!(is_hstar_free(&k4, 5, 1 << 20).unwrap().is_free());

        let h1 = named(NamedGraph::HStar(1));
        match is_hstar_free(&h1, 1, 1 << 20).unwrap() {
            HStarFreeness::Contains { i_prime, embedding } => {
                assert_eq!(i_prime, 1);
                assert_eq!(embedding.len(), 6);
            }
            HStarFreeness::Free => panic!("H_1^* contains itself"),
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let host = named(NamedGraph::Complete(8));
        let pattern = named(NamedGraph::Cycle(6));
        assert_eq!(contains_induced(&host, &pattern, 3), Err(GraphError::BudgetExceeded(3)));
    }

    #[test]
    fn subdivide_one_edge_of_c6_gives_c10() {
        let c6 = named(NamedGraph::Cycle(6));
        let (g, trace) = subdivide(&c6, 4, SubdivisionScope::OneEdge(0, 1)).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 10);
        assert_eq!(g.girth(), Girth::Finite(10));
        assert_eq!(trace.len(), 10);
        assert_eq!(trace.role(6).kind, RoleKind::SubdivisionPoint);
        assert_eq!(trace.role(6).origin, RoleOrigin::SourceEdge(0, 1));
    }

    #[test]
    fn subdivide_all_edges_multiplies_girth() {
        let c6 = named(NamedGraph::Cycle(6));
        let (g, _) = subdivide(&c6, 4, SubdivisionScope::AllEdges).unwrap();
        assert_eq!(g.n(), 30);
        assert_eq!(g.girth(), Girth::Finite(30));

        let k4 = named(NamedGraph::Complete(4));
        let (g, _) = subdivide(&k4, 2, SubdivisionScope::AllEdges).unwrap();
        assert_eq!(g.n(), 4 + 2 * 6);
        assert_eq!(g.m(), 6 + 2 * 6);
        assert_eq!(g.girth(), Girth::Finite(9));
    }

    #[test]
    fn subdivide_preserves_degree_and_parity() {
        // Length-5 replacement paths preserve cycle parity, hence
        // bipartiteness in both directions.
        let k4 = named(NamedGraph::Complete(4));
        let (g, _) = subdivide(&k4, 4, SubdivisionScope::AllEdges).unwrap();
        let p = g.profile();
        assert_eq!(p.max_degree, 3);
        assert!(!p.bipartite);

        let c6 = named(NamedGraph::Cycle(6));
        let (g, _) = subdivide(&c6, 4, SubdivisionScope::AllEdges).unwrap();
        assert!(g.profile().bipartite);
    }

    #[test]
    fn subdivide_rejects_non_edges() {
        let p3 = named(NamedGraph::Path(3));
        assert!(matches!(
            subdivide(&p3, 1, SubdivisionScope::OneEdge(0, 2)),
            Err(GraphError::NotAnEdge(0, 2))
        ));
    }

    #[test]
    fn make_named_is_deterministic() {
        let a = named(NamedGraph::HStar(3));
        let b = named(NamedGraph::HStar(3));
        assert_eq!(a, b);
    }

    #[test]
    fn farthest_pair_on_path() {
        let p6 = named(NamedGraph::Path(6));
        assert_eq!(p6.farthest_pair(), Some((0, 5, 5)));
    }
}
