//! Maximum matching in general graphs (Edmonds' blossom algorithm) and the
//! perfect-matching decision used by the perfect-extendable predicate.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;

/// A set of pairwise disjoint edges of some host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("{0}-{1} is not an edge of the host graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is matched twice")]
    SharedEndpoint(usize),
    #[error("exhaustive oracle limited to n <= {limit}, got {n}")]
    ThresholdExceeded { n: usize, limit: usize },
}

impl Matching {
    /// Wraps an edge list after checking disjointness and membership in `g`.
    pub fn new(g: &Graph, edges: Vec<(usize, usize)>) -> Result<Matching, MatchingError> {
        let mut covered = vec![false; g.n()];
        let mut canon = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(MatchingError::NotAnEdge(u, v));
            }
            for w in [u, v] {
                if covered[w] {
                    return Err(MatchingError::SharedEndpoint(w));
                }
                covered[w] = true;
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        Ok(Matching { edges: canon })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Partner of `v`, if matched.
    pub fn partner(&self, v: usize) -> Option<usize> {
        for &(a, b) in &self.edges {
            if a == v {
                return Some(b);
            }
            if b == v {
                return Some(a);
            }
        }
        None
    }

    /// True iff every vertex of `g` is covered.
    pub fn is_perfect(&self, g: &Graph) -> bool {
        2 * self.edges.len() == g.n()
    }
}

/// Maximum-cardinality matching via Edmonds' blossom algorithm, O(V^3).
///
/// Deterministic: augmenting searches start from unmatched vertices in
/// ascending order and explore adjacency lists in ascending order.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // Greedy seed matching; the augmenting phases finish the job.
    for u in 0..n {
        if mate[u].is_none() {
            for &v in g.adj(u) {
                if mate[v].is_none() {
                    mate[u] = Some(v);
                    mate[v] = Some(u);
                    break;
                }
            }
        }
    }
    for root in 0..n {
        if mate[root].is_none() {
            if let Some(leaf) = find_augmenting_path(g, root, &mate) {
                flip_path(leaf.0, &leaf.1, &mut mate);
            }
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        if let Some(v) = mate[u] {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Matching { edges }
}

/// One alternating-tree BFS phase. Returns the free leaf and the parent array
/// on success.
fn find_augmenting_path(g: &Graph, root: usize, mate: &[Option<usize>]) -> Option<(usize, Vec<Option<usize>>)> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    used[root] = true;
    queue.push_back(root);

    while let Some(v) = queue.pop_front() {
        for &to in g.adj(v) {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            if to == root || mate[to].is_some_and(|m| parent[m].is_some()) {
                // Odd cycle: contract the blossom rooted at the LCA.
                let cur_base = lca(v, to, &base, &parent, mate);
                let mut in_blossom = vec![false; n];
                mark_path(v, cur_base, to, &base, &mut parent, mate, &mut in_blossom);
                mark_path(to, cur_base, v, &base, &mut parent, mate, &mut in_blossom);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to].is_none() {
                parent[to] = Some(v);
                match mate[to] {
                    None => return Some((to, parent)),
                    Some(m) => {
                        if !used[m] {
                            used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
    }
    None
}

fn lca(a: usize, b: usize, base: &[usize], parent: &[Option<usize>], mate: &[Option<usize>]) -> usize {
    let mut seen = vec![false; base.len()];
    let mut v = a;
    loop {
        v = base[v];
        seen[v] = true;
        match mate[v] {
            None => break,
            Some(m) => match parent[m] {
                Some(p) => v = p,
                None => break,
            },
        }
    }
    let mut v = b;
    loop {
        v = base[v];
        if seen[v] {
            return v;
        }
        v = parent[mate[v].expect("interior tree vertex is matched")].expect("tree parent exists");
    }
}

fn mark_path(
    mut v: usize,
    blossom_base: usize,
    mut child: usize,
    base: &[usize],
    parent: &mut [Option<usize>],
    mate: &[Option<usize>],
    in_blossom: &mut [bool],
) {
    while base[v] != blossom_base {
        let m = mate[v].expect("blossom interior vertex is matched");
        in_blossom[base[v]] = true;
        in_blossom[base[m]] = true;
        parent[v] = Some(child);
        child = m;
        v = parent[m].expect("tree parent exists");
    }
}

fn flip_path(mut v: usize, parent: &[Option<usize>], mate: &mut [Option<usize>]) {
    loop {
        let pv = parent[v].expect("augmenting path reaches the root");
        let next = mate[pv];
        mate[v] = Some(pv);
        mate[pv] = Some(v);
        match next {
            Some(x) => v = x,
            None => break,
        }
    }
}

/// Decides whether `g` has a perfect matching; returns a witness when it does.
/// The empty graph vacuously has the empty perfect matching. Works
/// component-wise, so odd components fail fast.
pub fn has_perfect_matching(g: &Graph) -> Option<Matching> {
    if g.n() % 2 != 0 {
        return None;
    }
    let mut edges = Vec::new();
    for comp in g.components() {
        if comp.len() % 2 != 0 {
            return None;
        }
        let (sub, back) = g.induced(&comp);
        let m = maximum_matching(&sub);
        if !m.is_perfect(&sub) {
            return None;
        }
        for &(u, v) in m.edges() {
            edges.push((back[u].min(back[v]), back[u].max(back[v])));
        }
    }
    edges.sort_unstable();
    Some(Matching { edges })
}

/// Exhaustive maximum-matching cardinality, the test oracle. Branches on the
/// lowest uncovered vertex; refuses hosts above the threshold.
pub fn exhaustive_maximum_matching_size(g: &Graph) -> Result<usize, MatchingError> {
    const LIMIT: usize = 20;
    if g.n() > LIMIT {
        return Err(MatchingError::ThresholdExceeded { n: g.n(), limit: LIMIT });
    }
    fn go(g: &Graph, v: usize, covered: &mut Vec<bool>) -> usize {
        let n = g.n();
        let mut v = v;
        while v < n && covered[v] {
            v += 1;
        }
        if v >= n {
            return 0;
        }
        // Either v stays uncovered...
        covered[v] = true;
        let mut best = go(g, v + 1, covered);
        // ...or v is matched to an uncovered neighbour.
        for &w in g.adj(v) {
            if !covered[w] {
                covered[w] = true;
                best = best.max(1 + go(g, v + 1, covered));
                covered[w] = false;
            }
        }
        covered[v] = false;
        best
    }
    Ok(go(g, 0, &mut vec![false; g.n()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, make_named, Graph, NamedGraph};

    fn petersen() -> Graph {
        // Outer C_5 0..5, inner pentagram 5..10, spokes i -> i+5.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    #[test]
    fn k4_has_matching_number_two() {
        let k4 = make_named(NamedGraph::Complete(4)).unwrap();
        assert_eq!(maximum_matching(&k4).len(), 2);
    }

    #[test]
    fn star_has_matching_number_one() {
        let star = make_named(NamedGraph::Star(4)).unwrap();
        assert_eq!(maximum_matching(&star).len(), 1);
    }

    #[test]
    fn petersen_has_a_perfect_matching() {
        let g = petersen();
        let m = maximum_matching(&g);
        assert_eq!(m.len(), 5);
        assert!(m.is_perfect(&g));
        assert_eq!(exhaustive_maximum_matching_size(&g).unwrap(), 5);
    }

    #[test]
    fn odd_cycles_need_blossoms() {
        // Two triangles joined by an edge: maximum matching 3 and perfect.
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let m = maximum_matching(&g);
        assert_eq!(m.len(), 3);
        assert!(has_perfect_matching(&g).is_some());
    }

    #[test]
    fn perfect_matching_examples() {
        let p3 = make_named(NamedGraph::Path(3)).unwrap();
        assert!(has_perfect_matching(&p3).is_none(), "odd order");
        let c6 = make_named(NamedGraph::Cycle(6)).unwrap();
        assert!(has_perfect_matching(&c6).is_some());
        let empty = Graph::empty(0);
        let m = has_perfect_matching(&empty).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn matching_type_invariants_enforced() {
        let c4 = make_named(NamedGraph::Cycle(4)).unwrap();
        assert!(Matching::new(&c4, vec![(0, 1), (2, 3)]).is_ok());
        assert_eq!(Matching::new(&c4, vec![(0, 2)]), Err(MatchingError::NotAnEdge(0, 2)));
        assert_eq!(
            Matching::new(&c4, vec![(0, 1), (1, 2)]),
            Err(MatchingError::SharedEndpoint(1))
        );
    }

    #[test]
    fn agrees_with_exhaustive_oracle_on_small_graphs() {
        // All labeled graphs on 5 vertices.
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(5, &edges).unwrap();
            assert_eq!(
                maximum_matching(&g).len(),
                exhaustive_maximum_matching_size(&g).unwrap(),
                "mismatch on mask {mask}"
            );
        }
    }

    #[test]
    fn agrees_with_oracle_on_random_graphs_up_to_ten() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let got = maximum_matching(&g);
            Matching::new(&g, got.edges().to_vec()).expect("matching invariants hold");
            assert_eq!(got.len(), exhaustive_maximum_matching_size(&g).unwrap());
        }
    }

    #[test]
    fn regular_bipartite_graphs_have_perfect_matchings() {
        let k33 = complete_bipartite(3, 3);
        let m = has_perfect_matching(&k33).unwrap();
        assert!(m.is_perfect(&k33));
    }
}
