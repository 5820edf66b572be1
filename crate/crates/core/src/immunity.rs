//! Immunity: graphs without matching cuts.
//!
//! A graph with edge expansion above 1 is immune, and for d-regular graphs the
//! expansion is bounded below by `(d - lambda2)/2`, so immunity can be
//! certified spectrally; for anything small enough the exhaustive solver
//! certifies directly. [`find_immune`] searches for immune graphs meeting the
//! girth/bipartiteness/matching/distance requirements of the gadget builders,
//! catalog first, then seeded random regular graphs, re-verifying every
//! promise before returning.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Girth, Graph};
use crate::matching::has_perfect_matching;
use crate::polynomial;
use crate::solvers::{solve_mc, Budget, SolveError};

pub const DEFAULT_SAFETY_MARGIN: f64 = 1e-6;
pub const DEFAULT_EIGEN_TOL: f64 = 1e-9;
/// Exact-arithmetic eigenvalue route is used up to this order.
pub const EXACT_EIGEN_LIMIT: usize = 8;
const EXPANSION_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImmunityError {
    #[error("edge expansion enumeration limited to n <= {limit}, got {n}")]
    ThresholdExceeded { n: usize, limit: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// How a graph was certified immune.
#[derive(Debug, Clone, PartialEq)]
pub enum CertMethod {
    /// `solve_mc` proved no valid colouring exists.
    Exhaustive { nodes: u64 },
    /// d-regular with `(d - lambda2)/2 > 1 + safety_margin`.
    Spectral { d: usize, lambda2: f64, bound: f64, safety_margin: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImmuneCertificate {
    pub method: CertMethod,
}

/// Certification route preference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefer {
    Spectral,
    Exhaustive,
}

/// Exact edge expansion `h(G) = min |∂S| / |S|` over nonempty `S` with
/// `|S| <= n/2`, by subset enumeration.
pub fn edge_expansion(g: &Graph) -> Result<Rational64, ImmunityError> {
    let n = g.n();
    if n > EXPANSION_LIMIT {
        return Err(ImmunityError::ThresholdExceeded { n, limit: EXPANSION_LIMIT });
    }
    if !g.is_connected() {
        return Err(ImmunityError::Disconnected);
    }
    let masks: Vec<u32> = (0..n).map(|v| g.adj(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let mut best: Option<Rational64> = None;
    for s in 1u32..(1u32 << n) {
        let size = s.count_ones() as usize;
        if 2 * size > n {
            continue;
        }
        let mut boundary = 0u32;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            boundary += (masks[v] & !s).count_ones();
        }
        let ratio = Rational64::new(boundary as i64, size as i64);
        if best.as_ref().is_none_or(|b| ratio < *b) {
            best = Some(ratio);
        }
    }
    Ok(best.expect("n >= 1 leaves at least one singleton"))
}

/// Second largest adjacency eigenvalue (with multiplicity), within `tol`.
///
/// Up to [`EXACT_EIGEN_LIMIT`] vertices the characteristic polynomial is
/// solved in exact arithmetic; above that a cyclic Jacobi sweep on the
/// symmetric adjacency matrix is used.
pub fn lambda2(g: &Graph, tol: f64) -> Result<f64, ImmunityError> {
    if g.n() == 0 {
        return Err(ImmunityError::EmptyGraph);
    }
    if g.n() == 1 {
        return Err(ImmunityError::EmptyGraph);
    }
    let eigen = if g.n() <= EXACT_EIGEN_LIMIT {
        polynomial::adjacency_eigenvalues_exact(g, tol)
    } else {
        jacobi_eigenvalues(g, tol)
    };
    Ok(eigen[1])
}

/// All adjacency eigenvalues, descending, by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(g: &Graph, tol: f64) -> Vec<f64> {
    let n = g.n();
    let mut a = vec![vec![0f64; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    let threshold = (tol * 1e-3).max(1e-14);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < threshold * 1e-2 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigen: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigen.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigen
}

/// Attempts to certify immunity. Tries the preferred route first, then the
/// other. `None` means "could not certify", never "not immune".
pub fn certify_immune(g: &Graph, prefer: Prefer, budget: Budget) -> Option<ImmuneCertificate> {
    if !g.is_connected() || g.n() == 0 {
        return None;
    }
    let routes = match prefer {
        Prefer::Spectral => [Prefer::Spectral, Prefer::Exhaustive],
        Prefer::Exhaustive => [Prefer::Exhaustive, Prefer::Spectral],
    };
    for route in routes {
        match route {
            Prefer::Spectral => {
                if let Some(cert) = certify_spectral(g) {
                    return Some(cert);
                }
            }
            Prefer::Exhaustive => {
                if let Ok((cert, stats)) = solve_mc(g, budget) {
                    if !cert.answer {
                        return Some(ImmuneCertificate {
                            method: CertMethod::Exhaustive { nodes: stats.nodes },
                        });
                    }
                    return None; // a matching cut exists, no route can certify
                }
            }
        }
    }
    None
}

fn certify_spectral(g: &Graph) -> Option<ImmuneCertificate> {
    let d = g.profile().regular_degree?;
    if g.n() < 2 {
        return None;
    }
    let margin = DEFAULT_SAFETY_MARGIN;
    let l2 = lambda2(g, DEFAULT_EIGEN_TOL).ok()?;
    let bound = (d as f64 - l2) / 2.0;
    if bound <= 1.0 + margin {
        return None;
    }
    if g.n() <= EXACT_EIGEN_LIMIT {
        // Float-free confirmation: no eigenvalue may sit in
        // (d - 2 - 2*margin, d), i.e. the bound holds exactly.
        let lo = BigRational::new(
            BigInt::from(((d as f64 - 2.0 - 2.0 * margin) * 1e9) as i64),
            BigInt::from(1_000_000_000u64),
        );
        let hi = BigRational::new(BigInt::from(d as i64 * 1_000_000_000 - 1), BigInt::from(1_000_000_000u64));
        if polynomial::count_adjacency_eigenvalues_in(g, &lo, &hi) != 0 {
            return None;
        }
    }
    Some(ImmuneCertificate {
        method: CertMethod::Spectral { d, lambda2: l2, bound, safety_margin: margin },
    })
}

/// True iff the exhaustive solver proves there is no matching cut.
pub fn is_immune(g: &Graph, budget: Budget) -> Result<bool, ImmunityError> {
    let (cert, _) = solve_mc(g, budget)?;
    Ok(!cert.answer)
}

/// What the gadget builders ask the provider for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProviderRequest {
    pub min_girth: usize,
    pub must_be_bipartite: bool,
    pub needs_perfect_matching: bool,
    /// Required distance between the designated vertices `s` and `t`.
    pub designated_distance: usize,
    pub max_vertices: usize,
    pub seed: u64,
}

impl Default for ProviderRequest {
    fn default() -> Self {
        ProviderRequest {
            min_girth: 3,
            must_be_bipartite: false,
            needs_perfect_matching: false,
            designated_distance: 1,
            max_vertices: 40,
            seed: 0,
        }
    }
}

/// A verified immune graph with designated vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmuneSupply {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub cert: ImmuneCertificate,
}

/// A named catalog entry. Entries are re-verified before use; the catalog is
/// a list of candidates, not a list of trusted facts.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
}

/// Built-in verified gadgets, smallest first.
///
/// * `K4` — immune, girth 3.
/// * `K33` — immune, bipartite, girth 4, perfect matching, diameter 2.
/// * `CROWN5` — `K_{5,5}` minus a perfect matching: 4-regular bipartite,
///   immune, girth 4, and the removed pairs sit at distance 3.
/// * `Q26` — 4-regular girth-5 graph on 26 vertices with a distance-4 pair,
///   immune; found by seeded search and frozen here.
///
/// Entries are candidates only; every use re-verifies every predicate.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "K4".into(),
            graph: crate::graph::make_named(crate::graph::NamedGraph::Complete(4)).unwrap(),
        },
        CatalogEntry { name: "K33".into(), graph: crate::graph::complete_bipartite(3, 3) },
        CatalogEntry { name: "CROWN5".into(), graph: crown(5) },
        CatalogEntry { name: "Q26".into(), graph: frozen_q26() },
    ]
}

/// The crown graph `K_{n,n}` minus the perfect matching `(i, n+i)`.
pub fn crown(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                edges.push((i, n + j));
            }
        }
    }
    Graph::new(2 * n, &edges).expect("crown graph is simple")
}

fn frozen_q26() -> Graph {
    let edges = [
        (0, 4), (0, 6), (0, 8), (0, 24), (1, 7), (1, 8), (1, 10), (1, 15), (2, 5), (2, 8),
        (2, 9), (2, 12), (3, 8), (3, 22), (3, 23), (3, 25), (4, 12), (4, 18), (4, 25), (5, 15),
        (5, 20), (5, 23), (6, 13), (6, 15), (6, 21), (7, 9), (7, 19), (7, 20), (9, 14), (9, 18),
        (10, 11), (10, 17), (10, 25), (11, 18), (11, 19), (11, 21), (12, 13), (12, 17), (13, 19),
        (13, 22), (14, 16), (14, 21), (14, 23), (15, 16), (16, 19), (16, 24), (17, 23), (17, 24),
        (18, 22), (20, 21), (20, 25), (22, 24),
    ];
    Graph::new(26, &edges).expect("frozen gadget is simple")
}

/// Verifies a candidate against a request; returns the supply on success.
/// Every predicate is recomputed here, nothing is trusted.
pub fn verify_candidate(g: &Graph, req: &ProviderRequest, budget: Budget) -> Option<ImmuneSupply> {
    if g.n() == 0 || g.n() > req.max_vertices || !g.is_connected() {
        return None;
    }
    if !g.girth().at_least(req.min_girth) {
        return None;
    }
    if req.must_be_bipartite && !g.is_bipartite() {
        return None;
    }
    if req.needs_perfect_matching && has_perfect_matching(g).is_none() {
        return None;
    }
    let (s, t, d) = g.farthest_pair()?;
    if d < req.designated_distance {
        return None;
    }
    let cert = certify_immune(g, Prefer::Exhaustive, budget)?;
    Some(ImmuneSupply { graph: g.clone(), s, t, cert })
}

/// Searches for an immune graph meeting `req`: catalog first, then seeded
/// random regular graphs with girth repair. `None` means the budget ran out,
/// not that no such graph exists.
pub fn find_immune(req: &ProviderRequest) -> Option<ImmuneSupply> {
    find_immune_with_catalog(req, &builtin_catalog())
}

pub fn find_immune_with_catalog(req: &ProviderRequest, catalog: &[CatalogEntry]) -> Option<ImmuneSupply> {
    let budget = Budget::default();
    for entry in catalog {
        if let Some(supply) = verify_candidate(&entry.graph, req, budget) {
            return Some(supply);
        }
    }
    // Random search: regular graphs of growing degree and order, girth
    // repaired by edge swaps, then fully re-verified.
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    for degree in 4..=6 {
        let floor = moore_bound(degree, req.min_girth).max(degree + 1);
        let mut n = floor + (floor % 2);
        while n <= req.max_vertices {
            for _attempt in 0..30 {
                let Some(g) = random_regular_with_girth(n, degree, req.min_girth, req.must_be_bipartite, &mut rng)
                else {
                    continue;
                };
                if let Some(supply) = verify_candidate(&g, req, budget) {
                    return Some(supply);
                }
            }
            n += 2;
        }
    }
    None
}

/// Lower bound on the order of a graph with minimum degree `d` and girth `g`.
fn moore_bound(d: usize, g: usize) -> usize {
    if g <= 3 {
        return d + 1;
    }
    if g % 2 == 1 {
        let r = (g - 1) / 2;
        let mut total = 1usize;
        let mut layer = d;
        for _ in 0..r {
            total += layer;
            layer *= d - 1;
        }
        total
    } else {
        let r = g / 2;
        let mut total = 0usize;
        let mut layer = 1;
        for _ in 0..r {
            total += 2 * layer;
            layer *= d - 1;
        }
        total
    }
}

/// Random d-regular (optionally bipartite) graph via the pairing model, girth
/// repaired by degree-preserving 2-swaps. Returns `None` when repair stalls.
pub fn random_regular_with_girth(
    n: usize,
    d: usize,
    min_girth: usize,
    bipartite: bool,
    rng: &mut ChaCha8Rng,
) -> Option<Graph> {
    if n * d % 2 != 0 || d >= n || (bipartite && n % 2 != 0) {
        return None;
    }
    let g = if bipartite {
        random_regular_bipartite(n, d, rng)?
    } else {
        random_regular(n, d, rng)?
    };
    repair_girth(g, min_girth, bipartite, rng)
}

fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    'outer: for _ in 0..200 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        stubs.shuffle(rng);
        let mut b = crate::graph::GraphBuilder::new(n);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || b.has_edge(u, v) {
                continue 'outer;
            }
            b.add_edge(u, v).ok()?;
        }
        return Some(b.build());
    }
    None
}

fn random_regular_bipartite(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let half = n / 2;
    'outer: for _ in 0..200 {
        let mut b = crate::graph::GraphBuilder::new(n);
        for _ in 0..d {
            // One random perfect matching between the sides per degree unit.
            let mut perm: Vec<usize> = (0..half).collect();
            perm.shuffle(rng);
            for (u, &p) in perm.iter().enumerate() {
                if b.has_edge(u, half + p) {
                    continue 'outer;
                }
                b.add_edge(u, half + p).ok()?;
            }
        }
        return Some(b.build());
    }
    None
}

/// Breaks cycles shorter than `min_girth` by degree-preserving 2-swaps:
/// replace a bad edge `(a,b)` and a random edge `(c,d)` by `(a,d)` and
/// `(c,b)`, accepted only when neither new edge closes a short cycle.
fn repair_girth(g: Graph, min_girth: usize, bipartite: bool, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let side = |v: usize| if bipartite { usize::from(v >= n / 2) } else { 0 };

    for _round in 0..5_000 {
        let Some((a, b)) = short_cycle_edge(&adj, min_girth) else {
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect();
            return Graph::new(n, &edges).ok();
        };
        let all_edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect();
        let mut done = false;
        for _try in 0..600 {
            let (mut c, mut d) = all_edges[rng.gen_range(0..all_edges.len())];
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut c, &mut d);
            }
            // New edges (a,d) and (c,b) must cross sides when bipartite.
            if bipartite && side(d) != side(b) {
                std::mem::swap(&mut c, &mut d);
            }
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if adj[a].contains(&d) || adj[c].contains(&b) {
                continue;
            }
            adj[a].remove(&b);
            adj[b].remove(&a);
            adj[c].remove(&d);
            adj[d].remove(&c);
            let need = min_girth.saturating_sub(1);
            let ok = dist_at_least(&adj, a, d, need) && dist_at_least(&adj, c, b, need);
            adj[a].insert(d);
            adj[d].insert(a);
            adj[c].insert(b);
            adj[b].insert(c);
            if ok && cycle_through_edge_at_least(&adj, a, d, min_girth) && cycle_through_edge_at_least(&adj, c, b, min_girth)
            {
                done = true;
                break;
            }
            // Revert.
            adj[a].remove(&d);
            adj[d].remove(&a);
            adj[c].remove(&b);
            adj[b].remove(&c);
            adj[a].insert(b);
            adj[b].insert(a);
            adj[c].insert(d);
            adj[d].insert(c);
        }
        if !done {
            return None;
        }
    }
    None
}

/// Some edge lying on a cycle shorter than `min_girth`, if any.
fn short_cycle_edge(adj: &[std::collections::BTreeSet<usize>], min_girth: usize) -> Option<(usize, usize)> {
    for u in 0..adj.len() {
        for &v in &adj[u] {
            if v > u && !cycle_through_edge_at_least(adj, u, v, min_girth) {
                return Some((u, v));
            }
        }
    }
    None
}

/// True iff every cycle through edge `(u,v)` has length at least `min_girth`,
/// i.e. the shortest u-v path avoiding the edge has length >= min_girth - 1.
fn cycle_through_edge_at_least(adj: &[std::collections::BTreeSet<usize>], u: usize, v: usize, min_girth: usize) -> bool {
    use std::collections::VecDeque;
    let limit = min_girth.saturating_sub(1);
    let mut dist = vec![usize::MAX; adj.len()];
    dist[u] = 0;
    let mut q = VecDeque::from([u]);
    while let Some(x) = q.pop_front() {
        if dist[x] + 1 >= limit {
            continue;
        }
        for &w in &adj[x] {
            if x == u && w == v {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                if w == v {
                    return false;
                }
                q.push_back(w);
            }
        }
    }
    true
}

/// True iff the distance from `s` to `t` is at least `need`.
fn dist_at_least(adj: &[std::collections::BTreeSet<usize>], s: usize, t: usize, need: usize) -> bool {
    use std::collections::VecDeque;
    if s == t {
        return need == 0;
    }
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        if dist[x] + 1 >= need {
            continue;
        }
        for &w in &adj[x] {
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                if w == t {
                    return false;
                }
                q.push_back(w);
            }
        }
    }
    true
}

/// Caching provider of verified immune building blocks.
///
/// The gadget builders stamp many copies of the same `I(s,t)` template, so
/// identical requests must resolve to the same supply; the cache also keeps
/// repeated reductions cheap.
#[derive(Debug, Clone)]
pub struct ImmuneProvider {
    catalog: Vec<CatalogEntry>,
    seed: u64,
    cache: std::collections::BTreeMap<ProviderRequest, Option<ImmuneSupply>>,
}

impl ImmuneProvider {
    pub fn new(seed: u64) -> ImmuneProvider {
        ImmuneProvider { catalog: builtin_catalog(), seed, cache: Default::default() }
    }

    pub fn with_catalog(seed: u64, catalog: Vec<CatalogEntry>) -> ImmuneProvider {
        ImmuneProvider { catalog, seed, cache: Default::default() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn supply(&mut self, mut req: ProviderRequest) -> Option<ImmuneSupply> {
        req.seed = self.seed;
        if let Some(hit) = self.cache.get(&req) {
            return hit.clone();
        }
        let result = find_immune_with_catalog(&req, &self.catalog);
        self.cache.insert(req, result.clone());
        result
    }

    /// The standard request for an `I(s,t)` attachment at girth `g`:
    /// immune, girth at least `g`, designated vertices at distance at least
    /// `g/2` rounded down.
    pub fn attachment_request(g: usize) -> ProviderRequest {
        ProviderRequest {
            min_girth: g,
            must_be_bipartite: false,
            needs_perfect_matching: false,
            designated_distance: g / 2,
            max_vertices: 60,
            ..Default::default()
        }
    }
}

/// Identifies vertex `v2` of `g2` with vertex `v1` of `g1`; the amalgam of
/// two immune graphs at a single vertex is again immune.
pub fn identify_at_vertex(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Graph {
    let mut b = crate::graph::GraphBuilder::new(g1.n());
    for &(u, v) in g1.edges() {
        b.add_edge(u, v).unwrap();
    }
    let mut map = vec![usize::MAX; g2.n()];
    map[v2] = v1;
    for w in 0..g2.n() {
        if w != v2 {
            map[w] = b.add_vertex();
        }
    }
    for &(u, v) in g2.edges() {
        b.add_edge(map[u], map[v]).unwrap();
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, make_named, NamedGraph};

    fn k4() -> Graph {
        make_named(NamedGraph::Complete(4)).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    #[test]
    fn edge_expansion_examples() {
        assert_eq!(edge_expansion(&k4()).unwrap(), Rational64::new(2, 1));
        let c6 = make_named(NamedGraph::Cycle(6)).unwrap();
        assert_eq!(edge_expansion(&c6).unwrap(), Rational64::new(2, 3));
        assert_eq!(edge_expansion(&complete_bipartite(3, 3)).unwrap(), Rational64::new(5, 3));
    }

    #[test]
    fn lambda2_examples() {
        assert!((lambda2(&k4(), 1e-9).unwrap() + 1.0).abs() < 1e-9);
        let c4 = make_named(NamedGraph::Cycle(4)).unwrap();
        assert!(lambda2(&c4, 1e-9).unwrap().abs() < 1e-9);
        assert!((lambda2(&petersen(), 1e-9).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spectral_certificate_for_k4() {
        let cert = certify_immune(&k4(), Prefer::Spectral, Budget::default()).unwrap();
        match cert.method {
            CertMethod::Spectral { d, lambda2, bound, .. } => {
                assert_eq!(d, 3);
                assert!((lambda2 + 1.0).abs() < 1e-6);
                assert!((bound - 2.0).abs() < 1e-6);
            }
            other => panic!("expected spectral certificate, got {other:?}"),
        }
    }

    #[test]
    fn c6_has_no_certificate() {
        let c6 = make_named(NamedGraph::Cycle(6)).unwrap();
        assert!(certify_immune(&c6, Prefer::Spectral, Budget::default()).is_none());
    }

    #[test]
    fn p6_exhaustive_route_finds_the_cut() {
        let p6 = make_named(NamedGraph::Path(6)).unwrap();
        assert!(certify_immune(&p6, Prefer::Exhaustive, Budget::default()).is_none());
        assert!(!is_immune(&p6, Budget::default()).unwrap());
    }

    #[test]
    fn immunity_examples() {
        assert!(is_immune(&k4(), Budget::default()).unwrap());
        assert!(is_immune(&complete_bipartite(3, 3), Budget::default()).unwrap());
        let c6 = make_named(NamedGraph::Cycle(6)).unwrap();
        assert!(!is_immune(&c6, Budget::default()).unwrap());
        assert!(!is_immune(&petersen(), Budget::default()).unwrap(), "spokes form a matching cut");
    }

    #[test]
    fn expansion_consistent_with_spectral_bound() {
        // h(G) >= (d - lambda2)/2 - tol for small regular graphs.
        let graphs = vec![
            k4(),
            complete_bipartite(3, 3),
            make_named(NamedGraph::Cycle(6)).unwrap(),
            make_named(NamedGraph::Cycle(8)).unwrap(),
            make_named(NamedGraph::Complete(5)).unwrap(),
            petersen(),
            make_named(NamedGraph::Complete(6)).unwrap(),
            complete_bipartite(4, 4),
        ];
        for g in &graphs {
            let d = g.profile().regular_degree.expect("test graphs are regular") as f64;
            let l2 = lambda2(g, 1e-9).unwrap();
            let h = edge_expansion(g).unwrap();
            let h_f = *h.numer() as f64 / *h.denom() as f64;
            assert!(h_f >= (d - l2) / 2.0 - 1e-6, "violated on {g:?}");
        }
    }

    #[test]
    fn find_immune_basic_requests() {
        // Girth 3, distance 1: K_4 qualifies.
        let req = ProviderRequest { min_girth: 3, designated_distance: 1, ..Default::default() };
        let supply = find_immune(&req).unwrap();
        assert_eq!(supply.graph.n(), 4);
        assert_eq!(supply.graph.distance(supply.s, supply.t), Some(1));

        // Girth 4, bipartite, perfect matching, distance 2: K_{3,3}.
        let req = ProviderRequest {
            min_girth: 4,
            must_be_bipartite: true,
            needs_perfect_matching: true,
            designated_distance: 2,
            ..Default::default()
        };
        let supply = find_immune(&req).unwrap();
        assert_eq!(supply.graph.n(), 6);
        assert!(supply.graph.distance(supply.s, supply.t).unwrap() >= 2);

        // Impossible budget.
        let req = ProviderRequest { max_vertices: 2, ..Default::default() };
        assert!(find_immune(&req).is_none());
    }

    #[test]
    fn amalgams_of_immune_graphs_are_immune() {
        let pairs = [
            (k4(), k4()),
            (k4(), complete_bipartite(3, 3)),
            (complete_bipartite(3, 3), complete_bipartite(3, 3)),
        ];
        for (a, b) in pairs {
            let glued = identify_at_vertex(&a, 0, &b, 0);
            assert!(glued.n() <= 20);
            assert!(is_immune(&glued, Budget::default()).unwrap(), "amalgam lost immunity");
        }
    }

    #[test]
    fn immune_certificates_are_sound_on_small_graphs() {
        use crate::solvers::{brute_force_decide, Problem};
        let candidates = vec![
            k4(),
            complete_bipartite(3, 3),
            make_named(NamedGraph::Complete(5)).unwrap(),
            make_named(NamedGraph::Cycle(3)).unwrap(),
        ];
        for g in candidates {
            if certify_immune(&g, Prefer::Spectral, Budget::default()).is_some() {
                let brute = brute_force_decide(Problem::MatchingCut, &g).unwrap();
                assert!(!brute.answer, "certificate issued for a non-immune graph");
            }
        }
    }

    #[test]
    fn girth_of_moore_bound() {
        assert_eq!(moore_bound(3, 5), 10); // Petersen order
        assert_eq!(moore_bound(3, 6), 14); // Heawood order
        assert_eq!(moore_bound(4, 8), 80);
    }

    #[test]
    fn builtin_catalog_entries_verify() {
        for entry in builtin_catalog() {
            let p = entry.graph.profile();
            assert!(p.connected, "{} disconnected", entry.name);
            assert!(
                is_immune(&entry.graph, Budget::default()).unwrap(),
                "{} is not immune",
                entry.name
            );
        }
        let crown5 = crown(5);
        let p = crown5.profile();
        assert!(p.bipartite);
        assert_eq!(p.regular_degree, Some(4));
        assert_eq!(p.girth, Girth::Finite(4));
        assert_eq!(crown5.distance(0, 5), Some(3), "removed pair sits at distance 3");

        let q26 = frozen_q26();
        let p = q26.profile();
        assert_eq!(p.regular_degree, Some(4));
        assert_eq!(p.girth, Girth::Finite(5));
        assert_eq!(q26.farthest_pair().unwrap().2, 4);
        assert!(has_perfect_matching(&q26).is_some());
    }
}
