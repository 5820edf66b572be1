//! Generators for the gadget graphs behind the reductions.
//!
//! * [`build_t`] — the triangle-strip edge gadget whose valid colourings are
//!   either monochromatic or split exactly at the two cross edges.
//! * [`build_g`] — the diamond-column edge gadget with the analogous
//!   dichotomy for perfect-extendable colourings.
//! * [`build_hprime`] / [`build_h`] — immune chain links with perfect
//!   matchings both with and without their endpoints.
//! * [`build_variable_chain`] / [`add_clause_gadget`] /
//!   [`colour_clause_aux`] — the variable and clause machinery of the SAT
//!   reduction.

use thiserror::Error;

use crate::colouring::Colour;
use crate::graph::{Girth, Graph, GraphBuilder, GraphError};
use crate::immunity::{ImmuneProvider, ImmuneSupply, ProviderRequest};
use crate::matching::{has_perfect_matching, Matching, MatchingError};
use crate::solvers::Budget;
use crate::trace::{ReductionTrace, RoleKind, RoleOrigin, VertexRole};

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("gadget index must be at least 1")]
    IndexTooSmall,
    #[error("girth parameter must be at least 3, got {0}")]
    GirthTooSmall(usize),
    #[error("cycle length must be a positive multiple of 4, got {0}")]
    BadCycleLength(usize),
    #[error("cycle length {ell} is below the girth target {g}")]
    CycleLengthBelowGirth { ell: usize, g: usize },
    #[error("expected {expected} ports, got {got}")]
    PortCount { got: usize, expected: usize },
    #[error("designated vertices must be distinct")]
    DesignatedNotDistinct,
    #[error("matching does not cover vertex {0}")]
    NotPerfect(usize),
    #[error("matched partners of the designated vertices collide")]
    PartnersCollide,
    #[error("base girth {got} is below the target {need}")]
    BaseGirthTooLow { got: Girth, need: usize },
    #[error("partner distance {got} is below the required {need}")]
    PartnerDistanceTooLow { got: usize, need: usize },
    #[error("immune provider could not satisfy {0:?}")]
    ProviderFailure(ProviderRequest),
    #[error("constructed gadget failed verification: {0}")]
    Verification(String),
    #[error("true-literal position {k} out of range 1..={g}")]
    BadTruePosition { k: usize, g: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// Graph-plus-trace assembly used by all gadget builders.
#[derive(Debug, Clone)]
pub struct Assembly {
    pub builder: GraphBuilder,
    pub trace: ReductionTrace,
}

impl Default for Assembly {
    fn default() -> Self {
        Assembly::new()
    }
}

impl Assembly {
    pub fn new() -> Assembly {
        Assembly { builder: GraphBuilder::new(0), trace: ReductionTrace::new() }
    }

    pub fn add(&mut self, role: VertexRole) -> usize {
        let v = self.builder.add_vertex();
        let t = self.trace.push(role);
        debug_assert_eq!(v, t);
        v
    }

    pub fn edge(&mut self, u: usize, v: usize) -> Result<(), GadgetError> {
        self.builder.add_edge(u, v)?;
        Ok(())
    }

    /// Grafts a fresh copy of `template` into the assembly. Template
    /// vertices listed in `anchors` are identified with existing host
    /// vertices; the rest are created fresh with roles from `role_for`.
    /// Returns the full template-to-host vertex map.
    pub fn graft_graph(
        &mut self,
        template: &Graph,
        anchors: &[(usize, usize)],
        mut role_for: impl FnMut(usize) -> VertexRole,
    ) -> Result<Vec<usize>, GadgetError> {
        let mut map = vec![usize::MAX; template.n()];
        for &(tmpl, host) in anchors {
            map[tmpl] = host;
        }
        for w in 0..template.n() {
            if map[w] == usize::MAX {
                map[w] = self.add(role_for(w));
            }
        }
        for &(a, b) in template.edges() {
            self.edge(map[a], map[b])?;
        }
        Ok(map)
    }

    /// Grafts a fresh copy of an immune template into the assembly: the
    /// template's `s` is identified with `s_host`, its `t` either with an
    /// existing vertex or a fresh one carrying `t_role`. Interior vertices
    /// get `ImmuneInternal` roles with the given origin.
    pub fn graft_immune(
        &mut self,
        template: &ImmuneSupply,
        s_host: usize,
        t_host: Option<usize>,
        t_role: Option<VertexRole>,
        interior_origin: RoleOrigin,
        interior_index: &[usize],
    ) -> Result<usize, GadgetError> {
        let t_id = match t_host {
            Some(t) => t,
            None => self.add(t_role.expect("fresh t needs a role")),
        };
        let interior = |w: usize| {
            let mut index = interior_index.to_vec();
            index.push(w);
            VertexRole::new(RoleKind::ImmuneInternal, interior_origin, index)
        };
        self.graft_graph(&template.graph, &[(template.s, s_host), (template.t, t_id)], interior)?;
        Ok(t_id)
    }

    pub fn finish(self) -> (Graph, ReductionTrace) {
        (self.builder.build(), self.trace)
    }
}

/// The triangle-strip edge gadget.
///
/// Two squared paths (each consecutive triple a triangle): the u-strip on
/// `u, u_1, ..., u_{2i}` and the v-strip on `v, v_1, ..., v_{2i}`, plus the
/// cross edges `u-v_{2i}` and `v-u_{2i}`. 4i new vertices, 8i edges.
#[derive(Debug, Clone)]
pub struct TGadget {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
    /// `u_1..u_{2i}` in order.
    pub u_strip: Vec<usize>,
    /// `v_1..v_{2i}` in order.
    pub v_strip: Vec<usize>,
    pub trace: ReductionTrace,
}

impl TGadget {
    /// The forced cut edges in the bi-chromatic case: `u-v_{2i}`, `v-u_{2i}`.
    pub fn cross_edges(&self) -> [(usize, usize); 2] {
        [(self.u, *self.v_strip.last().unwrap()), (self.v, *self.u_strip.last().unwrap())]
    }
}

pub fn build_t(i: usize) -> Result<TGadget, GadgetError> {
    if i < 1 {
        return Err(GadgetError::IndexTooSmall);
    }
    let mut asm = Assembly::new();
    let u = asm.add(VertexRole::original(0));
    let v = asm.add(VertexRole::original(1));
    let origin = RoleOrigin::SourceEdge(0, 1);
    let u_strip: Vec<usize> =
        (1..=2 * i).map(|j| asm.add(VertexRole::new(RoleKind::StripU, origin, vec![j]))).collect();
    let v_strip: Vec<usize> =
        (1..=2 * i).map(|j| asm.add(VertexRole::new(RoleKind::StripV, origin, vec![j]))).collect();
    strip_edges(&mut asm, u, &u_strip)?;
    strip_edges(&mut asm, v, &v_strip)?;
    asm.edge(u, *v_strip.last().unwrap())?;
    asm.edge(v, *u_strip.last().unwrap())?;
    let (graph, trace) = asm.finish();
    Ok(TGadget { graph, u, v, u_strip, v_strip, trace })
}

/// Squared-path edges over `head, strip[0], strip[1], ...`.
fn strip_edges(asm: &mut Assembly, head: usize, strip: &[usize]) -> Result<(), GadgetError> {
    let chain: Vec<usize> = std::iter::once(head).chain(strip.iter().copied()).collect();
    for w in chain.windows(2) {
        asm.edge(w[0], w[1])?;
    }
    for w in chain.windows(3) {
        asm.edge(w[0], w[2])?;
    }
    Ok(())
}

/// The diamond-column edge gadget.
///
/// Columns `c_0 = (u, u')`, internal columns `c_1..c_{i+1}` of top/bottom
/// pairs, and `c_{i+2} = (v', v)`. Every column has its vertical edge; `u`
/// and `u'` attach straight to the first column (no diagonal), and
/// consecutive columns from `c_1` on are joined by top-top, bottom-bottom and
/// bottom-top edges, so each consecutive pair induces a diamond. 2i+4 new
/// vertices; |V| = 2i+6 is even.
#[derive(Debug, Clone)]
pub struct GGadget {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
    pub u_prime: usize,
    pub v_prime: usize,
    /// Tops of the internal columns `c_1..c_{i+1}`.
    pub tops: Vec<usize>,
    /// Bottoms of the internal columns `c_1..c_{i+1}`.
    pub bots: Vec<usize>,
    pub i: usize,
    pub trace: ReductionTrace,
}

impl GGadget {
    /// All gadget vertices except `u` and `v`.
    pub fn interior(&self) -> Vec<usize> {
        let mut out = vec![self.u_prime, self.v_prime];
        out.extend(&self.tops);
        out.extend(&self.bots);
        out.sort_unstable();
        out
    }

    /// Witness matching: `u,v` same colour and the source edge matched —
    /// all column edges.
    pub fn schema_same_matched(&self) -> Vec<(usize, usize)> {
        let mut m = vec![(self.u, self.u_prime), (self.v_prime, self.v)];
        for k in 0..self.tops.len() {
            m.push((self.tops[k], self.bots[k]));
        }
        m
    }

    /// Witness matching: `u,v` same colour, source edge unmatched — covers
    /// the interior only. Requires odd `i` (the tops pair up only then).
    pub fn schema_same_unmatched(&self) -> Vec<(usize, usize)> {
        assert!(self.i % 2 == 1, "interior pairing needs odd i");
        let last = self.tops.len() - 1; // index of column i+1
        let mut m = vec![(self.u_prime, self.bots[0]), (self.v_prime, self.bots[last])];
        let mut k = 0;
        while k < last {
            m.push((self.tops[k], self.tops[k + 1]));
            k += 2;
        }
        let mut k = 1;
        while k + 1 < last {
            m.push((self.bots[k], self.bots[k + 1]));
            k += 2;
        }
        m
    }

    /// Witness matching: `u,v` differently coloured — the two forced cut
    /// edges, `v-v'`, and the remaining columns.
    pub fn schema_bichromatic(&self) -> Vec<(usize, usize)> {
        let mut m = vec![(self.u, self.tops[0]), (self.u_prime, self.bots[0]), (self.v, self.v_prime)];
        for k in 1..self.tops.len() {
            m.push((self.tops[k], self.bots[k]));
        }
        m
    }
}

pub fn build_g(i: usize) -> Result<GGadget, GadgetError> {
    if i < 1 {
        return Err(GadgetError::IndexTooSmall);
    }
    let mut asm = Assembly::new();
    let origin = RoleOrigin::SourceEdge(0, 1);
    let u = asm.add(VertexRole::original(0));
    let v = asm.add(VertexRole::original(1));
    let u_prime = asm.add(VertexRole::new(RoleKind::ColumnBottom, origin, vec![0]));
    let v_prime = asm.add(VertexRole::new(RoleKind::ColumnTop, origin, vec![i + 2]));
    let tops: Vec<usize> =
        (1..=i + 1).map(|k| asm.add(VertexRole::new(RoleKind::ColumnTop, origin, vec![k]))).collect();
    let bots: Vec<usize> =
        (1..=i + 1).map(|k| asm.add(VertexRole::new(RoleKind::ColumnBottom, origin, vec![k]))).collect();

    asm.edge(u, u_prime)?;
    asm.edge(u, tops[0])?;
    asm.edge(u_prime, bots[0])?;
    for k in 0..=i {
        asm.edge(tops[k], bots[k])?;
    }
    for k in 0..i {
        asm.edge(tops[k], tops[k + 1])?;
        asm.edge(bots[k], bots[k + 1])?;
        asm.edge(bots[k], tops[k + 1])?;
    }
    asm.edge(tops[i], v_prime)?;
    asm.edge(bots[i], v)?;
    asm.edge(bots[i], v_prime)?;
    asm.edge(v_prime, v)?;

    let (graph, trace) = asm.finish();
    Ok(GGadget { graph, u, v, u_prime, v_prime, tops, bots, i, trace })
}

/// A chain link: an immune base with designated vertices `s, t` whose matched
/// partners `x, y` have been joined by one extra edge, giving perfect
/// matchings of both the link and the link minus `{s, t}`.
#[derive(Debug, Clone)]
pub struct HPrime {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub x: usize,
    pub y: usize,
    pub pm_full: Matching,
    pub pm_minus_st: Matching,
}

/// Builds `H'(s,t)` from a certified immune base with perfect matching `m`.
///
/// The caller guarantees immunity of the base; adding an edge only removes
/// valid colourings, so the result stays immune. For the output to keep
/// girth at least `g`, the matched partners `x = m(s)`, `y = m(t)` must lie
/// at distance at least `g - 1`; a base of girth at least `2(g+1)` with
/// `s, t` at distance at least `g + 1` always satisfies this.
pub fn build_hprime(base: &Graph, s: usize, t: usize, m: &Matching, g: usize) -> Result<HPrime, GadgetError> {
    if g < 3 {
        return Err(GadgetError::GirthTooSmall(g));
    }
    if s == t {
        return Err(GadgetError::DesignatedNotDistinct);
    }
    if !m.is_perfect(base) {
        let uncovered = (0..base.n()).find(|&v| m.partner(v).is_none()).unwrap_or(0);
        return Err(GadgetError::NotPerfect(uncovered));
    }
    let base_girth = base.girth();
    if !base_girth.at_least(g) {
        return Err(GadgetError::BaseGirthTooLow { got: base_girth, need: g });
    }
    let x = m.partner(s).expect("perfect matching covers s");
    let y = m.partner(t).expect("perfect matching covers t");
    if x == y || x == t || y == s {
        return Err(GadgetError::PartnersCollide);
    }
    let dist = base.distance(x, y).unwrap_or(usize::MAX);
    if dist < g - 1 {
        return Err(GadgetError::PartnerDistanceTooLow { got: dist, need: g - 1 });
    }

    let mut b = GraphBuilder::new(base.n());
    for &(a2, b2) in base.edges() {
        b.add_edge(a2, b2)?;
    }
    b.add_edge(x, y)?;
    let graph = b.build();

    if !graph.girth().at_least(g) {
        return Err(GadgetError::Verification(format!("H' girth {} below target {g}", graph.girth())));
    }
    let pm_full = Matching::new(&graph, m.edges().to_vec())?;
    let mut reduced: Vec<(usize, usize)> = m
        .edges()
        .iter()
        .copied()
        .filter(|&(a2, b2)| a2 != s && a2 != t && b2 != s && b2 != t)
        .collect();
    reduced.push((x.min(y), x.max(y)));
    let pm_minus_st = Matching::new(&graph, reduced)?;
    if 2 * pm_minus_st.len() != graph.n() - 2 {
        return Err(GadgetError::Verification("H' - {s,t} matching is not perfect".into()));
    }
    Ok(HPrime { graph, s, t, x, y, pm_full, pm_minus_st })
}

/// The chain gadget `H(s,t)`: `k` copies of one `H'` link, with consecutive
/// endpoints identified.
#[derive(Debug, Clone)]
pub struct HGadget {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub copies: usize,
    pub pm_full: Matching,
    pub pm_minus_st: Matching,
}

/// Number of chained copies at girth target `g`: ceil(g/6), bumped to the
/// next integer when even — odd so the alternating matchings close up.
pub fn h_copy_count(g: usize) -> usize {
    let k = g.div_ceil(6);
    if k % 2 == 1 {
        k
    } else {
        k + 1
    }
}

/// Builds `H(s,t)` for girth target `g` and verifies the chain-link
/// properties: immunity, girth, and the two alternating perfect matchings.
pub fn build_h(g: usize, provider: &mut ImmuneProvider) -> Result<HGadget, GadgetError> {
    if g < 3 {
        return Err(GadgetError::GirthTooSmall(g));
    }
    // Paper-strength request first, then the weaker one that the partner
    // checks in build_hprime make sufficient.
    let requests = [
        ProviderRequest {
            min_girth: 2 * (g + 1),
            needs_perfect_matching: true,
            designated_distance: g + 1,
            max_vertices: 60,
            ..Default::default()
        },
        ProviderRequest {
            min_girth: g,
            needs_perfect_matching: true,
            designated_distance: g.saturating_sub(1),
            max_vertices: 60,
            ..Default::default()
        },
    ];
    let mut last_req = requests[0];
    for req in requests {
        last_req = req;
        let Some(supply) = provider.supply(req) else { continue };
        if let Some(hp) = select_hprime(&supply.graph, g) {
            return chain_hprime(&hp, g);
        }
    }
    Err(GadgetError::ProviderFailure(last_req))
}

/// Picks `x, y, s, t` and a perfect matching through `(x,s)` and `(y,t)` so
/// that `build_hprime` accepts: partners at distance at least `g-1`, and
/// endpoints far enough apart that a cycle crossing the link twice has
/// length at least `g` once the chain multiplies the crossing distance.
fn select_hprime(base: &Graph, g: usize) -> Option<HPrime> {
    let need_xy = g - 1;
    let need_st = g.div_ceil(2).min(3);
    let n = base.n();
    for x in 0..n {
        let dist_x = base.bfs_distances(x);
        for y in 0..n {
            if y == x || dist_x[y].is_none_or(|d| d < need_xy) {
                continue;
            }
            for &s in base.adj(x) {
                if s == y {
                    continue;
                }
                let dist_s = base.bfs_distances(s);
                for &t in base.adj(y) {
                    if t == x || t == s || dist_s[t].is_none_or(|d| d < need_st) {
                        continue;
                    }
                    // A perfect matching containing (x,s) and (y,t) is a
                    // perfect matching of the graph minus those four.
                    let rest: Vec<usize> = (0..n).filter(|&w| ![x, s, y, t].contains(&w)).collect();
                    let (sub, back) = base.induced(&rest);
                    let Some(m) = has_perfect_matching(&sub) else { continue };
                    let mut edges: Vec<(usize, usize)> = m
                        .edges()
                        .iter()
                        .map(|&(a, b)| (back[a].min(back[b]), back[a].max(back[b])))
                        .collect();
                    edges.push((x.min(s), x.max(s)));
                    edges.push((y.min(t), y.max(t)));
                    let Ok(pm) = Matching::new(base, edges) else { continue };
                    if let Ok(hp) = build_hprime(base, s, t, &pm, g) {
                        return Some(hp);
                    }
                }
            }
        }
    }
    None
}

fn chain_hprime(hp: &HPrime, g: usize) -> Result<HGadget, GadgetError> {
    let k = h_copy_count(g);
    let link = &hp.graph;
    let mut b = GraphBuilder::new(0);
    let mut maps: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut prev_t = usize::MAX;
    for copy in 0..k {
        let mut map = vec![usize::MAX; link.n()];
        for w in 0..link.n() {
            if copy > 0 && w == hp.s {
                map[w] = prev_t;
            } else {
                map[w] = b.add_vertex();
            }
        }
        for &(a2, b2) in link.edges() {
            b.add_edge(map[a2], map[b2])?;
        }
        prev_t = map[hp.t];
        maps.push(map);
    }
    let graph = b.build();
    let s = maps[0][hp.s];
    let t = maps[k - 1][hp.t];

    let map_edges = |copy: usize, m: &Matching| -> Vec<(usize, usize)> {
        m.edges()
            .iter()
            .map(|&(a2, b2)| {
                let (p, q) = (maps[copy][a2], maps[copy][b2]);
                (p.min(q), p.max(q))
            })
            .collect()
    };
    // Alternating witnesses: the full matching uses whole-link matchings on
    // copies 1, 3, 5, ... and reduced ones in between; the matching avoiding
    // both endpoints flips the alternation.
    let mut full = Vec::new();
    let mut minus = Vec::new();
    for copy in 0..k {
        if copy % 2 == 0 {
            full.extend(map_edges(copy, &hp.pm_full));
            minus.extend(map_edges(copy, &hp.pm_minus_st));
        } else {
            full.extend(map_edges(copy, &hp.pm_minus_st));
            minus.extend(map_edges(copy, &hp.pm_full));
        }
    }
    let pm_full = Matching::new(&graph, full)?;
    if !pm_full.is_perfect(&graph) {
        return Err(GadgetError::Verification("H chain matching is not perfect".into()));
    }
    let pm_minus_st = Matching::new(&graph, minus)?;
    if 2 * pm_minus_st.len() != graph.n() - 2
        || pm_minus_st.partner(s).is_some()
        || pm_minus_st.partner(t).is_some()
    {
        return Err(GadgetError::Verification("H - {s,t} matching is not perfect".into()));
    }
    if !graph.girth().at_least(g) {
        return Err(GadgetError::Verification(format!("H girth {} below target {g}", graph.girth())));
    }
    match crate::immunity::is_immune(&graph, Budget::default()) {
        Ok(true) => {}
        Ok(false) => return Err(GadgetError::Verification("H chain is not immune".into())),
        Err(e) => return Err(GadgetError::Verification(format!("immunity check failed: {e}"))),
    }
    Ok(HGadget { graph, s, t, copies: k, pm_full, pm_minus_st })
}

/// Smallest positive multiple of 4 that is at least `g`.
pub fn ell_for_girth(g: usize) -> usize {
    (g.div_ceil(4) * 4).max(4)
}

/// Vertex bookkeeping for one variable gadget: two hubs, each with `ell/2`
/// cycle ports and `g` clause ports, every port attached through a fresh
/// immune copy.
#[derive(Debug, Clone)]
pub struct VariableGadgetIds {
    pub hub_v: usize,
    pub hub_u: usize,
    /// Cycle ports `v^1..v^{ell/2}` / `u^1..u^{ell/2}`.
    pub cycle_v: Vec<usize>,
    pub cycle_u: Vec<usize>,
    /// Clause ports `v_1..v_g` / `u_1..u_g`, indexed by occurrence ordinal.
    pub clause_v: Vec<usize>,
    pub clause_u: Vec<usize>,
}

/// Builds the variable gadgets for `n_vars` variables into `asm` and links
/// consecutive gadgets with an alternating cycle of length exactly `ell`.
pub fn build_variable_chain(
    asm: &mut Assembly,
    n_vars: usize,
    ell: usize,
    g: usize,
    template: &ImmuneSupply,
) -> Result<Vec<VariableGadgetIds>, GadgetError> {
    if ell == 0 || ell % 4 != 0 {
        return Err(GadgetError::BadCycleLength(ell));
    }
    if ell < g {
        return Err(GadgetError::CycleLengthBelowGirth { ell, g });
    }
    let mut vars = Vec::with_capacity(n_vars);
    for var in 0..n_vars {
        let origin = RoleOrigin::Variable(var);
        let hub_v = asm.add(VertexRole::new(RoleKind::Hub, origin, vec![0]));
        let hub_u = asm.add(VertexRole::new(RoleKind::Hub, origin, vec![1]));
        let mut port_block =
            |asm: &mut Assembly, hub: usize, side: usize, kind: RoleKind, count: usize| {
                (1..=count)
                    .map(|j| {
                        let tag = if kind == RoleKind::CyclePort { 0 } else { 1 };
                        asm.graft_immune(
                            template,
                            hub,
                            None,
                            Some(VertexRole::new(kind, origin, vec![side, j])),
                            origin,
                            &[side, tag, j],
                        )
                    })
                    .collect::<Result<Vec<usize>, _>>()
            };
        let cycle_v = port_block(asm, hub_v, 0, RoleKind::CyclePort, ell / 2)?;
        let clause_v = port_block(asm, hub_v, 0, RoleKind::ClausePort, g)?;
        let cycle_u = port_block(asm, hub_u, 1, RoleKind::CyclePort, ell / 2)?;
        let clause_u = port_block(asm, hub_u, 1, RoleKind::ClausePort, g)?;
        vars.push(VariableGadgetIds { hub_v, hub_u, cycle_v, cycle_u, clause_v, clause_u });
    }

    let q = ell / 4;
    for i in 0..n_vars.saturating_sub(1) {
        let hi = &vars[i];
        let lo = &vars[i + 1];
        // Upper-half ports of gadget i meet lower-half ports of gadget i+1,
        // alternating the u and v sides so the link closes into one cycle.
        let mut added = Vec::with_capacity(ell);
        for j in 1..=q {
            added.push((hi.cycle_v[q + j - 1], lo.cycle_v[j - 1]));
            added.push((hi.cycle_u[q + j - 1], lo.cycle_u[j - 1]));
            added.push((lo.cycle_u[j - 1], hi.cycle_v[q + (j % q)]));
            added.push((hi.cycle_u[q + j - 1], lo.cycle_v[j - 1]));
        }
        for &(a, b) in &added {
            asm.edge(a, b)?;
        }
        if !forms_single_cycle(&added, ell) {
            return Err(GadgetError::Verification(format!(
                "inter-gadget link between variables {i} and {} is not one {ell}-cycle",
                i + 1
            )));
        }
    }
    Ok(vars)
}

/// Checks that an edge set forms exactly one cycle of the given length.
fn forms_single_cycle(edges: &[(usize, usize)], len: usize) -> bool {
    use std::collections::BTreeMap;
    if edges.len() != len {
        return false;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() != len || adj.values().any(|l| l.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().unwrap();
    let mut prev = start;
    let mut cur = adj[&start][0];
    let mut steps = 1;
    while cur != start {
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > len {
            return false;
        }
    }
    steps == len
}

/// Vertex bookkeeping for one clause gadget.
#[derive(Debug, Clone)]
pub struct ClauseGadgetIds {
    pub v_c: usize,
    /// Clause cycle vertices `u_c^1..u_c^g`.
    pub u_c: Vec<usize>,
    /// Auxiliary vertices `a_1..a_g` and `b_1..b_g`.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Adds one clause gadget over the given `g` v-ports and `g` u-ports: the
/// clause centre adjacent to every v-port; per position `k` the auxiliaries
/// `a_k, b_k` on u-port `k`; the cycle edges `a_k-u_c^k` and
/// `b_k-u_c^{k+1 mod g}`; and the chord `a_1-b_{g/2}` (floor).
pub fn add_clause_gadget(
    asm: &mut Assembly,
    clause: usize,
    g: usize,
    v_ports: &[usize],
    u_ports: &[usize],
) -> Result<ClauseGadgetIds, GadgetError> {
    if g < 3 {
        return Err(GadgetError::GirthTooSmall(g));
    }
    for ports in [v_ports, u_ports] {
        if ports.len() != g {
            return Err(GadgetError::PortCount { got: ports.len(), expected: g });
        }
    }
    let origin = RoleOrigin::Clause(clause);
    let v_c = asm.add(VertexRole::new(RoleKind::ClauseVertex, origin, vec![0]));
    let u_c: Vec<usize> =
        (1..=g).map(|k| asm.add(VertexRole::new(RoleKind::ClauseVertex, origin, vec![1, k]))).collect();
    let a: Vec<usize> = (1..=g).map(|k| asm.add(VertexRole::new(RoleKind::AuxA, origin, vec![k]))).collect();
    let b: Vec<usize> = (1..=g).map(|k| asm.add(VertexRole::new(RoleKind::AuxB, origin, vec![k]))).collect();
    for k in 0..g {
        asm.edge(v_c, v_ports[k])?;
        asm.edge(a[k], u_ports[k])?;
        asm.edge(b[k], u_ports[k])?;
        asm.edge(a[k], u_c[k])?;
        asm.edge(b[k], u_c[(k + 1) % g])?;
    }
    asm.edge(a[0], b[g / 2 - 1])?;
    Ok(ClauseGadgetIds { v_c, u_c, a, b })
}

/// Colours of the auxiliary vertices of one clause gadget, given that the
/// true literal sits at position `k` (1-based) — so u-port `k` is blue, all
/// other u-ports red, and every clause vertex blue.
///
/// Around the auxiliary cycle, the pair `a_k, b_k` starts blue and the rest
/// alternate one red, one blue, with a single phase flip at the chord so the
/// chord endpoints `a_1` and `b_{g/2}` come out alike. Returned as
/// `(a_1..a_g, b_1..b_g)` colour vectors.
pub fn colour_clause_aux(g: usize, k: usize) -> Result<(Vec<Colour>, Vec<Colour>), GadgetError> {
    if g < 3 {
        return Err(GadgetError::GirthTooSmall(g));
    }
    if k == 0 || k > g {
        return Err(GadgetError::BadTruePosition { k, g });
    }
    let h = g / 2; // the chord joins a_1 and b_h
    let mut a: Vec<Option<Colour>> = vec![None; g + 1];
    let mut b: Vec<Option<Colour>> = vec![None; g + 1];
    a[k] = Some(Colour::Blue);
    b[k] = Some(Colour::Blue);

    #[derive(Clone, Copy, PartialEq)]
    enum Slot {
        A(usize),
        B(usize),
    }
    let mut walk = Vec::with_capacity(2 * g - 2);
    for step in 1..g {
        let j = (k - 1 + step) % g + 1;
        walk.push(Slot::A(j));
        walk.push(Slot::B(j));
    }

    let mut phase = 0u8; // 0: a red / b blue, 1: flipped
    for slot in walk {
        let tentative = match (slot, phase) {
            (Slot::A(_), 0) | (Slot::B(_), 1) => Colour::Red,
            _ => Colour::Blue,
        };
        let is_endpoint = slot == Slot::A(1) || slot == Slot::B(h);
        let chosen = if is_endpoint {
            let partner = match slot {
                Slot::A(_) => b[h],
                Slot::B(_) => a[1],
            };
            match partner {
                Some(c) => {
                    if c != tentative {
                        phase ^= 1;
                    }
                    c
                }
                None => {
                    phase ^= 1;
                    tentative
                }
            }
        } else {
            tentative
        };
        match slot {
            Slot::A(j) => a[j] = Some(chosen),
            Slot::B(j) => b[j] = Some(chosen),
        }
    }
    let unwrap_all =
        |v: Vec<Option<Colour>>| v.into_iter().skip(1).map(|c| c.expect("walk covers all")).collect();
    Ok((unwrap_all(a), unwrap_all(b)))
}

/// Standalone clause-gadget closure for geometry checks and the CLI: stub
/// ports, the gadget, and a stand-in star vertex joined directly to every
/// clause vertex. In the full reduction those joins run through immune
/// copies, which are monochromatic and change nothing locally.
#[derive(Debug, Clone)]
pub struct ClauseClosure {
    pub graph: Graph,
    pub trace: ReductionTrace,
    pub v_ports: Vec<usize>,
    pub u_ports: Vec<usize>,
    pub ids: ClauseGadgetIds,
    pub star: usize,
}

pub fn clause_gadget_closure(g: usize) -> Result<ClauseClosure, GadgetError> {
    let mut asm = Assembly::new();
    let v_ports: Vec<usize> = (1..=g)
        .map(|j| asm.add(VertexRole::new(RoleKind::ClausePort, RoleOrigin::Free, vec![0, j])))
        .collect();
    let u_ports: Vec<usize> = (1..=g)
        .map(|j| asm.add(VertexRole::new(RoleKind::ClausePort, RoleOrigin::Free, vec![1, j])))
        .collect();
    let ids = add_clause_gadget(&mut asm, 0, g, &v_ports, &u_ports)?;
    let star = asm.add(VertexRole::new(RoleKind::StarVertex, RoleOrigin::Free, vec![]));
    asm.edge(star, ids.v_c)?;
    for &uc in &ids.u_c {
        asm.edge(star, uc)?;
    }
    let (graph, trace) = asm.finish();
    Ok(ClauseClosure { graph, trace, v_ports, u_ports, ids, star })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{classify, RedBlueColouring};
    use crate::immunity::{self, Prefer};

    #[test]
    fn t_gadget_shape() {
        let t1 = build_t(1).unwrap();
        assert_eq!(t1.graph.n(), 6);
        assert_eq!(t1.graph.m(), 8);
        assert!(t1.graph.has_edge(t1.u, t1.u_strip[0]));
        assert!(t1.graph.has_edge(t1.u, t1.u_strip[1]));
        assert!(t1.graph.has_edge(t1.u_strip[0], t1.u_strip[1]));
        assert!(t1.graph.has_edge(t1.u, *t1.v_strip.last().unwrap()));
        assert!(t1.graph.has_edge(t1.v, *t1.u_strip.last().unwrap()));
        assert!(build_t(0).is_err());
    }

    #[test]
    fn t_gadget_every_vertex_on_a_triangle() {
        for i in 1..=3 {
            let t = build_t(i).unwrap();
            let g = &t.graph;
            for v in 0..g.n() {
                let mut on_triangle = false;
                for &w1 in g.adj(v) {
                    for &w2 in g.adj(v) {
                        if w1 < w2 && g.has_edge(w1, w2) {
                            on_triangle = true;
                        }
                    }
                }
                assert!(on_triangle, "vertex {v} of the strip gadget is not on a triangle");
            }
        }
    }

    #[test]
    fn t_gadget_internal_distance() {
        for i in 1..=4 {
            let t = build_t(i).unwrap();
            let d = t.graph.distance(t.u, t.v).unwrap();
            assert!(d >= i + 1, "u-v distance {d} below {}", i + 1);
        }
    }

    #[test]
    fn g_gadget_shape() {
        let g1 = build_g(1).unwrap();
        assert_eq!(g1.graph.n(), 8);
        assert_eq!(g1.graph.m(), 12);
        for i in 1..=3 {
            let gg = build_g(i).unwrap();
            assert_eq!(gg.graph.n(), 2 * i + 6);
            assert_eq!(gg.graph.n() % 2, 0);
            // {u, u', top_1, bot_1} induces a chordless 4-cycle.
            assert!(gg.graph.has_edge(gg.u, gg.u_prime));
            assert!(gg.graph.has_edge(gg.u, gg.tops[0]));
            assert!(gg.graph.has_edge(gg.u_prime, gg.bots[0]));
            assert!(gg.graph.has_edge(gg.tops[0], gg.bots[0]));
            assert!(!gg.graph.has_edge(gg.u, gg.bots[0]));
            assert!(!gg.graph.has_edge(gg.u_prime, gg.tops[0]));
        }
        assert!(build_g(0).is_err());
    }

    #[test]
    fn g_gadget_schemas_are_matchings_of_the_right_sets() {
        for i in [1, 3] {
            let gg = build_g(i).unwrap();
            let all: Vec<usize> = (0..gg.graph.n()).collect();
            let interior = gg.interior();
            for (schema, cover) in [
                (gg.schema_same_matched(), all.clone()),
                (gg.schema_same_unmatched(), interior.clone()),
                (gg.schema_bichromatic(), all.clone()),
            ] {
                let m = Matching::new(&gg.graph, schema).expect("schema edges exist and are disjoint");
                let mut covered: Vec<usize> = m.edges().iter().flat_map(|&(x, y)| [x, y]).collect();
                covered.sort_unstable();
                assert_eq!(covered, cover, "schema covers the wrong set for i={i}");
            }
        }
    }

    #[test]
    fn hprime_from_k33() {
        let base = crate::graph::complete_bipartite(3, 3);
        let m = has_perfect_matching(&base).unwrap();
        // Partners of s=0, t=1 under the canonical matching are 3 and 4, at
        // distance 2 = g - 1 for g = 3.
        let hp = build_hprime(&base, 0, 1, &m, 3).unwrap();
        assert!(hp.graph.girth().at_least(3));
        assert_eq!(hp.graph.m(), base.m() + 1);
        assert!(
            immunity::certify_immune(&hp.graph, Prefer::Exhaustive, Budget::default()).is_some(),
            "adding an edge keeps the base immune"
        );
        assert!(hp.pm_minus_st.partner(hp.s).is_none());
        assert!(hp.pm_minus_st.partner(hp.t).is_none());
        assert!(hp.pm_minus_st.contains(hp.x, hp.y));
    }

    #[test]
    fn hprime_rejects_bad_inputs() {
        let base = crate::graph::complete_bipartite(3, 3);
        let m = has_perfect_matching(&base).unwrap();
        assert!(matches!(build_hprime(&base, 0, 0, &m, 3), Err(GadgetError::DesignatedNotDistinct)));
        assert!(matches!(build_hprime(&base, 0, 1, &m, 5), Err(GadgetError::BaseGirthTooLow { .. })));
        let c6 = crate::graph::make_named(crate::graph::NamedGraph::Cycle(6)).unwrap();
        let mc6 = has_perfect_matching(&c6).unwrap();
        // Partners of antipodal s=0, t=3 are adjacent to them; distance 2 < 4.
        assert!(matches!(
            build_hprime(&c6, 0, 3, &mc6, 5),
            Err(GadgetError::BaseGirthTooLow { .. }) | Err(GadgetError::PartnerDistanceTooLow { .. })
        ));
    }

    #[test]
    fn h_copy_count_examples() {
        assert_eq!(h_copy_count(18), 3);
        assert_eq!(h_copy_count(12), 3);
        assert_eq!(h_copy_count(3), 1);
        assert_eq!(h_copy_count(6), 1);
        assert_eq!(h_copy_count(7), 3);
    }

    #[test]
    fn build_h_at_small_girths() {
        for g in [3, 4] {
            let mut provider = ImmuneProvider::new(0);
            let h = build_h(g, &mut provider).unwrap();
            assert!(h.graph.girth().at_least(g), "girth at g={g}");
            assert!(h.pm_full.is_perfect(&h.graph));
            assert_eq!(h.copies, 1);
        }
    }

    #[test]
    fn ell_choices() {
        assert_eq!(ell_for_girth(3), 4);
        assert_eq!(ell_for_girth(4), 4);
        assert_eq!(ell_for_girth(5), 8);
        assert_eq!(ell_for_girth(8), 8);
        assert_eq!(ell_for_girth(9), 12);
    }

    #[test]
    fn clause_gadget_port_arity() {
        let mut asm = Assembly::new();
        let stub: Vec<usize> = (0..3)
            .map(|j| asm.add(VertexRole::new(RoleKind::ClausePort, RoleOrigin::Free, vec![j])))
            .collect();
        assert!(matches!(
            add_clause_gadget(&mut asm, 0, 3, &stub[..2], &stub),
            Err(GadgetError::PortCount { got: 2, expected: 3 })
        ));
    }

    #[test]
    fn clause_closure_centre_degree() {
        for g in 3..=8 {
            let closure = clause_gadget_closure(g).unwrap();
            // v_c sees its g ports plus the star stand-in.
            assert_eq!(closure.graph.degree(closure.ids.v_c), g + 1);
        }
    }

    fn closure_base_colours(closure: &ClauseClosure, g: usize, k: usize) -> Vec<Colour> {
        let mut colours = vec![Colour::Red; closure.graph.n()];
        for (j, &p) in closure.v_ports.iter().enumerate() {
            colours[p] = if j + 1 == k { Colour::Red } else { Colour::Blue };
        }
        for (j, &p) in closure.u_ports.iter().enumerate() {
            colours[p] = if j + 1 == k { Colour::Blue } else { Colour::Red };
        }
        colours[closure.ids.v_c] = Colour::Blue;
        colours[closure.star] = Colour::Blue;
        for &uc in &closure.ids.u_c {
            colours[uc] = Colour::Blue;
        }
        let _ = g;
        colours
    }

    #[test]
    fn aux_colouring_is_valid_around_the_closure() {
        for g in 3..=8 {
            for k in 1..=g {
                let closure = clause_gadget_closure(g).unwrap();
                let (ca, cb) = colour_clause_aux(g, k).unwrap();
                let mut colours = closure_base_colours(&closure, g, k);
                for j in 0..g {
                    colours[closure.ids.a[j]] = ca[j];
                    colours[closure.ids.b[j]] = cb[j];
                }
                let report = classify(&closure.graph, &RedBlueColouring(colours)).unwrap();
                assert!(
                    report.class.is_valid(),
                    "aux colouring invalid for g={g}, k={k}: {:?}",
                    report.class
                );
            }
        }
    }

    #[test]
    fn aux_colouring_matches_worked_example() {
        // g = 8, true literal at position 5. Translating the worked figure to
        // the construction's edge indexing gives a_2..a_5 blue (rest red) and
        // b_5..b_8 blue (rest red).
        let (a, b) = colour_clause_aux(8, 5).unwrap();
        let blue = |v: &[Colour]| -> Vec<usize> {
            v.iter().enumerate().filter(|(_, &c)| c == Colour::Blue).map(|(i, _)| i + 1).collect()
        };
        assert_eq!(blue(&a), vec![2, 3, 4, 5]);
        assert_eq!(blue(&b), vec![5, 6, 7, 8]);
    }

    #[test]
    fn aux_colouring_among_exhaustive_valid_set_for_g3() {
        for k in 1..=3 {
            let closure = clause_gadget_closure(3).unwrap();
            let mut valid_patterns = Vec::new();
            for mask in 0u32..(1 << 6) {
                let mut colours = closure_base_colours(&closure, 3, k);
                for j in 0..3 {
                    colours[closure.ids.a[j]] = if mask >> j & 1 == 1 { Colour::Blue } else { Colour::Red };
                    colours[closure.ids.b[j]] =
                        if mask >> (3 + j) & 1 == 1 { Colour::Blue } else { Colour::Red };
                }
                if classify(&closure.graph, &RedBlueColouring(colours.clone()))
                    .unwrap()
                    .class
                    .is_valid()
                {
                    valid_patterns.push(colours);
                }
            }
            assert!(!valid_patterns.is_empty());
            let (ca, cb) = colour_clause_aux(3, k).unwrap();
            let mut ours = closure_base_colours(&closure, 3, k);
            for j in 0..3 {
                ours[closure.ids.a[j]] = ca[j];
                ours[closure.ids.b[j]] = cb[j];
            }
            assert!(valid_patterns.contains(&ours), "algorithm output not among valid set, k={k}");
        }
    }

    #[test]
    fn variable_chain_builds_and_verifies() {
        let template = immunity::find_immune(&ImmuneProvider::attachment_request(3)).unwrap();
        let mut asm = Assembly::new();
        let vars = build_variable_chain(&mut asm, 3, 4, 3, &template).unwrap();
        assert_eq!(vars.len(), 3);
        for ids in &vars {
            assert_eq!(ids.cycle_v.len(), 2);
            assert_eq!(ids.cycle_u.len(), 2);
            assert_eq!(ids.clause_v.len(), 3);
            assert_eq!(ids.clause_u.len(), 3);
        }
        let (graph, trace) = asm.finish();
        assert!(graph.is_connected());
        assert_eq!(trace.len(), graph.n());
        assert!(graph.girth().at_least(3));
    }

    #[test]
    fn variable_chain_rejects_bad_parameters() {
        let template = immunity::find_immune(&ImmuneProvider::attachment_request(3)).unwrap();
        let mut asm = Assembly::new();
        assert!(matches!(
            build_variable_chain(&mut asm, 2, 6, 3, &template),
            Err(GadgetError::BadCycleLength(6))
        ));
        let mut asm = Assembly::new();
        assert!(matches!(
            build_variable_chain(&mut asm, 2, 4, 5, &template),
            Err(GadgetError::CycleLengthBelowGirth { .. })
        ));
    }
}
