//! The four reduction pipelines, each carrying its trace and witness
//! transport in both directions.
//!
//! * [`reduce_sat_to_mc`] — restricted positive 1-in-g SAT to Matching Cut on
//!   graphs of girth at least `g`.
//! * [`reduce_mc_to_dpm`] — Matching Cut to Disconnected Perfect Matching via
//!   two copies joined by immune chains, girth preserved.
//! * [`reduce_mc_hstarfree`] / [`reduce_dpm_hstarfree`] — edge replacement by
//!   the strip and diamond gadgets, producing H*-free instances.
//! * [`reduce_pmc_subdivide`] — uniform 4t-subdivision, preserving Perfect
//!   Matching Cut along with bipartiteness and maximum degree.

use thiserror::Error;

use crate::colouring::{classify, Colour, ColouringClass, ColouringError, RedBlueColouring};
use crate::gadgets::{
    add_clause_gadget, build_g, build_h, build_t, build_variable_chain, colour_clause_aux, ell_for_girth,
    Assembly, ClauseGadgetIds, GGadget, GadgetError, HGadget, VariableGadgetIds,
};
use crate::graph::{self, Girth, Graph, GraphError, HStarFreeness, SubdivisionScope};
use crate::immunity::ImmuneProvider;
use crate::matching::{Matching, MatchingError};
use crate::solvers::Formula;
use crate::trace::{ReductionTrace, RoleKind, RoleOrigin, VertexRole};

/// Bundled parameters of the pipelines: target girth `g`, forbidden-subgraph
/// index `i`, subdivision rounds `t`, and the inter-gadget cycle length
/// `ell`, a multiple of 4 at least `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionParams {
    pub g: usize,
    pub i: usize,
    pub t: usize,
    pub ell: usize,
}

impl ReductionParams {
    pub fn for_girth(g: usize) -> ReductionParams {
        ReductionParams { g, i: 1, t: 0, ell: ell_for_girth(g) }
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.g < 3 {
            return Err(ReductionError::BadParameter("girth target must be at least 3"));
        }
        if self.i < 1 {
            return Err(ReductionError::BadParameter("gadget index must be at least 1"));
        }
        if self.ell % 4 != 0 || self.ell < self.g {
            return Err(ReductionError::BadParameter("ell must be a multiple of 4 at least g"));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("{0}")]
    BadParameter(&'static str),
    #[error("input graph is not connected")]
    Disconnected,
    #[error("formula arity {k} does not match the girth target {g}")]
    ArityMismatch { k: usize, g: usize },
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("assignment does not satisfy the formula with exactly one true literal per clause")]
    NotOneInKSatisfying,
    #[error("witness colouring is not of the required strength: {0}")]
    WeakWitness(String),
    #[error("witness matching is invalid: {0}")]
    BadWitnessMatching(String),
    #[error("constructed instance failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

const HSTAR_VERIFY_BUDGET: u64 = 200_000_000;

// ---------------------------------------------------------------------------
// 1-in-g SAT -> Matching Cut
// ---------------------------------------------------------------------------

/// The assembled SAT instance graph with its port bookkeeping.
#[derive(Debug, Clone)]
pub struct SatToMc {
    pub graph: Graph,
    pub trace: ReductionTrace,
    pub g: usize,
    pub ell: usize,
    pub star: usize,
    formula: Formula,
    vars: Vec<VariableGadgetIds>,
    #[allow(dead_code)]
    clauses: Vec<ClauseGadgetIds>,
}

/// Builds the girth-`g` Matching Cut instance of a 1-in-g formula: the
/// variable chain, one clause gadget per clause wired to ports by occurrence
/// ordinal, and a star vertex joined to every clause vertex through fresh
/// immune copies. The output is verified connected with girth at least `g`.
pub fn reduce_sat_to_mc(f: &Formula, g: usize, provider: &mut ImmuneProvider) -> Result<SatToMc, ReductionError> {
    if f.k() != g {
        return Err(ReductionError::ArityMismatch { k: f.k(), g });
    }
    if f.num_clauses() == 0 {
        return Err(ReductionError::EmptyFormula);
    }
    let ell = ell_for_girth(g);
    let template = provider
        .supply(ImmuneProvider::attachment_request(g))
        .ok_or(GadgetError::ProviderFailure(ImmuneProvider::attachment_request(g)))?;

    let mut asm = Assembly::new();
    let vars = build_variable_chain(&mut asm, f.num_vars(), ell, g, &template)?;

    let mut clauses = Vec::with_capacity(f.num_clauses());
    for (j, clause) in f.clauses().iter().enumerate() {
        let mut v_ports = Vec::with_capacity(g);
        let mut u_ports = Vec::with_capacity(g);
        for (p, &var) in clause.iter().enumerate() {
            let ord = f.occurrence_ordinal(j, p);
            v_ports.push(vars[var].clause_v[ord - 1]);
            u_ports.push(vars[var].clause_u[ord - 1]);
        }
        clauses.push(add_clause_gadget(&mut asm, j, g, &v_ports, &u_ports)?);
    }

    let star = asm.add(VertexRole::new(RoleKind::StarVertex, RoleOrigin::Free, vec![]));
    for (j, ids) in clauses.iter().enumerate() {
        asm.graft_immune(&template, star, Some(ids.v_c), None, RoleOrigin::Clause(j), &[2, 0])?;
        for (k, &uc) in ids.u_c.iter().enumerate() {
            asm.graft_immune(&template, star, Some(uc), None, RoleOrigin::Clause(j), &[2, k + 1])?;
        }
    }

    let (graph, trace) = asm.finish();
    if !graph.is_connected() {
        return Err(ReductionError::Verification("SAT instance graph is disconnected".into()));
    }
    if !graph.girth().at_least(g) {
        return Err(ReductionError::Verification(format!(
            "SAT instance girth {} below target {g}",
            graph.girth()
        )));
    }
    Ok(SatToMc { graph, trace, g, ell, star, formula: f.clone(), vars, clauses })
}

impl SatToMc {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// Reads a satisfying assignment off a valid colouring: after normalising
    /// the star vertex to blue, a variable is true exactly when its v-side is
    /// red. The result is checked against the formula.
    pub fn pull_back(&self, c: &RedBlueColouring) -> Result<Vec<bool>, ReductionError> {
        let report = classify(&self.graph, c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let star = c.colour(self.star);
        let assignment: Vec<bool> = self.vars.iter().map(|ids| c.colour(ids.hub_v) != star).collect();
        if !self.formula.satisfied_one_in_k(&assignment) {
            return Err(ReductionError::NotOneInKSatisfying);
        }
        Ok(assignment)
    }

    /// Expands a 1-in-g satisfying assignment to a full valid colouring:
    /// v-sides red exactly for true variables, u-sides opposite, clause and
    /// star machinery blue, auxiliaries by the clause-colouring rule. The
    /// result is verified valid before it is returned.
    pub fn push_forward(&self, assignment: &[bool]) -> Result<RedBlueColouring, ReductionError> {
        if assignment.len() != self.formula.num_vars() || !self.formula.satisfied_one_in_k(assignment) {
            return Err(ReductionError::NotOneInKSatisfying);
        }
        let side_colour = |var: usize, side: usize| {
            let v_red = assignment[var];
            match (side, v_red) {
                (0, true) | (1, false) => Colour::Red,
                _ => Colour::Blue,
            }
        };
        // Position of the unique true literal per clause, 1-based.
        let true_pos: Vec<usize> = self
            .formula
            .clauses()
            .iter()
            .map(|clause| clause.iter().position(|&v| assignment[v]).expect("one true literal") + 1)
            .collect();
        let aux: Vec<(Vec<Colour>, Vec<Colour>)> =
            true_pos.iter().map(|&k| colour_clause_aux(self.g, k)).collect::<Result<_, _>>()?;

        let mut colours = Vec::with_capacity(self.graph.n());
        for v in 0..self.graph.n() {
            let role = self.trace.role(v);
            let colour = match (role.kind, role.origin) {
                (RoleKind::Hub, RoleOrigin::Variable(x))
                | (RoleKind::CyclePort, RoleOrigin::Variable(x))
                | (RoleKind::ClausePort, RoleOrigin::Variable(x))
                | (RoleKind::ImmuneInternal, RoleOrigin::Variable(x)) => side_colour(x, role.index[0]),
                (RoleKind::ClauseVertex, _) | (RoleKind::StarVertex, _) => Colour::Blue,
                (RoleKind::ImmuneInternal, RoleOrigin::Clause(_)) => Colour::Blue,
                (RoleKind::AuxA, RoleOrigin::Clause(j)) => aux[j].0[role.index[0] - 1],
                (RoleKind::AuxB, RoleOrigin::Clause(j)) => aux[j].1[role.index[0] - 1],
                other => {
                    return Err(ReductionError::Verification(format!(
                        "unexpected role {other:?} in SAT instance"
                    )))
                }
            };
            colours.push(colour);
        }
        let c = RedBlueColouring(colours);
        let report = classify(&self.graph, &c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::Verification(format!(
                "pushed colouring is {:?}, expected valid",
                report.class
            )));
        }
        Ok(c)
    }
}

// ---------------------------------------------------------------------------
// Matching Cut -> Disconnected Perfect Matching
// ---------------------------------------------------------------------------

/// Two copies of the source joined vertex-wise by immune chains.
#[derive(Debug, Clone)]
pub struct McToDpm {
    pub graph: Graph,
    pub trace: ReductionTrace,
    pub g: usize,
    base: Graph,
    /// `copy[c][v]` is the id of source vertex `v` in copy `c`.
    copy: [Vec<usize>; 2],
    /// Per source vertex, the map of the chain template into the graph.
    chains: Vec<Vec<usize>>,
    template: HGadget,
}

/// Joins every vertex of `base` to its twin through a copy of `H(s,t)` for
/// girth target `g`. Output girth is verified to stay at least `g`.
pub fn reduce_mc_to_dpm(base: &Graph, g: usize, provider: &mut ImmuneProvider) -> Result<McToDpm, ReductionError> {
    if !base.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let template = build_h(g, provider)?;
    let mut asm = Assembly::new();
    let copy1: Vec<usize> = (0..base.n())
        .map(|v| asm.add(VertexRole::new(RoleKind::Original, RoleOrigin::SourceVertexCopy(v, 1), vec![])))
        .collect();
    let copy2: Vec<usize> = (0..base.n())
        .map(|v| asm.add(VertexRole::new(RoleKind::Original, RoleOrigin::SourceVertexCopy(v, 2), vec![])))
        .collect();
    for &(u, v) in base.edges() {
        asm.edge(copy1[u], copy1[v])?;
        asm.edge(copy2[u], copy2[v])?;
    }
    let mut chains = Vec::with_capacity(base.n());
    for v in 0..base.n() {
        let map = asm.graft_graph(
            &template.graph,
            &[(template.s, copy1[v]), (template.t, copy2[v])],
            |w| VertexRole::new(RoleKind::ImmuneInternal, RoleOrigin::SourceVertex(v), vec![w]),
        )?;
        chains.push(map);
    }
    let (graph, trace) = asm.finish();
    if !graph.girth().at_least(g) {
        return Err(ReductionError::Verification(format!(
            "joined instance girth {} below target {g}",
            graph.girth()
        )));
    }
    Ok(McToDpm { graph, trace, g, base: base.clone(), copy: [copy1, copy2], chains, template })
}

impl McToDpm {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn chain_order(&self) -> usize {
        self.template.graph.n()
    }

    /// Lifts a valid colouring of the source to a perfect-extendable
    /// colouring plus a disconnected perfect matching of the joined graph:
    /// both copies and all chains follow the source colours; matched source
    /// vertices use the chain matching avoiding the endpoints, unmatched ones
    /// the full chain matching.
    pub fn push_forward(&self, c: &RedBlueColouring) -> Result<(RedBlueColouring, Matching), ReductionError> {
        let report = classify(&self.base, c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let mut colours = vec![Colour::Red; self.graph.n()];
        for v in 0..self.base.n() {
            colours[self.copy[0][v]] = c.colour(v);
            colours[self.copy[1][v]] = c.colour(v);
            for (w, &host) in self.chains[v].iter().enumerate() {
                if w != self.template.s && w != self.template.t {
                    colours[host] = c.colour(v);
                }
            }
        }
        let lifted = RedBlueColouring(colours);

        let mut matched = vec![false; self.base.n()];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in &report.cut {
            matched[u] = true;
            matched[v] = true;
            edges.push((self.copy[0][u], self.copy[0][v]));
            edges.push((self.copy[1][u], self.copy[1][v]));
        }
        for v in 0..self.base.n() {
            let witness = if matched[v] { &self.template.pm_minus_st } else { &self.template.pm_full };
            for &(a, b) in witness.edges() {
                edges.push((self.chains[v][a], self.chains[v][b]));
            }
        }
        let matching = Matching::new(&self.graph, edges)?;
        if !matching.is_perfect(&self.graph) {
            return Err(ReductionError::BadWitnessMatching("lifted matching is not perfect".into()));
        }
        let lifted_report = classify(&self.graph, &lifted)?;
        if !lifted_report.class.is_valid() {
            return Err(ReductionError::Verification("lifted colouring is not valid".into()));
        }
        for &(u, v) in &lifted_report.cut {
            if !matching.contains(u, v) {
                return Err(ReductionError::BadWitnessMatching("cut edge missing from matching".into()));
            }
        }
        Ok((lifted, matching))
    }

    /// Restricts a valid colouring of the joined graph to the first copy and
    /// re-verifies validity on the source.
    pub fn pull_back(&self, c: &RedBlueColouring) -> Result<RedBlueColouring, ReductionError> {
        let report = classify(&self.graph, c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let restricted = RedBlueColouring((0..self.base.n()).map(|v| c.colour(self.copy[0][v])).collect());
        let base_report = classify(&self.base, &restricted)?;
        if !base_report.class.is_valid() {
            return Err(ReductionError::Verification("restriction is not valid on the source".into()));
        }
        Ok(restricted)
    }
}

// ---------------------------------------------------------------------------
// Matching Cut, H*-free (strip gadget)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct HstarMc {
    pub graph: Graph,
    pub trace: ReductionTrace,
    pub i: usize,
    base: Graph,
    /// Per source edge (canonical order): template-to-host map of the strip
    /// gadget.
    instances: Vec<Vec<usize>>,
    u_strip: Vec<usize>,
    v_strip: Vec<usize>,
}

/// Replaces every edge of `base` by the strip gadget; the output is verified
/// free of induced `H_1^*..H_i^*`.
pub fn reduce_mc_hstarfree(base: &Graph, i: usize) -> Result<HstarMc, ReductionError> {
    if !base.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let gadget = build_t(i)?;
    let mut asm = Assembly::new();
    for v in 0..base.n() {
        asm.add(VertexRole::original(v));
    }
    let mut instances = Vec::with_capacity(base.m());
    for &(u, v) in base.edges() {
        let map = asm.graft_graph(&gadget.graph, &[(gadget.u, u), (gadget.v, v)], |w| {
            let tmpl_role = gadget.trace.role(w);
            VertexRole::new(tmpl_role.kind, RoleOrigin::SourceEdge(u, v), tmpl_role.index.clone())
        })?;
        instances.push(map);
    }
    let (graph, trace) = asm.finish();
    match graph::is_hstar_free(&graph, i, HSTAR_VERIFY_BUDGET)? {
        HStarFreeness::Free => {}
        HStarFreeness::Contains { i_prime, .. } => {
            return Err(ReductionError::Verification(format!("output contains an induced H_{i_prime}^*")))
        }
    }
    Ok(HstarMc {
        graph,
        trace,
        i,
        base: base.clone(),
        instances,
        u_strip: gadget.u_strip,
        v_strip: gadget.v_strip,
    })
}

impl HstarMc {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Lifts a valid colouring edge by edge: monochromatic edges flood their
    /// gadget, bi-chromatic edges colour the u-strip with `u` and the rest
    /// with `v`.
    pub fn push_forward(&self, c: &RedBlueColouring) -> Result<RedBlueColouring, ReductionError> {
        let report = classify(&self.base, c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let mut colours = vec![Colour::Red; self.graph.n()];
        for v in 0..self.base.n() {
            colours[v] = c.colour(v);
        }
        for (idx, &(u, v)) in self.base.edges().iter().enumerate() {
            let map = &self.instances[idx];
            for &w in &self.u_strip {
                colours[map[w]] = c.colour(u);
            }
            for &w in &self.v_strip {
                colours[map[w]] = c.colour(v);
            }
        }
        let lifted = RedBlueColouring(colours);
        let lifted_report = classify(&self.graph, &lifted)?;
        if !lifted_report.class.is_valid() {
            return Err(ReductionError::Verification("lifted colouring is not valid".into()));
        }
        Ok(lifted)
    }

    /// Restricts a valid colouring to the source vertices; the matching cut
    /// of the source consists of the source edges whose endpoints differ.
    pub fn pull_back(&self, c: &RedBlueColouring) -> Result<(RedBlueColouring, Matching), ReductionError> {
        let report = classify(&self.graph, c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let restricted = RedBlueColouring((0..self.base.n()).map(|v| c.colour(v)).collect());
        let base_report = classify(&self.base, &restricted)?;
        if !base_report.class.is_valid() {
            return Err(ReductionError::Verification("restriction is not valid on the source".into()));
        }
        let cut = Matching::new(&self.base, base_report.cut.clone())?;
        Ok((restricted, cut))
    }
}

// ---------------------------------------------------------------------------
// Disconnected Perfect Matching, H*-free (diamond gadget)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct HstarDpm {
    pub graph: Graph,
    pub trace: ReductionTrace,
    /// Effective gadget index: the requested `i` rounded up to odd.
    pub i: usize,
    base: Graph,
    instances: Vec<Vec<usize>>,
    gadget: GGadget,
}

/// Replaces every edge of `base` by the diamond gadget. The index is rounded
/// up to the next odd value: the forbidden-graph class only shrinks as the
/// index grows, and the interior matching of the unmatched case needs odd
/// parity. The output is verified H*-free.
pub fn reduce_dpm_hstarfree(base: &Graph, i: usize) -> Result<HstarDpm, ReductionError> {
    if !base.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    if i < 1 {
        return Err(ReductionError::BadParameter("gadget index must be at least 1"));
    }
    let i_eff = if i % 2 == 1 { i } else { i + 1 };
    let gadget = build_g(i_eff)?;
    let mut asm = Assembly::new();
    for v in 0..base.n() {
        asm.add(VertexRole::original(v));
    }
    let mut instances = Vec::with_capacity(base.m());
    for &(u, v) in base.edges() {
        let map = asm.graft_graph(&gadget.graph, &[(gadget.u, u), (gadget.v, v)], |w| {
            let tmpl_role = gadget.trace.role(w);
            VertexRole::new(tmpl_role.kind, RoleOrigin::SourceEdge(u, v), tmpl_role.index.clone())
        })?;
        instances.push(map);
    }
    let (graph, trace) = asm.finish();
    match graph::is_hstar_free(&graph, i_eff, HSTAR_VERIFY_BUDGET)? {
        HStarFreeness::Free => {}
        HStarFreeness::Contains { i_prime, .. } => {
            return Err(ReductionError::Verification(format!("output contains an induced H_{i_prime}^*")))
        }
    }
    Ok(HstarDpm { graph, trace, i: i_eff, base: base.clone(), instances, gadget })
}

impl HstarDpm {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Interior host vertices (sorted) of the gadget instance of edge `idx`.
    fn instance_interior(&self, idx: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.gadget.interior().iter().map(|&w| self.instances[idx][w]).collect();
        out.sort_unstable();
        out
    }

    /// Lifts a disconnected perfect matching witness `(c, m)` of the source:
    /// every gadget receives the interior matching for its case (source edge
    /// matched, unmatched, or bi-chromatic).
    pub fn push_forward(
        &self,
        c: &RedBlueColouring,
        m: &Matching,
    ) -> Result<(RedBlueColouring, Matching), ReductionError> {
        let report = classify(&self.base, c)?;
        if report.class.rank() < ColouringClass::PerfectExtendable.rank() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        if !m.is_perfect(&self.base) {
            return Err(ReductionError::BadWitnessMatching("witness matching is not perfect".into()));
        }
        for &(u, v) in &report.cut {
            if !m.contains(u, v) {
                return Err(ReductionError::BadWitnessMatching("witness matching misses a cut edge".into()));
            }
        }
        let mut colours = vec![Colour::Red; self.graph.n()];
        for v in 0..self.base.n() {
            colours[v] = c.colour(v);
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, &(u, v)) in self.base.edges().iter().enumerate() {
            let map = &self.instances[idx];
            let schema = if c.colour(u) == c.colour(v) {
                for &w in &self.gadget.interior() {
                    colours[map[w]] = c.colour(u);
                }
                if m.contains(u, v) {
                    self.gadget.schema_same_matched()
                } else {
                    self.gadget.schema_same_unmatched()
                }
            } else {
                // u' follows u; everything else in the gadget follows v.
                for &w in &self.gadget.interior() {
                    colours[map[w]] = if w == self.gadget.u_prime { c.colour(u) } else { c.colour(v) };
                }
                self.gadget.schema_bichromatic()
            };
            for &(a, b) in &schema {
                edges.push((map[a], map[b]));
            }
        }
        let lifted = RedBlueColouring(colours);
        let matching = Matching::new(&self.graph, edges)?;
        if !matching.is_perfect(&self.graph) {
            return Err(ReductionError::BadWitnessMatching("lifted matching is not perfect".into()));
        }
        let lifted_report = classify(&self.graph, &lifted)?;
        if !lifted_report.class.is_valid() {
            return Err(ReductionError::Verification("lifted colouring is not valid".into()));
        }
        for &(a, b) in &lifted_report.cut {
            if !matching.contains(a, b) {
                return Err(ReductionError::BadWitnessMatching("cut edge missing from lifted matching".into()));
            }
        }
        Ok((lifted, matching))
    }

    /// Pulls a disconnected perfect matching witness back to the source: a
    /// source edge is matched when its endpoints differ in colour, or when
    /// they agree and both endpoints are matched into that edge's gadget.
    pub fn pull_back(
        &self,
        c: &RedBlueColouring,
        m: &Matching,
    ) -> Result<(RedBlueColouring, Matching), ReductionError> {
        let report = classify(&self.graph, c)?;
        if !report.class.is_valid() {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        if !m.is_perfect(&self.graph) {
            return Err(ReductionError::BadWitnessMatching("witness matching is not perfect".into()));
        }
        let restricted = RedBlueColouring((0..self.base.n()).map(|v| c.colour(v)).collect());
        let mut edges = Vec::new();
        for (idx, &(u, v)) in self.base.edges().iter().enumerate() {
            if c.colour(u) != c.colour(v) {
                edges.push((u, v));
            } else {
                let interior = self.instance_interior(idx);
                let u_in = m.partner(u).is_some_and(|p| interior.binary_search(&p).is_ok());
                let v_in = m.partner(v).is_some_and(|p| interior.binary_search(&p).is_ok());
                if u_in && v_in {
                    edges.push((u, v));
                }
            }
        }
        let pulled = Matching::new(&self.base, edges)?;
        if !pulled.is_perfect(&self.base) {
            return Err(ReductionError::BadWitnessMatching("pulled matching is not perfect".into()));
        }
        let base_report = classify(&self.base, &restricted)?;
        if base_report.class.rank() < ColouringClass::PerfectExtendable.rank() {
            return Err(ReductionError::Verification(format!(
                "restriction is {:?} on the source, expected perfect-extendable",
                base_report.class
            )));
        }
        for &(a, b) in &base_report.cut {
            if !pulled.contains(a, b) {
                return Err(ReductionError::BadWitnessMatching("pulled matching misses a cut edge".into()));
            }
        }
        Ok((restricted, pulled))
    }
}

// ---------------------------------------------------------------------------
// Perfect Matching Cut under uniform subdivision
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PmcSubdivide {
    pub graph: Graph,
    pub trace: ReductionTrace,
    pub t: usize,
    base: Graph,
}

/// Subdivides every edge `4t` times. Maximum degree is unchanged, cycle
/// parity (hence bipartiteness) is preserved, and every finite girth is
/// multiplied by exactly `4t + 1`; all three are asserted on the result.
pub fn reduce_pmc_subdivide(base: &Graph, t: usize) -> Result<PmcSubdivide, ReductionError> {
    if !base.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    if t < 1 {
        return Err(ReductionError::BadParameter("subdivision rounds must be at least 1"));
    }
    let (graph, trace) = graph::subdivide(base, 4 * t, SubdivisionScope::AllEdges)?;
    // Subdivision points have degree 2, so only a max degree above 2 must be
    // preserved exactly; subcubic inputs stay subcubic either way.
    let expected_max = if base.m() == 0 { base.max_degree() } else { base.max_degree().max(2) };
    if graph.max_degree() != expected_max {
        return Err(ReductionError::Verification("subdivision changed the maximum degree".into()));
    }
    if graph.is_bipartite() != base.is_bipartite() {
        return Err(ReductionError::Verification("subdivision changed bipartiteness".into()));
    }
    match (base.girth(), graph.girth()) {
        (Girth::Infinite, Girth::Infinite) => {}
        (Girth::Finite(a), Girth::Finite(b)) if b == a * (4 * t + 1) => {}
        (a, b) => {
            return Err(ReductionError::Verification(format!(
                "girth {a} did not multiply to {b} under subdivision"
            )))
        }
    }
    Ok(PmcSubdivide { graph, trace, t, base: base.clone() })
}

impl PmcSubdivide {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Extends a perfect colouring across every replacement path: on a
    /// monochromatic source edge the fresh vertices repeat
    /// same-opposite-opposite-same, on a bi-chromatic edge
    /// opposite-opposite-same-same, one block per round.
    pub fn transport_forward(&self, c: &RedBlueColouring) -> Result<RedBlueColouring, ReductionError> {
        let report = classify(&self.base, c)?;
        if report.class != ColouringClass::Perfect {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let mut colours = vec![Colour::Red; self.graph.n()];
        for v in 0..self.base.n() {
            colours[v] = c.colour(v);
        }
        // Subdivision points were appended per edge in canonical order:
        // vertex base.n() + idx*4t + (pos-1) is position pos on edge idx.
        let steps = 4 * self.t;
        for (idx, &(u, v)) in self.base.edges().iter().enumerate() {
            let cu = c.colour(u);
            let block: [Colour; 4] = if cu == c.colour(v) {
                [cu, cu.flipped(), cu.flipped(), cu]
            } else {
                [cu.flipped(), cu.flipped(), cu, cu]
            };
            for pos in 0..steps {
                colours[self.base.n() + idx * steps + pos] = block[pos % 4];
            }
        }
        let lifted = RedBlueColouring(colours);
        let lifted_report = classify(&self.graph, &lifted)?;
        if lifted_report.class != ColouringClass::Perfect {
            return Err(ReductionError::Verification(format!(
                "lifted colouring is {:?}, expected perfect",
                lifted_report.class
            )));
        }
        Ok(lifted)
    }

    /// Restricts a perfect colouring of the subdivided graph to the source
    /// vertices and re-verifies perfection.
    pub fn transport_backward(&self, c: &RedBlueColouring) -> Result<RedBlueColouring, ReductionError> {
        let report = classify(&self.graph, c)?;
        if report.class != ColouringClass::Perfect {
            return Err(ReductionError::WeakWitness(format!("{:?}", report.class)));
        }
        let restricted = RedBlueColouring((0..self.base.n()).map(|v| c.colour(v)).collect());
        let base_report = classify(&self.base, &restricted)?;
        if base_report.class != ColouringClass::Perfect {
            return Err(ReductionError::Verification(format!(
                "restriction is {:?}, expected perfect",
                base_report.class
            )));
        }
        Ok(restricted)
    }
}
