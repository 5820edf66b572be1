//! Exact decision procedures for MC, DPM and PMC with verifiable
//! certificates, a brute-force oracle, and the 1-in-k SAT side of the
//! reductions.
//!
//! The search engine branches on vertex colours with unit propagation: a
//! vertex already matched to an opposite-coloured neighbour forces all its
//! remaining neighbours to its own colour, and in perfect mode every vertex
//! must end up with exactly one opposite neighbour, so a vertex with no
//! opposite neighbour and a single uncoloured one forces that neighbour to the
//! opposite colour. Red/blue swap symmetry is broken by iterating the first
//! blue vertex: branch `s` colours `0..s` red and `s` blue, which partitions
//! the valid colourings and halves the space.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::colouring::{Colour, RedBlueColouring};
use crate::graph::Graph;
use crate::matching::{has_perfect_matching, Matching};

/// The three decision problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    MatchingCut,
    DisconnectedPerfectMatching,
    PerfectMatchingCut,
}

impl Problem {
    pub fn code(self) -> &'static str {
        match self {
            Problem::MatchingCut => "MC",
            Problem::DisconnectedPerfectMatching => "DPM",
            Problem::PerfectMatchingCut => "PMC",
        }
    }

    pub fn parse(s: &str) -> Option<Problem> {
        match s {
            "MC" | "mc" => Some(Problem::MatchingCut),
            "DPM" | "dpm" => Some(Problem::DisconnectedPerfectMatching),
            "PMC" | "pmc" => Some(Problem::PerfectMatchingCut),
            _ => None,
        }
    }
}

/// Node budget for a single solve call. Every vertex assignment made by the
/// search, forced or branched, costs one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 10_000_000 }
    }
}

impl Budget {
    pub fn new(max_nodes: u64) -> Budget {
        Budget { max_nodes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub nodes: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("input graph is not connected")]
    Disconnected,
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("brute force limited to n <= {limit}, got {n}")]
    ThresholdExceeded { n: usize, limit: usize },
}

/// Answer plus re-verifiable witness.
///
/// Yes-certificates carry the witness colouring and a matching: the cut edges
/// for MC and PMC, a full disconnected perfect matching for DPM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub problem: Problem,
    pub answer: bool,
    pub colouring: Option<RedBlueColouring>,
    pub matching: Option<Matching>,
}

impl Certificate {
    pub fn no(problem: Problem) -> Certificate {
        Certificate { problem, answer: false, colouring: None, matching: None }
    }
}

enum Step {
    Conflict,
    Budget,
}

/// Backtracking engine over partial red-blue colourings.
struct Engine<'g> {
    g: &'g Graph,
    perfect: bool,
    colour: Vec<Option<Colour>>,
    red_nbrs: Vec<u32>,
    blue_nbrs: Vec<u32>,
    trail: Vec<usize>,
    pending: VecDeque<(usize, Colour)>,
    nodes: u64,
    max_nodes: u64,
}

impl<'g> Engine<'g> {
    fn new(g: &'g Graph, perfect: bool, budget: Budget) -> Engine<'g> {
        Engine {
            g,
            perfect,
            colour: vec![None; g.n()],
            red_nbrs: vec![0; g.n()],
            blue_nbrs: vec![0; g.n()],
            trail: Vec::with_capacity(g.n()),
            pending: VecDeque::new(),
            nodes: 0,
            max_nodes: budget.max_nodes,
        }
    }

    fn opposite(&self, v: usize) -> u32 {
        match self.colour[v] {
            Some(Colour::Red) => self.blue_nbrs[v],
            Some(Colour::Blue) => self.red_nbrs[v],
            None => 0,
        }
    }

    fn uncoloured_nbrs(&self, v: usize) -> u32 {
        self.g.degree(v) as u32 - self.red_nbrs[v] - self.blue_nbrs[v]
    }

    /// Checks vertex `v` (must be coloured) and enqueues its forcings.
    fn check_and_force(&mut self, v: usize) -> Result<(), Step> {
        let c = self.colour[v].expect("check_and_force on coloured vertex");
        let opp = self.opposite(v);
        if opp >= 2 {
            return Err(Step::Conflict);
        }
        let unc = self.uncoloured_nbrs(v);
        if opp == 1 {
            if unc > 0 {
                for i in 0..self.g.degree(v) {
                    let w = self.g.adj(v)[i];
                    if self.colour[w].is_none() {
                        self.pending.push_back((w, c));
                    }
                }
            }
        } else if self.perfect {
            // opp == 0: v still needs its unique opposite partner.
            if unc == 0 {
                return Err(Step::Conflict);
            }
            if unc == 1 {
                let w = *self
                    .g
                    .adj(v)
                    .iter()
                    .find(|&&w| self.colour[w].is_none())
                    .expect("one uncoloured neighbour");
                self.pending.push_back((w, c.flipped()));
            }
        }
        Ok(())
    }

    fn place(&mut self, v: usize, c: Colour) -> Result<(), Step> {
        match self.colour[v] {
            Some(existing) if existing == c => return Ok(()),
            Some(_) => return Err(Step::Conflict),
            None => {}
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Step::Budget);
        }
        self.colour[v] = Some(c);
        self.trail.push(v);
        for i in 0..self.g.degree(v) {
            let w = self.g.adj(v)[i];
            match c {
                Colour::Red => self.red_nbrs[w] += 1,
                Colour::Blue => self.blue_nbrs[w] += 1,
            }
        }
        self.check_and_force(v)?;
        for i in 0..self.g.degree(v) {
            let w = self.g.adj(v)[i];
            if self.colour[w].is_some() {
                self.check_and_force(w)?;
            }
        }
        Ok(())
    }

    /// Assigns `v = c` and drains all forced consequences.
    fn assign(&mut self, v: usize, c: Colour) -> Result<(), Step> {
        self.pending.clear();
        self.pending.push_back((v, c));
        while let Some((w, cw)) = self.pending.pop_front() {
            self.place(w, cw)?;
        }
        Ok(())
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let c = self.colour[v].take().unwrap();
            for i in 0..self.g.degree(v) {
                let w = self.g.adj(v)[i];
                match c {
                    Colour::Red => self.red_nbrs[w] -= 1,
                    Colour::Blue => self.blue_nbrs[w] -= 1,
                }
            }
        }
    }

    /// DFS over completions of the current partial state, emitting every
    /// complete colouring consistent with the mode.
    fn search<F>(&mut self, from: usize, emit: &mut F) -> Result<ControlFlow<()>, Step>
    where
        F: FnMut(&[Option<Colour>]) -> ControlFlow<()>,
    {
        let mut v = from;
        while v < self.g.n() && self.colour[v].is_some() {
            v += 1;
        }
        if v == self.g.n() {
            return Ok(emit(&self.colour));
        }
        for c in [Colour::Red, Colour::Blue] {
            let mark = self.trail.len();
            match self.assign(v, c) {
                Ok(()) => {
                    let flow = self.search(v + 1, emit)?;
                    if flow.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
                Err(Step::Budget) => return Err(Step::Budget),
                Err(Step::Conflict) => {}
            }
            self.undo_to(mark);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Enumerates every colouring of the requested strength with vertex 0 red,
/// invoking `emit` on each until it breaks. Valid mode enumerates valid
/// colourings; perfect mode enumerates perfect ones.
fn enumerate_colourings<F>(
    g: &Graph,
    perfect: bool,
    budget: Budget,
    emit: &mut F,
) -> Result<SolveStats, SolveError>
where
    F: FnMut(&[Option<Colour>]) -> ControlFlow<()>,
{
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let n = g.n();
    let mut engine = Engine::new(g, perfect, budget);

    let outcome = (|| -> Result<(), Step> {
        if perfect {
            // Perfectness forces both colours; fixing vertex 0 red breaks the
            // swap symmetry.
            if engine.assign(0, Colour::Red).is_ok() {
                let _ = engine.search(0, emit)?;
            }
            return Ok(());
        }
        // Branch on the first blue vertex: everything before it is red.
        for seed in 1..n {
            engine.undo_to(0);
            let mut prefix_ok = true;
            for v in 0..seed {
                match engine.assign(v, Colour::Red) {
                    Ok(()) => {}
                    Err(Step::Budget) => return Err(Step::Budget),
                    Err(Step::Conflict) => {
                        prefix_ok = false;
                        break;
                    }
                }
            }
            if !prefix_ok {
                // An all-red prefix only gains constraints as it grows.
                break;
            }
            match engine.assign(seed, Colour::Blue) {
                Ok(()) => {
                    if engine.search(0, emit)?.is_break() {
                        return Ok(());
                    }
                }
                Err(Step::Budget) => return Err(Step::Budget),
                Err(Step::Conflict) => {}
            }
        }
        Ok(())
    })();

    match outcome {
        Ok(()) => Ok(SolveStats { nodes: engine.nodes }),
        Err(Step::Budget) => Err(SolveError::BudgetExceeded { nodes: engine.nodes }),
        Err(Step::Conflict) => unreachable!("conflicts are handled inside the search"),
    }
}

fn snapshot(colour: &[Option<Colour>]) -> RedBlueColouring {
    RedBlueColouring(colour.iter().map(|c| c.expect("complete colouring")).collect())
}

/// Cut edges of a complete colouring.
fn bichromatic_edges(g: &Graph, c: &RedBlueColouring) -> Vec<(usize, usize)> {
    g.edges().iter().copied().filter(|&(u, v)| c.colour(u) != c.colour(v)).collect()
}

/// Decides Matching Cut. Yes-certificates carry a valid colouring and its cut.
pub fn solve_mc(g: &Graph, budget: Budget) -> Result<(Certificate, SolveStats), SolveError> {
    let mut witness: Option<RedBlueColouring> = None;
    let stats = enumerate_colourings(g, false, budget, &mut |colour| {
        witness = Some(snapshot(colour));
        ControlFlow::Break(())
    })?;
    let cert = match witness {
        Some(c) => {
            let cut = Matching::new(g, bichromatic_edges(g, &c)).expect("cut of a valid colouring is a matching");
            Certificate {
                problem: Problem::MatchingCut,
                answer: true,
                colouring: Some(c),
                matching: Some(cut),
            }
        }
        None => Certificate::no(Problem::MatchingCut),
    };
    Ok((cert, stats))
}

/// Perfect-extendability check for a complete valid colouring: both leftover
/// graphs need perfect matchings. Returns the full disconnected perfect
/// matching (cut plus leftover matchings) when it exists.
fn extend_to_dpm(g: &Graph, c: &RedBlueColouring) -> Option<Vec<(usize, usize)>> {
    let cut = bichromatic_edges(g, c);
    let mut in_cut = vec![false; g.n()];
    for &(u, v) in &cut {
        in_cut[u] = true;
        in_cut[v] = true;
    }
    let mut red_left = Vec::new();
    let mut blue_left = Vec::new();
    for v in 0..g.n() {
        if !in_cut[v] {
            match c.colour(v) {
                Colour::Red => red_left.push(v),
                Colour::Blue => blue_left.push(v),
            }
        }
    }
    // Cheap parity cut before running the matcher.
    if red_left.len() % 2 != 0 || blue_left.len() % 2 != 0 {
        return None;
    }
    let mut full = cut;
    for side in [red_left, blue_left] {
        let (sub, back) = g.induced(&side);
        let m = has_perfect_matching(&sub)?;
        for &(u, v) in m.edges() {
            full.push((back[u].min(back[v]), back[u].max(back[v])));
        }
    }
    full.sort_unstable();
    Some(full)
}

/// Decides Disconnected Perfect Matching. Yes-certificates carry a
/// perfect-extendable colouring and a perfect matching containing its cut.
pub fn solve_dpm(g: &Graph, budget: Budget) -> Result<(Certificate, SolveStats), SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if g.n() % 2 != 0 {
        // No perfect matching at all.
        return Ok((Certificate::no(Problem::DisconnectedPerfectMatching), SolveStats::default()));
    }
    let mut witness: Option<(RedBlueColouring, Vec<(usize, usize)>)> = None;
    let stats = enumerate_colourings(g, false, budget, &mut |colour| {
        let c = snapshot(colour);
        if let Some(m) = extend_to_dpm(g, &c) {
            witness = Some((c, m));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let cert = match witness {
        Some((c, m)) => Certificate {
            problem: Problem::DisconnectedPerfectMatching,
            answer: true,
            colouring: Some(c),
            matching: Some(Matching::new(g, m).expect("disconnected perfect matching is a matching")),
        },
        None => Certificate::no(Problem::DisconnectedPerfectMatching),
    };
    Ok((cert, stats))
}

/// Decides Perfect Matching Cut. Yes-certificates carry a perfect colouring;
/// its cut is a perfect matching.
pub fn solve_pmc(g: &Graph, budget: Budget) -> Result<(Certificate, SolveStats), SolveError> {
    let mut witness: Option<RedBlueColouring> = None;
    let stats = enumerate_colourings(g, true, budget, &mut |colour| {
        witness = Some(snapshot(colour));
        ControlFlow::Break(())
    })?;
    let cert = match witness {
        Some(c) => {
            let cut = Matching::new(g, bichromatic_edges(g, &c)).expect("perfect cut is a matching");
            Certificate {
                problem: Problem::PerfectMatchingCut,
                answer: true,
                colouring: Some(c),
                matching: Some(cut),
            }
        }
        None => Certificate::no(Problem::PerfectMatchingCut),
    };
    Ok((cert, stats))
}

pub fn solve(problem: Problem, g: &Graph, budget: Budget) -> Result<(Certificate, SolveStats), SolveError> {
    match problem {
        Problem::MatchingCut => solve_mc(g, budget),
        Problem::DisconnectedPerfectMatching => solve_dpm(g, budget),
        Problem::PerfectMatchingCut => solve_pmc(g, budget),
    }
}

/// Ground-truth oracle: sweeps all `2^n` colourings (vertex 0 pinned red by
/// swap symmetry) and classifies each. Limited to `n <= 20`.
pub fn brute_force_decide(problem: Problem, g: &Graph) -> Result<Certificate, SolveError> {
    const LIMIT: usize = 20;
    let n = g.n();
    if n > LIMIT {
        return Err(SolveError::ThresholdExceeded { n, limit: LIMIT });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if problem == Problem::DisconnectedPerfectMatching && n % 2 != 0 {
        return Ok(Certificate::no(problem));
    }
    let nbr_mask: Vec<u32> = (0..n)
        .map(|v| g.adj(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    'mask: for mask in 0..=(full >> 1) {
        let mask = mask << 1; // vertex 0 red
        if mask == 0 {
            continue; // monochromatic
        }
        let mut perfect = true;
        for v in 0..n {
            let opposite_side = if mask >> v & 1 == 0 { mask } else { !mask & full };
            let opp = (nbr_mask[v] & opposite_side).count_ones();
            if opp >= 2 {
                continue 'mask;
            }
            if opp == 0 {
                perfect = false;
            }
        }
        let colouring = RedBlueColouring(
            (0..n).map(|v| if mask >> v & 1 == 0 { Colour::Red } else { Colour::Blue }).collect(),
        );
        match problem {
            Problem::MatchingCut => {
                let cut = Matching::new(g, bichromatic_edges(g, &colouring)).unwrap();
                return Ok(Certificate {
                    problem,
                    answer: true,
                    colouring: Some(colouring),
                    matching: Some(cut),
                });
            }
            Problem::PerfectMatchingCut => {
                if perfect {
                    let cut = Matching::new(g, bichromatic_edges(g, &colouring)).unwrap();
                    return Ok(Certificate {
                        problem,
                        answer: true,
                        colouring: Some(colouring),
                        matching: Some(cut),
                    });
                }
            }
            Problem::DisconnectedPerfectMatching => {
                if let Some(m) = extend_to_dpm(g, &colouring) {
                    return Ok(Certificate {
                        problem,
                        answer: true,
                        colouring: Some(colouring),
                        matching: Some(Matching::new(g, m).unwrap()),
                    });
                }
            }
        }
    }
    Ok(Certificate::no(problem))
}

/// A Restricted Positive 1-in-k SAT instance: every clause has exactly `k`
/// distinct positive variables and each variable occurs at most `k` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    k: usize,
    num_vars: usize,
    clauses: Vec<Vec<usize>>,
    /// `occurrence[j][p]` is the 1-based occurrence ordinal of the variable at
    /// clause `j`, position `p`, scanning clauses in order.
    occurrence: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("k must be at least 3, got {0}")]
    KTooSmall(usize),
    #[error("clause {clause} has {got} literals, expected {expected}")]
    WrongArity { clause: usize, got: usize, expected: usize },
    #[error("variable x{var} repeated within clause {clause}")]
    DuplicateInClause { clause: usize, var: usize },
    #[error("variable x{var} occurs more than {max} times")]
    TooManyOccurrences { var: usize, max: usize },
    #[error("variable x{var} out of range (num_vars = {num_vars})")]
    VarOutOfRange { var: usize, num_vars: usize },
}

impl Formula {
    /// Variables are 0-based indices below `num_vars`.
    pub fn new(k: usize, num_vars: usize, clauses: Vec<Vec<usize>>) -> Result<Formula, FormulaError> {
        if k < 3 {
            return Err(FormulaError::KTooSmall(k));
        }
        let mut counts = vec![0usize; num_vars];
        let mut occurrence = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.iter().enumerate() {
            if clause.len() != k {
                return Err(FormulaError::WrongArity { clause: j, got: clause.len(), expected: k });
            }
            let mut ords = Vec::with_capacity(k);
            for (p, &var) in clause.iter().enumerate() {
                if var >= num_vars {
                    return Err(FormulaError::VarOutOfRange { var, num_vars });
                }
                if clause[..p].contains(&var) {
                    return Err(FormulaError::DuplicateInClause { clause: j, var });
                }
                counts[var] += 1;
                if counts[var] > k {
                    return Err(FormulaError::TooManyOccurrences { var, max: k });
                }
                ords.push(counts[var]);
            }
            occurrence.push(ords);
        }
        Ok(Formula { k, num_vars, clauses, occurrence })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    /// 1-based occurrence ordinal of the literal at `(clause, position)`.
    pub fn occurrence_ordinal(&self, clause: usize, position: usize) -> usize {
        self.occurrence[clause][position]
    }

    /// True iff exactly one variable per clause is true under `assignment`.
    pub fn satisfied_one_in_k(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars
            && self
                .clauses
                .iter()
                .all(|clause| clause.iter().filter(|&&v| assignment[v]).count() == 1)
    }
}

/// Finds an assignment with exactly one true variable per clause, or
/// exhaustively reports that none exists. Deterministic: variables decided in
/// ascending order, `true` tried first.
pub fn solve_one_in_k_sat(f: &Formula) -> Option<Vec<bool>> {
    let n = f.num_vars();
    let mut assignment = vec![false; n];
    let mut true_count = vec![0usize; f.num_clauses()];
    let mut undecided = vec![f.k(); f.num_clauses()];
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, clause) in f.clauses().iter().enumerate() {
        for &v in clause {
            by_var[v].push(j);
        }
    }

    fn go(
        f: &Formula,
        v: usize,
        assignment: &mut Vec<bool>,
        true_count: &mut Vec<usize>,
        undecided: &mut Vec<usize>,
        by_var: &[Vec<usize>],
    ) -> bool {
        if v == f.num_vars() {
            return true_count.iter().all(|&t| t == 1);
        }
        for value in [true, false] {
            assignment[v] = value;
            for &j in &by_var[v] {
                undecided[j] -= 1;
                if value {
                    true_count[j] += 1;
                }
            }
            let feasible = by_var[v]
                .iter()
                .all(|&j| true_count[j] <= 1 && (true_count[j] == 1 || undecided[j] > 0));
            if feasible && go(f, v + 1, assignment, true_count, undecided, by_var) {
                return true;
            }
            for &j in &by_var[v] {
                undecided[j] += 1;
                if value {
                    true_count[j] -= 1;
                }
            }
        }
        false
    }

    if go(f, 0, &mut assignment, &mut true_count, &mut undecided, &by_var) {
        Some(assignment)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{classify, colouring_from_str, ColouringClass};
    use crate::graph::{complete_bipartite, make_named, NamedGraph};

    fn named(k: NamedGraph) -> Graph {
        make_named(k).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn mc_examples() {
        let (cert, _) = solve_mc(&named(NamedGraph::Path(6)), budget()).unwrap();
        assert!(cert.answer);
        let report = classify(&named(NamedGraph::Path(6)), cert.colouring.as_ref().unwrap()).unwrap();
        assert!(report.class.is_valid());

        let (cert, _) = solve_mc(&named(NamedGraph::Complete(4)), budget()).unwrap();
        assert!(!cert.answer);

        let (cert, _) = solve_mc(&complete_bipartite(3, 3), budget()).unwrap();
        assert!(!cert.answer);
    }

    #[test]
    fn dpm_examples() {
        let (cert, _) = solve_dpm(&named(NamedGraph::Path(3)), budget()).unwrap();
        assert!(!cert.answer);

        let (cert, _) = solve_dpm(&named(NamedGraph::Cycle(6)), budget()).unwrap();
        assert!(cert.answer);
        let m = cert.matching.unwrap();
        assert!(m.is_perfect(&named(NamedGraph::Cycle(6))));

        let (cert, _) = solve_dpm(&named(NamedGraph::Path(6)), budget()).unwrap();
        assert!(cert.answer);
        let g = named(NamedGraph::Path(6));
        let report = classify(&g, cert.colouring.as_ref().unwrap()).unwrap();
        assert!(report.class.rank() >= ColouringClass::PerfectExtendable.rank());
        // The perfect matching contains the cut.
        let m = cert.matching.unwrap();
        for &(u, v) in &report.cut {
            assert!(m.contains(u, v));
        }
    }

    #[test]
    fn pmc_examples() {
        let (cert, _) = solve_pmc(&named(NamedGraph::Cycle(6)), budget()).unwrap();
        assert!(!cert.answer);

        let (cert, _) = solve_pmc(&named(NamedGraph::Path(6)), budget()).unwrap();
        assert!(cert.answer);
        let g = named(NamedGraph::Path(6));
        let report = classify(&g, cert.colouring.as_ref().unwrap()).unwrap();
        assert_eq!(report.class, ColouringClass::Perfect);

        let (cert, _) = solve_pmc(&named(NamedGraph::Cycle(4)), budget()).unwrap();
        assert!(cert.answer);
    }

    #[test]
    fn brute_force_examples() {
        let c8 = named(NamedGraph::Cycle(8));
        assert!(brute_force_decide(Problem::PerfectMatchingCut, &c8).unwrap().answer);
        let c10 = named(NamedGraph::Cycle(10));
        assert!(!brute_force_decide(Problem::PerfectMatchingCut, &c10).unwrap().answer);
        let k4 = named(NamedGraph::Complete(4));
        assert!(!brute_force_decide(Problem::MatchingCut, &k4).unwrap().answer);
        // The pattern RRBBRRBB is a perfect colouring of C_8.
        let c = colouring_from_str("RRBBRRBB").unwrap();
        assert_eq!(classify(&c8, &c).unwrap().class, ColouringClass::Perfect);
    }

    #[test]
    fn solvers_agree_with_brute_force_on_named_graphs() {
        let graphs = vec![
            named(NamedGraph::Path(2)),
            named(NamedGraph::Path(3)),
            named(NamedGraph::Path(6)),
            named(NamedGraph::Cycle(3)),
            named(NamedGraph::Cycle(4)),
            named(NamedGraph::Cycle(5)),
            named(NamedGraph::Cycle(6)),
            named(NamedGraph::Complete(4)),
            named(NamedGraph::Complete(5)),
            named(NamedGraph::Star(4)),
            complete_bipartite(3, 3),
        ];
        for g in &graphs {
            for p in [Problem::MatchingCut, Problem::DisconnectedPerfectMatching, Problem::PerfectMatchingCut] {
                let want = brute_force_decide(p, g).unwrap().answer;
                let (got, _) = solve(p, g, budget()).unwrap();
                assert_eq!(got.answer, want, "{:?} on {:?}", p, g);
            }
        }
    }

    #[test]
    fn determinism() {
        let g = named(NamedGraph::Path(6));
        let a = solve_dpm(&g, budget()).unwrap();
        let b = solve_dpm(&g, budget()).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let g = named(NamedGraph::Cycle(12));
        let err = solve_mc(&g, Budget::new(3)).unwrap_err();
        assert!(matches!(err, SolveError::BudgetExceeded { .. }));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(solve_mc(&g, budget()).unwrap_err(), SolveError::Disconnected);
        assert_eq!(
            brute_force_decide(Problem::MatchingCut, &g).unwrap_err(),
            SolveError::Disconnected
        );
    }

    #[test]
    fn single_vertex_and_edge() {
        let k1 = named(NamedGraph::Path(1));
        assert!(!solve_mc(&k1, budget()).unwrap().0.answer);
        assert!(!solve_pmc(&k1, budget()).unwrap().0.answer);
        let p2 = named(NamedGraph::Path(2));
        assert!(solve_mc(&p2, budget()).unwrap().0.answer);
        assert!(solve_pmc(&p2, budget()).unwrap().0.answer);
        assert!(solve_dpm(&p2, budget()).unwrap().0.answer);
    }

    #[test]
    fn formula_validation() {
        assert!(Formula::new(3, 3, vec![vec![0, 1, 2]]).is_ok());
        assert_eq!(
            Formula::new(3, 3, vec![vec![0, 1]]),
            Err(FormulaError::WrongArity { clause: 0, got: 2, expected: 3 })
        );
        assert_eq!(
            Formula::new(3, 3, vec![vec![0, 0, 1]]),
            Err(FormulaError::DuplicateInClause { clause: 0, var: 0 })
        );
        let four_times = Formula::new(
            3,
            5,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![0, 1, 4]],
        );
        assert_eq!(four_times, Err(FormulaError::TooManyOccurrences { var: 0, max: 3 }));
    }

    #[test]
    fn occurrence_ordinals() {
        let f = Formula::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3]]).unwrap();
        assert_eq!(f.occurrence_ordinal(0, 0), 1); // x0 first time
        assert_eq!(f.occurrence_ordinal(1, 0), 2); // x1 second time
        assert_eq!(f.occurrence_ordinal(2, 1), 3); // x2 third time
    }

    #[test]
    fn one_in_k_sat_examples() {
        let f = Formula::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let a = solve_one_in_k_sat(&f).unwrap();
        assert_eq!(a, vec![true, false, false]);

        let f = Formula::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3]]).unwrap();
        let a = solve_one_in_k_sat(&f).unwrap();
        assert!(f.satisfied_one_in_k(&a));
        assert_eq!(a, vec![false, false, true, false], "x2 alone is the unique solution");

        let f = Formula::new(
            3,
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(solve_one_in_k_sat(&f), None);
    }

    #[test]
    fn monotone_hierarchy_on_small_cycles() {
        for n in 3..=10 {
            let g = named(NamedGraph::Cycle(n));
            let mc = solve_mc(&g, budget()).unwrap().0.answer;
            let dpm = solve_dpm(&g, budget()).unwrap().0.answer;
            let pmc = solve_pmc(&g, budget()).unwrap().0.answer;
            assert!(!pmc || dpm);
            assert!(!dpm || mc);
        }
    }
}
