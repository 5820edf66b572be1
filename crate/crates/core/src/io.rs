//! Text formats: graph documents, 1-in-k CNF, and certificates, plus the
//! independent certificate verifier.
//!
//! Graph documents use 1-based vertex ids:
//!
//! ```text
//! c optional comment
//! p graph <n> <m>
//! e <u> <v>          (m lines, 1 <= u < v <= n)
//! r <id> <kind> <indices...>   (optional role sidecar, one line per vertex)
//! ```
//!
//! Certificates:
//!
//! ```text
//! s <MC|DPM|PMC> <YES|NO>
//! v <id> <R|B>       (YES only, one line per vertex)
//! m <u> <v>          (YES only, one line per matching edge)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::colouring::{classify, Colour, ColouringClass, RedBlueColouring};
use crate::graph::{Graph, GraphBuilder};
use crate::matching::Matching;
use crate::solvers::{Certificate, Formula, FormulaError, Problem};
use crate::trace::{ReductionTrace, RoleKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop {v}")]
    Loop { line: usize, v: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex id {v} out of range 1..={n}")]
    IdOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: endpoints must satisfy u < v")]
    Unordered { line: usize },
    #[error("expected {expected} edges, found {got}")]
    EdgeCountMismatch { expected: usize, got: usize },
    #[error("missing `p graph` header")]
    MissingHeader,
    #[error("line {line}: {source}")]
    Formula { line: usize, source: FormulaError },
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("vertex {0} is uncoloured in the certificate")]
    Uncoloured(usize),
    #[error("matching edge {0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("certificate colouring classifies as {0}")]
    NotStrongEnough(String),
    #[error("certificate matching is wrong: {0}")]
    WrongMatching(String),
    #[error("certificate graph has {got} vertices, expected {expected}")]
    SizeMismatch { got: usize, expected: usize },
}

/// Parsed role sidecar: raw `(kind, indices)` rows by vertex id.
pub type RoleSidecar = Vec<Option<(RoleKind, Vec<usize>)>>;

/// Parses a graph document. Role sidecar lines are collected when present.
pub fn parse_graph(text: &str) -> Result<(Graph, Option<RoleSidecar>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut edges_seen = 0usize;
    let mut roles: Option<RoleSidecar> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::Malformed { line, msg: "duplicate header".into() });
                }
                if fields.len() != 4 || fields[1] != "graph" {
                    return Err(ParseError::Malformed { line, msg: "expected `p graph <n> <m>`".into() });
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad vertex count".into() })?;
                let m: usize = fields[3]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad edge count".into() })?;
                header = Some((n, m));
                builder = Some(GraphBuilder::new(n));
            }
            "e" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                if fields.len() != 3 {
                    return Err(ParseError::Malformed { line, msg: "expected `e <u> <v>`".into() });
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad endpoint".into() })?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad endpoint".into() })?;
                if u == v {
                    return Err(ParseError::Loop { line, v: u });
                }
                if u == 0 || v == 0 || u > n || v > n {
                    let bad = if u == 0 || u > n { u } else { v };
                    return Err(ParseError::IdOutOfRange { line, v: bad, n });
                }
                if u >= v {
                    return Err(ParseError::Unordered { line });
                }
                let b = builder.as_mut().expect("header sets builder");
                if b.has_edge(u - 1, v - 1) {
                    return Err(ParseError::DuplicateEdge { line, u, v });
                }
                b.add_edge(u - 1, v - 1).expect("validated above");
                edges_seen += 1;
            }
            "r" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                if fields.len() < 3 {
                    return Err(ParseError::Malformed { line, msg: "expected `r <id> <kind> ...`".into() });
                }
                let id: usize = fields[1]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad role id".into() })?;
                if id == 0 || id > n {
                    return Err(ParseError::IdOutOfRange { line, v: id, n });
                }
                let kind = RoleKind::parse(fields[2])
                    .ok_or_else(|| ParseError::Malformed { line, msg: format!("unknown role `{}`", fields[2]) })?;
                let indices: Vec<usize> = fields[3..]
                    .iter()
                    .map(|f| f.parse().map_err(|_| ParseError::Malformed { line, msg: "bad role index".into() }))
                    .collect::<Result<_, _>>()?;
                let sidecar = roles.get_or_insert_with(|| vec![None; n]);
                sidecar[id - 1] = Some((kind, indices));
            }
            other => {
                return Err(ParseError::Malformed { line, msg: format!("unknown record `{other}`") });
            }
        }
    }
    let (_, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges_seen != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, got: edges_seen });
    }
    Ok((builder.unwrap().build(), roles))
}

/// Emits the canonical graph document, with role sidecar lines when a trace
/// is supplied.
pub fn emit_graph(g: &Graph, trace: Option<&ReductionTrace>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p graph {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if let Some(trace) = trace {
        for (v, role) in trace.iter() {
            let mut line = format!("r {} {}", v + 1, role.kind);
            for i in &role.index {
                let _ = write!(line, " {i}");
            }
            let _ = writeln!(out, "{line}");
        }
    }
    out
}

/// Parses a 1-in-k CNF in DIMACS style: `p cnf <vars> <clauses>` and one
/// clause per line, `k` positive literals terminated by `0`.
pub fn parse_one_in_k_cnf(text: &str, k: usize) -> Result<Formula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<usize>> = Vec::new();
    let mut header_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("p ") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(ParseError::Malformed { line, msg: "expected `p cnf <vars> <clauses>`".into() });
            }
            let nv = fields[1]
                .parse()
                .map_err(|_| ParseError::Malformed { line, msg: "bad variable count".into() })?;
            let nc = fields[2]
                .parse()
                .map_err(|_| ParseError::Malformed { line, msg: "bad clause count".into() })?;
            header = Some((nv, nc));
            header_line = line;
            continue;
        }
        let (nv, _) = header.ok_or(ParseError::MissingHeader)?;
        let lits: Vec<i64> = l
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| ParseError::Malformed { line, msg: "bad literal".into() }))
            .collect::<Result<_, _>>()?;
        if lits.last() != Some(&0) {
            return Err(ParseError::Malformed { line, msg: "clause must end with 0".into() });
        }
        let body = &lits[..lits.len() - 1];
        if body.iter().any(|&x| x < 0) {
            return Err(ParseError::Malformed { line, msg: "negative literal in positive formula".into() });
        }
        if body.len() != k {
            return Err(ParseError::Formula {
                line,
                source: FormulaError::WrongArity { clause: clauses.len(), got: body.len(), expected: k },
            });
        }
        let mut clause = Vec::with_capacity(k);
        for &lit in body {
            let var = lit as usize;
            if var == 0 || var > nv {
                return Err(ParseError::IdOutOfRange { line, v: var, n: nv });
            }
            clause.push(var - 1);
        }
        clauses.push(clause);
    }
    let (nv, nc) = header.ok_or(ParseError::MissingHeader)?;
    if clauses.len() != nc {
        return Err(ParseError::EdgeCountMismatch { expected: nc, got: clauses.len() });
    }
    Formula::new(k, nv, clauses).map_err(|source| ParseError::Formula { line: header_line, source })
}

/// Serialises a certificate.
pub fn emit_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    let answer = if cert.answer { "YES" } else { "NO" };
    let _ = writeln!(out, "s {} {answer}", cert.problem.code());
    if cert.answer {
        if let Some(c) = &cert.colouring {
            for v in 0..c.len() {
                let _ = writeln!(out, "v {} {}", v + 1, c.colour(v));
            }
        }
        if let Some(m) = &cert.matching {
            for &(u, v) in m.edges() {
                let _ = writeln!(out, "m {} {}", u + 1, v + 1);
            }
        }
    }
    out
}

/// Parses a certificate; matching edges are kept as raw pairs so that
/// verification against a concrete graph can report failures precisely.
pub fn parse_certificate(text: &str) -> Result<ParsedCertificate, ParseError> {
    let mut problem: Option<Problem> = None;
    let mut answer = false;
    let mut colours: Vec<(usize, Colour)> = Vec::new();
    let mut matching: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields[0] {
            "s" => {
                if fields.len() != 3 {
                    return Err(ParseError::Malformed { line, msg: "expected `s <problem> <YES|NO>`".into() });
                }
                problem = Problem::parse(fields[1]);
                if problem.is_none() {
                    return Err(ParseError::Malformed { line, msg: format!("unknown problem `{}`", fields[1]) });
                }
                answer = match fields[2] {
                    "YES" => true,
                    "NO" => false,
                    other => {
                        return Err(ParseError::Malformed { line, msg: format!("unknown answer `{other}`") })
                    }
                };
            }
            "v" => {
                if fields.len() != 3 {
                    return Err(ParseError::Malformed { line, msg: "expected `v <id> <R|B>`".into() });
                }
                let id: usize = fields[1]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad vertex id".into() })?;
                if id == 0 {
                    return Err(ParseError::Malformed { line, msg: "vertex ids are 1-based".into() });
                }
                let colour = match fields[2] {
                    "R" => Colour::Red,
                    "B" => Colour::Blue,
                    other => {
                        return Err(ParseError::Malformed { line, msg: format!("unknown colour `{other}`") })
                    }
                };
                colours.push((id - 1, colour));
            }
            "m" => {
                if fields.len() != 3 {
                    return Err(ParseError::Malformed { line, msg: "expected `m <u> <v>`".into() });
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad endpoint".into() })?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| ParseError::Malformed { line, msg: "bad endpoint".into() })?;
                if u == 0 || v == 0 {
                    return Err(ParseError::Malformed { line, msg: "vertex ids are 1-based".into() });
                }
                matching.push((u - 1, v - 1));
            }
            other => return Err(ParseError::Malformed { line, msg: format!("unknown record `{other}`") }),
        }
    }
    let problem = problem.ok_or(ParseError::MissingHeader)?;
    Ok(ParsedCertificate { problem, answer, colours, matching })
}

/// A certificate as read from disk, not yet validated against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCertificate {
    pub problem: Problem,
    pub answer: bool,
    pub colours: Vec<(usize, Colour)>,
    pub matching: Vec<(usize, usize)>,
}

impl ParsedCertificate {
    /// Resolves against a concrete graph, checking totality and edge
    /// membership, and yields a structured certificate.
    pub fn resolve(&self, g: &Graph) -> Result<Certificate, VerifyError> {
        if !self.answer {
            return Ok(Certificate::no(self.problem));
        }
        let mut colours: Vec<Option<Colour>> = vec![None; g.n()];
        for &(v, c) in &self.colours {
            if v >= g.n() {
                return Err(VerifyError::SizeMismatch { got: v + 1, expected: g.n() });
            }
            colours[v] = Some(c);
        }
        let mut total = Vec::with_capacity(g.n());
        for (v, c) in colours.into_iter().enumerate() {
            total.push(c.ok_or(VerifyError::Uncoloured(v))?);
        }
        for &(u, v) in &self.matching {
            if !g.has_edge(u, v) {
                return Err(VerifyError::NotAnEdge(u + 1, v + 1));
            }
        }
        let matching = Matching::new(g, self.matching.clone())
            .map_err(|e| VerifyError::WrongMatching(e.to_string()))?;
        Ok(Certificate {
            problem: self.problem,
            answer: true,
            colouring: Some(RedBlueColouring(total)),
            matching: Some(matching),
        })
    }
}

/// Independent verification of a YES certificate: the colouring must classify
/// at the problem's strength and the matching must be exactly the cut (MC,
/// PMC) or a perfect matching containing the cut (DPM). NO certificates carry
/// no witness and pass vacuously.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<(), VerifyError> {
    if !cert.answer {
        return Ok(());
    }
    let colouring = cert
        .colouring
        .as_ref()
        .ok_or_else(|| VerifyError::NotStrongEnough("YES certificate lacks a colouring".into()))?;
    if colouring.len() != g.n() {
        return Err(VerifyError::SizeMismatch { got: colouring.len(), expected: g.n() });
    }
    let matching = cert
        .matching
        .as_ref()
        .ok_or_else(|| VerifyError::WrongMatching("YES certificate lacks a matching".into()))?;
    for &(u, v) in matching.edges() {
        if !g.has_edge(u, v) {
            return Err(VerifyError::NotAnEdge(u + 1, v + 1));
        }
    }
    let report = classify(g, colouring).map_err(|e| VerifyError::NotStrongEnough(e.to_string()))?;
    match cert.problem {
        Problem::MatchingCut => {
            if !report.class.is_valid() {
                return Err(VerifyError::NotStrongEnough(format!("{:?}", report.class)));
            }
            if matching.edges() != report.cut.as_slice() {
                return Err(VerifyError::WrongMatching("matching differs from the cut".into()));
            }
        }
        Problem::PerfectMatchingCut => {
            if report.class != ColouringClass::Perfect {
                return Err(VerifyError::NotStrongEnough(format!("{:?}", report.class)));
            }
            if matching.edges() != report.cut.as_slice() {
                return Err(VerifyError::WrongMatching("matching differs from the cut".into()));
            }
        }
        Problem::DisconnectedPerfectMatching => {
            if !report.class.is_valid() {
                return Err(VerifyError::NotStrongEnough(format!("{:?}", report.class)));
            }
            if !matching.is_perfect(g) {
                return Err(VerifyError::WrongMatching("matching is not perfect".into()));
            }
            for &(u, v) in &report.cut {
                if !matching.contains(u, v) {
                    return Err(VerifyError::WrongMatching(format!(
                        "cut edge {}-{} missing from the matching",
                        u + 1,
                        v + 1
                    )));
                }
            }
            // A perfect matching containing the whole cut certifies
            // perfect-extendability directly.
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, NamedGraph};
    use crate::solvers::{solve_pmc, Budget};

    #[test]
    fn parse_simple_graphs() {
        let (g, roles) = parse_graph("p graph 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert!(roles.is_none());

        let (g, _) = parse_graph("c triangle\np graph 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.girth(), crate::graph::Girth::Finite(3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_graph("p graph 2 1\ne 1 1\n"),
            Err(ParseError::Loop { line: 2, v: 1 })
        );
        assert_eq!(
            parse_graph("p graph 3 2\ne 1 2\ne 1 2\n"),
            Err(ParseError::DuplicateEdge { line: 3, u: 1, v: 2 })
        );
        assert_eq!(
            parse_graph("p graph 2 1\ne 1 3\n"),
            Err(ParseError::IdOutOfRange { line: 2, v: 3, n: 2 })
        );
        assert_eq!(parse_graph("p graph 2 1\ne 2 1\n"), Err(ParseError::Unordered { line: 2 }));
        assert_eq!(
            parse_graph("p graph 2 2\ne 1 2\n"),
            Err(ParseError::EdgeCountMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn graph_round_trip() {
        let g = make_named(NamedGraph::Cycle(6)).unwrap();
        let text = emit_graph(&g, None);
        let (parsed, _) = parse_graph(&text).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn role_sidecar_round_trip() {
        let t = crate::gadgets::build_t(1).unwrap();
        let text = emit_graph(&t.graph, Some(&t.trace));
        let (parsed, roles) = parse_graph(&text).unwrap();
        assert_eq!(parsed, t.graph);
        let roles = roles.unwrap();
        assert_eq!(roles.len(), t.graph.n());
        assert_eq!(roles[2].as_ref().unwrap().0, RoleKind::StripU);
    }

    #[test]
    fn cnf_parsing() {
        let f = parse_one_in_k_cnf("p cnf 3 1\n1 2 3 0\n", 3).unwrap();
        assert_eq!(f.num_clauses(), 1);
        assert_eq!(f.occurrence_ordinal(0, 0), 1);

        assert!(matches!(
            parse_one_in_k_cnf("p cnf 3 1\n1 2 0\n", 3),
            Err(ParseError::Formula { source: FormulaError::WrongArity { .. }, .. })
        ));
        assert!(matches!(
            parse_one_in_k_cnf("p cnf 3 1\n1 -2 3 0\n", 3),
            Err(ParseError::Malformed { .. })
        ));
        // Four occurrences of variable 1 with k = 3.
        let text = "p cnf 5 4\n1 2 3 0\n1 2 4 0\n1 3 4 0\n1 2 5 0\n";
        assert!(matches!(
            parse_one_in_k_cnf(text, 3),
            Err(ParseError::Formula { source: FormulaError::TooManyOccurrences { .. }, .. })
        ));
    }

    #[test]
    fn certificate_round_trip_and_verify() {
        let g = make_named(NamedGraph::Path(6)).unwrap();
        let (cert, _) = solve_pmc(&g, Budget::default()).unwrap();
        assert!(cert.answer);
        let text = emit_certificate(&cert);
        let parsed = parse_certificate(&text).unwrap().resolve(&g).unwrap();
        assert_eq!(parsed, cert);
        verify_certificate(&g, &parsed).unwrap();
    }

    #[test]
    fn tampered_certificate_rejected() {
        let g = make_named(NamedGraph::Path(6)).unwrap();
        let (cert, _) = solve_pmc(&g, Budget::default()).unwrap();
        let mut tampered = cert.clone();
        let mut colours = tampered.colouring.clone().unwrap();
        colours.0[0] = colours.0[0].flipped();
        tampered.colouring = Some(colours);
        assert!(verify_certificate(&g, &tampered).is_err());
    }

    #[test]
    fn no_certificate_has_no_witness_lines() {
        let cert = Certificate::no(Problem::MatchingCut);
        let text = emit_certificate(&cert);
        assert_eq!(text, "s MC NO\n");
        let parsed = parse_certificate(&text).unwrap();
        assert!(!parsed.answer);
        assert!(parsed.colours.is_empty());
    }
}
