//! Role annotations mapping constructed vertices back to their source.
//!
//! Every constructed graph (gadget or reduction output) carries a
//! [`ReductionTrace`] assigning exactly one [`VertexRole`] to each vertex.
//! Traces are what make witness transport possible: they let a colouring of a
//! reduced instance be pulled back to the source instance and vice versa.

use std::fmt;

/// What a constructed vertex *is* within its gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RoleKind {
    /// A vertex of the source graph, carried over unchanged.
    Original,
    /// A variable-gadget hub (`u`/`v` side recorded in the index).
    Hub,
    /// A hub port used by the inter-gadget cycles.
    CyclePort,
    /// A hub port reserved for a clause gadget.
    ClausePort,
    /// Auxiliary vertex of the first family in a clause gadget.
    AuxA,
    /// Auxiliary vertex of the second family in a clause gadget.
    AuxB,
    /// A clause vertex (the per-clause centre or one of its cycle vertices).
    ClauseVertex,
    /// The single star vertex joined to all clause vertices.
    StarVertex,
    /// Interior vertex of a grafted immune block.
    ImmuneInternal,
    /// Vertex of an edge gadget strip on the `u` side.
    StripU,
    /// Vertex of an edge gadget strip on the `v` side.
    StripV,
    /// Top vertex of a diamond-column gadget.
    ColumnTop,
    /// Bottom vertex of a diamond-column gadget.
    ColumnBottom,
    /// Internal vertex created by an edge subdivision.
    SubdivisionPoint,
}

impl RoleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RoleKind::Original => "original",
            RoleKind::Hub => "hub",
            RoleKind::CyclePort => "cycle-port",
            RoleKind::ClausePort => "clause-port",
            RoleKind::AuxA => "aux-a",
            RoleKind::AuxB => "aux-b",
            RoleKind::ClauseVertex => "clause-vertex",
            RoleKind::StarVertex => "star-vertex",
            RoleKind::ImmuneInternal => "immune-internal",
            RoleKind::StripU => "strip-u",
            RoleKind::StripV => "strip-v",
            RoleKind::ColumnTop => "column-top",
            RoleKind::ColumnBottom => "column-bottom",
            RoleKind::SubdivisionPoint => "subdivision-point",
        }
    }

    pub fn parse(s: &str) -> Option<RoleKind> {
        Some(match s {
            "original" => RoleKind::Original,
            "hub" => RoleKind::Hub,
            "cycle-port" => RoleKind::CyclePort,
            "clause-port" => RoleKind::ClausePort,
            "aux-a" => RoleKind::AuxA,
            "aux-b" => RoleKind::AuxB,
            "clause-vertex" => RoleKind::ClauseVertex,
            "star-vertex" => RoleKind::StarVertex,
            "immune-internal" => RoleKind::ImmuneInternal,
            "strip-u" => RoleKind::StripU,
            "strip-v" => RoleKind::StripV,
            "column-top" => RoleKind::ColumnTop,
            "column-bottom" => RoleKind::ColumnBottom,
            "subdivision-point" => RoleKind::SubdivisionPoint,
            _ => return None,
        })
    }
}

impl fmt::Display for RoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a constructed vertex came from in the source instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoleOrigin {
    /// A source-graph vertex.
    SourceVertex(usize),
    /// A source-graph vertex inside a numbered copy of the whole graph.
    SourceVertexCopy(usize, usize),
    /// A source-graph edge.
    SourceEdge(usize, usize),
    /// A clause of the source formula.
    Clause(usize),
    /// A source-formula variable.
    Variable(usize),
    /// No single source object (e.g. the star vertex).
    Free,
}

/// The role record of one constructed vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRole {
    pub kind: RoleKind,
    pub origin: RoleOrigin,
    /// Disambiguating index tuple, gadget specific.
    pub index: Vec<usize>,
}

impl VertexRole {
    pub fn new(kind: RoleKind, origin: RoleOrigin, index: Vec<usize>) -> Self {
        VertexRole { kind, origin, index }
    }

    pub fn original(v: usize) -> Self {
        VertexRole::new(RoleKind::Original, RoleOrigin::SourceVertex(v), vec![])
    }
}

/// Dense per-vertex role table for a constructed graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    roles: Vec<VertexRole>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        ReductionTrace { roles: Vec::new() }
    }

    /// Records the role of the next vertex; returns its id.
    pub fn push(&mut self, role: VertexRole) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    pub fn role(&self, v: usize) -> &VertexRole {
        &self.roles[v]
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &VertexRole)> {
        self.roles.iter().enumerate()
    }

    /// All vertices with `kind == Original`, as `(constructed id, source id)`.
    pub fn originals(&self) -> Vec<(usize, usize)> {
        self.iter()
            .filter_map(|(v, r)| match (r.kind, r.origin) {
                (RoleKind::Original, RoleOrigin::SourceVertex(s)) => Some((v, s)),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_strings_round_trip() {
        let kinds = [
            RoleKind::Original,
            RoleKind::Hub,
            RoleKind::CyclePort,
            RoleKind::ClausePort,
            RoleKind::AuxA,
            RoleKind::AuxB,
            RoleKind::ClauseVertex,
            RoleKind::StarVertex,
            RoleKind::ImmuneInternal,
            RoleKind::StripU,
            RoleKind::StripV,
            RoleKind::ColumnTop,
            RoleKind::ColumnBottom,
            RoleKind::SubdivisionPoint,
        ];
        for k in kinds {
            assert_eq!(RoleKind::parse(k.as_str()), Some(k));
        }
        assert_eq!(RoleKind::parse("nonsense"), None);
    }

    #[test]
    fn originals_filters_by_kind() {
        let mut t = ReductionTrace::new();
        t.push(VertexRole::original(7));
        t.push(VertexRole::new(RoleKind::StarVertex, RoleOrigin::Free, vec![]));
        assert_eq!(t.originals(), vec![(0, 7)]);
    }
}
