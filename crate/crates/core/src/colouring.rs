//! Red-blue colourings and their classification.
//!
//! A red-blue colouring of a connected graph is *valid* when every vertex has
//! at most one neighbour of the opposite colour and both colours occur. The
//! bi-chromatic edges of a valid colouring form a matching that is also an
//! edge cut. A valid colouring is *perfect* when every vertex has exactly one
//! opposite-coloured neighbour, and *perfect-extendable* when the two
//! monochromatic leftover graphs both admit perfect matchings. These three
//! strengths characterise MC, PMC and DPM respectively.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn flipped(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colour::Red => write!(f, "R"),
            Colour::Blue => write!(f, "B"),
        }
    }
}

/// A total assignment of colours to the vertices `0..n` of some graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlueColouring(pub Vec<Colour>);

impl RedBlueColouring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colour(&self, v: usize) -> Colour {
        self.0[v]
    }

    /// The colouring with red and blue exchanged.
    pub fn swapped(&self) -> RedBlueColouring {
        RedBlueColouring(self.0.iter().map(|c| c.flipped()).collect())
    }
}

/// Why a colouring failed validity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// Only one colour is used.
    Monochromatic,
    /// Some vertex has two or more opposite-coloured neighbours.
    TooManyOpposite { vertex: usize },
}

/// Classification of a colouring, strongest label applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColouringClass {
    Invalid(InvalidReason),
    ValidOnly,
    PerfectExtendable,
    Perfect,
}

impl ColouringClass {
    pub fn is_valid(self) -> bool {
        !matches!(self, ColouringClass::Invalid(_))
    }

    /// Strength rank: Invalid 0, ValidOnly 1, PerfectExtendable 2, Perfect 3.
    pub fn rank(self) -> u8 {
        match self {
            ColouringClass::Invalid(_) => 0,
            ColouringClass::ValidOnly => 1,
            ColouringClass::PerfectExtendable => 2,
            ColouringClass::Perfect => 3,
        }
    }
}

/// Full classification report: colour sets, interfaces and cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouringReport {
    pub class: ColouringClass,
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
    /// Red vertices with a (unique) blue neighbour.
    pub red_interface: Vec<usize>,
    /// Blue vertices with a (unique) red neighbour.
    pub blue_interface: Vec<usize>,
    /// The bi-chromatic edges, sorted.
    pub cut: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colouring assigns {got} vertices but the graph has {expected}")]
    NotTotal { got: usize, expected: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("colouring is not valid")]
    InvalidColouring(InvalidReason),
}

/// Classifies a total colouring of a connected graph.
pub fn classify(g: &Graph, c: &RedBlueColouring) -> Result<ColouringReport, ColouringError> {
    if c.len() != g.n() {
        return Err(ColouringError::NotTotal { got: c.len(), expected: g.n() });
    }
    if !g.is_connected() {
        return Err(ColouringError::Disconnected);
    }

    let n = g.n();
    let mut red = Vec::new();
    let mut blue = Vec::new();
    let mut red_interface = Vec::new();
    let mut blue_interface = Vec::new();
    let mut cut = Vec::new();
    let mut violation: Option<usize> = None;

    for v in 0..n {
        let opposite = g.adj(v).iter().filter(|&&w| c.colour(w) != c.colour(v)).count();
        if opposite >= 2 && violation.is_none() {
            violation = Some(v);
        }
        match c.colour(v) {
            Colour::Red => {
                red.push(v);
                if opposite == 1 {
                    red_interface.push(v);
                }
            }
            Colour::Blue => {
                blue.push(v);
                if opposite == 1 {
                    blue_interface.push(v);
                }
            }
        }
    }
    for &(u, v) in g.edges() {
        if c.colour(u) != c.colour(v) {
            cut.push((u, v));
        }
    }

    let class = if let Some(vertex) = violation {
        ColouringClass::Invalid(InvalidReason::TooManyOpposite { vertex })
    } else if red.is_empty() || blue.is_empty() {
        ColouringClass::Invalid(InvalidReason::Monochromatic)
    } else if red_interface.len() == red.len() && blue_interface.len() == blue.len() {
        ColouringClass::Perfect
    } else {
        let red_left: Vec<usize> = red.iter().copied().filter(|v| !red_interface.contains(v)).collect();
        let blue_left: Vec<usize> = blue.iter().copied().filter(|v| !blue_interface.contains(v)).collect();
        let (gr, _) = g.induced(&red_left);
        let (gb, _) = g.induced(&blue_left);
        if matching::has_perfect_matching(&gr).is_some() && matching::has_perfect_matching(&gb).is_some() {
            ColouringClass::PerfectExtendable
        } else {
            ColouringClass::ValidOnly
        }
    };

    Ok(ColouringReport { class, red, blue, red_interface, blue_interface, cut })
}

/// The bi-chromatic edges of a valid colouring. Errors on invalid input.
pub fn cut_edges(g: &Graph, c: &RedBlueColouring) -> Result<Vec<(usize, usize)>, ColouringError> {
    let report = classify(g, c)?;
    match report.class {
        ColouringClass::Invalid(reason) => Err(ColouringError::InvalidColouring(reason)),
        _ => Ok(report.cut),
    }
}

/// Parses a compact colour string like `"RBBRRB"`, one letter per vertex.
pub fn colouring_from_str(s: &str) -> Option<RedBlueColouring> {
    let mut out = Vec::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            'R' | 'r' => out.push(Colour::Red),
            'B' | 'b' => out.push(Colour::Blue),
            _ => return None,
        }
    }
    Some(RedBlueColouring(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, NamedGraph};

    fn p6() -> Graph {
        make_named(NamedGraph::Path(6)).unwrap()
    }

    fn col(s: &str) -> RedBlueColouring {
        colouring_from_str(s).unwrap()
    }

    #[test]
    fn p6_valid_only() {
        let report = classify(&p6(), &col("RBBBRR")).unwrap();
        assert_eq!(report.class, ColouringClass::ValidOnly);
        assert_eq!(report.cut, vec![(0, 1), (3, 4)]);
        // The red leftover {5} is a single vertex and has no perfect matching.
        assert_eq!(report.red, vec![0, 4, 5]);
        assert_eq!(report.red_interface, vec![0, 4]);
    }

    #[test]
    fn p6_perfect_extendable() {
        let report = classify(&p6(), &col("RBBBBR")).unwrap();
        assert_eq!(report.class, ColouringClass::PerfectExtendable);
        assert_eq!(report.cut, vec![(0, 1), (4, 5)]);
    }

    #[test]
    fn p6_perfect() {
        let report = classify(&p6(), &col("RBBRRB")).unwrap();
        assert_eq!(report.class, ColouringClass::Perfect);
        assert_eq!(report.cut, vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(report.red, report.red_interface);
        assert_eq!(report.blue, report.blue_interface);
    }

    #[test]
    fn monochromatic_is_invalid() {
        let report = classify(&p6(), &col("RRRRRR")).unwrap();
        assert_eq!(report.class, ColouringClass::Invalid(InvalidReason::Monochromatic));
        assert!(cut_edges(&p6(), &col("RRRRRR")).is_err());
    }

    #[test]
    fn two_opposite_neighbours_is_invalid() {
        // Middle vertex of P_3 coloured against both ends.
        let p3 = make_named(NamedGraph::Path(3)).unwrap();
        let report = classify(&p3, &col("RBR")).unwrap();
        assert_eq!(
            report.class,
            ColouringClass::Invalid(InvalidReason::TooManyOpposite { vertex: 1 })
        );
    }

    #[test]
    fn classify_is_swap_invariant() {
        let g = p6();
        for s in ["RBBBRR", "RBBBBR", "RBBRRB", "RRRRRR", "RBRBRB"] {
            let a = classify(&g, &col(s)).unwrap();
            let b = classify(&g, &col(s).swapped()).unwrap();
            assert_eq!(a.class.rank(), b.class.rank());
            assert_eq!(a.red, b.blue);
            assert_eq!(a.red_interface, b.blue_interface);
            assert_eq!(a.cut, b.cut);
        }
    }

    #[test]
    fn perfect_cut_is_a_perfect_matching() {
        let g = p6();
        let report = classify(&g, &col("RBBRRB")).unwrap();
        let mut covered = vec![false; g.n()];
        for &(u, v) in &report.cut {
            assert!(!covered[u] && !covered[v]);
            covered[u] = true;
            covered[v] = true;
        }
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn rejects_partial_and_disconnected() {
        let g = p6();
        assert_eq!(
            classify(&g, &col("RB")),
            Err(ColouringError::NotTotal { got: 2, expected: 6 })
        );
        let disconnected = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(classify(&disconnected, &col("RBRB")), Err(ColouringError::Disconnected));
    }
}
