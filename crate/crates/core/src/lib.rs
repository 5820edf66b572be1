//! A workbench for matching cuts.
//!
//! Three decision problems on a connected graph `G`:
//!
//! * **MC** — does `G` have a *matching cut*, a matching that is also an edge cut?
//! * **DPM** — does `G` have a *disconnected perfect matching*, a perfect
//!   matching containing a matching cut?
//! * **PMC** — does `G` have a *perfect matching cut*?
//!
//! All three are equivalent to the existence of a red-blue vertex colouring of
//! a certain strength (see [`colouring`]), which is what the exact solvers in
//! [`solvers`] search for. The [`gadgets`] and [`reductions`] modules build the
//! hardness constructions that transport instances between the problems while
//! controlling girth, induced subgraphs, degree and bipartiteness; [`immunity`]
//! certifies and searches for the immune building blocks those constructions
//! consume.

pub mod colouring;
pub mod gadgets;
pub mod graph;
pub mod immunity;
pub mod io;
pub mod matching;
pub mod polynomial;
pub mod reductions;
pub mod solvers;
pub mod trace;

pub use colouring::{classify, Colour, ColouringClass, ColouringReport, RedBlueColouring};
pub use graph::{Girth, Graph, GraphProfile, NamedGraph};
pub use matching::Matching;
pub use solvers::{Budget, Certificate, Problem};
pub use trace::{ReductionTrace, RoleKind, RoleOrigin, VertexRole};
