//! Graph-cut toolkit built on the set-pair Lovász extension.
//!
//! The crate evaluates piecewise-linear extensions of nonnegative functions on
//! disjoint set-pairs `(A, B)` and uses them to express seven graph 2-/3-cut
//! problems (dual Cheeger, max 3-cut, two ratio max 3-cuts, maxcut, Cheeger,
//! anti-Cheeger) plus a ternary-encoded k-cut as equivalent continuous ratio
//! optimizations. Every continuous form is paired with an exhaustive discrete
//! oracle so the equivalences are checkable at desk scale.
//!
//! Module map:
//! - [`graph`]: weighted undirected graphs, edge-list I/O, boundary/volume.
//! - [`setpair`]: the domain of disjoint set-pairs, indicator vectors, the
//!   threshold chain decomposition.
//! - [`lovasz`]: generic extension evaluators (sum, integral, chain forms).
//! - [`functionals`]: closed-form continuous functionals and the five
//!   tabulated objective rows.
//! - [`cuts`]: the seven named cut problems, oracles and continuous forms.
//! - [`kcut`]: block-vector encoding of k-cut into set-pairs on `[nl]`.
//! - [`submodular`]: submodularity checkers and convexity probes.
//! - [`relax`]: Dinkelbach-style ratio descent and threshold rounding.

pub mod cuts;
pub mod functionals;
pub mod graph;
pub mod kcut;
pub mod lovasz;
pub mod num;
pub mod relax;
pub mod setpair;
pub mod submodular;

pub use graph::{Graph, VertexSet};
pub use setpair::{ChainDecomposition, NestedPair, SetPair};
