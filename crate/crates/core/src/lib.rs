//! Exact construction of convex chain pairs whose Minkowski midpoint set
//! holds a long convex subset, with independent largest-convex-subset
//! solvers and the matching bipartite graph family.
//!
//! All geometry runs over [`QSqrt3`], the field of numbers `p + q√3` with
//! rational `p`, `q`, so every predicate is decided exactly.

pub mod ci_solver;
pub mod construct;
pub mod exact;
pub mod geom;
pub mod graphs;
pub mod io;
pub mod report;

pub use ci_solver::{ci_bruteforce, ci_dp, CiResult};
pub use construct::{base_case, build, build_with, find_epsilon, step, EpsilonSearch, Level};
pub use exact::{QSqrt3, Rational};
pub use geom::{Chain, Point, PointSet};
pub use graphs::{BipartiteDrawing, BipartiteGraph};
pub use report::Check;
