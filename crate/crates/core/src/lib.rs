//! Numerical verification of Hermite–Hadamard type bounds for functions whose
//! derivative magnitudes are φ-convex or quasi-φ-convex along rotated
//! segments `[a, a + e^{iφ}(b − a)]` in the complex plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`expr`]: parse, differentiate and evaluate the function under test.
//! * [`segment`]: the rotated segment and its parameter grid.
//! * [`quadrature`]: adaptive Gauss–Kronrod reference integrals and the two
//!   integration-by-parts identities the bounds rest on.
//! * [`convexity`]: grid-based membership tests for the function classes.
//! * [`bounds`]: left- and right-hand sides of every bound plus the dispatcher.
//! * [`harness`]: corpus, seeded sweeps, falsification and reports.

pub mod bounds;
pub mod convexity;
pub mod exec;
pub mod expr;
pub mod harness;
pub mod quadrature;
pub mod segment;

pub use bounds::{BoundResult, HolderParams, Status, TheoremId};
pub use convexity::{ClassKind, ConvexityReport, Verdict};
pub use exec::Execution;
pub use expr::{parse, Expr, ScalarFn};
pub use segment::{PhiSegment, SegmentGrid};
