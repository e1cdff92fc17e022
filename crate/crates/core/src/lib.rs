//! Numerical well-posedness diagnostics for perturbed split equilibrium
//! problems over axis-aligned boxes.
//!
//! The library models a problem family `SEP_p(f,g,C,Q)`: find `(x*, y*)` with
//! `x* in C`, `y* = A x* in Q`, `f(p,x*,x) >= 0` for all `x` in `C` and
//! `g(p,y*,y) >= 0` for all `y` in `Q`, where the bifunctions depend on a
//! parameter `p` ranging over a closed ball `M` around a nominal `p*`.
//! Everything is sampled on deterministic lattices:
//!
//! * [`expr`] parses and evaluates the bifunction expressions,
//! * [`geometry`] provides boxes, point clouds and the set metrics
//!   (diameter, Hausdorff distance, a clustered-spread estimate),
//! * [`problem`] holds the instance model, residuals and sampled hypothesis
//!   checkers,
//! * [`analysis`] computes approximate solution sets `S(eps)`, runs
//!   `eps`-sweeps and classifies the well-posedness behavior,
//! * [`sequences`] verifies and generates approximating sequences,
//! * [`presets`] bundles two reproducible example instances.
//!
//! With the default `parallel` feature the lattice scans and the quadratic
//! set metrics run on rayon; results are byte-identical at any thread count.
//! Disabling the feature compiles the sequential fallback only.

pub mod analysis;
pub mod exec;
pub mod expr;
pub mod geometry;
pub mod presets;
pub mod problem;
pub mod sequences;

pub use analysis::{ApproxSolutionSet, Classification, SamplingPlan, SweepRecord, SweepResult};
pub use expr::{Bindings, Expression, Namespace, ParseError, VarRef};
pub use geometry::{Box, LinearOperator, Point, PointCloud};
pub use problem::{PerturbedSep, PropertyReport, Residual};
pub use sequences::{SequenceStep, VerificationReport};
