//! Batched tridiagonal solvers built on a parallel dichotomy sweep, and two
//! Poisson solvers that feed it long series of right-hand sides.
//!
//! * [`tridiag`]: matrix type, sequential sweep, dense reference solver,
//!   dominance, symmetrization and explicit inverse rows.
//! * [`dichotomy`]: preliminary phase, block sums, level-ordered boundary
//!   resolution and the batched solver.
//! * [`runtime`]: logical PE decomposition and the simulated / threaded
//!   execution engines.
//! * [`poisson`]: variable-separation (sine transform) and ADI solvers for
//!   the 2D Dirichlet problem.
//! * [`cli`]: the `parsweep` command line and benchmark harness.

pub mod cli;
pub mod dichotomy;
pub mod error;
pub mod poisson;
pub mod runtime;
pub mod tridiag;

pub use dichotomy::{DichotomySolver, Partition};
pub use error::{Error, Result};
pub use tridiag::TridiagMatrix;
