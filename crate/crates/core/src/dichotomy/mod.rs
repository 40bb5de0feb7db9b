//! Parallel dichotomy sweep.
//!
//! A system is cut at `p` boundary rows. Once the solution is known on the
//! boundaries the blocks between them decouple and are solved by independent
//! local sweeps. Boundary values come from per-block sums of the right-hand
//! side against rows of `A^{-1}`, combined through homogeneous solutions of
//! the one-sided systems. Boundaries are resolved in `floor(log2 p) + 1`
//! levels: every level halves the segments the remaining unknowns live in, so
//! the combination work is `O(p log p)` rather than `O(p^2)`.

mod levels;
mod partition;
mod prelim;
mod solver;
mod speedup;

pub use levels::{build_level_sets, level_count, LevelSets};
pub use partition::Partition;
pub use prelim::{
    compute_preliminary, compute_preliminary_with, homogeneous_left, homogeneous_right,
    BoundaryData, GreenRoute, GreenSource, PreliminaryData,
};
pub use solver::{
    block_betas, compute_betas, solve_batch, solve_boundaries, solve_component_direct, solve_local, solve_task,
    BetaSet, DichotomySolver, Schedule, SegmentTask, SolveStats, SWEEP_FLOPS_PER_ROW,
};
pub use speedup::{max_speedup, optimal_pes, theoretical_speedup};
