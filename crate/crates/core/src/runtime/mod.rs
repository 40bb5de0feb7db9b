//! Logical PEs and execution engines.
//!
//! Rows are dealt to `p` logical PEs in contiguous ranges. A batch is solved
//! in three phases separated by barriers: block sums (one work item per
//! right-hand side and block), the boundary levels (one item per right-hand
//! side and segment task, one barrier per level) and the local sweeps. Every
//! item runs the same arithmetic in both modes and writes a private slot, so
//! simulated and threaded runs agree bitwise.

mod decomposition;
mod exec;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dichotomy::{BetaSet, DichotomySolver, GreenRoute, Partition};
use crate::error::Result;
use crate::tridiag::TridiagMatrix;

pub use decomposition::Decomposition;
pub use exec::{ExecMode, Executor, WORKERS_ENV};

/// Counters for one batch run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    /// Barrier-separated exchange phases of one solve.
    pub comm_rounds: u64,
    /// Block-sum combination terms, summed over the batch.
    pub combine_terms: u64,
    /// Local sweep arithmetic, summed over the batch.
    pub local_flops: u64,
    /// Seconds.
    pub wall_time: f64,
}

impl RunStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

/// Exchange phases for one solve with `p` boundaries: the block-sum
/// scatter, one per level and the result gather.
pub fn comm_rounds(p: usize) -> u64 {
    if p == 0 {
        0
    } else {
        crate::dichotomy::level_count(p) as u64 + 2
    }
}

/// Runs the preliminary phase for `a` under `executor`.
pub fn prepare(executor: &Executor, a: &TridiagMatrix, partition: Partition) -> Result<DichotomySolver> {
    let parallel = executor.is_parallel();
    executor.install(|| DichotomySolver::build(a.clone(), partition, GreenRoute::Auto, parallel))
}

/// Solves `series` with a prepared solver. `wall_time` covers only this call.
pub fn solve_series(
    executor: &Executor,
    solver: &DichotomySolver,
    series: &[Vec<f64>],
) -> Result<(Vec<Vec<f64>>, RunStats)> {
    let start = Instant::now();
    for f in series {
        solver.check_rhs(f)?;
    }
    let m = series.len();
    let p = solver.partition().len();
    let blocks = p + 1;

    let sums = executor.try_map(m * blocks, |i| i % blocks, |i| {
        Ok(solver.block_betas(&series[i / blocks], i % blocks))
    })?;
    let betas: Vec<BetaSet> = sums
        .chunks(blocks)
        .map(|c| {
            let (left, right) = c.iter().copied().unzip();
            BetaSet { left, right }
        })
        .collect();

    let mut known = vec![vec![0.0; p]; m];
    let mut combine_terms = 0u64;
    for level in &solver.schedule().levels {
        let t = level.len();
        let results = executor.try_map(m * t, |i| level[i % t].members[0] - 1, |i| {
            crate::dichotomy::solve_task(solver.preliminary(), &betas[i / t], &known[i / t], &level[i % t])
        })?;
        for (i, (vals, terms)) in results.into_iter().enumerate() {
            combine_terms += terms;
            for (pos, v) in vals {
                known[i / t][pos - 1] = v;
            }
        }
    }

    let segments = executor.try_map(m * blocks, |i| i % blocks, |i| {
        Ok(solver.solve_local_segment(i % blocks, &series[i / blocks], &known[i / blocks]))
    })?;
    let n = solver.order();
    let mut out = vec![vec![0.0; n]; m];
    for (i, seg) in segments.into_iter().enumerate() {
        let (s, e) = solver.local_span(i % blocks);
        out[i / blocks][s..=e].copy_from_slice(&seg);
    }

    let stats = RunStats {
        comm_rounds: comm_rounds(p),
        combine_terms,
        local_flops: solver.local_flops() * m as u64,
        wall_time: start.elapsed().as_secs_f64(),
    };
    Ok((out, stats))
}

/// Solves a batch under `mode`, preliminary phase included.
pub fn run_batch(
    mode: ExecMode,
    a: &TridiagMatrix,
    decomposition: &Decomposition,
    series: &[Vec<f64>],
) -> Result<(Vec<Vec<f64>>, RunStats)> {
    if decomposition.order() != a.order() {
        return Err(crate::Error::DimensionMismatch { expected: a.order(), got: decomposition.order() });
    }
    let start = Instant::now();
    let executor = Executor::new(mode);
    let solver = prepare(&executor, a, decomposition.partition())?;
    let (x, mut stats) = solve_series(&executor, &solver, series)?;
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok((x, stats))
}

/// Wall time of `f`.
pub fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tridiag::dense_oracle_solve;
    use rand::{Rng, SeedableRng};

    fn fixture(n: usize, m: usize, seed: u64) -> (TridiagMatrix, Vec<Vec<f64>>) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sup: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let diag = (0..n).map(|i| 2.5 + rng.gen_range(0.0..1.0) * if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let a = TridiagMatrix::new(sub, diag, sup).unwrap();
        let series = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        (a, series)
    }

    #[test]
    fn modes_agree_bitwise_and_match_oracle() {
        let (a, series) = fixture(200, 7, 3);
        let d = Decomposition::new(200, 13).unwrap();
        let (xs, s1) = run_batch(ExecMode::Simulated, &a, &d, &series).unwrap();
        for w in [1, 3] {
            let (xt, s2) = run_batch(ExecMode::Threaded(w), &a, &d, &series).unwrap();
            assert_eq!(xs, xt);
            assert_eq!((s1.comm_rounds, s1.combine_terms, s1.local_flops), (s2.comm_rounds, s2.combine_terms, s2.local_flops));
        }
        for (f, x) in series.iter().zip(&xs) {
            let r = dense_oracle_solve(&a, f).unwrap();
            let err = x.iter().zip(&r).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
            assert!(err < 1e-12, "{err}");
        }
    }

    #[test]
    fn runtime_path_matches_plain_solver_bitwise() {
        let (a, series) = fixture(97, 3, 11);
        let d = Decomposition::new(97, 9).unwrap();
        let solver = DichotomySolver::new(a.clone(), d.partition()).unwrap();
        let (x, _) = run_batch(ExecMode::Simulated, &a, &d, &series).unwrap();
        assert_eq!(x, solver.solve_batch(&series).unwrap());
    }

    #[test]
    fn rounds_for_fifteen_boundaries() {
        let (a, series) = fixture(64, 1, 5);
        let d = Decomposition::new(64, 16).unwrap();
        let (_, s) = run_batch(ExecMode::Simulated, &a, &d, &series).unwrap();
        assert_eq!(s.comm_rounds, 6);
        assert!(comm_rounds(255) - comm_rounds(15) <= 4);
        assert_eq!(comm_rounds(0), 0);
    }

    #[test]
    fn simulated_runs_are_deterministic() {
        let (a, series) = fixture(120, 4, 8);
        let d = Decomposition::new(120, 6).unwrap();
        let (x1, s1) = run_batch(ExecMode::Simulated, &a, &d, &series).unwrap();
        let (x2, s2) = run_batch(ExecMode::Simulated, &a, &d, &series).unwrap();
        assert_eq!(x1, x2);
        assert_eq!(RunStats { wall_time: 0.0, ..s1 }, RunStats { wall_time: 0.0, ..s2 });
    }

    #[test]
    fn stats_json_has_four_fields() {
        let s = RunStats { comm_rounds: 6, combine_terms: 10, local_flops: 20, wall_time: 0.5 };
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        let obj = v.as_object().unwrap();
        assert_eq!(obj.len(), 4);
        assert_eq!(obj["comm_rounds"], 6);
    }

    #[test]
    fn wrong_rhs_length_is_rejected() {
        let (a, _) = fixture(20, 1, 1);
        let d = Decomposition::new(20, 2).unwrap();
        assert!(run_batch(ExecMode::Simulated, &a, &d, &[vec![0.0; 19]]).is_err());
    }
}
