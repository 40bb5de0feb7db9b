//! Variable separation for the model Poisson problem: second-order
//! convergence, and a series of problems sharing the prepared harmonics.

use std::time::Instant;

use parsweep::poisson::{model_problem, FourierSolver, SolverConfig};

fn main() -> parsweep::Result<()> {
    let mut previous: Option<f64> = None;
    println!("{:>5} {:>12} {:>7}", "N", "max error", "ratio");
    for n in [16, 32, 64, 128, 256] {
        let (f, exact) = model_problem(n, n)?;
        let solver = FourierSolver::for_grid(&f, SolverConfig::default())?;
        let u = solver.solve(&f)?;
        let err = u.max_abs_diff(&exact);
        let ratio = previous.map_or(String::new(), |p| format!("{:.3}", p / err));
        println!("{n:>5} {err:>12.4e} {ratio:>7}");
        previous = Some(err);
    }

    let (f, _) = model_problem(128, 128)?;
    let t = Instant::now();
    let solver = FourierSolver::for_grid(&f, SolverConfig::default())?;
    let setup = t.elapsed();
    let series: Vec<_> = (1..=50).map(|k| f.scaled(k as f64)).collect();
    let t = Instant::now();
    let us = solver.solve_series(&series)?;
    println!(
        "N=128: harmonics prepared in {setup:?}, {} problems in {:?}, residual of the last {:.2e}",
        us.len(),
        t.elapsed(),
        us[49].poisson_residual(&series[49])
    );
    Ok(())
}
