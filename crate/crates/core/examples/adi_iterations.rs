//! Peaceman-Rachford iterations on the model problem: iteration counts
//! against the a-priori bound, and agreement with the Fourier solver.

use parsweep::poisson::{
    adi_iteration_bound, fourier_solve, model_discrete_solution, model_problem, AdiSolver, AdiStop, Grid2D,
    SolverConfig,
};

fn main() -> parsweep::Result<()> {
    let eps = 1e-5;
    println!("{:>5} {:>6} {:>10} {:>12}", "N", "bound", "iterations", "error");
    for n in [32, 64, 128, 256] {
        let (f, exact) = model_problem(n, n)?;
        let discrete = model_discrete_solution(n, n)?;
        let solver = AdiSolver::for_grid(&f, eps, SolverConfig::default())?;
        let zero = Grid2D::zeros(n, n, f.h1(), f.h2())?;
        let report = solver.solve(&f, &zero, &AdiStop::ExactError { exact: discrete, eps })?;
        println!(
            "{n:>5} {:>6} {:>10} {:>12.3e}",
            adi_iteration_bound(n, eps),
            report.iterations,
            report.solution.max_abs_diff(&exact)
        );
    }

    let (f, _) = model_problem(64, 64)?;
    let zero = Grid2D::zeros(64, 64, f.h1(), f.h2())?;
    let solver = AdiSolver::for_grid(&f, 1e-7, SolverConfig::default())?;
    let report = solver.solve(&f, &zero, &AdiStop::SuccessiveDifference(1e-7))?;
    let gap = report.solution.max_abs_diff(&fourier_solve(&f)?);
    println!("N=64, eps=1e-7: {} iterations, max |adi - fourier| = {gap:.3e}", report.iterations);
    Ok(())
}
