//! Dirichlet problem for the five-point Laplacian on a rectangle,
//! `-Lap u = f` with `u = 0` on the boundary.
//!
//! [`FourierSolver`] separates variables with a sine transform along
//! direction 2 and solves one tridiagonal series per harmonic.
//! [`AdiSolver`] runs Peaceman-Rachford iterations whose half steps are
//! series of line solves. Both keep their prepared line solvers, so a
//! series of problems on one mesh pays the preliminary phase once.

mod adi;
mod dst;
mod fourier;
mod grid;

use std::f64::consts::PI;

pub use adi::{
    adi_iteration_bound, adi_parameters, adi_solve, geometric_parameters, spectral_bounds, AdiReport,
    AdiSolver, AdiStop,
};
pub use dst::{dst1, dst1_direct, Direction, SineTransform};
pub use fourier::{fourier_solve, harmonic_shift, harmonic_system, FourierSolver, HarmonicSystem};
pub use grid::Grid2D;

use crate::dichotomy::Partition;
use crate::error::Result;
use crate::runtime::{Decomposition, ExecMode};

/// Execution settings shared by both solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub mode: ExecMode,
    /// Logical PEs per line system (reduced for short lines).
    pub pes: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { mode: ExecMode::Simulated, pes: 4 }
    }
}

/// Partition of a line system of order `m` over at most `pes` PEs.
pub(crate) fn line_partition(m: usize, pes: usize) -> Result<Partition> {
    let p = pes.min(m / 2);
    if p <= 1 {
        Partition::whole(m)
    } else {
        Ok(Decomposition::new(m, p)?.partition())
    }
}

/// Right-hand side `8 pi^2 sin(2 pi x) sin(2 pi y)` on the unit square and the
/// exact solution `sin(2 pi x) sin(2 pi y)`.
pub fn model_problem(n1: usize, n2: usize) -> Result<(Grid2D, Grid2D)> {
    let exact = Grid2D::unit_square(n1, n2, model_exact)?;
    let f = exact.scaled(8.0 * PI * PI);
    Ok((f, exact))
}

fn model_exact(x: f64, y: f64) -> f64 {
    let (sx, sy) = ((2.0 * PI * x).sin(), (2.0 * PI * y).sin());
    // exact zeros on the boundary
    let clean = |t: f64, s: f64| if t == 0.0 || t == 1.0 { 0.0 } else { s };
    clean(x, sx) * clean(y, sy)
}

/// Solution of the difference equations for the model right-hand side. The
/// right-hand side is an eigenvector of the discrete operator, so the
/// solution is `f` divided by its eigenvalue.
pub fn model_discrete_solution(n1: usize, n2: usize) -> Result<Grid2D> {
    let (f, _) = model_problem(n1, n2)?;
    let (h1, h2) = (1.0 / n1 as f64, 1.0 / n2 as f64);
    let lambda = 4.0 / (h1 * h1) * (PI / n1 as f64).sin().powi(2) + 4.0 / (h2 * h2) * (PI / n2 as f64).sin().powi(2);
    Ok(f.scaled(1.0 / lambda))
}
