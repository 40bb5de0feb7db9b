use std::f64::consts::PI;

use super::{line_partition, Grid2D, SolverConfig};
use crate::dichotomy::{DichotomySolver, GreenRoute};
use crate::error::{Error, Result};
use crate::runtime::Executor;
use crate::tridiag::TridiagMatrix;

/// `ceil(0.2 ln(4N/pi) ln(4/eps))`, clamped at zero.
pub fn adi_iteration_bound(n: usize, eps: f64) -> usize {
    let n0 = 0.2 * (4.0 * n as f64 / PI).ln() * (4.0 / eps).ln();
    if n0 <= 0.0 {
        0
    } else {
        n0.ceil() as usize
    }
}

/// Extreme eigenvalues of the 1D second-difference operator on `n` cells of
/// width `h`.
pub fn spectral_bounds(n: usize, h: f64) -> (f64, f64) {
    let a = PI / (2.0 * n as f64);
    let s = 4.0 / (h * h);
    (s * a.sin().powi(2), s * a.cos().powi(2))
}

/// Geometric cyclic parameters spanning `[1/lmax, 1/lmin]`, increasing.
pub fn geometric_parameters(lmin: f64, lmax: f64, n0: usize) -> Vec<f64> {
    let r = lmin / lmax;
    (1..=n0)
        .map(|j| 1.0 / (lmax * r.powf((2 * j - 1) as f64 / (2 * n0) as f64)))
        .collect()
}

/// Parameter cycle of length `n0` for the unit square with `N` cells.
pub fn adi_parameters(n: usize, n0: usize) -> Vec<f64> {
    let (lmin, lmax) = spectral_bounds(n, 1.0 / n as f64);
    geometric_parameters(lmin, lmax, n0)
}

/// When to stop iterating.
#[derive(Debug, Clone)]
pub enum AdiStop {
    /// `|u_{k+1} - u_k| <= eps |u_{k+1}|` in the max norm.
    SuccessiveDifference(f64),
    /// `|u_k - exact| <= eps |u_0 - exact|`, where `exact` solves the
    /// difference equations.
    ExactError { exact: Grid2D, eps: f64 },
}

impl AdiStop {
    pub fn eps(&self) -> f64 {
        match self {
            Self::SuccessiveDifference(e) | Self::ExactError { eps: e, .. } => *e,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdiReport {
    pub solution: Grid2D,
    pub iterations: usize,
    /// Value of the stopping measure after every iteration.
    pub history: Vec<f64>,
}

/// Peaceman-Rachford iteration with a prepared parameter cycle. Every
/// parameter owns two prefactored line solvers, one per direction.
pub struct AdiSolver {
    template: Grid2D,
    executor: Executor,
    taus: Vec<f64>,
    dir1: Vec<DichotomySolver>,
    dir2: Vec<DichotomySolver>,
    max_iterations: usize,
}

impl AdiSolver {
    /// Cycle length from the iteration bound for `eps`.
    pub fn new(n1: usize, n2: usize, h1: f64, h2: f64, eps: f64, config: SolverConfig) -> Result<Self> {
        let n0 = adi_iteration_bound(n1.max(n2), eps).max(1);
        let (a1, b1) = spectral_bounds(n1, h1);
        let (a2, b2) = spectral_bounds(n2, h2);
        let taus = geometric_parameters(a1.min(a2), b1.max(b2), n0);
        Self::with_parameters(n1, n2, h1, h2, taus, config)
    }

    pub fn with_parameters(
        n1: usize,
        n2: usize,
        h1: f64,
        h2: f64,
        taus: Vec<f64>,
        config: SolverConfig,
    ) -> Result<Self> {
        let template = Grid2D::zeros(n1, n2, h1, h2)?;
        if taus.is_empty() || taus.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(Error::InvalidMatrix("iteration parameters must be positive".into()));
        }
        let executor = Executor::new(config.mode);
        let (p1, p2) = (line_partition(n1 - 1, config.pes)?, line_partition(n2 - 1, config.pes)?);
        let build = |n: usize, h: f64, tau: f64, part: &crate::Partition| {
            let a = TridiagMatrix::toeplitz(n - 1, 1.0, -2.0 - h * h / tau, 1.0)?;
            DichotomySolver::build(a, part.clone(), GreenRoute::Auto, false)
        };
        let c = taus.len();
        let mut solvers = executor.try_map(2 * c, |i| i, |i| {
            if i < c {
                build(n1, h1, taus[i], &p1)
            } else {
                build(n2, h2, taus[i - c], &p2)
            }
        })?;
        let dir2 = solvers.split_off(c);
        let max_iterations = 10 * c;
        Ok(Self { template, executor, taus, dir1: solvers, dir2, max_iterations })
    }

    pub fn for_grid(g: &Grid2D, eps: f64, config: SolverConfig) -> Result<Self> {
        Self::new(g.n1(), g.n2(), g.h1(), g.h2(), eps, config)
    }

    pub fn parameters(&self) -> &[f64] {
        &self.taus
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    /// Iterates from `u0` until `stop` holds; [`Error::NonConvergence`] past
    /// ten parameter cycles.
    pub fn solve(&self, f: &Grid2D, u0: &Grid2D, stop: &AdiStop) -> Result<AdiReport> {
        self.template.check_mesh(f)?;
        self.template.check_mesh(u0)?;
        let mut u = self.template.clone();
        for i in 1..u.n1() {
            for j in 1..u.n2() {
                u.set(i, j, u0.get(i, j));
            }
        }
        let reference = match stop {
            AdiStop::ExactError { exact, .. } => {
                self.template.check_mesh(exact)?;
                u.max_abs_diff(exact)
            }
            AdiStop::SuccessiveDifference(_) => 0.0,
        };
        let mut history = Vec::new();
        for k in 0..self.max_iterations {
            let t = k % self.taus.len();
            let next = self.step(&u, f, t)?;
            let measure = match stop {
                AdiStop::SuccessiveDifference(_) => {
                    let d = next.max_abs_diff(&u);
                    let s = next.max_abs();
                    if s > 0.0 {
                        d / s
                    } else {
                        d
                    }
                }
                AdiStop::ExactError { exact, .. } => {
                    let e = next.max_abs_diff(exact);
                    if reference > 0.0 {
                        e / reference
                    } else {
                        e
                    }
                }
            };
            history.push(measure);
            u = next;
            if measure <= stop.eps() {
                return Ok(AdiReport { solution: u, iterations: k + 1, history });
            }
        }
        Err(Error::NonConvergence { iterations: self.max_iterations, residual: *history.last().unwrap() })
    }

    /// One double step with parameter `taus[t]`. The intermediate field is
    /// kept transposed (one vector per direction-1 line).
    fn step(&self, u: &Grid2D, f: &Grid2D, t: usize) -> Result<Grid2D> {
        let (n1, n2, h1, h2) = (u.n1(), u.n2(), u.h1(), u.h2());
        let tau = self.taus[t];
        let (q1, q2) = (1.0 / (h1 * h1), 1.0 / (h2 * h2));

        // direction 1: one line per interior j
        let half = self.executor.try_map(n2 - 1, |j| j, |jj| {
            let j = jj + 1;
            let rhs: Vec<f64> = (1..n1)
                .map(|i| {
                    let c = u.get(i, j);
                    let lap2 = (u.get(i, j - 1) - 2.0 * c + u.get(i, j + 1)) * q2;
                    -h1 * h1 * (c / tau + lap2 + f.get(i, j))
                })
                .collect();
            self.dir1[t].solve(&rhs)
        })?;
        let at = |i: usize, j: usize| -> f64 {
            if i == 0 || i == n1 || j == 0 || j == n2 {
                0.0
            } else {
                half[j - 1][i - 1]
            }
        };

        // direction 2: one line per interior i
        let rows = self.executor.try_map(n1 - 1, |i| i, |ii| {
            let i = ii + 1;
            let rhs: Vec<f64> = (1..n2)
                .map(|j| {
                    let c = at(i, j);
                    let lap1 = (at(i - 1, j) - 2.0 * c + at(i + 1, j)) * q1;
                    -h2 * h2 * (c / tau + lap1 + f.get(i, j))
                })
                .collect();
            self.dir2[t].solve(&rhs)
        })?;
        let mut next = self.template.clone();
        for (ii, row) in rows.into_iter().enumerate() {
            next.row_mut(ii + 1)[1..n2].copy_from_slice(&row);
        }
        Ok(next)
    }
}

/// One-shot ADI solve with the successive-difference stop. Returns the
/// solution and the iteration count.
pub fn adi_solve(f: &Grid2D, eps: f64, u0: &Grid2D) -> Result<(Grid2D, usize)> {
    let solver = AdiSolver::for_grid(f, eps, SolverConfig::default())?;
    let r = solver.solve(f, u0, &AdiStop::SuccessiveDifference(eps))?;
    Ok((r.solution, r.iterations))
}
