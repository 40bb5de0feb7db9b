use std::borrow::Borrow;
use std::f64::consts::PI;

use super::dst::{Direction, SineTransform};
use super::{line_partition, Grid2D, SolverConfig};
use crate::dichotomy::{DichotomySolver, GreenRoute};
use crate::error::Result;
use crate::runtime::Executor;
use crate::tridiag::TridiagMatrix;

/// Working-set budget (nodes per chunk) for series solves.
const CHUNK_NODES: usize = 1 << 22;

/// Tridiagonal system of harmonic `l`: `tri(1, -(2 + d_l), 1)` along
/// direction 1.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSystem {
    pub l: usize,
    pub d_l: f64,
    pub matrix: TridiagMatrix,
}

/// `d_l = 4 (h1/h2)^2 sin^2(pi l / (2 N2))`.
pub fn harmonic_shift(n2: usize, h1: f64, h2: f64, l: usize) -> f64 {
    let s = (PI * l as f64 / (2.0 * n2 as f64)).sin();
    4.0 * (h1 * h1) / (h2 * h2) * s * s
}

pub fn harmonic_system(n1: usize, n2: usize, h1: f64, h2: f64, l: usize) -> Result<HarmonicSystem> {
    let d_l = harmonic_shift(n2, h1, h2, l);
    let matrix = TridiagMatrix::toeplitz(n1 - 1, 1.0, -(2.0 + d_l), 1.0)?;
    Ok(HarmonicSystem { l, d_l, matrix })
}

/// Variable-separation solver for one mesh. The preliminary data of every
/// harmonic system is built once and reused by every later solve.
pub struct FourierSolver {
    n1: usize,
    n2: usize,
    h1: f64,
    h2: f64,
    executor: Executor,
    transform: SineTransform,
    harmonics: Vec<DichotomySolver>,
}

impl FourierSolver {
    pub fn new(n1: usize, n2: usize, h1: f64, h2: f64, config: SolverConfig) -> Result<Self> {
        Grid2D::zeros(n1, n2, h1, h2)?;
        let executor = Executor::new(config.mode);
        let part = line_partition(n1 - 1, config.pes)?;
        let harmonics = executor.try_map(n2 - 1, |k| k, |k| {
            let sys = harmonic_system(n1, n2, h1, h2, k + 1)?;
            DichotomySolver::build(sys.matrix, part.clone(), GreenRoute::Auto, false)
        })?;
        Ok(Self { n1, n2, h1, h2, executor, transform: SineTransform::new(n2), harmonics })
    }

    /// Solver for the mesh of `g`.
    pub fn for_grid(g: &Grid2D, config: SolverConfig) -> Result<Self> {
        Self::new(g.n1(), g.n2(), g.h1(), g.h2(), config)
    }

    /// Prepared solver of harmonic `l` (1-based).
    pub fn harmonic(&self, l: usize) -> &DichotomySolver {
        &self.harmonics[l - 1]
    }

    pub fn solve(&self, f: &Grid2D) -> Result<Grid2D> {
        Ok(self.solve_series(std::slice::from_ref(f))?.pop().unwrap())
    }

    pub fn solve_series<G: Borrow<Grid2D> + Sync>(&self, fs: &[G]) -> Result<Vec<Grid2D>> {
        let mut out = Vec::with_capacity(fs.len());
        self.solve_each(fs, |_, u| {
            out.push(u);
            Ok(())
        })?;
        Ok(out)
    }

    /// Solves a series, handing each solution to `sink` in order. The series
    /// is processed in chunks so that only a bounded number of solutions is
    /// alive at once.
    pub fn solve_each<G, S>(&self, fs: &[G], mut sink: S) -> Result<()>
    where
        G: Borrow<Grid2D> + Sync,
        S: FnMut(usize, Grid2D) -> Result<()>,
    {
        let template = Grid2D::zeros(self.n1, self.n2, self.h1, self.h2)?;
        for f in fs {
            template.check_mesh(f.borrow())?;
        }
        let chunk = (CHUNK_NODES / template.values().len()).max(1);
        for (c, part) in fs.chunks(chunk).enumerate() {
            for (s, u) in self.solve_chunk(part, &template)?.into_iter().enumerate() {
                sink(c * chunk + s, u)?;
            }
        }
        Ok(())
    }

    fn solve_chunk<G: Borrow<Grid2D> + Sync>(&self, fs: &[G], template: &Grid2D) -> Result<Vec<Grid2D>> {
        let (m1, m2) = (self.n1 - 1, self.n2 - 1);
        let count = fs.len();
        let t = &self.transform;

        // sine coefficients of every interior row, item = (problem, row)
        let coef = self.executor.try_map(count * m1, |i| i % m1, |i| {
            let f = fs[i / m1].borrow();
            let mut buf = f.row(i % m1 + 1)[1..self.n2].to_vec();
            let mut scratch = vec![0.0; t.scratch_len()];
            t.apply(&mut buf, Direction::Forward, &mut scratch);
            Ok(buf)
        })?;

        // one series of direction-1 systems per harmonic
        let scale = -self.h1 * self.h1;
        let amps = self.executor.try_map(m2, |k| k, |k| {
            let series: Vec<Vec<f64>> =
                (0..count).map(|s| (0..m1).map(|i| scale * coef[s * m1 + i][k]).collect()).collect();
            self.harmonics[k].solve_batch(&series)
        })?;
        drop(coef);

        let rows = self.executor.try_map(count * m1, |i| i % m1, |i| {
            let (s, r) = (i / m1, i % m1);
            let mut buf: Vec<f64> = (0..m2).map(|k| amps[k][s][r]).collect();
            let mut scratch = vec![0.0; t.scratch_len()];
            t.apply(&mut buf, Direction::Inverse, &mut scratch);
            Ok(buf)
        })?;
        drop(amps);

        let mut out = vec![template.clone(); count];
        for (i, row) in rows.into_iter().enumerate() {
            out[i / m1].row_mut(i % m1 + 1)[1..self.n2].copy_from_slice(&row);
        }
        Ok(out)
    }
}

/// One-shot variable-separation solve in simulated mode.
pub fn fourier_solve(f: &Grid2D) -> Result<Grid2D> {
    FourierSolver::for_grid(f, SolverConfig::default())?.solve(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{model_discrete_solution, model_problem};
    use crate::runtime::ExecMode;
    use crate::tridiag::check_dominance;

    #[test]
    fn discrete_eigenmode_is_reproduced() {
        for (n1, n2) in [(16, 16), (12, 20), (7, 5)] {
            let (f, _) = model_problem(n1, n2).unwrap();
            let u = fourier_solve(&f).unwrap();
            let want = model_discrete_solution(n1, n2).unwrap();
            assert!(u.max_abs_diff(&want) < 1e-12 * want.max_abs().max(1.0), "{n1}x{n2}");
            assert!(u.poisson_residual(&f) <= 1e-9 * f.max_abs());
        }
    }

    #[test]
    fn zero_rhs() {
        let f = Grid2D::zeros(8, 8, 0.125, 0.125).unwrap();
        assert_eq!(fourier_solve(&f).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn random_rhs_satisfies_difference_equations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        let mut f = Grid2D::zeros(24, 18, 0.5 / 24.0, 1.0 / 18.0).unwrap();
        for i in 1..24 {
            for j in 1..18 {
                f.set(i, j, rng.gen_range(-10.0..10.0));
            }
        }
        let u = fourier_solve(&f).unwrap();
        assert!(u.poisson_residual(&f) <= 1e-9 * f.max_abs());
        assert_eq!(u.boundary_max(), 0.0);
    }

    #[test]
    fn series_and_modes_agree_bitwise() {
        let (f, _) = model_problem(20, 20).unwrap();
        let g = f.scaled(-0.5);
        let sim = FourierSolver::for_grid(&f, SolverConfig { mode: ExecMode::Simulated, pes: 3 }).unwrap();
        let thr = FourierSolver::for_grid(&f, SolverConfig { mode: ExecMode::Threaded(3), pes: 3 }).unwrap();
        let a = sim.solve_series(&[&f, &g]).unwrap();
        assert_eq!(a, thr.solve_series(&[&f, &g]).unwrap());
        assert_eq!(a[0], sim.solve(&f).unwrap());
    }

    #[test]
    fn harmonic_matrices_are_dominant() {
        for l in 1..32 {
            let sys = harmonic_system(32, 32, 1.0 / 32.0, 1.0 / 32.0, l).unwrap();
            assert!(sys.d_l > 0.0);
            let r = check_dominance(&sys.matrix);
            assert!(r.dominant && r.strict_somewhere);
        }
    }
}
