use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poisson::{model_problem, AdiSolver, AdiStop, FourierSolver, Grid2D, SolverConfig};
use crate::runtime::{prepare, solve_series, Decomposition, ExecMode, Executor};
use crate::tridiag::{random_dominant, random_vector};

/// One cell of a timing table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    /// Mesh cells per direction, or system order for `sweep`.
    pub size: usize,
    pub np: usize,
    /// Mean seconds per problem of the series.
    pub t_avr: f64,
    /// `t_avr` of the single-worker run divided by this row's `t_avr`.
    pub s_avr: f64,
    pub method: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchMethod {
    Fourier,
    Adi,
    /// Batched solves of one random dominant system.
    Sweep,
}

impl BenchMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Fourier => "fourier",
            Self::Adi => "adi",
            Self::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub method: BenchMethod,
    pub sizes: Vec<usize>,
    /// Worker counts; the single-worker baseline is always measured.
    pub workers: Vec<usize>,
    pub series: usize,
    pub repetitions: usize,
    pub eps: f64,
    pub seed: u64,
}

/// Mean seconds per problem for one (size, workers) cell, median over
/// the repetitions. The preliminary phase is outside the timed region.
pub fn time_cell(plan: &BenchPlan, size: usize, np: usize) -> Result<f64> {
    let mode = ExecMode::Threaded(np);
    let config = SolverConfig { mode, pes: np };
    let mut samples = Vec::with_capacity(plan.repetitions);
    match plan.method {
        BenchMethod::Fourier => {
            let (f, _) = model_problem(size, size)?;
            let solver = FourierSolver::for_grid(&f, config)?;
            let fs = vec![&f; plan.series];
            for _ in 0..plan.repetitions {
                let t = Instant::now();
                solver.solve_each(&fs, |_, _| Ok(()))?;
                samples.push(t.elapsed().as_secs_f64());
            }
        }
        BenchMethod::Adi => {
            let (f, _) = model_problem(size, size)?;
            let zero = Grid2D::zeros(size, size, f.h1(), f.h2())?;
            let solver = AdiSolver::for_grid(&f, plan.eps, config)?;
            let stop = AdiStop::SuccessiveDifference(plan.eps);
            for _ in 0..plan.repetitions {
                let t = Instant::now();
                for _ in 0..plan.series {
                    solver.solve(&f, &zero, &stop)?;
                }
                samples.push(t.elapsed().as_secs_f64());
            }
        }
        BenchMethod::Sweep => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(plan.seed);
            let a = random_dominant(size, &mut rng);
            let series: Vec<Vec<f64>> = (0..plan.series).map(|_| random_vector(size, &mut rng)).collect();
            let executor = Executor::new(mode);
            let d = Decomposition::new(size, np)?;
            let solver = prepare(&executor, &a, d.partition())?;
            for _ in 0..plan.repetitions {
                let t = Instant::now();
                solve_series(&executor, &solver, &series)?;
                samples.push(t.elapsed().as_secs_f64());
            }
        }
    }
    samples.sort_by(f64::total_cmp);
    Ok(samples[samples.len() / 2] / plan.series as f64)
}

/// Runs every cell, streaming rows to `out` as CSV. On failure a row
/// starting with `ERROR` closes the table and the error is returned.
pub fn run_bench<W: Write>(plan: &BenchPlan, out: W) -> std::result::Result<Vec<BenchRecord>, BenchFailure> {
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    csv.write_record(["size", "np", "t_avr", "s_avr", "method"]).map_err(BenchFailure::io)?;
    csv.flush().map_err(|e| BenchFailure::Io(e.to_string()))?;
    let mut records = Vec::new();
    for &size in &plan.sizes {
        let mut baseline = None;
        let mut workers = vec![1];
        workers.extend(plan.workers.iter().copied().filter(|&w| w != 1));
        for np in workers {
            let t = match time_cell(plan, size, np) {
                Ok(t) => t,
                Err(e) => {
                    let _ = csv.write_record(["ERROR", &size.to_string(), &np.to_string(), "", plan.method.tag()]);
                    let _ = csv.flush();
                    return Err(BenchFailure::Solver(e));
                }
            };
            let t1 = *baseline.get_or_insert(t);
            if np == 1 && !plan.workers.contains(&1) {
                continue;
            }
            let rec = BenchRecord { size, np, t_avr: t, s_avr: t1 / t, method: plan.method.tag().into() };
            csv.serialize(&rec).map_err(BenchFailure::io)?;
            csv.flush().map_err(|e| BenchFailure::Io(e.to_string()))?;
            records.push(rec);
        }
    }
    Ok(records)
}

#[derive(Debug)]
pub enum BenchFailure {
    Solver(crate::Error),
    Io(String),
}

impl BenchFailure {
    fn io(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}

/// Reads a CSV produced by [`run_bench`], stopping at an `ERROR` row.
pub fn parse_bench_csv(text: &str) -> std::result::Result<Vec<BenchRecord>, csv::Error> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        if row.get(0) == Some("ERROR") {
            break;
        }
        out.push(row.deserialize(None)?);
    }
    Ok(out)
}

/// Markdown table of the same columns.
pub fn to_markdown(records: &[BenchRecord]) -> String {
    let mut s = String::from("| size | np | t_avr (s) | s_avr | method |\n|---:|---:|---:|---:|:---|\n");
    for r in records {
        s.push_str(&format!("| {} | {} | {:.3e} | {:.2} | {} |\n", r.size, r.np, r.t_avr, r.s_avr, r.method));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(method: BenchMethod, workers: Vec<usize>) -> BenchPlan {
        BenchPlan { method, sizes: vec![16], workers, series: 10, repetitions: 3, eps: 1e-5, seed: 1 }
    }

    #[test]
    fn baseline_row_is_exactly_one_and_csv_round_trips() {
        for method in [BenchMethod::Fourier, BenchMethod::Adi, BenchMethod::Sweep] {
            let mut buf = Vec::new();
            let recs = run_bench(&plan(method, vec![1, 2]), &mut buf).unwrap();
            assert_eq!(recs.len(), 2);
            assert_eq!(recs[0].s_avr, 1.0);
            assert!(recs.iter().all(|r| r.t_avr > 0.0));
            let text = String::from_utf8(buf).unwrap();
            assert!(text.starts_with("size,np,t_avr,s_avr,method\n"));
            assert_eq!(parse_bench_csv(&text).unwrap(), recs);
        }
    }

    #[test]
    fn missing_baseline_is_measured_but_not_printed() {
        let recs = run_bench(&plan(BenchMethod::Sweep, vec![2]), Vec::new()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].np, 2);
    }

    #[test]
    fn failures_end_with_a_sentinel_row() {
        let mut p = plan(BenchMethod::Sweep, vec![1, 16]);
        p.sizes = vec![20];
        let mut buf = Vec::new();
        assert!(matches!(run_bench(&p, &mut buf), Err(BenchFailure::Solver(_))));
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().last().unwrap().starts_with("ERROR,20,16"));
        assert_eq!(parse_bench_csv(&text).unwrap().len(), 1);
    }

    #[test]
    fn markdown_has_a_row_per_record() {
        let r = BenchRecord { size: 64, np: 1, t_avr: 1e-3, s_avr: 1.0, method: "fourier".into() };
        let md = to_markdown(&[r.clone(), r]);
        assert_eq!(md.lines().count(), 4);
        assert!(md.contains("| 64 | 1 | 1.000e-3 | 1.00 | fourier |"));
    }
}
