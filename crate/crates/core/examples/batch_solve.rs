//! A long series of right-hand sides for one matrix: the preliminary phase
//! runs once, each further solve is cheap.

use std::time::Instant;

use parsweep::dichotomy::{DichotomySolver, Partition};
use parsweep::tridiag::{dense_oracle_solve, random_dominant, random_vector};
use rand::SeedableRng;

fn main() -> parsweep::Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(42);
    let n = 2048;
    let a = random_dominant(n, &mut rng);
    let series: Vec<Vec<f64>> = (0..200).map(|_| random_vector(n, &mut rng)).collect();

    let t = Instant::now();
    let solver = DichotomySolver::new(a.clone(), Partition::uniform(n, 15)?)?;
    let setup = t.elapsed();
    let t = Instant::now();
    let xs = solver.solve_batch(&series)?;
    let solve = t.elapsed();
    println!("order {n}, 15 boundaries: setup {setup:?}, {} solves in {solve:?}", series.len());

    let mut worst = 0.0f64;
    for (f, x) in series.iter().zip(&xs).take(10) {
        let r = dense_oracle_solve(&a, f)?;
        let scale = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        worst = worst.max(x.iter().zip(&r).fold(0.0f64, |m, (u, v)| m.max((u - v).abs())) / scale);
    }
    println!("max relative deviation from dense elimination (first 10): {worst:.2e}");

    let (_, stats) = solver.solve_with_stats(&series[0])?;
    println!(
        "per solve: {} combination terms, {} block-sum terms, {} sweep flops",
        stats.combine_terms, stats.beta_terms, stats.local_flops
    );
    Ok(())
}
