//! Logical PEs, simulated and threaded execution, and run statistics.

use parsweep::runtime::{run_batch, Decomposition, ExecMode};
use parsweep::tridiag::{random_dominant, random_vector};
use rand::SeedableRng;

fn main() -> parsweep::Result<()> {
    let d = Decomposition::new(16, 4)?;
    println!("16 rows over 4 PEs: {:?}, boundaries {}", d.ranges(), d.partition());

    let mut rng = rand::rngs::StdRng::seed_from_u64(1);
    let n = 4096;
    let a = random_dominant(n, &mut rng);
    let series: Vec<Vec<f64>> = (0..100).map(|_| random_vector(n, &mut rng)).collect();
    let d = Decomposition::new(n, 16)?;

    let (xs, sim) = run_batch(ExecMode::Simulated, &a, &d, &series)?;
    println!("simulated  : {}", sim.to_json());
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(4);
    let (xt, thr) = run_batch(ExecMode::Threaded(workers), &a, &d, &series)?;
    println!("threaded({workers}): {}", thr.to_json());
    println!("identical solutions: {}", xs == xt);
    if workers < 4 {
        println!("only {workers} core(s) available; timings are not a speedup measurement");
    }
    Ok(())
}
