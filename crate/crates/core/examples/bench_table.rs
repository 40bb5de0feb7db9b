//! A small timing table in the CLI's CSV format, also rendered as markdown.

use parsweep::cli::{run_bench, to_markdown, BenchMethod, BenchPlan};

fn main() {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(4);
    let plan = BenchPlan {
        method: BenchMethod::Fourier,
        sizes: vec![32, 64],
        workers: (1..=workers).collect(),
        series: 10,
        repetitions: 3,
        eps: 1e-5,
        seed: 1,
    };
    match run_bench(&plan, std::io::stdout()) {
        Ok(records) => println!("\n{}", to_markdown(&records)),
        Err(e) => eprintln!("benchmark failed: {e:?}"),
    }
}
