//! The analytic speedup model: optimum PE count and peak speedup.

use parsweep::dichotomy::{max_speedup, optimal_pes, theoretical_speedup};

fn main() {
    for n in [1024.0, 4096.0, 65536.0] {
        println!("N = {n}: optimal p = {:.2}, peak speedup = {:.2}", optimal_pes(n), max_speedup(n));
        let row: Vec<String> = [4.0, 16.0, 64.0, 256.0, 1024.0]
            .iter()
            .map(|&p| format!("p={p}: {:.2}", theoretical_speedup(n, p)))
            .collect();
        println!("    {}", row.join(", "));
    }
}
