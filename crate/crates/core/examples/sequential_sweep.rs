//! The sequential sweep, the dense elimination oracle and the dominance
//! check on a small system with a closed-form solution.

use parsweep::tridiag::{check_dominance, dense_oracle_solve, thomas_solve, ThomasFactor};
use parsweep::TridiagMatrix;

fn main() -> parsweep::Result<()> {
    // x_i = i (8 - i) / 2 solves tri(-1, 2, -1) x = 1
    let a = TridiagMatrix::toeplitz(7, -1.0, 2.0, -1.0)?;
    let f = vec![1.0; 7];
    let x = thomas_solve(&a, &f)?;
    let oracle = dense_oracle_solve(&a, &f)?;
    println!("sweep : {x:?}");
    println!("oracle: {oracle:?}");
    println!("residual: {:.2e}", a.residual_inf(&x, &f));

    let factor = ThomasFactor::new(&a)?;
    println!("sweep coefficients: {:?}", factor.alphas());

    let report = check_dominance(&a);
    println!(
        "dominant: {}, strict somewhere: {}, worst margin: {}",
        report.dominant, report.strict_somewhere, report.worst_margin
    );

    println!("\nmatrix file format:\n{}", a.to_text());
    Ok(())
}
