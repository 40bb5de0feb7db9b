//! Step by step through one dichotomy solve: preliminary data, block sums,
//! boundary values level by level, then local sweeps.

use parsweep::dichotomy::{solve_local, DichotomySolver, Partition};
use parsweep::TridiagMatrix;

fn main() -> parsweep::Result<()> {
    let a = TridiagMatrix::toeplitz(7, -1.0, 2.0, -1.0)?;
    let part = Partition::parse("2,4,6", 7)?;
    let solver = DichotomySolver::new(a.clone(), part.clone())?;
    let f = vec![1.0; 7];

    let pre = solver.preliminary();
    println!("inverse rows from: {:?}", pre.source);
    for b in &pre.boundaries {
        println!(
            "boundary row {} (1-based): inverse row {:?} from column {}, Z^L {:?}, Z^R {:?}",
            b.row + 1,
            b.g,
            b.g_start + 1,
            b.z_left_at,
            b.z_right_at
        );
    }

    let betas = solver.betas(&f);
    println!("block sums, left : {:?}", betas.left);
    println!("block sums, right: {:?}", betas.right);

    for (k, level) in solver.schedule().levels.iter().enumerate() {
        let members: Vec<usize> = level.iter().flat_map(|t| t.members.iter().copied()).collect();
        println!("level {}: boundary positions {members:?}", k + 1);
    }
    let (values, terms) = solver.solve_boundaries(&betas)?;
    let (reference, full_terms) = solver.full_sum_boundaries(&betas);
    println!("boundary values {values:?} ({terms} combination terms)");
    println!("full double sum {reference:?} ({full_terms} terms)");

    let block = solve_local(&a, &part, 2, &f[3..=5], values[1], values[2])?;
    println!("segment between rows 4 and 6: {block:?}");
    println!("solution: {:?}", solver.solve(&f)?);
    Ok(())
}
