//! Nonsymmetric systems: inverse rows through a symmetrizing scaling, the
//! explicit product formula, or transposed solves.

use parsweep::dichotomy::{DichotomySolver, GreenRoute, GreenSource, Partition};
use parsweep::tridiag::{dense_oracle_solve, inverse_row_general, random_symmetrizable, random_vector, symmetrize};
use parsweep::TridiagMatrix;
use rand::SeedableRng;

fn main() -> parsweep::Result<()> {
    let a = TridiagMatrix::new(vec![1.0], vec![4.0, 4.0], vec![4.0])?;
    let s = symmetrize(&a)?;
    println!("scaling {:?}, symmetric off-diagonal {:?}", s.scale, s.sym.sup());
    println!("row 1 of the inverse: {:?}", inverse_row_general(&a, 0)?);

    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let a = random_symmetrizable(200, &mut rng);
    let f = random_vector(200, &mut rng);
    let reference = dense_oracle_solve(&a, &f)?;
    let part = Partition::uniform(200, 7)?;
    for src in [GreenSource::Symmetrized, GreenSource::ExplicitInverse, GreenSource::Transposed] {
        let solver = DichotomySolver::with_route(a.clone(), part.clone(), GreenRoute::Force(src))?;
        let x = solver.solve(&f)?;
        let err = x.iter().zip(&reference).fold(0.0f64, |m, (u, v)| m.max((u - v).abs()));
        println!("{src:?}: max deviation from dense elimination {err:.2e}");
    }

    // the single-correction segment formula against the exact boundary values
    let solver = DichotomySolver::new(a.clone(), part)?;
    let exact: Vec<f64> = solver.partition().boundaries().iter().map(|&r| reference[r]).collect();
    let d = solver.literal_divergence(&solver.betas(&f), &f, &exact);
    println!("single-correction segment formula, worst boundary deviation: {d:.2e}");
    Ok(())
}
