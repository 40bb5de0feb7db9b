//! Homogeneous solutions stay bounded by one under diagonal dominance and
//! grow without it.

use parsweep::dichotomy::{compute_preliminary, Partition};
use parsweep::tridiag::check_dominance;
use parsweep::TridiagMatrix;

fn main() -> parsweep::Result<()> {
    for (name, a) in [
        ("tri(-1, 2, -1)", TridiagMatrix::toeplitz(64, -1.0, 2.0, -1.0)?),
        ("tri(-1, 3, -1)", TridiagMatrix::toeplitz(64, -1.0, 3.0, -1.0)?),
        ("tri(-1, 1.5, -1)", TridiagMatrix::toeplitz(64, -1.0, 1.5, -1.0)?),
    ] {
        let report = check_dominance(&a);
        let pre = compute_preliminary(&a, &Partition::uniform(64, 7)?)?;
        println!("{name:>17}: stable by dominance = {:5}, max |Z| = {:.6}", report.is_stable(), pre.max_z_norm());
    }
    Ok(())
}
