use rand::Rng;

use super::TridiagMatrix;

/// Random strictly row-dominant matrix: off-diagonals in `[-1, 1]`,
/// diagonal of random sign exceeding the off-diagonal sum by `[0.1, 1]`.
pub fn random_dominant<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TridiagMatrix {
    let sub: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let sup: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let diag = (0..n)
        .map(|i| {
            let off = if i > 0 { sub[i - 1].abs() } else { 0.0 } + sup.get(i).map_or(0.0, |v| v.abs());
            let d = off + rng.gen_range(0.1..=1.0);
            if rng.gen_bool(0.5) {
                d
            } else {
                -d
            }
        })
        .collect();
    TridiagMatrix::new(sub, diag, sup).expect("shapes are consistent")
}

/// Random nonsymmetric dominant matrix whose off-diagonal pairs share a
/// sign, so a diagonal scaling makes it symmetric.
pub fn random_symmetrizable<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TridiagMatrix {
    let mut sub = Vec::with_capacity(n - 1);
    let mut sup = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        sub.push(s * rng.gen_range(0.1..=1.0));
        sup.push(s * rng.gen_range(0.1..=1.0));
    }
    let diag = (0..n)
        .map(|i| {
            let off = if i > 0 { f64::abs(sub[i - 1]) } else { 0.0 } + sup.get(i).map_or(0.0, |v: &f64| v.abs());
            off + rng.gen_range(0.1..=1.0)
        })
        .collect();
    TridiagMatrix::new(sub, diag, sup).expect("shapes are consistent")
}

/// Uniform entries in `[-1, 1]`.
pub fn random_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tridiag::{check_dominance, symmetrize};
    use rand::SeedableRng;

    #[test]
    fn generated_matrices_have_their_properties() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for n in [2, 3, 17, 100] {
            let a = random_dominant(n, &mut rng);
            let r = check_dominance(&a);
            assert!(r.dominant && r.worst_margin > 0.0);
            let b = random_symmetrizable(n, &mut rng);
            assert!(check_dominance(&b).dominant);
            assert!(!b.is_symmetric());
            assert!(symmetrize(&b).is_ok());
        }
    }
}
