//! Rows of `A^{-1}` for a general tridiagonal `A` from two auxiliary solves.
//!
//! With `A y = e_n` and `A z = e_1 / y_1`, every entry of the inverse is
//!
//! ```text
//! inv[i][j] = y[i] z[j] / k[j]   (i <= j)
//! inv[i][j] = z[i] y[j] / k[j]   (i >= j)
//! k[0] = 1,  k[j] = k[j-1] * a[j] / c[j-1]
//! ```
//!
//! where `a[j]` is the entry below the diagonal in row `j` and `c[j-1]` the
//! entry above the diagonal in row `j-1`. The same column-indexed product
//! appears in both branches; `k[j] = c[j] (y[j] z[j+1] - y[j+1] z[j])` is the
//! scaled Wronskian of the two homogeneous solutions.

use super::{ThomasFactor, TridiagMatrix};
use crate::error::{Error, Result};

/// Magnitudes outside `[RANGE_LIMIT^{-1}, RANGE_LIMIT]` abort the explicit route.
const RANGE_LIMIT: f64 = 1e280;

/// Precomputed generators of `A^{-1}`, one set per irreducible diagonal block.
#[derive(Debug, Clone)]
pub struct ExplicitInverse {
    n: usize,
    blocks: Vec<Block>,
    /// block index of every row
    owner: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Block {
    start: usize,
    y: Vec<f64>,
    z: Vec<f64>,
    k: Vec<f64>,
}

fn in_range(v: f64) -> bool {
    v == 0.0 || (v.abs() <= RANGE_LIMIT && v.abs() >= 1.0 / RANGE_LIMIT)
}

impl ExplicitInverse {
    pub fn new(a: &TridiagMatrix) -> Result<Self> {
        let n = a.order();
        // split where both mirrored off-diagonals vanish
        let mut cuts = vec![0];
        for k in 0..n - 1 {
            if a.sub()[k] == 0.0 && a.sup()[k] == 0.0 {
                cuts.push(k + 1);
            }
        }
        cuts.push(n);
        let mut blocks = Vec::with_capacity(cuts.len() - 1);
        let mut owner = vec![0; n];
        for (b, w) in cuts.windows(2).enumerate() {
            let (s, e) = (w[0], w[1]);
            owner[s..e].fill(b);
            blocks.push(Self::block(a, s, e)?);
        }
        Ok(Self { n, blocks, owner })
    }

    fn block(a: &TridiagMatrix, s: usize, e: usize) -> Result<Block> {
        let m = e - s;
        let fallback = |i: usize| Error::OracleFallbackRequired { index: s + i };
        if m == 1 {
            let inv = 1.0 / a.diag()[s];
            if !inv.is_finite() {
                return Err(Error::Singular);
            }
            return Ok(Block { start: s, y: vec![inv], z: vec![1.0], k: vec![1.0] });
        }
        let sub = &a.sub()[s..e - 1];
        let sup = &a.sup()[s..e - 1];
        let factor = ThomasFactor::from_diagonals(sub, &a.diag()[s..e], sup)?;
        let mut y = vec![0.0; m];
        y[m - 1] = 1.0;
        factor.solve_in_place(&mut y);
        let y1 = y[0];
        if y1 == 0.0 || !in_range(y1) {
            return Err(fallback(0));
        }
        let mut z = vec![0.0; m];
        z[0] = 1.0 / y1;
        factor.solve_in_place(&mut z);
        let mut k = Vec::with_capacity(m);
        k.push(1.0);
        for j in 1..m {
            let next = k[j - 1] * sub[j - 1] / sup[j - 1];
            if next == 0.0 || !next.is_finite() || !in_range(next) {
                return Err(fallback(j));
            }
            k.push(next);
        }
        if let Some(i) = (0..m).find(|&i| !in_range(y[i]) || !in_range(z[i])) {
            return Err(fallback(i));
        }
        Ok(Block { start: s, y, z, k })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)` of the inverse.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let b = self.owner[i];
        if self.owner[j] != b {
            return 0.0;
        }
        let blk = &self.blocks[b];
        let (i, j) = (i - blk.start, j - blk.start);
        if i <= j {
            blk.y[i] * blk.z[j] / blk.k[j]
        } else {
            blk.z[i] * blk.y[j] / blk.k[j]
        }
    }

    /// Entries `(i, j)` for `j` in `cols`.
    pub fn row_window(&self, i: usize, cols: std::ops::Range<usize>) -> Vec<f64> {
        cols.map(|j| self.entry(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.row_window(i, 0..self.n)
    }
}

/// Row `i` (0-based) of `A^{-1}` by the explicit product representation.
pub fn inverse_row_general(a: &TridiagMatrix, i: usize) -> Result<Vec<f64>> {
    if i >= a.order() {
        return Err(Error::DimensionMismatch { expected: a.order(), got: i });
    }
    Ok(ExplicitInverse::new(a)?.row(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tridiag::DenseLu;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn laplacian_middle_row() {
        let a = TridiagMatrix::toeplitz(3, -1.0, 2.0, -1.0).unwrap();
        let row = inverse_row_general(&a, 1).unwrap();
        for (g, w) in row.iter().zip([0.5, 1.0, 0.5]) {
            assert!((g - w).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_rows_are_unit_vectors() {
        let a = TridiagMatrix::identity(5).unwrap();
        for i in 0..5 {
            let mut e = vec![0.0; 5];
            e[i] = 1.0;
            assert_eq!(inverse_row_general(&a, i).unwrap(), e);
        }
    }

    #[test]
    fn nonsymmetric_rows_match_dense_inverse() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in [2, 3, 17, 200] {
            let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let sup: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let diag: Vec<f64> = (0..n).map(|_| 3.0 + rng.gen_range(0.0..1.0)).collect();
            let a = TridiagMatrix::new(sub, diag, sup).unwrap();
            let dense = DenseLu::factor(&a.to_dense()).unwrap().inverse();
            let inv = ExplicitInverse::new(&a).unwrap();
            for i in 0..n {
                let row = inv.row(i);
                let want = dense.row(i);
                let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let err = row.iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
                assert!(err <= 1e-9 * scale, "n={n} i={i} err={err:e}");
            }
        }
    }

    #[test]
    fn one_sided_zero_requires_fallback() {
        let a = TridiagMatrix::new(vec![1.0, 1.0], vec![4.0, 4.0, 4.0], vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            ExplicitInverse::new(&a),
            Err(Error::OracleFallbackRequired { .. })
        ));
    }

    #[test]
    fn extreme_decay_requires_fallback() {
        // inverse entries decay like 1e-3 per step; 200 steps leave the range
        let a = TridiagMatrix::toeplitz(200, 1.0, 1000.0, 1.0).unwrap();
        assert!(matches!(
            ExplicitInverse::new(&a),
            Err(Error::OracleFallbackRequired { .. })
        ));
    }
}
