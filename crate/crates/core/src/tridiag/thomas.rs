use super::TridiagMatrix;
use crate::error::{Error, Result};

/// Elimination pivots with magnitude below this are treated as breakdown.
pub const PIVOT_THRESHOLD: f64 = 1e-300;

/// Forward-elimination coefficients of the sweep, reusable across any
/// number of right-hand sides.
///
/// Row `i` is reduced to `x[i] = alpha[i] * x[i+1] + beta[i]` with
/// `alpha[i] = -c[i] / (b[i] + a[i] * alpha[i-1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThomasFactor {
    lower: Vec<f64>,
    alpha: Vec<f64>,
    inv_pivot: Vec<f64>,
}

impl ThomasFactor {
    pub fn new(a: &TridiagMatrix) -> Result<Self> {
        Self::from_diagonals(a.sub(), a.diag(), a.sup())
    }

    /// Factors the system given by raw diagonals (`sub.len() == sup.len() ==
    /// diag.len() - 1`). Order 1 is accepted here.
    pub fn from_diagonals(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = diag.len();
        debug_assert!(n >= 1 && sub.len() + 1 == n && sup.len() + 1 == n);
        let mut lower = Vec::with_capacity(n);
        let mut alpha = Vec::with_capacity(n);
        let mut inv_pivot = Vec::with_capacity(n);
        let mut prev_alpha = 0.0;
        for i in 0..n {
            let a = if i == 0 { 0.0 } else { sub[i - 1] };
            let c = if i + 1 < n { sup[i] } else { 0.0 };
            let pivot = diag[i] + a * prev_alpha;
            if !(pivot.abs() >= PIVOT_THRESHOLD) {
                return Err(Error::PivotBreakdown { row: i, pivot });
            }
            let inv = 1.0 / pivot;
            prev_alpha = -c * inv;
            lower.push(a);
            alpha.push(prev_alpha);
            inv_pivot.push(inv);
        }
        Ok(Self { lower, alpha, inv_pivot })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// Sweep coefficients `alpha[0..n-1]`; the last one is always zero.
    pub fn alphas(&self) -> &[f64] {
        &self.alpha
    }

    /// Solves in place: `x` holds the right-hand side on entry.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.order();
        assert_eq!(x.len(), n, "right-hand side length must equal matrix order");
        let mut prev = 0.0;
        for i in 0..n {
            prev = (x[i] - self.lower[i] * prev) * self.inv_pivot[i];
            x[i] = prev;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            x[i] += self.alpha[i] * x[i + 1];
        }
    }

    pub fn solve(&self, f: &[f64]) -> Vec<f64> {
        let mut x = f.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

/// Solves `A x = f` with the sequential sweep.
pub fn thomas_solve(a: &TridiagMatrix, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != a.order() {
        return Err(Error::DimensionMismatch { expected: a.order(), got: f.len() });
    }
    Ok(ThomasFactor::new(a)?.solve(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol * w.abs().max(1.0), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn laplacian_order_three() {
        let a = TridiagMatrix::toeplitz(3, -1.0, 2.0, -1.0).unwrap();
        let x = thomas_solve(&a, &[1.0, 0.0, 0.0]).unwrap();
        assert_close(&x, &[0.75, 0.5, 0.25], 1e-15);
    }

    #[test]
    fn identity_returns_rhs() {
        let a = TridiagMatrix::identity(4).unwrap();
        let f = [5.0, -1.0, 0.0, 2.0];
        assert_eq!(thomas_solve(&a, &f).unwrap(), f);
    }

    #[test]
    fn laplacian_order_seven_closed_form() {
        let a = TridiagMatrix::toeplitz(7, -1.0, 2.0, -1.0).unwrap();
        let x = thomas_solve(&a, &[1.0; 7]).unwrap();
        let want: Vec<f64> = (1..=7).map(|i| (i * (8 - i)) as f64 / 2.0).collect();
        assert_eq!(want, [3.5, 6.0, 7.5, 8.0, 7.5, 6.0, 3.5]);
        assert_close(&x, &want, 1e-14);
    }

    #[test]
    fn zero_pivot_is_breakdown() {
        let a = TridiagMatrix::new(vec![1.0], vec![0.0, 1.0], vec![1.0]).unwrap();
        assert!(matches!(
            thomas_solve(&a, &[1.0, 1.0]),
            Err(Error::PivotBreakdown { row: 0, .. })
        ));
        // second pivot 1 - 1*1 = 0
        let a = TridiagMatrix::new(vec![1.0], vec![1.0, 1.0], vec![1.0]).unwrap();
        assert!(matches!(
            thomas_solve(&a, &[1.0, 1.0]),
            Err(Error::PivotBreakdown { row: 1, .. })
        ));
    }

    #[test]
    fn length_mismatch() {
        let a = TridiagMatrix::identity(3).unwrap();
        assert_eq!(
            thomas_solve(&a, &[1.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 1 })
        );
    }

    #[test]
    fn order_one_factor() {
        let f = ThomasFactor::from_diagonals(&[], &[4.0], &[]).unwrap();
        assert_eq!(f.solve(&[2.0]), vec![0.5]);
    }
}
