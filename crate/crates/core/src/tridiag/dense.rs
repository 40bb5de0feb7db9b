//! Dense Gaussian elimination with partial pivoting. Shares no code with the
//! sweep so it can serve as an independent check on every tridiagonal path.

use std::ops::{Index, IndexMut};

use super::TridiagMatrix;
use crate::error::{Error, Result};

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// `P A = L U` factorization, unit lower `L` stored below the diagonal.
#[derive(Debug, Clone)]
pub struct DenseLu {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl DenseLu {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        let n = a.order();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pmax > 1e-300) {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let m = lu[(i, k)] / pivot;
                lu[(i, k)] = m;
                if m != 0.0 {
                    for j in k + 1..n {
                        let u = lu.data[k * n + j];
                        lu.data[i * n + j] -= m * u;
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, f: &[f64]) -> Vec<f64> {
        let n = self.lu.order();
        assert_eq!(f.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| f[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> DenseMatrix {
        let n = self.lu.order();
        let mut inv = DenseMatrix::zeros(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.fill(0.0);
            e[j] = 1.0;
            for (i, v) in self.solve(&e).into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        inv
    }
}

/// Reference solve of `A x = f` by dense elimination.
pub fn dense_oracle_solve(a: &TridiagMatrix, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != a.order() {
        return Err(Error::DimensionMismatch { expected: a.order(), got: f.len() });
    }
    Ok(DenseLu::factor(&a.to_dense())?.solve(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tridiag::thomas_solve;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
        let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
    }

    #[test]
    fn agrees_with_sweep_on_fixed_examples() {
        let cases = [
            (TridiagMatrix::toeplitz(3, -1.0, 2.0, -1.0).unwrap(), vec![1.0, 0.0, 0.0]),
            (TridiagMatrix::identity(4).unwrap(), vec![5.0, -1.0, 0.0, 2.0]),
            (TridiagMatrix::toeplitz(7, -1.0, 2.0, -1.0).unwrap(), vec![1.0; 7]),
        ];
        for (a, f) in cases {
            let x = dense_oracle_solve(&a, &f).unwrap();
            let y = thomas_solve(&a, &f).unwrap();
            assert!(rel_diff(&x, &y) <= 1e-12);
        }
    }

    #[test]
    fn symmetric_two_by_two() {
        let a = TridiagMatrix::new(vec![1.0], vec![2.0, 2.0], vec![1.0]).unwrap();
        let x = dense_oracle_solve(&a, &[3.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_dominant_residual() {
        let mut rng = StdRng::seed_from_u64(7);
        let n = 50;
        let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sup: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let diag: Vec<f64> = (0..n).map(|_| 2.5 + rng.gen_range(0.0..1.0)).collect();
        let a = TridiagMatrix::new(sub, diag, sup).unwrap();
        let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = dense_oracle_solve(&a, &f).unwrap();
        assert!(a.residual_inf(&x, &f) <= 1e-11);
    }

    #[test]
    fn singular_is_reported() {
        let a = TridiagMatrix::new(vec![1.0], vec![1.0, 1.0], vec![1.0]).unwrap();
        assert_eq!(dense_oracle_solve(&a, &[1.0, 2.0]), Err(Error::Singular));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = TridiagMatrix::new(vec![1.0, -2.0], vec![4.0, 5.0, 6.0], vec![0.5, 1.5]).unwrap();
        let d = a.to_dense();
        let inv = DenseLu::factor(&d).unwrap().inverse();
        assert!(d.matmul(&inv).max_abs_diff(&DenseMatrix::identity(3)) < 1e-14);
    }
}
