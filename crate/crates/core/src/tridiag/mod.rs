//! Tridiagonal matrices and the sequential building blocks used by every
//! parallel path: the Thomas sweep, a dense elimination oracle, dominance
//! and symmetrization checks, and explicit rows of the inverse.
//!
//! Indices in this module are 0-based. Row `i` of a matrix of order `n` is
//!
//! ```text
//! sub[i-1] * x[i-1] + diag[i] * x[i] + sup[i] * x[i+1] = f[i]
//! ```
//!
//! with the out-of-range terms absent on the first and last rows.

mod dense;
mod dominance;
mod inverse;
mod random;
mod symmetrize;
mod thomas;

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use dense::{dense_oracle_solve, DenseLu, DenseMatrix};
pub use dominance::{check_dominance, DominanceReport};
pub use inverse::{inverse_row_general, ExplicitInverse};
pub use random::{random_dominant, random_symmetrizable, random_vector};
pub use symmetrize::{symmetrize, SymmetrizationResult};
pub use thomas::{thomas_solve, ThomasFactor, PIVOT_THRESHOLD};

/// A general (not necessarily symmetric) tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagMatrix {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl TridiagMatrix {
    /// Builds a matrix from its three diagonals. `sub` and `sup` must have
    /// exactly one entry fewer than `diag`, the order must be at least 2 and
    /// every entry finite.
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n < 2 {
            return Err(Error::InvalidMatrix(format!("order must be >= 2, got {n}")));
        }
        if sub.len() != n - 1 || sup.len() != n - 1 {
            return Err(Error::InvalidMatrix(format!(
                "off-diagonal lengths must be {}, got sub={} sup={}",
                n - 1,
                sub.len(),
                sup.len()
            )));
        }
        if let Some(bad) = sub.iter().chain(&diag).chain(&sup).find(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {bad}")));
        }
        Ok(Self { sub, diag, sup })
    }

    /// Constant-diagonal matrix `tri(a, b, c)`: `a` below, `b` on, `c` above
    /// the diagonal.
    pub fn toeplitz(n: usize, a: f64, b: f64, c: f64) -> Result<Self> {
        let m = n.saturating_sub(1);
        Self::new(vec![a; m], vec![b; n], vec![c; m])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::toeplitz(n, 0.0, 1.0, 0.0)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    #[inline]
    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    #[inline]
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    #[inline]
    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    /// Entry below the diagonal in row `i` (zero for the first row).
    #[inline]
    pub fn lower(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.sub[i - 1]
        }
    }

    /// Entry above the diagonal in row `i` (zero for the last row).
    #[inline]
    pub fn upper(&self, i: usize) -> f64 {
        if i + 1 >= self.order() {
            0.0
        } else {
            self.sup[i]
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.sub == self.sup
    }

    pub fn transpose(&self) -> Self {
        Self {
            sub: self.sup.clone(),
            diag: self.diag.clone(),
            sup: self.sub.clone(),
        }
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(x.len(), n, "vector length must equal matrix order");
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.order())
            .map(|i| self.lower(i).abs() + self.diag[i].abs() + self.upper(i).abs())
            .fold(0.0, f64::max)
    }

    /// `‖A x - f‖_∞`.
    pub fn residual_inf(&self, x: &[f64], f: &[f64]) -> f64 {
        self.mul_vec(x)
            .iter()
            .zip(f)
            .map(|(ax, fi)| (ax - fi).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.order();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i > 0 {
                m[(i, i - 1)] = self.sub[i - 1];
            }
            if i + 1 < n {
                m[(i, i + 1)] = self.sup[i];
            }
        }
        m
    }

    /// Parses the four-line text format: order, sub, diag, super.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing order line".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line,
            message: format!("expected matrix order, found {header:?}"),
        })?;
        if n < 2 {
            return Err(Error::Parse {
                line,
                message: format!("matrix order must be >= 2, got {n}"),
            });
        }
        let mut last_line = line;
        let mut read_row = |name: &str, len: usize| -> Result<Vec<f64>> {
            let (line, body) = lines.next().ok_or_else(|| Error::Parse {
                line: last_line + 1,
                message: format!("missing {name} line"),
            })?;
            last_line = line;
            let values = parse_reals(body, line)?;
            if values.len() != len {
                return Err(Error::Parse {
                    line,
                    message: format!("{name} needs {len} values, found {}", values.len()),
                });
            }
            Ok(values)
        };
        let sub = read_row("sub-diagonal", n - 1)?;
        let diag = read_row("diagonal", n)?;
        let sup = read_row("super-diagonal", n - 1)?;
        Self::new(sub, diag, sup)
    }

    /// Writes the four-line text format with 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for row in [&self.sub, &self.diag, &self.sup] {
            write_reals(&mut out, row);
        }
        out
    }
}

/// Parses one whitespace-separated line of reals, reporting `line` on error.
pub(crate) fn parse_reals(body: &str, line: usize) -> Result<Vec<f64>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("invalid number {tok:?}"),
                })
        })
        .collect()
}

/// Appends `values` as one line of 17-significant-digit reals.
pub(crate) fn write_reals(out: &mut String, values: &[f64]) {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v:.16e}");
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(TridiagMatrix::new(vec![], vec![1.0], vec![]).is_err());
        assert!(TridiagMatrix::new(vec![1.0, 2.0], vec![1.0, 1.0], vec![1.0]).is_err());
        assert!(TridiagMatrix::new(vec![f64::NAN], vec![1.0, 1.0], vec![0.0]).is_err());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let a = TridiagMatrix::new(
            vec![0.1, -1.0 / 3.0],
            vec![2.0, std::f64::consts::PI, 1e-17],
            vec![-7.25, 1e300],
        )
        .unwrap();
        let back = TridiagMatrix::parse(&a.to_text()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = TridiagMatrix::parse("3\n1 1\n2 2 x\n1 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 3, message: "invalid number \"x\"".into() }
        );
        let err = TridiagMatrix::parse("3\n1 1\n2 2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = TridiagMatrix::parse("3\n1 1 1\n2 2 2\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn mul_vec_matches_dense() {
        let a = TridiagMatrix::new(vec![1.0, 2.0], vec![4.0, 5.0, 6.0], vec![-1.0, -2.0]).unwrap();
        let x = [1.0, 2.0, 3.0];
        let d = a.to_dense();
        let expect: Vec<f64> = (0..3).map(|i| (0..3).map(|j| d[(i, j)] * x[j]).sum()).collect();
        assert_eq!(a.mul_vec(&x), expect);
        assert_eq!(a.norm_inf(), 2.0 + 6.0);
    }
}
