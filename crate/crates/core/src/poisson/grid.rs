use std::fmt::Write;

use crate::error::{Error, Result};
use crate::tridiag::{parse_reals, write_reals};

/// Node values of an `(N1 + 1) x (N2 + 1)` mesh with steps `h1`, `h2`,
/// stored row-major: node `(i, j)` sits at `(i h1, j h2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    n1: usize,
    n2: usize,
    h1: f64,
    h2: f64,
    values: Vec<f64>,
}

impl Grid2D {
    pub fn zeros(n1: usize, n2: usize, h1: f64, h2: f64) -> Result<Self> {
        Self::from_values(n1, n2, h1, h2, vec![0.0; (n1 + 1) * (n2 + 1)])
    }

    pub fn from_values(n1: usize, n2: usize, h1: f64, h2: f64, values: Vec<f64>) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidMatrix(format!("mesh needs at least 2 cells per direction, got {n1}x{n2}")));
        }
        if !(h1 > 0.0 && h1.is_finite() && h2 > 0.0 && h2.is_finite()) {
            return Err(Error::InvalidMatrix(format!("mesh steps must be positive, got {h1}, {h2}")));
        }
        let expected = (n1 + 1) * (n2 + 1);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: values.len() });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite value at node {k}")));
        }
        Ok(Self { n1, n2, h1, h2, values })
    }

    /// Samples `f(x, y)` at every node of the unit-square mesh.
    pub fn unit_square(n1: usize, n2: usize, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let (h1, h2) = (1.0 / n1 as f64, 1.0 / n2 as f64);
        Self::from_fn(n1, n2, h1, h2, f)
    }

    pub fn from_fn(n1: usize, n2: usize, h1: f64, h2: f64, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity((n1 + 1) * (n2 + 1));
        for i in 0..=n1 {
            for j in 0..=n2 {
                values.push(f(i as f64 * h1, j as f64 * h2));
            }
        }
        Self::from_values(n1, n2, h1, h2, values)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn h2(&self) -> f64 {
        self.h2
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.n2 + 1) + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * (self.n2 + 1) + j] = v;
    }

    /// Node row `i` (all `j`).
    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.n2 + 1;
        &self.values[i * w..(i + 1) * w]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let w = self.n2 + 1;
        &mut self.values[i * w..(i + 1) * w]
    }

    pub fn same_mesh(&self, other: &Self) -> bool {
        self.n1 == other.n1 && self.n2 == other.n2 && self.h1 == other.h1 && self.h2 == other.h2
    }

    pub(crate) fn check_mesh(&self, other: &Self) -> Result<()> {
        if self.same_mesh(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.values.len(), got: other.values.len() })
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest magnitude on the boundary nodes.
    pub fn boundary_max(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..=self.n1 {
            for j in 0..=self.n2 {
                if i == 0 || j == 0 || i == self.n1 || j == self.n2 {
                    m = m.max(self.get(i, j).abs());
                }
            }
        }
        m
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    /// Five-point Laplacian at interior node `(i, j)`, boundary values as stored.
    pub fn laplacian(&self, i: usize, j: usize) -> f64 {
        let c = self.get(i, j);
        (self.get(i - 1, j) - 2.0 * c + self.get(i + 1, j)) / (self.h1 * self.h1)
            + (self.get(i, j - 1) - 2.0 * c + self.get(i, j + 1)) / (self.h2 * self.h2)
    }

    /// `max |Lap(u) + f|` over interior nodes.
    pub fn poisson_residual(&self, f: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 1..self.n1 {
            for j in 1..self.n2 {
                m = m.max((self.laplacian(i, j) + f.get(i, j)).abs());
            }
        }
        m
    }

    /// Header `N1 N2 h1 h2`, then one line of node values per `i`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {:.16e} {:.16e}", self.n1, self.n2, self.h1, self.h2);
        for i in 0..=self.n1 {
            write_reals(&mut out, self.row(i));
        }
        out
    }

    /// Reads the format written by [`Grid2D::to_text`]; node values may be
    /// spread over lines freely.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing grid header".into() })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let bad = |m: String| Error::Parse { line: hl, message: m };
        if toks.len() != 4 {
            return Err(bad(format!("header needs `N1 N2 h1 h2`, found {header:?}")));
        }
        let n1: usize = toks[0].parse().map_err(|_| bad(format!("invalid N1 {:?}", toks[0])))?;
        let n2: usize = toks[1].parse().map_err(|_| bad(format!("invalid N2 {:?}", toks[1])))?;
        let h1: f64 = toks[2].parse().map_err(|_| bad(format!("invalid h1 {:?}", toks[2])))?;
        let h2: f64 = toks[3].parse().map_err(|_| bad(format!("invalid h2 {:?}", toks[3])))?;
        let expected = (n1 + 1) * (n2 + 1);
        let mut values = Vec::with_capacity(expected);
        let mut last = hl;
        for (line, body) in lines {
            values.extend(parse_reals(body, line)?);
            last = line;
        }
        if values.len() != expected {
            return Err(Error::Parse {
                line: last,
                message: format!("expected {expected} node values, found {}", values.len()),
            });
        }
        Self::from_values(n1, n2, h1, h2, values).map_err(|e| bad(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = Grid2D::unit_square(3, 4, |x, y| x * 10.0 + y).unwrap();
        let back = Grid2D::parse(&g.to_text()).unwrap();
        assert_eq!(g, back);
        assert_eq!(g.get(3, 4), 11.0);
    }

    #[test]
    fn parse_errors_name_lines() {
        let err = Grid2D::parse("2 2 0.5 0.5\n0 0 0\n0 x 0\n0 0 0\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "invalid number \"x\"".into() });
        assert!(matches!(Grid2D::parse("2 2 0.5\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Grid2D::parse("2 2 0.5 0.5\n0 0 0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn laplacian_of_quadratic_is_exact() {
        let g = Grid2D::unit_square(8, 5, |x, y| x * x + 3.0 * y * y).unwrap();
        assert!((g.laplacian(3, 2) - 8.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_degenerate_meshes() {
        assert!(Grid2D::zeros(1, 4, 1.0, 0.25).is_err());
        assert!(Grid2D::zeros(4, 4, 0.0, 0.25).is_err());
    }
}
