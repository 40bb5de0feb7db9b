//! Right-hand-side independent data: inverse-matrix rows near each boundary
//! and the homogeneous solutions `Z^L`, `Z^R` seen from each boundary.

use rayon::prelude::*;

use super::Partition;
use crate::error::{Error, Result};
use crate::tridiag::{symmetrize, ExplicitInverse, ThomasFactor, TridiagMatrix};

/// How rows of `A^{-1}` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenSource {
    /// `A = A^T`: row `k` is the solution of `A g = e_k`.
    Symmetric,
    /// Solved on `T^{-1} A T` and scaled back by `t_k / t_l`.
    Symmetrized,
    /// Product formula from two auxiliary solves.
    ExplicitInverse,
    /// `A^T g = e_k`.
    Transposed,
}

/// Route selection for inverse rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreenRoute {
    /// Symmetric, then symmetrized, then explicit, then transposed solves.
    #[default]
    Auto,
    Force(GreenSource),
}

/// Preliminary data attached to one boundary row.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    /// Boundary row (0-based).
    pub row: usize,
    /// First column covered by `g`.
    pub g_start: usize,
    /// Row `row` of `A^{-1}` over the two blocks adjacent to the boundary.
    pub g: Vec<f64>,
    /// `Z^L` of this boundary sampled at boundaries `1..=k` (last entry 1).
    pub z_left_at: Vec<f64>,
    /// `Z^R` of this boundary sampled at boundaries `k..=p` (first entry 1).
    pub z_right_at: Vec<f64>,
    /// `max |Z^L|` over all rows `0..=row`.
    pub z_left_norm: f64,
    /// `max |Z^R|` over all rows `row..n`.
    pub z_right_norm: f64,
}

impl BoundaryData {
    /// Entry of the stored inverse row at column `col`.
    #[inline]
    pub fn g_at(&self, col: usize) -> f64 {
        self.g[col - self.g_start]
    }
}

/// Everything the per-right-hand-side phase needs, computed once per matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PreliminaryData {
    pub source: GreenSource,
    pub boundaries: Vec<BoundaryData>,
}

impl PreliminaryData {
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// `Z^R` of boundary `from` evaluated at boundary `at >= from` (0-based).
    #[inline]
    pub fn z_right(&self, from: usize, at: usize) -> f64 {
        self.boundaries[from].z_right_at[at - from]
    }

    /// `Z^L` of boundary `from` evaluated at boundary `at <= from` (0-based).
    #[inline]
    pub fn z_left(&self, from: usize, at: usize) -> f64 {
        self.boundaries[from].z_left_at[at]
    }

    /// Largest `‖Z‖_∞` over all stored vectors.
    pub fn max_z_norm(&self) -> f64 {
        self.boundaries
            .iter()
            .map(|b| b.z_left_norm.max(b.z_right_norm))
            .fold(0.0, f64::max)
    }
}

/// Builds the preliminary data with automatic route selection.
pub fn compute_preliminary(a: &TridiagMatrix, part: &Partition) -> Result<PreliminaryData> {
    compute_preliminary_with(a, part, GreenRoute::Auto, false)
}

/// Builds the preliminary data. With `parallel` set, boundaries are processed
/// as independent rayon tasks (on the current pool).
pub fn compute_preliminary_with(
    a: &TridiagMatrix,
    part: &Partition,
    route: GreenRoute,
    parallel: bool,
) -> Result<PreliminaryData> {
    if part.order() != a.order() {
        return Err(Error::DimensionMismatch { expected: a.order(), got: part.order() });
    }
    let p = part.len();
    let n = a.order();
    let bounds = part.boundaries();
    let green = GreenRows::new(a, route)?;
    let (top, bottom) = sweep_coefficients(a)?;

    let boundary = |k: usize| -> BoundaryData {
        let row = bounds[k];
        let g_start = if k == 0 { 0 } else { bounds[k - 1] };
        let g_end = bounds.get(k + 1).copied().unwrap_or(n);
        let g = green.row(row, g_start..g_end);
        // Z^L: back substitution of B^L from the unit row downwards.
        let mut z_left_at = vec![0.0; k + 1];
        z_left_at[k] = 1.0;
        let mut norm_l: f64 = 1.0;
        let mut cur = 1.0;
        let mut next = k;
        for m in (0..row).rev() {
            cur *= top[m];
            norm_l = norm_l.max(cur.abs());
            if next > 0 && bounds[next - 1] == m {
                next -= 1;
                z_left_at[next] = cur;
            }
        }
        // Z^R: the mirror image, walking up from the unit row.
        let mut z_right_at = vec![0.0; p - k];
        z_right_at[0] = 1.0;
        let mut norm_r: f64 = 1.0;
        let mut cur = 1.0;
        let mut next = k + 1;
        for m in row + 1..n {
            cur *= bottom[m];
            norm_r = norm_r.max(cur.abs());
            if next < p && bounds[next] == m {
                z_right_at[next - k] = cur;
                next += 1;
            }
        }
        BoundaryData {
            row,
            g_start,
            g,
            z_left_at,
            z_right_at,
            z_left_norm: norm_l,
            z_right_norm: norm_r,
        }
    };
    let boundaries = if parallel {
        (0..p).into_par_iter().map(boundary).collect()
    } else {
        (0..p).map(boundary).collect()
    };
    Ok(PreliminaryData { source: green.source(), boundaries })
}

/// Forward sweep coefficients from the top (`x[m] = top[m] * x[m+1]` on
/// homogeneous rows) and from the bottom (`x[m] = bottom[m] * x[m-1]`).
fn sweep_coefficients(a: &TridiagMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let top = ThomasFactor::new(a)?.alphas().to_vec();
    let rev_sub: Vec<f64> = a.sup().iter().rev().copied().collect();
    let rev_sup: Vec<f64> = a.sub().iter().rev().copied().collect();
    let rev_diag: Vec<f64> = a.diag().iter().rev().copied().collect();
    let mut bottom = ThomasFactor::from_diagonals(&rev_sub, &rev_diag, &rev_sup)?
        .alphas()
        .to_vec();
    bottom.reverse();
    Ok((top, bottom))
}

/// Source of inverse-matrix rows, set up once per matrix.
enum GreenRows {
    Symmetric(ThomasFactor),
    Transposed(ThomasFactor),
    Symmetrized { factor: ThomasFactor, scale: Vec<f64> },
    Explicit(ExplicitInverse),
}

impl GreenRows {
    fn new(a: &TridiagMatrix, route: GreenRoute) -> Result<Self> {
        let order: &[GreenSource] = match route {
            GreenRoute::Force(src) => return Self::from_source(a, src),
            GreenRoute::Auto if a.is_symmetric() => &[GreenSource::Symmetric],
            GreenRoute::Auto => &[
                GreenSource::Symmetrized,
                GreenSource::ExplicitInverse,
                GreenSource::Transposed,
            ],
        };
        let mut last_err = Error::Singular;
        for &src in order {
            match Self::from_source(a, src) {
                Ok(g) => return Ok(g),
                Err(e @ (Error::NotSymmetrizable { .. } | Error::OracleFallbackRequired { .. })) => {
                    last_err = e
                }
                Err(e) => return Err(e),
            }
        }
        Err(last_err)
    }

    fn from_source(a: &TridiagMatrix, src: GreenSource) -> Result<Self> {
        Ok(match src {
            GreenSource::Symmetric => {
                if !a.is_symmetric() {
                    return Err(Error::InvalidMatrix(
                        "symmetric route on a nonsymmetric matrix".into(),
                    ));
                }
                Self::Symmetric(ThomasFactor::new(a)?)
            }
            GreenSource::Transposed => Self::Transposed(ThomasFactor::new(&a.transpose())?),
            GreenSource::Symmetrized => {
                let sym = symmetrize(a)?;
                if let Some(i) = sym.scale.iter().position(|t| !(t.is_normal() && t.abs() < 1e280)) {
                    return Err(Error::OracleFallbackRequired { index: i });
                }
                Self::Symmetrized { factor: ThomasFactor::new(&sym.sym)?, scale: sym.scale }
            }
            GreenSource::ExplicitInverse => Self::Explicit(ExplicitInverse::new(a)?),
        })
    }

    fn source(&self) -> GreenSource {
        match self {
            Self::Symmetric(_) => GreenSource::Symmetric,
            Self::Transposed(_) => GreenSource::Transposed,
            Self::Symmetrized { .. } => GreenSource::Symmetrized,
            Self::Explicit(_) => GreenSource::ExplicitInverse,
        }
    }

    /// Row `k` of `A^{-1}` restricted to `cols`.
    fn row(&self, k: usize, cols: std::ops::Range<usize>) -> Vec<f64> {
        let unit_solve = |factor: &ThomasFactor| {
            let mut g = vec![0.0; factor.order()];
            g[k] = 1.0;
            factor.solve_in_place(&mut g);
            g.truncate(cols.end);
            g.drain(..cols.start);
            g
        };
        match self {
            Self::Symmetric(f) | Self::Transposed(f) => unit_solve(f),
            Self::Symmetrized { factor, scale } => {
                let tk = scale[k];
                unit_solve(factor)
                    .into_iter()
                    .zip(&scale[cols])
                    .map(|(g, tl)| tk * g / tl)
                    .collect()
            }
            Self::Explicit(inv) => inv.row_window(k, cols),
        }
    }
}

/// `Z^L_k`: solution over rows `0..=k` of the system made of rows `0..k` of
/// `A` and a unit last row, with right-hand side `e_k`. Assembled explicitly
/// and solved directly; used to check the sampled values.
pub fn homogeneous_left(a: &TridiagMatrix, k: usize) -> Result<Vec<f64>> {
    let m = k + 1;
    let mut diag = a.diag()[..m].to_vec();
    let mut sub = a.sub()[..k].to_vec();
    let sup = a.sup()[..k].to_vec();
    diag[k] = 1.0;
    if k > 0 {
        sub[k - 1] = 0.0;
    }
    let mut z = vec![0.0; m];
    z[k] = 1.0;
    ThomasFactor::from_diagonals(&sub, &diag, &sup)?.solve_in_place(&mut z);
    Ok(z)
}

/// `Z^R_k`: solution over rows `k..n` of a unit first row followed by rows
/// `k+1..n` of `A`, with right-hand side `e_0`.
pub fn homogeneous_right(a: &TridiagMatrix, k: usize) -> Result<Vec<f64>> {
    let n = a.order();
    let mut diag = a.diag()[k..].to_vec();
    let sub = a.sub()[k..].to_vec();
    let mut sup = a.sup()[k..].to_vec();
    diag[0] = 1.0;
    if !sup.is_empty() {
        sup[0] = 0.0;
    }
    let mut z = vec![0.0; n - k];
    z[0] = 1.0;
    ThomasFactor::from_diagonals(&sub, &diag, &sup)?.solve_in_place(&mut z);
    Ok(z)
}
