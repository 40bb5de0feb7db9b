use super::TridiagMatrix;
use crate::error::{Error, Result};

/// Diagonal similarity `T` and the symmetric matrix `T^{-1} A T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizationResult {
    /// Diagonal of `T`; `scale[0] == 1`.
    pub scale: Vec<f64>,
    pub sym: TridiagMatrix,
}

impl SymmetrizationResult {
    /// Maps a solution of `Â x̂ = T^{-1} f` back to `x = T x̂`.
    pub fn unscale(&self, x_hat: &[f64]) -> Vec<f64> {
        x_hat.iter().zip(&self.scale).map(|(x, t)| x * t).collect()
    }

    /// `T^{-1} f`.
    pub fn scale_rhs(&self, f: &[f64]) -> Vec<f64> {
        f.iter().zip(&self.scale).map(|(v, t)| v / t).collect()
    }
}

/// Symmetrizes `A` by the diagonal similarity `t[k+1] = t[k] * sqrt(a[k+1] / c[k])`.
///
/// Requires every product of mirrored off-diagonals to be positive.
pub fn symmetrize(a: &TridiagMatrix) -> Result<SymmetrizationResult> {
    let n = a.order();
    let mut scale = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    scale.push(1.0);
    for k in 0..n - 1 {
        let (lo, up) = (a.sub()[k], a.sup()[k]);
        if !(lo * up > 0.0) {
            return Err(Error::NotSymmetrizable { index: k + 2 });
        }
        scale.push(scale[k] * (lo / up).sqrt());
        off.push(up.signum() * (lo * up).sqrt());
    }
    let sym = TridiagMatrix::new(off.clone(), a.diag().to_vec(), off)?;
    Ok(SymmetrizationResult { scale, sym })
}
