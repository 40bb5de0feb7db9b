use super::TridiagMatrix;

/// Row-wise diagonal dominance summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceReport {
    /// `|b_i| >= |a_i| + |c_i|` on every row.
    pub dominant: bool,
    /// At least one of those inequalities is strict.
    pub strict_somewhere: bool,
    /// `min_i |b_i| - |a_i| - |c_i|`.
    pub worst_margin: f64,
}

impl DominanceReport {
    /// Dominant with at least one strict row: the sweep coefficients and
    /// every homogeneous solution used by the dichotomy stay bounded by one.
    pub fn is_stable(&self) -> bool {
        self.dominant && self.strict_somewhere
    }
}

pub fn check_dominance(a: &TridiagMatrix) -> DominanceReport {
    let mut worst = f64::INFINITY;
    let mut strict = false;
    for i in 0..a.order() {
        let margin = a.diag()[i].abs() - a.lower(i).abs() - a.upper(i).abs();
        worst = worst.min(margin);
        strict |= margin > 0.0;
    }
    let dominant = worst >= 0.0;
    DominanceReport { dominant, strict_somewhere: dominant && strict, worst_margin: worst }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_is_dominant_with_strict_boundary_rows() {
        let r = check_dominance(&TridiagMatrix::toeplitz(5, -1.0, 2.0, -1.0).unwrap());
        assert!(r.dominant && r.strict_somewhere);
        assert_eq!(r.worst_margin, 0.0);
    }

    #[test]
    fn positive_offdiagonals_same_verdict() {
        let r = check_dominance(&TridiagMatrix::toeplitz(5, 1.0, 2.0, 1.0).unwrap());
        assert!(r.dominant && r.strict_somewhere && r.is_stable());
    }

    #[test]
    fn weak_diagonal_fails() {
        let r = check_dominance(&TridiagMatrix::toeplitz(5, 2.0, 1.0, 2.0).unwrap());
        assert!(!r.dominant && !r.strict_somewhere);
        assert_eq!(r.worst_margin, -3.0);
    }

    #[test]
    fn all_equalities_is_not_strict() {
        // every row, boundary rows included, holds with equality
        let a = TridiagMatrix::new(vec![1.0, 1.0], vec![1.0, 2.0, 1.0], vec![1.0, 1.0]).unwrap();
        let r = check_dominance(&a);
        assert!(r.dominant && !r.strict_somewhere);
    }
}
