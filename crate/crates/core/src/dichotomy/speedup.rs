//! Operation-count speedup model for the boundary-combination algorithm
//! without the dichotomy ordering.
//!
//! A sequential sweep costs `8N`; with `p` PEs the parallel algorithm costs
//! `(12N + 2p^2) / p`, giving `S = 8Np / (12N + 2p^2)`, maximised at
//! `p0 = sqrt(6N)` where `S = sqrt(6N) / 3`.

pub fn theoretical_speedup(n: f64, p: f64) -> f64 {
    8.0 * n * p / (12.0 * n + 2.0 * p * p)
}

/// PE count that maximises [`theoretical_speedup`].
pub fn optimal_pes(n: f64) -> f64 {
    (6.0 * n).sqrt()
}

pub fn max_speedup(n: f64) -> f64 {
    (6.0 * n).sqrt() / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values_for_1024_unknowns() {
        assert!((optimal_pes(1024.0) - 78.38367176906169).abs() < 1e-9);
        assert!((max_speedup(1024.0) - 26.127890589687233).abs() < 1e-9);
        assert!((theoretical_speedup(1024.0, optimal_pes(1024.0)) - max_speedup(1024.0)).abs() < 1e-12);
    }

    #[test]
    fn integer_scan_peaks_at_optimum() {
        for n in [64.0, 1024.0, 1e5] {
            let best = (1..10_000)
                .max_by(|&a, &b| {
                    theoretical_speedup(n, a as f64).total_cmp(&theoretical_speedup(n, b as f64))
                })
                .unwrap() as f64;
            assert!((best - optimal_pes(n)).abs() <= 1.0, "n={n} best={best}");
            assert!(theoretical_speedup(n, best) <= max_speedup(n) + 1e-12);
        }
    }

    #[test]
    fn decays_to_zero() {
        let n = 1024.0;
        let mut prev = theoretical_speedup(n, optimal_pes(n));
        for p in [200.0, 1e3, 1e4, 1e6, 1e9] {
            let s = theoretical_speedup(n, p);
            assert!(s < prev);
            prev = s;
        }
        assert!(prev < 1e-5);
    }
}
