use std::f64::consts::PI;
use std::sync::Arc;

use rustdct::{Dst1, DctPlanner};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `c(l) = (2 / N) sum_j u(j) sin(pi l j / N)`.
    Forward,
    /// `u(j) = sum_l c(l) sin(pi l j / N)`.
    Inverse,
}

/// Sine transform of the `N - 1` interior values of a line with `N` cells.
#[derive(Clone)]
pub struct SineTransform {
    plan: Arc<dyn Dst1<f64>>,
    cells: usize,
}

impl std::fmt::Debug for SineTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SineTransform").field("cells", &self.cells).finish()
    }
}

impl SineTransform {
    /// Plans the transform for lines of `cells >= 2` cells.
    pub fn new(cells: usize) -> Self {
        assert!(cells >= 2, "a sine transform needs at least 2 cells");
        Self { plan: DctPlanner::new().plan_dst1(cells - 1), cells }
    }

    pub fn len(&self) -> usize {
        self.cells - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn scratch_len(&self) -> usize {
        self.plan.get_scratch_len()
    }

    pub fn apply(&self, buf: &mut [f64], direction: Direction, scratch: &mut [f64]) {
        self.plan.process_dst1_with_scratch(buf, scratch);
        if direction == Direction::Forward {
            let s = 2.0 / self.cells as f64;
            buf.iter_mut().for_each(|v| *v *= s);
        }
    }
}

/// Fast sine transform of `values` (length `N - 1`).
pub fn dst1(values: &[f64], direction: Direction) -> Vec<f64> {
    let mut buf = values.to_vec();
    if buf.is_empty() {
        return buf;
    }
    let t = SineTransform::new(buf.len() + 1);
    let mut scratch = vec![0.0; t.scratch_len()];
    t.apply(&mut buf, direction, &mut scratch);
    buf
}

/// Direct `O(N^2)` summation of the same transform.
pub fn dst1_direct(values: &[f64], direction: Direction) -> Vec<f64> {
    let n = values.len() + 1;
    let scale = match direction {
        Direction::Forward => 2.0 / n as f64,
        Direction::Inverse => 1.0,
    };
    (1..n)
        .map(|l| {
            scale
                * values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * (PI * (l * (k + 1)) as f64 / n as f64).sin())
                    .sum::<f64>()
        })
        .collect()
}
