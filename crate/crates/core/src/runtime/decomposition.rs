use std::ops::Range;

use crate::dichotomy::Partition;
use crate::error::{Error, Result};

/// Assignment of contiguous rows (and the matching unknowns and right-hand
/// side entries) to `p` logical PEs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    n: usize,
    ranges: Vec<Range<usize>>,
}

impl Decomposition {
    /// Near-equal split of `n` rows over `p` PEs, larger ranges first. Every
    /// range holds at least two rows.
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if p == 0 || n < 2 * p {
            return Err(Error::TooManyPes { n, p });
        }
        let (base, extra) = (n / p, n % p);
        let mut ranges = Vec::with_capacity(p);
        let mut start = 0;
        for k in 0..p {
            let len = base + usize::from(k < extra);
            ranges.push(start..start + len);
            start += len;
        }
        Ok(Self { n, ranges })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn pes(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    /// PE owning row `row`.
    pub fn owner(&self, row: usize) -> usize {
        self.ranges.partition_point(|r| r.end <= row)
    }

    /// Boundaries at the last row of every range but the final one.
    pub fn partition(&self) -> Partition {
        let bounds = self.ranges[..self.ranges.len() - 1].iter().map(|r| r.end - 1).collect();
        Partition::new(self.n, bounds).expect("ranges are increasing and inside the system")
    }
}
