use std::fmt;

use crate::error::{Error, Result};

/// Boundary rows splitting a system of order `n` into blocks.
///
/// Boundaries are stored 0-based and strictly increasing. With the sentinels
/// `0` and `n`, boundary `k` closes block `k` (`[b[k-1], b[k])`) and opens
/// block `k + 1`; there are `p + 1` blocks for `p` boundaries. The textual
/// form is 1-based: `"2,4,6"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    boundaries: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, boundaries: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPartition(format!("system order {n} < 2")));
        }
        if let Some(&b) = boundaries.iter().find(|&&b| b >= n) {
            return Err(Error::InvalidPartition(format!(
                "boundary {} outside 1..={n}",
                b + 1
            )));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition("boundaries must be strictly increasing".into()));
        }
        Ok(Self { n, boundaries })
    }

    /// No boundaries: the whole system is one block.
    pub fn whole(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// `p` boundaries spaced as evenly as possible, none on the first row.
    pub fn uniform(n: usize, p: usize) -> Result<Self> {
        if p >= n {
            return Err(Error::InvalidPartition(format!("{p} boundaries in a system of order {n}")));
        }
        let bounds = (1..=p).map(|k| k * n / (p + 1)).collect();
        Self::new(n, bounds)
    }

    /// Parses a comma-separated list of 1-based boundary rows; an empty string
    /// means no boundaries.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let spec = spec.trim();
        let boundaries = if spec.is_empty() {
            Vec::new()
        } else {
            spec.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    match tok.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(Error::InvalidPartition(format!("bad boundary index {tok:?}"))),
                    }
                })
                .collect::<Result<_>>()?
        };
        Self::new(n, boundaries)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of boundaries `p`.
    #[inline]
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Row range `[start, end)` of block `k` in `0..=p`.
    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        let start = if k == 0 { 0 } else { self.boundaries[k - 1] };
        let end = self.boundaries.get(k).copied().unwrap_or(self.n);
        start..end
    }

    /// Smallest block length, counting the last block `[b_p, n)`.
    pub fn min_block_len(&self) -> usize {
        (0..=self.len()).map(|k| self.block(k).len()).min().unwrap_or(self.n)
    }

    /// Inclusive row span `[start, end]` of local segment `k` in `0..=p`:
    /// neighbouring segments share their boundary row.
    pub fn segment(&self, k: usize) -> (usize, usize) {
        let start = if k == 0 { 0 } else { self.boundaries[k - 1] };
        let end = self.boundaries.get(k).copied().unwrap_or(self.n - 1);
        (start, end)
    }

    pub fn is_boundary(&self, row: usize) -> bool {
        self.boundaries.binary_search(&row).is_ok()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.boundaries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", b + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_are_one_based() {
        let p = Partition::parse("2, 4,6", 7).unwrap();
        assert_eq!(p.boundaries(), &[1, 3, 5]);
        assert_eq!(p.to_string(), "2,4,6");
        assert!(Partition::parse("", 7).unwrap().is_empty());
    }

    #[test]
    fn rejects_invalid() {
        assert!(Partition::parse("4,2", 7).is_err());
        assert!(Partition::parse("3,3", 7).is_err());
        assert!(Partition::parse("8", 7).is_err());
        assert!(Partition::parse("0", 7).is_err());
        assert!(Partition::parse("a", 7).is_err());
    }

    #[test]
    fn blocks_tile_the_rows() {
        let p = Partition::new(10, vec![2, 5, 7]).unwrap();
        let mut covered = Vec::new();
        for k in 0..=p.len() {
            covered.extend(p.block(k));
        }
        assert_eq!(covered, (0..10).collect::<Vec<_>>());
        assert_eq!(p.min_block_len(), 2);
        assert_eq!(p.segment(0), (0, 2));
        assert_eq!(p.segment(3), (7, 9));
    }

    #[test]
    fn uniform_spacing() {
        let p = Partition::uniform(16, 3).unwrap();
        assert_eq!(p.boundaries(), &[4, 8, 12]);
    }
}
