/// Dichotomy ordering of boundary positions `1..=p`.
///
/// Level `i` (1-based) holds the multiples of `2^(L - i)` not already taken
/// by an earlier level, with `L = floor(log2 p) + 1`. Computing a level splits
/// the remaining unknown boundaries into independent segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    levels: Vec<Vec<usize>>,
}

impl LevelSets {
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level (1-based) of every position `1..=p`, index 0 unused.
    pub fn level_of(&self) -> Vec<usize> {
        let p = self.levels.iter().map(Vec::len).sum::<usize>();
        let mut out = vec![0; p + 1];
        for (i, level) in self.levels.iter().enumerate() {
            for &pos in level {
                out[pos] = i + 1;
            }
        }
        out
    }
}

/// `floor(log2 p) + 1` for `p >= 1`, zero for `p == 0`.
pub fn level_count(p: usize) -> usize {
    if p == 0 {
        0
    } else {
        (usize::BITS - p.leading_zeros()) as usize
    }
}

pub fn build_level_sets(p: usize) -> LevelSets {
    let depth = level_count(p);
    let mut taken = vec![false; p + 1];
    let mut levels = Vec::with_capacity(depth);
    for i in 1..=depth {
        let stride = 1usize << (depth - i);
        let count = (1usize << i) - 1;
        let mut level = Vec::new();
        for k in 1..=count {
            let pos = stride * k;
            if pos > p {
                break;
            }
            if !taken[pos] {
                taken[pos] = true;
                level.push(pos);
            }
        }
        levels.push(level);
    }
    LevelSets { levels }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_positions() {
        let ls = build_level_sets(15);
        assert_eq!(
            ls.levels(),
            &[
                vec![8],
                vec![4, 12],
                vec![2, 6, 10, 14],
                vec![1, 3, 5, 7, 9, 11, 13, 15]
            ]
        );
    }

    #[test]
    fn single_position() {
        assert_eq!(build_level_sets(1).levels(), &[vec![1]]);
        assert_eq!(build_level_sets(0).depth(), 0);
    }

    #[test]
    fn six_positions_direct_evaluation() {
        // L = 3: strides 4, 2, 1
        let ls = build_level_sets(6);
        assert_eq!(ls.levels(), &[vec![4], vec![2, 6], vec![1, 3, 5]]);
        for (i, level) in ls.levels().iter().enumerate() {
            let stride = 1 << (ls.depth() - 1 - i);
            assert!(level.iter().all(|pos| pos % stride == 0));
        }
    }

    #[test]
    fn disjoint_cover_up_to_1024() {
        for p in 1..=1024 {
            let ls = build_level_sets(p);
            assert_eq!(ls.depth(), (p as f64).log2().floor() as usize + 1);
            let mut all: Vec<usize> = ls.levels().concat();
            all.sort_unstable();
            assert_eq!(all, (1..=p).collect::<Vec<_>>(), "p = {p}");
        }
        assert_eq!(build_level_sets(7).levels()[0].len(), 1);
        assert_eq!(build_level_sets(1023).levels()[0].len(), 1);
    }
}
