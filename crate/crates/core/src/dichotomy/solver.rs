use super::levels::{build_level_sets, LevelSets};
use super::prelim::{compute_preliminary_with, GreenRoute, PreliminaryData};
use super::Partition;
use crate::error::{Error, Result};
use crate::tridiag::{thomas_solve, ThomasFactor, TridiagMatrix};

/// Arithmetic per unknown of one sweep (forward and back substitution).
pub const SWEEP_FLOPS_PER_ROW: u64 = 5;

/// Block sums of the right-hand side against inverse rows.
///
/// Both vectors are indexed by block `0..=p`. `right[k]` pairs block `k` with
/// the row of boundary `k` (the boundary closing it) and `left[k]` with the
/// row of boundary `k - 1` (the boundary opening it). `right[p]` and
/// `left[0]` have no boundary and stay zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaSet {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

/// Work counters for one or more solves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Products of a block sum with a homogeneous-solution sample.
    pub combine_terms: u64,
    /// Products formed while accumulating block sums.
    pub beta_terms: u64,
    /// Arithmetic in the local sweeps.
    pub local_flops: u64,
}

impl std::ops::AddAssign for SolveStats {
    fn add_assign(&mut self, o: Self) {
        self.combine_terms += o.combine_terms;
        self.beta_terms += o.beta_terms;
        self.local_flops += o.local_flops;
    }
}

/// Boundary components resolved together inside one segment of a level.
///
/// Positions are 1-based boundary numbers; `left == 0` and `right == p + 1`
/// stand for the ends of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentTask {
    pub left: usize,
    pub right: usize,
    pub members: Vec<usize>,
}

/// Level-by-level task list. Tasks of one level only read values from
/// earlier levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub levels: Vec<Vec<SegmentTask>>,
}

impl Schedule {
    pub fn new(sets: &LevelSets) -> Self {
        let level_of = sets.level_of();
        let p = level_of.len() - 1;
        let mut known = vec![false; p + 2];
        known[0] = true;
        known[p + 1] = true;
        let mut levels = Vec::with_capacity(sets.depth());
        for level in sets.levels() {
            let mut tasks: Vec<SegmentTask> = Vec::new();
            for &pos in level {
                let left = (0..pos).rev().find(|&t| known[t]).unwrap();
                let right = (pos + 1..=p + 1).find(|&t| known[t]).unwrap();
                match tasks.last_mut() {
                    Some(t) if t.left == left && t.right == right => t.members.push(pos),
                    _ => tasks.push(SegmentTask { left, right, members: vec![pos] }),
                }
            }
            for &pos in level {
                known[pos] = true;
            }
            levels.push(tasks);
        }
        Self { levels }
    }
}

/// `(X)_k = G_k^T F`: one solution component from one inverse row.
pub fn solve_component_direct(g_row: &[f64], f: &[f64]) -> f64 {
    assert_eq!(g_row.len(), f.len(), "inverse row and right-hand side lengths differ");
    g_row.iter().zip(f).map(|(g, v)| g * v).sum()
}

/// Block sums of block `k` for one right-hand side: `(left[k], right[k])`.
pub fn block_betas(f: &[f64], part: &Partition, prelim: &PreliminaryData, k: usize) -> (f64, f64) {
    let p = part.len();
    let rows = part.block(k);
    let fk = &f[rows.clone()];
    let dot = |b: &super::BoundaryData| {
        solve_component_direct(&b.g[rows.start - b.g_start..rows.end - b.g_start], fk)
    };
    let left = if k > 0 { dot(&prelim.boundaries[k - 1]) } else { 0.0 };
    let right = if k < p { dot(&prelim.boundaries[k]) } else { 0.0 };
    (left, right)
}

/// Block sums for one right-hand side.
pub fn compute_betas(f: &[f64], part: &Partition, prelim: &PreliminaryData) -> BetaSet {
    let (left, right) = (0..=part.len()).map(|k| block_betas(f, part, prelim, k)).unzip();
    BetaSet { left, right }
}

fn beta_terms(part: &Partition) -> u64 {
    let p = part.len();
    (0..=p)
        .map(|k| part.block(k).len() as u64 * (u64::from(k < p) + u64::from(k > 0)))
        .sum()
}

/// Resolves the members of one task from the values already known at its
/// ends. Returns `(position, value)` pairs and the number of combination
/// terms spent.
///
/// Inside the segment the solution is the contribution of the blocks it
/// contains plus two homogeneous corrections: `c_l Z^R` from the known left
/// end and `c_r Z^L` from the known right end. The two correction weights
/// come from matching the known end values.
pub fn solve_task(
    prelim: &PreliminaryData,
    betas: &BetaSet,
    known: &[f64],
    task: &SegmentTask,
) -> Result<(Vec<(usize, f64)>, u64)> {
    let p = prelim.len();
    let (k1, k2) = (task.left, task.right);
    // 1-based helpers over boundary positions / blocks
    let zr = |from: usize, at: usize| prelim.z_right(from - 1, at - 1);
    let zl = |from: usize, at: usize| prelim.z_left(from - 1, at - 1);
    let beta_r = |j: usize| betas.right[j - 1];
    let beta_l = |j: usize| betas.left[j - 1];
    let mut terms = 0u64;

    let has_left = k1 >= 1;
    let has_right = k2 <= p;
    let (mut c_l, mut c_r) = (0.0, 0.0);
    if has_left || has_right {
        let s_l = if has_left {
            terms += (k2 - k1) as u64;
            (k1 + 1..=k2).map(|j| beta_l(j) * zl(j - 1, k1)).sum::<f64>()
        } else {
            0.0
        };
        let s_r = if has_right {
            terms += (k2 - k1) as u64;
            (k1 + 1..=k2).map(|j| beta_r(j) * zr(j, k2)).sum::<f64>()
        } else {
            0.0
        };
        match (has_left, has_right) {
            (true, true) => {
                let (r_l, r_r) = (known[k1 - 1] - s_l, known[k2 - 1] - s_r);
                let zeta_l = zl(k2, k1);
                let zeta_r = zr(k1, k2);
                let det = 1.0 - zeta_l * zeta_r;
                if !(det.abs() >= crate::tridiag::PIVOT_THRESHOLD) {
                    return Err(Error::PivotBreakdown { row: prelim.boundaries[k1 - 1].row, pivot: det });
                }
                c_l = (r_l - zeta_l * r_r) / det;
                c_r = (r_r - zeta_r * r_l) / det;
            }
            (true, false) => c_l = known[k1 - 1] - s_l,
            (false, true) => c_r = known[k2 - 1] - s_r,
            (false, false) => unreachable!(),
        }
    }

    let mut out = Vec::with_capacity(task.members.len());
    for &i in &task.members {
        let mut x = (k1 + 1..=i).map(|j| beta_r(j) * zr(j, i)).sum::<f64>();
        x += (i + 1..=k2).map(|j| beta_l(j) * zl(j - 1, i)).sum::<f64>();
        terms += (k2 - k1) as u64;
        if has_left {
            x += c_l * zr(k1, i);
            terms += 1;
        }
        if has_right {
            x += c_r * zl(k2, i);
            terms += 1;
        }
        out.push((i, x));
    }
    Ok((out, terms))
}

/// Local segment system with unit rows at fixed ends, prefactored.
#[derive(Debug, Clone)]
struct LocalSystem {
    start: usize,
    end: usize,
    first_fixed: bool,
    last_fixed: bool,
    factor: ThomasFactor,
}

impl LocalSystem {
    fn diagonals(a: &TridiagMatrix, start: usize, end: usize, first_fixed: bool, last_fixed: bool) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut sub = a.sub()[start..end].to_vec();
        let mut diag = a.diag()[start..=end].to_vec();
        let mut sup = a.sup()[start..end].to_vec();
        let m = diag.len();
        if first_fixed {
            diag[0] = 1.0;
            if m > 1 {
                sup[0] = 0.0;
            }
        }
        if last_fixed {
            diag[m - 1] = 1.0;
            if m > 1 {
                sub[m - 2] = 0.0;
            }
        }
        (sub, diag, sup)
    }

    fn new(a: &TridiagMatrix, part: &Partition, k: usize) -> Result<Self> {
        let (start, end) = part.segment(k);
        let first_fixed = part.is_boundary(start);
        let last_fixed = part.is_boundary(end);
        let (sub, diag, sup) = Self::diagonals(a, start, end, first_fixed, last_fixed);
        let factor = ThomasFactor::from_diagonals(&sub, &diag, &sup)?;
        Ok(Self { start, end, first_fixed, last_fixed, factor })
    }

    /// Writes the segment's solution into `x[start..=end]`, given the
    /// right-hand side and the boundary values.
    fn solve_into(&self, f: &[f64], first: f64, last: f64, x: &mut [f64]) {
        self.solve_segment(f, first, last, &mut x[self.start..=self.end]);
    }

    fn solve_segment(&self, f: &[f64], first: f64, last: f64, seg: &mut [f64]) {
        seg.copy_from_slice(&f[self.start..=self.end]);
        if self.first_fixed {
            seg[0] = first;
        }
        if self.last_fixed {
            *seg.last_mut().unwrap() = last;
        }
        self.factor.solve_in_place(seg);
    }

    fn len(&self) -> usize {
        self.end - self.start + 1
    }
}

/// Solves local segment `k` (rows `segment(k)`, endpoints shared with the
/// neighbouring segments) given its right-hand side block and the values of
/// the boundaries that bracket it. An end that is also an end of the whole
/// system keeps its original matrix row and the corresponding value is
/// ignored.
pub fn solve_local(
    a: &TridiagMatrix,
    part: &Partition,
    k: usize,
    f_block: &[f64],
    first_val: f64,
    last_val: f64,
) -> Result<Vec<f64>> {
    let (start, end) = part.segment(k);
    let m = end - start + 1;
    if f_block.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: f_block.len() });
    }
    let first_fixed = part.is_boundary(start);
    let last_fixed = part.is_boundary(end);
    let mut rhs = f_block.to_vec();
    if first_fixed {
        rhs[0] = first_val;
    }
    if last_fixed {
        rhs[m - 1] = last_val;
    }
    if m == 1 {
        return Ok(rhs);
    }
    let (sub, diag, sup) = LocalSystem::diagonals(a, start, end, first_fixed, last_fixed);
    thomas_solve(&TridiagMatrix::new(sub, diag, sup)?, &rhs)
}

/// Batched dichotomy solver for one fixed matrix.
///
/// Construction runs the preliminary phase (inverse rows, homogeneous
/// solutions, local factorizations); every later solve only forms block
/// sums, resolves boundaries level by level and runs the local sweeps.
#[derive(Debug, Clone)]
pub struct DichotomySolver {
    matrix: TridiagMatrix,
    partition: Partition,
    prelim: PreliminaryData,
    levels: LevelSets,
    schedule: Schedule,
    locals: Vec<LocalSystem>,
}

impl DichotomySolver {
    pub fn new(matrix: TridiagMatrix, partition: Partition) -> Result<Self> {
        Self::with_route(matrix, partition, GreenRoute::Auto)
    }

    pub fn with_route(matrix: TridiagMatrix, partition: Partition, route: GreenRoute) -> Result<Self> {
        Self::build(matrix, partition, route, false)
    }

    /// Full constructor; `parallel` spreads the preliminary phase over the
    /// current rayon pool.
    pub fn build(
        matrix: TridiagMatrix,
        partition: Partition,
        route: GreenRoute,
        parallel: bool,
    ) -> Result<Self> {
        let prelim = compute_preliminary_with(&matrix, &partition, route, parallel)?;
        let levels = build_level_sets(partition.len());
        let schedule = Schedule::new(&levels);
        let locals = (0..=partition.len())
            .map(|k| LocalSystem::new(&matrix, &partition, k))
            .collect::<Result<_>>()?;
        Ok(Self { matrix, partition, prelim, levels, schedule, locals })
    }

    pub fn matrix(&self) -> &TridiagMatrix {
        &self.matrix
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn preliminary(&self) -> &PreliminaryData {
        &self.prelim
    }

    pub fn level_sets(&self) -> &LevelSets {
        &self.levels
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn check_rhs(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), got: f.len() });
        }
        Ok(())
    }

    /// Number of local segments (`p + 1`).
    pub fn segments(&self) -> usize {
        self.locals.len()
    }

    pub fn block_betas(&self, f: &[f64], k: usize) -> (f64, f64) {
        block_betas(f, &self.partition, &self.prelim, k)
    }

    pub fn betas(&self, f: &[f64]) -> BetaSet {
        compute_betas(f, &self.partition, &self.prelim)
    }

    pub fn beta_terms(&self) -> u64 {
        beta_terms(&self.partition)
    }

    /// Boundary values by the level schedule. Returns values indexed by
    /// boundary (0-based) and the combination term count.
    pub fn solve_boundaries(&self, betas: &BetaSet) -> Result<(Vec<f64>, u64)> {
        let mut known = vec![0.0; self.prelim.len()];
        let mut terms = 0;
        for level in &self.schedule.levels {
            for task in level {
                let (vals, t) = solve_task(&self.prelim, betas, &known, task)?;
                terms += t;
                for (pos, v) in vals {
                    known[pos - 1] = v;
                }
            }
        }
        Ok((known, terms))
    }

    /// Reference path: every boundary from the full double sum over all
    /// blocks, `p (p + 1)` terms in total.
    pub fn full_sum_boundaries(&self, betas: &BetaSet) -> (Vec<f64>, u64) {
        let p = self.prelim.len();
        let mut terms = 0u64;
        let vals = (0..p)
            .map(|i| {
                let mut x = (0..=i).map(|j| betas.right[j] * self.prelim.z_right(j, i)).sum::<f64>();
                x += (i + 1..=p).map(|j| betas.left[j] * self.prelim.z_left(j - 1, i)).sum::<f64>();
                terms += (p + 1) as u64;
                x
            })
            .collect();
        (vals, terms)
    }

    /// Evaluates the single-correction segment formula (a known right end
    /// contributes `X Z^L`, a known left end `X Z^R` minus one inverse-row
    /// term) using exact values at the known ends. Returns the largest
    /// deviation from `exact` over boundaries past the first level.
    pub fn literal_divergence(&self, betas: &BetaSet, f: &[f64], exact: &[f64]) -> f64 {
        let p = self.prelim.len();
        let pre = &self.prelim;
        let mut worst: f64 = 0.0;
        for level in self.schedule.levels.iter().skip(1) {
            for task in level {
                let (k1, k2) = (task.left, task.right);
                for &i in &task.members {
                    let mut x = (k1 + 1..=i).map(|j| betas.right[j - 1] * pre.z_right(j - 1, i - 1)).sum::<f64>();
                    x += (i + 1..k2).map(|j| betas.left[j - 1] * pre.z_left(j - 2, i - 1)).sum::<f64>();
                    if k1 >= 1 {
                        let known = &pre.boundaries[k1 - 1];
                        x += exact[k1 - 1] * pre.z_right(k1 - 1, i - 1);
                        if k1 < i {
                            let next = &pre.boundaries[k1];
                            x -= next.g_at(known.row) * f[known.row] * pre.z_right(k1, i - 1);
                        }
                    }
                    if k2 <= p {
                        x += exact[k2 - 1] * pre.z_left(k2 - 1, i - 1);
                    }
                    worst = worst.max((x - exact[i - 1]).abs());
                }
            }
        }
        worst
    }

    /// Fills the full solution from boundary values by independent local sweeps.
    pub fn solve_locals(&self, f: &[f64], boundary_values: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.order()];
        for k in 0..self.locals.len() {
            self.solve_local_into(k, f, boundary_values, &mut x);
        }
        x
    }

    /// Local segment `k` into `x`.
    pub fn solve_local_into(&self, k: usize, f: &[f64], boundary_values: &[f64], x: &mut [f64]) {
        let first = if k > 0 { boundary_values[k - 1] } else { 0.0 };
        let last = boundary_values.get(k).copied().unwrap_or(0.0);
        self.locals[k].solve_into(f, first, last, x);
    }

    /// Local segment `k` as a standalone vector covering `local_span(k)`.
    pub fn solve_local_segment(&self, k: usize, f: &[f64], boundary_values: &[f64]) -> Vec<f64> {
        let l = &self.locals[k];
        let mut seg = vec![0.0; l.len()];
        let first = if k > 0 { boundary_values[k - 1] } else { 0.0 };
        let last = boundary_values.get(k).copied().unwrap_or(0.0);
        l.solve_segment(f, first, last, &mut seg);
        seg
    }

    /// Row span `[start, end]` of local segment `k`.
    pub fn local_span(&self, k: usize) -> (usize, usize) {
        (self.locals[k].start, self.locals[k].end)
    }

    pub fn local_flops(&self) -> u64 {
        self.locals.iter().map(|l| l.len() as u64 * SWEEP_FLOPS_PER_ROW).sum()
    }

    pub fn solve_with_stats(&self, f: &[f64]) -> Result<(Vec<f64>, SolveStats)> {
        self.check_rhs(f)?;
        let betas = self.betas(f);
        let (bv, combine_terms) = self.solve_boundaries(&betas)?;
        let x = self.solve_locals(f, &bv);
        Ok((x, SolveStats { combine_terms, beta_terms: self.beta_terms(), local_flops: self.local_flops() }))
    }

    pub fn solve(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.solve_with_stats(f).map(|(x, _)| x)
    }

    pub fn solve_batch(&self, series: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        series.iter().map(|f| self.solve(f)).collect()
    }
}

/// Boundary values for one right-hand side with freshly built schedule.
pub fn solve_boundaries(prelim: &PreliminaryData, betas: &BetaSet) -> Result<Vec<f64>> {
    let schedule = Schedule::new(&build_level_sets(prelim.len()));
    let mut known = vec![0.0; prelim.len()];
    for level in &schedule.levels {
        for task in level {
            for (pos, v) in solve_task(prelim, betas, &known, task)?.0 {
                known[pos - 1] = v;
            }
        }
    }
    Ok(known)
}

/// Solves a series of right-hand sides sharing one matrix; the preliminary
/// phase runs once.
pub fn solve_batch(a: &TridiagMatrix, part: &Partition, series: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let solver = DichotomySolver::new(a.clone(), part.clone())?;
    solver.solve_batch(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tridiag::{dense_oracle_solve, random_dominant, random_vector, DenseLu};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn max_rel(x: &[f64], r: &[f64]) -> f64 {
        let s = r.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        x.iter().zip(r).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / s
    }

    fn order7() -> (TridiagMatrix, Partition) {
        (TridiagMatrix::toeplitz(7, -1.0, 2.0, -1.0).unwrap(), Partition::parse("2,4,6", 7).unwrap())
    }

    #[test]
    fn order7_boundaries_by_levels() {
        let (a, part) = order7();
        let s = DichotomySolver::new(a, part).unwrap();
        assert_eq!(s.schedule().levels[0], vec![SegmentTask { left: 0, right: 4, members: vec![2] }]);
        assert_eq!(s.schedule().levels[0][0].members, vec![2]);
        assert_eq!(s.schedule().levels[1].iter().flat_map(|t| t.members.clone()).collect::<Vec<_>>(), vec![1, 3]);
        let betas = s.betas(&[1.0; 7]);
        let (bv, _) = s.solve_boundaries(&betas).unwrap();
        for (v, want) in bv.iter().zip([6.0, 8.0, 6.0]) {
            assert!((v - want).abs() < 1e-12, "{bv:?}");
        }
        let (full, terms) = s.full_sum_boundaries(&betas);
        assert!((full[1] - 8.0).abs() < 1e-12);
        assert_eq!(terms, 12);
        let x = s.solve(&[1.0; 7]).unwrap();
        let want = [3.5, 6.0, 7.5, 8.0, 7.5, 6.0, 3.5];
        assert!(max_rel(&x, &want) < 1e-14, "{x:?}");
    }

    #[test]
    fn local_block_example() {
        let (a, part) = order7();
        let x = solve_local(&a, &part, 2, &[1.0, 1.0, 1.0], 8.0, 6.0).unwrap();
        assert!((x[1] - 7.5).abs() < 1e-14);
        assert_eq!((x[0], x[2]), (8.0, 6.0));
        assert_eq!(solve_local(&a, &part, 2, &[0.0; 3], 0.0, 0.0).unwrap(), vec![0.0; 3]);
        let p2 = Partition::parse("2,3", 7).unwrap();
        assert_eq!(solve_local(&a, &p2, 1, &[5.0, 5.0], 1.5, -2.0).unwrap(), vec![1.5, -2.0]);
    }

    #[test]
    fn direct_component_and_betas() {
        let g = [0.5, 1.0, 0.5];
        assert_eq!(solve_component_direct(&g, &[1.0, 0.0, 0.0]), 0.5);
        assert_eq!(solve_component_direct(&g, &[0.0; 3]), 0.0);
        let (a, part) = order7();
        let s = DichotomySolver::new(a, part).unwrap();
        let b = s.betas(&[0.0; 7]);
        assert!(b.left.iter().chain(&b.right).all(|&v| v == 0.0));
        // unit at the start of block 2 (row 3, 0-based)
        let mut f = [0.0; 7];
        f[3] = 1.0;
        let b = s.betas(&f);
        let pre = s.preliminary();
        assert_eq!(b.left[2], pre.boundaries[1].g_at(3));
        assert_eq!(b.right[2], pre.boundaries[2].g_at(3));
    }

    #[test]
    fn single_boundary_equals_sequential_sweep() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        let a = random_dominant(41, &mut rng);
        let f = random_vector(41, &mut rng);
        let s = DichotomySolver::new(a.clone(), Partition::new(41, vec![20]).unwrap()).unwrap();
        let x = s.solve(&f).unwrap();
        assert!(max_rel(&x, &thomas_solve(&a, &f).unwrap()) < 1e-13);
        assert_eq!(s.level_sets().depth(), 1);
    }

    #[test]
    fn unit_series_rebuilds_the_inverse() {
        let a = TridiagMatrix::toeplitz(40, -1.0, 2.5, -1.2).unwrap();
        let s = DichotomySolver::new(a.clone(), Partition::uniform(40, 5).unwrap()).unwrap();
        let units: Vec<Vec<f64>> = (0..40).map(|k| (0..40).map(|i| f64::from(u8::from(i == k))).collect()).collect();
        let cols = s.solve_batch(&units).unwrap();
        let inv = DenseLu::factor(&a.to_dense()).unwrap().inverse();
        for (k, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                assert!((v - inv[(i, k)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn batch_of_hundred_on_order_128() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(128);
        let a = TridiagMatrix::toeplitz(128, -1.0, 2.0, -1.0).unwrap();
        let series: Vec<Vec<f64>> = (0..100).map(|_| random_vector(128, &mut rng)).collect();
        let xs = solve_batch(&a, &Partition::uniform(128, 7).unwrap(), &series).unwrap();
        for (f, x) in series.iter().zip(&xs) {
            assert!(max_rel(x, &dense_oracle_solve(&a, f).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn level_members_are_order_independent() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(6);
        let a = random_dominant(300, &mut rng);
        let f = random_vector(300, &mut rng);
        let s = DichotomySolver::new(a, Partition::uniform(300, 31).unwrap()).unwrap();
        let betas = s.betas(&f);
        let (forward, _) = s.solve_boundaries(&betas).unwrap();
        let mut known = vec![0.0; 31];
        for level in &s.schedule().levels {
            let mut tasks: Vec<_> = level.iter().collect();
            tasks.reverse();
            let mut out = Vec::new();
            for t in tasks {
                let mut t = t.clone();
                t.members.reverse();
                out.extend(solve_task(s.preliminary(), &betas, &known, &t).unwrap().0);
            }
            for (pos, v) in out {
                known[pos - 1] = v;
            }
        }
        assert_eq!(forward, known);
        assert_eq!(forward, solve_boundaries(s.preliminary(), &betas).unwrap());
    }

    #[test]
    fn combination_terms_grow_like_p_log_p() {
        let a = TridiagMatrix::toeplitz(4096, -1.0, 3.0, -1.0).unwrap();
        let f = vec![1.0; 4096];
        for p in [15usize, 63, 255] {
            let s = DichotomySolver::new(a.clone(), Partition::uniform(4096, p).unwrap()).unwrap();
            let (_, stats) = s.solve_with_stats(&f).unwrap();
            let log = (usize::BITS - p.leading_zeros()) as u64;
            assert!(stats.combine_terms <= 8 * p as u64 * log, "p={p}: {}", stats.combine_terms);
            let (_, full) = s.full_sum_boundaries(&s.betas(&f));
            assert_eq!(full, (p * (p + 1)) as u64);
        }
    }

    #[test]
    fn literal_segment_formula_is_reported() {
        let (a, part) = order7();
        let s = DichotomySolver::new(a, part).unwrap();
        let f = [1.0; 7];
        let d = s.literal_divergence(&s.betas(&f), &f, &[6.0, 8.0, 6.0]);
        println!("order 7: {d:e}");
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        let a = random_dominant(200, &mut rng);
        let f = random_vector(200, &mut rng);
        let x = dense_oracle_solve(&a, &f).unwrap();
        let s = DichotomySolver::new(a, Partition::uniform(200, 15).unwrap()).unwrap();
        let exact: Vec<f64> = s.partition().boundaries().iter().map(|&r| x[r]).collect();
        let d = s.literal_divergence(&s.betas(&f), &f, &exact);
        println!("random order 200: {d:e}");
        assert!(d > 1e-6);
    }

    #[test]
    fn rejects_wrong_lengths() {
        let (a, part) = order7();
        let s = DichotomySolver::new(a, part).unwrap();
        assert_eq!(s.solve(&[1.0; 6]), Err(Error::DimensionMismatch { expected: 7, got: 6 }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_dense_oracle(n in 4usize..200, p in 1usize..12, seed in any::<u64>()) {
            let p = p.min(n / 2 - 1).max(1);
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let a = random_dominant(n, &mut rng);
            let f = random_vector(n, &mut rng);
            let s = DichotomySolver::new(a.clone(), Partition::uniform(n, p).unwrap()).unwrap();
            let x = s.solve(&f).unwrap();
            prop_assert!(max_rel(&x, &dense_oracle_solve(&a, &f).unwrap()) < 1e-9);
            prop_assert!(s.preliminary().max_z_norm() <= 1.0 + 1e-14);
        }

        #[test]
        fn preliminary_data_ignores_the_rhs(seed in any::<u64>()) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let a = random_dominant(60, &mut rng);
            let part = Partition::uniform(60, 6).unwrap();
            let s1 = DichotomySolver::new(a.clone(), part.clone()).unwrap();
            s1.solve(&random_vector(60, &mut rng)).unwrap();
            let s2 = DichotomySolver::new(a, part).unwrap();
            prop_assert_eq!(s1.preliminary(), s2.preliminary());
        }
    }
}
