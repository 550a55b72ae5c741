//! Integer partitions: statistics, strip predicates and bounded enumeration.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("cell ({0},{1}) lies outside the diagram")]
    CellOutside(usize, usize),
    #[error("enumeration needs a bounded weight, or both a part bound and a length bound")]
    Unbounded,
}

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<usize>);

/// Summary statistics of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub weight: usize,
    pub length: usize,
    /// `multiplicities[i]` is the number of parts equal to `i` (index 0 unused).
    pub multiplicities: Vec<usize>,
    pub n_lambda: usize,
    pub n2_lambda: usize,
    pub o_lambda: usize,
    pub gaps: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(PartitionError::NotDecreasing(parts))
        }
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The column partition `(1^r)`.
    pub fn column(r: usize) -> Self {
        Partition(vec![1; r])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let mut cols = vec![0usize; self.largest()];
        for &p in &self.0 {
            for c in cols.iter_mut().take(p) {
                *c += 1;
            }
        }
        Partition(cols)
    }

    /// `m_i` for `i` from 0 to `λ_1`; `m_0` is left at zero.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.largest() + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `sum_i C(λ_i, 2)`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().map(|&p| p * p.saturating_sub(1) / 2).sum()
    }

    /// `sum_i (i - 1) λ_i`, the statistic usually written `n(λ)` in Macdonald's book.
    pub fn n_macdonald(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// `sum_i λ_i^2`.
    pub fn n2(&self) -> usize {
        self.0.iter().map(|&p| p * p).sum()
    }

    /// Number of odd parts.
    pub fn odd_parts(&self) -> usize {
        self.0.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// `λ_i - λ_{i+1}` for `i = 1..=l(λ)`.
    pub fn gaps(&self) -> Vec<usize> {
        (1..=self.len()).map(|i| self.part(i) - self.part(i + 1)).collect()
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            weight: self.weight(),
            length: self.len(),
            multiplicities: self.multiplicities(),
            n_lambda: self.n_stat(),
            n2_lambda: self.n2(),
            o_lambda: self.odd_parts(),
            gaps: self.gaps(),
        }
    }

    /// Arm and leg of the 1-based cell `(row, col)`.
    pub fn arm_leg(&self, row: usize, col: usize) -> Result<(usize, usize), PartitionError> {
        if row == 0 || col == 0 || col > self.part(row) {
            return Err(PartitionError::CellOutside(row, col));
        }
        let arm = self.part(row) - col;
        let col_len = self.0.iter().take_while(|&&p| p >= col).count();
        Ok((arm, col_len - row))
    }

    /// `μ ⊆ λ` as diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// Every `μ` such that `λ/μ` is a horizontal strip, `λ` included.
    pub fn horizontal_strips_removed(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        self.strip_rec(0, &mut cur, &mut out);
        out
    }

    fn strip_rec(&self, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == self.len() {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        let hi = self.0[i];
        let lo = self.part(i + 2);
        for p in (lo..=hi).rev() {
            cur.push(p);
            self.strip_rec(i + 1, cur, out);
            cur.pop();
        }
    }

    /// Every `λ ⊇ μ` with `λ/μ` a horizontal `m`-strip and `λ_1 <= max_part`.
    pub fn horizontal_strips_added(&self, m: usize, max_part: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let rows = self.len() + 1;
        let mut cur = Vec::with_capacity(rows);
        self.add_rec(0, rows, m, max_part, &mut cur, &mut out);
        out
    }

    fn add_rec(&self, i: usize, rows: usize, left: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rows {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        let base = self.part(i + 1);
        let cap = if i == 0 { max_part } else { self.part(i) };
        if base > cap {
            return;
        }
        for add in 0..=left.min(cap - base) {
            cur.push(base + add);
            self.add_rec(i + 1, rows, left - add, max_part, cur, out);
            cur.pop();
        }
    }
}

/// `λ/μ` is a vertical `m`-strip: `μ ⊆ λ`, `|λ| - |μ| = m`, at most one cell per row.
pub fn is_vertical_strip(lambda: &Partition, mu: &Partition, m: usize) -> bool {
    lambda.contains(mu)
        && lambda.weight() == mu.weight() + m
        && (1..=lambda.len()).all(|i| lambda.part(i) - mu.part(i) <= 1)
}

/// `λ/μ` is a horizontal `m`-strip: `μ ⊆ λ`, `|λ/μ| = m`, and `λ_i >= μ_i >= λ_{i+1}`.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition, m: usize) -> bool {
    lambda.contains(mu)
        && lambda.weight() == mu.weight() + m
        && (1..=lambda.len()).all(|i| mu.part(i) >= lambda.part(i + 1))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// Bounds for [`enumerate`]. Unset fields are unbounded.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bounds {
    pub max_part: Option<usize>,
    pub max_length: Option<usize>,
    pub weight: Option<usize>,
    pub max_weight: Option<usize>,
}

/// All partitions meeting `bounds`, by increasing weight and, within a
/// weight, in decreasing lexicographic order of the parts.
pub fn enumerate(bounds: Bounds) -> Result<Vec<Partition>, PartitionError> {
    let top = match (bounds.weight, bounds.max_weight, bounds.max_part, bounds.max_length) {
        (Some(w), mw, _, _) => {
            if mw.is_some_and(|m| w > m) {
                return Ok(Vec::new());
            }
            w
        }
        (None, Some(mw), _, _) => mw,
        (None, None, Some(p), Some(l)) => p * l,
        _ => return Err(PartitionError::Unbounded),
    };
    let lo = bounds.weight.unwrap_or(0);
    let max_part = bounds.max_part.unwrap_or(usize::MAX);
    let max_length = bounds.max_length.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for w in lo..=top {
        let mut cur = Vec::new();
        fixed_weight(w, max_part.min(w), max_length, &mut cur, &mut out);
    }
    Ok(out)
}

fn fixed_weight(left: usize, max_part: usize, max_length: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if left == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if max_length == 0 {
        return;
    }
    // the remaining rows can hold at most max_part * max_length cells
    if max_part.saturating_mul(max_length) < left {
        return;
    }
    for p in (1..=max_part.min(left)).rev() {
        cur.push(p);
        fixed_weight(left - p, p, max_length - 1, cur, out);
        cur.pop();
    }
}

/// Partitions with at most `max_length` parts and
/// `first(λ_1) + sum_{i >= 2} rest(λ_i) < limit`.
///
/// `first` must be nondecreasing and unbounded, `rest` increasing and positive.
pub fn enumerate_by_cost<F, G>(max_length: usize, first: F, rest: G, limit: i64) -> Vec<Partition>
where
    F: Fn(usize) -> i64,
    G: Fn(usize) -> i64,
{
    if limit <= 0 {
        return Vec::new();
    }
    let mut out = vec![Partition::empty()];
    if max_length == 0 {
        return out;
    }
    let mut cur = Vec::new();
    let mut top = 1;
    while first(top) < limit {
        cur.push(top);
        cost_rec(max_length - 1, top, limit - first(top), &rest, &mut cur, &mut out);
        cur.pop();
        top += 1;
    }
    out
}

fn cost_rec<G: Fn(usize) -> i64>(rows: usize, max_part: usize, budget: i64, rest: &G, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    out.push(Partition(cur.clone()));
    if rows == 0 {
        return;
    }
    for p in 1..=max_part {
        let c = rest(p);
        if c >= budget {
            break;
        }
        cur.push(p);
        cost_rec(rows - 1, p, budget - c, rest, cur, out);
        cur.pop();
    }
}
