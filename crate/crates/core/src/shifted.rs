//! Strict partitions, shifted diagrams, the column tableau and its box
//! contents, and shifted standard tableau counting.
//!
//! Row `i` of the shifted diagram of a strict partition occupies columns
//! `i .. i + λ_i - 1` (1-indexed). The column tableau numbers the boxes
//! column by column, left to right, downwards in every column; the content
//! of a box is its column index minus its row index.

use crate::field::FieldElement;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive")]
    NonPositivePart,
    #[error("parts must be strictly decreasing")]
    NotStrict,
    #[error("malformed partition string: {0}")]
    Parse(String),
}

/// A partition with pairwise distinct (strictly decreasing) positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::NonPositivePart);
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(PartitionError::NotStrict);
        }
        Ok(StrictPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Containment of shifted diagrams: `self ⊆ other`.
    pub fn contains_in(&self, other: &StrictPartition) -> bool {
        self.len() <= other.len()
            && self
                .parts
                .iter()
                .zip(other.parts.iter())
                .all(|(a, b)| a <= b)
    }

    /// All strict partitions of `n - 1` obtained by decreasing one part,
    /// each with its restriction multiplicity: 1 when the smaller diagram
    /// has an odd number of parts while this one has an even number,
    /// 2 otherwise.
    pub fn removals(&self) -> Vec<(StrictPartition, u32)> {
        let mut out = Vec::new();
        for k in 0..self.parts.len() {
            let mut parts = self.parts.clone();
            parts[k] -= 1;
            if parts[k] == 0 {
                parts.remove(k);
            }
            if let Ok(mu) = StrictPartition::new(parts) {
                let m = if mu.len() % 2 == 1 && self.len() % 2 == 0 {
                    1
                } else {
                    2
                };
                out.push((mu, m));
            }
        }
        out
    }

    /// Shifted standard tableau count by backtracking over all fillings
    /// that increase along rows and down columns.
    pub fn count_standard(&self) -> u64 {
        let cells = self.cells();
        let n = cells.len();
        // cells are produced row by row; dependencies: left neighbour and
        // the cell straight above.
        let mut count = 0u64;
        let mut value_of = vec![0usize; n]; // cell index -> assigned number
        fn occupied(cells: &[(u32, u32)], value_of: &[usize], upto: usize, rc: (u32, u32)) -> Option<usize> {
            (0..upto).find(|&i| cells[i] == rc).map(|i| value_of[i])
        }
        fn rec(
            cells: &[(u32, u32)],
            value_of: &mut Vec<usize>,
            used: &mut Vec<bool>,
            pos: usize,
            count: &mut u64,
        ) {
            let n = cells.len();
            if pos == n {
                *count += 1;
                return;
            }
            let (r, c) = cells[pos];
            for v in 1..=n {
                if used[v] {
                    continue;
                }
                // left/above neighbours appear earlier in row-major order,
                // so both are already assigned whenever they exist.
                let left = occupied(cells, value_of, pos, (r, c - 1));
                let above = occupied(cells, value_of, pos, (r - 1, c));
                if left.map_or(false, |lv| lv > v) || above.map_or(false, |av| av > v) {
                    continue;
                }
                used[v] = true;
                value_of[pos] = v;
                rec(cells, value_of, used, pos + 1, count);
                used[v] = false;
            }
        }
        let mut used = vec![false; n + 1];
        rec(&cells, &mut value_of, &mut used, 0, &mut count);
        count
    }

    /// The boxes in row-major order as `(row, column)` pairs, 1-indexed.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &p) in self.parts.iter().enumerate() {
            let r = (i + 1) as u32;
            for c in r..r + p {
                out.push((r, c));
            }
        }
        out
    }
}

impl FromStr for StrictPartition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<u32>, _> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect();
        let parts = parts.map_err(|_| PartitionError::Parse(s.to_string()))?;
        StrictPartition::new(parts)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// The shifted column tableau of a strict partition: box positions,
/// contents `c_i = column - row` and row indices, indexed by the box
/// numbers `1..n` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnTableau {
    pub shape: StrictPartition,
    /// `(row, column)` of box `i+1`.
    pub cell_of: Vec<(u32, u32)>,
    /// Content `c_{i+1} = column - row`.
    pub content: Vec<i64>,
    /// Row `r_{i+1}`.
    pub row_of: Vec<u32>,
}

/// Fill the shifted diagram by columns, left to right, downwards in every
/// column.
pub fn column_tableau(shape: &StrictPartition) -> ColumnTableau {
    let ell = shape.len() as u32;
    let max_col = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u32 + p)
        .max()
        .unwrap_or(0);
    let mut cell_of = Vec::with_capacity(shape.n());
    for col in 1..=max_col {
        for row in 1..=ell {
            // row occupies columns row .. row + λ_row - 1
            let lo = row;
            let hi = row + shape.parts()[(row - 1) as usize] - 1;
            if col >= lo && col <= hi {
                cell_of.push((row, col));
            }
        }
    }
    let content: Vec<i64> = cell_of.iter().map(|&(r, c)| c as i64 - r as i64).collect();
    let row_of: Vec<u32> = cell_of.iter().map(|&(r, _)| r).collect();
    ColumnTableau {
        shape: shape.clone(),
        cell_of,
        content,
        row_of,
    }
}

/// The eigenvalues `z_i = sqrt_int(c_i(c_i+1))` attached to the boxes of the
/// column tableau.
pub fn z_values(shape: &StrictPartition) -> Vec<FieldElement> {
    column_tableau(shape)
        .content
        .iter()
        .map(|&c| FieldElement::sqrt_int(c * (c + 1)))
        .collect()
}

/// All strict partitions of `n` with at most `max_len` parts, in decreasing
/// lexicographic order.
pub fn enumerate_strict(n: usize, max_len: usize) -> Vec<StrictPartition> {
    fn rec(remaining: usize, max_part: usize, slots: usize, acc: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        if remaining == 0 {
            out.push(StrictPartition::new(acc.clone()).unwrap());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            acc.push(p as u32);
            rec(remaining - p, p - 1, slots - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    if n > 0 {
        rec(n, n, max_len, &mut acc, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_invalid() {
        assert_eq!(StrictPartition::new(vec![2, 2]), Err(PartitionError::NotStrict));
        assert_eq!(StrictPartition::new(vec![3, 0]), Err(PartitionError::NonPositivePart));
        assert!("2,2".parse::<StrictPartition>().is_err());
        assert_eq!("4,3,1".parse::<StrictPartition>().unwrap(), sp(&[4, 3, 1]));
    }

    #[test]
    fn column_tableau_contents() {
        let t = column_tableau(&sp(&[4, 3, 1]));
        assert_eq!(t.content, vec![0, 1, 0, 2, 1, 0, 3, 2]);
        assert_eq!(t.row_of, vec![1, 1, 2, 1, 2, 3, 1, 2]);
        // single row: c_s = s-1
        let t = column_tableau(&sp(&[5]));
        assert_eq!(t.content, vec![0, 1, 2, 3, 4]);
        let t = column_tableau(&sp(&[2, 1]));
        assert_eq!(t.content, vec![0, 1, 0]);
        assert_eq!(t.cell_of, vec![(1, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn contents_vanish_exactly_at_row_starts() {
        for n in 1..=8 {
            for lam in enumerate_strict(n, n) {
                let t = column_tableau(&lam);
                for i in 0..t.content.len() {
                    let (r, c) = t.cell_of[i];
                    assert!(t.content[i] >= 0);
                    assert_eq!(t.content[i] == 0, c == r, "{lam} box {}", i + 1);
                    // the box straight above has content c_i + 1
                    if r > 1 {
                        if let Some(j) = t.cell_of.iter().position(|&rc| rc == (r - 1, c)) {
                            assert_eq!(t.content[j], t.content[i] + 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn z_value_examples() {
        let z = z_values(&sp(&[4, 3, 1]));
        let e: Vec<FieldElement> = [0, 2, 0, 6, 2, 0, 12, 6]
            .iter()
            .map(|&m| FieldElement::sqrt_int(m))
            .collect();
        assert_eq!(z, e);
        assert_eq!(z_values(&sp(&[2])), vec![FieldElement::zero(), FieldElement::sqrt_int(2)]);
        assert_eq!(
            z_values(&sp(&[3])),
            vec![FieldElement::zero(), FieldElement::sqrt_int(2), FieldElement::sqrt_int(6)]
        );
    }

    #[test]
    fn removals_with_multiplicities() {
        let r = sp(&[4, 3, 1]).removals();
        assert_eq!(r, vec![(sp(&[4, 2, 1]), 2), (sp(&[4, 3]), 2)]);
        assert_eq!(sp(&[2]).removals(), vec![(sp(&[1]), 2)]);
        assert_eq!(sp(&[2, 1]).removals(), vec![(sp(&[2]), 1)]);
    }

    #[test]
    fn containment() {
        assert!(sp(&[2, 1]).contains_in(&sp(&[3, 1])));
        assert!(!sp(&[2, 1]).contains_in(&sp(&[3])));
        assert!(sp(&[2]).contains_in(&sp(&[2])));
    }

    #[test]
    fn standard_counts() {
        assert_eq!(sp(&[4]).count_standard(), 1);
        assert_eq!(sp(&[2, 1]).count_standard(), 1);
        assert_eq!(sp(&[3, 1]).count_standard(), 2);
        assert_eq!(sp(&[3, 2]).count_standard(), 2);
        assert_eq!(sp(&[4, 1]).count_standard(), 3);
        assert_eq!(sp(&[3, 2, 1]).count_standard(), 2);
    }

    #[test]
    fn counts_match_linear_extension_enumeration() {
        // Independent oracle: count linear extensions of the cell poset
        // directly over all permutations of the cells.
        fn brute(shape: &StrictPartition) -> u64 {
            let cells = shape.cells();
            let n = cells.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut count = 0;
            permute(&mut perm, 0, &mut |p| {
                // p[i] = position in filling order of cell i; number of cell i
                // is its rank. constraint: for neighbouring cells the number
                // increases rightwards and downwards.
                let ok = (0..n).all(|i| {
                    let (r, c) = cells[i];
                    let right = cells.iter().position(|&rc| rc == (r, c + 1));
                    let below = cells.iter().position(|&rc| rc == (r + 1, c));
                    right.map_or(true, |j| p[i] < p[j]) && below.map_or(true, |j| p[i] < p[j])
                });
                if ok {
                    count += 1;
                }
            });
            count
        }
        fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
            if k == p.len() {
                f(p);
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                permute(p, k + 1, f);
                p.swap(k, i);
            }
        }
        for n in 1..=6 {
            for lam in enumerate_strict(n, n) {
                assert_eq!(lam.count_standard(), brute(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn enumeration() {
        let got = enumerate_strict(3, 3);
        assert_eq!(got, vec![sp(&[3]), sp(&[2, 1])]);
        assert_eq!(enumerate_strict(4, 1), vec![sp(&[4])]);
        assert_eq!(
            enumerate_strict(6, 3),
            vec![sp(&[6]), sp(&[5, 1]), sp(&[4, 2]), sp(&[3, 2, 1])]
        );
    }
}
