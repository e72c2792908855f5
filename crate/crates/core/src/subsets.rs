//! Canonical ordering of k-subsets.
//!
//! Every exterior-power basis in the crate is indexed by a [`SubsetIndex`]:
//! the k-subsets of `{1..n}` containing 1 come first, followed by those that
//! do not, each half in colexicographic order. With this layout the block
//! `[[c1 E, C], [0, E]]` form of a wedge power is literal in the matrix.

use crate::arith::binomial;
use crate::error::check_range;
use crate::Result;

/// All k-subsets of `ground` (ascending) in colex order.
pub fn colex_subsets(ground: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = ground.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n as i64, k as i64) as usize);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| ground[i]).collect());
        // colex successor: bump the lowest position that can move
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            let limit = if pos + 1 < k { idx[pos + 1] } else { n };
            if idx[pos] + 1 < limit {
                idx[pos] += 1;
                for (t, slot) in idx.iter_mut().enumerate().take(pos) {
                    *slot = t;
                }
                break;
            }
            pos += 1;
        }
    }
}

/// Colex rank of a strictly increasing list of 0-based positions.
pub fn colex_rank(positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as i64, i as i64 + 1) as usize)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetIndex {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
}

impl SubsetIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_range(k, 0, n)?;
        let rest: Vec<usize> = (2..=n).collect();
        let mut subsets: Vec<Vec<usize>> = if k == 0 {
            Vec::new()
        } else {
            colex_subsets(&rest, k - 1)
                .into_iter()
                .map(|s| std::iter::once(1).chain(s).collect())
                .collect()
        };
        subsets.extend(colex_subsets(&rest, k));
        Ok(SubsetIndex { n, k, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Number of leading subsets that contain 1, `C(n-1, k-1)`.
    pub fn split(&self) -> usize {
        binomial(self.n as i64 - 1, self.k as i64 - 1) as usize
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.subsets.iter().map(Vec::as_slice)
    }

    /// 0-based row/column positions (`element - 1`) of subset `i`.
    pub fn positions(&self, i: usize) -> Vec<usize> {
        self.subsets[i].iter().map(|&e| e - 1).collect()
    }

    /// Position of an ascending 1-based subset in this order.
    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        if subset.len() != self.k
            || subset.windows(2).any(|w| w[0] >= w[1])
            || subset.iter().any(|&e| e == 0 || e > self.n)
        {
            return None;
        }
        if subset.first() == Some(&1) {
            let shifted: Vec<usize> = subset[1..].iter().map(|&e| e - 2).collect();
            Some(colex_rank(&shifted))
        } else {
            let shifted: Vec<usize> = subset.iter().map(|&e| e - 2).collect();
            Some(self.split() + colex_rank(&shifted))
        }
    }
}
