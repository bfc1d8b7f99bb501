//! Cyclic index intervals and their extraction from member sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[k1, k2]` modulo the boundary length: `k1..=k2` when `k1 <= k2`,
/// otherwise `k1..n` followed by `0..=k2`. The full boundary is `[0, n - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicInterval {
    pub k1: usize,
    pub k2: usize,
}

impl CyclicInterval {
    pub const fn new(k1: usize, k2: usize) -> Self {
        CyclicInterval { k1, k2 }
    }

    pub fn contains(&self, k: usize) -> bool {
        if self.k1 <= self.k2 {
            self.k1 <= k && k <= self.k2
        } else {
            k >= self.k1 || k <= self.k2
        }
    }

    /// Number of indices covered on a boundary of length `n`.
    pub fn len(&self, n: usize) -> usize {
        if self.k1 <= self.k2 {
            self.k2 - self.k1 + 1
        } else {
            n - self.k1 + self.k2 + 1
        }
    }

    pub fn iter(&self, n: usize) -> impl Iterator<Item = usize> {
        let k1 = self.k1;
        (0..self.len(n)).map(move |off| (k1 + off) % n)
    }
}

impl fmt::Display for CyclicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.k1, self.k2)
    }
}

/// Interval spanned by the indices marked in `member`.
///
/// Returns `None` for an empty set, `[0, n-1]` for a full one, and an error
/// when the marked indices do not form a cyclic interval.
pub fn extract_interval(member: &[bool]) -> Result<Option<CyclicInterval>> {
    let members: Vec<usize> = member.iter().enumerate().filter(|(_, &m)| m).map(|(k, _)| k).collect();
    find_cyclic_interval(&members, member.len())
}

/// Interval spanned by the distinct indices `members` on a boundary of length
/// `n`, in time linear in `members.len()` plus a logarithmic term.
///
/// A non-member is located by halving: with `L` the members below the middle
/// of the current range and `R` the rest, either both halves are full (the
/// whole boundary is covered), both are deficient (then one of the four
/// indices adjacent to the two cut points is missing), or exactly one is
/// deficient and the search continues there. From the non-member, one pass
/// over the members yields the endpoints.
pub fn find_cyclic_interval(members: &[usize], n: usize) -> Result<Option<CyclicInterval>> {
    if members.is_empty() {
        return Ok(None);
    }
    if members.len() == n {
        return Ok(Some(CyclicInterval::new(0, n - 1)));
    }
    let gap = match find_non_member(members, n)? {
        Some(x) => x,
        None => return Ok(Some(CyclicInterval::new(0, n - 1))),
    };

    // Shift so that the gap is the last index; the members must then be a
    // contiguous run.
    let shift = |k: usize| (k + n - gap - 1) % n;
    let lo = members.iter().map(|&k| shift(k)).min().unwrap();
    let hi = members.iter().map(|&k| shift(k)).max().unwrap();
    if hi - lo + 1 != members.len() {
        return Err(Error::NotAnInterval);
    }
    Ok(Some(CyclicInterval::new((lo + gap + 1) % n, (hi + gap + 1) % n)))
}

fn find_non_member(members: &[usize], n: usize) -> Result<Option<usize>> {
    let mut lo = 0;
    let mut hi = n;
    let mut current: Vec<usize> = members.to_vec();
    loop {
        let m = hi - lo;
        if m == 1 {
            return if current.is_empty() { Ok(Some(lo)) } else { Err(Error::NotAnInterval) };
        }
        let half = m.div_ceil(2);
        let mid = lo + half;
        let left = current.iter().filter(|&&k| k < mid).count();
        let right = current.len() - left;
        let left_full = left == half;
        let right_full = right == m - half;
        match (left_full, right_full) {
            (true, true) => return Ok(None),
            (false, false) => {
                let candidates = [lo, mid - 1, mid, hi - 1];
                let mut present = [false; 4];
                for &k in &current {
                    for (slot, &c) in present.iter_mut().zip(&candidates) {
                        *slot |= k == c;
                    }
                }
                return candidates
                    .iter()
                    .zip(&present)
                    .find(|(_, &p)| !p)
                    .map(|(&c, _)| Some(c))
                    .ok_or(Error::NotAnInterval);
            }
            (true, false) => {
                current.retain(|&k| k >= mid);
                lo = mid;
            }
            (false, true) => {
                current.retain(|&k| k < mid);
                hi = mid;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Reference finder: try every start index and length.
    fn naive_interval(member: &[bool]) -> Option<Option<CyclicInterval>> {
        let n = member.len();
        let count = member.iter().filter(|&&m| m).count();
        if count == 0 {
            return Some(None);
        }
        if count == n {
            return Some(Some(CyclicInterval::new(0, n - 1)));
        }
        for k1 in 0..n {
            if member[k1] && !member[(k1 + n - 1) % n] {
                let ok = (0..count).all(|off| member[(k1 + off) % n]);
                return if ok { Some(Some(CyclicInterval::new(k1, (k1 + count - 1) % n))) } else { None };
            }
        }
        None
    }

    fn mask(n: usize, ks: &[usize]) -> Vec<bool> {
        let mut m = vec![false; n];
        for &k in ks {
            m[k] = true;
        }
        m
    }

    #[test]
    fn examples() {
        assert_eq!(extract_interval(&mask(8, &[5, 6, 7, 0, 1])).unwrap(), Some(CyclicInterval::new(5, 1)));
        assert_eq!(extract_interval(&mask(8, &[0, 1, 2, 3, 4, 5, 6, 7])).unwrap(), Some(CyclicInterval::new(0, 7)));
        assert_eq!(extract_interval(&mask(8, &[2, 3, 4])).unwrap(), Some(CyclicInterval::new(2, 4)));
        assert_eq!(extract_interval(&mask(8, &[])).unwrap(), None);
        assert!(matches!(extract_interval(&mask(8, &[1, 3])), Err(Error::NotAnInterval)));
        assert_eq!(extract_interval(&mask(8, &[0, 1, 2, 4, 5, 6, 7])).unwrap(), Some(CyclicInterval::new(4, 2)));
        assert!(matches!(extract_interval(&mask(8, &[0, 2, 4, 5, 6, 7])), Err(Error::NotAnInterval)));
    }

    #[test]
    fn membership_and_length() {
        let iv = CyclicInterval::new(5, 1);
        let inside: Vec<usize> = (0..8).filter(|&k| iv.contains(k)).collect();
        assert_eq!(inside, vec![0, 1, 5, 6, 7]);
        assert_eq!(iv.len(8), 5);
        assert_eq!(iv.iter(8).collect::<Vec<_>>(), vec![5, 6, 7, 0, 1]);
        assert_eq!(CyclicInterval::new(0, 7).len(8), 8);
    }

    #[test]
    fn matches_naive_scan_on_every_interval_up_to_64() {
        for n in 3..=64 {
            for k1 in 0..n {
                for len in 1..=n {
                    let ks: Vec<usize> = (0..len).map(|o| (k1 + o) % n).collect();
                    let m = mask(n, &ks);
                    let got = extract_interval(&m).unwrap();
                    assert_eq!(Some(got), naive_interval(&m), "n={n} k1={k1} len={len}");
                    let shuffled: Vec<usize> = ks.iter().rev().copied().collect();
                    assert_eq!(find_cyclic_interval(&shuffled, n).unwrap(), got);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn agrees_with_naive_scan_on_random_sets(m in prop::collection::vec(any::<bool>(), 3..=64)) {
            match naive_interval(&m) {
                Some(want) => prop_assert_eq!(extract_interval(&m).unwrap(), want),
                None => prop_assert!(matches!(extract_interval(&m), Err(Error::NotAnInterval))),
            }
        }
    }
}
