//! Fixed-width bit rows shared by the graph, search and system code.

/// Number of 64-bit words needed to hold `n` bits.
#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn test(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

#[inline]
pub fn first(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// `a & b` has a set bit.
#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

pub fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

pub fn and_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= y;
    }
}

pub fn or_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
}

/// Row with bits `0..n` set.
pub fn full(n: usize) -> Vec<u64> {
    let mut row = vec![u64::MAX; words_for(n)];
    if n % 64 != 0 {
        if let Some(last) = row.last_mut() {
            *last = (1u64 << (n % 64)) - 1;
        }
    }
    row
}

/// Row with bits `lo..n` set.
pub fn range_from(lo: usize, n: usize) -> Vec<u64> {
    let mut row = full(n);
    for i in 0..lo.min(n) {
        clear(&mut row, i);
    }
    row
}

pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut row = vec![0; words_for(n)];
    for i in idx {
        set(&mut row, i);
    }
    row
}

/// Ascending indices of set bits.
pub fn ones(row: &[u64]) -> Ones<'_> {
    Ones { row, word: 0, cur: row.first().copied().unwrap_or(0) }
}

pub struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_ranges() {
        assert_eq!(count(&full(0)), 0);
        assert_eq!(count(&full(64)), 64);
        assert_eq!(count(&full(130)), 130);
        let r = range_from(3, 70);
        assert_eq!(ones(&r).next(), Some(3));
        assert_eq!(count(&r), 67);
    }

    #[test]
    fn ones_iterates_across_words() {
        let r = from_indices(200, [0, 63, 64, 130, 199]);
        assert_eq!(ones(&r).collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(first(&r), Some(0));
        assert!(ones(&[]).next().is_none());
    }
}
