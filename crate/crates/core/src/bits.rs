//! Dense bit-matrix and bitset kernels backing the graph algorithms.
//!
//! Rows are `u64` words; the distance-2 diameter check and the BFS loops
//! reduce to word-level OR/AND sweeps over rows.

use rayon::prelude::*;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    (bits + WORD - 1) / WORD
}

/// A rows x cols bit matrix with contiguous row storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    /// Storage cost in bits for budget accounting (includes row padding).
    pub fn storage_bits(rows: usize, cols: usize) -> u64 {
        rows as u64 * words_for(cols) as u64 * WORD as u64
    }

    /// Fills every row in parallel; `fill` receives the row index and the
    /// zeroed row words.
    pub fn build_parallel(rows: usize, cols: usize, fill: impl Fn(usize, &mut [u64]) + Sync) -> Self {
        let words_per_row = words_for(cols);
        let mut data = vec![0u64; rows * words_per_row];
        data.par_chunks_mut(words_per_row)
            .enumerate()
            .for_each(|(r, row)| fill(r, row));
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / WORD] |= 1 << (c % WORD);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn count_row(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_all(&self) -> u64 {
        self.data.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn rows_intersect(&self, a: usize, b: usize) -> bool {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .any(|(x, y)| x & y != 0)
    }

    /// Smallest common set bit of two rows, if any.
    pub fn first_common_bit(&self, a: usize, b: usize) -> Option<usize> {
        for (w, (x, y)) in self.row(a).iter().zip(self.row(b)).enumerate() {
            let both = x & y;
            if both != 0 {
                return Some(w * WORD + both.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in iter_ones(self.row(r)) {
                out.set(c, r);
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows)
            .into_par_iter()
            .all(|r| iter_ones(self.row(r)).all(|c| self.get(c, r)))
    }

    /// ORs the transpose into self, symmetrizing a square matrix in place.
    pub fn symmetrize(&mut self) {
        assert_eq!(self.rows, self.cols);
        for r in 0..self.rows {
            let ones: Vec<usize> = iter_ones(self.row(r)).collect();
            for c in ones {
                self.set(c, r);
            }
        }
    }
}

/// A fixed-length bitset for BFS frontiers and coverage masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn unset(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn or_words(&mut self, row: &[u64]) {
        for (w, r) in self.words.iter_mut().zip(row) {
            *w |= r;
        }
    }

    pub fn and_not(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    /// True when every bit in `[0, len)` is set.
    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// Smallest index not in the set, if any.
    pub fn first_zero(&self) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != u64::MAX {
                let i = w * WORD + (!word).trailing_zeros() as usize;
                if i < self.len {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find_map(|(w, word)| {
            (*word != 0).then(|| w * WORD + word.trailing_zeros() as usize)
        })
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        iter_ones(&self.words)
    }
}

/// Iterates set-bit indices of a word slice in increasing order.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * WORD + bit)
        })
    })
}
