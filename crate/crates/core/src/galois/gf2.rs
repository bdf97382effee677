//! Word-packed `GF(2)` matrices.
//!
//! Only used behind [`FqMatrix::rref`](super::FqMatrix::rref) when `q = 2`;
//! tests pin it to the generic path bit for bit.

use super::field::FieldSpec;
use super::matrix::{Echelon, FqMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn from_fq(m: &FqMatrix) -> Self {
        debug_assert_eq!(m.field().order(), 2);
        let mut b = BitMatrix::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for (c, &x) in m.row(r).iter().enumerate() {
                if x != 0 {
                    b.set(r, c, true);
                }
            }
        }
        b
    }

    pub fn to_fq(&self, field: &FieldSpec) -> FqMatrix {
        let mut m = FqMatrix::zeros(field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, 1);
                }
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.bits[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.words {
            self.bits.swap(a * self.words + k, b * self.words + k);
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.words {
            let s = self.bits[src * self.words + k];
            self.bits[dst * self.words + k] ^= s;
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            if p != lead {
                self.swap_rows(p, lead);
            }
            for r in 0..self.rows {
                if r != lead && self.get(r, c) {
                    self.xor_row_into(lead, r);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub(crate) fn rref_fq(mut self, field: &FieldSpec) -> Echelon {
        let pivots = self.rref_in_place();
        Echelon { reduced: self.to_fq(field), pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_matches_generic_across_word_boundary() {
        let f = FieldSpec::gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = rng.gen_range(1..12);
            let cols = rng.gen_range(60..140);
            let data = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
            let m = FqMatrix::from_flat(&f, rows, cols, data).unwrap();
            let packed = BitMatrix::from_fq(&m).rref_fq(&f);
            let generic = m.rref_generic();
            assert_eq!(packed.pivots, generic.pivots);
            assert_eq!(packed.reduced, generic.reduced);
        }
    }
}
