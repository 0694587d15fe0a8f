//! Bit-packed GF(2) vectors and matrices, code enumeration, Tanner graphs and
//! cyclic shifts.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::rational::{int, Rational};

const WORD: usize = 64;

/// Default cap on the dimension of a span that may be enumerated exhaustively.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    /// Parses a `0`/`1` string; spaces, commas and underscores are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for ch in text.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                ' ' | ',' | '_' | '\t' => {}
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        if bits.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        Ok(Self::from_bits(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let b = self.get(i);
        self.set(i, !b);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(|i| self.get(i) as u8)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.bits().collect()
    }

    pub fn to_integers(&self) -> Vec<u64> {
        self.bits().map(u64::from).collect()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.bits().map(|b| int(b as i64)).collect()
    }

    /// Right rotation by `shift` positions (negative shifts rotate left).
    pub fn cyclic_shift(&self, shift: i64) -> Self {
        if self.len == 0 {
            return self.clone();
        }
        let s = shift.rem_euclid(self.len as i64) as usize;
        let mut out = Self::zeros(self.len);
        for i in self.support() {
            out.set((i + s) % self.len, true);
        }
        out
    }

    pub fn concat(parts: &[&BinaryVector]) -> Self {
        let len = parts.iter().map(|p| p.len).sum();
        let mut out = Self::zeros(len);
        let mut offset = 0;
        for p in parts {
            for i in p.support() {
                out.set(offset + i, true);
            }
            offset += p.len;
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        let mut out = Self::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Hex packing: bit 0 is the most significant bit of the first nibble;
    /// the final nibble is zero-padded.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.len.div_ceil(4));
        for chunk in 0..self.len.div_ceil(4) {
            let mut nibble = 0u32;
            for k in 0..4 {
                let i = chunk * 4 + k;
                nibble <<= 1;
                if i < self.len && self.get(i) {
                    nibble |= 1;
                }
            }
            out.push(std::char::from_digit(nibble, 16).unwrap());
        }
        out
    }
}

impl Ord for BinaryVector {
    /// Lexicographic order on the 0/1 string, shorter vectors first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                if a != b {
                    let low = (a ^ b).trailing_zeros();
                    // the lowest differing bit is the earliest position
                    return if (a >> low) & 1 == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BinaryVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

/// Rotates any sequence right by `shift` positions.
pub fn cyclic_shift<T: Clone>(values: &[T], shift: i64) -> Vec<T> {
    let mut out = values.to_vec();
    if !out.is_empty() {
        let s = shift.rem_euclid(out.len() as i64) as usize;
        out.rotate_right(s);
    }
    out
}

/// A parity-check matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<BinaryVector>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidInput("matrix needs at least one row".into()))?;
        let cols = first.len();
        if cols == 0 {
            return Err(Error::InvalidInput("matrix needs at least one column".into()));
        }
        for r in &rows {
            check_dim(cols, r.len())?;
        }
        Ok(Self { cols, rows })
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| BinaryVector::from_bits(r)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            cols,
            rows: vec![BinaryVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            cols: n,
            rows: (0..n).map(|i| BinaryVector::unit(n, i)).collect(),
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value);
    }

    pub fn row(&self, j: usize) -> &BinaryVector {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn column(&self, i: usize) -> BinaryVector {
        let mut c = BinaryVector::zeros(self.rows.len());
        for (j, r) in self.rows.iter().enumerate() {
            if r.get(i) {
                c.set(j, true);
            }
        }
        c
    }

    pub fn weight(&self) -> usize {
        self.rows.iter().map(BinaryVector::weight).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BinaryVector::weight).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for i in r.support() {
                w[i] += 1;
            }
        }
        w
    }

    pub fn contains_row(&self, v: &BinaryVector) -> bool {
        self.rows.iter().any(|r| r == v)
    }

    pub fn push_row(&mut self, v: BinaryVector) -> Result<()> {
        check_dim(self.cols, v.len())?;
        self.rows.push(v);
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self {
            cols: self.rows.len(),
            rows: (0..self.cols).map(|i| self.column(i)).collect(),
        }
    }

    /// Horizontal concatenation `[A B ...]`; all blocks need the same row count.
    pub fn hstack(blocks: &[&BinaryMatrix]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidInput("nothing to concatenate".into()))?;
        let r = first.num_rows();
        for b in blocks {
            check_dim(r, b.num_rows())?;
        }
        let rows = (0..r)
            .map(|j| {
                let parts: Vec<&BinaryVector> = blocks.iter().map(|b| b.row(j)).collect();
                BinaryVector::concat(&parts)
            })
            .collect();
        Self::from_rows(rows)
    }

    /// Vertical concatenation; all blocks need the same column count.
    pub fn vstack(blocks: &[&BinaryMatrix]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidInput("nothing to concatenate".into()))?;
        let mut rows = Vec::new();
        for b in blocks {
            check_dim(first.cols, b.cols)?;
            rows.extend(b.rows.iter().cloned());
        }
        Self::from_rows(rows)
    }

    pub fn block_diag(blocks: &[&BinaryMatrix]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("nothing to concatenate".into()));
        }
        let n: usize = blocks.iter().map(|b| b.cols).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for r in &b.rows {
                let mut row = BinaryVector::zeros(n);
                for i in r.support() {
                    row.set(offset + i, true);
                }
                rows.push(row);
            }
            offset += b.cols;
        }
        Self::from_rows(rows)
    }

    /// Submatrix of the given column range, all rows.
    pub fn column_block(&self, start: usize, len: usize) -> Self {
        Self {
            cols: len,
            rows: self.rows.iter().map(|r| r.slice(start, len)).collect(),
        }
    }

    /// Submatrix of the given row range.
    pub fn row_block(&self, start: usize, len: usize) -> Self {
        Self {
            cols: self.cols,
            rows: self.rows[start..start + len].to_vec(),
        }
    }

    /// Applies `new[row_perm[j]][col_perm[i]] = old[j][i]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        check_dim(self.rows.len(), row_perm.len())?;
        check_dim(self.cols, col_perm.len())?;
        let mut rows = vec![BinaryVector::zeros(self.cols); self.rows.len()];
        for (j, r) in self.rows.iter().enumerate() {
            let target = &mut rows[row_perm[j]];
            for i in r.support() {
                target.set(col_perm[i], true);
            }
        }
        Self::from_rows(rows)
    }

    /// Returns true when every row of `self` is orthogonal to every row of `other`.
    pub fn first_non_orthogonal_pair(&self, other: &Self) -> Option<(usize, usize)> {
        for (a, ra) in self.rows.iter().enumerate() {
            for (b, rb) in other.rows.iter().enumerate() {
                if ra.dot(rb) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Reduced row echelon basis of the row space, with the pivot columns.
    fn echelon(&self) -> (Vec<BinaryVector>, Vec<usize>) {
        let mut rows: Vec<BinaryVector> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&j| rows[j].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (j, r) in rows.iter_mut().enumerate() {
                if j != rank && r.get(col) {
                    r.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// A basis of the row space (reduced echelon form).
    pub fn row_space_basis(&self) -> Vec<BinaryVector> {
        self.echelon().0
    }

    /// A basis of the null space `{c : H c^T = 0}`.
    pub fn nullspace_basis(&self) -> Vec<BinaryVector> {
        let (rows, pivots) = self.echelon();
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = BinaryVector::unit(self.cols, free);
                for (r, &p) in rows.iter().zip(&pivots) {
                    if r.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// True when `v` lies in the row space of the matrix.
    pub fn row_space_contains(&self, v: &BinaryVector) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let (rows, pivots) = self.echelon();
        let mut rest = v.clone();
        for (r, &p) in rows.iter().zip(&pivots) {
            if rest.get(p) {
                rest.xor_assign(r);
            }
        }
        rest.is_zero()
    }

    pub fn is_codeword(&self, c: &BinaryVector) -> bool {
        c.len() == self.cols && self.rows.iter().all(|r| !r.dot(c))
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{})[", self.rows.len(), self.cols)?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// `H v mod 2`, with the products summed over the integers before reduction.
pub fn mat_vec_mod2(h: &BinaryMatrix, v: &[u64]) -> Result<BinaryVector> {
    check_dim(h.num_cols(), v.len())?;
    let mut out = BinaryVector::zeros(h.num_rows());
    for (j, row) in h.rows().iter().enumerate() {
        let sum: u64 = row.support().into_iter().map(|i| v[i] % 2).sum();
        if sum % 2 == 1 {
            out.set(j, true);
        }
    }
    Ok(out)
}

/// Every element of the GF(2) span of `basis`, visited in Gray-code order.
pub fn span(basis: &[BinaryVector], len: usize) -> Vec<BinaryVector> {
    let k = basis.len();
    let mut out = Vec::with_capacity(1 << k);
    let mut current = BinaryVector::zeros(len);
    out.push(current.clone());
    for i in 1u64..(1u64 << k) {
        current.xor_assign(&basis[i.trailing_zeros() as usize]);
        out.push(current.clone());
    }
    out
}

/// All codewords of `C(H)`, sorted lexicographically.
///
/// Refuses when the code dimension exceeds `limit` rather than sampling.
pub fn enumerate_codewords(h: &BinaryMatrix, limit: usize) -> Result<Vec<BinaryVector>> {
    let basis = h.nullspace_basis();
    if basis.len() > limit {
        return Err(Error::BoundExceeded {
            what: "code dimension",
            limit,
            actual: basis.len(),
        });
    }
    let mut words = span(&basis, h.num_cols());
    words.sort();
    Ok(words)
}

/// A nonzero word of the dual code `C(H)^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWord {
    pub word: BinaryVector,
    /// Whether the word already appears as a row of `H`.
    pub is_row: bool,
}

/// All nonzero dual words of weight at most `max_weight`, ordered by weight and
/// then lexicographically. The dual code is the row space of `H`.
pub fn enumerate_dual_words(
    h: &BinaryMatrix,
    max_weight: usize,
    limit: usize,
) -> Result<Vec<DualWord>> {
    if max_weight == 0 {
        return Ok(Vec::new());
    }
    let basis = h.row_space_basis();
    if basis.len() > limit {
        return Err(Error::BoundExceeded {
            what: "dual code dimension",
            limit,
            actual: basis.len(),
        });
    }
    let rows: HashSet<&BinaryVector> = h.rows().iter().collect();
    let mut out: Vec<DualWord> = span(&basis, h.num_cols())
        .into_iter()
        .filter(|w| !w.is_zero() && w.weight() <= max_weight)
        .map(|word| DualWord {
            is_row: rows.contains(&word),
            word,
        })
        .collect();
    out.sort_by(|a, b| {
        a.word
            .weight()
            .cmp(&b.word.weight())
            .then_with(|| a.word.cmp(&b.word))
    });
    Ok(out)
}

/// True when every row shifted right by `n0` is again a row of `H`.
pub fn is_quasi_cyclic(h: &BinaryMatrix, n0: usize) -> bool {
    let rows: HashSet<&BinaryVector> = h.rows().iter().collect();
    h.rows()
        .iter()
        .all(|r| rows.contains(&r.cyclic_shift(n0 as i64)))
}

/// The bipartite graph with an edge (check j, variable i) whenever `H[j][i] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    pub variable_nodes: usize,
    pub check_nodes: usize,
    /// Edges as `(check, variable)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl TannerGraph {
    pub fn check_neighbors(&self, check: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.0 == check)
            .map(|e| e.1)
            .collect()
    }

    pub fn variable_neighbors(&self, variable: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.1 == variable)
            .map(|e| e.0)
            .collect()
    }
}

pub fn tanner_graph(h: &BinaryMatrix) -> TannerGraph {
    let edges = h
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(j, r)| r.support().into_iter().map(move |i| (j, i)))
        .collect();
    TannerGraph {
        variable_nodes: h.num_cols(),
        check_nodes: h.num_rows(),
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hamming() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[
            vec![1, 0, 1, 1, 1, 0, 0],
            vec![0, 1, 0, 1, 1, 1, 0],
            vec![0, 0, 1, 0, 1, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn mat_vec_examples() {
        let h = hamming();
        assert!(mat_vec_mod2(&h, &[2, 0, 0, 1, 1, 0, 1]).unwrap().is_zero());
        assert!(mat_vec_mod2(&h, &[0; 7]).unwrap().is_zero());
        let single = BinaryMatrix::from_dense(&[vec![1, 1, 1]]).unwrap();
        assert!(mat_vec_mod2(&single, &[1, 2, 1]).unwrap().is_zero());
        assert!(mat_vec_mod2(&single, &[1, 2]).is_err());
    }

    #[test]
    fn codeword_counts() {
        let h = hamming();
        assert_eq!(h.rank(), 3);
        let words = enumerate_codewords(&h, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.iter().all(|c| h.is_codeword(c)));

        let id = BinaryMatrix::identity(5);
        assert_eq!(enumerate_codewords(&id, 24).unwrap(), vec![BinaryVector::zeros(5)]);

        let single = BinaryMatrix::from_dense(&[vec![1, 1, 1]]).unwrap();
        let words: Vec<String> = enumerate_codewords(&single, 24)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["000", "011", "101", "110"]);
    }

    #[test]
    fn codeword_enumeration_refuses_large_codes() {
        let h = BinaryMatrix::zeros(1, 30);
        assert!(matches!(
            enumerate_codewords(&h, 24),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn dual_words() {
        let h = hamming();
        let duals = enumerate_dual_words(&h, 4, 24).unwrap();
        assert_eq!(duals.len(), 7);
        let row1 = h.row(0);
        for s in 0..7 {
            let shifted = row1.cyclic_shift(s);
            assert!(duals.iter().any(|d| d.word == shifted));
        }
        assert_eq!(duals.iter().filter(|d| d.is_row).count(), 3);
        assert!(enumerate_dual_words(&h, 0, 24).unwrap().is_empty());
        assert!(enumerate_dual_words(&h, 3, 24).unwrap().is_empty());

        let pair = BinaryMatrix::from_dense(&[vec![1, 1]]).unwrap();
        let duals = enumerate_dual_words(&pair, 2, 24).unwrap();
        assert_eq!(duals.len(), 1);
        assert_eq!(duals[0].word.to_string(), "11");
        assert!(duals[0].is_row);
    }

    #[test]
    fn shifts() {
        let v = BinaryVector::parse("1011100").unwrap();
        assert_eq!(v.cyclic_shift(1).to_string(), "0101110");
        assert_eq!(v.cyclic_shift(0), v);
        assert_eq!(v.cyclic_shift(7), v);
        assert_eq!(v.cyclic_shift(-1).to_string(), "0111001");
        assert_eq!(cyclic_shift(&[1, 2, 3, 4], 1), vec![4, 1, 2, 3]);
    }

    #[test]
    fn quasi_cyclic_detection() {
        let h = hamming();
        assert!(!is_quasi_cyclic(&h, 1));
        assert!(is_quasi_cyclic(&h, 7));
        let full: Vec<BinaryVector> = (0..7).map(|s| h.row(0).cyclic_shift(s)).collect();
        let full = BinaryMatrix::from_rows(full).unwrap();
        assert!(is_quasi_cyclic(&full, 1));
        assert!(is_quasi_cyclic(&full, 3));
    }

    #[test]
    fn tanner_examples() {
        let h = BinaryMatrix::from_dense(&[
            vec![1, 1, 0, 1, 0, 0],
            vec![0, 1, 1, 0, 1, 0],
            vec![0, 0, 0, 1, 1, 1],
        ])
        .unwrap();
        let t = tanner_graph(&h);
        assert_eq!(t.edges.len(), 9);
        let expected = [
            (0, 0), (0, 1), (0, 3), (1, 1), (1, 2), (1, 4), (2, 3), (2, 4), (2, 5),
        ];
        assert_eq!(t.edges, expected);
        assert_eq!(t.variable_neighbors(3), vec![0, 2]);
        assert_eq!(t.check_neighbors(1), vec![1, 2, 4]);

        assert!(tanner_graph(&BinaryMatrix::zeros(2, 4)).edges.is_empty());
        let id = tanner_graph(&BinaryMatrix::identity(3));
        assert_eq!(id.edges, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn nullspace_and_rowspace() {
        let h = hamming();
        for b in h.nullspace_basis() {
            assert!(h.is_codeword(&b));
        }
        assert!(h.row_space_contains(&BinaryVector::parse("1110010").unwrap()));
        assert!(!h.row_space_contains(&BinaryVector::parse("1000000").unwrap()));
    }

    #[test]
    fn hex_and_order() {
        let v = BinaryVector::parse("1011100").unwrap();
        assert_eq!(v.to_hex(), "b8");
        let a = BinaryVector::parse("0111001").unwrap();
        let b = BinaryVector::parse("1001011").unwrap();
        assert!(a < b);
        let c = BinaryVector::parse("0111000").unwrap();
        assert!(c < a);
    }

    #[test]
    fn permute_and_stack() {
        let h = hamming();
        let t = h.transpose();
        assert_eq!(t.num_rows(), 7);
        assert_eq!(t.transpose(), h);
        let hh = BinaryMatrix::hstack(&[&h, &h]).unwrap();
        assert_eq!(hh.num_cols(), 14);
        assert_eq!(hh.column_block(7, 7), h);
        let d = BinaryMatrix::block_diag(&[&h, &h]).unwrap();
        assert_eq!(d.num_rows(), 6);
        assert_eq!(d.rank(), 6);
        let p = h.permute(&[2, 1, 0], &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(p.row(0), h.row(2));
    }

    fn arb_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..5, 1usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(|rows| BinaryMatrix::from_dense(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn mat_vec_is_linear(h in arb_matrix(), seed in any::<u64>()) {
            let n = h.num_cols();
            let v: Vec<u64> = (0..n).map(|i| (seed >> (i % 60)) & 7).collect();
            let w: Vec<u64> = (0..n).map(|i| (seed >> ((i + 3) % 60)) & 5).collect();
            let sum: Vec<u64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            let lhs = mat_vec_mod2(&h, &sum).unwrap();
            let rhs = mat_vec_mod2(&h, &v).unwrap().xor(&mat_vec_mod2(&h, &w).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn codewords_form_a_subspace(h in arb_matrix()) {
            let words = enumerate_codewords(&h, 24).unwrap();
            prop_assert_eq!(words.len(), 1usize << (h.num_cols() - h.rank()));
            let set: HashSet<_> = words.iter().cloned().collect();
            prop_assert!(set.contains(&BinaryVector::zeros(h.num_cols())));
            for a in &words {
                for b in &words {
                    prop_assert!(set.contains(&a.xor(b)));
                }
            }
        }

        #[test]
        fn shift_composes(bits in proptest::collection::vec(0u8..2, 1..20), a in -30i64..30, b in -30i64..30) {
            let v = BinaryVector::from_bits(&bits);
            prop_assert_eq!(v.cyclic_shift(a).cyclic_shift(b), v.cyclic_shift(a + b));
            prop_assert_eq!(v.cyclic_shift(a).weight(), v.weight());
            prop_assert_eq!(v.cyclic_shift(a).to_bits(), cyclic_shift(&bits, a));
        }

        #[test]
        fn quasi_cyclic_multiples(h in arb_matrix(), n0 in 1usize..5, k in 1usize..4) {
            // close the rows under shifts by n0 first
            let mut rows: Vec<BinaryVector> = Vec::new();
            for r in h.rows() {
                for s in 0..h.num_cols() {
                    let shifted = r.cyclic_shift((s * n0) as i64);
                    if !rows.contains(&shifted) {
                        rows.push(shifted);
                    }
                }
            }
            let closed = BinaryMatrix::from_rows(rows).unwrap();
            prop_assert!(is_quasi_cyclic(&closed, n0));
            prop_assert!(is_quasi_cyclic(&closed, k * n0));
        }

        #[test]
        fn tanner_edges_match_weight(h in arb_matrix()) {
            prop_assert_eq!(tanner_graph(&h).edges.len(), h.weight());
        }
    }
}
