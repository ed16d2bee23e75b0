//! Prime field arithmetic and dense matrices over GF(p).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

pub const DEFAULT_PRIME: u64 = 1_000_000_007;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("0 has no inverse")]
    NonInvertible,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("entry {value} out of range for modulus {p}")]
    EntryOutOfRange { value: u64, p: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldPrime(u64);

impl FieldPrime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldPrime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> Result<u64, FieldError> {
        ff_inv(a, self)
    }

    /// Reduce a signed integer into [0, p).
    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
}

impl Default for FieldPrime {
    fn default() -> Self {
        FieldPrime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative inverse by Fermat's little theorem.
pub fn ff_inv(a: u64, p: FieldPrime) -> Result<u64, FieldError> {
    let a = a % p.get();
    if a == 0 {
        return Err(FieldError::NonInvertible);
    }
    Ok(p.pow(a, p.get() - 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    p: FieldPrime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FFMatrix {
    pub fn new(p: FieldPrime, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, FieldError> {
        if data.len() != rows * cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= p.get()) {
            return Err(FieldError::EntryOutOfRange { value: v, p: p.get() });
        }
        Ok(FFMatrix { p, rows, cols, data })
    }

    pub fn from_rows(p: FieldPrime, rows: &[Vec<u64>]) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(FieldError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(p, rows.len(), cols, rows.concat())
    }

    pub fn zeros(p: FieldPrime, rows: usize, cols: usize) -> Self {
        FFMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: FieldPrime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p.get();
        }
        m
    }

    pub fn modulus(&self) -> FieldPrime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p.get();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> FFMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        FFMatrix { p: self.p, rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> FFMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        FFMatrix { p: self.p, rows: rows.len(), cols: self.cols, data }
    }

    /// Append columns (same row count).
    pub fn hconcat(&self, other: &FFMatrix) -> Result<FFMatrix, FieldError> {
        if self.rows != other.rows || self.p != other.p {
            return Err(FieldError::DimensionMismatch("hconcat".into()));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FFMatrix { p: self.p, rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix, FieldError> {
        if self.cols != other.rows || self.p != other.p {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = p.add(out.data[idx], p.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form. Returns the reduced matrix and the pivot columns.
    /// Columns are scanned left to right, pivot row is the first nonzero candidate.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place_on(&(0..self.cols).collect::<Vec<_>>());
        (m, pivots)
    }

    /// Row-reduce in place, pivoting only on the given columns (in order).
    /// Returns the columns that received a pivot; pivot row `i` belongs to the i-th of them.
    pub fn rref_in_place_on(&mut self, cols: &[usize]) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for &c in cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = ff_inv(self.get(row, c), p).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = self.get(row, j);
                self.data[row * self.cols + j] = p.mul(v, inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = p.sub(self.get(r, j), p.mul(f, self.get(row, j)));
                    self.data[r * self.cols + j] = v;
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // eliminate on the smaller side
        if self.rows <= self.cols {
            self.clone().rref_in_place_on(&(0..self.cols).collect::<Vec<_>>()).len()
        } else {
            self.transpose().rank()
        }
    }

    pub fn columns_independent(&self, cols: &[usize]) -> bool {
        if cols.len() > self.rows {
            return false;
        }
        if cols.is_empty() {
            return true;
        }
        let mut sub = self.select_columns(cols);
        let n = sub.cols;
        sub.rref_in_place_on(&(0..n).collect::<Vec<_>>()).len() == n
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<u64, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::DimensionMismatch("det of non-square matrix".into()));
        }
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1 % p.get();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| m.get(r, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = p.neg(det);
            }
            let piv = m.get(c, c);
            det = p.mul(det, piv);
            let inv = ff_inv(piv, p)?;
            for r in c + 1..n {
                let f = p.mul(m.get(r, c), inv);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let v = p.sub(m.get(r, j), p.mul(f, m.get(c, j)));
                    m.data[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }
}

/// Seeded uniform random matrix.
pub fn random_matrix(rows: usize, cols: usize, p: FieldPrime, seed: u64) -> FFMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| rng.gen_range(0..p.get())).collect();
    FFMatrix { p, rows, cols, data }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldPrime {
        FieldPrime::new(p).unwrap()
    }

    #[test]
    fn inverses() {
        assert_eq!(ff_inv(1, fp(7)).unwrap(), 1);
        assert_eq!(ff_inv(2, fp(5)).unwrap(), 3);
        assert_eq!(ff_inv(4, fp(7)).unwrap(), 2);
        assert_eq!(ff_inv(0, fp(7)), Err(FieldError::NonInvertible));
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(FieldPrime::new(9), Err(FieldError::NotPrime(9)));
        assert!(FieldPrime::new(1).is_err());
        assert!(FieldPrime::new(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FFMatrix::identity(fp(5), 3).rank(), 3);
        assert_eq!(FFMatrix::zeros(fp(5), 2, 4).rank(), 0);
        let m = FFMatrix::from_rows(fp(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn column_independence() {
        let id = FFMatrix::identity(fp(5), 3);
        assert!(id.columns_independent(&[0, 1]));
        let z = FFMatrix::from_rows(fp(5), &[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(!z.columns_independent(&[1]));
        let r = random_matrix(3, 6, fp(101), 3);
        assert!(!r.columns_independent(&[0, 1, 2, 3]));
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_matrix(0, 0, fp(5), 1).rows(), 0);
        assert_eq!(random_matrix(2, 2, fp(5), 9), random_matrix(2, 2, fp(5), 9));
    }

    #[test]
    fn random_3x3_mostly_full_rank() {
        let p = fp(10007);
        let full = (0..1000).filter(|&s| random_matrix(3, 3, p, s).rank() == 3).count();
        assert!(full >= 990, "{full}");
    }

    #[test]
    fn det_matches_rank() {
        let p = fp(101);
        for s in 0..50 {
            let m = random_matrix(4, 4, p, s);
            assert_eq!(m.det().unwrap() != 0, m.rank() == 4);
        }
        let m = FFMatrix::from_rows(p, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), 100);
    }

    #[test]
    fn mul_identity() {
        let p = fp(13);
        let m = random_matrix(3, 4, p, 2);
        assert_eq!(FFMatrix::identity(p, 3).mul(&m).unwrap(), m);
    }

    proptest! {
        #[test]
        fn inverse_involution(a in 1u64..10007) {
            let p = fp(10007);
            let b = ff_inv(a, p).unwrap();
            prop_assert_eq!(p.mul(a, b), 1);
            prop_assert_eq!(ff_inv(b, p).unwrap(), a);
        }

        #[test]
        fn rank_transpose(seed in 0u64..10_000, r in 0usize..6, c in 0usize..6) {
            let m = random_matrix(r, c, fp(7), seed);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn dependence_monotone(seed in 0u64..10_000, extra in 0usize..5) {
            let m = random_matrix(3, 6, fp(3), seed);
            let base: Vec<usize> = vec![0, 1];
            if !m.columns_independent(&base) {
                let mut sup = base.clone();
                sup.push(2 + extra % 4);
                prop_assert!(!m.columns_independent(&sup));
            }
        }
    }
}
