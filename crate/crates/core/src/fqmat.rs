//! Dense matrices over F_q with exact Gaussian elimination.
//!
//! Everything here is deterministic: pivoting always picks the first
//! nonzero entry, so ranks, kernels and echelon forms are reproducible
//! across runs and platforms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fq::{Elt, Fq};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub field: Fq,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elt>,
}

impl Mat {
    pub fn zeros(field: Fq, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fq, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: Fq, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elt) -> Self {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_i64_rows(field: Fq, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Mat::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set_row(&mut self, i: usize, v: &[Elt]) {
        self.row_mut(i).copy_from_slice(v);
    }

    pub fn check_same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, *b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = f.sub(*a, *b);
        }
        out
    }

    pub fn scale(&self, c: Elt) -> Mat {
        let f = self.field;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = f.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = out.row_mut(i);
                for j in 0..other.cols {
                    if orow[j] != 0 {
                        out_row[j] = f.add(out_row[j], f.mul(a, orow[j]));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elt]) -> Vec<Elt> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        let mut out = vec![0; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = 0;
            for j in 0..self.cols {
                if row[j] != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(row[j], v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Commutator AB - BA.
    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stack rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    pub fn block_diag(field: Fq, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product, acting on V (x) W with the second index fast.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other[(k, l)];
                        if b != 0 {
                            out[(i * other.rows + k, j * other.cols + l)] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// In-place row echelon reduction; returns the pivot columns.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let t = self[(r, j)];
                    self[(r, j)] = self[(pr, j)];
                    self[(pr, j)] = t;
                }
            }
            let inv = f.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let m = self[(i, c)];
                    for j in c..self.cols {
                        let s = f.mul(m, self[(r, j)]);
                        self[(i, j)] = f.sub(self[(i, j)], s);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right kernel {v : Av = 0}, in reduced echelon convention:
    /// one basis vector per free column, with 1 at the free column.
    pub fn kernel(&self) -> Vec<Vec<Elt>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                // row r reads: x_pc + sum_{j free or later pivot} m[r][j] x_j = 0
                v[pc] = f.neg(m[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Solves Ax = b; returns None when inconsistent. When the solution is
    /// not unique the free variables are set to zero.
    pub fn solve(&self, b: &[Elt]) -> Option<Vec<Elt>> {
        assert_eq!(self.rows, b.len());
        let f = self.field;
        let mut m = Mat::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            m.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            m[(i, self.cols)] = b[i];
        }
        let pivots = m.echelonize();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m[(r, self.cols)];
        }
        Some(x)
    }

    /// Whether the solution of Ax = b is unique, i.e. rank = cols.
    pub fn solve_unique(&self, b: &[Elt]) -> Option<Vec<Elt>> {
        if self.rank() < self.cols {
            return None;
        }
        self.solve(b)
    }

    /// Rank sequence rank(A^1), ..., rank(A^k).
    pub fn rank_powers(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        let mut acc = self.clone();
        for _ in 0..k {
            out.push(acc.rank());
            acc = acc.mul(self);
        }
        out
    }

    /// Jordan block sizes of a nilpotent matrix, largest first.
    pub fn nilpotent_jordan_type(&self) -> Vec<usize> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // r[s] = rank(A^s), r[0] = n
        let mut ranks = vec![n];
        let mut acc = Mat::identity(self.field, n);
        loop {
            acc = acc.mul(self);
            let r = acc.rank();
            ranks.push(r);
            if r == 0 {
                break;
            }
            assert!(ranks.len() <= n + 1, "matrix is not nilpotent");
        }
        let s_max = ranks.len() - 1;
        // #blocks of size >= s is r[s-1] - r[s]
        let mut type_ = Vec::new();
        for s in (1..=s_max).rev() {
            let count = ranks[s - 1] - ranks[s]
                - if s < s_max { ranks[s] - ranks[s + 1] } else { 0 };
            for _ in 0..count {
                type_.push(s);
            }
        }
        type_.sort_unstable_by(|a, b| b.cmp(a));
        type_
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Elt;
    fn index(&self, (i, j): (usize, usize)) -> &Elt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Fq {
        Fq::prime(7).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let f = f7();
        let m = Mat::from_i64_rows(f, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = f7();
        let m = Mat::from_i64_rows(f, &[vec![1, 1], vec![0, 1], vec![1, 2]]);
        let x = m.solve(&[f.from_i64(3), f.from_i64(1), f.from_i64(4)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![3, 1, 4]);
        assert!(m.solve(&[1, 0, 0]).is_none());
    }

    #[test]
    fn jordan_type_of_jordan_blocks() {
        let f = f7();
        // blocks of sizes 3 and 2
        let mut m = Mat::zeros(f, 5, 5);
        m[(0, 1)] = 1;
        m[(1, 2)] = 1;
        m[(3, 4)] = 1;
        assert_eq!(m.nilpotent_jordan_type(), vec![3, 2]);
    }

    #[test]
    fn kernel_over_extension_field() {
        let f = Fq::extension(3, 2).unwrap();
        let t = f.from_index(3); // a non-prime-subfield element
        let mut m = Mat::zeros(f, 2, 2);
        m[(0, 0)] = f.one();
        m[(0, 1)] = t;
        m[(1, 0)] = t;
        m[(1, 1)] = f.mul(t, t);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn power_matches_repeated_mul() {
        let f = f7();
        let m = Mat::from_i64_rows(f, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(0), Mat::identity(f, 2));
    }
}
