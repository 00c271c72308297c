//! Exact rational linear algebra: echelon forms, solving, and Hermite
//! normal form for integer lattices. Backed by arbitrary-precision
//! integers; no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q_from(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = QMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        QMat::from_fn(r, c, |i, j| q_from(rows[i][j]))
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other[(k, j)].is_zero() {
                        let t = a * &other[(k, j)];
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Reduced row echelon form in place; returns pivot columns.
    /// Pivot selection is first-nonzero, so the result is deterministic.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.data.swap_rows(self.cols, r, pr);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let m = self[(i, c)].clone();
                    for j in c..self.cols {
                        let s = &m * &self[(r, j)];
                        self[(i, j)] -= s;
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

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.echelonize();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(QMat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Solves Ax = b exactly; None when inconsistent. Free variables zero.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len());
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.echelonize();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

trait SwapRows {
    fn swap_rows(&mut self, cols: usize, a: usize, b: usize);
}

impl SwapRows for Vec<Q> {
    fn swap_rows(&mut self, cols: usize, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..cols {
            self.swap(a * cols + j, b * cols + j);
        }
    }
}

/// Row-style Hermite normal form of an integer matrix.
///
/// Returns (hnf, transform) where transform * a = hnf, the transform has
/// determinant +-1 ... restricted to the selected rows, and the nonzero rows
/// of hnf form a canonical basis of the row lattice of `a`.
pub fn hermite_normal_form(a: &[Vec<Z>]) -> (Vec<Vec<Z>>, Vec<Vec<Z>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<Z>> = a.to_vec();
    let mut u: Vec<Vec<Z>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        // euclidean reduction in column c below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[i][c].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h[i][c].abs() < h[b][c].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if !h[i][c].is_zero() {
                    let q = div_round(&h[i][c], &h[pivot_row][c]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &q * &h[pivot_row][j];
                            h[i][j] -= t;
                        }
                        for j in 0..rows {
                            let t = &q * &u[pivot_row][j];
                            u[i][j] -= t;
                        }
                    }
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[pivot_row][c].is_zero() {
            continue;
        }
        // normalize pivot positive and reduce the rows above
        if h[pivot_row][c].is_negative() {
            for j in 0..cols {
                h[pivot_row][j] = -h[pivot_row][j].clone();
            }
            for j in 0..rows {
                u[pivot_row][j] = -u[pivot_row][j].clone();
            }
        }
        for i in 0..pivot_row {
            let q = num_integer::Integer::div_floor(&h[i][c], &h[pivot_row][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let t = &q * &h[pivot_row][j];
                    h[i][j] -= t;
                }
                for j in 0..rows {
                    let t = &q * &u[pivot_row][j];
                    u[i][j] -= t;
                }
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn div_round(a: &Z, b: &Z) -> Z {
    // nearest-integer division keeps coefficients small
    let two = Z::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &(&r * &two) >= &b.abs() {
        q + Z::one()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_and_rank() {
        let m = QMat::from_i64_rows(&[vec![2, 4], vec![1, 2], vec![0, 3]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMat::from_i64_rows(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
    }

    #[test]
    fn solve_rational() {
        let m = QMat::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let x = m.solve(&[q_from(1), q_from(1)]).unwrap();
        assert_eq!(x[0], Q::new(Z::one(), Z::from(2)));
        assert_eq!(x[1], Q::new(Z::one(), Z::from(3)));
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let a = vec![
            vec![Z::from(2), Z::from(0)],
            vec![Z::from(1), Z::from(1)],
            vec![Z::from(3), Z::from(1)],
        ];
        let (h, u) = hermite_normal_form(&a);
        // the lattice is {(a, b) : a + b even}, index 2 in Z^2
        assert_eq!(h[0], vec![Z::from(1), Z::from(1)]);
        assert_eq!(h[1], vec![Z::from(0), Z::from(2)]);
        assert!(h[2].iter().all(|x| x.is_zero()));
        // transform really maps a to h
        for (i, hrow) in h.iter().enumerate() {
            for c in 0..2 {
                let mut acc = Z::zero();
                for (j, arow) in a.iter().enumerate() {
                    acc += &u[i][j] * &arow[c];
                }
                assert_eq!(&acc, &hrow[c]);
            }
        }
    }
}
