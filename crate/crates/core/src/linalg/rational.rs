use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Dense matrix over ℚ. Entries are kept in lowest terms with positive denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.get(k, j);
                    out.data[i * rhs.cols + j] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }
}

/// Counts (positive, negative, zero) in a congruence diagonalization of a symmetric
/// rational matrix.
pub fn inertia(q: &RatMatrix) -> Result<(usize, usize, usize)> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = q.rows();
    let mut a = q.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for i in 0..n {
        if a.get(i, i).is_zero() {
            // prefer a swap with a later nonzero diagonal entry
            if let Some(j) = (i + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                sym_swap(&mut a, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a.get(i, j).is_zero()) {
                // Q_ii = Q_jj = 0, Q_ij ≠ 0: adding row/column j to i gives 2·Q_ij on the diagonal
                sym_add(&mut a, i, j);
            }
        }
        let p = a.get(i, i).clone();
        if p.is_zero() {
            // the whole remaining row is zero
            zero += 1;
            continue;
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Schur complement on the trailing block
        let pivot_row: Vec<BigRational> = (0..n).map(|c| a.get(i, c).clone()).collect();
        for r in i + 1..n {
            if pivot_row[r].is_zero() {
                continue;
            }
            let f = &pivot_row[r] / &p;
            for (c, x) in pivot_row.iter().enumerate().skip(i + 1) {
                if !x.is_zero() {
                    let v = a.get(r, c) - &f * x;
                    a.set(r, c, v);
                }
            }
        }
        for c in i + 1..n {
            a.set(i, c, BigRational::zero());
            a.set(c, i, BigRational::zero());
        }
    }
    Ok((pos, neg, zero))
}

fn sym_swap(a: &mut RatMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        a.data.swap(i * n + c, j * n + c);
    }
    for r in 0..n {
        a.data.swap(r * n + i, r * n + j);
    }
}

fn sym_add(a: &mut RatMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = a.get(i, c) + a.get(j, c);
        a.set(i, c, v);
    }
    for r in 0..n {
        let v = a.get(r, i) + a.get(r, j);
        a.set(r, i, v);
    }
}

/// Signature p − n of a symmetric integer matrix.
pub fn signature_of(m: &IntMatrix) -> Result<i64> {
    let (p, n, _) = inertia(&RatMatrix::from_int(m))?;
    Ok(p as i64 - n as i64)
}

#[cfg(test)]
fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(rows: &[Vec<(i64, i64)>]) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &(a, b)) in r.iter().enumerate() {
                m.set(i, j, ratio(a, b));
            }
        }
        m
    }

    #[test]
    fn inertia_examples() {
        let id = RatMatrix::from_int(&IntMatrix::identity(2));
        assert_eq!(inertia(&id).unwrap(), (2, 0, 0));
        let h = RatMatrix::from_int(&IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(inertia(&h).unwrap(), (1, 1, 0));
        assert_eq!(inertia(&RatMatrix::zeros(2, 2)).unwrap(), (0, 0, 2));
        let ns = RatMatrix::from_int(&IntMatrix::from_rows(&[[0, 1], [2, 0]]));
        assert_eq!(inertia(&ns), Err(Error::NotSymmetric));
    }

    #[test]
    fn inertia_with_fractions_and_degenerate_blocks() {
        let q = rat(&[
            vec![(1, 2), (1, 3), (0, 1)],
            vec![(1, 3), (0, 1), (0, 1)],
            vec![(0, 1), (0, 1), (0, 1)],
        ]);
        // det of the leading 2x2 block is -1/9 < 0
        assert_eq!(inertia(&q).unwrap(), (1, 1, 1));
        let q = RatMatrix::from_int(&IntMatrix::from_rows(&[[0, 0, 1], [0, 0, 0], [1, 0, 0]]));
        assert_eq!(inertia(&q).unwrap(), (1, 1, 1));
    }

    #[test]
    fn congruence_preserves_inertia() {
        let q = RatMatrix::from_int(&IntMatrix::from_rows(&[[2, 1, 0], [1, -3, 4], [0, 4, 0]]));
        let g = rat(&[
            vec![(1, 1), (2, 3), (0, 1)],
            vec![(0, 1), (-1, 2), (5, 1)],
            vec![(1, 1), (0, 1), (1, 7)],
        ]);
        let c = g.transpose().mul(&q).unwrap().mul(&g).unwrap();
        assert_eq!(inertia(&q).unwrap(), inertia(&c).unwrap());
    }
}
