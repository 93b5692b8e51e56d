use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::sign::SignK1;

/// Returns (g, x, y) with x·a + y·b = g = gcd(a, b) ≥ 0.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row Hermite normal form: returns (H, U) with H = U·M, U unimodular, H in row echelon
/// form with positive pivots and entries above each pivot reduced into [0, pivot).
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, _) = hnf_with_pivots(m);
    (h, u)
}

/// Same as [`hnf`], also returning the pivot columns.
pub fn hnf_with_pivots(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        // bring the smallest nonzero entry of the column into the pivot row first
        let mut best: Option<usize> = None;
        for i in row..m.rows() {
            let v = h.get(i, col);
            if !v.is_zero() && best.is_none_or(|b| v.abs() < h.get(b, col).abs()) {
                best = Some(i);
            }
        }
        let Some(b) = best else { continue };
        h.swap_rows(row, b);
        u.swap_rows(row, b);
        for i in row + 1..m.rows() {
            if h.get(i, col).is_zero() {
                continue;
            }
            let a = h.get(row, col).clone();
            let bv = h.get(i, col).clone();
            if bv.is_multiple_of(&a) {
                let q = -(&bv / &a);
                h.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
                continue;
            }
            let (g, x, y) = ext_gcd(&a, &bv);
            let uu = -(&bv / &g);
            let vv = &a / &g;
            h.combine_rows(row, i, &x, &y, &uu, &vv);
            u.combine_rows(row, i, &x, &y, &uu, &vv);
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let p = h.get(row, col).clone();
        for i in 0..row {
            let q = h.get(i, col).div_floor(&p);
            if !q.is_zero() {
                let nq = -q;
                h.add_row_multiple(i, row, &nq);
                u.add_row_multiple(i, row, &nq);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (h, u, pivots)
}

/// Rank over ℚ (equivalently over ℤ).
pub fn rank(m: &IntMatrix) -> usize {
    // fraction-free elimination; cheaper than a full HNF
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        a.swap_rows(r, p);
        let piv = a.get(r, c).clone();
        for i in r + 1..rows {
            let f = a.get(i, c).clone();
            for j in c..cols {
                let v = (&piv * a.get(i, j) - &f * a.get(r, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        let piv = a.get(k, k).clone();
        for i in k + 1..n {
            let f = a.get(i, k).clone();
            for j in k + 1..n {
                let v = (&piv * a.get(i, j) - &f * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = piv;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { -d } else { d })
}

/// The class of a unimodular matrix in K₁(ℤ) ≅ ℤ/2: 0 for det +1, 1 for det −1.
pub fn unit_det(m: &IntMatrix) -> Result<SignK1> {
    let d = det(m)?;
    if d == BigInt::one() {
        Ok(SignK1::ZERO)
    } else if d == -BigInt::one() {
        Ok(SignK1::ONE)
    } else {
        Err(Error::NotAUnit(d.to_string()))
    }
}

/// Smith normal form: returns (S, U, V) with S = U·M·V diagonal, nonnegative,
/// s₁ | s₂ | …, and U, V unimodular.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let (rows, cols) = s.shape();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = s.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut changed = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let a = s.get(t, t).clone();
                let b = s.get(i, t).clone();
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    continue;
                }
                let (g, x, y) = ext_gcd(&a, &b);
                let uu = -(&b / &g);
                let vv = &a / &g;
                s.combine_rows(t, i, &x, &y, &uu, &vv);
                u.combine_rows(t, i, &x, &y, &uu, &vv);
                changed = true;
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let a = s.get(t, t).clone();
                let b = s.get(t, j).clone();
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    continue;
                }
                let (g, x, y) = ext_gcd(&a, &b);
                let uu = -(&b / &g);
                let vv = &a / &g;
                s.combine_cols(t, j, &x, &y, &uu, &vv);
                v.combine_cols(t, j, &x, &y, &uu, &vv);
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let p = s.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

/// Diagonal of a Smith form, nonzero entries only.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = snf(m);
    (0..s.rows().min(s.cols()))
        .map(|i| s.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
    }
    let (h, u) = hnf(m);
    if !h.is_identity() {
        return Err(Error::NotAUnit(det(m)?.to_string()));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_row_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..h.rows() {
            let p = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match p {
                None => seen_zero_row = true,
                Some(p) => {
                    if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
                        return false;
                    }
                    let pv = h.get(i, p);
                    if !pv.is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let x = h.get(k, p);
                        if x.is_negative() || x >= pv {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, u) = hnf(&IntMatrix::identity(3));
        assert!(h.is_identity() && u.is_identity());
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hnf(&z);
        assert!(h.is_zero());
        assert!(u.is_identity());
    }

    #[test]
    fn hnf_two_by_two() {
        let m = IntMatrix::from_rows(&[[2, 4], [1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(&u * &m, h);
        assert_eq!(det(&u).unwrap().abs(), BigInt::one());
        assert!(is_row_hnf(&h));
        // det M = 2, so the pivots multiply to 2
        assert_eq!(h, IntMatrix::from_rows(&[[1, 1], [0, 2]]));
    }

    #[test]
    fn snf_examples() {
        let (s, u, v) = snf(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s, IntMatrix::diagonal(&[1, 6]));
        assert_eq!(&(&u * &IntMatrix::from_rows(&[[2, 0], [0, 3]])) * &v, s);
        let (s, _, _) = snf(&IntMatrix::identity(3));
        assert!(s.is_identity());
        let (s, _, _) = snf(&IntMatrix::zeros(1, 1));
        assert!(s.is_zero());
    }

    #[test]
    fn unit_det_examples() {
        assert_eq!(unit_det(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap(), SignK1::ONE);
        assert_eq!(unit_det(&IntMatrix::identity(4)).unwrap(), SignK1::ZERO);
        assert!(matches!(unit_det(&IntMatrix::from_rows(&[[2]])), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let rows = vec![vec![3, -1, 2, 0], vec![1, 0, 4, -2], vec![0, 5, -1, 1], vec![2, 2, 0, 3]];
        let m = IntMatrix::from_rows(&rows);
        assert_eq!(det(&m).unwrap(), BigInt::from(cofactor(&rows)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::from_rows(&[[1, 2], [2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::identity(3)), 3);
        assert_eq!(rank(&IntMatrix::zeros(2, 5)), 0);
    }
}
