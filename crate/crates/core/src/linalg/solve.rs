use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::normal_form::hnf_with_pivots;
use super::IntMatrix;
use crate::error::{Error, Result};

/// A ℤ-basis of ker(M) ⊂ ℤ^cols, returned as the columns of a matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (_, u, pivots) = hnf_with_pivots(&m.transpose());
    let r = pivots.len();
    let n = m.cols();
    let mut k = IntMatrix::zeros(n, n - r);
    for (c, i) in (r..n).enumerate() {
        for j in 0..n {
            k.set(j, c, u.get(i, j).clone());
        }
    }
    k
}

/// Finds an integer X with M·X = B.
///
/// Unit pivots are eliminated first, which keeps the sparse systems arising from
/// contractions and homotopies small; whatever remains goes through a Hermite
/// normal form solve.
pub fn solve_integral(m: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if m.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "solve: matrix has {} rows, right-hand side has {}",
            m.rows(),
            b.rows()
        )));
    }
    let rows = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
        .collect();
    let rhs = (0..b.rows()).map(|i| b.row(i).to_vec()).collect();
    let x = UnitElimination::new(rows, m.cols(), rhs, b.cols()).solve()?;
    if &(m * &x) != b {
        return Err(Error::NoIntegerSolution);
    }
    Ok(x)
}

type SparseRow = Vec<(usize, BigInt)>;

/// A system of matrix equations Σ A·X_u·B = R in unknown integer matrices X_u,
/// assembled directly in sparse form.
#[derive(Default)]
pub struct MatrixEquations {
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    n_vars: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<BigInt>,
}

impl MatrixEquations {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers an unknown matrix and returns its handle.
    pub fn unknown(&mut self, rows: usize, cols: usize) -> usize {
        self.shapes.push((rows, cols));
        self.offsets.push(self.n_vars);
        self.n_vars += rows * cols;
        self.shapes.len() - 1
    }

    pub fn unknown_shape(&self, u: usize) -> (usize, usize) {
        self.shapes[u]
    }

    /// Adds Σ_t A_t · X_{u_t} · B_t = R.
    pub fn equation(&mut self, terms: &[(&IntMatrix, usize, &IntMatrix)], rhs: &IntMatrix) -> Result<()> {
        let (p, q) = rhs.shape();
        for (a, u, b) in terms {
            let (xr, xc) = self.shapes[*u];
            if a.shape() != (p, xr) || b.shape() != (xc, q) {
                return Err(Error::ShapeMismatch(format!(
                    "term {:?}·[{}x{}]·{:?} in an equation of shape {:?}",
                    a.shape(),
                    xr,
                    xc,
                    b.shape(),
                    (p, q)
                )));
            }
        }
        for i in 0..p {
            for j in 0..q {
                let mut row: SparseRow = Vec::new();
                for (a, u, b) in terms {
                    let (_, xc) = self.shapes[*u];
                    let base = self.offsets[*u];
                    for (ka, av) in a.row(i).iter().enumerate() {
                        if av.is_zero() {
                            continue;
                        }
                        for kb in 0..xc {
                            let bv = b.get(kb, j);
                            if !bv.is_zero() {
                                row.push((base + ka * xc + kb, av * bv));
                            }
                        }
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                let mut merged: SparseRow = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                self.rows.push(merged);
                self.rhs.push(rhs.get(i, j).clone());
            }
        }
        Ok(())
    }

    /// Solves the system; returns the unknown matrices in registration order.
    pub fn solve(self) -> Result<Vec<IntMatrix>> {
        let rhs = self.rhs.iter().map(|v| vec![v.clone()]).collect();
        let x = UnitElimination::new(self.rows.clone(), self.n_vars, rhs, 1).solve()?;
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let mut acc = BigInt::zero();
            for (c, v) in row {
                acc += v * x.get(*c, 0);
            }
            if &acc != b {
                return Err(Error::NoIntegerSolution);
            }
        }
        Ok(self
            .shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| {
                let data = (0..r * c).map(|t| x.get(o + t, 0).clone()).collect();
                IntMatrix::from_vec(r, c, data).expect("unknown shape")
            })
            .collect())
    }
}

struct UnitElimination {
    ncols: usize,
    rhs_cols: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<Vec<BigInt>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    // (row, column, unit) in elimination order
    pivots: Vec<(usize, usize, BigInt)>,
}

impl UnitElimination {
    fn new(rows: Vec<SparseRow>, ncols: usize, rhs: Vec<Vec<BigInt>>, rhs_cols: usize) -> Self {
        let n = rows.len();
        UnitElimination {
            ncols,
            rhs_cols,
            rows,
            rhs,
            row_alive: vec![true; n],
            col_alive: vec![true; ncols],
            pivots: Vec::new(),
        }
    }

    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let mut col_count = vec![0usize; self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            if self.row_alive[i] {
                for (j, _) in row {
                    col_count[*j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !self.row_alive[i] {
                continue;
            }
            for (j, v) in row {
                if v.abs().is_one() {
                    let cost = (row.len() - 1) * (col_count[*j] - 1);
                    if best.is_none_or(|(_, _, c)| cost < c) {
                        best = Some((i, *j, cost));
                        if cost == 0 {
                            return Some((i, *j));
                        }
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn eliminate(&mut self, p: usize, c: usize) {
        let unit = self.rows[p].iter().find(|(j, _)| *j == c).unwrap().1.clone();
        let prow = self.rows[p].clone();
        let prhs = self.rhs[p].clone();
        for i in 0..self.rows.len() {
            if i == p || !self.row_alive[i] {
                continue;
            }
            let Some(v) = self.rows[i].iter().find(|(j, _)| *j == c).map(|(_, v)| v.clone()) else {
                continue;
            };
            // row_i -= (v / unit) * row_p, and unit = ±1
            let f = &v * &unit;
            self.rows[i] = axpy(&self.rows[i], &prow, &f);
            for (t, pv) in prhs.iter().enumerate() {
                if !pv.is_zero() {
                    self.rhs[i][t] -= &f * pv;
                }
            }
        }
        self.row_alive[p] = false;
        self.col_alive[c] = false;
        self.pivots.push((p, c, unit));
    }

    fn solve(mut self) -> Result<IntMatrix> {
        while let Some((p, c)) = self.pick_pivot() {
            self.eliminate(p, c);
        }
        let mut x = IntMatrix::zeros(self.ncols, self.rhs_cols);

        // residual system on the surviving rows and columns
        let live_rows: Vec<usize> =
            (0..self.rows.len()).filter(|&i| self.row_alive[i] && (!self.rows[i].is_empty() || self.rhs[i].iter().any(|v| !v.is_zero()))).collect();
        let live_cols: Vec<usize> = (0..self.ncols).filter(|&j| self.col_alive[j]).collect();
        if !live_rows.is_empty() {
            let mut col_index = vec![usize::MAX; self.ncols];
            for (t, &j) in live_cols.iter().enumerate() {
                col_index[j] = t;
            }
            let mut rm = IntMatrix::zeros(live_rows.len(), live_cols.len());
            let mut rb = IntMatrix::zeros(live_rows.len(), self.rhs_cols);
            for (s, &i) in live_rows.iter().enumerate() {
                for (j, v) in &self.rows[i] {
                    rm.set(s, col_index[*j], v.clone());
                }
                for t in 0..self.rhs_cols {
                    rb.set(s, t, self.rhs[i][t].clone());
                }
            }
            let y = solve_dense(&rm, &rb)?;
            for (s, &j) in live_cols.iter().enumerate() {
                for t in 0..self.rhs_cols {
                    x.set(j, t, y.get(s, t).clone());
                }
            }
        }

        // back substitution through the unit pivots, latest first
        for (p, c, unit) in self.pivots.iter().rev() {
            for t in 0..self.rhs_cols {
                let mut acc = self.rhs[*p][t].clone();
                for (j, v) in &self.rows[*p] {
                    if j != c {
                        let xv = x.get(*j, t);
                        if !xv.is_zero() {
                            acc -= v * xv;
                        }
                    }
                }
                x.set(*c, t, acc * unit);
            }
        }
        Ok(x)
    }
}

fn axpy(a: &[(usize, BigInt)], b: &[(usize, BigInt)], f: &BigInt) -> Vec<(usize, BigInt)> {
    // a - f * b, both sorted by column
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Dense solve through the row HNF of Mᵀ: U·Mᵀ = H gives M·Uᵀ = Hᵀ, which is
/// column echelon and can be solved by forward substitution.
fn solve_dense(m: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let (h, u, pivots) = hnf_with_pivots(&m.transpose());
    let mut y = IntMatrix::zeros(m.cols(), b.cols());
    for t in 0..b.cols() {
        for (i, &pr) in pivots.iter().enumerate() {
            // row pr of Hᵀ·y: Σ_{j ≤ i} H[j][pr] y_j = b[pr]
            let mut acc = b.get(pr, t).clone();
            for j in 0..i {
                let hv = h.get(j, pr);
                if !hv.is_zero() {
                    acc -= hv * y.get(j, t);
                }
            }
            let piv = h.get(i, pr);
            if !acc.is_multiple_of(piv) {
                return Err(Error::NoIntegerSolution);
            }
            y.set(i, t, acc / piv);
        }
    }
    let x = &u.transpose() * &y;
    if &(m * &x) != b {
        return Err(Error::NoIntegerSolution);
    }
    Ok(x)
}

/// Whether M·X = B has an integer solution, without keeping it.
pub fn is_solvable(m: &IntMatrix, b: &IntMatrix) -> bool {
    solve_integral(m, b).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    #[test]
    fn kernel_examples() {
        let m = IntMatrix::from_rows(&[[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        let v = (k.get(0, 0).clone(), k.get(1, 0).clone());
        assert_eq!(v.0, -v.1.clone());
        assert!(v.0.abs().is_one());

        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&IntMatrix::zeros(2, 2));
        assert_eq!(k.cols(), 2);
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn kernel_is_saturated() {
        // ker [2, 4] is spanned by (2,-1), not by a multiple of it
        let m = IntMatrix::from_rows(&[[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
        let (s, _, _) = crate::linalg::snf(&k);
        assert!(s.get(0, 0).is_one() && s.get(1, 1).is_one());
    }

    #[test]
    fn solve_examples() {
        let b = IntMatrix::from_rows(&[[3, -1], [7, 2]]);
        assert_eq!(solve_integral(&IntMatrix::identity(2), &b).unwrap(), b);
        assert_eq!(
            solve_integral(&IntMatrix::from_rows(&[[2]]), &IntMatrix::from_rows(&[[1]])),
            Err(Error::NoIntegerSolution)
        );
        let m = IntMatrix::from_rows(&[[1, 0]]);
        let x = solve_integral(&m, &IntMatrix::from_rows(&[[5]])).unwrap();
        assert_eq!(&m * &x, IntMatrix::from_rows(&[[5]]));
    }

    #[test]
    fn solve_without_unit_entries() {
        let m = IntMatrix::from_rows(&[[2, 3], [4, 9]]);
        let b = IntMatrix::from_rows(&[[5], [13]]);
        let x = solve_integral(&m, &b).unwrap();
        assert_eq!(&m * &x, b);
        let b = IntMatrix::from_rows(&[[1], [0]]);
        assert_eq!(solve_integral(&m, &b), Err(Error::NoIntegerSolution));
    }

    #[test]
    fn matrix_equations_recover_sylvester_solution() {
        // A X + X B = C with a known integer solution
        let a = IntMatrix::from_rows(&[[1, 2], [0, 1]]);
        let b = IntMatrix::from_rows(&[[2, 0, 1], [1, 1, 0], [0, 0, 3]]);
        let x0 = IntMatrix::from_rows(&[[1, -1, 2], [0, 3, -2]]);
        let c = &(&a * &x0) + &(&x0 * &b);
        let mut eqs = MatrixEquations::new();
        let x = eqs.unknown(2, 3);
        let (i2, i3) = (IntMatrix::identity(2), IntMatrix::identity(3));
        eqs.equation(&[(&a, x, &i3), (&i2, x, &b)], &c).unwrap();
        let sol = eqs.solve().unwrap();
        assert_eq!(&(&a * &sol[0]) + &(&sol[0] * &b), c);
    }

    #[test]
    fn solve_mixed_sparse_and_dense() {
        let m = IntMatrix::from_rows(&[[1, 2, 0, 0], [0, 1, 3, 0], [0, 0, 2, 4], [0, 0, 6, 2]]);
        let x0 = IntMatrix::from_rows(&[[1], [-2], [3], [5]]);
        let b = &m * &x0;
        let x = solve_integral(&m, &b).unwrap();
        assert_eq!(&m * &x, b);
        // inconsistent overdetermined system
        let m = IntMatrix::from_rows(&[[1], [1]]);
        assert!(solve_integral(&m, &IntMatrix::from_rows(&[[1], [2]])).is_err());
    }
}
