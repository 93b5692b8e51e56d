//! Filtered duals, the θ comparison map and tensor product filtrations.

use super::{assemble, beta_chi, FilteredComplex};
use crate::chain::{direct_sum, dual_complex, ChainMap, SignedComplex};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::sign::SignK1;

/// Checks n-admissibility: C_{R,p} = 0 unless 0 ≤ R − p ≤ n, and every piece has the
/// integral homology of its n-dual (over ℤ this makes them chain equivalent).
pub fn admissibility(f: &FilteredComplex, n: usize) -> Result<()> {
    for (r, row) in f.blocks().iter().enumerate() {
        for (p, &m) in row.iter().enumerate() {
            if m > 0 && r > p + n {
                return Err(Error::NotAdmissible(format!("C_{{{r},{p}}} ≠ 0 lies above piece dimension {n}")));
            }
        }
    }
    for (p, g) in f.pieces().iter().enumerate() {
        let g = g.trimmed();
        let dual = dual_complex(&g, n)?;
        let (h, hd) = (g.padded(n).homology(), dual.homology());
        if h != hd {
            return Err(Error::NotAdmissible(format!("G_{p} is not homology equivalent to its {n}-dual")));
        }
    }
    Ok(())
}

/// F^dual with blocks C^*_{n+k−R, k−p} and d^dual_j = (−1)^{R+p+j(n+R)} d_jᵀ.
pub fn filtered_dual(f: &FilteredComplex, n: usize) -> Result<FilteredComplex> {
    admissibility(f, n)?;
    let k = f.k();
    let top = n + k;
    let big_n = top as i64;
    let (k_i, n_i) = (k as i64, n as i64);
    let blocks: Vec<Vec<usize>> =
        (0..=big_n).map(|r| (0..=k_i).map(|p| f.block_rank(big_n - r, k_i - p)).collect()).collect();
    let diffs = (1..=big_n)
        .map(|r| {
            assemble(&blocks, r, |p, j| {
                f.component(j, big_n - r + 1, k_i - p + j).transpose().sign_pow(r + p + j * (n_i + r))
            })
        })
        .collect();
    let pieces = f.pieces();
    let piece_signs =
        (0..=k).map(|p| dual_complex(&pieces[k - p].trimmed(), n).map(|c| c.eta())).collect::<Result<_>>()?;
    let chis = f.piece_chis();
    let alpha: i64 = chis.iter().enumerate().filter(|(r, _)| matches!((r + 4 - k % 4) % 4, 2 | 3)).map(|(_, x)| x).sum();
    let ambient = f.ambient() + beta_chi(&chis, &chis) + SignK1::from_int(alpha);
    FilteredComplex::new(k, blocks, diffs, piece_signs, ambient)
}

/// Structural identity: G_p(F^dual) = G_{k−p}(C)^{n−*} as signed complexes, and
/// the derived differential of the dual at position p is (−1)^p times the n-dual of d_*.
pub fn check_kdual(f: &FilteredComplex, n: usize) -> Result<bool> {
    let fd = filtered_dual(f, n)?;
    let k = f.k();
    let g = f.associated_graded();
    let gd = fd.associated_graded();
    for p in 0..=k {
        let expect = dual_complex(&f.piece(k - p).trimmed(), n)?;
        if !expect.same_data(&fd.piece(p)) {
            return Ok(false);
        }
    }
    for p in 1..=k {
        let ds = g.d_star(k - p + 1);
        for t in 0..=n as i64 {
            let want = ds.mat(n as i64 - t).transpose().sign_pow(p as i64);
            if gd.d_star(p).mat(t) != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// θ : C^{n+k−*} → F^dual, a block reversal with sign (−1)^{p(n+R+1)} on dual block (R, p).
pub fn theta_map(f: &FilteredComplex, n: usize) -> Result<ChainMap> {
    let fd = filtered_dual(f, n)?;
    let k = f.k() as i64;
    let big_n = (n + f.k()) as i64;
    let source = dual_complex(&f.total_complex(), big_n as usize)?;
    let target = fd.total_complex();
    let mats = (0..=big_n)
        .map(|r| {
            let mut m = IntMatrix::zeros(fd.total_rank(r), f.total_rank(big_n - r));
            for p in 0..=k {
                let b = fd.block_rank(r, p);
                if b > 0 {
                    let sign = IntMatrix::identity(b).sign_pow(p * (n as i64 + r + 1));
                    m.set_block(fd.offset(r, p), f.offset(big_n - r, k - p), &sign);
                }
            }
            m
        })
        .collect();
    ChainMap::new(source, target, mats)
}

/// Whether the diagonal sign (−1)^{(k+n+r)(s+n)} on C^*_r ⊗ D^*_s (in place of the block
/// signs used by [`theta_map`]) also commutes with the differentials.
pub fn tensor_theta_sign_is_chain_map(c: &SignedComplex, d: &SignedComplex) -> Result<bool> {
    let (k, n) = (c.top() as i64, d.top() as i64);
    let f = tensor_filtered(c, d);
    let fd = filtered_dual(&f, n as usize)?;
    let big_n = n + k;
    let mats: Vec<IntMatrix> = (0..=big_n)
        .map(|r| {
            let mut m = IntMatrix::zeros(fd.total_rank(r), f.total_rank(big_n - r));
            for p in 0..=k {
                let b = fd.block_rank(r, p);
                if b > 0 {
                    // dual block (R, p) is C^*_{k−p} ⊗ D^*_{n−R+p}
                    let (cr, ds) = (k - p, n - r + p);
                    let sign = IntMatrix::identity(b).sign_pow((k + n + cr) * (ds + n));
                    m.set_block(fd.offset(r, p), f.offset(big_n - r, k - p), &sign);
                }
            }
            m
        })
        .collect();
    let source = dual_complex(&f.total_complex(), big_n as usize)?;
    Ok(ChainMap::new(source, fd.total_complex(), mats).is_ok())
}

fn copies(d: &SignedComplex, m: usize) -> SignedComplex {
    (0..m).fold(SignedComplex::zero(), |acc, _| direct_sum(&acc, d))
}

/// The filtration of C ⊗ D by the degree of C: blocks C_s ⊗ D_{R−s}, d_0 = 1 ⊗ d^D and
/// d_1 = (−1)^{R−s} d^C ⊗ 1. Piece s is rank C_s copies of D; the ambient sign is χ(D)·η_C.
pub fn tensor_filtered(c: &SignedComplex, d: &SignedComplex) -> FilteredComplex {
    let k = c.top() as i64;
    let top = c.top() + d.top();
    let blocks: Vec<Vec<usize>> =
        (0..=top as i64).map(|r| (0..=k).map(|s| c.rank(s) * d.rank(r - s)).collect()).collect();
    let diffs = (1..=top as i64)
        .map(|r| {
            assemble(&blocks, r, |s, j| match j {
                0 => IntMatrix::identity(c.rank(s)).kron(&d.d(r - s)),
                1 => c.d(s).kron(&IntMatrix::identity(d.rank(r - s))).sign_pow(r - s),
                _ => IntMatrix::zeros(c.rank(s - j) * d.rank(r - 1 - s + j), c.rank(s) * d.rank(r - s)),
            })
        })
        .collect();
    let piece_signs = (0..=k).map(|s| copies(d, c.rank(s)).eta()).collect();
    let ambient = SignK1::from_int(d.euler_char() * c.eta().bit() as i64);
    FilteredComplex::new(c.top(), blocks, diffs, piece_signs, ambient).expect("tensor filtration is valid")
}
