//! Truncations T_{ℓ,r} = S^{−r}(F_ℓ C / F_{r−1} C), their boundary maps and amalgamation.

use super::{iterated_sign, FilteredComplex};
use crate::chain::{mapping_cone, suspension, ChainMap, SignedComplex};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub ell: usize,
    pub r: usize,
    pub complex: SignedComplex,
    /// ∂_{ℓ,r} : T_{ℓ,r} → G_{r−1}, present when r ≥ 1
    pub boundary: Option<ChainMap>,
}

fn range_complex(f: &FilteredComplex, ell: usize, r: usize) -> SignedComplex {
    let (ell_i, r_i) = (ell as i64, r as i64);
    let top = f.top().saturating_sub(r) as i64;
    let rank = |u: i64| -> usize { (r_i..=ell_i).map(|p| f.block_rank(u + r_i, p)).sum() };
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    let diffs = (1..=top)
        .map(|u| {
            let d = f.d(u + r_i);
            let (r0, c0) = (f.offset(u + r_i - 1, r_i), f.offset(u + r_i, r_i));
            d.submatrix(r0, r0 + rank(u - 1), c0, c0 + rank(u))
        })
        .collect();
    let pieces: Vec<SignedComplex> = (r..=ell).map(|p| f.piece(p)).collect();
    SignedComplex::new(ranks, diffs, iterated_sign(&pieces)).expect("truncations are complexes")
}

/// T_{ℓ,r} for 0 ≤ r ≤ ℓ ≤ k, with η of G_r ⊕ S(G_{r+1} ⊕ … ⊕ SG_ℓ).
pub fn truncation(f: &FilteredComplex, ell: usize, r: usize) -> Result<Truncation> {
    if r > ell || ell > f.k() {
        return Err(Error::BadBounds(format!("need 0 ≤ r ≤ ℓ ≤ {}, got r = {r}, ℓ = {ell}", f.k())));
    }
    let complex = range_complex(f, ell, r);
    let boundary = if r >= 1 {
        let target = f.piece(r - 1);
        let r_i = r as i64;
        let mats = (0..=complex.top() as i64)
            .map(|s| {
                let mut m = IntMatrix::zeros(target.rank(s), complex.rank(s));
                let mut col = 0;
                for p in r_i..=ell as i64 {
                    let b = f.component(p - r_i + 1, s + r_i, p);
                    m.set_block(0, col, &b.sign_pow(s));
                    col += b.cols();
                }
                m
            })
            .collect();
        Some(ChainMap::new(complex.clone(), target, mats)?)
    } else {
        None
    };
    Ok(Truncation { ell, r, complex, boundary })
}

/// T_{ℓ,r−1} = 𝒞(∂_{ℓ,r} : T_{ℓ,r} → G_{r−1}) as signed complexes.
pub fn check_truncation_cone(f: &FilteredComplex, ell: usize, r: usize) -> Result<bool> {
    if r == 0 {
        return Err(Error::BadBounds("the cone identity needs r ≥ 1".into()));
    }
    let t = truncation(f, ell, r)?;
    let lower = truncation(f, ell, r - 1)?;
    let cone = mapping_cone(t.boundary.as_ref().expect("r ≥ 1"));
    Ok(cone.same_data(&lower.complex))
}

fn suspend_times(c: &SignedComplex, n: usize) -> SignedComplex {
    (0..n).fold(c.clone(), |acc, _| suspension(&acc))
}

/// T_{ℓ₁,r} → T_{ℓ₂,r} → S^{ℓ₁−r+1} T_{ℓ₂,ℓ₁+1}, the coordinate inclusion and projection.
pub fn truncation_ses(f: &FilteredComplex, l1: usize, l2: usize, r: usize) -> Result<(ChainMap, ChainMap)> {
    if !(r <= l1 && l1 < l2 && l2 <= f.k()) {
        return Err(Error::BadBounds(format!("need r ≤ ℓ₁ < ℓ₂ ≤ {}", f.k())));
    }
    let a = range_complex(f, l1, r);
    let b = range_complex(f, l2, r);
    let c = suspend_times(&range_complex(f, l2, l1 + 1), l1 - r + 1);
    let top = b.top().max(c.top()) as i64;
    let inc = (0..=top)
        .map(|u| {
            let mut m = IntMatrix::zeros(b.rank(u), a.rank(u));
            m.set_block(0, 0, &IntMatrix::identity(a.rank(u)));
            m
        })
        .collect();
    let proj = (0..=top)
        .map(|u| {
            let mut m = IntMatrix::zeros(c.rank(u), b.rank(u));
            m.set_block(0, a.rank(u), &IntMatrix::identity(c.rank(u)));
            m
        })
        .collect();
    let i = ChainMap::new(a, b.clone(), inc)?;
    let p = ChainMap::new(b, c, proj)?;
    for u in 0..=top {
        if i.target().rank(u) != i.source().rank(u) + p.target().rank(u) {
            return Err(Error::InvalidFiltered(format!("sequence is not exact in degree {u}")));
        }
    }
    Ok((i, p))
}

/// Merges the top two filtration blocks: C′_{R,k−1} = C_{R,k−1} ⊕ C_{R,k}.
pub fn amalgamate(f: &FilteredComplex) -> Result<FilteredComplex> {
    let k = f.k();
    if k == 0 {
        return Err(Error::BadBounds("amalgamation needs k ≥ 1".into()));
    }
    let blocks = f
        .blocks()
        .iter()
        .map(|row| {
            let mut merged = row[..k].to_vec();
            merged[k - 1] += row[k];
            merged
        })
        .collect();
    let mut signs = f.piece_signs()[..k].to_vec();
    signs[k - 1] = iterated_sign(&[f.piece(k - 1), f.piece(k)]);
    FilteredComplex::new(k - 1, blocks, f.diffs().to_vec(), signs, f.ambient())
}

/// Amalgamation keeps the total signed complex and its new top piece is 𝒞(d_* : G_k → G_{k−1}).
pub fn check_amalgamation(f: &FilteredComplex) -> Result<bool> {
    let a = amalgamate(f)?;
    let same_total = a.total_complex() == f.total_complex();
    let g = f.associated_graded();
    let cone = mapping_cone(g.d_star(f.k()));
    Ok(same_total && cone.same_data(&a.piece(f.k() - 1)))
}
