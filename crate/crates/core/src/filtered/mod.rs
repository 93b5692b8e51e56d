//! k-filtered signed complexes, filtered maps and filtered mapping cones.
//!
//! A filtered complex stores its total differentials with the summand of each total
//! degree split into blocks C_{R,0}, …, C_{R,k} in ascending filtration order. The
//! component d_j : C_{R,p} → C_{R−1,p−j} is a block of d_R; blocks below the diagonal
//! must vanish.

mod dual;
mod graded;
mod truncation;

pub use dual::{admissibility, check_kdual, filtered_dual, tensor_filtered, tensor_theta_sign_is_chain_map, theta_map};
pub use graded::{
    check_fold, check_invariance1, check_invariance2, filtered_contraction_from_graded, fold, graded_contraction,
    graded_torsion, graded_torsion_with, perturb_graded_contraction, split_from_contraction, Fold, FoldReport,
    GradedComplex, GradedContraction, GradedMap, InvarianceReport, Split,
};
pub use truncation::{amalgamate, check_amalgamation, check_truncation_cone, truncation, truncation_ses, Truncation};

use crate::chain::{direct_sum, direct_sum_sign, mapping_cone, suspension, ChainHomotopy, ChainMap, SignedComplex};
use crate::error::{Error, Result};
use crate::linalg::{unimodular_inverse, IntMatrix};
use crate::sign::SignK1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    k: usize,
    /// `blocks[R][p]` = rank C_{R,p}
    blocks: Vec<Vec<usize>>,
    /// `diffs[R − 1]` = d_R
    diffs: Vec<IntMatrix>,
    piece_signs: Vec<SignK1>,
    ambient: SignK1,
}

impl FilteredComplex {
    pub fn new(
        k: usize,
        blocks: Vec<Vec<usize>>,
        diffs: Vec<IntMatrix>,
        piece_signs: Vec<SignK1>,
        ambient: SignK1,
    ) -> Result<Self> {
        let f = FilteredComplex { k, blocks, diffs, piece_signs, ambient };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFiltered(m));
        if self.blocks.is_empty() {
            return bad("a filtered complex needs at least degree 0".into());
        }
        if self.piece_signs.len() != self.k + 1 {
            return bad(format!("{} piece signs for k = {}", self.piece_signs.len(), self.k));
        }
        for (r, row) in self.blocks.iter().enumerate() {
            if row.len() != self.k + 1 {
                return bad(format!("degree {r} lists {} blocks, expected {}", row.len(), self.k + 1));
            }
            if row.iter().enumerate().any(|(p, &m)| p > r && m > 0) {
                return bad(format!("C_{{{r},p}} must vanish for p > {r}"));
            }
        }
        if self.diffs.len() + 1 != self.blocks.len() {
            return bad("one differential per positive degree is required".into());
        }
        for r in 1..self.blocks.len() {
            let want = (self.total_rank(r as i64 - 1), self.total_rank(r as i64));
            if self.diffs[r - 1].shape() != want {
                return bad(format!("d_{r} has shape {:?}, expected {want:?}", self.diffs[r - 1].shape()));
            }
            for p in 0..=self.k as i64 {
                for q in p + 1..=self.k as i64 {
                    if !self.block_of(&self.diffs[r - 1], r as i64 - 1, q, r as i64, p).is_zero() {
                        return Err(Error::NotFiltered(format!("d_{r} raises filtration from {p} to {q}")));
                    }
                }
            }
        }
        for r in 2..self.blocks.len() {
            if !(&self.diffs[r - 2] * &self.diffs[r - 1]).is_zero() {
                return bad(format!("d_{} d_{} is not zero", r - 1, r));
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn top(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn diffs(&self) -> &[IntMatrix] {
        &self.diffs
    }

    pub fn piece_signs(&self) -> &[SignK1] {
        &self.piece_signs
    }

    pub fn ambient(&self) -> SignK1 {
        self.ambient
    }

    pub fn with_signs(&self, piece_signs: Vec<SignK1>, ambient: SignK1) -> Result<Self> {
        FilteredComplex::new(self.k, self.blocks.clone(), self.diffs.clone(), piece_signs, ambient)
    }

    /// rank C_{R,p}, zero outside the stored range.
    pub fn block_rank(&self, r: i64, p: i64) -> usize {
        if r < 0 || p < 0 || p > self.k as i64 {
            return 0;
        }
        self.blocks.get(r as usize).map_or(0, |row| row[p as usize])
    }

    pub fn total_rank(&self, r: i64) -> usize {
        (0..=self.k as i64).map(|p| self.block_rank(r, p)).sum()
    }

    /// Position of block C_{R,p} inside C_R.
    pub fn offset(&self, r: i64, p: i64) -> usize {
        (0..p.min(self.k as i64 + 1)).map(|q| self.block_rank(r, q)).sum()
    }

    pub fn d(&self, r: i64) -> IntMatrix {
        if r >= 1 && (r as usize) <= self.top() {
            self.diffs[r as usize - 1].clone()
        } else {
            IntMatrix::zeros(self.total_rank(r - 1), self.total_rank(r))
        }
    }

    fn block_of(&self, m: &IntMatrix, row_deg: i64, row_p: i64, col_deg: i64, col_p: i64) -> IntMatrix {
        let (rows, cols) = (self.block_rank(row_deg, row_p), self.block_rank(col_deg, col_p));
        if rows == 0 || cols == 0 {
            return IntMatrix::zeros(rows, cols);
        }
        let r0 = self.offset(row_deg, row_p);
        let c0 = self.offset(col_deg, col_p);
        m.submatrix(r0, r0 + rows, c0, c0 + cols)
    }

    /// d_j : C_{R,p} → C_{R−1,p−j}.
    pub fn component(&self, j: i64, r: i64, p: i64) -> IntMatrix {
        self.block_of(&self.d(r), r - 1, p - j, r, p)
    }

    /// G_p: degree t holds C_{p+t,p} with differential d_0.
    pub fn piece(&self, p: usize) -> SignedComplex {
        let p_i = p as i64;
        let top = self.top().saturating_sub(p);
        let ranks: Vec<usize> = (0..=top as i64).map(|t| self.block_rank(p_i + t, p_i)).collect();
        let diffs = (1..=top as i64).map(|t| self.component(0, p_i + t, p_i)).collect();
        SignedComplex::new(ranks, diffs, self.piece_signs[p]).expect("pieces of a filtered complex are complexes")
    }

    pub fn pieces(&self) -> Vec<SignedComplex> {
        (0..=self.k).map(|p| self.piece(p)).collect()
    }

    pub fn piece_chis(&self) -> Vec<i64> {
        (0..=self.k)
            .map(|p| {
                (p..=self.top())
                    .map(|r| {
                        let m = self.block_rank(r as i64, p as i64) as i64;
                        if (r - p) % 2 == 0 {
                            m
                        } else {
                            -m
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// The unfiltered complex; η = ambient + η of G_0 ⊕ S(G_1 ⊕ S(… ⊕ SG_k)).
    pub fn total_complex(&self) -> SignedComplex {
        let ranks = (0..=self.top() as i64).map(|r| self.total_rank(r)).collect();
        let eta = self.ambient + iterated_sign(&self.pieces());
        SignedComplex::new(ranks, self.diffs.clone(), eta).expect("total complex is a complex")
    }

    pub fn associated_graded(&self) -> GradedComplex {
        let pieces = self.pieces();
        let derived = (1..=self.k)
            .map(|p| {
                let mats = (0..=self.top() as i64)
                    .map(|t| self.component(1, p as i64 + t, p as i64).sign_pow(t))
                    .collect();
                ChainMap::new(pieces[p].clone(), pieces[p - 1].clone(), mats).expect("d_* is a chain map")
            })
            .collect();
        let witnesses = (2..=self.k)
            .map(|p| {
                let mats = (0..=self.top() as i64).map(|t| -&self.component(2, p as i64 + t, p as i64)).collect();
                ChainHomotopy::new(mats)
            })
            .collect();
        GradedComplex::new(pieces, derived, witnesses, self.ambient).expect("associated graded is valid")
    }

    /// Transport along a filtration-preserving based isomorphism P_R : C′_R → C_R.
    /// Returns C′ with d′ = P⁻¹dP and the filtered isomorphism C′ → C.
    pub fn change_basis(&self, p: &[IntMatrix]) -> Result<(FilteredComplex, FilteredMap)> {
        if p.len() != self.top() + 1 {
            return Err(Error::ShapeMismatch("one basis change per degree is required".into()));
        }
        let inv: Vec<IntMatrix> = p.iter().map(unimodular_inverse).collect::<Result<_>>()?;
        let diffs = (1..=self.top()).map(|r| &(&inv[r - 1] * &self.diffs[r - 1]) * &p[r]).collect();
        let f2 = FilteredComplex::new(self.k, self.blocks.clone(), diffs, self.piece_signs.clone(), self.ambient)?;
        let iso = FilteredMap::new(f2.clone(), self.clone(), p.to_vec())?;
        Ok((f2, iso))
    }

    /// The same total data viewed as a k′-filtered complex for k′ ≥ k, with empty top blocks.
    pub fn extended(&self, k2: usize) -> FilteredComplex {
        if k2 <= self.k {
            return self.clone();
        }
        let blocks = self.blocks.iter().map(|row| {
            let mut row = row.clone();
            row.resize(k2 + 1, 0);
            row
        });
        let mut signs = self.piece_signs.clone();
        signs.resize(k2 + 1, SignK1::ZERO);
        FilteredComplex { k: k2, blocks: blocks.collect(), diffs: self.diffs.clone(), piece_signs: signs, ambient: self.ambient }
    }

    /// Extends the total degree range with zero blocks.
    pub fn padded(&self, top: usize) -> FilteredComplex {
        if top <= self.top() {
            return self.clone();
        }
        let mut blocks = self.blocks.clone();
        blocks.resize(top + 1, vec![0; self.k + 1]);
        let mut diffs = self.diffs.clone();
        for r in self.top() + 1..=top {
            let rows: usize = blocks[r - 1].iter().sum();
            diffs.push(IntMatrix::zeros(rows, 0));
        }
        FilteredComplex { blocks, diffs, ..self.clone() }
    }

    /// A 0-filtered complex on C with ambient sign zero.
    pub fn trivial(c: &SignedComplex) -> FilteredComplex {
        let blocks = c.ranks().iter().map(|&m| vec![m]).collect();
        FilteredComplex::new(0, blocks, c.diffs().to_vec(), vec![c.eta()], SignK1::ZERO).expect("trivial filtration")
    }
}

/// Ranks-only η of A_0 ⊕ S(A_1 ⊕ S(… ⊕ SA_m)).
pub(crate) fn iterated_sign(pieces: &[SignedComplex]) -> SignK1 {
    let free = |c: &SignedComplex| SignedComplex::free(c.ranks().to_vec(), c.eta());
    let mut acc = match pieces.last() {
        Some(c) => free(c),
        None => return SignK1::ZERO,
    };
    for c in pieces[..pieces.len() - 1].iter().rev() {
        acc = direct_sum(&free(c), &suspension(&acc));
    }
    acc.eta()
}

/// β evaluated on Euler characteristics of graded pieces.
pub(crate) fn beta_chi(a: &[i64], b: &[i64]) -> SignK1 {
    let mut total = 0i64;
    for (p, x) in a.iter().enumerate() {
        for (q, y) in b.iter().enumerate() {
            if p > q && (p - q) % 2 == 0 {
                total += x * y;
            }
        }
    }
    SignK1::from_int(total)
}

/// Σ_{p odd} χ(A_p).
pub(crate) fn chi_odd(a: &[i64]) -> i64 {
    a.iter().skip(1).step_by(2).sum()
}

/// Ambient sign of a graded direct sum 𝔾A ⊕ 𝔾B, evaluated through i_*.
pub(crate) fn graded_sum_ambient(amb_a: SignK1, amb_b: SignK1, chi_a: &[i64], chi_b: &[i64]) -> SignK1 {
    let chi_b_total: i64 = chi_b.iter().enumerate().map(|(p, x)| if p % 2 == 0 { *x } else { -x }).sum();
    amb_a + amb_b + beta_chi(chi_a, chi_b) + SignK1::from_int(chi_odd(chi_a) * chi_b_total)
}

/// A filtration-preserving chain map between k-filtered complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredMap {
    source: FilteredComplex,
    target: FilteredComplex,
    mats: Vec<IntMatrix>,
}

impl FilteredMap {
    pub fn new(source: FilteredComplex, target: FilteredComplex, mut mats: Vec<IntMatrix>) -> Result<Self> {
        if source.k != target.k {
            return Err(Error::NotFiltered(format!("filtration lengths {} and {}", source.k, target.k)));
        }
        let top = source.top().max(target.top());
        while mats.len() < top + 1 {
            let r = mats.len() as i64;
            mats.push(IntMatrix::zeros(target.total_rank(r), source.total_rank(r)));
        }
        mats.truncate(top + 1);
        let f = FilteredMap { source, target, mats };
        for r in 0..=top as i64 {
            let m = &f.mats[r as usize];
            if m.shape() != (f.target.total_rank(r), f.source.total_rank(r)) {
                return Err(Error::InvalidMap(format!("f_{r} has shape {:?}", m.shape())));
            }
            for p in 0..=f.source.k as i64 {
                for q in p + 1..=f.source.k as i64 {
                    if !f.block(r, q, p).is_zero() {
                        return Err(Error::NotFiltered(format!("f_{r} raises filtration from {p} to {q}")));
                    }
                }
            }
            if r >= 1 && &f.target.d(r) * m != &f.mat(r - 1) * &f.source.d(r) {
                return Err(Error::InvalidMap(format!("d f ≠ f d in degree {r}")));
            }
        }
        Ok(f)
    }

    pub fn identity(f: &FilteredComplex) -> Self {
        let mats = (0..=f.top() as i64).map(|r| IntMatrix::identity(f.total_rank(r))).collect();
        FilteredMap { source: f.clone(), target: f.clone(), mats }
    }

    pub fn source(&self) -> &FilteredComplex {
        &self.source
    }

    pub fn target(&self) -> &FilteredComplex {
        &self.target
    }

    pub fn mats(&self) -> &[IntMatrix] {
        &self.mats
    }

    pub fn mat(&self, r: i64) -> IntMatrix {
        if r >= 0 && (r as usize) < self.mats.len() {
            self.mats[r as usize].clone()
        } else {
            IntMatrix::zeros(self.target.total_rank(r), self.source.total_rank(r))
        }
    }

    fn block(&self, r: i64, q: i64, p: i64) -> IntMatrix {
        let (rows, cols) = (self.target.block_rank(r, q), self.source.block_rank(r, p));
        if rows == 0 || cols == 0 {
            return IntMatrix::zeros(rows, cols);
        }
        let r0 = self.target.offset(r, q);
        let c0 = self.source.offset(r, p);
        self.mats[r as usize].submatrix(r0, r0 + rows, c0, c0 + cols)
    }

    /// f_j : C_{R,p} → D_{R,p−j}.
    pub fn component(&self, j: i64, r: i64, p: i64) -> IntMatrix {
        if r < 0 || r as usize >= self.mats.len() {
            return IntMatrix::zeros(self.target.block_rank(r, p - j), self.source.block_rank(r, p));
        }
        self.block(r, p - j, p)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FilteredMap) -> Result<FilteredMap> {
        let top = self.source.top().max(g.target.top()).max(self.target.top()) as i64;
        let mats = (0..=top).map(|r| g.mat(r).try_mul(&self.mat(r))).collect::<Result<_>>()?;
        FilteredMap::new(self.source.clone(), g.target.clone(), mats)
    }

    pub fn total_map(&self) -> ChainMap {
        ChainMap::new(self.source.total_complex(), self.target.total_complex(), self.mats.clone())
            .expect("a filtered map is a chain map")
    }

    /// f_0 on each piece, with the witness g_t = (−1)^{t+1} f_1 of d_* f_0 ≃ f_0 d_*.
    pub fn graded_map(&self) -> GradedMap {
        let (gs, gt) = (self.source.pieces(), self.target.pieces());
        let top = self.source.top().max(self.target.top()) as i64;
        let maps = (0..=self.source.k)
            .map(|p| {
                let p_i = p as i64;
                let mats = (0..=top).map(|t| self.component(0, p_i + t, p_i)).collect();
                ChainMap::new(gs[p].clone(), gt[p].clone(), mats).expect("f_0 is a chain map on pieces")
            })
            .collect();
        let witnesses = (1..=self.source.k)
            .map(|p| {
                let p_i = p as i64;
                ChainHomotopy::new((0..=top).map(|t| self.component(1, p_i + t, p_i).sign_pow(t + 1)).collect())
            })
            .collect();
        GradedMap { maps, witnesses }
    }
}

/// Blocks D_{R,p} ⊕ C_{R−1,p−1} with d_j = (d^D_j, (−1)^{R−1} f_{j−1}; 0, d^C_j).
pub fn filtered_cone(f: &FilteredMap) -> FilteredComplex {
    let (c, d) = (&f.source, &f.target);
    let k = c.k + 1;
    let top = d.top().max(c.top() + 1);
    let blocks: Vec<Vec<usize>> = (0..=top as i64)
        .map(|r| (0..=k as i64).map(|p| d.block_rank(r, p) + c.block_rank(r - 1, p - 1)).collect())
        .collect();
    let diffs = (1..=top as i64)
        .map(|r| {
            assemble(&blocks, r, |p, j| {
                let rows = (d.block_rank(r - 1, p - j), c.block_rank(r - 2, p - j - 1));
                let cols = (d.block_rank(r, p), c.block_rank(r - 1, p - 1));
                let mut m = IntMatrix::zeros(rows.0 + rows.1, cols.0 + cols.1);
                m.set_block(0, 0, &d.component(j, r, p));
                if j >= 1 {
                    m.set_block(0, cols.0, &f.component(j - 1, r - 1, p - 1).sign_pow(r - 1));
                }
                m.set_block(rows.0, cols.0, &c.component(j, r - 1, p - 1));
                m
            })
        })
        .collect();
    let (gd, gc) = (d.extended(k).pieces(), c.pieces());
    let zero = SignedComplex::zero();
    let piece_signs = (0..=k)
        .map(|p| direct_sum_sign(&gd[p], if p >= 1 { &gc[p - 1] } else { &zero }))
        .collect();
    let chi_d = d.piece_chis();
    let mut chi_sc = vec![0];
    chi_sc.extend(c.piece_chis());
    let ambient = graded_sum_ambient(d.ambient, c.ambient, &chi_d, &chi_sc);
    FilteredComplex::new(k, blocks, diffs, piece_signs, ambient).expect("filtered cone is a filtered complex")
}

/// Builds d_R from its components; `comp(p, j)` returns C_{R,p} → C_{R−1,p−j}.
pub(crate) fn assemble(blocks: &[Vec<usize>], r: i64, comp: impl Fn(i64, i64) -> IntMatrix) -> IntMatrix {
    let k = blocks[0].len() as i64 - 1;
    let rank = |deg: i64, p: i64| -> usize {
        if deg < 0 || p < 0 || p > k {
            0
        } else {
            blocks.get(deg as usize).map_or(0, |row| row[p as usize])
        }
    };
    let off = |deg: i64, p: i64| -> usize { (0..p).map(|q| rank(deg, q)).sum() };
    let rows: usize = (0..=k).map(|p| rank(r - 1, p)).sum();
    let cols: usize = (0..=k).map(|p| rank(r, p)).sum();
    let mut m = IntMatrix::zeros(rows, cols);
    for p in 0..=k {
        if rank(r, p) == 0 {
            continue;
        }
        for j in 0..=p {
            if rank(r - 1, p - j) == 0 {
                continue;
            }
            let b = comp(p, j);
            if !b.is_zero() {
                m.set_block(off(r - 1, p - j), off(r, p), &b);
            }
        }
    }
    m
}

/// The permutation total(𝒞^fil(f)) → 𝒞(total f) that regroups the D-blocks before the C-blocks.
pub fn rearrangement_rho(f: &FilteredMap) -> ChainMap {
    let cone = filtered_cone(f);
    let (c, d) = (&f.source, &f.target);
    let total_cone = mapping_cone(&f.total_map());
    let top = cone.top() as i64;
    let mats = (0..=top)
        .map(|r| {
            let mut perm = Vec::with_capacity(cone.total_rank(r));
            let d_total = d.total_rank(r);
            for p in 0..=cone.k as i64 {
                let d_off = d.offset(r, p);
                perm.extend((0..d.block_rank(r, p)).map(|i| d_off + i));
                let c_off = c.offset(r - 1, p - 1);
                perm.extend((0..c.block_rank(r - 1, p - 1)).map(|i| d_total + c_off + i));
            }
            IntMatrix::permutation(&perm)
        })
        .collect();
    ChainMap::new(cone.total_complex(), total_cone, mats).expect("ρ is a chain isomorphism")
}

/// F ⊕ E with blocks F_{R,p} ⊕ E_{R,p}.
pub fn filtered_direct_sum(f: &FilteredComplex, e: &FilteredComplex) -> Result<FilteredComplex> {
    if f.k != e.k {
        return Err(Error::NotFiltered("direct sum of different filtration lengths".into()));
    }
    let k = f.k;
    let top = f.top().max(e.top());
    let blocks: Vec<Vec<usize>> =
        (0..=top as i64).map(|r| (0..=k as i64).map(|p| f.block_rank(r, p) + e.block_rank(r, p)).collect()).collect();
    let diffs = (1..=top as i64)
        .map(|r| assemble(&blocks, r, |p, j| IntMatrix::block_diag(&f.component(j, r, p), &e.component(j, r, p))))
        .collect();
    let (gf, ge) = (f.pieces(), e.pieces());
    let piece_signs = (0..=k).map(|p| direct_sum_sign(&gf[p], &ge[p])).collect();
    let ambient = graded_sum_ambient(f.ambient, e.ambient, &f.piece_chis(), &e.piece_chis());
    FilteredComplex::new(k, blocks, diffs, piece_signs, ambient)
}

/// The inclusion F → F ⊕ E.
pub fn filtered_inclusion(f: &FilteredComplex, e: &FilteredComplex) -> Result<FilteredMap> {
    let sum = filtered_direct_sum(f, e)?;
    let mats = (0..=sum.top() as i64)
        .map(|r| {
            let mut m = IntMatrix::zeros(sum.total_rank(r), f.total_rank(r));
            for p in 0..=f.k as i64 {
                let b = f.block_rank(r, p);
                if b > 0 {
                    m.set_block(sum.offset(r, p), f.offset(r, p), &IntMatrix::identity(b));
                }
            }
            m
        })
        .collect();
    FilteredMap::new(f.clone(), sum, mats)
}

#[cfg(test)]
mod tests;
