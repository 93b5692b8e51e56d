//! Associated graded complexes, graded contractions, graded torsion and folding.

use super::{FilteredComplex, FilteredMap};
use crate::chain::{
    direct_sum, is_homotopy, mapping_cone, same_ranks, ChainHomotopy, ChainMap, SignedComplex,
};
use crate::error::{Error, Result};
use crate::linalg::{unimodular_inverse, IntMatrix, MatrixEquations};
use crate::sign::SignK1;
use crate::torsion::{tau_new_map, torsion_contractible, Contraction};

/// Pieces G_0, …, G_k with derived differentials d_* : G_p → G_{p−1} and homotopies
/// g : G_p → G_{p−2} witnessing d_* d_* = dg + gd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pieces: Vec<SignedComplex>,
    derived: Vec<ChainMap>,
    witnesses: Vec<ChainHomotopy>,
    ambient: SignK1,
}

impl GradedComplex {
    pub fn new(
        pieces: Vec<SignedComplex>,
        derived: Vec<ChainMap>,
        witnesses: Vec<ChainHomotopy>,
        ambient: SignK1,
    ) -> Result<Self> {
        let k = pieces.len().checked_sub(1).ok_or_else(|| Error::InvalidFiltered("no pieces".into()))?;
        if derived.len() != k || witnesses.len() != k.saturating_sub(1) {
            return Err(Error::InvalidFiltered("need k derived maps and k − 1 witnesses".into()));
        }
        for p in 1..=k {
            let f = &derived[p - 1];
            if !same_ranks(f.source(), &pieces[p]) || !same_ranks(f.target(), &pieces[p - 1]) {
                return Err(Error::InvalidFiltered(format!("d_* out of G_{p} has the wrong shape")));
            }
        }
        for p in 2..=k {
            let square = derived[p - 1].then(&derived[p - 2])?;
            let zero = ChainMap::zero(&pieces[p], &pieces[p - 2]);
            if !is_homotopy(&square, &zero, &witnesses[p - 2]) {
                return Err(Error::InvalidFiltered(format!("witness for d_* d_* on G_{p} fails")));
            }
        }
        Ok(GradedComplex { pieces, derived, witnesses, ambient })
    }

    pub fn k(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn pieces(&self) -> &[SignedComplex] {
        &self.pieces
    }

    pub fn piece(&self, p: usize) -> &SignedComplex {
        &self.pieces[p]
    }

    /// d_* : G_p → G_{p−1} for p ≥ 1.
    pub fn d_star(&self, p: usize) -> &ChainMap {
        &self.derived[p - 1]
    }

    pub fn witness(&self, p: usize) -> &ChainHomotopy {
        &self.witnesses[p - 2]
    }

    pub fn ambient(&self) -> SignK1 {
        self.ambient
    }

    fn top(&self) -> usize {
        self.pieces.iter().map(|c| c.top()).max().unwrap_or(0)
    }

    fn rank(&self, p: i64, t: i64) -> usize {
        if p < 0 || p as usize >= self.pieces.len() {
            0
        } else {
            self.pieces[p as usize].rank(t)
        }
    }

    /// d_* : G_p(t) → G_{p−1}(t), zero-shaped outside 1..=k.
    fn ds(&self, p: i64, t: i64) -> IntMatrix {
        if p >= 1 && (p as usize) <= self.k() {
            self.derived[p as usize - 1].mat(t)
        } else {
            IntMatrix::zeros(self.rank(p - 1, t), self.rank(p, t))
        }
    }

    fn dd(&self, p: i64, t: i64) -> IntMatrix {
        if p >= 0 && (p as usize) < self.pieces.len() {
            self.pieces[p as usize].d(t)
        } else {
            IntMatrix::zeros(self.rank(p, t - 1), self.rank(p, t))
        }
    }
}

/// The effect of a filtered map on associated graded complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    /// f_0 : G_p(C) → G_p(D)
    pub maps: Vec<ChainMap>,
    /// `witnesses[p − 1]` : G_p(C) → G_{p−1}(D) with d_* f_0 − f_0 d_* = dg + gd
    pub witnesses: Vec<ChainHomotopy>,
}

impl GradedMap {
    pub fn is_valid(&self, c: &GradedComplex, d: &GradedComplex) -> bool {
        (1..self.maps.len()).all(|p| {
            let lhs = match (self.maps[p].then(d.d_star(p)), c.d_star(p).then(&self.maps[p - 1])) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return false,
            };
            is_homotopy(&lhs.0, &lhs.1, &self.witnesses[p - 1])
        })
    }
}

/// Chain maps e_p : G_p → G_{p+1} and homotopies h_p on G_p with
/// d_* e_p + e_{p−1} d_* + d h_p + h_p d = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedContraction {
    e: Vec<Vec<IntMatrix>>,
    h: Vec<Vec<IntMatrix>>,
}

impl GradedContraction {
    /// e_p(t) : G_p(t) → G_{p+1}(t).
    pub fn e(&self, g: &GradedComplex, p: i64, t: i64) -> IntMatrix {
        self.e
            .get(p.max(0) as usize)
            .filter(|_| p >= 0)
            .and_then(|v| v.get(t.max(0) as usize).filter(|_| t >= 0))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(g.rank(p + 1, t), g.rank(p, t)))
    }

    /// h_p(t) : G_p(t) → G_p(t+1).
    pub fn h(&self, g: &GradedComplex, p: i64, t: i64) -> IntMatrix {
        self.h
            .get(p.max(0) as usize)
            .filter(|_| p >= 0)
            .and_then(|v| v.get(t.max(0) as usize).filter(|_| t >= 0))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(g.rank(p, t + 1), g.rank(p, t)))
    }

    pub fn is_valid_for(&self, g: &GradedComplex) -> bool {
        let top = g.top() as i64;
        for p in 0..=g.k() as i64 {
            for t in 0..=top {
                let e = self.e(g, p, t);
                if t >= 1 && &g.dd(p + 1, t) * &e != &self.e(g, p, t - 1) * &g.dd(p, t) {
                    return false;
                }
                let lhs = &(&(&g.ds(p + 1, t) * &e) + &(&self.e(g, p - 1, t) * &g.ds(p, t)))
                    + &(&(&g.dd(p, t + 1) * &self.h(g, p, t)) + &(&self.h(g, p, t - 1) * &g.dd(p, t)));
                if !lhs.is_identity() {
                    return false;
                }
            }
        }
        true
    }
}

/// Solves for (e, h) one piece at a time, starting from G_0; `None` when G is not
/// contractible.
pub fn graded_contraction(g: &GradedComplex) -> Option<GradedContraction> {
    let k = g.k() as i64;
    let top = g.top() as i64;
    let mut e: Vec<Vec<IntMatrix>> = Vec::new();
    let mut h: Vec<Vec<IntMatrix>> = Vec::new();
    for p in 0..=k {
        let mut eqs = MatrixEquations::new();
        let eu: Vec<usize> = (0..=top).map(|t| eqs.unknown(g.rank(p + 1, t), g.rank(p, t))).collect();
        let hu: Vec<usize> = (0..=top).map(|t| eqs.unknown(g.rank(p, t + 1), g.rank(p, t))).collect();
        let partial = GradedContraction { e: e.clone(), h: vec![] };
        for t in 0..=top {
            let np = g.rank(p, t);
            let id_p = IntMatrix::identity(np);
            let ds_next = g.ds(p + 1, t);
            let d_up = g.dd(p, t + 1);
            let d_here = g.dd(p, t);
            let rhs = &id_p - &(&partial.e(g, p - 1, t) * &g.ds(p, t));
            let mut terms = vec![(&ds_next, eu[t as usize], &id_p), (&d_up, hu[t as usize], &id_p)];
            if t >= 1 {
                terms.push((&id_p, hu[t as usize - 1], &d_here));
            }
            eqs.equation(&terms, &rhs).ok()?;
            if t >= 1 {
                let dq = g.dd(p + 1, t);
                let neg = -&IntMatrix::identity(g.rank(p + 1, t - 1));
                let zero = IntMatrix::zeros(g.rank(p + 1, t - 1), np);
                eqs.equation(&[(&dq, eu[t as usize], &id_p), (&neg, eu[t as usize - 1], &d_here)], &zero).ok()?;
            }
        }
        let sol = eqs.solve().ok()?;
        let n = (top + 1) as usize;
        e.push(sol[..n].to_vec());
        h.push(sol[n..].to_vec());
    }
    let gc = GradedContraction { e, h };
    debug_assert!(gc.is_valid_for(g));
    Some(gc)
}

/// Another graded contraction: e′_p = e_p + dξ_p + ξ_p d and h′_p = h_p − d_*ξ_p − ξ_{p−1}d_*,
/// with ξ_p : G_p → G_{p+1} of internal degree one filled cyclically from `seed`.
pub fn perturb_graded_contraction(g: &GradedComplex, gc: &GradedContraction, seed: &[i64]) -> GradedContraction {
    let k = g.k() as i64;
    let top = g.top() as i64;
    let mut n = 0usize;
    let mut next = || {
        let v = if seed.is_empty() { 0 } else { seed[n % seed.len()] };
        n += 1;
        v
    };
    // xi[p][t + 1] = ξ_p(t) : G_p(t) → G_{p+1}(t+1)
    let xi: Vec<Vec<IntMatrix>> = (0..=k)
        .map(|p| {
            (-1..=top)
                .map(|t| {
                    let mut m = IntMatrix::zeros(g.rank(p + 1, t + 1), g.rank(p, t));
                    if p < k {
                        for i in 0..m.rows() {
                            for j in 0..m.cols() {
                                m.set(i, j, next().into());
                            }
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    let x = |p: i64, t: i64| -> IntMatrix {
        if p < 0 || p > k || t < -1 || t > top {
            IntMatrix::zeros(g.rank(p + 1, t + 1), g.rank(p, t))
        } else {
            xi[p as usize][(t + 1) as usize].clone()
        }
    };
    let e = (0..=k)
        .map(|p| {
            (0..=top)
                .map(|t| &(&gc.e(g, p, t) + &(&g.dd(p + 1, t + 1) * &x(p, t))) + &(&x(p, t - 1) * &g.dd(p, t)))
                .collect()
        })
        .collect();
    let h = (0..=k)
        .map(|p| {
            (0..=top)
                .map(|t| &(&gc.h(g, p, t) - &(&g.ds(p + 1, t + 1) * &x(p, t))) - &(&x(p - 1, t) * &g.ds(p, t)))
                .collect()
        })
        .collect();
    GradedContraction { e, h }
}

/// Γ = βα⁻¹ where β carries h_p on the diagonal and (−1)^{R−p} e_p one filtration step up,
/// and α = dβ + βd is block unitriangular.
pub fn filtered_contraction_from_graded(f: &FilteredComplex, gc: &GradedContraction) -> Result<Contraction> {
    let g = f.associated_graded();
    if !gc.is_valid_for(&g) {
        return Err(Error::AlphaNotInvertible);
    }
    let c = f.total_complex();
    let top = f.top() as i64;
    let k = f.k() as i64;
    let beta: Vec<IntMatrix> = (-1..=top)
        .map(|r| {
            let mut m = IntMatrix::zeros(f.total_rank(r + 1), f.total_rank(r));
            if r < 0 {
                return m;
            }
            for p in 0..=k {
                if f.block_rank(r, p) == 0 {
                    continue;
                }
                let t = r - p;
                let hb = gc.h(&g, p, t);
                if f.block_rank(r + 1, p) > 0 {
                    m.set_block(f.offset(r + 1, p), f.offset(r, p), &hb);
                }
                if p < k && f.block_rank(r + 1, p + 1) > 0 {
                    m.set_block(f.offset(r + 1, p + 1), f.offset(r, p), &gc.e(&g, p, t).sign_pow(t));
                }
            }
            m
        })
        .collect();
    let b = |r: i64| &beta[(r + 1) as usize];
    let mut gamma = Vec::with_capacity(top as usize + 1);
    for r in 0..=top {
        let alpha = &(&c.d(r + 1) * b(r)) + &(b(r - 1) * &c.d(r));
        for p in 0..=k {
            for q in 0..=k {
                let (rows, cols) = (f.block_rank(r, q), f.block_rank(r, p));
                if rows == 0 || cols == 0 {
                    continue;
                }
                let (r0, c0) = (f.offset(r, q), f.offset(r, p));
                let blk = alpha.submatrix(r0, r0 + rows, c0, c0 + cols);
                let ok = if q == p { blk.is_identity() } else if q > p { blk.is_zero() } else { true };
                if !ok {
                    return Err(Error::AlphaNotInvertible);
                }
            }
        }
        let inv = unimodular_inverse(&alpha).map_err(|_| Error::AlphaNotInvertible)?;
        gamma.push(b(r) * &inv);
    }
    Contraction::new(&c, gamma)
}

fn fold_sum(cs: &[&SignedComplex]) -> SignedComplex {
    cs.iter().fold(SignedComplex::zero(), |acc, c| direct_sum(&acc, c))
}

/// i_*τ^NEW of G computed from a graded contraction.
///
/// The chain map d_* + e : ⊕_{p odd} G_p → ⊕_{p even} G_p, with both sums formed left to
/// right in ascending p, has its absolute torsion added to the ambient sign.
pub fn graded_torsion_with(g: &GradedComplex, gc: &GradedContraction) -> Result<SignK1> {
    let k = g.k() as i64;
    let odd: Vec<i64> = (0..=k).filter(|p| p % 2 == 1).collect();
    let even: Vec<i64> = (0..=k).filter(|p| p % 2 == 0).collect();
    let source = fold_sum(&odd.iter().map(|&p| &g.pieces[p as usize]).collect::<Vec<_>>());
    let target = fold_sum(&even.iter().map(|&p| &g.pieces[p as usize]).collect::<Vec<_>>());
    let top = g.top() as i64;
    let mats = (0..=top)
        .map(|t| {
            let rows: Vec<usize> = even.iter().map(|&p| g.rank(p, t)).collect();
            let cols: Vec<usize> = odd.iter().map(|&p| g.rank(p, t)).collect();
            let blocks: Vec<Vec<Option<IntMatrix>>> = even
                .iter()
                .map(|&q| {
                    odd.iter()
                        .map(|&p| {
                            if q == p - 1 {
                                Some(g.ds(p, t))
                            } else if q == p + 1 {
                                Some(gc.e(g, p, t))
                            } else {
                                None
                            }
                        })
                        .collect()
                })
                .collect();
            IntMatrix::from_blocks(&rows, &cols, &blocks)
        })
        .collect();
    let map = ChainMap::new(source, target, mats)?;
    Ok(tau_new_map(&map)? + g.ambient)
}

pub fn graded_torsion(g: &GradedComplex) -> Result<SignK1> {
    let gc = graded_contraction(g).ok_or(Error::NotContractible)?;
    graded_torsion_with(g, &gc)
}

/// Both sides of an invariance identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub total: SignK1,
    pub graded: SignK1,
    pub holds: bool,
}

/// τ^NEW(C, η_C) against i_*τ^NEW(G_*(C)) for a filtered contractible complex.
pub fn check_invariance1(f: &FilteredComplex) -> Result<InvarianceReport> {
    let g = f.associated_graded();
    let graded = graded_torsion(&g)?;
    let total = torsion_contractible(&f.total_complex())?;
    Ok(InvarianceReport { total, graded, holds: total == graded })
}

/// τ^NEW of the total map against i_*τ^NEW of the graded filtered cone.
pub fn check_invariance2(f: &FilteredMap) -> Result<InvarianceReport> {
    let total = tau_new_map(&f.total_map())?;
    let cone = super::filtered_cone(f);
    let graded = graded_torsion(&cone.associated_graded()).map_err(|e| match e {
        Error::NotContractible => Error::NotEquivalence,
        other => other,
    })?;
    Ok(InvarianceReport { total, graded, holds: total == graded })
}

/// Γ : G_{k−1} → G_k and h on G_k with dh + hd = 1 − Γd_*, exhibiting d_* as a split injection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub gamma: ChainMap,
    pub h: ChainHomotopy,
}

pub fn split_from_contraction(g: &GradedComplex, gc: &GradedContraction) -> Result<Split> {
    let k = g.k();
    if k == 0 {
        return Err(Error::NotSplit("nothing to fold in a single piece".into()));
    }
    let top = g.top() as i64;
    let ki = k as i64;
    let gamma_mats = (0..=top).map(|t| gc.e(g, ki - 1, t)).collect();
    let gamma = ChainMap::new(g.pieces[k - 1].clone(), g.pieces[k].clone(), gamma_mats)?;
    let h = ChainHomotopy::new((0..=top).map(|t| gc.h(g, ki, t)).collect());
    Ok(Split { gamma, h })
}

/// The folded graded complex and the maps of the direct sum system used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fold {
    pub folded: GradedComplex,
    /// (g; Γ) : G_{k−1} → 𝒞(d_*) ⊕ G_k
    pub iso: ChainMap,
    /// (Δ d_*) : 𝒞(d_*) ⊕ G_k → G_{k−1}
    pub inverse: ChainMap,
    pub torsion_value: SignK1,
}

/// Replaces G_{k−1} ← G_k by the single piece 𝒞(d_*) with derived differential d_*Δ.
pub fn fold(g: &GradedComplex, split: &Split) -> Result<Fold> {
    let k = g.k();
    if k == 0 {
        return Err(Error::NotSplit("nothing to fold in a single piece".into()));
    }
    let (a, b) = (&g.pieces[k], &g.pieces[k - 1]);
    let ds = g.d_star(k);
    let gamma = &split.gamma;
    if !same_ranks(gamma.source(), b) || !same_ranks(gamma.target(), a) {
        return Err(Error::NotSplit("Γ has the wrong shape".into()));
    }
    let gf = ds.then(gamma)?;
    if !is_homotopy(&ChainMap::identity(a), &gf, &split.h) {
        return Err(Error::NotSplit("h is not a homotopy 1 ≃ Γd_*".into()));
    }
    let cone = mapping_cone(ds);
    let top = cone.top().max(b.top()) as i64;
    let sum = direct_sum(&cone, a);
    let iso_mats = (0..=top)
        .map(|t| {
            let mut m = IntMatrix::zeros(sum.rank(t), b.rank(t));
            m.set_block(0, 0, &IntMatrix::identity(b.rank(t)));
            m.set_block(cone.rank(t), 0, &gamma.mat(t));
            m
        })
        .collect();
    let iso = ChainMap::new(b.clone(), sum.clone(), iso_mats)?;
    let delta_mats: Vec<IntMatrix> = (0..=top)
        .map(|t| {
            let left = &IntMatrix::identity(b.rank(t)) - &(&ds.mat(t) * &gamma.mat(t));
            let right = (&ds.mat(t) * &split.h.mat(t - 1, a.rank(t), a.rank(t - 1))).sign_pow(t + 1);
            IntMatrix::hstack(&left, &right)
        })
        .collect();
    let delta = ChainMap::new(cone.clone(), b.clone(), delta_mats.clone())?;
    let inverse_mats = (0..=top).map(|t| IntMatrix::hstack(&delta_mats[t as usize], &ds.mat(t))).collect();
    let inverse = ChainMap::new(sum, b.clone(), inverse_mats)?;

    let mut pieces = g.pieces[..k - 1].to_vec();
    pieces.push(cone.clone());
    let mut derived = g.derived[..k.saturating_sub(2)].to_vec();
    let mut witnesses = g.witnesses[..k.saturating_sub(3)].to_vec();
    if k >= 2 {
        derived.push(delta.then(g.d_star(k - 1))?);
    }
    if k >= 3 {
        let w = g.witness(k - 1);
        let top_c = cone.top() as i64;
        let c2 = &g.pieces[k - 3];
        let mats = (0..=top_c).map(|t| &w.mat(t, c2.rank(t + 1), b.rank(t)) * &delta.mat(t)).collect();
        witnesses.push(ChainHomotopy::new(mats));
    }
    let folded = GradedComplex::new(pieces, derived, witnesses, g.ambient)?;
    let torsion_value = tau_new_map(&iso)?;
    Ok(Fold { folded, iso, inverse, torsion_value })
}

/// The checks attached to a fold of a contractible graded complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldReport {
    pub tau_iso_map: SignK1,
    pub tau_inverse_map: SignK1,
    pub torsion_before: SignK1,
    pub torsion_after: SignK1,
    pub torsion_value: SignK1,
    pub holds: bool,
}

pub fn check_fold(g: &GradedComplex) -> Result<FoldReport> {
    let gc = graded_contraction(g).ok_or(Error::NotContractible)?;
    let split = split_from_contraction(g, &gc)?;
    let fd = fold(g, &split)?;
    let tau_iso_map = fd.torsion_value;
    let tau_inverse_map = tau_new_map(&fd.inverse)?;
    let torsion_before = graded_torsion_with(g, &gc)?;
    let torsion_after = graded_torsion(&fd.folded)?;
    let holds = tau_iso_map.is_zero() && tau_inverse_map.is_zero() && torsion_before == torsion_after + fd.torsion_value;
    Ok(FoldReport { tau_iso_map, tau_inverse_map, torsion_before, torsion_after, torsion_value: fd.torsion_value, holds })
}
