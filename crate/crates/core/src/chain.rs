//! Based signed chain complexes over ℤ, chain maps, homotopies and the structural
//! constructions (sums, suspensions, cones, duals).

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, rank as matrix_rank, unimodular_inverse, IntMatrix, MatrixEquations};
use crate::sign::SignK1;

/// A finite based free chain complex C_0 ← C_1 ← … ← C_top with a sign η ∈ K₁(ℤ).
///
/// `diffs[r - 1]` is d_r : C_r → C_{r−1}, a rank(C_{r−1}) × rank(C_r) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedComplex {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
    eta: SignK1,
}

impl SignedComplex {
    /// Builds and validates a complex; `diffs` lists d_1, …, d_top.
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>, eta: SignK1) -> Result<Self> {
        let c = SignedComplex { ranks, diffs, eta };
        c.validate()?;
        Ok(c)
    }

    /// A complex with all differentials zero.
    pub fn free(ranks: Vec<usize>, eta: SignK1) -> Self {
        let ranks = if ranks.is_empty() { vec![0] } else { ranks };
        let diffs = (1..ranks.len()).map(|r| IntMatrix::zeros(ranks[r - 1], ranks[r])).collect();
        SignedComplex { ranks, diffs, eta }
    }

    /// ℤ^m concentrated in one degree.
    pub fn concentrated(degree: usize, m: usize) -> Self {
        let mut ranks = vec![0; degree + 1];
        ranks[degree] = m;
        Self::free(ranks, SignK1::ZERO)
    }

    /// The elementary complex ℤ^m → ℤ^m in degrees (degree+1, degree) with differential `d`.
    pub fn elementary(degree: usize, d: IntMatrix) -> Result<Self> {
        if !d.is_square() {
            return Err(Error::InvalidComplex("elementary differential must be square".into()));
        }
        let m = d.rows();
        let mut ranks = vec![0; degree + 2];
        ranks[degree] = m;
        ranks[degree + 1] = m;
        let mut c = Self::free(ranks, SignK1::ZERO);
        c.diffs[degree] = d;
        Ok(c)
    }

    pub fn zero() -> Self {
        Self::free(vec![0], SignK1::ZERO)
    }

    fn validate(&self) -> Result<()> {
        if self.ranks.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least degree 0".into()));
        }
        if self.diffs.len() + 1 != self.ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} differentials for top degree {}",
                self.diffs.len(),
                self.ranks.len() - 1
            )));
        }
        for r in 1..self.ranks.len() {
            let d = &self.diffs[r - 1];
            if d.shape() != (self.ranks[r - 1], self.ranks[r]) {
                return Err(Error::InvalidComplex(format!(
                    "d_{r} has shape {:?}, expected {:?}",
                    d.shape(),
                    (self.ranks[r - 1], self.ranks[r])
                )));
            }
        }
        for r in 2..self.ranks.len() {
            if !(&self.diffs[r - 2] * &self.diffs[r - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!("d_{} d_{} is not zero", r - 1, r)));
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// rank(C_r), zero outside 0..=top.
    pub fn rank(&self, r: i64) -> usize {
        if r < 0 {
            0
        } else {
            self.ranks.get(r as usize).copied().unwrap_or(0)
        }
    }

    /// d_r : C_r → C_{r−1} for any integer r (zero-shaped outside the complex).
    pub fn d(&self, r: i64) -> IntMatrix {
        if r >= 1 && (r as usize) <= self.top() {
            self.diffs[r as usize - 1].clone()
        } else {
            IntMatrix::zeros(self.rank(r - 1), self.rank(r))
        }
    }

    pub fn diffs(&self) -> &[IntMatrix] {
        &self.diffs
    }

    pub fn eta(&self) -> SignK1 {
        self.eta
    }

    pub fn with_eta(&self, eta: SignK1) -> Self {
        SignedComplex { eta, ..self.clone() }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn rank_odd(&self) -> usize {
        self.ranks.iter().skip(1).step_by(2).sum()
    }

    pub fn rank_even(&self) -> usize {
        self.ranks.iter().step_by(2).sum()
    }

    pub fn euler_char(&self) -> i64 {
        self.rank_even() as i64 - self.rank_odd() as i64
    }

    /// The same complex regarded with top degree `top` (extra zero modules on top).
    pub fn padded(&self, top: usize) -> Self {
        if top <= self.top() {
            return self.clone();
        }
        let mut ranks = self.ranks.clone();
        ranks.resize(top + 1, 0);
        let mut diffs = self.diffs.clone();
        for r in self.top() + 1..=top {
            diffs.push(IntMatrix::zeros(ranks[r - 1], ranks[r]));
        }
        SignedComplex { ranks, diffs, eta: self.eta }
    }

    /// Removes zero modules above the highest nonzero degree.
    pub fn trimmed(&self) -> Self {
        let mut top = self.top();
        while top > 0 && self.ranks[top] == 0 {
            top -= 1;
        }
        SignedComplex { ranks: self.ranks[..=top].to_vec(), diffs: self.diffs[..top].to_vec(), eta: self.eta }
    }

    /// Same modules, differentials and sign, ignoring trailing zero modules.
    pub fn same_data(&self, other: &SignedComplex) -> bool {
        self.trimmed() == other.trimmed()
    }

    /// Per-degree integral homology: (free rank, torsion coefficients > 1).
    pub fn homology(&self) -> Vec<(usize, Vec<BigInt>)> {
        (0..=self.top())
            .map(|r| {
                let r = r as i64;
                let rank_out = matrix_rank(&self.d(r));
                let factors = invariant_factors(&self.d(r + 1));
                let free = self.rank(r) - rank_out - factors.len();
                let torsion = factors.into_iter().filter(|x| !x.is_one()).collect();
                (free, torsion)
            })
            .collect()
    }

    /// First degree with nonzero homology.
    pub fn first_homology_degree(&self) -> Option<usize> {
        self.homology().iter().position(|(f, t)| *f > 0 || !t.is_empty())
    }

    pub fn is_acyclic(&self) -> bool {
        self.first_homology_degree().is_none()
    }
}

/// ε(M, N) = rank M · rank N mod 2.
pub fn epsilon(m: usize, n: usize) -> SignK1 {
    SignK1::from_bool(m % 2 == 1 && n % 2 == 1)
}

/// β(C, D) = Σ_{i>j} ε(C_{2i}, D_{2j}) − ε(C_{2i+1}, D_{2j+1}).
pub fn beta(c: &SignedComplex, d: &SignedComplex) -> SignK1 {
    beta_ranks(c.ranks(), d.ranks())
}

pub(crate) fn beta_ranks(c: &[usize], d: &[usize]) -> SignK1 {
    let mut total = 0usize;
    for (p, &cp) in c.iter().enumerate() {
        for (q, &dq) in d.iter().enumerate() {
            if p > q && p % 2 == q % 2 {
                total += cp * dq;
            }
        }
    }
    SignK1::from_int(total as i64)
}

/// α_n(C) = Σ_{r ≡ n+2, n+3 (mod 4)} rank C_r.
pub fn alpha_n(c: &SignedComplex, n: usize) -> SignK1 {
    let total: usize = (0..=c.top())
        .filter(|&r| (r + 4 - n % 4) % 4 == 2 || (r + 4 - n % 4) % 4 == 3)
        .map(|r| c.ranks[r])
        .sum();
    SignK1::from_int(total as i64)
}

/// SC with (SC)_r = C_{r−1}; η_{SC} = −η_C.
pub fn suspension(c: &SignedComplex) -> SignedComplex {
    let mut ranks = vec![0];
    ranks.extend_from_slice(&c.ranks);
    let mut diffs = vec![IntMatrix::zeros(0, c.ranks[0])];
    diffs.extend(c.diffs.iter().cloned());
    SignedComplex { ranks, diffs, eta: -c.eta }
}

/// η_{C⊕D} = η_C + η_D − β(C,D) + rank(C_odd)·χ(D).
pub fn direct_sum_sign(c: &SignedComplex, d: &SignedComplex) -> SignK1 {
    c.eta + d.eta - beta(c, d) + SignK1::from_int(c.rank_odd() as i64 * d.euler_char())
}

pub fn direct_sum(c: &SignedComplex, d: &SignedComplex) -> SignedComplex {
    let top = c.top().max(d.top());
    let ranks: Vec<usize> = (0..=top as i64).map(|r| c.rank(r) + d.rank(r)).collect();
    let diffs = (1..=top as i64).map(|r| IntMatrix::block_diag(&c.d(r), &d.d(r))).collect();
    SignedComplex { ranks, diffs, eta: direct_sum_sign(c, d) }
}

/// C^{n−*}: degree r holds C_{n−r}^*, with differential (−1)^r d_{n−r+1}ᵀ and sign
/// η_C + β(C,C) + α_n(C).
pub fn dual_complex(c: &SignedComplex, n: usize) -> Result<SignedComplex> {
    if n < c.top() {
        let t = c.trimmed();
        if n < t.top() {
            return Err(Error::InvalidComplex(format!("dual dimension {n} below top degree {}", t.top())));
        }
        return dual_complex(&t, n);
    }
    let n_i = n as i64;
    let ranks: Vec<usize> = (0..=n_i).map(|r| c.rank(n_i - r)).collect();
    let diffs = (1..=n_i).map(|r| c.d(n_i - r + 1).transpose().sign_pow(r)).collect();
    let eta = c.eta + beta(c, c) + alpha_n(c, n);
    Ok(SignedComplex { ranks, diffs, eta })
}

/// Degreewise matrices f_r : C_r → D_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: SignedComplex,
    target: SignedComplex,
    mats: Vec<IntMatrix>,
}

impl ChainMap {
    /// `mats` may be shorter than max(top) + 1; missing degrees are zero.
    pub fn new(source: SignedComplex, target: SignedComplex, mut mats: Vec<IntMatrix>) -> Result<Self> {
        let top = source.top().max(target.top());
        if mats.len() > top + 1 {
            if mats[top + 1..].iter().any(|m| m.rows() + m.cols() > 0) {
                return Err(Error::InvalidMap("matrices beyond the top degree".into()));
            }
            mats.truncate(top + 1);
        }
        while mats.len() < top + 1 {
            let r = mats.len() as i64;
            mats.push(IntMatrix::zeros(target.rank(r), source.rank(r)));
        }
        for (r, m) in mats.iter().enumerate() {
            let want = (target.rank(r as i64), source.rank(r as i64));
            if m.shape() != want {
                return Err(Error::InvalidMap(format!("f_{r} has shape {:?}, expected {want:?}", m.shape())));
            }
        }
        let f = ChainMap { source, target, mats };
        for r in 1..=top as i64 {
            let lhs = &f.target.d(r) * &f.mat(r);
            let rhs = &f.mat(r - 1) * &f.source.d(r);
            if lhs != rhs {
                return Err(Error::InvalidMap(format!("d f ≠ f d in degree {r}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &SignedComplex) -> Self {
        let mats = c.ranks().iter().map(|&m| IntMatrix::identity(m)).collect();
        ChainMap { source: c.clone(), target: c.clone(), mats }
    }

    pub fn zero(source: &SignedComplex, target: &SignedComplex) -> Self {
        ChainMap::new(source.clone(), target.clone(), vec![]).expect("zero map is a chain map")
    }

    pub fn source(&self) -> &SignedComplex {
        &self.source
    }

    pub fn target(&self) -> &SignedComplex {
        &self.target
    }

    pub fn top(&self) -> usize {
        self.mats.len() - 1
    }

    pub fn mats(&self) -> &[IntMatrix] {
        &self.mats
    }

    /// f_r for any integer r.
    pub fn mat(&self, r: i64) -> IntMatrix {
        if r >= 0 && (r as usize) < self.mats.len() {
            self.mats[r as usize].clone()
        } else {
            IntMatrix::zeros(self.target.rank(r), self.source.rank(r))
        }
    }

    /// g ∘ self.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        if !same_ranks(&g.source, &self.target) {
            return Err(Error::ShapeMismatch("composition of non-composable maps".into()));
        }
        let top = self.source.top().max(g.target.top()).max(self.target.top());
        let mats = (0..=top as i64).map(|r| &g.mat(r) * &self.mat(r)).collect();
        ChainMap::new(self.source.clone(), g.target.clone(), mats)
    }

    pub fn negate(&self) -> ChainMap {
        ChainMap { mats: self.mats.iter().map(|m| -m).collect(), ..self.clone() }
    }

    pub fn with_complexes(&self, source: SignedComplex, target: SignedComplex) -> Result<ChainMap> {
        ChainMap::new(source, target, self.mats.clone())
    }

    pub fn is_degreewise_square(&self) -> bool {
        self.mats.iter().all(|m| m.is_square())
    }
}

pub(crate) fn same_ranks(a: &SignedComplex, b: &SignedComplex) -> bool {
    (0..=a.top().max(b.top()) as i64).all(|r| a.rank(r) == b.rank(r))
}

/// f ⊕ f′ : C ⊕ C′ → D ⊕ D′.
pub fn direct_sum_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let source = direct_sum(&f.source, &g.source);
    let target = direct_sum(&f.target, &g.target);
    let top = source.top().max(target.top()) as i64;
    let mats = (0..=top).map(|r| IntMatrix::block_diag(&f.mat(r), &g.mat(r))).collect();
    ChainMap::new(source, target, mats)
}

/// 𝒞(f)_r = D_r ⊕ C_{r−1} with d = (d_D, (−1)^{r−1} f; 0, d_C) and
/// η_{𝒞(f)} = η_{D⊕SC} = η_D − η_C − β(D, SC) + ε(D_odd, χ(SC)).
pub fn mapping_cone(f: &ChainMap) -> SignedComplex {
    let c = &f.source;
    let d = &f.target;
    let top = d.top().max(c.top() + 1) as i64;
    let ranks: Vec<usize> = (0..=top).map(|r| d.rank(r) + c.rank(r - 1)).collect();
    let diffs = (1..=top)
        .map(|r| {
            let mut m = IntMatrix::zeros(ranks[r as usize - 1], ranks[r as usize]);
            m.set_block(0, 0, &d.d(r));
            m.set_block(0, d.rank(r), &f.mat(r - 1).sign_pow(r - 1));
            m.set_block(d.rank(r - 1), d.rank(r), &c.d(r - 1));
            m
        })
        .collect();
    let sc = suspension(c);
    let eta = d.eta - c.eta - beta(d, &sc) + SignK1::from_int(d.rank_odd() as i64 * sc.euler_char());
    SignedComplex { ranks, diffs, eta }
}

/// Degreewise maps g_r : C_r → D_{r+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    mats: Vec<IntMatrix>,
}

impl ChainHomotopy {
    pub fn new(mats: Vec<IntMatrix>) -> Self {
        ChainHomotopy { mats }
    }

    pub fn mats(&self) -> &[IntMatrix] {
        &self.mats
    }

    /// g_r, or an empty-shaped zero matrix when out of range.
    pub fn mat(&self, r: i64, rows: usize, cols: usize) -> IntMatrix {
        if r >= 0 && (r as usize) < self.mats.len() {
            self.mats[r as usize].clone()
        } else {
            IntMatrix::zeros(rows, cols)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }
}

/// d^D g + g d^C in degree r, for g : C → D of degree +1.
pub fn homotopy_boundary(g: &ChainHomotopy, c: &SignedComplex, d: &SignedComplex, r: i64) -> IntMatrix {
    let g_r = g.mat(r, d.rank(r + 1), c.rank(r));
    let g_prev = g.mat(r - 1, d.rank(r), c.rank(r - 1));
    &(&d.d(r + 1) * &g_r) + &(&g_prev * &c.d(r))
}

pub fn is_homotopy(f: &ChainMap, f2: &ChainMap, g: &ChainHomotopy) -> bool {
    let top = f.top().max(f2.top()) as i64;
    (0..=top).all(|r| &f.mat(r) - &f2.mat(r) == homotopy_boundary(g, &f.source, &f.target, r))
}

/// Solves f − f′ = d g + g d for g as one integer system, or returns None.
pub fn find_homotopy(f: &ChainMap, f2: &ChainMap) -> Result<Option<ChainHomotopy>> {
    if !same_ranks(&f.source, &f2.source) || !same_ranks(&f.target, &f2.target) {
        return Err(Error::ShapeMismatch("find_homotopy: maps have different source or target".into()));
    }
    let diff: Vec<IntMatrix> = (0..=f.top() as i64).map(|r| &f.mat(r) - &f2.mat(r)).collect();
    Ok(solve_homotopy_equation(&f.source, &f.target, &diff))
}

/// Finds g : C → D of degree +1 with d^D g + g d^C = rhs_r in every degree.
pub(crate) fn solve_homotopy_equation(c: &SignedComplex, d: &SignedComplex, rhs: &[IntMatrix]) -> Option<ChainHomotopy> {
    let top = rhs.len() as i64 - 1;
    let mut eqs = MatrixEquations::new();
    let g: Vec<usize> = (0..=top).map(|r| eqs.unknown(d.rank(r + 1), c.rank(r))).collect();
    for r in 0..=top {
        let (p, q) = (d.rank(r), c.rank(r));
        let id_p = IntMatrix::identity(p);
        let id_q = IntMatrix::identity(q);
        let d_next = d.d(r + 1);
        let d_here = c.d(r);
        let mut terms = vec![(&d_next, g[r as usize], &id_q)];
        if r >= 1 {
            terms.push((&id_p, g[r as usize - 1], &d_here));
        }
        eqs.equation(&terms, &rhs[r as usize]).ok()?;
    }
    eqs.solve().ok().map(ChainHomotopy::new)
}

/// A based change of basis: `p[r]` : C′_r → C_r unimodular. Returns C′ with
/// d′_r = p_{r−1}⁻¹ d_r p_r (same sign) and the isomorphism p : C′ → C.
pub fn change_basis(c: &SignedComplex, p: &[IntMatrix]) -> Result<(SignedComplex, ChainMap)> {
    if p.len() != c.top() + 1 {
        return Err(Error::ShapeMismatch("one basis change per degree is required".into()));
    }
    let inv: Vec<IntMatrix> = p.iter().map(unimodular_inverse).collect::<Result<_>>()?;
    let diffs = (1..=c.top()).map(|r| &(&inv[r - 1] * &c.d(r as i64)) * &p[r]).collect();
    let c2 = SignedComplex::new(c.ranks.clone(), diffs, c.eta)?;
    let iso = ChainMap::new(c2.clone(), c.clone(), p.to_vec())?;
    Ok((c2, iso))
}

/// The map C ⊕ D → D ⊕ C exchanging the summands.
pub fn swap_map(c: &SignedComplex, d: &SignedComplex) -> ChainMap {
    let source = direct_sum(c, d);
    let target = direct_sum(d, c);
    let top = source.top() as i64;
    let mats = (0..=top)
        .map(|r| {
            let (a, b) = (c.rank(r), d.rank(r));
            let perm: Vec<usize> = (0..a).map(|j| b + j).chain(0..b).collect();
            IntMatrix::permutation(&perm)
        })
        .collect();
    ChainMap::new(source, target, mats).expect("swap is a chain map")
}

/// The identity on underlying modules (C ⊕ D) ⊕ E → C ⊕ (D ⊕ E), with the two bracketings' signs.
pub fn rebracket_map(c: &SignedComplex, d: &SignedComplex, e: &SignedComplex) -> ChainMap {
    let source = direct_sum(&direct_sum(c, d), e);
    let target = direct_sum(c, &direct_sum(d, e));
    let mats = source.ranks().iter().map(|&m| IntMatrix::identity(m)).collect();
    ChainMap::new(source, target, mats).expect("rebracketing is a chain map")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(deg: usize) -> SignedComplex {
        SignedComplex::concentrated(deg, 1)
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(z(0).euler_char(), 1);
        let e = SignedComplex::elementary(0, IntMatrix::identity(1)).unwrap();
        assert_eq!(e.euler_char(), 0);
        assert_eq!(SignedComplex::free(vec![1, 2, 2, 2, 1], SignK1::ZERO).euler_char(), 0);
    }

    #[test]
    fn suspension_shifts_and_keeps_sign() {
        let s = suspension(&z(0));
        assert_eq!(s.ranks(), &[0, 1]);
        assert_eq!(s.eta(), SignK1::ZERO);
        assert_eq!(suspension(&z(0).with_eta(SignK1::ONE)).eta(), SignK1::ONE);
        let c = SignedComplex::free(vec![1, 2], SignK1::ZERO);
        assert_eq!(suspension(&c).euler_char(), -c.euler_char());
    }

    #[test]
    fn epsilon_and_beta() {
        assert_eq!(epsilon(1, 1), SignK1::ONE);
        assert_eq!(epsilon(2, 3), SignK1::ZERO);
        assert_eq!(epsilon(3, 5), SignK1::ONE);
        assert_eq!(beta(&z(0), &z(0)), SignK1::ZERO);
        assert_eq!(beta(&z(2), &z(0)), SignK1::ONE);
        assert_eq!(beta(&z(0), &z(2)), SignK1::ZERO);
        assert_eq!(beta(&z(3), &z(3)), SignK1::ZERO);
    }

    #[test]
    fn direct_sum_signs() {
        let c = z(1);
        let d = z(0);
        assert_eq!(direct_sum(&c, &d).eta(), SignK1::ONE);
        let zero = SignedComplex::zero();
        let x = SignedComplex::free(vec![1, 3, 2], SignK1::ONE);
        assert_eq!(direct_sum(&x, &zero), x);
        let y = SignedComplex::free(vec![2, 0, 1, 1], SignK1::ZERO);
        assert_eq!(direct_sum(&x, &y).euler_char(), x.euler_char() + y.euler_char());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_n(&SignedComplex::concentrated(2, 2), 4), SignK1::ZERO);
        assert_eq!(alpha_n(&z(2), 0), SignK1::ONE);
        assert_eq!(alpha_n(&SignedComplex::zero(), 3), SignK1::ZERO);
        // α_{4k} on a complex concentrated in degree 2k equals k·χ
        for k in 0..4 {
            let c = SignedComplex::concentrated(2 * k, 3);
            assert_eq!(alpha_n(&c, 4 * k), SignK1::from_int(k as i64 * c.euler_char()));
        }
    }

    #[test]
    fn cone_of_identity_is_elementary() {
        let cone = mapping_cone(&ChainMap::identity(&z(0)));
        assert_eq!(cone.ranks(), &[1, 1]);
        assert_eq!(cone.d(1), IntMatrix::identity(1));
        assert!(cone.is_acyclic());
    }

    #[test]
    fn cone_of_zero_map_to_zero_is_suspension() {
        let c = SignedComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[[2]])], SignK1::ONE).unwrap();
        let f = ChainMap::zero(&c, &SignedComplex::zero());
        let cone = mapping_cone(&f);
        let s = suspension(&c);
        assert_eq!(cone.ranks(), s.ranks());
        assert_eq!(cone.diffs(), s.diffs());
        assert_eq!(cone.eta(), direct_sum(&SignedComplex::zero(), &s).eta());
    }

    #[test]
    fn cone_sign_matches_sum_with_suspension() {
        let c = SignedComplex::new(vec![2, 1], vec![IntMatrix::from_rows(&[[1], [0]])], SignK1::ONE).unwrap();
        let f = ChainMap::identity(&c);
        let cone = mapping_cone(&f);
        assert_eq!(cone.eta(), direct_sum(&c, &suspension(&c)).eta());
        assert!(cone.is_acyclic());
    }

    #[test]
    fn dual_examples() {
        let e = SignedComplex::elementary(0, IntMatrix::identity(1)).unwrap();
        let d = dual_complex(&e, 1).unwrap();
        assert_eq!(d.d(1), IntMatrix::from_rows(&[[-1]]));
        let dd = dual_complex(&d, 1).unwrap();
        assert_eq!(dd.ranks(), e.ranks());
        // for k odd, η shifts by χ(C) on a complex in degree 2k
        let c = SignedComplex::concentrated(2, 3);
        assert_eq!(dual_complex(&c, 4).unwrap().eta(), SignK1::from_int(c.euler_char()));
    }

    #[test]
    fn homology_examples() {
        assert_eq!(z(0).homology(), vec![(1, vec![])]);
        let e = SignedComplex::elementary(0, IntMatrix::identity(1)).unwrap();
        assert!(e.is_acyclic());
        let t = SignedComplex::elementary(0, IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(t.homology()[0], (0, vec![BigInt::from(2)]));
        assert_eq!(t.first_homology_degree(), Some(0));
    }

    #[test]
    fn homotopy_examples() {
        let c = SignedComplex::new(
            vec![2, 2, 1],
            vec![IntMatrix::from_rows(&[[1, 0], [0, 0]]), IntMatrix::from_rows(&[[0], [3]])],
            SignK1::ZERO,
        )
        .unwrap();
        let f = ChainMap::identity(&c);
        let g = find_homotopy(&f, &f).unwrap().unwrap();
        assert!(is_homotopy(&f, &f, &g));

        let g0 = ChainHomotopy::new(vec![
            IntMatrix::from_rows(&[[1, -1], [2, 0]]),
            IntMatrix::from_rows(&[[4, 1]]),
            IntMatrix::zeros(0, 1),
        ]);
        let mats: Vec<IntMatrix> =
            (0..=2).map(|r| &f.mat(r) + &homotopy_boundary(&g0, &c, &c, r)).collect();
        let f2 = ChainMap::new(c.clone(), c.clone(), mats).unwrap();
        let g = find_homotopy(&f2, &f).unwrap().unwrap();
        assert!(is_homotopy(&f2, &f, &g));

        let zc = z(0);
        assert!(find_homotopy(&ChainMap::identity(&zc), &ChainMap::zero(&zc, &zc)).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_complexes() {
        let bad = SignedComplex::new(
            vec![1, 1, 1],
            vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])],
            SignK1::ZERO,
        );
        assert!(matches!(bad, Err(Error::InvalidComplex(_))));
        let shape = SignedComplex::new(vec![1, 2], vec![IntMatrix::from_rows(&[[1]])], SignK1::ZERO);
        assert!(shape.is_err());
    }
}
