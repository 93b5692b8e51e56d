//! Symmetric Poincaré complexes over ℤ: absolute torsion, signature and the
//! congruences relating them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::{alpha_n, beta, change_basis, direct_sum, dual_complex, mapping_cone, ChainMap, SignedComplex};
use crate::error::{Error, Result};
use crate::filtered::{tensor_filtered, theta_map};
use crate::linalg::{det, inertia, kernel_basis, signature_of, unimodular_inverse, unit_det, IntMatrix, RatMatrix};
use crate::sign::SignK1;
use crate::torsion::tau_new_map;

/// A symmetric bilinear form h = hᵀ over ℤ with det h = ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularForm {
    h: IntMatrix,
}

impl UnimodularForm {
    pub fn new(h: IntMatrix) -> Result<Self> {
        if !h.is_symmetric() {
            return Err(Error::InvalidForm("matrix is not symmetric".into()));
        }
        let d = det(&h)?;
        if d != BigInt::one() && d != -BigInt::one() {
            return Err(Error::InvalidForm(format!("det = {d}")));
        }
        Ok(UnimodularForm { h })
    }

    /// ⟨1⟩
    pub fn unit() -> Self {
        UnimodularForm { h: IntMatrix::identity(1) }
    }

    /// The hyperbolic plane [[0,1],[1,0]].
    pub fn hyperbolic() -> Self {
        UnimodularForm { h: IntMatrix::from_rows(&[[0, 1], [1, 0]]) }
    }

    /// Gram matrix of the E8 lattice in the Cartan convention (2 on the diagonal).
    pub fn e8() -> Self {
        let mut h = IntMatrix::scalar(8, 2);
        // Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            h.set(a, b, BigInt::from(-1));
            h.set(b, a, BigInt::from(-1));
        }
        UnimodularForm { h }
    }

    pub fn diagonal(signs: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::diagonal(signs))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.h
    }

    pub fn rank(&self) -> usize {
        self.h.rows()
    }

    /// det h ∈ {1, −1}.
    pub fn det(&self) -> i64 {
        if det(&self.h).expect("square") == BigInt::one() {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.h.get(i, i) % 2 == BigInt::zero())
    }

    pub fn signature(&self) -> i64 {
        signature_of(&self.h).expect("forms are symmetric")
    }

    pub fn orthogonal_sum(&self, other: &UnimodularForm) -> UnimodularForm {
        UnimodularForm { h: IntMatrix::block_diag(&self.h, &other.h) }
    }

    /// Gᵀ h G for unimodular G.
    pub fn congruent(&self, g: &IntMatrix) -> Result<UnimodularForm> {
        unimodular_inverse(g)?;
        Ok(UnimodularForm { h: &(&g.transpose() * &self.h) * g })
    }

    pub fn negate(&self) -> UnimodularForm {
        UnimodularForm { h: -&self.h }
    }
}

/// (C, φ₀) with φ₀ : C^{n−*} → C a chain equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricComplex {
    phi0: ChainMap,
    n: usize,
}

impl SymmetricComplex {
    /// `phi0[r]` : C_{n−r}^* → C_r for r = 0..=n.
    pub fn new(c: SignedComplex, n: usize, phi0: Vec<IntMatrix>) -> Result<Self> {
        if c.trimmed().top() > n {
            return Err(Error::InvalidSymmetric(format!("complex has top degree {} > n = {n}", c.trimmed().top())));
        }
        let c = c.trimmed().padded(n);
        let dual = dual_complex(&c, n)?;
        let phi = ChainMap::new(dual, c.clone(), phi0).map_err(|e| Error::InvalidSymmetric(e.to_string()))?;
        if n % 2 == 1 && c.euler_char() != 0 {
            return Err(Error::InvalidSymmetric(format!("odd dimension {n} with χ = {}", c.euler_char())));
        }
        if !mapping_cone(&phi).is_acyclic() {
            return Err(Error::InvalidSymmetric("φ₀ is not a chain equivalence".into()));
        }
        Ok(SymmetricComplex { phi0: phi, n })
    }

    pub fn complex(&self) -> &SignedComplex {
        self.phi0.target()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn phi0(&self) -> &ChainMap {
        &self.phi0
    }

    pub fn phi0_mats(&self) -> &[IntMatrix] {
        self.phi0.mats()
    }

    pub fn euler_char(&self) -> i64 {
        self.complex().euler_char()
    }

    /// The same φ₀ over C with sign η; the dual sign follows.
    pub fn with_eta(&self, eta: SignK1) -> Result<Self> {
        SymmetricComplex::new(self.complex().with_eta(eta), self.n, self.phi0_mats().to_vec())
    }

    /// −(C, φ) = (C, −φ).
    pub fn negate(&self) -> Self {
        SymmetricComplex { phi0: self.phi0.negate(), n: self.n }
    }

    /// Transport along based isomorphisms p_r : C′_r → C_r.
    pub fn change_basis(&self, p: &[IntMatrix]) -> Result<Self> {
        let n = self.n;
        let (c2, _) = change_basis(self.complex(), p)?;
        let inv: Vec<IntMatrix> = p.iter().map(unimodular_inverse).collect::<Result<_>>()?;
        // φ₀′_r = p_r⁻¹ φ₀_r (p_{n−r}ᵀ)⁻¹
        let phi = (0..=n)
            .map(|r| &(&inv[r] * &self.phi0.mat(r as i64)) * &inv[n - r].transpose())
            .collect();
        SymmetricComplex::new(c2, n, phi)
    }

    /// Orthogonal sum of two complexes of the same dimension.
    pub fn direct_sum(&self, other: &SymmetricComplex) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidSymmetric("direct sum of different dimensions".into()));
        }
        let c = direct_sum(self.complex(), other.complex());
        let phi = (0..=self.n as i64).map(|r| IntMatrix::block_diag(&self.phi0.mat(r), &other.phi0.mat(r))).collect();
        SymmetricComplex::new(c, self.n, phi)
    }

    /// Adds the contractible summand E ⊕ E^{n−*} with zero duality map on it.
    pub fn pad_with(&self, e: &SignedComplex) -> Result<Self> {
        let n = self.n;
        let pad = direct_sum(e, &dual_complex(e, n)?).padded(n);
        if !pad.is_acyclic() {
            return Err(Error::InvalidSymmetric("padding must be contractible".into()));
        }
        let c = direct_sum(self.complex(), &pad);
        let phi = (0..=n as i64)
            .map(|r| {
                let mut m = IntMatrix::zeros(c.rank(r), c.rank(n as i64 - r));
                m.set_block(0, 0, &self.phi0.mat(r));
                m
            })
            .collect();
        SymmetricComplex::new(c, n, phi)
    }

    pub fn is_round(&self) -> bool {
        self.euler_char() == 0
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(tau_new_symmetric(self)?.is_zero())
    }
}

/// ℤ^m in degree 2k with φ₀ = h, as a 4k-dimensional complex.
pub fn form_to_complex(h: &UnimodularForm, k: usize) -> SymmetricComplex {
    let n = 4 * k;
    let c = SignedComplex::concentrated(2 * k, h.rank()).padded(n);
    let phi = (0..=n).map(|r| if r == 2 * k { h.h.clone() } else { IntMatrix::zeros(c.rank(r as i64), c.rank((n - r) as i64)) }).collect();
    SymmetricComplex::new(c, n, phi).expect("forms give Poincaré complexes")
}

/// τ^NEW(C, φ) = τ^NEW(φ₀ : C^{n−*} → C).
///
/// When φ₀ is a degreewise isomorphism this is cross-checked against
/// Σ_r (−1)^r τ(φ₀ : C^{n−r} → C_r) + β(C,C) + α_n(C).
pub fn tau_new_symmetric(x: &SymmetricComplex) -> Result<SignK1> {
    let t = tau_new_map(&x.phi0)?;
    if let Some(iso) = degreewise_iso_formula(x) {
        let iso = iso?;
        if iso != t {
            return Err(Error::InconsistentTorsion(format!("cone route {t}, isomorphism formula {iso}")));
        }
    }
    Ok(t)
}

fn degreewise_iso_formula(x: &SymmetricComplex) -> Option<Result<SignK1>> {
    let mats = x.phi0_mats();
    if !mats.iter().all(|m| m.is_square()) {
        return None;
    }
    let mut total = beta(x.complex(), x.complex()) + alpha_n(x.complex(), x.n);
    for m in mats {
        match unit_det(m) {
            Ok(s) => total += s,
            Err(Error::NotAUnit(_)) => return None,
            Err(e) => return Some(Err(e)),
        }
    }
    Some(Ok(total))
}

/// Index of the middle-dimensional pairing ⟨x, φ₀ y⟩ on H^{n/2}(C; ℚ) when 4 | n, else 0.
pub fn signature(x: &SymmetricComplex) -> Result<i64> {
    if !x.n.is_multiple_of(4) {
        return Ok(0);
    }
    let m = (x.n / 2) as i64;
    let c = x.complex();
    // cocycles in C^m = C_m^* are the kernel of d_{m+1}ᵀ; coboundaries pair to zero
    let z = kernel_basis(&c.d(m + 1).transpose());
    let gram = &(&z.transpose() * &x.phi0.mat(m)) * &z;
    if !gram.is_symmetric() {
        return Err(Error::NonSymmetricHomologyPairing);
    }
    let (p, q, _) = inertia(&RatMatrix::from_int(&gram))?;
    Ok(p as i64 - q as i64)
}

/// Both sides of sign(C) ≡ 2τ^NEW(C,φ) + (2k+1)χ(C) mod 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMod4Report {
    pub signature: i64,
    pub tau: SignK1,
    pub euler_char: i64,
    pub k: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

pub fn check_signmod4(x: &SymmetricComplex) -> Result<SignMod4Report> {
    if !x.n.is_multiple_of(4) {
        return Err(Error::DimensionNotDivisibleBy4(x.n));
    }
    let k = x.n / 4;
    let sig = signature(x)?;
    let tau = tau_new_symmetric(x)?;
    let chi = x.euler_char();
    let lhs = sig.rem_euclid(4);
    let rhs = (tau.lift_mod4() + (2 * k as i64 + 1) * chi).rem_euclid(4);
    Ok(SignMod4Report { signature: sig, tau, euler_char: chi, k, lhs, rhs, holds: lhs == rhs })
}

/// sign(h) ≡ rank(h) + det(h) − 1 mod 4 and 2τ^NEW(L,h) ≡ det h − 1 mod 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetMod4Report {
    pub signature: i64,
    pub rank: usize,
    pub det: i64,
    pub tau: SignK1,
    pub signature_holds: bool,
    pub torsion_holds: bool,
}

impl DetMod4Report {
    pub fn holds(&self) -> bool {
        self.signature_holds && self.torsion_holds
    }
}

pub fn check_det_mod4(h: &UnimodularForm) -> Result<DetMod4Report> {
    let sig = h.signature();
    let det = h.det();
    let tau = tau_new_symmetric(&form_to_complex(h, 0))?;
    Ok(DetMod4Report {
        signature: sig,
        rank: h.rank(),
        det,
        tau,
        signature_holds: (sig - h.rank() as i64 - det + 1).rem_euclid(4) == 0,
        torsion_holds: (tau.lift_mod4() - det + 1).rem_euclid(4) == 0,
    })
}

/// The signature of an even unimodular form and whether 8 divides it.
pub fn check_mod8_even(h: &UnimodularForm) -> Result<(i64, bool)> {
    if !h.is_even() {
        return Err(Error::NotEven);
    }
    let s = h.signature();
    Ok((s, s.rem_euclid(8) == 0))
}

/// The complex of the round example: ranks (1,2,2,2,1) with zero differentials, n = 4,
/// φ₀ the identity in every degree (the middle block is ⟨1⟩ ⊕ ⟨1⟩).
pub fn round_example() -> SymmetricComplex {
    let c = SignedComplex::free(vec![1, 2, 2, 2, 1], SignK1::ZERO);
    let phi = [1, 2, 2, 2, 1].iter().map(|&m| IntMatrix::identity(m)).collect();
    SymmetricComplex::new(c, 4, phi).expect("round example is Poincaré")
}

/// X ⊗ Y over the tensor filtration of C_X ⊗ C_Y, with φ₀ = (φ₀^X ⊗ φ₀^Y) ∘ θ.
pub fn tensor_symmetric(x: &SymmetricComplex, y: &SymmetricComplex) -> Result<SymmetricComplex> {
    let (k, n) = (x.n, y.n);
    let (c, d) = (x.complex(), y.complex());
    let f = tensor_filtered(c, d);
    let theta = theta_map(&f, n)?;
    let top = (n + k) as i64;
    let phi = (0..=top)
        .map(|r| {
            let mut m = IntMatrix::zeros(f.total_rank(r), f.total_rank(top - r));
            let mut col = 0;
            for p in 0..=k as i64 {
                let b = x.phi0.mat(p).kron(&y.phi0.mat(r - p));
                m.set_block(f.offset(r, p), col, &b);
                col += b.cols();
            }
            &m * &theta.mat(r)
        })
        .collect();
    SymmetricComplex::new(f.total_complex(), n + k, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_formula_for_unit_and_hyperbolic() {
        let x = form_to_complex(&UnimodularForm::unit(), 0);
        let y = form_to_complex(&UnimodularForm::hyperbolic(), 0);
        let xy = tensor_symmetric(&x, &y).unwrap();
        assert_eq!(tau_new_symmetric(&xy).unwrap(), SignK1::ONE);
        let one = tensor_symmetric(&x, &round_example()).unwrap();
        assert!(one.complex().same_data(round_example().complex()));
        assert_eq!(one.phi0_mats(), round_example().phi0_mats());
    }

    #[test]
    fn product_formula_on_forms() {
        let forms = [
            UnimodularForm::unit(),
            UnimodularForm::unit().negate(),
            UnimodularForm::hyperbolic(),
            UnimodularForm::diagonal(&[1, -1, 1]).unwrap(),
            UnimodularForm::e8(),
        ];
        for (i, a) in forms.iter().enumerate() {
            for b in &forms[i..] {
                for (ka, kb) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    let (x, y) = (form_to_complex(a, ka), form_to_complex(b, kb));
                    let xy = tensor_symmetric(&x, &y).unwrap();
                    let tx = tau_new_symmetric(&x).unwrap();
                    let ty = tau_new_symmetric(&y).unwrap();
                    let want = SignK1::from_int(x.euler_char() * ty.bit() as i64 + y.euler_char() * tx.bit() as i64);
                    assert_eq!(tau_new_symmetric(&xy).unwrap(), want, "{ka} {kb}");
                    assert_eq!(signature(&xy).unwrap(), signature(&x).unwrap() * signature(&y).unwrap());
                }
            }
        }
    }

    #[test]
    fn form_complexes() {
        let x = form_to_complex(&UnimodularForm::unit(), 0);
        assert_eq!(x.dim(), 0);
        assert_eq!(x.phi0_mats()[0], IntMatrix::identity(1));
        let x = form_to_complex(&UnimodularForm::hyperbolic(), 1);
        assert_eq!(x.complex().ranks(), &[0, 0, 2, 0, 0]);
        assert_eq!(x.dim(), 4);
    }

    #[test]
    fn torsion_of_forms() {
        let h = form_to_complex(&UnimodularForm::hyperbolic(), 0);
        assert_eq!(tau_new_symmetric(&h).unwrap(), SignK1::ONE);
        let one = form_to_complex(&UnimodularForm::unit(), 0);
        assert_eq!(tau_new_symmetric(&one).unwrap(), SignK1::ZERO);
        let two = UnimodularForm::unit().orthogonal_sum(&UnimodularForm::unit());
        assert!(form_to_complex(&two, 0).is_simple().unwrap());
        let d = UnimodularForm::diagonal(&[1, -1]).unwrap();
        assert_eq!(tau_new_symmetric(&form_to_complex(&d, 0)).unwrap(), SignK1::ONE);
    }

    #[test]
    fn negation_shifts_by_euler_characteristic() {
        for form in [UnimodularForm::unit(), UnimodularForm::hyperbolic(), UnimodularForm::e8()] {
            for k in 0..3 {
                let x = form_to_complex(&form, k);
                let t = tau_new_symmetric(&x).unwrap();
                let nt = tau_new_symmetric(&x.negate()).unwrap();
                assert_eq!(nt, t + SignK1::from_int(x.euler_char()));
                assert_eq!(x.negate().negate(), x);
            }
        }
    }

    #[test]
    fn signatures() {
        let two = UnimodularForm::unit().orthogonal_sum(&UnimodularForm::unit());
        assert_eq!(signature(&form_to_complex(&two, 0)).unwrap(), 2);
        assert_eq!(signature(&form_to_complex(&UnimodularForm::hyperbolic(), 1)).unwrap(), 0);
        assert_eq!(signature(&form_to_complex(&UnimodularForm::e8(), 2)).unwrap(), 8);
        assert_eq!(UnimodularForm::e8().det(), 1);
    }

    #[test]
    fn signmod4_examples() {
        let r = check_signmod4(&form_to_complex(&UnimodularForm::unit(), 0)).unwrap();
        assert_eq!((r.signature, r.lhs, r.rhs), (1, 1, 1));
        let r = check_signmod4(&form_to_complex(&UnimodularForm::hyperbolic(), 0)).unwrap();
        assert_eq!((r.signature, r.lhs, r.rhs), (0, 0, 0));
        let round = round_example();
        assert!(round.is_round());
        let r = check_signmod4(&round).unwrap();
        assert_eq!(r.signature, 2);
        assert_eq!(r.tau, SignK1::ONE);
        assert!(r.holds);
        let odd = SymmetricComplex::new(SignedComplex::free(vec![1, 1], SignK1::ZERO), 1, vec![IntMatrix::identity(1), IntMatrix::identity(1)]);
        assert!(matches!(check_signmod4(&odd.unwrap()), Err(Error::DimensionNotDivisibleBy4(1))));
    }

    #[test]
    fn det_mod4_examples() {
        for h in [UnimodularForm::unit(), UnimodularForm::hyperbolic(), UnimodularForm::diagonal(&[1, -1]).unwrap()] {
            assert!(check_det_mod4(&h).unwrap().holds());
        }
    }

    #[test]
    fn mod8_examples() {
        assert_eq!(check_mod8_even(&UnimodularForm::hyperbolic()).unwrap(), (0, true));
        assert_eq!(check_mod8_even(&UnimodularForm::e8()).unwrap(), (8, true));
        let sum = UnimodularForm::e8().orthogonal_sum(&UnimodularForm::hyperbolic());
        assert_eq!(check_mod8_even(&sum).unwrap(), (8, true));
        assert_eq!(check_mod8_even(&UnimodularForm::unit()), Err(Error::NotEven));
    }

    #[test]
    fn eta_flip_and_basis_change_invariance() {
        let x = round_example();
        let t = tau_new_symmetric(&x).unwrap();
        assert_eq!(tau_new_symmetric(&x.with_eta(SignK1::ONE).unwrap()).unwrap(), t);
        let mut p: Vec<IntMatrix> = x.complex().ranks().iter().map(|&m| IntMatrix::identity(m)).collect();
        p[1] = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let y = x.change_basis(&p).unwrap();
        assert_eq!(tau_new_symmetric(&y).unwrap(), t);
        assert_eq!(signature(&y).unwrap(), 2);
    }

    #[test]
    fn padding_keeps_invariants() {
        let x = form_to_complex(&UnimodularForm::hyperbolic(), 1);
        let e = SignedComplex::elementary(1, IntMatrix::from_rows(&[[-1]])).unwrap();
        let y = x.pad_with(&e).unwrap();
        assert_eq!(tau_new_symmetric(&y).unwrap(), tau_new_symmetric(&x).unwrap());
        assert_eq!(signature(&y).unwrap(), 0);
    }
}
