//! Chain contractions, torsion of contractible complexes and absolute torsion of
//! chain equivalences.

use crate::chain::{beta, direct_sum, mapping_cone, suspension, ChainMap, SignedComplex};
use crate::error::{Error, Result};
use crate::linalg::{solve_integral, unit_det, IntMatrix};
use crate::sign::SignK1;

/// Γ with dΓ + Γd = 1; `gamma[r]` : C_r → C_{r+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    gamma: Vec<IntMatrix>,
}

impl Contraction {
    pub fn new(c: &SignedComplex, gamma: Vec<IntMatrix>) -> Result<Self> {
        let k = Contraction { gamma };
        if k.gamma.len() != c.top() + 1 {
            return Err(Error::ShapeMismatch("one contraction block per degree is required".into()));
        }
        for (r, g) in k.gamma.iter().enumerate() {
            if g.shape() != (c.rank(r as i64 + 1), c.rank(r as i64)) {
                return Err(Error::ShapeMismatch(format!("Γ_{r} has shape {:?}", g.shape())));
            }
        }
        if !k.is_valid_for(c) {
            return Err(Error::InvalidMap("dΓ + Γd ≠ 1".into()));
        }
        Ok(k)
    }

    pub fn gamma(&self) -> &[IntMatrix] {
        &self.gamma
    }

    /// Γ_r for any integer r.
    pub fn at(&self, c: &SignedComplex, r: i64) -> IntMatrix {
        if r >= 0 && (r as usize) < self.gamma.len() {
            self.gamma[r as usize].clone()
        } else {
            IntMatrix::zeros(c.rank(r + 1), c.rank(r))
        }
    }

    pub fn is_valid_for(&self, c: &SignedComplex) -> bool {
        (0..=c.top() as i64).all(|r| {
            let lhs = &(&c.d(r + 1) * &self.at(c, r)) + &(&self.at(c, r - 1) * &c.d(r));
            lhs.is_identity()
        })
    }
}

/// Solves d_{r+1} Γ_r = 1 − Γ_{r−1} d_r upward in r. Succeeds exactly when C is acyclic.
pub fn build_contraction(c: &SignedComplex) -> Result<Contraction> {
    let mut gamma: Vec<IntMatrix> = Vec::with_capacity(c.top() + 1);
    for r in 0..=c.top() as i64 {
        let prev = if r == 0 { IntMatrix::zeros(c.rank(0), 0) } else { gamma[r as usize - 1].clone() };
        let rhs = &IntMatrix::identity(c.rank(r)) - &(&prev * &c.d(r));
        match solve_integral(&c.d(r + 1), &rhs) {
            Ok(g) => gamma.push(g),
            Err(_) => {
                let degree = c.first_homology_degree().unwrap_or(r as usize);
                return Err(Error::NotAcyclic { degree });
            }
        }
    }
    Ok(Contraction { gamma })
}

/// Another contraction of the same complex: Γ′ = Γ + dξ − ξd for the degree-two map ξ
/// whose entries cycle through `seed`, followed by Γ′ ↦ Γ′dΓ′ when `normalize` is set.
pub fn perturb_contraction(c: &SignedComplex, base: &Contraction, seed: &[i64], normalize: bool) -> Result<Contraction> {
    let top = c.top() as i64;
    let mut t = 0usize;
    let mut next = || {
        let v = if seed.is_empty() { 0 } else { seed[t % seed.len()] };
        t += 1;
        v
    };
    let xi: Vec<IntMatrix> = (-1..=top)
        .map(|r| {
            let mut m = IntMatrix::zeros(c.rank(r + 2), c.rank(r));
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    m.set(i, j, next().into());
                }
            }
            m
        })
        .collect();
    // xi[r + 1] is ξ_r : C_r → C_{r+2}
    let mut gamma: Vec<IntMatrix> = (0..=top)
        .map(|r| {
            let g = base.at(c, r);
            &(&g + &(&c.d(r + 2) * &xi[r as usize + 1])) - &(&xi[r as usize] * &c.d(r))
        })
        .collect();
    if normalize {
        let k = Contraction { gamma: gamma.clone() };
        gamma = (0..=top).map(|r| &(&k.at(c, r) * &c.d(r + 1)) * &k.at(c, r)).collect();
    }
    Contraction::new(c, gamma)
}

/// τ(C) = τ(d + Γ : C_odd → C_even), blocks in ascending degree order.
pub fn torsion_with(c: &SignedComplex, gamma: &Contraction) -> Result<SignK1> {
    let odd: Vec<i64> = (0..=c.top() as i64).filter(|r| r % 2 == 1).collect();
    let even: Vec<i64> = (0..=c.top() as i64 + 1).filter(|r| r % 2 == 0).collect();
    let row_sizes: Vec<usize> = even.iter().map(|&r| c.rank(r)).collect();
    let col_sizes: Vec<usize> = odd.iter().map(|&r| c.rank(r)).collect();
    if row_sizes.iter().sum::<usize>() != col_sizes.iter().sum::<usize>() {
        return Err(Error::NotAcyclic { degree: c.first_homology_degree().unwrap_or(0) });
    }
    let blocks: Vec<Vec<Option<IntMatrix>>> = even
        .iter()
        .map(|&p| {
            odd.iter()
                .map(|&q| {
                    if p == q - 1 {
                        Some(c.d(q))
                    } else if p == q + 1 {
                        Some(gamma.at(c, q))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let m = IntMatrix::from_blocks(&row_sizes, &col_sizes, &blocks);
    unit_det(&m)
}

/// Unsigned torsion τ(C) of an acyclic complex.
pub fn torsion(c: &SignedComplex) -> Result<SignK1> {
    let gamma = build_contraction(c)?;
    torsion_with(c, &gamma)
}

/// τ^NEW(C, η_C) = τ(C) + η_C.
pub fn torsion_contractible(c: &SignedComplex) -> Result<SignK1> {
    Ok(torsion(c)? + c.eta())
}

/// τ^NEW(f) of a chain equivalence f : C → D.
///
/// Evaluates τ(𝒞(f)) − β(D, SC) + rank(D_odd)·χ(SC) + η_D − η_C and checks it against
/// τ(𝒞(f)) + η_{D⊕SC}, the torsion of the cone signed as a direct sum.
pub fn tau_new_map(f: &ChainMap) -> Result<SignK1> {
    let c = f.source();
    let d = f.target();
    let cone = mapping_cone(f);
    let tau = torsion(&cone).map_err(|e| match e {
        Error::NotAcyclic { .. } => Error::NotEquivalence,
        other => other,
    })?;
    let sc = suspension(c);
    let formula = tau - beta(d, &sc) + SignK1::from_int(d.rank_odd() as i64 * sc.euler_char()) + d.eta() - c.eta();
    let via_cone = tau + direct_sum(d, &sc).eta();
    if formula != via_cone {
        return Err(Error::InconsistentTorsion(format!("formula gives {formula}, cone sign gives {via_cone}")));
    }
    Ok(formula)
}

/// τ^NEW of a degreewise isomorphism: Σ (−1)^r τ(f_r) − η_C + η_D.
pub fn tau_iso(f: &ChainMap) -> Result<SignK1> {
    let mut total = f.target().eta() - f.source().eta();
    for (r, m) in f.mats().iter().enumerate() {
        if !m.is_square() {
            return Err(Error::NotAUnit(format!("f_{r} is {}x{}", m.rows(), m.cols())));
        }
        total += unit_det(m)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{change_basis, direct_sum_map};

    fn elementary(d: &[[i64; 2]]) -> SignedComplex {
        SignedComplex::elementary(0, IntMatrix::from_rows(d)).unwrap()
    }

    #[test]
    fn elementary_contractions() {
        let e = SignedComplex::elementary(0, IntMatrix::identity(1)).unwrap();
        let g = build_contraction(&e).unwrap();
        assert_eq!(g.gamma()[0], IntMatrix::identity(1));
        let e = SignedComplex::elementary(0, IntMatrix::from_rows(&[[-1]])).unwrap();
        let g = build_contraction(&e).unwrap();
        assert_eq!(g.gamma()[0], IntMatrix::from_rows(&[[-1]]));
    }

    #[test]
    fn elementary_torsions() {
        let e = SignedComplex::elementary(0, IntMatrix::identity(1)).unwrap();
        assert_eq!(torsion_contractible(&e).unwrap(), SignK1::ZERO);
        let e = SignedComplex::elementary(0, IntMatrix::from_rows(&[[-1]])).unwrap();
        assert_eq!(torsion_contractible(&e).unwrap(), SignK1::ONE);
        assert_eq!(torsion_contractible(&elementary(&[[1, 1], [0, 1]])).unwrap(), SignK1::ZERO);
        assert_eq!(torsion_contractible(&elementary(&[[0, 1], [1, 0]])).unwrap(), SignK1::ONE);
    }

    #[test]
    fn non_acyclic_reports_degree() {
        let c = SignedComplex::elementary(1, IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(build_contraction(&c), Err(Error::NotAcyclic { degree: 1 }));
        let z = SignedComplex::concentrated(0, 1);
        assert_eq!(torsion(&z), Err(Error::NotAcyclic { degree: 0 }));
    }

    #[test]
    fn cone_of_identity_contracts() {
        let c = SignedComplex::new(
            vec![2, 3, 1],
            vec![IntMatrix::from_rows(&[[1, 0, 2], [0, 0, 0]]), IntMatrix::from_rows(&[[-2], [0], [1]])],
            SignK1::ONE,
        )
        .unwrap();
        let cone = mapping_cone(&ChainMap::identity(&c));
        let g = build_contraction(&cone).unwrap();
        assert!(g.is_valid_for(&cone));
        assert_eq!(tau_new_map(&ChainMap::identity(&c)).unwrap(), SignK1::ZERO);
    }

    #[test]
    fn contraction_independence() {
        let c = SignedComplex::new(
            vec![1, 2, 1],
            vec![IntMatrix::from_rows(&[[1, 1]]), IntMatrix::from_rows(&[[1], [-1]])],
            SignK1::ZERO,
        )
        .unwrap();
        let base = build_contraction(&c).unwrap();
        let t0 = torsion_with(&c, &base).unwrap();
        let mut seen = vec![base.clone()];
        for (seed, normalize) in [([1, 2, 3], false), ([-4, 0, 7], true), ([5, 5, -1], true)] {
            let g = perturb_contraction(&c, &base, &seed, normalize).unwrap();
            assert_eq!(torsion_with(&c, &g).unwrap(), t0);
            seen.push(g);
        }
        seen.dedup();
        assert!(seen.len() >= 3);
    }

    #[test]
    fn map_torsion_examples() {
        let z0 = SignedComplex::concentrated(0, 1);
        assert_eq!(tau_new_map(&ChainMap::identity(&z0)).unwrap(), SignK1::ZERO);
        assert_eq!(tau_new_map(&ChainMap::identity(&z0).negate()).unwrap(), SignK1::ONE);
        let z1 = SignedComplex::concentrated(1, 1);
        assert_eq!(tau_new_map(&ChainMap::identity(&z1).negate()).unwrap(), SignK1::ONE);

        let c = SignedComplex::concentrated(0, 3);
        let p = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let f = ChainMap::new(c.clone(), c.clone(), vec![p.clone()]).unwrap();
        assert_eq!(tau_new_map(&f).unwrap(), unit_det(&p).unwrap());
        assert_eq!(tau_iso(&f).unwrap(), SignK1::ONE);
    }

    #[test]
    fn tau_iso_matches_cone_route() {
        let c = SignedComplex::new(
            vec![2, 2],
            vec![IntMatrix::from_rows(&[[1, 2], [0, 0]])],
            SignK1::ONE,
        )
        .unwrap();
        let p = vec![IntMatrix::from_rows(&[[2, 1], [1, 1]]), IntMatrix::from_rows(&[[0, 1], [1, 0]])];
        let (c2, iso) = change_basis(&c, &p).unwrap();
        let iso = iso.with_complexes(c2.with_eta(SignK1::ZERO), c.clone()).unwrap();
        assert_eq!(tau_iso(&iso).unwrap(), tau_new_map(&iso).unwrap());
        let sum = direct_sum_map(&iso, &ChainMap::identity(&c)).unwrap();
        assert_eq!(tau_new_map(&sum).unwrap(), tau_new_map(&iso).unwrap());
    }

    #[test]
    fn non_equivalence_is_rejected() {
        let z0 = SignedComplex::concentrated(0, 1);
        let f = ChainMap::zero(&z0, &z0);
        assert_eq!(tau_new_map(&f), Err(Error::NotEquivalence));
    }
}
