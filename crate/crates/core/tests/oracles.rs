//! Cross-checks against independent, deliberately naive computations.

use num_bigint::BigInt;
use proptest::prelude::*;

use tl_core::chain::{direct_sum, mapping_cone, SignedComplex};
use tl_core::generate::{Bounds, Gen};
use tl_core::linalg::{det, invariant_factors, snf, unit_det};
use tl_core::poincare::{form_to_complex, signature, tau_new_symmetric, UnimodularForm};
use tl_core::torsion::{tau_iso, tau_new_map, torsion_contractible};
use tl_core::{IntMatrix, SignK1};

/// Leibniz expansion over all permutations.
fn leibniz(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::from(0);
    fn go(m: &IntMatrix, perm: &mut Vec<usize>, i: usize, total: &mut BigInt) {
        let n = perm.len();
        if i == n {
            let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut p = BigInt::from(if inversions % 2 == 0 { 1 } else { -1 });
            for (r, &c) in perm.iter().enumerate() {
                p *= m.get(r, c);
            }
            *total += p;
            return;
        }
        for j in i..n {
            perm.swap(i, j);
            go(m, perm, i + 1, total);
            perm.swap(i, j);
        }
    }
    go(m, &mut perm, 0, &mut total);
    total
}

/// Eigenvalue signs of a small symmetric matrix by cyclic Jacobi rotations in f64.
fn float_signature(m: &IntMatrix) -> i64 {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).to_string().parse::<f64>().unwrap()).collect()).collect();
    for _ in 0..200 {
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-12 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let (c, s) = (1.0 / (t * t + 1.0).sqrt(), t / (t * t + 1.0).sqrt());
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (row_p, row_q) = (a[p].clone(), a[q].clone());
                for k in 0..n {
                    a[p][k] = c * row_p[k] - s * row_q[k];
                    a[q][k] = s * row_p[k] + c * row_q[k];
                }
            }
        }
    }
    (0..n).map(|i| if a[i][i] > 1e-9 { 1 } else if a[i][i] < -1e-9 { -1 } else { 0 }).sum()
}

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| IntMatrix::from_vec(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
}

proptest! {
    #[test]
    fn determinant_matches_leibniz(m in (1usize..=5).prop_flat_map(small_matrix)) {
        prop_assert_eq!(det(&m).unwrap(), leibniz(&m));
    }

    #[test]
    fn smith_form_recovers_the_determinant(m in (1usize..=5).prop_flat_map(small_matrix)) {
        let (s, u, v) = snf(&m);
        prop_assert_eq!(&(&u * &m) * &v, s);
        let product = invariant_factors(&m).iter().fold(BigInt::from(1), |acc, x| acc * x);
        let d = leibniz(&m);
        let rank_full = invariant_factors(&m).len() == m.rows();
        if rank_full {
            prop_assert_eq!(product, if d < BigInt::from(0) { -d } else { d });
        } else {
            prop_assert_eq!(d, BigInt::from(0));
        }
    }

    #[test]
    fn unit_det_is_multiplicative(seed in any::<u64>(), n in 1usize..6) {
        let mut g = Gen::new(seed, 0, Bounds::default());
        let (a, da) = g.unimodular(n);
        let (b, db) = g.unimodular(n);
        prop_assert_eq!(unit_det(&a).unwrap(), da);
        prop_assert_eq!(unit_det(&(&a * &b)).unwrap(), da + db);
    }
}

#[test]
fn signatures_match_floating_point_eigenvalues() {
    for t in 0..200 {
        let mut g = Gen::new(11, t, Bounds::default());
        let h = g.form(6);
        assert_eq!(h.signature(), float_signature(h.matrix()), "{:?}", h.matrix());
        let x = form_to_complex(&h, 1);
        assert_eq!(signature(&x).unwrap(), h.signature());
    }
    assert_eq!(float_signature(UnimodularForm::e8().matrix()), 8);
}

#[test]
fn hyperbolic_plane_has_torsion_one() {
    // H : L* → L has det −1; the complex is ℤ² in degree 0 with nothing else
    let x = form_to_complex(&UnimodularForm::hyperbolic(), 0);
    assert_eq!(tau_new_symmetric(&x).unwrap(), SignK1::ONE);
    assert_eq!(leibniz(UnimodularForm::hyperbolic().matrix()), BigInt::from(-1));
}

#[test]
fn predicted_contractible_torsion() {
    for t in 0..300 {
        let mut g = Gen::new(5, t, Bounds::default());
        let top = 1 + g.below(4);
        let p = g.contractible(top, 3);
        assert_eq!(torsion_contractible(&p.complex).unwrap(), p.tau, "trial {t}");
    }
}

#[test]
fn basis_changes_and_cones_agree() {
    for t in 0..200 {
        let mut g = Gen::new(6, t, Bounds::default());
        let c = g.complex(3, 3, true);
        let (_, iso, det) = g.basis_change(&c);
        assert_eq!(tau_iso(&iso).unwrap(), det);
        assert_eq!(tau_new_map(&iso).unwrap(), det);
    }
}

#[test]
fn elementary_complexes() {
    // ℤ --u--> ℤ in degrees 1, 0: d + Γ is the 1×1 matrix (u)
    for (u, want) in [(1, SignK1::ZERO), (-1, SignK1::ONE)] {
        let e = SignedComplex::elementary(0, IntMatrix::from_rows(&[[u]])).unwrap();
        assert_eq!(torsion_contractible(&e).unwrap(), want);
    }
    let two = SignedComplex::elementary(0, IntMatrix::from_rows(&[[2]])).unwrap();
    assert!(torsion_contractible(&two).is_err());
    let id = tl_core::chain::ChainMap::identity(&direct_sum(&two, &SignedComplex::concentrated(1, 2)));
    assert!(mapping_cone(&id).is_acyclic());
    assert_eq!(tau_new_map(&id).unwrap(), SignK1::ZERO);
}
