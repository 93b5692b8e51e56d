use super::*;
use crate::chain::{dual_complex, SignedComplex};
use crate::generate::{Bounds, Gen};
use crate::linalg::IntMatrix;
use crate::sign::SignK1;
use crate::torsion::{tau_iso, torsion, torsion_with};

fn gen(stream: u64) -> Gen {
    Gen::new(7, stream, Bounds::default())
}

fn pair(u: i64) -> SignedComplex {
    SignedComplex::elementary(0, IntMatrix::from_rows(&[[u]])).unwrap()
}

#[test]
fn tensor_with_unit_is_identity() {
    let mut g = gen(1);
    for _ in 0..20 {
        let d = g.complex(3, 3, true);
        let f = tensor_filtered(&SignedComplex::concentrated(0, 1), &d);
        assert_eq!(f.total_complex(), d);
    }
}

#[test]
fn tensor_euler_characteristics_multiply() {
    let mut g = gen(2);
    for _ in 0..20 {
        let c = g.complex(2, 2, false);
        let d = g.complex(2, 2, false);
        let f = tensor_filtered(&c, &d);
        assert_eq!(f.total_complex().euler_char(), c.euler_char() * d.euler_char());
    }
}

#[test]
fn cone_of_identity_satisfies_invariance() {
    let mut g = gen(3);
    for _ in 0..30 {
        let k = g.below(3);
        let f = g.filtered(k, 3, 2, 2, true);
        let cone = filtered_cone(&FilteredMap::identity(&f));
        let report = check_invariance1(&cone).unwrap();
        assert!(report.holds, "{report:?}");
    }
}

#[test]
fn filtered_contractibles_satisfy_invariance() {
    let mut g = gen(4);
    for _ in 0..40 {
        let f = g.filtered_contractible(3, 2);
        let report = check_invariance1(&f).unwrap();
        assert!(report.holds, "{report:?}");
    }
}

#[test]
fn graded_contraction_gives_a_filtered_contraction() {
    let mut g = gen(5);
    for _ in 0..20 {
        let f = g.filtered_contractible(2, 2);
        let gr = f.associated_graded();
        let gc = graded_contraction(&gr).unwrap();
        assert!(gc.is_valid_for(&gr));
        let seed = g.seed_vec(64);
        let gc2 = perturb_graded_contraction(&gr, &gc, &seed);
        assert!(gc2.is_valid_for(&gr));
        assert_eq!(graded_torsion_with(&gr, &gc).unwrap(), graded_torsion_with(&gr, &gc2).unwrap());
        let total = f.total_complex();
        let gamma = filtered_contraction_from_graded(&f, &gc).unwrap();
        assert!(gamma.is_valid_for(&total));
        assert_eq!(torsion_with(&total, &gamma).unwrap(), torsion(&total).unwrap());
    }
}

#[test]
fn filtered_equivalences_satisfy_invariance() {
    let mut g = gen(6);
    for _ in 0..30 {
        let (f, predicted) = g.filtered_equivalence(2, 2);
        let report = check_invariance2(&f).unwrap();
        assert!(report.holds, "{report:?}");
        if let Some(t) = predicted {
            assert_eq!(report.total, t);
        }
    }
}

#[test]
fn rearrangement_is_simple() {
    let mut g = gen(7);
    for _ in 0..30 {
        let (f, _) = g.filtered_equivalence(2, 2);
        assert_eq!(tau_iso(&rearrangement_rho(&f)).unwrap(), SignK1::ZERO);
    }
}

#[test]
fn truncations_fit_cones_and_sequences() {
    let mut g = gen(8);
    for _ in 0..20 {
        let k = 1 + g.below(3);
        let f = g.filtered(k, 4, 2, 2, true);
        let total = f.total_complex();
        assert_eq!(truncation(&f, k, 0).unwrap().complex, total.with_eta(total.eta() - f.ambient()));
        for ell in 1..=k {
            for r in 1..=ell {
                assert!(check_truncation_cone(&f, ell, r).unwrap());
            }
        }
        for l2 in 1..=k {
            for l1 in 0..l2 {
                for r in 0..=l1 {
                    truncation_ses(&f, l1, l2, r).unwrap();
                }
            }
        }
    }
    let f = g.filtered(1, 2, 1, 1, true);
    assert!(matches!(truncation(&f, 0, 1), Err(crate::Error::BadBounds(_))));
}

#[test]
fn amalgamation_keeps_the_total() {
    let mut g = gen(9);
    for _ in 0..20 {
        let k = 1 + g.below(3);
        let f = g.filtered(k, 4, 2, 2, true);
        assert!(check_amalgamation(&f).unwrap());
    }
}

#[test]
fn dual_pieces_and_theta() {
    let mut g = gen(10);
    for _ in 0..30 {
        let k = g.below(3);
        let n = g.below(4);
        let f = g.admissible(k, n, 2);
        assert!(check_kdual(&f, n).unwrap());
        let theta = theta_map(&f, n).unwrap();
        assert_eq!(tau_iso(&theta).unwrap(), SignK1::ZERO);
        let fd = filtered_dual(&f, n).unwrap();
        assert_eq!(fd.total_complex().ranks(), dual_complex(&f.total_complex(), n + k).unwrap().ranks());
    }
}

#[test]
fn inadmissible_complexes_are_rejected() {
    let f = FilteredComplex::trivial(&SignedComplex::concentrated(0, 1));
    assert!(matches!(filtered_dual(&f, 1), Err(crate::Error::NotAdmissible(_))));
    let f = FilteredComplex::trivial(&SignedComplex::concentrated(2, 1));
    assert!(matches!(filtered_dual(&f, 1), Err(crate::Error::NotAdmissible(_))));
}

#[test]
fn tensor_dual_matches_dual_tensor() {
    let mut g = gen(11);
    let mut checked = 0;
    for _ in 0..40 {
        let k = 1 + g.below(2);
        let n = g.below(3);
        let c = g.complex(k, 2, false).padded(k);
        let d = g.complex(n.max(1), 2, false).trimmed();
        if d.top() > n {
            continue;
        }
        let d = d.padded(n);
        let fd = filtered_dual(&tensor_filtered(&c, &d), n);
        let Ok(fd) = fd else { continue };
        let want = tensor_filtered(&dual_complex(&c, k).unwrap(), &dual_complex(&d, n).unwrap());
        assert_eq!(fd.blocks(), want.blocks());
        assert_eq!(fd.diffs(), want.diffs());
        checked += 1;
    }
    assert!(checked > 5, "{checked}");
}

#[test]
fn diagonal_tensor_sign_needs_even_dimension() {
    let c = pair(1);
    let d = crate::chain::direct_sum(&SignedComplex::concentrated(0, 1), &SignedComplex::concentrated(2, 1));
    assert!(tensor_theta_sign_is_chain_map(&c, &d).unwrap());
    let d = SignedComplex::concentrated(0, 1).padded(1);
    let d = crate::chain::direct_sum(&d, &SignedComplex::concentrated(1, 1));
    assert!(!tensor_theta_sign_is_chain_map(&c, &d).unwrap());
}

#[test]
fn folding_preserves_torsion() {
    let mut g = gen(12);
    for _ in 0..30 {
        let f = g.filtered_contractible(3, 2);
        if f.k() == 0 {
            continue;
        }
        let report = check_fold(&f.associated_graded()).map_err(|e| format!("{e:?} {f:?}")).unwrap();
        assert!(report.holds, "{report:?}");
    }
}

#[test]
fn filtered_maps_compose_and_grade() {
    let mut g = gen(13);
    let f = g.filtered(2, 3, 2, 2, true);
    let (_, iso, _) = g.filtered_basis_change(&f);
    let gm = iso.graded_map();
    assert!(gm.is_valid(&iso.source().associated_graded(), &iso.target().associated_graded()));
    let id = FilteredMap::identity(iso.target());
    assert_eq!(iso.then(&id).unwrap().total_map(), iso.total_map());
}
