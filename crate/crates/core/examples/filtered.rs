//! Filtered complexes: associated graded torsion, the two invariance identities, truncations
//! and amalgamation.

use tl_core::filtered::{
    amalgamate, check_amalgamation, check_fold, check_invariance1, check_invariance2, check_truncation_cone,
    filtered_cone, rearrangement_rho, truncation, FilteredMap,
};
use tl_core::generate::{Bounds, Gen};
use tl_core::torsion::tau_iso;

fn main() -> tl_core::Result<()> {
    let mut g = Gen::new(5, 0, Bounds::default());
    let f = g.filtered(2, 3, 2, 2, true);
    println!("a 2-filtered complex with blocks {:?}", f.blocks());

    let cone = filtered_cone(&FilteredMap::identity(&f));
    let r = check_invariance1(&cone)?;
    println!("cone of the identity: τ(total) = {}, i_*τ(graded) = {}", r.total, r.graded);
    println!("folding the top step: {:?}", check_fold(&cone.associated_graded())?.holds);

    let (e, _) = g.filtered_equivalence(2, 2);
    let r = check_invariance2(&e)?;
    println!("filtered equivalence: τ(f) = {}, graded side = {}", r.total, r.graded);
    println!("τ(ρ) = {}", tau_iso(&rearrangement_rho(&e))?);

    let t = truncation(&f, 2, 1)?;
    println!("T(2,1) ranks {:?}, cone identity {}", t.complex.ranks(), check_truncation_cone(&f, 2, 1)?);
    let a = amalgamate(&f)?;
    println!("amalgamated blocks {:?}, total preserved {}", a.blocks(), check_amalgamation(&f)?);
    Ok(())
}
