//! Torsion of contractible complexes and absolute torsion of chain equivalences.

use tl_core::chain::{direct_sum, direct_sum_map, ChainMap, SignedComplex};
use tl_core::generate::{Bounds, Gen};
use tl_core::torsion::{build_contraction, tau_new_map, torsion_contractible};
use tl_core::IntMatrix;

fn main() -> tl_core::Result<()> {
    // ℤ --(-1)--> ℤ in degrees 1 → 0
    let e = SignedComplex::elementary(0, IntMatrix::from_rows(&[[-1]]))?;
    println!("τ(ℤ -(-1)-> ℤ) = {}", torsion_contractible(&e)?);
    println!("contraction Γ_0 = {:?}", build_contraction(&e)?.gamma()[0]);

    let mut g = Gen::new(42, 0, Bounds::default());
    let predicted = g.contractible(3, 2);
    println!(
        "random contractible complex with ranks {:?}: τ = {}, predicted by construction = {}",
        predicted.complex.ranks(),
        torsion_contractible(&predicted.complex)?,
        predicted.tau
    );

    let c = g.complex(2, 2, true);
    let f = g.equivalence_from(&c);
    let h = g.equivalence_from(f.target());
    println!("τ(f) = {}, τ(g) = {}, τ(g∘f) = {}", tau_new_map(&f)?, tau_new_map(&h)?, tau_new_map(&f.then(&h)?)?);

    let f2 = g.homotopic(&f);
    println!("τ of a homotopic map: {}", tau_new_map(&f2)?);

    let sum = direct_sum_map(&f, &ChainMap::identity(&e))?;
    println!("τ(f ⊕ 1_E) = {}", tau_new_map(&sum)?);
    println!("η of C ⊕ E = {}", direct_sum(&c, &e).eta());
    Ok(())
}
