//! Filtered duals, the comparison map θ and tensor product filtrations.

use tl_core::chain::SignedComplex;
use tl_core::filtered::{check_kdual, filtered_dual, tensor_filtered, theta_map};
use tl_core::generate::{Bounds, Gen};
use tl_core::torsion::tau_iso;
use tl_core::SignK1;

fn main() -> tl_core::Result<()> {
    // ℤ in degrees 0 and 2 tensored with ℤ in degrees 0 and 1
    let c = SignedComplex::free(vec![1, 0, 1], SignK1::ZERO);
    let d = SignedComplex::free(vec![1, 1], SignK1::ZERO);
    let f = tensor_filtered(&c, &d);
    let fd = filtered_dual(&f, 1)?;
    println!("tensor blocks {:?}, dual blocks {:?}", f.blocks(), fd.blocks());
    println!("structural dual identity {}, τ(θ) = {}", check_kdual(&f, 1)?, tau_iso(&theta_map(&f, 1)?)?);

    let mut g = Gen::new(9, 0, Bounds::default());
    for _ in 0..5 {
        let f = g.admissible(2, 2, 2);
        println!("admissible blocks {:?}: τ(θ) = {}", f.blocks(), tau_iso(&theta_map(&f, 2)?)?);
    }
    Ok(())
}
