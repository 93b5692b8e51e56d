//! Tensor products of symmetric complexes and the product formula for τ^NEW.

use tl_core::poincare::{form_to_complex, signature, tau_new_symmetric, tensor_symmetric, UnimodularForm};
use tl_core::SignK1;

fn main() -> tl_core::Result<()> {
    let pairs = [
        (UnimodularForm::unit(), 0, UnimodularForm::hyperbolic(), 0),
        (UnimodularForm::hyperbolic(), 1, UnimodularForm::unit().negate(), 0),
        (UnimodularForm::diagonal(&[1, -1, -1])?, 1, UnimodularForm::hyperbolic(), 1),
    ];
    for (a, ka, b, kb) in pairs {
        let (x, y) = (form_to_complex(&a, ka), form_to_complex(&b, kb));
        let xy = tensor_symmetric(&x, &y)?;
        let (tx, ty) = (tau_new_symmetric(&x)?, tau_new_symmetric(&y)?);
        let formula = SignK1::from_int(x.euler_char() * ty.bit() as i64 + y.euler_char() * tx.bit() as i64);
        println!(
            "dim {} ⊗ dim {}: ranks {:?}, τ = {} (χτ + χτ gives {}), σ = {} = {}·{}",
            x.dim(),
            y.dim(),
            xy.complex().ranks(),
            tau_new_symmetric(&xy)?,
            formula,
            signature(&xy)?,
            signature(&x)?,
            signature(&y)?
        );
    }
    Ok(())
}
