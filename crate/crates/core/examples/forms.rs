//! Unimodular forms as Poincaré complexes: signature, τ^NEW and their congruences.

use tl_core::poincare::{
    check_det_mod4, check_mod8_even, check_signmod4, form_to_complex, round_example, signature, tau_new_symmetric,
    UnimodularForm,
};

fn main() -> tl_core::Result<()> {
    let forms = [
        ("⟨1⟩", UnimodularForm::unit()),
        ("⟨-1⟩", UnimodularForm::unit().negate()),
        ("H", UnimodularForm::hyperbolic()),
        ("E8", UnimodularForm::e8()),
        ("⟨1⟩ ⊕ ⟨-1⟩ ⊕ H", UnimodularForm::diagonal(&[1, -1])?.orthogonal_sum(&UnimodularForm::hyperbolic())),
    ];
    for (name, h) in &forms {
        let x = form_to_complex(h, 1);
        let report = check_signmod4(&x)?;
        let det = check_det_mod4(h)?;
        println!(
            "{name:>16}: rank {} det {:>2} σ {:>2} τ {}  sign mod 4 {} = {}  det rule {}",
            h.rank(),
            h.det(),
            report.signature,
            report.tau,
            report.lhs,
            report.rhs,
            det.holds()
        );
    }
    println!("E8 ⊕ E8 signature mod 8: {:?}", check_mod8_even(&UnimodularForm::e8().orthogonal_sum(&UnimodularForm::e8()))?);

    let round = round_example();
    println!(
        "round example: χ = {}, σ = {}, τ = {}",
        round.euler_char(),
        signature(&round)?,
        tau_new_symmetric(&round)?
    );
    Ok(())
}
