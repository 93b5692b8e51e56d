//! JSON documents: emitting, parsing and computing with provenance.

use tl_core::compute::{compute, result_document, Options};
use tl_core::document::{parse_object, Object};
use tl_core::poincare::round_example;

fn main() -> tl_core::Result<()> {
    let text = Object::Symmetric(round_example()).to_document().to_string_pretty();
    let parsed = parse_object(&text)?;
    println!("round trip exact: {}", parsed == Object::Symmetric(round_example()));
    for command in ["chi", "sign", "tau-sym"] {
        let value = compute(command, &parsed, &Options::default())?;
        println!("{}", result_document(command, text.as_bytes(), value));
    }
    Ok(())
}
