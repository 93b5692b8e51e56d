//! Reference documents shipped with the crate, and the values they must produce.

use serde_json::{json, Value};

use crate::chain::SignedComplex;
use crate::document::{parse_object, Object};
use crate::error::Result;
use crate::filtered::tensor_filtered;
use crate::poincare::{round_example, UnimodularForm};
use crate::sign::SignK1;

pub const FIXTURES: &[(&str, &str)] = &[
    ("unit", include_str!("../fixtures/unit.json")),
    ("hyperbolic", include_str!("../fixtures/hyperbolic.json")),
    ("e8", include_str!("../fixtures/e8.json")),
    ("diag-plus", include_str!("../fixtures/diag-plus.json")),
    ("diag-minus", include_str!("../fixtures/diag-minus.json")),
    ("diag-mixed", include_str!("../fixtures/diag-mixed.json")),
    ("round", include_str!("../fixtures/round.json")),
    ("tensor2", include_str!("../fixtures/tensor2.json")),
];

/// The object each fixture file is expected to contain.
pub fn build(name: &str) -> Option<Object> {
    Some(match name {
        "unit" => Object::Form(UnimodularForm::unit()),
        "hyperbolic" => Object::Form(UnimodularForm::hyperbolic()),
        "e8" => Object::Form(UnimodularForm::e8()),
        "diag-plus" => Object::Form(UnimodularForm::diagonal(&[1, 1]).ok()?),
        "diag-minus" => Object::Form(UnimodularForm::diagonal(&[-1]).ok()?),
        "diag-mixed" => Object::Form(UnimodularForm::diagonal(&[1, -1, -1]).ok()?),
        "round" => Object::Symmetric(round_example()),
        "tensor2" => {
            // ℤ in degrees 0 and 2 tensored with ℤ in degrees 0 and 1
            let c = SignedComplex::free(vec![1, 0, 1], SignK1::ZERO);
            let d = SignedComplex::free(vec![1, 1], SignK1::ZERO);
            Object::Filtered(tensor_filtered(&c, &d))
        }
        _ => return None,
    })
}

pub fn text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Option<Result<Object>> {
    text(name).map(parse_object)
}

/// (fixture, command, --dim, expected value)
pub fn expectations() -> Vec<(&'static str, &'static str, Option<usize>, Value)> {
    vec![
        ("hyperbolic", "tau-sym", None, json!(1)),
        ("e8", "sign", None, json!(8)),
        ("round", "chi", None, json!(0)),
        ("round", "tau-sym", None, json!(1)),
        ("round", "sign", None, json!(2)),
        ("unit", "tau-sym", None, json!(0)),
        ("diag-plus", "tau-sym", None, json!(0)),
        ("diag-minus", "tau-sym", None, json!(1)),
        ("diag-mixed", "sign", None, json!(-1)),
        ("tensor2", "chi", None, json!(0)),
    ]
}
