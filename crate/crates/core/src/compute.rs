//! One-shot computations on documents, shared by the `tl compute` command and the fixtures.

use serde_json::{json, Value};

use crate::chain::{dual_complex, mapping_cone};
use crate::document::{complex_doc, map_doc, sha256_hex, Object};
use crate::error::{Error, Result};
use crate::filtered::{amalgamate, filtered_dual, graded_torsion, tensor_filtered, theta_map};
use crate::poincare::{form_to_complex, signature, tau_new_symmetric, tensor_symmetric, SymmetricComplex};
use crate::torsion::{tau_iso, tau_new_map, torsion_contractible};

pub const COMMANDS: &[&str] =
    &["chi", "tau", "tau-map", "tau-sym", "sign", "cone", "dual", "tensor", "graded", "amalgamate", "theta"];

/// Options beyond the primary input.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub dim: Option<usize>,
    pub with: Option<Object>,
}

fn wrong_kind(command: &str, o: &Object) -> Error {
    Error::SchemaError(format!("`{command}` does not accept a {} document", o.kind()))
}

fn as_symmetric(command: &str, o: &Object) -> Result<SymmetricComplex> {
    match o {
        Object::Symmetric(x) => Ok(x.clone()),
        Object::Form(h) => Ok(form_to_complex(h, 0)),
        other => Err(wrong_kind(command, other)),
    }
}

fn need_dim(command: &str, opts: &Options) -> Result<usize> {
    opts.dim.ok_or_else(|| Error::SchemaError(format!("`{command}` needs --dim")))
}

/// Runs `command` and returns its value as JSON.
pub fn compute(command: &str, input: &Object, opts: &Options) -> Result<Value> {
    Ok(match command {
        "chi" => match input {
            Object::Complex(c) => json!(c.euler_char()),
            Object::Symmetric(x) => json!(x.euler_char()),
            Object::Filtered(f) => json!(f.total_complex().euler_char()),
            Object::Form(h) => json!(h.rank()),
            other => return Err(wrong_kind(command, other)),
        },
        "tau" => match input {
            Object::Complex(c) => json!(torsion_contractible(c)?.bit()),
            Object::Filtered(f) => json!(torsion_contractible(&f.total_complex())?.bit()),
            other => return Err(wrong_kind(command, other)),
        },
        "tau-map" => match input {
            Object::Map(f) => {
                let t = tau_new_map(f)?;
                if f.is_degreewise_square() {
                    if let Ok(iso) = tau_iso(f) {
                        if iso != t {
                            return Err(Error::InconsistentTorsion(format!("cone {t}, degreewise {iso}")));
                        }
                    }
                }
                json!(t.bit())
            }
            other => return Err(wrong_kind(command, other)),
        },
        "tau-sym" => json!(tau_new_symmetric(&as_symmetric(command, input)?)?.bit()),
        "sign" => match input {
            Object::Form(h) => json!(h.signature()),
            other => json!(signature(&as_symmetric(command, other)?)?),
        },
        "cone" => match input {
            Object::Map(f) => Object::Complex(mapping_cone(f)).to_json(),
            other => return Err(wrong_kind(command, other)),
        },
        "dual" => {
            let n = need_dim(command, opts)?;
            match input {
                Object::Complex(c) => Object::Complex(dual_complex(c, n)?).to_json(),
                Object::Filtered(f) => Object::Filtered(filtered_dual(f, n)?).to_json(),
                other => return Err(wrong_kind(command, other)),
            }
        }
        "tensor" => {
            let other = opts.with.as_ref().ok_or_else(|| Error::SchemaError("`tensor` needs --with".into()))?;
            match (input, other) {
                (Object::Complex(c), Object::Complex(d)) => Object::Filtered(tensor_filtered(c, d)).to_json(),
                (a, b) => {
                    let x = tensor_symmetric(&as_symmetric(command, a)?, &as_symmetric(command, b)?)?;
                    Object::Symmetric(x).to_json()
                }
            }
        }
        "graded" => match input {
            Object::Filtered(f) => {
                let g = f.associated_graded();
                let torsion = match graded_torsion(&g) {
                    Ok(t) => json!(t.bit()),
                    Err(Error::NotContractible) => Value::Null,
                    Err(e) => return Err(e),
                };
                json!({
                    "pieces": g.pieces().iter().map(complex_doc).collect::<Vec<_>>(),
                    "derived": (1..=g.k()).map(|p| map_doc(g.d_star(p))).collect::<Vec<_>>(),
                    "ambient": g.ambient().bit(),
                    "torsion": torsion,
                })
            }
            other => return Err(wrong_kind(command, other)),
        },
        "amalgamate" => match input {
            Object::Filtered(f) => Object::Filtered(amalgamate(f)?).to_json(),
            other => return Err(wrong_kind(command, other)),
        },
        "theta" => match input {
            Object::Filtered(f) => {
                let theta = theta_map(f, need_dim(command, opts)?)?;
                json!({ "map": Object::Map(theta.clone()).to_json(), "torsion": tau_iso(&theta)?.bit() })
            }
            other => return Err(wrong_kind(command, other)),
        },
        _ => return Err(Error::SchemaError(format!("unknown command `{command}`; expected one of {}", COMMANDS.join(", ")))),
    })
}

/// Wraps a value with the command, the input hash and the library version.
pub fn result_document(command: &str, input_bytes: &[u8], value: Value) -> Value {
    json!({
        "schema_version": crate::document::SCHEMA_VERSION,
        "kind": "result",
        "command": command,
        "value": value,
        "provenance": {
            "input_sha256": sha256_hex(input_bytes),
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
        },
    })
}
