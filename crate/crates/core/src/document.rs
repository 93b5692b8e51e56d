//! JSON documents for complexes, maps, symmetric complexes, filtered complexes and forms.
//!
//! Integers are decimal strings of any length. Matrices carry an explicit shape, empty
//! ones included.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::chain::{ChainMap, SignedComplex};
use crate::error::{Error, Result};
use crate::filtered::{assemble, FilteredComplex};
use crate::linalg::IntMatrix;
use crate::poincare::{SymmetricComplex, UnimodularForm};
use crate::sign::SignK1;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub shape: [usize; 2],
    pub data: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub ranks: Vec<usize>,
    /// d_1, …, d_top
    pub diffs: Vec<MatrixDoc>,
    pub eta: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub mats: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetricDoc {
    pub n: usize,
    pub complex: ComplexDoc,
    /// φ₀ : C^{n−r} → C_r for r = 0..=n
    pub phi0: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub degree: usize,
    pub filtration: usize,
    pub j: usize,
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilteredDoc {
    pub k: usize,
    /// blocks[R][p] = rank C_{R,p}
    pub blocks: Vec<Vec<usize>>,
    /// nonzero d_j : C_{R,p} → C_{R−1,p−j}
    pub components: Vec<ComponentDoc>,
    pub piece_signs: Vec<u8>,
    pub ambient: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Complex(ComplexDoc),
    Map(MapDoc),
    Symmetric(SymmetricDoc),
    Filtered(FilteredDoc),
    Form(FormDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

/// A parsed document as library values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Complex(SignedComplex),
    Map(ChainMap),
    Symmetric(SymmetricComplex),
    Filtered(FilteredComplex),
    Form(UnimodularForm),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Complex(_) => "complex",
            Object::Map(_) => "map",
            Object::Symmetric(_) => "symmetric",
            Object::Filtered(_) => "filtered",
            Object::Form(_) => "form",
        }
    }

    pub fn to_document(&self) -> Document {
        let payload = match self {
            Object::Complex(c) => Payload::Complex(complex_doc(c)),
            Object::Map(f) => Payload::Map(map_doc(f)),
            Object::Symmetric(x) => Payload::Symmetric(SymmetricDoc {
                n: x.dim(),
                complex: complex_doc(x.complex()),
                phi0: x.phi0_mats().iter().map(matrix_doc).collect(),
            }),
            Object::Filtered(f) => Payload::Filtered(filtered_doc(f)),
            Object::Form(h) => Payload::Form(FormDoc { matrix: matrix_doc(h.matrix()) }),
        };
        Document { schema_version: SCHEMA_VERSION, payload }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_document()).expect("documents serialize")
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaError(format!("unsupported schema_version {}", doc.schema_version)));
        }
        Ok(doc)
    }

    pub fn to_object(&self) -> Result<Object> {
        Ok(match &self.payload {
            Payload::Complex(c) => Object::Complex(complex_from(c)?),
            Payload::Map(m) => Object::Map(map_from(m)?),
            Payload::Symmetric(s) => {
                let c = complex_from(&s.complex)?;
                let phi = s.phi0.iter().map(matrix_from).collect::<Result<_>>()?;
                Object::Symmetric(SymmetricComplex::new(c, s.n, phi)?)
            }
            Payload::Filtered(f) => Object::Filtered(filtered_from(f)?),
            Payload::Form(f) => Object::Form(UnimodularForm::new(matrix_from(&f.matrix)?)?),
        })
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Parses and validates a document in one step.
pub fn parse_object(text: &str) -> Result<Object> {
    Document::parse(text)?.to_object()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn matrix_doc(m: &IntMatrix) -> MatrixDoc {
    MatrixDoc { shape: [m.rows(), m.cols()], data: m.entries().iter().map(BigInt::to_string).collect() }
}

pub fn matrix_from(m: &MatrixDoc) -> Result<IntMatrix> {
    let [rows, cols] = m.shape;
    if m.data.len() != rows * cols {
        return Err(Error::SchemaError(format!("matrix of shape {rows}x{cols} has {} entries", m.data.len())));
    }
    let data = m
        .data
        .iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::SchemaError(format!("not a decimal integer: {s:?}"))))
        .collect::<Result<_>>()?;
    IntMatrix::from_vec(rows, cols, data)
}

fn sign_from(bit: u8) -> Result<SignK1> {
    match bit {
        0 | 1 => Ok(SignK1::from_int(bit as i64)),
        _ => Err(Error::SchemaError(format!("sign must be 0 or 1, got {bit}"))),
    }
}

pub fn complex_doc(c: &SignedComplex) -> ComplexDoc {
    ComplexDoc { ranks: c.ranks().to_vec(), diffs: c.diffs().iter().map(matrix_doc).collect(), eta: c.eta().bit() }
}

pub fn complex_from(c: &ComplexDoc) -> Result<SignedComplex> {
    let diffs = c.diffs.iter().map(matrix_from).collect::<Result<_>>()?;
    SignedComplex::new(c.ranks.clone(), diffs, sign_from(c.eta)?)
}

pub fn map_doc(f: &ChainMap) -> MapDoc {
    MapDoc { source: complex_doc(f.source()), target: complex_doc(f.target()), mats: f.mats().iter().map(matrix_doc).collect() }
}

pub fn map_from(m: &MapDoc) -> Result<ChainMap> {
    let mats = m.mats.iter().map(matrix_from).collect::<Result<_>>()?;
    ChainMap::new(complex_from(&m.source)?, complex_from(&m.target)?, mats)
}

pub fn filtered_doc(f: &FilteredComplex) -> FilteredDoc {
    let mut components = Vec::new();
    for r in 1..=f.top() as i64 {
        for p in 0..=f.k() as i64 {
            for j in 0..=p {
                let m = f.component(j, r, p);
                if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                    components.push(ComponentDoc {
                        degree: r as usize,
                        filtration: p as usize,
                        j: j as usize,
                        matrix: matrix_doc(&m),
                    });
                }
            }
        }
    }
    FilteredDoc {
        k: f.k(),
        blocks: f.blocks().to_vec(),
        components,
        piece_signs: f.piece_signs().iter().map(|s| s.bit()).collect(),
        ambient: f.ambient().bit(),
    }
}

pub fn filtered_from(f: &FilteredDoc) -> Result<FilteredComplex> {
    if f.blocks.iter().any(|row| row.len() != f.k + 1) {
        return Err(Error::SchemaError(format!("every block row needs k + 1 = {} entries", f.k + 1)));
    }
    let rank = |r: i64, p: i64| -> usize {
        if r < 0 || p < 0 || p > f.k as i64 {
            0
        } else {
            f.blocks.get(r as usize).map_or(0, |row| row[p as usize])
        }
    };
    let top = f.blocks.len() as i64 - 1;
    let mut comps = std::collections::HashMap::new();
    for c in &f.components {
        let m = matrix_from(&c.matrix)?;
        let (r, p, j) = (c.degree as i64, c.filtration as i64, c.j as i64);
        if r < 1 || r > top || j > p || p > f.k as i64 {
            return Err(Error::SchemaError(format!("component d_{j} at ({r}, {p}) is out of range")));
        }
        if m.shape() != (rank(r - 1, p - j), rank(r, p)) {
            return Err(Error::SchemaError(format!("component d_{j} at ({r}, {p}) has shape {:?}", m.shape())));
        }
        if comps.insert((r, p, j), m).is_some() {
            return Err(Error::SchemaError(format!("component d_{j} at ({r}, {p}) appears twice")));
        }
    }
    let diffs = (1..=top)
        .map(|r| {
            assemble(&f.blocks, r, |p, j| {
                comps.get(&(r, p, j)).cloned().unwrap_or_else(|| IntMatrix::zeros(rank(r - 1, p - j), rank(r, p)))
            })
        })
        .collect();
    let signs = f.piece_signs.iter().map(|&b| sign_from(b)).collect::<Result<_>>()?;
    FilteredComplex::new(f.k, f.blocks.clone(), diffs, signs, sign_from(f.ambient)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{Bounds, Gen};
    use crate::poincare::round_example;

    fn round_trip(o: &Object) {
        let text = o.to_document().to_string_pretty();
        assert_eq!(&parse_object(&text).unwrap(), o);
    }

    #[test]
    fn objects_round_trip() {
        let mut g = Gen::new(3, 0, Bounds::default());
        for _ in 0..10 {
            round_trip(&Object::Complex(g.complex(3, 3, true)));
            round_trip(&Object::Symmetric(g.symmetric(4)));
            round_trip(&Object::Form(g.form(5)));
            round_trip(&Object::Filtered(g.filtered(2, 3, 2, 2, true)));
            let c = g.complex(2, 2, false);
            round_trip(&Object::Map(g.equivalence_from(&c)));
        }
        round_trip(&Object::Symmetric(round_example()));
    }

    #[test]
    fn big_entries_survive() {
        let mut m = IntMatrix::zeros(1, 1);
        m.set(0, 0, "123456789012345678901234567890".parse().unwrap());
        assert_eq!(matrix_from(&matrix_doc(&m)).unwrap(), m);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(Document::parse("{}"), Err(Error::SchemaError(_))));
        let bad = r#"{"schema_version":1,"kind":"form","matrix":{"shape":[1,1],"data":["x"]}}"#;
        assert!(matches!(parse_object(bad), Err(Error::SchemaError(_))));
        let bad = r#"{"schema_version":2,"kind":"form","matrix":{"shape":[1,1],"data":["1"]}}"#;
        assert!(matches!(Document::parse(bad), Err(Error::SchemaError(_))));
    }
}
