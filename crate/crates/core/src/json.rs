//! JSON documents for algebras.
//!
//! ```json
//! {"name": "so3", "kind": "lie",
//!  "basis": [{"label": "e1", "degree": [0, 0]}, ...],
//!  "brackets": [{"left": 0, "right": 1, "value": [{"basis": 2, "coeff": {"zeta8": ["1", "0", "0", "0"]}}]}]}
//! ```
//!
//! `kind` is `lie` (the default), `super` or `assoc`. Lie and super documents
//! list brackets with `left <= right`; the remaining entries follow from
//! antisymmetry with the matching sign. Super documents also carry
//! `involution`, a list of images `{"basis": i, "image": [...]}`. Associative
//! documents list every nonzero product under `products` and may give `unit`.
//! `left`, `right` and `basis` accept indices or labels.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::equivalence::SuperLieAlgebraWithInvolution;
use crate::error::{Error, Result};
use crate::lie::{BiGradedAssocAlgebra, BiGradedLieAlgebra};
use crate::linear::{BasisElement, BiGradedSpace, BilinearMap, LinearMap, Vector};
use crate::scalar::{BiDegree, CycloScalar, SignRule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Lie(BiGradedLieAlgebra),
    Super(SuperLieAlgebraWithInvolution),
    Assoc(BiGradedAssocAlgebra),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lie(_) => "lie",
            Document::Super(_) => "super",
            Document::Assoc(_) => "assoc",
        }
    }

    pub fn into_lie(self) -> Result<BiGradedLieAlgebra> {
        match self {
            Document::Lie(g) => Ok(g),
            other => Err(Error::Malformed(format!("expected a lie document, found {}", other.kind()))),
        }
    }

    pub fn into_super(self) -> Result<SuperLieAlgebraWithInvolution> {
        match self {
            Document::Super(s) => Ok(s),
            other => Err(Error::Malformed(format!("expected a super document, found {}", other.kind()))),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Lie(g) => lie_to_value(g),
            Document::Super(s) => super_to_value(s),
            Document::Assoc(a) => assoc_to_value(a),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize") + "\n"
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Index {
    Number(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    basis: Index,
    coeff: CycloScalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryIn {
    left: Index,
    right: Index,
    value: Vec<TermIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageIn {
    basis: Index,
    image: Vec<TermIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisIn {
    label: String,
    degree: BiDegree,
    #[serde(default)]
    parity: Option<u8>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DocIn {
    name: String,
    #[serde(default)]
    kind: Option<String>,
    basis: Vec<BasisIn>,
    #[serde(default)]
    brackets: Vec<EntryIn>,
    #[serde(default)]
    involution: Option<Vec<ImageIn>>,
    #[serde(default)]
    products: Vec<EntryIn>,
    #[serde(default)]
    unit: Option<Vec<TermIn>>,
}

fn resolve(space: &BiGradedSpace, i: &Index) -> Result<usize> {
    match i {
        Index::Number(k) if *k < space.dim() => Ok(*k),
        Index::Number(k) => Err(Error::Malformed(format!("basis index {k} out of range"))),
        Index::Label(l) => space.index_of(l),
    }
}

fn vector(space: &BiGradedSpace, terms: &[TermIn]) -> Result<Vector> {
    let mut v = Vector::zero(space.dim());
    for t in terms {
        v.add_term(resolve(space, &t.basis)?, &t.coeff);
    }
    Ok(v)
}

fn entries(space: &BiGradedSpace, list: &[EntryIn], upper: bool) -> Result<Vec<(usize, usize, Vector)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(list.len());
    for e in list {
        let (i, j) = (resolve(space, &e.left)?, resolve(space, &e.right)?);
        if upper && i > j {
            return Err(Error::Malformed(format!("bracket entry ({i}, {j}) must have left <= right")));
        }
        if !seen.insert((i, j)) {
            return Err(Error::Malformed(format!("entry ({i}, {j}) listed twice")));
        }
        out.push((i, j, vector(space, &e.value)?));
    }
    Ok(out)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: DocIn = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let basis = doc
        .basis
        .iter()
        .map(|b| {
            if b.parity.is_some_and(|p| p != b.degree.parity()) {
                return Err(Error::Malformed(format!("parity of `{}` disagrees with its degree", b.label)));
            }
            Ok(BasisElement { label: b.label.clone(), degree: b.degree })
        })
        .collect::<Result<Vec<_>>>()?;
    let space = Arc::new(BiGradedSpace::new(doc.name.clone(), basis)?);
    let kind = doc.kind.as_deref().unwrap_or("lie");
    let unused = |field: &str, present: bool| {
        if present {
            Err(Error::Malformed(format!("field `{field}` does not apply to kind `{kind}`")))
        } else {
            Ok(())
        }
    };
    match kind {
        "lie" => {
            unused("involution", doc.involution.is_some())?;
            unused("products", !doc.products.is_empty())?;
            unused("unit", doc.unit.is_some())?;
            let e = entries(&space, &doc.brackets, true)?;
            Ok(Document::Lie(BiGradedLieAlgebra::from_upper(space, e)))
        }
        "super" => {
            unused("products", !doc.products.is_empty())?;
            unused("unit", doc.unit.is_some())?;
            let e = entries(&space, &doc.brackets, true)?;
            let g = BiGradedLieAlgebra::from_upper_with(space.clone(), e, SignRule::Super);
            let images = doc.involution.ok_or_else(|| Error::Malformed("super document needs `involution`".into()))?;
            let mut involution = LinearMap::new(space.clone(), space.clone(), BiDegree::D00);
            for im in &images {
                involution.set_image(resolve(&space, &im.basis)?, vector(&space, &im.image)?);
            }
            Ok(Document::Super(SuperLieAlgebraWithInvolution {
                space,
                super_bracket: g.bracket_map().clone(),
                involution,
            }))
        }
        "assoc" => {
            unused("involution", doc.involution.is_some())?;
            unused("brackets", !doc.brackets.is_empty())?;
            let mut product = BilinearMap::zero(space.clone());
            for (i, j, v) in entries(&space, &doc.products, false)? {
                product.set(i, j, v);
            }
            let unit = doc.unit.as_deref().map(|u| vector(&space, u)).transpose()?;
            Ok(Document::Assoc(BiGradedAssocAlgebra::new(product, unit)))
        }
        other => Err(Error::Malformed(format!("unknown kind `{other}`"))),
    }
}

pub fn parse_lie(text: &str) -> Result<BiGradedLieAlgebra> {
    parse_document(text)?.into_lie()
}

#[derive(Serialize)]
struct BasisOut<'a> {
    label: &'a str,
    degree: BiDegree,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<u8>,
}

fn basis_value(space: &BiGradedSpace, with_parity: bool) -> Value {
    let items: Vec<BasisOut> = space
        .basis()
        .iter()
        .map(|b| BasisOut { label: &b.label, degree: b.degree, parity: with_parity.then(|| b.degree.parity()) })
        .collect();
    serde_json::to_value(items).expect("basis serializes")
}

fn table_value(map: &BilinearMap, upper: bool) -> Value {
    let rows: Vec<Value> = map
        .entries()
        .filter(|((i, j), v)| (!upper || i <= j) && !v.is_zero())
        .map(|((i, j), v)| json!({"left": i, "right": j, "value": v}))
        .collect();
    Value::Array(rows)
}

pub fn lie_to_value(g: &BiGradedLieAlgebra) -> Value {
    json!({
        "name": g.name(),
        "kind": "lie",
        "basis": basis_value(g.space(), false),
        "brackets": table_value(g.bracket_map(), true),
    })
}

pub fn super_to_value(s: &SuperLieAlgebraWithInvolution) -> Value {
    let images: Vec<Value> = (0..s.space.dim())
        .map(|i| json!({"basis": i, "image": s.involution.image(i)}))
        .filter(|v| v["image"].as_array().is_some_and(|a| !a.is_empty()))
        .collect();
    json!({
        "name": s.space.name(),
        "kind": "super",
        "basis": basis_value(&s.space, true),
        "brackets": table_value(&s.super_bracket, true),
        "involution": images,
    })
}

pub fn assoc_to_value(a: &BiGradedAssocAlgebra) -> Value {
    let mut v = json!({
        "name": a.name(),
        "kind": "assoc",
        "basis": basis_value(a.space(), false),
        "products": table_value(a.product_map(), false),
    });
    if let Some(u) = a.unit() {
        v["unit"] = serde_json::to_value(u).expect("vector serializes");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::equivalence::unbraid;

    #[test]
    fn round_trips() {
        for g in catalog::lie_algebras() {
            let d = Document::Lie(g.clone());
            assert_eq!(parse_lie(&d.to_json_string()).unwrap(), g);
            let s = unbraid(&g).unwrap();
            let back = parse_document(&Document::Super(s.clone()).to_json_string()).unwrap();
            assert_eq!(back.into_super().unwrap(), s);
        }
        let b = catalog::algebra_b();
        assert_eq!(parse_document(&Document::Assoc(b.clone()).to_json_string()).unwrap(), Document::Assoc(b));
    }

    #[test]
    fn labels_and_defaults() {
        let text = r#"{"name": "t", "basis": [{"label": "a", "degree": [0,0]}, {"label": "b", "degree": [0,0]}],
            "brackets": [{"left": "a", "right": "b", "value": [{"basis": "b", "coeff": {"zeta8": ["2","0","0","0"]}}]}]}"#;
        let g = parse_lie(text).unwrap();
        assert_eq!(g.bracket(1, 0), Vector::basis(2, 1).scale(&CycloScalar::from_int(-2)));
    }

    #[test]
    fn malformed_inputs() {
        let base = r#"{"name": "t", "basis": [{"label": "a", "degree": [0,0]}, {"label": "b", "degree": [1,1]}], "brackets": BR}"#;
        let with = |br: &str| parse_document(&base.replace("BR", br));
        let e = r#"{"zeta8": ["1","0","0","0"]}"#;
        assert!(matches!(with(&format!(r#"[{{"left": 1, "right": 0, "value": [{{"basis": 0, "coeff": {e}}}]}}]"#)), Err(Error::Malformed(_))));
        assert!(matches!(with(&format!(r#"[{{"left": 0, "right": 5, "value": [{{"basis": 0, "coeff": {e}}}]}}]"#)), Err(Error::Malformed(_))));
        assert!(matches!(with(&format!(r#"[{{"left": 0, "right": "zz", "value": [{{"basis": 0, "coeff": {e}}}]}}]"#)), Err(Error::UnknownLabel(_))));
        assert!(matches!(with("[{]"), Err(Error::Parse(_))));
        assert!(matches!(parse_document(r#"{"name": "t", "basis": [{"label": "a", "degree": [2,0]}]}"#), Err(Error::Parse(_))));
        assert!(matches!(
            parse_document(r#"{"name": "t", "kind": "super", "basis": []}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_document(r#"{"name": "t", "kind": "what", "basis": []}"#),
            Err(Error::Malformed(_))
        ));
    }
}
