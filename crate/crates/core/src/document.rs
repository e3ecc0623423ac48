//! On-disk algebra description.
//!
//! ```json
//! {
//!   "name": "heisenberg_1",
//!   "layers": [["X1", "Y1"], ["Z"]],
//!   "brackets": [{"lhs": "X1", "rhs": "Y1", "value": [{"basis": "Z", "coeff": "1"}]}]
//! }
//! ```
//!
//! Coefficients are `"p"` or `"p/q"` strings. Unlisted brackets are zero.

use serde::{Deserialize, Serialize};

use crate::algebra::StratifiedLieAlgebra;
use crate::error::AlgebraError;
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecDocument {
    pub name: String,
    pub layers: Vec<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub lhs: String,
    pub rhs: String,
    pub value: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub basis: String,
    pub coeff: String,
}

impl AlgebraSpecDocument {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_algebra(alg: &StratifiedLieAlgebra) -> Self {
        let layers = (1..=alg.step())
            .map(|j| {
                alg.layer_range(j)
                    .map(|i| alg.label(i).to_string())
                    .collect()
            })
            .collect();
        let brackets = alg
            .structure_constants()
            .map(|((i, j), v)| BracketSpec {
                lhs: alg.label(i).to_string(),
                rhs: alg.label(j).to_string(),
                value: v
                    .iter()
                    .map(|(l, c)| TermSpec {
                        basis: alg.label(l).to_string(),
                        coeff: format_rational(c),
                    })
                    .collect(),
            })
            .collect();
        Self {
            name: alg.name().to_string(),
            layers,
            brackets,
        }
    }
}

/// Builds the algebra a document describes. Lie and grading axioms are not
/// checked here.
pub fn load_algebra(doc: &AlgebraSpecDocument) -> Result<StratifiedLieAlgebra, AlgebraError> {
    let layer_dims: Vec<usize> = doc.layers.iter().map(Vec::len).collect();
    let labels: Vec<String> = doc.layers.iter().flatten().cloned().collect();
    let index = |name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| AlgebraError::UnknownLabel(name.to_string()))
    };
    let mut entries = Vec::with_capacity(doc.brackets.len());
    for b in &doc.brackets {
        let value = b
            .value
            .iter()
            .map(|t| Ok((index(&t.basis)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        entries.push((index(&b.lhs)?, index(&b.rhs)?, value));
    }
    StratifiedLieAlgebra::from_parts(doc.name.clone(), layer_dims, labels, entries)
}

pub fn load_algebra_json(text: &str) -> Result<StratifiedLieAlgebra, AlgebraError> {
    load_algebra(&AlgebraSpecDocument::from_json(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const HEIS: &str = r#"{
        "name": "heis",
        "layers": [["X", "Y"], ["Z"]],
        "brackets": [{"lhs": "X", "rhs": "Y", "value": [{"basis": "Z", "coeff": "1"}]}]
    }"#;

    #[test]
    fn loads_heisenberg() {
        let h = load_algebra_json(HEIS).unwrap();
        assert_eq!(h.total_dim(), 3);
        assert_eq!(h.layer_dims(), &[2, 1]);
        assert!(h.validate().is_valid());
    }

    #[test]
    fn loads_abelian_without_brackets() {
        let a = load_algebra_json(r#"{"name": "r3", "layers": [["a", "b", "c"]]}"#).unwrap();
        assert_eq!(a.structure_constants().count(), 0);
    }

    #[test]
    fn rejects_unknown_labels_and_bad_coefficients() {
        let bad = HEIS.replace(r#""basis": "Z""#, r#""basis": "W""#);
        assert!(matches!(
            load_algebra_json(&bad),
            Err(AlgebraError::UnknownLabel(l)) if l == "W"
        ));
        let bad = HEIS.replace(r#""coeff": "1""#, r#""coeff": "0.5""#);
        assert!(matches!(
            load_algebra_json(&bad),
            Err(AlgebraError::Coefficient(_))
        ));
        assert!(matches!(
            load_algebra_json("{"),
            Err(AlgebraError::Document(_))
        ));
    }

    #[test]
    fn catalog_round_trip() {
        for alg in catalog::standard_entries() {
            let text = AlgebraSpecDocument::from_algebra(&alg).to_json();
            let back = load_algebra_json(&text).unwrap();
            assert_eq!(back, alg);
        }
    }
}
