//! Input-kind detection over the JSON file formats.
//!
//! Each format has a distinctive field set: relations carry `rel`,
//! topologies `opens`, semigroups `table` and groupoids `product` with
//! `inverse`. Detection looks at the field names only; parsing and
//! validation stay with the owning modules.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Relation,
    Topology,
    Semigroup,
    Groupoid,
}

impl InputKind {
    pub fn name(&self) -> &'static str {
        match self {
            InputKind::Relation => "relation",
            InputKind::Topology => "topology",
            InputKind::Semigroup => "semigroup",
            InputKind::Groupoid => "groupoid",
        }
    }

    pub fn from_name(name: &str) -> Option<InputKind> {
        match name {
            "relation" | "rel" => Some(InputKind::Relation),
            "topology" | "space" => Some(InputKind::Topology),
            "semigroup" => Some(InputKind::Semigroup),
            "groupoid" => Some(InputKind::Groupoid),
            _ => None,
        }
    }
}

/// Detect the input kind from the JSON object shape.
pub fn detect_kind(text: &str) -> Result<InputKind> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Schema("expected a JSON object".into()))?;
    if obj.contains_key("rel") && obj.contains_key("elements") {
        Ok(InputKind::Relation)
    } else if obj.contains_key("opens") && obj.contains_key("points") {
        Ok(InputKind::Topology)
    } else if obj.contains_key("table") && obj.contains_key("elements") {
        Ok(InputKind::Semigroup)
    } else if obj.contains_key("product") && obj.contains_key("inverse") {
        Ok(InputKind::Groupoid)
    } else {
        Err(Error::Schema(
            "unrecognised input: expected one of the relation/topology/semigroup/groupoid formats"
                .into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detection_by_shape() {
        assert_eq!(
            detect_kind(r#"{"elements":["a"],"rel":[["a","a"]]}"#).unwrap(),
            InputKind::Relation
        );
        assert_eq!(
            detect_kind(r#"{"points":["0"],"opens":[[],[0]]}"#).unwrap(),
            InputKind::Topology
        );
        assert_eq!(
            detect_kind(r#"{"elements":["e"],"table":[["e"]]}"#).unwrap(),
            InputKind::Semigroup
        );
        assert_eq!(
            detect_kind(r#"{"elements":["u"],"inverse":{"u":"u"},"product":[["u","u","u"]]}"#)
                .unwrap(),
            InputKind::Groupoid
        );
        assert!(detect_kind(r#"{"foo": 1}"#).is_err());
        assert!(detect_kind("not json").is_err());
    }
}
