//! Built-in groups, shipped as model files.

use crate::error::{Error, Result};
use crate::model_file::{parse_model, ModelSpec};

/// `(canonical name, aliases, file contents)`
const ENTRIES: &[(&str, &[&str], &str)] = &[
    (
        "S1",
        &["S^1", "T1", "U(1)", "SO(2)"],
        include_str!("../catalog/S1.toml"),
    ),
    (
        "SU(2)",
        &["SU2", "S3", "S^3", "Sp(1)"],
        include_str!("../catalog/SU2.toml"),
    ),
    ("SO(3)", &["SO3"], include_str!("../catalog/SO3.toml")),
    ("U(2)", &["U2"], include_str!("../catalog/U2.toml")),
    ("SU(3)", &["SU3"], include_str!("../catalog/SU3.toml")),
    ("T2", &["T^2"], include_str!("../catalog/T2.toml")),
    ("T3", &["T^3"], include_str!("../catalog/T3.toml")),
];

/// Canonical names, in catalog order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

/// Raw file text of a catalog entry.
pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES
        .iter()
        .find(|(n, aliases, _)| *n == name || aliases.contains(&name))
        .map(|e| e.2)
}

pub fn lookup(name: &str) -> Result<ModelSpec> {
    let text = source(name).ok_or_else(|| {
        Error::schema(
            "model",
            format!(
                "`{name}` is neither a file nor a catalog group ({})",
                names().join(", ")
            ),
        )
    })?;
    parse_model(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::LieGroupData;

    #[test]
    fn every_entry_parses() {
        for n in names() {
            let s = lookup(n).unwrap();
            assert_eq!(s.name, n);
        }
    }

    #[test]
    fn known_groups() {
        let su3 = lookup("SU(3)").unwrap();
        assert_eq!(
            su3.lie_group().unwrap(),
            &LieGroupData::new(0, vec![], vec![3, 5]).unwrap()
        );
        let so3 = lookup("SO(3)").unwrap();
        assert_eq!(
            so3.lie_group().unwrap(),
            &LieGroupData::new(0, vec![2], vec![3]).unwrap()
        );
        assert_eq!(lookup("S3").unwrap().name, "SU(2)");
        assert!(lookup("G2").is_err());
    }
}
