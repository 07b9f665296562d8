use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Free generator of π₁; degree 0, any integer exponent.
    GroupFree,
    /// Cyclic torsion factor of π₁; degree 0, exponents mod `torsion_order`.
    GroupTorsion,
    /// Polynomial generator of even degree.
    PolyEven,
    /// Exterior generator of odd (possibly negative) degree.
    ExtOdd,
}

/// Which tensor factor of `H*(ΩG) ⊗ ℍ*(M)` a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Loop,
    Manifold,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub id: usize,
    pub name: String,
    pub kind: GeneratorKind,
    pub degree: i64,
    pub torsion_order: Option<u64>,
    pub side: Side,
}

impl GeneratorSpec {
    pub fn free(name: impl Into<String>) -> Self {
        Self::raw(name, GeneratorKind::GroupFree, 0, None, Side::Loop)
    }

    pub fn torsion(name: impl Into<String>, order: u64) -> Self {
        Self::raw(
            name,
            GeneratorKind::GroupTorsion,
            0,
            Some(order),
            Side::Loop,
        )
    }

    pub fn poly(name: impl Into<String>, degree: i64) -> Self {
        Self::raw(name, GeneratorKind::PolyEven, degree, None, Side::Loop)
    }

    pub fn ext(name: impl Into<String>, degree: i64, side: Side) -> Self {
        Self::raw(name, GeneratorKind::ExtOdd, degree, None, side)
    }

    /// Free graded-commutative generator of the given degree: polynomial when even,
    /// exterior when odd.
    pub fn graded(name: impl Into<String>, degree: i64, side: Side) -> Self {
        if degree.rem_euclid(2) == 0 {
            let mut g = Self::poly(name, degree);
            g.side = side;
            g
        } else {
            Self::ext(name, degree, side)
        }
    }

    fn raw(
        name: impl Into<String>,
        kind: GeneratorKind,
        degree: i64,
        torsion_order: Option<u64>,
        side: Side,
    ) -> Self {
        GeneratorSpec {
            id: 0,
            name: name.into(),
            kind,
            degree,
            torsion_order,
            side,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::InvalidModel(format!(
                "generator `{}`: {msg}",
                self.name
            )))
        };
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
            || self.name.starts_with(|c: char| c.is_ascii_digit())
        {
            return bad("names must be identifiers".into());
        }
        match self.kind {
            GeneratorKind::GroupFree | GeneratorKind::GroupTorsion if self.degree != 0 => {
                bad("group generators have degree 0".into())
            }
            GeneratorKind::GroupFree | GeneratorKind::GroupTorsion if self.side != Side::Loop => {
                bad("group generators live in the loop factor".into())
            }
            GeneratorKind::GroupTorsion => match self.torsion_order {
                Some(n) if n >= 2 => Ok(()),
                _ => bad("torsion order must be an integer ≥ 2".into()),
            },
            GeneratorKind::PolyEven if self.degree < 0 || self.degree % 2 != 0 => bad(format!(
                "polynomial generator needs even degree ≥ 0, got {}",
                self.degree
            )),
            GeneratorKind::ExtOdd if self.degree.rem_euclid(2) != 1 => bad(format!(
                "exterior generator needs odd degree, got {}",
                self.degree
            )),
            _ if self.kind != GeneratorKind::GroupTorsion && self.torsion_order.is_some() => {
                bad("only torsion generators carry an order".into())
            }
            _ => Ok(()),
        }
    }
}
