use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::manifold::{ActionTable, Layout, ManifoldAlgebra};
use crate::algebra::{Element, GeneratorSpec, Monomial, Signature};
use crate::bv::{BRule, BvModel};
use crate::error::{Error, Result};
use crate::linear::{rat, Linear};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SphereKind {
    S1,
    S3,
}

impl SphereKind {
    /// Name of the fundamental class in the action table.
    pub fn class_name(self) -> &'static str {
        match self {
            SphereKind::S1 => "S1",
            SphereKind::S3 => "S3",
        }
    }

    pub fn class_degree(self) -> i64 {
        match self {
            SphereKind::S1 => 1,
            SphereKind::S3 => 3,
        }
    }

    /// `H*(ΩS¹) = Q[x^{±1}]`, `H*(ΩS³) = Q[u]` with `|u| = 2`.
    pub fn loop_signature(self) -> Signature {
        let g = match self {
            SphereKind::S1 => GeneratorSpec::free("x"),
            SphereKind::S3 => GeneratorSpec::poly("u", 2),
        };
        Signature::new(vec![g]).expect("valid sphere generator")
    }
}

/// `B(x^i⊗m) = i x^i⊗[S¹]·m`, resp. `B(u^i⊗m) = i u^{i−1}⊗[S³]·m`.
#[derive(Clone, Debug)]
pub struct SphereRule {
    kind: SphereKind,
    layout: Layout,
    action: ActionTable,
}

impl SphereRule {
    pub fn new(kind: SphereKind, manifold: ManifoldAlgebra, action: ActionTable) -> Result<Self> {
        let class = action.class(kind.class_name())?;
        if class.degree != kind.class_degree() {
            return Err(Error::InvalidModel(format!(
                "[{}] acts with degree {}, expected {}",
                kind.class_name(),
                class.degree,
                kind.class_degree()
            )));
        }
        Ok(SphereRule {
            kind,
            layout: Layout::new(kind.loop_signature(), manifold)?,
            action,
        })
    }

    pub fn kind(&self) -> SphereKind {
        self.kind
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn apply(&self, _sig: &Signature, m: &Monomial) -> Result<Element> {
        let (mut a, x) = self.layout.split(m);
        let i = match self.kind {
            SphereKind::S1 => a.free[0],
            SphereKind::S3 => {
                let i = a.poly[0] as i64;
                if i > 0 {
                    a.poly[0] -= 1;
                }
                i
            }
        };
        if i == 0 {
            return Ok(Element::zero());
        }
        let y = self
            .action
            .act(&Linear::basis(self.kind.class_name().to_string()), &x)?;
        Ok(self.layout.join_element(&a, &rat(i), &y))
    }
}

pub fn build_sphere_model(
    kind: SphereKind,
    manifold: ManifoldAlgebra,
    action: ActionTable,
) -> Result<BvModel> {
    let rule = SphereRule::new(kind, manifold, action)?;
    let flat = Arc::clone(rule.layout().flat());
    let name = format!("{:?} acting on a manifold", kind);
    Ok(BvModel::new(name, flat, BRule::Sphere(rule)))
}
