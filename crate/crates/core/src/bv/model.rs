use std::sync::Arc;

use crate::algebra::{Element, Monomial, Signature};
use crate::error::{Error, Result};
use crate::models::{HepworthRule, LieGroupRule, RationalRule, SphereRule, TensorRule};

/// Which closed-form operator a model uses.
#[derive(Clone, Debug)]
pub enum BRule {
    /// `B = 0` (e.g. `Q[π₁ tor]`, or `ℍ*(M)` with the trivial circle action).
    Zero,
    LieGroup(LieGroupRule),
    Rational(RationalRule),
    Sphere(SphereRule),
    Hepworth(HepworthRule),
    Tensor(TensorRule),
}

impl BRule {
    pub fn kind(&self) -> &'static str {
        match self {
            BRule::Zero => "zero",
            BRule::LieGroup(_) => "lie-group",
            BRule::Rational(_) => "rational-general",
            BRule::Sphere(_) => "sphere-action",
            BRule::Hepworth(_) => "hepworth-generic",
            BRule::Tensor(_) => "tensor-of-models",
        }
    }
}

/// A graded-commutative algebra (given by its signature) together with a degree +1
/// operator `B`. The bracket is always derived from `B`.
#[derive(Clone, Debug)]
pub struct BvModel {
    name: String,
    signature: Arc<Signature>,
    rule: BRule,
}

impl BvModel {
    pub fn new(name: impl Into<String>, signature: Arc<Signature>, rule: BRule) -> Self {
        BvModel {
            name: name.into(),
            signature,
            rule,
        }
    }

    /// The algebra `sig` with `B = 0`.
    pub fn trivial(name: impl Into<String>, sig: Signature) -> Self {
        Self::new(name, Arc::new(sig), BRule::Zero)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn rule(&self) -> &BRule {
        &self.rule
    }

    pub fn rule_mut(&mut self) -> &mut BRule {
        &mut self.rule
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `B` on one basis monomial.
    pub fn apply_b_monomial(&self, m: &Monomial) -> Result<Element> {
        let sig = self.signature();
        match &self.rule {
            BRule::Zero => Ok(Element::zero()),
            BRule::LieGroup(r) => Ok(r.apply(sig, m)),
            BRule::Rational(r) => r.apply(sig, m),
            BRule::Sphere(r) => r.apply(sig, m),
            BRule::Hepworth(r) => r.apply(sig, m),
            BRule::Tensor(r) => r.apply(sig, m),
        }
    }

    /// `B_{ΩG}` on a loop monomial (no manifold factor); zero for Lie groups and spheres.
    pub fn loop_operator(&self, a: &Monomial) -> Result<Element> {
        let sig = self.signature();
        if !sig.is_loop_monomial(a) {
            return Err(Error::Domain(format!(
                "`{}` is not a loop monomial",
                sig.format_monomial(a)
            )));
        }
        match &self.rule {
            BRule::Zero | BRule::LieGroup(_) | BRule::Sphere(_) => Ok(Element::zero()),
            BRule::Rational(r) => {
                let (l, x) = r.layout().split(a);
                Ok(r.layout().join_loop_element(&r.b_loop().get(&l), &x))
            }
            BRule::Hepworth(r) => {
                let (l, x) = r.layout().split(a);
                Ok(r.layout().join_loop_element(&r.b_loop().get(&l), &x))
            }
            BRule::Tensor(r) => r.apply_loop(sig, a),
        }
    }

    /// Linear extension of `B`, term by term.
    pub fn apply_b(&self, a: &Element) -> Result<Element> {
        a.try_map_linear(|m| self.apply_b_monomial(m))
    }
}
