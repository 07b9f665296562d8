use std::sync::Arc;

use crate::algebra::{Element, GeneratorSpec, Monomial, Signature};
use crate::bv::{BRule, BvModel};
use crate::error::{Error, Result};
use crate::linear::{rat, sign_pow};

/// `B(x⊗y) = B_A x⊗y + (−1)^{|x|} x⊗B_{A'} y` on the flat signature of `A ⊗ A'`.
#[derive(Clone, Debug)]
pub struct TensorRule {
    left: Arc<BvModel>,
    right: Arc<BvModel>,
}

impl TensorRule {
    pub fn left(&self) -> &BvModel {
        &self.left
    }

    pub fn right(&self) -> &BvModel {
        &self.right
    }

    fn parts(&self, m: &Monomial) -> (Monomial, Monomial) {
        self.left
            .signature()
            .split_tensor(self.right.signature(), m)
    }

    fn embed_l(&self, a: &Monomial) -> Monomial {
        self.left.signature().embed_left(self.right.signature(), a)
    }

    fn embed_r(&self, b: &Monomial) -> Monomial {
        self.left.signature().embed_right(self.right.signature(), b)
    }

    /// Combines factor-level operators `bl`, `br` by the tensor rule.
    fn combine(
        &self,
        sig: &Signature,
        m: &Monomial,
        bl: impl Fn(&Monomial) -> Result<Element>,
        br: impl Fn(&Monomial) -> Result<Element>,
    ) -> Result<Element> {
        let (a, b) = self.parts(m);
        let (ea, eb) = (self.embed_l(&a), self.embed_r(&b));
        // m = sign · ι(a)ι(b)
        let sign = sig.multiply_monomials(&ea, &eb).coeff(m);
        if sign == rat(0) {
            return Err(Error::Signature(format!(
                "`{}` does not split across the tensor factors",
                sig.format_monomial(m)
            )));
        }
        let mut out = Element::zero();
        for (a2, c) in &bl(&a)? {
            out.add_scaled(&sig.multiply_monomials(&self.embed_l(a2), &eb), c);
        }
        let s = rat(sign_pow(self.left.signature().degree(&a)));
        for (b2, c) in &br(&b)? {
            out.add_scaled(&sig.multiply_monomials(&ea, &self.embed_r(b2)), &(c * &s));
        }
        Ok(out.scaled(&sign))
    }

    pub fn apply(&self, sig: &Signature, m: &Monomial) -> Result<Element> {
        self.combine(
            sig,
            m,
            |a| self.left.apply_b_monomial(a),
            |b| self.right.apply_b_monomial(b),
        )
    }

    /// `B_{ΩG}` of the tensor product on a loop monomial.
    pub fn apply_loop(&self, sig: &Signature, m: &Monomial) -> Result<Element> {
        self.combine(
            sig,
            m,
            |a| self.left.loop_operator(a),
            |b| self.right.loop_operator(b),
        )
    }
}

pub fn tensor_model(a: &BvModel, b: &BvModel) -> Result<BvModel> {
    let flat = a.signature().tensor(b.signature())?;
    let rule = TensorRule {
        left: Arc::new(a.clone()),
        right: Arc::new(b.clone()),
    };
    Ok(BvModel::new(
        format!("{} ⊗ {}", a.name(), b.name()),
        Arc::new(flat),
        BRule::Tensor(rule),
    ))
}

/// `Q[⊕ Z/n_k]` with `B = 0`, generators `y1, y2, …`.
pub fn torsion_group_model(orders: &[u64]) -> Result<BvModel> {
    let gens = orders
        .iter()
        .enumerate()
        .map(|(k, &n)| GeneratorSpec::torsion(format!("y{}", k + 1), n))
        .collect();
    Ok(BvModel::new(
        format!("Q[torsion {orders:?}]"),
        Arc::new(Signature::new(gens)?),
        BRule::Zero,
    ))
}

/// `Q` with `B = 0`: the unit for [`tensor_model`].
pub fn ground_field_model() -> BvModel {
    BvModel::new(
        "Q",
        Arc::new(Signature::new(Vec::new()).expect("empty")),
        BRule::Zero,
    )
}
