//! Diagonal and augmentation of the loop factor `Q[π₁] ⊗ Λ(s⁻¹π)`.
//!
//! Group monomials are group-like and the free graded generators are primitive; the
//! diagonal is extended multiplicatively into the Koszul-signed tensor square.

use crate::algebra::{Element, GeneratorKind, Monomial, Signature};
use crate::error::{Error, Result};
use crate::linear::{rat, sign_pow, Linear, Rational};

/// Element of `H ⊗ H`.
pub type TensorSquareElement = Linear<(Monomial, Monomial)>;

/// Element of `H ⊗ H ⊗ H`, used to state coassociativity.
pub type TensorCubeElement = Linear<(Monomial, Monomial, Monomial)>;

#[derive(Clone, Copy, Debug)]
pub struct HopfStructure<'a> {
    sig: &'a Signature,
}

impl<'a> HopfStructure<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        HopfStructure { sig }
    }

    pub fn signature(&self) -> &'a Signature {
        self.sig
    }

    fn check_loop(&self, m: &Monomial) -> Result<()> {
        if self.sig.is_loop_monomial(m) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "`{}` has a manifold factor; the diagonal lives on the loop algebra",
                self.sig.format_monomial(m)
            )))
        }
    }

    /// `(a₁⊗a₂)(b₁⊗b₂) = (−1)^{|a₂||b₁|} a₁b₁ ⊗ a₂b₂`.
    pub fn tensor_multiply(
        &self,
        x: &TensorSquareElement,
        y: &TensorSquareElement,
    ) -> TensorSquareElement {
        let mut out = TensorSquareElement::zero();
        for ((a1, a2), ca) in x {
            for ((b1, b2), cb) in y {
                let sign = sign_pow(self.sig.degree(a2) * self.sig.degree(b1));
                let left = self.sig.multiply_monomials(a1, b1);
                if left.is_zero() {
                    continue;
                }
                let right = self.sig.multiply_monomials(a2, b2);
                let c = ca * cb * rat(sign);
                for (l, cl) in &left {
                    for (r, cr) in &right {
                        out.add_term((l.clone(), r.clone()), &c * cl * cr);
                    }
                }
            }
        }
        out
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<TensorSquareElement> {
        self.check_loop(m)?;
        let sig = self.sig;
        let one = sig.one();
        // group part: group-like
        let mut group = one.clone();
        group.free = m.free.clone();
        group.torsion = m.torsion.clone();
        let mut acc = TensorSquareElement::basis((group.clone(), group));
        let primitive = |g: Monomial| {
            let mut p = TensorSquareElement::basis((g.clone(), one.clone()));
            p.add_term((one.clone(), g), rat(1));
            p
        };
        for (s, &n) in m.poly.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let mut g = one.clone();
            g.poly[s] = 1;
            let p = primitive(g);
            for _ in 0..n {
                acc = self.tensor_multiply(&acc, &p);
            }
        }
        for &s in &m.ext {
            let mut g = one.clone();
            g.ext.push(s);
            acc = self.tensor_multiply(&acc, &primitive(g));
        }
        Ok(acc)
    }

    pub fn coproduct(&self, a: &Element) -> Result<TensorSquareElement> {
        let mut out = TensorSquareElement::zero();
        for (m, c) in a {
            out.add_scaled(&self.coproduct_monomial(m)?, c);
        }
        Ok(out)
    }

    pub fn counit_monomial(&self, m: &Monomial) -> Result<Rational> {
        self.check_loop(m)?;
        let group_only = m.poly.iter().all(|&n| n == 0) && m.ext.is_empty();
        Ok(rat(group_only as i64))
    }

    pub fn counit(&self, a: &Element) -> Result<Rational> {
        let mut total = rat(0);
        for (m, c) in a {
            total += self.counit_monomial(m)? * c;
        }
        Ok(total)
    }

    /// `Δa = a⊗1 + 1⊗a`. Elements with a manifold factor are never primitive.
    pub fn is_primitive(&self, a: &Element) -> bool {
        let Ok(delta) = self.coproduct(a) else {
            return false;
        };
        let one = self.sig.one();
        let mut expected = TensorSquareElement::zero();
        for (m, c) in a {
            expected.add_term((m.clone(), one.clone()), c.clone());
            expected.add_term((one.clone(), m.clone()), c.clone());
        }
        delta == expected
    }

    /// `(id ⊗ ε)` applied to a tensor square.
    pub fn right_counit(&self, t: &TensorSquareElement) -> Result<Element> {
        let mut out = Element::zero();
        for ((a1, a2), c) in t {
            out.add_term(a1.clone(), self.counit_monomial(a2)? * c);
        }
        Ok(out)
    }

    /// `(ε ⊗ id)` applied to a tensor square.
    pub fn left_counit(&self, t: &TensorSquareElement) -> Result<Element> {
        let mut out = Element::zero();
        for ((a1, a2), c) in t {
            out.add_term(a2.clone(), self.counit_monomial(a1)? * c);
        }
        Ok(out)
    }

    /// `(Δ ⊗ id)`.
    pub fn coproduct_left(&self, t: &TensorSquareElement) -> Result<TensorCubeElement> {
        let mut out = TensorCubeElement::zero();
        for ((a1, a2), c) in t {
            for ((b1, b2), d) in &self.coproduct_monomial(a1)? {
                out.add_term((b1.clone(), b2.clone(), a2.clone()), c * d);
            }
        }
        Ok(out)
    }

    /// `(id ⊗ Δ)`.
    pub fn coproduct_right(&self, t: &TensorSquareElement) -> Result<TensorCubeElement> {
        let mut out = TensorCubeElement::zero();
        for ((a1, a2), c) in t {
            for ((b1, b2), d) in &self.coproduct_monomial(a2)? {
                out.add_term((a1.clone(), b1.clone(), b2.clone()), c * d);
            }
        }
        Ok(out)
    }

    /// Kinds that make a single generator primitive (as opposed to group-like).
    pub fn is_primitive_kind(kind: GeneratorKind) -> bool {
        matches!(kind, GeneratorKind::PolyEven | GeneratorKind::ExtOdd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorSpec, Side};

    // x1 free, sx2 and sx3 polynomial (degrees 2 and 4), e odd loop generator, d dual
    fn sig() -> Signature {
        Signature::new(vec![
            GeneratorSpec::free("x1"),
            GeneratorSpec::poly("sx2", 2),
            GeneratorSpec::poly("sx3", 4),
            GeneratorSpec::ext("e", 1, Side::Loop),
            GeneratorSpec::ext("d1", -1, Side::Manifold),
        ])
        .unwrap()
    }

    fn mono(sig: &Signature, e: Element) -> Monomial {
        let _ = sig;
        e.keys().next().unwrap().clone()
    }

    #[test]
    fn group_like_power() {
        let s = sig();
        let h = HopfStructure::new(&s);
        let x3 = s.gen_power(0, 3).unwrap();
        let m = mono(&s, x3.clone());
        assert_eq!(
            h.coproduct(&x3).unwrap(),
            TensorSquareElement::basis((m.clone(), m))
        );
        assert_eq!(h.counit(&x3).unwrap(), rat(1));
        assert!(!h.is_primitive(&s.gen_power(0, 1).unwrap()));
    }

    #[test]
    fn primitive_generator() {
        let s = sig();
        let h = HopfStructure::new(&s);
        let sx = s.gen_power(1, 1).unwrap();
        let m = mono(&s, sx.clone());
        let mut want = TensorSquareElement::basis((m.clone(), s.one()));
        want.add_term((s.one(), m), rat(1));
        assert_eq!(h.coproduct(&sx).unwrap(), want);
        assert!(h.is_primitive(&sx));
        assert_eq!(h.counit(&sx).unwrap(), rat(0));
    }

    #[test]
    fn product_of_two_primitives() {
        let s = sig();
        let h = HopfStructure::new(&s);
        let a = s.gen_power(1, 1).unwrap();
        let b = s.gen_power(2, 1).unwrap();
        let ab = s.multiply(&a, &b);
        let (ma, mb, mab) = (mono(&s, a), mono(&s, b), mono(&s, ab.clone()));
        let one = s.one();
        let mut want = TensorSquareElement::zero();
        want.add_term((mab.clone(), one.clone()), rat(1));
        want.add_term((ma.clone(), mb.clone()), rat(1));
        want.add_term((mb, ma), rat(1));
        want.add_term((one, mab), rat(1));
        assert_eq!(h.coproduct(&ab).unwrap(), want);
        assert!(!h.is_primitive(&ab));
    }

    #[test]
    fn square_of_primitive_is_not_primitive() {
        let s = sig();
        let h = HopfStructure::new(&s);
        let sq = s.gen_power(1, 2).unwrap();
        assert!(!h.is_primitive(&sq));
        // Δ(s²) = s²⊗1 + 2 s⊗s + 1⊗s²
        let d = h.coproduct(&sq).unwrap();
        let s1 = mono(&s, s.gen_power(1, 1).unwrap());
        assert_eq!(d.coeff(&(s1.clone(), s1)), rat(2));
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn counit_is_linear() {
        let s = sig();
        let h = HopfStructure::new(&s);
        let e = s
            .unit()
            .scaled_int(3)
            .plus(&s.gen_power(1, 1).unwrap().scaled_int(2));
        assert_eq!(h.counit(&e).unwrap(), rat(3));
    }

    #[test]
    fn manifold_factor_is_outside_the_domain() {
        let s = sig();
        let h = HopfStructure::new(&s);
        let d = s.gen_power(4, 1).unwrap();
        assert!(matches!(h.coproduct(&d), Err(Error::Domain(_))));
        assert!(matches!(h.counit(&d), Err(Error::Domain(_))));
        assert!(!h.is_primitive(&d));
    }

    #[test]
    fn odd_primitive_products_pick_up_koszul_signs() {
        let s = sig();
        let h = HopfStructure::new(&s);
        // Δ(e·sx2) computed in the tensor square agrees with Δ(e)Δ(sx2)
        let e = s.gen_power(3, 1).unwrap();
        let p = s.gen_power(1, 1).unwrap();
        let prod = h.tensor_multiply(&h.coproduct(&e).unwrap(), &h.coproduct(&p).unwrap());
        assert_eq!(h.coproduct(&s.multiply(&e, &p)).unwrap(), prod);
    }
}
