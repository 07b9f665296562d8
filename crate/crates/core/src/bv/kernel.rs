//! Bracket and BV/Gerstenhaber identities, evaluated on interned monomials with memoized
//! products, `B` values and brackets.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::model::BvModel;
use crate::algebra::{Element, Monomial, Signature};
use crate::error::Result;
use crate::linear::{sign_pow, Linear, Rational};

/// Linear combination of interned monomials.
pub(crate) type Lin = Linear<u32>;

/// Evaluation context for one model. Single-threaded; build one per sweep.
pub struct Kernel<'m> {
    model: &'m BvModel,
    ids: RefCell<HashMap<Monomial, u32>>,
    monos: RefCell<Vec<Monomial>>,
    degs: RefCell<Vec<i64>>,
    b_cache: RefCell<HashMap<u32, Rc<Lin>>>,
    mul_cache: RefCell<HashMap<(u32, u32), Rc<Lin>>>,
    bracket_cache: RefCell<HashMap<(u32, u32), Rc<Lin>>>,
}

/// Both sides of an identity that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub lhs: Element,
    pub rhs: Element,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl<'m> Kernel<'m> {
    pub fn new(model: &'m BvModel) -> Self {
        Kernel {
            model,
            ids: RefCell::new(HashMap::new()),
            monos: RefCell::new(Vec::new()),
            degs: RefCell::new(Vec::new()),
            b_cache: RefCell::new(HashMap::new()),
            mul_cache: RefCell::new(HashMap::new()),
            bracket_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &'m BvModel {
        self.model
    }

    pub fn sig(&self) -> &'m Signature {
        self.model.signature()
    }

    pub(crate) fn intern(&self, m: &Monomial) -> u32 {
        if let Some(&id) = self.ids.borrow().get(m) {
            return id;
        }
        let mut monos = self.monos.borrow_mut();
        let id = monos.len() as u32;
        monos.push(m.clone());
        self.degs.borrow_mut().push(self.sig().degree(m));
        self.ids.borrow_mut().insert(m.clone(), id);
        id
    }

    pub(crate) fn monomial(&self, id: u32) -> Monomial {
        self.monos.borrow()[id as usize].clone()
    }

    pub(crate) fn deg_id(&self, id: u32) -> i64 {
        self.degs.borrow()[id as usize]
    }

    pub(crate) fn lin(&self, e: &Element) -> Lin {
        e.iter().map(|(m, c)| (self.intern(m), c.clone())).collect()
    }

    pub(crate) fn element(&self, l: &Lin) -> Element {
        let monos = self.monos.borrow();
        l.iter()
            .map(|(&i, c)| (monos[i as usize].clone(), c.clone()))
            .collect()
    }

    pub fn deg(&self, m: &Monomial) -> i64 {
        self.sig().degree(m)
    }

    pub(crate) fn mul_ids(&self, a: u32, b: u32) -> Rc<Lin> {
        if let Some(v) = self.mul_cache.borrow().get(&(a, b)) {
            return v.clone();
        }
        let (ma, mb) = (self.monomial(a), self.monomial(b));
        let v = Rc::new(self.lin(&self.sig().multiply_monomials(&ma, &mb)));
        self.mul_cache.borrow_mut().insert((a, b), v.clone());
        v
    }

    pub(crate) fn mul_lin(&self, a: &Lin, b: &Lin) -> Lin {
        let mut out = Lin::zero();
        for (&i, ca) in a {
            for (&j, cb) in b {
                out.add_scaled(&*self.mul_ids(i, j), &(ca * cb));
            }
        }
        out
    }

    /// `a·m` for a single monomial on the right.
    fn mul_right(&self, a: &Lin, m: u32) -> Lin {
        let mut out = Lin::zero();
        for (&i, c) in a {
            out.add_scaled(&*self.mul_ids(i, m), c);
        }
        out
    }

    fn mul_left(&self, m: u32, a: &Lin) -> Lin {
        let mut out = Lin::zero();
        for (&i, c) in a {
            out.add_scaled(&*self.mul_ids(m, i), c);
        }
        out
    }

    pub(crate) fn b_id(&self, id: u32) -> Result<Rc<Lin>> {
        if let Some(v) = self.b_cache.borrow().get(&id) {
            return Ok(v.clone());
        }
        let m = self.monomial(id);
        let v = Rc::new(self.lin(&self.model.apply_b_monomial(&m)?));
        self.b_cache.borrow_mut().insert(id, v.clone());
        Ok(v)
    }

    pub(crate) fn b_lin(&self, a: &Lin) -> Result<Lin> {
        let mut out = Lin::zero();
        for (&i, c) in a {
            out.add_scaled(&*self.b_id(i)?, c);
        }
        Ok(out)
    }

    /// `{a,b} = (−1)^{|a|}(B(ab) − (Ba)b − (−1)^{|a|} a(Bb))`.
    pub(crate) fn bracket_ids(&self, a: u32, b: u32) -> Result<Rc<Lin>> {
        if let Some(v) = self.bracket_cache.borrow().get(&(a, b)) {
            return Ok(v.clone());
        }
        let sa = sign_pow(self.deg_id(a));
        let mut inner = self.b_lin(&self.mul_ids(a, b))?;
        inner.sub_assign_ref(&self.mul_right(&*self.b_id(a)?, b));
        inner.add_scaled(&self.mul_left(a, &*self.b_id(b)?), &int(-sa));
        let v = Rc::new(inner.scaled_int(sa));
        self.bracket_cache.borrow_mut().insert((a, b), v.clone());
        Ok(v)
    }

    pub(crate) fn bracket_lin(&self, a: &Lin, b: &Lin) -> Result<Lin> {
        let mut out = Lin::zero();
        for (&i, ca) in a {
            for (&j, cb) in b {
                out.add_scaled(&*self.bracket_ids(i, j)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn b(&self, a: &Element) -> Result<Element> {
        Ok(self.element(&self.b_lin(&self.lin(a))?))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.element(&self.mul_lin(&self.lin(a), &self.lin(b)))
    }

    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.element(&self.bracket_lin(&self.lin(a), &self.lin(b))?))
    }

    pub fn bracket_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Element> {
        let (i, j) = (self.intern(a), self.intern(b));
        Ok(self.element(&*self.bracket_ids(i, j)?))
    }

    fn verdict(&self, lhs: Lin, rhs: Lin) -> Option<Mismatch> {
        if lhs == rhs {
            None
        } else {
            Some(Mismatch {
                lhs: self.element(&lhs),
                rhs: self.element(&rhs),
            })
        }
    }

    pub(crate) fn square_zero_id(&self, a: u32) -> Result<Option<Mismatch>> {
        let bb = self.b_lin(&*self.b_id(a)?)?;
        Ok(self.verdict(bb, Lin::zero()))
    }

    /// Terms of `B(a)` outside degree `|a| + 1` (expected: none).
    pub(crate) fn degree_id(&self, a: u32) -> Result<Option<Mismatch>> {
        let want = self.deg_id(a) + 1;
        let off: Lin = self
            .b_id(a)?
            .iter()
            .filter(|(&m, _)| self.deg_id(m) != want)
            .map(|(&m, c)| (m, c.clone()))
            .collect();
        Ok(self.verdict(off, Lin::zero()))
    }

    pub(crate) fn commutativity_ids(&self, a: u32, b: u32) -> Option<Mismatch> {
        let ab = (*self.mul_ids(a, b)).clone();
        let ba = self
            .mul_ids(b, a)
            .scaled_int(sign_pow(self.deg_id(a) * self.deg_id(b)));
        self.verdict(ab, ba)
    }

    pub(crate) fn associativity_ids(&self, a: u32, b: u32, c: u32) -> Option<Mismatch> {
        let left = self.mul_right(&self.mul_ids(a, b), c);
        let right = self.mul_left(a, &self.mul_ids(b, c));
        self.verdict(left, right)
    }

    pub(crate) fn bv7_ids(&self, a: u32, b: u32, c: u32) -> Result<Option<Mismatch>> {
        let (da, db) = (self.deg_id(a), self.deg_id(b));
        let ab = self.mul_ids(a, b);
        let abc = self.mul_right(&ab, c);
        let lhs = self.b_lin(&abc)?;

        let mut rhs = self.mul_right(&self.b_lin(&ab)?, c);
        rhs.add_scaled(
            &self.mul_left(a, &self.b_lin(&self.mul_ids(b, c))?),
            &int(sign_pow(da)),
        );
        rhs.add_scaled(
            &self.mul_left(b, &self.b_lin(&self.mul_ids(a, c))?),
            &int(sign_pow((da - 1) * db)),
        );
        rhs.sub_assign_ref(&self.mul_right(&self.mul_right(&*self.b_id(a)?, b), c));
        rhs.add_scaled(
            &self.mul_right(&self.mul_left(a, &*self.b_id(b)?), c),
            &int(-sign_pow(da)),
        );
        rhs.add_scaled(
            &self.mul_lin(&ab, &*self.b_id(c)?),
            &int(-sign_pow(da + db)),
        );
        Ok(self.verdict(lhs, rhs))
    }

    /// `{a,bc} = {a,b}c + (−1)^{(|a|−1)|b|} b{a,c}`.
    pub(crate) fn poisson_ids(&self, a: u32, b: u32, c: u32) -> Result<Option<Mismatch>> {
        let (da, db) = (self.deg_id(a), self.deg_id(b));
        let mut lhs = Lin::zero();
        for (&m, k) in self.mul_ids(b, c).iter() {
            lhs.add_scaled(&*self.bracket_ids(a, m)?, k);
        }
        let mut rhs = self.mul_right(&*self.bracket_ids(a, b)?, c);
        rhs.add_scaled(
            &self.mul_left(b, &*self.bracket_ids(a, c)?),
            &int(sign_pow((da - 1) * db)),
        );
        Ok(self.verdict(lhs, rhs))
    }

    /// `{bc,a} = b{c,a} + (−1)^{|b||c|} c{b,a}`.
    pub(crate) fn poisson_rewritten_ids(&self, a: u32, b: u32, c: u32) -> Result<Option<Mismatch>> {
        let (db, dc) = (self.deg_id(b), self.deg_id(c));
        let mut lhs = Lin::zero();
        for (&m, k) in self.mul_ids(b, c).iter() {
            lhs.add_scaled(&*self.bracket_ids(m, a)?, k);
        }
        let mut rhs = self.mul_left(b, &*self.bracket_ids(c, a)?);
        rhs.add_scaled(
            &self.mul_left(c, &*self.bracket_ids(b, a)?),
            &int(sign_pow(db * dc)),
        );
        Ok(self.verdict(lhs, rhs))
    }

    /// `{a,b} = −(−1)^{(|a|+1)(|b|+1)} {b,a}`.
    pub(crate) fn antisymmetry_ids(&self, a: u32, b: u32) -> Result<Option<Mismatch>> {
        let lhs = (*self.bracket_ids(a, b)?).clone();
        let rhs = self
            .bracket_ids(b, a)?
            .scaled_int(-sign_pow((self.deg_id(a) + 1) * (self.deg_id(b) + 1)));
        Ok(self.verdict(lhs, rhs))
    }

    /// `{a,{b,c}} = {{a,b},c} + (−1)^{(|a|+1)(|b|+1)} {b,{a,c}}`.
    pub(crate) fn jacobi_ids(&self, a: u32, b: u32, c: u32) -> Result<Option<Mismatch>> {
        let mut lhs = Lin::zero();
        for (&m, k) in self.bracket_ids(b, c)?.iter() {
            lhs.add_scaled(&*self.bracket_ids(a, m)?, k);
        }
        let mut rhs = Lin::zero();
        for (&m, k) in self.bracket_ids(a, b)?.iter() {
            rhs.add_scaled(&*self.bracket_ids(m, c)?, k);
        }
        let s = int(sign_pow((self.deg_id(a) + 1) * (self.deg_id(b) + 1)));
        for (&m, k) in self.bracket_ids(a, c)?.iter() {
            rhs.add_scaled(&*self.bracket_ids(b, m)?, &(k * &s));
        }
        Ok(self.verdict(lhs, rhs))
    }

    pub fn check_square_zero(&self, a: &Monomial) -> Result<Option<Mismatch>> {
        self.square_zero_id(self.intern(a))
    }

    pub fn check_degree(&self, a: &Monomial) -> Result<Option<Mismatch>> {
        self.degree_id(self.intern(a))
    }

    pub fn check_commutativity(&self, a: &Monomial, b: &Monomial) -> Option<Mismatch> {
        self.commutativity_ids(self.intern(a), self.intern(b))
    }

    pub fn check_associativity(
        &self,
        a: &Monomial,
        b: &Monomial,
        c: &Monomial,
    ) -> Option<Mismatch> {
        self.associativity_ids(self.intern(a), self.intern(b), self.intern(c))
    }

    pub fn check_bv7(&self, a: &Monomial, b: &Monomial, c: &Monomial) -> Result<Option<Mismatch>> {
        self.bv7_ids(self.intern(a), self.intern(b), self.intern(c))
    }

    pub fn check_poisson(
        &self,
        a: &Monomial,
        b: &Monomial,
        c: &Monomial,
    ) -> Result<Option<Mismatch>> {
        self.poisson_ids(self.intern(a), self.intern(b), self.intern(c))
    }

    pub fn check_poisson_rewritten(
        &self,
        a: &Monomial,
        b: &Monomial,
        c: &Monomial,
    ) -> Result<Option<Mismatch>> {
        self.poisson_rewritten_ids(self.intern(a), self.intern(b), self.intern(c))
    }

    pub fn check_antisymmetry(&self, a: &Monomial, b: &Monomial) -> Result<Option<Mismatch>> {
        self.antisymmetry_ids(self.intern(a), self.intern(b))
    }

    pub fn check_jacobi(
        &self,
        a: &Monomial,
        b: &Monomial,
        c: &Monomial,
    ) -> Result<Option<Mismatch>> {
        self.jacobi_ids(self.intern(a), self.intern(b), self.intern(c))
    }
}

/// Runs a monomial-level check on every term combination of the inputs.
fn multilinear3(
    k: &Kernel<'_>,
    a: &Element,
    b: &Element,
    c: &Element,
    check: impl Fn(&Kernel<'_>, &Monomial, &Monomial, &Monomial) -> Result<Option<Mismatch>>,
) -> Result<bool> {
    for ma in a.keys() {
        for mb in b.keys() {
            for mc in c.keys() {
                if check(k, ma, mb, mc)?.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `B(a)`, linear and term by term.
pub fn apply_b(model: &BvModel, a: &Element) -> Result<Element> {
    model.apply_b(a)
}

/// The derived bracket, extended bilinearly over homogeneous terms.
pub fn bracket(model: &BvModel, a: &Element, b: &Element) -> Result<Element> {
    Kernel::new(model).bracket(a, b)
}

/// Seven-term relation on every combination of the terms of `a`, `b`, `c`.
pub fn check_bv7(model: &BvModel, a: &Element, b: &Element, c: &Element) -> Result<bool> {
    multilinear3(&Kernel::new(model), a, b, c, |k, x, y, z| {
        k.check_bv7(x, y, z)
    })
}

/// Poisson relation, in both the stated and the rewritten form.
pub fn check_poisson(model: &BvModel, a: &Element, b: &Element, c: &Element) -> Result<bool> {
    let k = Kernel::new(model);
    Ok(
        multilinear3(&k, a, b, c, |k, x, y, z| k.check_poisson(x, y, z))?
            && multilinear3(&k, a, b, c, |k, x, y, z| k.check_poisson_rewritten(x, y, z))?,
    )
}

/// Graded antisymmetry on all three pairs and the shifted Jacobi identity.
pub fn check_jacobi_antisym(
    model: &BvModel,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<bool> {
    let k = Kernel::new(model);
    let antisym = |x: &Element, y: &Element| -> Result<bool> {
        for mx in x.keys() {
            for my in y.keys() {
                if k.check_antisymmetry(mx, my)?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    Ok(antisym(a, b)?
        && antisym(b, c)?
        && antisym(a, c)?
        && multilinear3(&k, a, b, c, |k, x, y, z| k.check_jacobi(x, y, z))?)
}
