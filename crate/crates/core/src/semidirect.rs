//! The degree +1 semidirect product `s⁻¹π≥₂(G)⊗Q ⋉ ℍ*(M)` and its map into a loop model.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Element, Monomial, Window};
use crate::bv::{BvModel, Kernel};
use crate::error::{Error, Result};
use crate::linear::{rat, sign_pow, Linear, Rational};
use crate::models::{format_classes, ActionTable, HurTable, LieGroupData, ManifoldAlgebra};

/// `lie_part ⊕ module_part`; the Lie part is a combination of desuspended generators `s⁻¹f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemidirectElement {
    pub lie_part: Linear<String>,
    pub module_part: Element,
}

impl SemidirectElement {
    pub fn lie(name: impl Into<String>) -> Self {
        SemidirectElement {
            lie_part: Linear::basis(name.into()),
            module_part: Element::zero(),
        }
    }

    pub fn module(x: Monomial) -> Self {
        SemidirectElement {
            lie_part: Linear::zero(),
            module_part: Element::basis(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lie_part.is_zero() && self.module_part.is_zero()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        self.lie_part.add_scaled(&other.lie_part, c);
        self.module_part.add_scaled(&other.module_part, c);
    }
}

/// Samelson brackets `{f,g}` on `π≥₂(G)⊗Q`, written on desuspended names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum SamelsonTable {
    /// Every bracket vanishes.
    #[default]
    Zero,
    /// Listed pairs only; the reverse pair follows by `{g,f} = −(−1)^{|f||g|}{f,g}`.
    Explicit(BTreeMap<(String, String), Linear<String>>),
}

impl SamelsonTable {
    pub fn get(&self, f: &str, g: &str, df: i64, dg: i64) -> Result<Linear<String>> {
        match self {
            SamelsonTable::Zero => Ok(Linear::zero()),
            SamelsonTable::Explicit(t) => {
                if let Some(v) = t.get(&(f.to_string(), g.to_string())) {
                    return Ok(v.clone());
                }
                if let Some(v) = t.get(&(g.to_string(), f.to_string())) {
                    return Ok(v.scaled_int(-sign_pow(df * dg)));
                }
                Err(Error::ModelIncomplete(format!(
                    "missing samelson entry for `{{{f}, {g}}}`"
                )))
            }
        }
    }
}

/// Generator `s⁻¹f` with `|f|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieGenerator {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct SemidirectStructure {
    pub lie_generators: Vec<LieGenerator>,
    /// `hur f` for every Lie generator and every `π₁` generator, keyed by loop name.
    pub hur: HurTable,
    pub action: ActionTable,
    pub manifold: ManifoldAlgebra,
    pub samelson: SamelsonTable,
    /// Generators of `π₁(G)` as named in the loop model.
    pub group_generators: Vec<String>,
}

impl SemidirectStructure {
    /// `G` acting on itself, with generators `sx{j}` (`j > l`) and the zero Samelson table.
    pub fn for_lie_group(data: &LieGroupData) -> Result<Self> {
        let lie_generators = (data.free_rank + 1..=data.rank())
            .map(|j| LieGenerator {
                name: format!("sx{j}"),
                degree: data.degree_of(j),
            })
            .collect();
        let mut group_generators: Vec<String> =
            (1..=data.free_rank).map(|i| format!("x{i}")).collect();
        let mut hur = data.hur_table();
        for k in 1..=data.torsion.len() {
            group_generators.push(format!("y{k}"));
            hur.insert(format!("y{k}"), Linear::zero());
        }
        Ok(SemidirectStructure {
            lie_generators,
            hur,
            action: data.self_action()?,
            manifold: data.manifold()?,
            samelson: SamelsonTable::Zero,
            group_generators,
        })
    }

    fn lie_degree(&self, name: &str) -> Result<i64> {
        self.lie_generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.degree)
            .ok_or_else(|| Error::Signature(format!("unknown Lie generator `{name}`")))
    }

    fn x_degree(&self, x: &Monomial) -> i64 {
        self.manifold.signature().degree(x)
    }

    /// `{s⁻¹f, x} = (−1)^{|f|−1} hur f·x`.
    fn lie_on_module(&self, f: &str, x: &Monomial) -> Result<Element> {
        let df = self.lie_degree(f)?;
        Ok(self
            .action
            .act(self.hur.get(f)?, x)?
            .scaled_int(sign_pow(df - 1)))
    }

    /// Basis elements: Lie generators, then the manifold basis.
    pub fn basis(&self) -> Vec<SemidirectElement> {
        let mut out: Vec<_> = self
            .lie_generators
            .iter()
            .map(|g| SemidirectElement::lie(g.name.clone()))
            .collect();
        out.extend(
            self.manifold
                .basis()
                .into_iter()
                .map(SemidirectElement::module),
        );
        out
    }

    /// Degree of a homogeneous element, `|s⁻¹f| = |f| − 1`; `None` for zero.
    pub fn degree(&self, a: &SemidirectElement) -> Result<Option<i64>> {
        let mut deg = None;
        let lie = a
            .lie_part
            .keys()
            .map(|n| self.lie_degree(n).map(|d| d - 1))
            .collect::<Result<Vec<_>>>()?;
        let module = a.module_part.keys().map(|x| self.x_degree(x));
        for d in lie.into_iter().chain(module) {
            match deg {
                Some(d0) if d0 != d => {
                    return Err(Error::MixedDegree(format!("degrees {d0} and {d}")))
                }
                _ => deg = Some(d),
            }
        }
        Ok(deg)
    }

    pub fn format(&self, a: &SemidirectElement) -> String {
        let sig = self.manifold.signature();
        match (a.lie_part.is_zero(), a.module_part.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => format_classes(&a.lie_part),
            (true, false) => sig.format(&a.module_part),
            (false, false) => format!(
                "({}) + ({})",
                format_classes(&a.lie_part),
                sig.format(&a.module_part)
            ),
        }
    }
}

/// The semidirect bracket, bilinear in both arguments.
pub fn semidirect_bracket(
    s: &SemidirectStructure,
    a: &SemidirectElement,
    b: &SemidirectElement,
) -> Result<SemidirectElement> {
    let mut out = SemidirectElement::default();
    for (f, c) in &a.lie_part {
        let df = s.lie_degree(f)?;
        for (g, c2) in &b.lie_part {
            let dg = s.lie_degree(g)?;
            out.lie_part
                .add_scaled(&s.samelson.get(f, g, df, dg)?, &(c * c2));
        }
        for (x, c2) in &b.module_part {
            out.module_part
                .add_scaled(&s.lie_on_module(f, x)?, &(c * c2));
        }
    }
    for (x, c) in &a.module_part {
        let dx = s.x_degree(x);
        for (f, c2) in &b.lie_part {
            let df = s.lie_degree(f)?;
            // {x, s⁻¹f} = −(−1)^{(|x|+1)|f|}{s⁻¹f, x}
            let sign = rat(-sign_pow((dx + 1) * df));
            out.module_part
                .add_scaled(&s.lie_on_module(f, x)?, &(c * c2 * sign));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectFailure {
    pub check: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectReport {
    pub check: String,
    pub checked: usize,
    pub failure: Option<SemidirectFailure>,
}

impl SemidirectReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn new(check: &str) -> Self {
        SemidirectReport {
            check: check.into(),
            checked: 0,
            failure: None,
        }
    }

    fn record(&mut self, inputs: Vec<String>, lhs: String, rhs: String) {
        self.checked += 1;
        if lhs != rhs && self.failure.is_none() {
            self.failure = Some(SemidirectFailure {
                check: self.check.clone(),
                inputs,
                lhs,
                rhs,
            });
        }
    }
}

fn combo(terms: &[(Rational, &SemidirectElement)]) -> SemidirectElement {
    let mut out = SemidirectElement::default();
    for (c, e) in terms {
        out.add_scaled(e, c);
    }
    out
}

/// Graded antisymmetry and Jacobi of the semidirect bracket on all basis pairs and triples.
pub fn check_semidirect_axioms(s: &SemidirectStructure) -> Result<Vec<SemidirectReport>> {
    let basis = s.basis();
    let degs = basis
        .iter()
        .map(|e| s.degree(e).map(|d| d.unwrap_or(0)))
        .collect::<Result<Vec<_>>>()?;
    let mut anti = SemidirectReport::new("antisymmetry");
    let mut jac = SemidirectReport::new("jacobi");
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let ab = semidirect_bracket(s, a, b)?;
            let ba = semidirect_bracket(s, b, a)?;
            let sign = rat(-sign_pow((degs[i] + 1) * (degs[j] + 1)));
            let rhs = combo(&[(sign.clone(), &ba)]);
            anti.record(
                vec![s.format(a), s.format(b)],
                s.format(&ab),
                s.format(&rhs),
            );
            for c in &basis {
                let lhs = semidirect_bracket(s, a, &semidirect_bracket(s, b, c)?)?;
                let first = semidirect_bracket(s, &ab, c)?;
                let second = semidirect_bracket(s, b, &semidirect_bracket(s, a, c)?)?;
                let sign = rat(sign_pow((degs[i] + 1) * (degs[j] + 1)));
                let rhs = combo(&[(rat(1), &first), (sign, &second)]);
                jac.record(
                    vec![s.format(a), s.format(b), s.format(c)],
                    s.format(&lhs),
                    s.format(&rhs),
                );
            }
        }
    }
    Ok(vec![anti, jac])
}

/// `Φ(s⁻¹f, x) = s⁻¹f⊗[M] + 1⊗x` into the loop model, by generator and class names.
pub fn phi(model: &BvModel, s: &SemidirectStructure, a: &SemidirectElement) -> Result<Element> {
    let sig = model.signature();
    let mut out = Element::zero();
    for (f, c) in &a.lie_part {
        let id = sig
            .generators()
            .iter()
            .position(|g| &g.name == f)
            .ok_or_else(|| Error::Signature(format!("model has no generator `{f}`")))?;
        out.add_scaled(&sig.gen_power(id, 1)?, c);
    }
    let msig = s.manifold.signature();
    out.add_assign_ref(&msig.transport_element(&a.module_part, sig)?);
    Ok(out)
}

/// `Φ{u,v} = {Φu,Φv}` for all basis pairs of the semidirect product within the window.
pub fn check_morphism_into_model(
    model: &BvModel,
    s: &SemidirectStructure,
    window: &Window,
) -> Result<SemidirectReport> {
    let k = Kernel::new(model);
    let sig = model.signature();
    let basis: Vec<SemidirectElement> = s
        .basis()
        .into_iter()
        .filter(|e| matches!(s.degree(e), Ok(Some(d)) if d.abs() <= window.degree))
        .collect();
    let mut report = SemidirectReport::new("morphism");
    for u in &basis {
        for v in &basis {
            let lhs = phi(model, s, &semidirect_bracket(s, u, v)?)?;
            let rhs = k.bracket(&phi(model, s, u)?, &phi(model, s, v)?)?;
            report.record(
                vec![s.format(u), s.format(v)],
                sig.format(&lhs),
                sig.format(&rhs),
            );
        }
    }
    Ok(report)
}

/// `{f⊗[M], 1⊗x} = f⊗(hur f·x)` for the `π₁` generators `f` and every class `x`.
pub fn check_group_like_bracket(
    model: &BvModel,
    s: &SemidirectStructure,
) -> Result<SemidirectReport> {
    let k = Kernel::new(model);
    let sig = model.signature();
    let msig = s.manifold.signature();
    let mut report = SemidirectReport::new("group-like");
    for f in &s.group_generators {
        let id = sig
            .generators()
            .iter()
            .position(|g| &g.name == f)
            .ok_or_else(|| Error::Signature(format!("model has no generator `{f}`")))?;
        let fe = sig.gen_power(id, 1)?;
        let hur = s.hur.get(f)?;
        for x in s.manifold.basis() {
            let xe = msig.transport(&x, sig)?;
            let lhs = k.bracket(&fe, &xe)?;
            let acted = msig.transport_element(&s.action.act(hur, &x)?, sig)?;
            let rhs = sig.multiply(&fe, &acted);
            report.record(
                vec![f.clone(), msig.format_monomial(&x)],
                sig.format(&lhs),
                sig.format(&rhs),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_lie_group_model;

    fn su3() -> LieGroupData {
        LieGroupData::new(0, vec![], vec![3, 5]).unwrap()
    }

    #[test]
    fn module_brackets_vanish() {
        let s = SemidirectStructure::for_lie_group(&su3()).unwrap();
        let b = s.manifold.basis();
        for x in &b {
            for y in &b {
                let r = semidirect_bracket(
                    &s,
                    &SemidirectElement::module(x.clone()),
                    &SemidirectElement::module(y.clone()),
                )
                .unwrap();
                assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn lie_on_module_sign() {
        // |f| = 3: {s⁻¹f, x} = +hur f·x
        let s = SemidirectStructure::for_lie_group(&su3()).unwrap();
        let msig = s.manifold.signature();
        let d1 = crate::expr::parse_element(msig, "d1*d2").unwrap();
        let x = d1.keys().next().unwrap().clone();
        let r = semidirect_bracket(
            &s,
            &SemidirectElement::lie("sx1"),
            &SemidirectElement::module(x),
        )
        .unwrap();
        assert_eq!(msig.format(&r.module_part), "d2");
    }

    #[test]
    fn explicit_samelson_reverse_sign_and_missing() {
        let mut t = BTreeMap::new();
        t.insert(
            ("a".to_string(), "b".to_string()),
            Linear::basis("c".to_string()),
        );
        let t = SamelsonTable::Explicit(t);
        assert_eq!(
            t.get("b", "a", 3, 7).unwrap(),
            Linear::basis("c".to_string())
        );
        assert_eq!(
            t.get("b", "a", 2, 4).unwrap(),
            Linear::basis("c".to_string()).neg()
        );
        assert!(matches!(
            t.get("a", "a", 3, 3),
            Err(Error::ModelIncomplete(_))
        ));
    }

    #[test]
    fn su3_axioms_and_morphism() {
        let d = su3();
        let s = SemidirectStructure::for_lie_group(&d).unwrap();
        for r in check_semidirect_axioms(&s).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        let m = build_lie_group_model(&d).unwrap();
        let r = check_morphism_into_model(&m, &s, &Window::new(10)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, 36);
    }

    #[test]
    fn lie_lie_bracket_in_model_is_zero() {
        let d = su3();
        let m = build_lie_group_model(&d).unwrap();
        let s = SemidirectStructure::for_lie_group(&d).unwrap();
        let k = Kernel::new(&m);
        let a = phi(&m, &s, &SemidirectElement::lie("sx1")).unwrap();
        let b = phi(&m, &s, &SemidirectElement::lie("sx2")).unwrap();
        assert!(k.bracket(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn group_like_u2() {
        let d = LieGroupData::new(1, vec![], vec![3]).unwrap();
        let m = build_lie_group_model(&d).unwrap();
        let s = SemidirectStructure::for_lie_group(&d).unwrap();
        let r = check_group_like_bracket(&m, &s).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, 4);
    }
}
