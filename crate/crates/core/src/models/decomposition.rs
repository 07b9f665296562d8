use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::lie::{build_lie_group_model, LieGroupData, LieGroupRule};
use super::tensor::{ground_field_model, tensor_model, torsion_group_model};
use crate::algebra::{Element, GeneratorSpec, Monomial, Side, Signature, Window};
use crate::bv::{BRule, BvModel};
use crate::error::Result;

/// `ℍ*(LS¹)` on generators `x{i}`, `d{i}`.
pub fn circle_factor(i: usize) -> Result<BvModel> {
    sphere_factor(GeneratorSpec::free(format!("x{i}")), i, 1)
}

/// `ℍ*(LS^{2k+1})` on generators `sx{i}` (degree `2k`), `d{i}` (degree `−2k−1`).
pub fn odd_sphere_factor(i: usize, degree: i64) -> Result<BvModel> {
    sphere_factor(GeneratorSpec::poly(format!("sx{i}"), degree - 1), i, degree)
}

fn sphere_factor(g: GeneratorSpec, i: usize, degree: i64) -> Result<BvModel> {
    let sig = Signature::new(vec![
        g,
        GeneratorSpec::ext(format!("d{i}"), -degree, Side::Manifold),
    ])?;
    let rule = LieGroupRule::for_signature(&sig)?;
    Ok(BvModel::new(
        format!("H(LS^{degree})[{i}]"),
        Arc::new(sig),
        BRule::LieGroup(rule),
    ))
}

/// `ℍ*(LS¹)^{⊗l} ⊗ Q[π₁ tor] ⊗ ⊗_k ℍ*(LS^{2k+1})^{⊗ dim π_{2k+1}}`, in that order.
pub fn decomposition_lhs(data: &LieGroupData) -> Result<BvModel> {
    let mut factors = Vec::new();
    for i in 1..=data.free_rank {
        factors.push(circle_factor(i)?);
    }
    if !data.torsion.is_empty() {
        factors.push(torsion_group_model(&data.torsion)?);
    }
    for j in data.free_rank + 1..=data.rank() {
        factors.push(odd_sphere_factor(j, data.degree_of(j))?);
    }
    let mut it = factors.into_iter();
    let mut acc = it.next().unwrap_or_else(ground_field_model);
    for f in it {
        acc = tensor_model(&acc, &f)?;
    }
    Ok(acc)
}

/// `Θ` on one monomial: the same generator word read in the direct model.
pub fn theta(lhs: &Signature, direct: &Signature, m: &Monomial) -> Result<Element> {
    lhs.transport(m, direct)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionMismatch {
    pub monomial: String,
    /// `Θ(B_LHS(m))`
    pub conjugated: String,
    /// `B(Θ(m))`
    pub direct: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub group: String,
    pub window: i64,
    pub group_exponent: i64,
    pub checked: usize,
    /// `Θ` maps window basis monomials bijectively onto window basis monomials, sign-free.
    pub theta_bijective: bool,
    pub mismatch: Option<DecompositionMismatch>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.theta_bijective && self.mismatch.is_none()
    }
}

/// `Θ∘B_LHS∘Θ⁻¹ = B` on every window monomial, against the model built by
/// [`build_lie_group_model`].
pub fn decomposition_check(data: &LieGroupData, window: &Window) -> Result<DecompositionReport> {
    decomposition_check_against(data, &build_lie_group_model(data)?, window)
}

/// As [`decomposition_check`], with an explicitly given direct model.
pub fn decomposition_check_against(
    data: &LieGroupData,
    direct: &BvModel,
    window: &Window,
) -> Result<DecompositionReport> {
    let lhs = decomposition_lhs(data)?;
    let (ls, ds) = (lhs.signature(), direct.signature());
    let basis = ls.basis_window(window);
    let mut images = BTreeSet::new();
    let mut bijective = true;
    let mut mismatch = None;
    for m in &basis {
        let t = theta(ls, ds, m)?;
        match t.iter().next() {
            Some((tm, c)) if t.len() == 1 && *c == crate::linear::rat(1) => {
                bijective &= images.insert(tm.clone());
            }
            _ => bijective = false,
        }
        if mismatch.is_none() {
            let conj = ls.transport_element(&lhs.apply_b_monomial(m)?, ds)?;
            let want = direct.apply_b(&t)?;
            if conj != want {
                mismatch = Some(DecompositionMismatch {
                    monomial: ls.format_monomial(m),
                    conjugated: ds.format(&conj),
                    direct: ds.format(&want),
                });
            }
        }
    }
    let direct_basis: BTreeSet<Monomial> = ds.basis_window(window).into_iter().collect();
    bijective &= images == direct_basis;
    Ok(DecompositionReport {
        group: direct.name().to_string(),
        window: window.degree,
        group_exponent: window.group_exponent,
        checked: basis.len(),
        theta_bijective: bijective,
        mismatch,
    })
}
