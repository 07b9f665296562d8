use std::collections::BTreeMap;
use std::sync::Arc;

use super::lie::LieGroupData;
use super::manifold::{format_classes, ActionTable, HurTable, Layout};
use super::rational::LoopTable;
use crate::algebra::{Element, Monomial, Signature, Window};
use crate::bv::{BRule, BvModel};
use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::linear::{rat, sign_pow, Linear};

/// Explicit values of the homology suspension `σ*` on loop monomials, as combinations of
/// named classes of `G`. A listed zero is a value; an unlisted monomial is unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaTable {
    entries: BTreeMap<Monomial, Linear<String>>,
}

impl SigmaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: Monomial, value: Linear<String>) {
        self.entries.insert(a, value);
    }

    pub fn get(&self, a: &Monomial) -> Option<&Linear<String>> {
        self.entries.get(a)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<Monomial, Linear<String>> {
        &self.entries
    }

    pub fn describe(&self, loop_sig: &Signature) -> Vec<String> {
        self.entries
            .iter()
            .map(|(m, v)| {
                format!(
                    "σ*({}) = {}",
                    loop_sig.format_monomial(m),
                    format_classes(v)
                )
            })
            .collect()
    }

    /// Fills the loop window from generator values, using `σ*(1) = 0`, `σ*(f) = hur f`
    /// on `π₁`, `σ*(s⁻¹f) = hur f`, and `σ*(ab) = σ*(a)ε(b) + (−1)^{|a|}ε(a)σ*(b)`.
    /// The last rule gives `σ*(f·s⁻¹g) = hur g` and zero on longer products.
    pub fn from_generators(loop_sig: &Signature, hur: &HurTable, window: &Window) -> Result<Self> {
        let mut table = SigmaTable::new();
        for a in loop_sig.loop_basis_window(window) {
            let mut odd_letters: Vec<usize> = Vec::new();
            for (s, &n) in a.poly.iter().enumerate() {
                for _ in 0..n {
                    odd_letters.push(loop_sig.poly_ids()[s]);
                }
            }
            for &s in &a.ext {
                odd_letters.push(loop_sig.ext_ids()[s as usize]);
            }
            let value = match odd_letters.as_slice() {
                [] => hur.group_part(loop_sig, &a)?,
                [id] => hur.get(&loop_sig.generators()[*id].name)?.clone(),
                _ => Linear::zero(),
            };
            table.insert(a, value);
        }
        Ok(table)
    }
}

/// `B(a⊗x) = B_{ΩG}(a)⊗x + Σ (−1)^{|a₍₁₎|} a₍₁₎⊗σ*(a₍₂₎)·x`.
#[derive(Clone, Debug)]
pub struct HepworthRule {
    layout: Layout,
    sigma: SigmaTable,
    action: ActionTable,
    b_loop: LoopTable,
}

impl HepworthRule {
    pub fn new(layout: Layout, sigma: SigmaTable, action: ActionTable, b_loop: LoopTable) -> Self {
        HepworthRule {
            layout,
            sigma,
            action,
            b_loop,
        }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn b_loop(&self) -> &LoopTable {
        &self.b_loop
    }

    pub fn sigma(&self) -> &SigmaTable {
        &self.sigma
    }

    pub fn apply(&self, _sig: &Signature, m: &Monomial) -> Result<Element> {
        let lay = &self.layout;
        let loop_sig = lay.loop_signature();
        let (a, x) = lay.split(m);
        let mut out = lay.join_loop_element(&self.b_loop.get(&a), &x);
        let delta = HopfStructure::new(loop_sig).coproduct_monomial(&a)?;
        for ((a1, a2), c) in &delta {
            let s = self.sigma.get(a2).ok_or_else(|| {
                Error::ModelIncomplete(format!(
                    "σ* value missing for `{}`",
                    loop_sig.format_monomial(a2)
                ))
            })?;
            if s.is_zero() {
                continue;
            }
            let y = self.action.act(s, &x)?;
            let coeff = c * rat(sign_pow(loop_sig.degree(a1)));
            out.add_assign_ref(&lay.join_element(a1, &coeff, &y));
        }
        Ok(out)
    }
}

/// `σ*` table with the generator rule, for `Q[π₁]⊗Λ(s⁻¹x_j)⊗H*(G)` on a full window of
/// degree `D`; loop monomials up to degree `D + dim G` are covered.
pub fn lie_group_sigma(data: &LieGroupData, window: &Window) -> Result<SigmaTable> {
    let lay = data.layout()?;
    let loop_window = Window {
        degree: window.degree + lay.manifold().dimension(),
        group_exponent: window.group_exponent,
    };
    SigmaTable::from_generators(lay.loop_signature(), &data.hur_table(), &loop_window)
}

pub fn build_hepworth_model(
    name: impl Into<String>,
    layout: Layout,
    sigma: SigmaTable,
    action: ActionTable,
    b_loop: LoopTable,
) -> BvModel {
    let flat = Arc::clone(layout.flat());
    BvModel::new(
        name,
        flat,
        BRule::Hepworth(HepworthRule::new(layout, sigma, action, b_loop)),
    )
}

/// The coproduct formula on a Lie group acting on itself.
pub fn build_lie_group_hepworth_model(data: &LieGroupData, window: &Window) -> Result<BvModel> {
    let sigma = lie_group_sigma(data, window)?;
    Ok(build_hepworth_model(
        format!("{} [coproduct formula]", data.describe()),
        data.layout()?,
        sigma,
        data.self_action()?,
        LoopTable::zero(),
    ))
}

/// `hepworth_B` on a single element of an already-built coproduct model.
pub fn hepworth_b(model: &BvModel, a: &Element) -> Result<Element> {
    match model.rule() {
        BRule::Hepworth(_) => model.apply_b(a),
        other => Err(Error::InvalidModel(format!(
            "expected a coproduct-formula model, got `{}`",
            other.kind()
        ))),
    }
}
