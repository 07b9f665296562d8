use std::collections::BTreeMap;
use std::sync::Arc;

use super::manifold::{ActionTable, HurTable, Layout};
use crate::algebra::{Element, GeneratorKind, Monomial, Signature};
use crate::bv::{BRule, BvModel};
use crate::error::{Error, Result};
use crate::linear::{rat, sign_pow};

/// `B_{ΩG}` as a sparse table on loop monomials; unlisted monomials map to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopTable {
    entries: BTreeMap<Monomial, Element>,
}

impl LoopTable {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, loop_sig: &Signature, a: Monomial, value: Element) -> Result<()> {
        let want = loop_sig.degree(&a) + 1;
        if let Some(bad) = value.keys().find(|m| loop_sig.degree(m) != want) {
            return Err(Error::InvalidModel(format!(
                "B_loop({}) has term `{}` outside degree {want}",
                loop_sig.format_monomial(&a),
                loop_sig.format_monomial(bad)
            )));
        }
        self.entries.insert(a, value);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Element::is_zero)
    }

    pub fn get(&self, a: &Monomial) -> Element {
        self.entries.get(a).cloned().unwrap_or_else(Element::zero)
    }
}

/// One generator occurrence in the canonical word `f s⁻¹f₁ … s⁻¹f_r`.
#[derive(Clone, Copy)]
struct Letter {
    id: usize,
    poly_slot: Option<usize>,
    ext_pos: Option<usize>,
    /// `|f_i| = |s⁻¹f_i| + 1`
    f_degree: i64,
}

/// The general rational operator
/// `B(f s⁻¹f₁…s⁻¹f_r ⊗ x) = B_{ΩG}(…)⊗x + (−1)^{Σ|f_i|+r}(f s…⊗hur f·x
///   + Σ_i (−1)^{(|f_i|+1)(|f_{i+1}|+…+|f_r|+r−i+1)} f s…ŝ_i…⊗hur f_i·x)`.
#[derive(Clone, Debug)]
pub struct RationalRule {
    layout: Layout,
    hur: HurTable,
    action: ActionTable,
    b_loop: LoopTable,
}

fn letters(loop_sig: &Signature, a: &Monomial) -> Vec<Letter> {
    let mut out = Vec::new();
    for (s, &n) in a.poly.iter().enumerate() {
        let id = loop_sig.poly_ids()[s];
        for _ in 0..n {
            out.push(Letter {
                id,
                poly_slot: Some(s),
                ext_pos: None,
                f_degree: loop_sig.generators()[id].degree + 1,
            });
        }
    }
    for (pos, &s) in a.ext.iter().enumerate() {
        let id = loop_sig.ext_ids()[s as usize];
        out.push(Letter {
            id,
            poly_slot: None,
            ext_pos: Some(pos),
            f_degree: loop_sig.generators()[id].degree + 1,
        });
    }
    out
}

fn omit(a: &Monomial, l: &Letter) -> Monomial {
    let mut t = a.clone();
    if let Some(s) = l.poly_slot {
        t.poly[s] -= 1;
    }
    if let Some(p) = l.ext_pos {
        t.ext.remove(p);
    }
    t
}

/// Checks that `hur` covers every non-torsion loop generator with classes of the right
/// degree (`1` for `π₁`, `|f|` for `s⁻¹f`).
pub(crate) fn check_hur(loop_sig: &Signature, hur: &HurTable, action: &ActionTable) -> Result<()> {
    for g in loop_sig.generators() {
        let want = match g.kind {
            GeneratorKind::GroupTorsion => continue,
            GeneratorKind::GroupFree => 1,
            _ => g.degree + 1,
        };
        let classes = hur.get(&g.name)?;
        if let Some(d) = action.degree_of(classes)? {
            if d != want {
                return Err(Error::InvalidModel(format!(
                    "hur `{}` should have degree {want}, got {d}",
                    g.name
                )));
            }
        }
    }
    Ok(())
}

impl RationalRule {
    pub fn new(
        layout: Layout,
        hur: HurTable,
        action: ActionTable,
        b_loop: LoopTable,
    ) -> Result<Self> {
        check_hur(layout.loop_signature(), &hur, &action)?;
        Ok(RationalRule {
            layout,
            hur,
            action,
            b_loop,
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn b_loop(&self) -> &LoopTable {
        &self.b_loop
    }

    pub fn apply(&self, _sig: &Signature, m: &Monomial) -> Result<Element> {
        let lay = &self.layout;
        let loop_sig = lay.loop_signature();
        let (a, x) = lay.split(m);
        let mut out = lay.join_loop_element(&self.b_loop.get(&a), &x);

        let word = letters(loop_sig, &a);
        let r = word.len() as i64;
        let eps = sign_pow(word.iter().map(|l| l.f_degree).sum::<i64>() + r);

        let hf = self.hur.group_part(loop_sig, &a)?;
        if !hf.is_zero() {
            out.add_assign_ref(&lay.join_element(&a, &rat(eps), &self.action.act(&hf, &x)?));
        }
        let mut suffix: i64 = 0;
        for (i, l) in word.iter().enumerate().rev() {
            // suffix = |f_{i+1}| + … + |f_r| at this point (0-based i)
            let tail = suffix + (r - i as i64);
            let sign = eps * sign_pow((l.f_degree + 1) * tail);
            suffix += l.f_degree;
            let name = &loop_sig.generators()[l.id].name;
            let y = self.action.act(self.hur.get(name)?, &x)?;
            if y.is_zero() {
                continue;
            }
            out.add_assign_ref(&lay.join_element(&omit(&a, l), &rat(sign), &y));
        }
        Ok(out)
    }
}

pub fn build_rational_action_model(
    name: impl Into<String>,
    layout: Layout,
    hur: HurTable,
    action: ActionTable,
    b_loop: LoopTable,
) -> Result<BvModel> {
    let flat = Arc::clone(layout.flat());
    let rule = RationalRule::new(layout, hur, action, b_loop)?;
    Ok(BvModel::new(name, flat, BRule::Rational(rule)))
}
