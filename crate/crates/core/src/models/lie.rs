use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cap;
use super::manifold::{ActionTable, HurTable, Layout, ManifoldAlgebra};
use crate::algebra::{Element, GeneratorKind, GeneratorSpec, Monomial, Signature};
use crate::bv::{BRule, BvModel};
use crate::error::{Error, Result};
use crate::linear::{rat, sign_pow, Linear};

/// Rational homotopy of a compact connected Lie group: `π₁ = Z^l ⊕ torsion`, and
/// `π_{≥3} ⊗ Q` with one generator per entry of `odd_degrees`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieGroupData {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    #[serde(default)]
    pub odd_degrees: Vec<i64>,
}

impl LieGroupData {
    pub fn new(free_rank: usize, torsion: Vec<u64>, odd_degrees: Vec<i64>) -> Result<Self> {
        let d = LieGroupData {
            free_rank,
            torsion,
            odd_degrees,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&t) = self.torsion.iter().find(|&&t| t < 2) {
            return Err(Error::schema(
                "torsion",
                format!("invariant factors must be ≥ 2, got {t}"),
            ));
        }
        if let Some(&d) = self.odd_degrees.iter().find(|&&d| d < 3 || d % 2 == 0) {
            return Err(Error::schema(
                "odd_degrees",
                format!("degrees must be odd and ≥ 3, got {d}"),
            ));
        }
        Ok(())
    }

    /// `r`: number of generators `x₁ … x_r` of `π_*(G) ⊗ Q`.
    pub fn rank(&self) -> usize {
        self.free_rank + self.odd_degrees.len()
    }

    /// `|x_i|` for `1 ≤ i ≤ r`.
    pub fn degree_of(&self, i: usize) -> i64 {
        if i <= self.free_rank {
            1
        } else {
            self.odd_degrees[i - self.free_rank - 1]
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "Lie group (l={}, torsion={:?}, odd degrees={:?})",
            self.free_rank, self.torsion, self.odd_degrees
        )
    }

    /// `Q[π₁] ⊗ Λ(s⁻¹x_j)`: generators `x1…xl`, `y1…`, `sx{l+1}…sx{r}`.
    pub fn loop_signature(&self) -> Result<Signature> {
        let mut gens = Vec::new();
        for i in 1..=self.free_rank {
            gens.push(GeneratorSpec::free(format!("x{i}")));
        }
        for (k, &n) in self.torsion.iter().enumerate() {
            gens.push(GeneratorSpec::torsion(format!("y{}", k + 1), n));
        }
        for j in self.free_rank + 1..=self.rank() {
            gens.push(GeneratorSpec::poly(format!("sx{j}"), self.degree_of(j) - 1));
        }
        Signature::new(gens)
    }

    /// `H*(G) = Λ(x_i^∨)` in the shifted grading: `d{i}` of degree `−|x_i|`.
    pub fn manifold(&self) -> Result<ManifoldAlgebra> {
        ManifoldAlgebra::exterior(
            (1..=self.rank())
                .map(|i| (format!("d{i}"), -self.degree_of(i)))
                .collect(),
        )
    }

    pub fn layout(&self) -> Result<Layout> {
        Layout::new(self.loop_signature()?, self.manifold()?)
    }

    pub fn signature(&self) -> Result<Signature> {
        Ok(self.layout()?.flat().as_ref().clone())
    }

    /// `hur x_i = x_i` (the class named `x{i}`), `hur` of torsion is zero.
    pub fn hur_table(&self) -> HurTable {
        let mut h = HurTable::new();
        for i in 1..=self.rank() {
            let gen = if i <= self.free_rank {
                format!("x{i}")
            } else {
                format!("sx{i}")
            };
            h.insert(gen, Linear::basis(format!("x{i}")));
        }
        h
    }

    /// `H_*(G)` acting on `H*(G)` through Poincaré duality:
    /// `x_{j_i}·x_{j₁}^∨…x_{j_p}^∨ = (−1)^{i−1} x_{j₁}^∨…x̂_{j_i}^∨…x_{j_p}^∨`.
    pub fn self_action(&self) -> Result<ActionTable> {
        let manifold = self.manifold()?;
        let sig = manifold.signature();
        let mut table = ActionTable::new();
        for j in 1..=self.rank() {
            let mut images = Vec::new();
            for m in manifold.basis() {
                let subset: Vec<usize> = m.ext.iter().map(|&s| s as usize + 1).collect();
                if let Some((sign, rest)) = cap::action_closed_form(j, &subset) {
                    let mut img = sig.one();
                    img.ext = rest.iter().map(|&i| (i - 1) as u16).collect();
                    images.push((m, Element::term(img, rat(sign))));
                }
            }
            table.insert(&manifold, format!("x{j}"), self.degree_of(j), images)?;
        }
        Ok(table)
    }
}

/// Which positional sign `(−1)^{i−1}` of the closed form a mutant flips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MutationScope {
    /// The factor shared by both sums.
    Both,
    /// Only the sum over `j_i ≤ l`.
    GroupSum,
    /// Only the sum over `j_i > l`.
    PolySum,
}

/// Deliberately wrong variant of the Lie-group operator, for testing the test suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignMutation {
    /// 1-based position `i` in `x_{j₁}^∨…x_{j_p}^∨`.
    pub position: usize,
    pub scope: MutationScope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Partner {
    Free(usize),
    Poly(usize),
}

/// Closed-form operator on `Q[π₁] ⊗ Λ(s⁻¹x_j) ⊗ Λ(x_i^∨)`.
///
/// The exterior generator `d{i}` pairs with `x{i}` (group, coefficient `n_i`) or with
/// `sx{i}` (polynomial, coefficient `n_i`, exponent lowered by one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGroupRule {
    partners: Vec<Option<Partner>>,
    mutation: Option<SignMutation>,
}

impl LieGroupRule {
    pub fn for_signature(sig: &Signature) -> Result<Self> {
        let mut partners = Vec::with_capacity(sig.ext_ids().len());
        for &id in sig.ext_ids() {
            let g = sig.generator(id)?;
            let Some(idx) = g.name.strip_prefix('d') else {
                partners.push(None);
                continue;
            };
            let free = sig.generator_by_name(&format!("x{idx}"));
            let poly = sig.generator_by_name(&format!("sx{idx}"));
            let p = match (free, poly) {
                (Some(x), _) if x.kind == GeneratorKind::GroupFree => {
                    Some(Partner::Free(sig.slot(x.id)))
                }
                (_, Some(s)) if s.kind == GeneratorKind::PolyEven => {
                    Some(Partner::Poly(sig.slot(s.id)))
                }
                _ => {
                    return Err(Error::InvalidModel(format!(
                        "`{}` has no matching `x{idx}` or `sx{idx}`",
                        g.name
                    )))
                }
            };
            partners.push(p);
        }
        Ok(LieGroupRule {
            partners,
            mutation: None,
        })
    }

    pub fn with_mutation(mut self, mutation: Option<SignMutation>) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn mutation(&self) -> Option<SignMutation> {
        self.mutation
    }

    fn flipped(&self, position: usize, partner: Partner) -> bool {
        match self.mutation {
            Some(m) if m.position == position => match m.scope {
                MutationScope::Both => true,
                MutationScope::GroupSum => matches!(partner, Partner::Free(_)),
                MutationScope::PolySum => matches!(partner, Partner::Poly(_)),
            },
            _ => false,
        }
    }

    pub fn apply(&self, _sig: &Signature, m: &Monomial) -> Element {
        let mut out = Element::zero();
        for (k, &slot) in m.ext.iter().enumerate() {
            let Some(partner) = self.partners[slot as usize] else {
                continue;
            };
            let mut t = m.clone();
            let n = match partner {
                Partner::Free(s) => m.free[s],
                Partner::Poly(s) => {
                    let n = m.poly[s];
                    if n == 0 {
                        continue;
                    }
                    t.poly[s] -= 1;
                    n as i64
                }
            };
            if n == 0 {
                continue;
            }
            t.ext.remove(k);
            let mut sign = sign_pow(k as i64);
            if self.flipped(k + 1, partner) {
                sign = -sign;
            }
            out.add_term(t, rat(sign * n));
        }
        out
    }
}

pub fn build_lie_group_model(data: &LieGroupData) -> Result<BvModel> {
    build_lie_group_model_mutated(data, None)
}

pub fn build_lie_group_model_mutated(
    data: &LieGroupData,
    mutation: Option<SignMutation>,
) -> Result<BvModel> {
    data.validate()?;
    let sig = data.signature()?;
    let rule = LieGroupRule::for_signature(&sig)?.with_mutation(mutation);
    Ok(BvModel::new(
        data.describe(),
        Arc::new(sig),
        BRule::LieGroup(rule),
    ))
}
