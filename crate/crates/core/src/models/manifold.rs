use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Element, GeneratorSpec, Monomial, Side, Signature, TableAlgebra};
use crate::error::{Error, Result};
use crate::linear::{Linear, Rational};

/// `ℍ*(M)` in the shifted grading: degrees ≤ 0 and `[M]` is the unit.
///
/// Presented as an exterior algebra on odd negative-degree classes tensored with a
/// finite table algebra; either part may be trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldAlgebra {
    sig: Signature,
}

impl ManifoldAlgebra {
    pub fn new(duals: Vec<(String, i64)>, table: TableAlgebra) -> Result<Self> {
        let mut gens = Vec::with_capacity(duals.len());
        for (name, degree) in duals {
            if degree >= 0 || degree % 2 == 0 {
                return Err(Error::InvalidModel(format!(
                    "manifold generator `{name}` needs an odd negative degree, got {degree}"
                )));
            }
            gens.push(GeneratorSpec::ext(name, degree, Side::Manifold));
        }
        for i in 0..table.dim() {
            if table.degree(i) > 0 {
                return Err(Error::InvalidModel(format!(
                    "manifold class `{}` has positive degree {}",
                    table.name(i),
                    table.degree(i)
                )));
            }
        }
        Ok(ManifoldAlgebra {
            sig: Signature::with_table(gens, table)?,
        })
    }

    pub fn exterior(duals: Vec<(String, i64)>) -> Result<Self> {
        Self::new(duals, TableAlgebra::trivial())
    }

    pub fn from_table(table: TableAlgebra) -> Result<Self> {
        Self::new(Vec::new(), table)
    }

    /// `ℍ*(pt) = Q`.
    pub fn point() -> Self {
        ManifoldAlgebra {
            sig: Signature::new(Vec::new()).expect("empty signature"),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn basis(&self) -> Vec<Monomial> {
        self.sig.manifold_basis()
    }

    /// `[M]`.
    pub fn fundamental_class(&self) -> Monomial {
        self.sig.one()
    }

    /// Largest `|deg|` of a basis class; the dimension of `M` when the top class is present.
    pub fn dimension(&self) -> i64 {
        self.basis()
            .iter()
            .map(|m| -self.sig.degree(m))
            .max()
            .unwrap_or(0)
    }
}

/// Action of one homology class of `G` on `ℍ*(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionClass {
    pub degree: i64,
    images: BTreeMap<Monomial, Element>,
}

impl ActionClass {
    /// Image of a basis class; unlisted classes map to zero.
    pub fn image(&self, x: &Monomial) -> Element {
        self.images.get(x).cloned().unwrap_or_else(Element::zero)
    }

    pub fn images(&self) -> &BTreeMap<Monomial, Element> {
        &self.images
    }
}

/// Named homology classes of `G` with their action on `ℍ*(M)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionTable {
    classes: BTreeMap<String, ActionClass>,
}

impl ActionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a class acting by `images` (basis class ↦ element). Every image term must
    /// sit in degree `deg(source) + degree`.
    pub fn insert(
        &mut self,
        manifold: &ManifoldAlgebra,
        name: impl Into<String>,
        degree: i64,
        images: impl IntoIterator<Item = (Monomial, Element)>,
    ) -> Result<()> {
        let name = name.into();
        let sig = manifold.signature();
        let mut map = BTreeMap::new();
        for (src, img) in images {
            for m in img.keys() {
                if sig.degree(m) != sig.degree(&src) + degree {
                    return Err(Error::InvalidModel(format!(
                        "action of `{name}` on `{}` has a term `{}` of the wrong degree",
                        sig.format_monomial(&src),
                        sig.format_monomial(m)
                    )));
                }
            }
            if !img.is_zero() {
                map.insert(src, img);
            }
        }
        self.classes.insert(
            name,
            ActionClass {
                degree,
                images: map,
            },
        );
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.classes.contains_key(name)
    }

    pub fn class(&self, name: &str) -> Result<&ActionClass> {
        self.classes
            .get(name)
            .ok_or_else(|| Error::ModelIncomplete(format!("no action given for class `{name}`")))
    }

    pub fn classes(&self) -> impl Iterator<Item = (&String, &ActionClass)> {
        self.classes.iter()
    }

    /// `(Σ cᵢ classᵢ)·x`.
    pub fn act(&self, classes: &Linear<String>, x: &Monomial) -> Result<Element> {
        let mut out = Element::zero();
        for (name, c) in classes {
            out.add_scaled(&self.class(name)?.image(x), c);
        }
        Ok(out)
    }

    pub fn act_element(&self, classes: &Linear<String>, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in x {
            out.add_scaled(&self.act(classes, m)?, c);
        }
        Ok(out)
    }

    /// Degree of a class combination, checked to be homogeneous.
    pub fn degree_of(&self, classes: &Linear<String>) -> Result<Option<i64>> {
        let mut deg = None;
        for name in classes.keys() {
            let d = self.class(name)?.degree;
            match deg {
                Some(d0) if d0 != d => {
                    return Err(Error::MixedDegree(format!(
                        "classes `{}` mix degrees {d0} and {d}",
                        format_classes(classes)
                    )))
                }
                _ => deg = Some(d),
            }
        }
        Ok(deg)
    }
}

pub fn format_classes(c: &Linear<String>) -> String {
    crate::linear::format_linear(c, |s| s.clone())
}

/// Hurewicz images: loop generator name ↦ combination of named homology classes of `G`.
///
/// For a group generator `x` the entry is `hur x`; for a desuspended homotopy generator
/// `s⁻¹f` it is `hur f`. Torsion generators need no entry (their image is zero).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HurTable {
    entries: BTreeMap<String, Linear<String>>,
}

impl HurTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, generator: impl Into<String>, classes: Linear<String>) {
        self.entries.insert(generator.into(), classes);
    }

    pub fn get(&self, generator: &str) -> Result<&Linear<String>> {
        self.entries
            .get(generator)
            .ok_or_else(|| Error::ModelIncomplete(format!("missing hur entry for `{generator}`")))
    }

    pub fn entries(&self) -> &BTreeMap<String, Linear<String>> {
        &self.entries
    }

    /// `hur f` for the group part of a loop monomial: `Σ nᵢ hur xᵢ`.
    pub fn group_part(&self, loop_sig: &Signature, a: &Monomial) -> Result<Linear<String>> {
        let mut out = Linear::zero();
        for (s, &n) in a.free.iter().enumerate() {
            if n != 0 {
                let name = &loop_sig.generator(loop_sig.free_ids()[s])?.name;
                out.add_scaled(self.get(name)?, &Rational::from_integer(n.into()));
            }
        }
        Ok(out)
    }
}

/// `H*(ΩG) ⊗ ℍ*(M)` as one flat signature: loop generators first, then the manifold
/// factor. A flat monomial is the unsigned product of its loop and manifold parts.
#[derive(Clone, Debug)]
pub struct Layout {
    loop_sig: Arc<Signature>,
    manifold: ManifoldAlgebra,
    flat: Arc<Signature>,
}

impl Layout {
    pub fn new(loop_sig: Signature, manifold: ManifoldAlgebra) -> Result<Self> {
        if loop_sig.generators().iter().any(|g| g.side != Side::Loop)
            || !loop_sig.table().is_trivial()
        {
            return Err(Error::InvalidModel(
                "loop signature may only hold loop-side generators".into(),
            ));
        }
        let flat = loop_sig.tensor(manifold.signature())?;
        Ok(Layout {
            loop_sig: Arc::new(loop_sig),
            manifold,
            flat: Arc::new(flat),
        })
    }

    pub fn loop_signature(&self) -> &Signature {
        &self.loop_sig
    }

    pub fn manifold(&self) -> &ManifoldAlgebra {
        &self.manifold
    }

    pub fn flat(&self) -> &Arc<Signature> {
        &self.flat
    }

    /// `m = a ⊗ x`.
    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        self.loop_sig.split_tensor(self.manifold.signature(), m)
    }

    pub fn join(&self, a: &Monomial, x: &Monomial) -> Monomial {
        self.loop_sig.join_tensor(self.manifold.signature(), a, x)
    }

    /// `c · a ⊗ y` for a manifold element `y`.
    pub fn join_element(&self, a: &Monomial, c: &Rational, y: &Element) -> Element {
        y.iter().map(|(x, k)| (self.join(a, x), c * k)).collect()
    }

    /// `Σ c · a' ⊗ x` for a loop element.
    pub fn join_loop_element(&self, a: &Element, x: &Monomial) -> Element {
        a.iter()
            .map(|(m, c)| (self.join(m, x), c.clone()))
            .collect()
    }
}
