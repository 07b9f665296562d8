//! Versioned TOML model files.
//!
//! ```toml
//! schema = 1
//! name = "U(2)"
//! kind = "lie_group"            # lie_group | sphere_action | rational_action | hepworth
//!
//! [lie_group]
//! free_rank = 1
//! torsion = []                  # invariant factors, integers or integer strings
//! odd_degrees = [3]
//! ```
//!
//! The other kinds describe `ℍ*(M)` in `[manifold]` (exterior `duals` and/or a finite
//! table of `classes` with `products`), the action of named classes of `G` in
//! `[[action]]`, and for `rational_action` / `hepworth` the loop `[[generators]]`,
//! `[hur]`, optional `[b_loop]` and (`hepworth` only) `sigma`. Every coefficient is an
//! exact rational written as a string in the expression grammar of [`crate::expr`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::algebra::{Element, GeneratorSpec, Monomial, Side, Signature, TableAlgebra, Window};
use crate::bv::BvModel;
use crate::error::{Error, Result};
use crate::expr::{parse_classes, parse_element_in, parse_rational};
use crate::linear::Linear;
use crate::models::{
    build_hepworth_model, build_lie_group_model, build_rational_action_model, build_sphere_model,
    lie_group_sigma, ActionTable, HurTable, Layout, LieGroupData, LoopTable, ManifoldAlgebra,
    SigmaTable, SphereKind,
};
use crate::semidirect::{LieGenerator, SamelsonTable, SemidirectStructure};

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Deserialize)]
#[serde(untagged)]
enum IntLike {
    Int(i64),
    Text(String),
}

impl IntLike {
    fn get(&self, field: &str) -> Result<i64> {
        match self {
            IntLike::Int(n) => Ok(*n),
            IntLike::Text(s) => {
                let q = parse_rational(field, s)?;
                if !q.is_integer() {
                    return Err(Error::schema(
                        field,
                        format!("expected an integer, got `{s}`"),
                    ));
                }
                i64::try_from(q.to_integer())
                    .map_err(|_| Error::schema(field, format!("integer `{s}` out of range")))
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    schema: i64,
    name: String,
    kind: String,
    lie_group: Option<RawLieGroup>,
    which: Option<String>,
    manifold: Option<RawManifold>,
    #[serde(default)]
    generators: Vec<RawGenerator>,
    hur: Option<BTreeMap<String, String>>,
    b_loop: Option<BTreeMap<String, String>>,
    #[serde(default)]
    action: Vec<RawAction>,
    sigma: Option<RawSigma>,
    #[serde(default)]
    samelson: Vec<RawSamelson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLieGroup {
    free_rank: IntLike,
    #[serde(default)]
    torsion: Vec<IntLike>,
    #[serde(default)]
    odd_degrees: Vec<IntLike>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    #[serde(default)]
    duals: Vec<RawNamed>,
    #[serde(default)]
    classes: Vec<RawNamed>,
    #[serde(default)]
    products: Vec<RawProduct>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNamed {
    name: String,
    degree: IntLike,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
    left: String,
    right: String,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    kind: String,
    degree: Option<IntLike>,
    order: Option<IntLike>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    class: String,
    degree: IntLike,
    #[serde(default)]
    images: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSigma {
    Rule(String),
    Table(BTreeMap<String, String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSamelson {
    left: String,
    right: String,
    value: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    LieGroup,
    SphereAction,
    RationalAction,
    Hepworth,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::LieGroup => "lie_group",
            ModelKind::SphereAction => "sphere_action",
            ModelKind::RationalAction => "rational_action",
            ModelKind::Hepworth => "hepworth",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
enum SigmaSpec {
    Generators,
    Table(BTreeMap<String, String>),
}

/// Parts shared by the action kinds.
#[derive(Clone, Debug)]
struct ActionParts {
    manifold: ManifoldAlgebra,
    action: ActionTable,
    loop_sig: Option<Signature>,
    hur: HurTable,
    b_loop: BTreeMap<String, String>,
    sphere: Option<SphereKind>,
    sigma: Option<SigmaSpec>,
}

/// A validated model file.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub kind: ModelKind,
    lie: Option<LieGroupData>,
    parts: Option<ActionParts>,
    samelson: Vec<(String, String, String)>,
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ModelSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::schema("model", format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

pub fn parse_model(text: &str) -> Result<ModelSpec> {
    let raw: RawModel =
        toml::from_str(text).map_err(|e| Error::schema("model", e.message().to_string()))?;
    if raw.schema != SCHEMA_VERSION {
        return Err(Error::schema(
            "schema",
            format!(
                "unsupported version {}, expected {SCHEMA_VERSION}",
                raw.schema
            ),
        ));
    }
    let kind = match raw.kind.as_str() {
        "lie_group" => ModelKind::LieGroup,
        "sphere_action" => ModelKind::SphereAction,
        "rational_action" => ModelKind::RationalAction,
        "hepworth" => ModelKind::Hepworth,
        other => {
            return Err(Error::schema(
                "kind",
                format!("unknown model kind `{other}`"),
            ))
        }
    };
    let samelson = raw
        .samelson
        .iter()
        .map(|s| (s.left.clone(), s.right.clone(), s.value.clone()))
        .collect();
    let mut spec = ModelSpec {
        name: raw.name.clone(),
        kind,
        lie: None,
        parts: None,
        samelson,
    };
    if kind == ModelKind::LieGroup {
        forbid(&raw, kind)?;
        let lg = raw.lie_group.as_ref().ok_or_else(|| {
            Error::schema("lie_group", "section is required for kind `lie_group`")
        })?;
        spec.lie = Some(lie_data(lg)?);
    } else {
        if raw.lie_group.is_some() {
            return Err(Error::schema(
                "lie_group",
                format!("not allowed for kind `{kind}`"),
            ));
        }
        spec.parts = Some(action_parts(&raw, kind)?);
    }
    // resolve now so errors surface at parse time
    if !spec.samelson.is_empty() {
        spec.semidirect()?;
    }
    Ok(spec)
}

fn forbid(raw: &RawModel, kind: ModelKind) -> Result<()> {
    let present = [
        ("which", raw.which.is_some()),
        ("manifold", raw.manifold.is_some()),
        ("generators", !raw.generators.is_empty()),
        ("hur", raw.hur.is_some()),
        ("b_loop", raw.b_loop.is_some()),
        ("action", !raw.action.is_empty()),
        ("sigma", raw.sigma.is_some()),
    ];
    match present.iter().find(|(_, p)| *p) {
        Some((field, _)) => Err(Error::schema(
            *field,
            format!("not allowed for kind `{kind}`"),
        )),
        None => Ok(()),
    }
}

fn lie_data(lg: &RawLieGroup) -> Result<LieGroupData> {
    let free_rank = lg.free_rank.get("lie_group.free_rank")?;
    if free_rank < 0 {
        return Err(Error::schema("lie_group.free_rank", "must be ≥ 0"));
    }
    let torsion = lg
        .torsion
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let field = format!("lie_group.torsion[{i}]");
            let n = t.get(&field)?;
            if n < 2 {
                return Err(Error::schema(
                    field,
                    format!("invariant factors must be ≥ 2, got {n}"),
                ));
            }
            Ok(n as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    let odd_degrees = lg
        .odd_degrees
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let field = format!("lie_group.odd_degrees[{i}]");
            let d = d.get(&field)?;
            if d < 3 || d % 2 == 0 {
                return Err(Error::schema(
                    field,
                    format!("degrees must be odd and ≥ 3, got {d}"),
                ));
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>>>()?;
    LieGroupData::new(free_rank as usize, torsion, odd_degrees)
}

fn manifold(raw: &Option<RawManifold>) -> Result<ManifoldAlgebra> {
    let Some(m) = raw else {
        return Ok(ManifoldAlgebra::point());
    };
    let duals = m
        .duals
        .iter()
        .enumerate()
        .map(|(i, d)| {
            Ok((
                d.name.clone(),
                d.degree.get(&format!("manifold.duals[{i}].degree"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = if m.classes.is_empty() {
        if !m.products.is_empty() {
            return Err(Error::schema(
                "manifold.products",
                "products need `classes`",
            ));
        }
        TableAlgebra::trivial()
    } else {
        let names: Vec<String> = m.classes.iter().map(|c| c.name.clone()).collect();
        let degrees = m
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| c.degree.get(&format!("manifold.classes[{i}].degree")))
            .collect::<Result<Vec<_>>>()?;
        let index = |field: &str, n: &str| {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::schema(field, format!("unknown class `{n}`")))
        };
        let mut listed = BTreeMap::new();
        for (i, p) in m.products.iter().enumerate() {
            let field = format!("manifold.products[{i}]");
            let l = index(&field, &p.left)?;
            let r = index(&field, &p.right)?;
            let mut v = Linear::zero();
            for (name, c) in &parse_classes(&field, &p.value)? {
                v.add_term(index(&field, name)?, c.clone());
            }
            listed.insert((l, r), v);
        }
        TableAlgebra::new(names, degrees, listed)
            .map_err(|e| Error::schema("manifold.classes", e.to_string()))?
    };
    ManifoldAlgebra::new(duals, table).map_err(|e| Error::schema("manifold", e.to_string()))
}

fn single_monomial(sig: &Signature, field: &str, text: &str) -> Result<Monomial> {
    let e = parse_element_in(sig, field, text)?;
    match e.iter().next() {
        Some((m, c)) if e.len() == 1 && *c == crate::linear::rat(1) => Ok(m.clone()),
        _ => Err(Error::schema(
            field,
            format!("`{text}` is not a basis monomial"),
        )),
    }
}

fn action_table(raw: &[RawAction], manifold: &ManifoldAlgebra) -> Result<ActionTable> {
    let sig = manifold.signature();
    let mut table = ActionTable::new();
    for (i, a) in raw.iter().enumerate() {
        let field = format!("action[{i}]");
        if table.contains(&a.class) {
            return Err(Error::schema(
                field,
                format!("duplicate class `{}`", a.class),
            ));
        }
        let degree = a.degree.get(&format!("{field}.degree"))?;
        let mut images: Vec<(Monomial, Element)> = Vec::new();
        for (src, img) in &a.images {
            let f = format!("{field}.images.{src}");
            let m = single_monomial(sig, &f, src)?;
            images.push((m, parse_element_in(sig, &f, img)?));
        }
        table
            .insert(manifold, a.class.clone(), degree, images)
            .map_err(|e| Error::schema(field, e.to_string()))?;
    }
    Ok(table)
}

fn loop_signature(raw: &[RawGenerator]) -> Result<Signature> {
    let mut gens = Vec::new();
    for (i, g) in raw.iter().enumerate() {
        let field = format!("generators[{i}]");
        if raw[..i].iter().any(|h| h.name == g.name) {
            return Err(Error::schema(
                field,
                format!("duplicate generator id `{}`", g.name),
            ));
        }
        let spec = match g.kind.as_str() {
            "free" => GeneratorSpec::free(&g.name),
            "torsion" => {
                let f = format!("{field}.order");
                let n = g
                    .order
                    .as_ref()
                    .ok_or_else(|| Error::schema(&f, "torsion generators need an order"))?
                    .get(&f)?;
                if n < 2 {
                    return Err(Error::schema(f, format!("order must be ≥ 2, got {n}")));
                }
                GeneratorSpec::torsion(&g.name, n as u64)
            }
            "graded" => {
                let f = format!("{field}.degree");
                let d = g
                    .degree
                    .as_ref()
                    .ok_or_else(|| Error::schema(&f, "graded generators need a degree"))?
                    .get(&f)?;
                if d <= 0 {
                    return Err(Error::schema(
                        f,
                        format!("loop degrees must be positive, got {d}"),
                    ));
                }
                GeneratorSpec::graded(&g.name, d, Side::Loop)
            }
            other => {
                return Err(Error::schema(
                    format!("{field}.kind"),
                    format!("expected free, torsion or graded, got `{other}`"),
                ))
            }
        };
        gens.push(spec);
    }
    Signature::new(gens).map_err(|e| Error::schema("generators", e.to_string()))
}

fn action_parts(raw: &RawModel, kind: ModelKind) -> Result<ActionParts> {
    let manifold = manifold(&raw.manifold)?;
    let action = action_table(&raw.action, &manifold)?;
    let mut parts = ActionParts {
        manifold,
        action,
        loop_sig: None,
        hur: HurTable::new(),
        b_loop: raw.b_loop.clone().unwrap_or_default(),
        sphere: None,
        sigma: None,
    };
    let not_allowed = |field: &str| {
        Err(Error::schema(
            field,
            format!("not allowed for kind `{kind}`"),
        ))
    };
    if kind == ModelKind::SphereAction {
        parts.sphere = Some(match raw.which.as_deref() {
            Some("S1") => SphereKind::S1,
            Some("S3") => SphereKind::S3,
            Some(other) => {
                return Err(Error::schema(
                    "which",
                    format!("expected S1 or S3, got `{other}`"),
                ))
            }
            None => return Err(Error::schema("which", "required for kind `sphere_action`")),
        });
        if !raw.generators.is_empty() {
            return not_allowed("generators");
        }
        if raw.hur.is_some() {
            return not_allowed("hur");
        }
        if raw.b_loop.is_some() {
            return not_allowed("b_loop");
        }
        if raw.sigma.is_some() {
            return not_allowed("sigma");
        }
        return Ok(parts);
    }
    if raw.which.is_some() {
        return not_allowed("which");
    }
    if raw.generators.is_empty() {
        return Err(Error::schema(
            "generators",
            format!("required for kind `{kind}`"),
        ));
    }
    parts.loop_sig = Some(loop_signature(&raw.generators)?);
    for (g, v) in raw.hur.iter().flatten() {
        parts
            .hur
            .insert(g.clone(), parse_classes(&format!("hur.{g}"), v)?);
    }
    parts.sigma = match (&raw.sigma, kind) {
        (None, ModelKind::Hepworth) => {
            return Err(Error::schema("sigma", "required for kind `hepworth`"))
        }
        (Some(_), ModelKind::RationalAction) => return not_allowed("sigma"),
        (None, _) => None,
        (Some(RawSigma::Rule(r)), _) if r == "generators" => Some(SigmaSpec::Generators),
        (Some(RawSigma::Rule(r)), _) => {
            return Err(Error::schema(
                "sigma",
                format!("expected \"generators\" or a table, got `{r}`"),
            ))
        }
        (Some(RawSigma::Table(t)), _) => Some(SigmaSpec::Table(t.clone())),
    };
    // validates b_loop entries early
    let lay = Layout::new(
        parts.loop_sig.clone().expect("set above"),
        parts.manifold.clone(),
    )?;
    loop_table(&lay, &parts.b_loop)?;
    Ok(parts)
}

fn loop_table(lay: &Layout, raw: &BTreeMap<String, String>) -> Result<LoopTable> {
    let sig = lay.loop_signature();
    let mut t = LoopTable::zero();
    for (src, v) in raw {
        let f = format!("b_loop.{src}");
        let a = single_monomial(sig, &f, src)?;
        let value = parse_element_in(sig, &f, v)?;
        t.insert(sig, a, value)
            .map_err(|e| Error::schema(&f, e.to_string()))?;
    }
    Ok(t)
}

impl ModelSpec {
    pub fn lie_group(&self) -> Option<&LieGroupData> {
        self.lie.as_ref()
    }

    /// The BV model; `window` only matters for `sigma = "generators"`.
    pub fn build(&self, window: &Window) -> Result<BvModel> {
        if let Some(d) = &self.lie {
            return Ok(build_lie_group_model(d)?.renamed(self.name.clone()));
        }
        let p = self.parts.as_ref().expect("action kinds carry parts");
        let model = match self.kind {
            ModelKind::SphereAction => build_sphere_model(
                p.sphere.expect("sphere kind"),
                p.manifold.clone(),
                p.action.clone(),
            )?,
            ModelKind::RationalAction => {
                let lay = self.layout()?;
                let b_loop = loop_table(&lay, &p.b_loop)?;
                build_rational_action_model(
                    &self.name,
                    lay,
                    p.hur.clone(),
                    p.action.clone(),
                    b_loop,
                )?
            }
            ModelKind::Hepworth => {
                let lay = self.layout()?;
                let b_loop = loop_table(&lay, &p.b_loop)?;
                let sigma = match p.sigma.as_ref().expect("hepworth sigma") {
                    SigmaSpec::Generators => {
                        // products of three window monomials reach exponent 3E
                        let loop_window = Window {
                            degree: window.degree + lay.manifold().dimension(),
                            group_exponent: 3 * window.group_exponent,
                        };
                        SigmaTable::from_generators(lay.loop_signature(), &p.hur, &loop_window)?
                    }
                    SigmaSpec::Table(t) => {
                        let sig = lay.loop_signature();
                        let mut s = SigmaTable::new();
                        for (src, v) in t {
                            let f = format!("sigma.{src}");
                            s.insert(single_monomial(sig, &f, src)?, parse_classes(&f, v)?);
                        }
                        s
                    }
                };
                build_hepworth_model(&self.name, lay, sigma, p.action.clone(), b_loop)
            }
            ModelKind::LieGroup => unreachable!(),
        };
        Ok(model.renamed(self.name.clone()))
    }

    fn layout(&self) -> Result<Layout> {
        let p = self.parts.as_ref().expect("action kinds carry parts");
        Layout::new(
            p.loop_sig.clone().expect("loop generators"),
            p.manifold.clone(),
        )
    }

    /// The `σ*` table a Lie-group model would use on `window`.
    pub fn lie_sigma(&self, window: &Window) -> Result<Option<SigmaTable>> {
        self.lie
            .as_ref()
            .map(|d| lie_group_sigma(d, window))
            .transpose()
    }

    /// The semidirect product attached to the model, with its Samelson table.
    pub fn semidirect(&self) -> Result<SemidirectStructure> {
        let mut s = if let Some(d) = &self.lie {
            SemidirectStructure::for_lie_group(d)?
        } else {
            let p = self.parts.as_ref().expect("action kinds carry parts");
            let sig = p.loop_sig.as_ref().ok_or_else(|| {
                Error::InvalidModel(format!("kind `{}` has no homotopy generators", self.kind))
            })?;
            let mut hur = p.hur.clone();
            let mut lie_generators = Vec::new();
            let mut group_generators = Vec::new();
            for g in sig.generators() {
                if g.degree == 0 {
                    if g.torsion_order.is_some() && hur.get(&g.name).is_err() {
                        hur.insert(g.name.clone(), Linear::zero());
                    }
                    group_generators.push(g.name.clone());
                } else {
                    lie_generators.push(LieGenerator {
                        name: g.name.clone(),
                        degree: g.degree + 1,
                    });
                }
            }
            SemidirectStructure {
                lie_generators,
                hur,
                action: p.action.clone(),
                manifold: p.manifold.clone(),
                samelson: SamelsonTable::Zero,
                group_generators,
            }
        };
        if !self.samelson.is_empty() {
            let known: Vec<&str> = s.lie_generators.iter().map(|g| g.name.as_str()).collect();
            let mut t = BTreeMap::new();
            for (i, (l, r, v)) in self.samelson.iter().enumerate() {
                let field = format!("samelson[{i}]");
                for n in [l, r] {
                    if !known.contains(&n.as_str()) {
                        return Err(Error::schema(&field, format!("unknown generator `{n}`")));
                    }
                }
                let value = parse_classes(&field, v)?;
                if let Some(n) = value.keys().find(|n| !known.contains(&n.as_str())) {
                    return Err(Error::schema(&field, format!("unknown generator `{n}`")));
                }
                t.insert((l.clone(), r.clone()), value);
            }
            s.samelson = SamelsonTable::Explicit(t);
        }
        Ok(s)
    }
}
