//! Generator signatures, canonical monomials and the graded-commutative product.
//!
//! The ambient algebra of a signature is
//! `Q[Z^l × ⊕ Z/n_k] ⊗ Q[even generators] ⊗ Λ[odd generators] ⊗ T`
//! where `T` is an optional finite table algebra (the non-free part of a manifold
//! factor). A [`Monomial`] stores one canonical representative: group exponents,
//! torsion residues, polynomial exponents, the ascending list of exterior slots and a
//! table basis index. Reordering signs are consumed when a monomial is built.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::generator::{GeneratorKind, GeneratorSpec, Side};
use super::table::TableAlgebra;
use crate::error::{Error, Result};
use crate::linear::{format_linear, rat, sign_pow, Linear, Rational};

/// Canonical basis word. Field vectors are indexed by the generator's slot within its
/// kind; see [`Signature::slot`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub(crate) free: Vec<i64>,
    pub(crate) torsion: Vec<u64>,
    pub(crate) poly: Vec<u32>,
    pub(crate) ext: Vec<u16>,
    pub(crate) table: u32,
}

impl Monomial {
    pub fn free_exponents(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_element(&self) -> &[u64] {
        &self.torsion
    }

    pub fn poly_exponents(&self) -> &[u32] {
        &self.poly
    }

    /// Ascending exterior slots present in the word.
    pub fn ext_indices(&self) -> &[u16] {
        &self.ext
    }

    pub fn table_index(&self) -> usize {
        self.table as usize
    }

    pub fn is_one(&self) -> bool {
        self.free.iter().all(|&n| n == 0)
            && self.torsion.iter().all(|&n| n == 0)
            && self.poly.iter().all(|&n| n == 0)
            && self.ext.is_empty()
            && self.table == 0
    }
}

/// Finite rational combination of monomials.
pub type Element = Linear<Monomial>;

/// One factor of an unnormalized word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordFactor {
    Gen { id: usize, exponent: i64 },
    Table(usize),
}

/// Enumeration bounds: `|degree| ≤ degree` and `|n| ≤ group_exponent` for every
/// free-group exponent (and every polynomial exponent of a degree-0 generator).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub degree: i64,
    pub group_exponent: i64,
}

impl Window {
    pub const DEFAULT_DEGREE: i64 = 10;
    pub const DEFAULT_GROUP_EXPONENT: i64 = 2;

    pub fn new(degree: i64) -> Self {
        Window {
            degree,
            group_exponent: Self::DEFAULT_GROUP_EXPONENT,
        }
    }

    pub fn with_group_exponent(mut self, e: i64) -> Self {
        self.group_exponent = e;
        self
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(Self::DEFAULT_DEGREE)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    gens: Vec<GeneratorSpec>,
    slot: Vec<usize>,
    free: Vec<usize>,
    torsion: Vec<usize>,
    poly: Vec<usize>,
    ext: Vec<usize>,
    table: TableAlgebra,
}

impl Signature {
    pub fn new(gens: Vec<GeneratorSpec>) -> Result<Self> {
        Self::with_table(gens, TableAlgebra::trivial())
    }

    /// Generator ids are reassigned to their position in `gens`.
    pub fn with_table(mut gens: Vec<GeneratorSpec>, table: TableAlgebra) -> Result<Self> {
        let mut slot = Vec::with_capacity(gens.len());
        let (mut free, mut torsion, mut poly, mut ext) = (vec![], vec![], vec![], vec![]);
        for (id, g) in gens.iter_mut().enumerate() {
            g.id = id;
            g.validate()?;
            if g.kind == GeneratorKind::PolyEven && g.side == Side::Manifold {
                return Err(Error::InvalidModel(format!(
                    "generator `{}`: the manifold factor is finite-dimensional, use a table",
                    g.name
                )));
            }
            let list = match g.kind {
                GeneratorKind::GroupFree => &mut free,
                GeneratorKind::GroupTorsion => &mut torsion,
                GeneratorKind::PolyEven => &mut poly,
                GeneratorKind::ExtOdd => &mut ext,
            };
            slot.push(list.len());
            list.push(id);
        }
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Signature(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
            if table.names().iter().skip(1).any(|n| *n == g.name) {
                return Err(Error::Signature(format!(
                    "`{}` is both a generator and a table basis name",
                    g.name
                )));
            }
        }
        if ext.len() > u16::MAX as usize {
            return Err(Error::InvalidModel("too many exterior generators".into()));
        }
        Ok(Signature {
            gens,
            slot,
            free,
            torsion,
            poly,
            ext,
            table,
        })
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn generator(&self, id: usize) -> Result<&GeneratorSpec> {
        self.gens
            .get(id)
            .ok_or_else(|| Error::Signature(format!("unknown generator id {id}")))
    }

    pub fn generator_by_name(&self, name: &str) -> Option<&GeneratorSpec> {
        self.gens.iter().find(|g| g.name == name)
    }

    /// Position of generator `id` inside the vector of its kind.
    pub fn slot(&self, id: usize) -> usize {
        self.slot[id]
    }

    pub fn free_ids(&self) -> &[usize] {
        &self.free
    }

    pub fn torsion_ids(&self) -> &[usize] {
        &self.torsion
    }

    pub fn poly_ids(&self) -> &[usize] {
        &self.poly
    }

    pub fn ext_ids(&self) -> &[usize] {
        &self.ext
    }

    pub fn table(&self) -> &TableAlgebra {
        &self.table
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            free: vec![0; self.free.len()],
            torsion: vec![0; self.torsion.len()],
            poly: vec![0; self.poly.len()],
            ext: Vec::new(),
            table: 0,
        }
    }

    pub fn unit(&self) -> Element {
        Element::basis(self.one())
    }

    /// `g^exponent` as an element; zero for odd squares.
    pub fn gen_power(&self, id: usize, exponent: i64) -> Result<Element> {
        let g = self.generator(id)?;
        let s = self.slot[id];
        let mut m = self.one();
        match g.kind {
            GeneratorKind::GroupFree => m.free[s] = exponent,
            GeneratorKind::GroupTorsion => {
                let n = g.torsion_order.unwrap_or(1) as i64;
                m.torsion[s] = exponent.rem_euclid(n) as u64;
            }
            GeneratorKind::PolyEven => {
                if exponent < 0 {
                    return Err(Error::Domain(format!(
                        "negative exponent on polynomial generator `{}`",
                        g.name
                    )));
                }
                m.poly[s] = u32::try_from(exponent)
                    .map_err(|_| Error::Domain("exponent too large".into()))?;
            }
            GeneratorKind::ExtOdd => match exponent {
                0 => {}
                1 => m.ext.push(s as u16),
                e if e > 1 => return Ok(Element::zero()),
                _ => {
                    return Err(Error::Domain(format!(
                        "negative exponent on exterior generator `{}`",
                        g.name
                    )))
                }
            },
        }
        Ok(Element::basis(m))
    }

    pub fn table_basis(&self, index: usize) -> Result<Monomial> {
        if index >= self.table.dim() {
            return Err(Error::Signature(format!(
                "unknown table basis index {index}"
            )));
        }
        let mut m = self.one();
        m.table = index as u32;
        Ok(m)
    }

    /// Canonical form of `coeff · w₁ w₂ ⋯` (graded commutativity, exterior squares,
    /// torsion reduction).
    pub fn normalize(&self, coeff: Rational, word: &[WordFactor]) -> Result<Element> {
        let mut acc = self.unit().scaled(&coeff);
        for f in word {
            let factor = match *f {
                WordFactor::Gen { id, exponent } => self.gen_power(id, exponent)?,
                WordFactor::Table(i) => Element::basis(self.table_basis(i)?),
            };
            acc = self.multiply(&acc, &factor);
        }
        Ok(acc)
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        let poly: i64 = m
            .poly
            .iter()
            .zip(&self.poly)
            .map(|(&n, &id)| n as i64 * self.gens[id].degree)
            .sum();
        poly + self.ext_degree(m) + self.table.degree(m.table as usize)
    }

    fn ext_degree(&self, m: &Monomial) -> i64 {
        m.ext
            .iter()
            .map(|&s| self.gens[self.ext[s as usize]].degree)
            .sum()
    }

    /// Degree of `e` if all its terms share one, `None` for zero.
    pub fn homogeneous_degree(&self, e: &Element) -> Result<Option<i64>> {
        let mut deg = None;
        for m in e.keys() {
            let d = self.degree(m);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::MixedDegree(format!(
                        "{} has terms in degrees {d0} and {d}",
                        self.format(e)
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn homogeneous_components(&self, e: &Element) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in e {
            out.entry(self.degree(m))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Product of the word parts, `None` when an exterior generator repeats.
    /// Returns the sign and the word (table index taken from `a`).
    fn mul_words(&self, a: &Monomial, b: &Monomial) -> Option<(i64, Monomial)> {
        let mut ext = Vec::with_capacity(a.ext.len() + b.ext.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.ext.len() && j < b.ext.len() {
            match a.ext[i].cmp(&b.ext[j]) {
                std::cmp::Ordering::Less => {
                    ext.push(a.ext[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b.ext[j] moves past the remaining odd factors of a
                    inversions += a.ext.len() - i;
                    ext.push(b.ext[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        ext.extend_from_slice(&a.ext[i..]);
        ext.extend_from_slice(&b.ext[j..]);
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion)
            .map(|((x, y), &id)| (x + y) % self.gens[id].torsion_order.unwrap_or(1))
            .collect();
        let poly = a.poly.iter().zip(&b.poly).map(|(x, y)| x + y).collect();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((
            sign,
            Monomial {
                free,
                torsion,
                poly,
                ext,
                table: a.table,
            },
        ))
    }

    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        let Some((mut sign, word)) = self.mul_words(a, b) else {
            return Element::zero();
        };
        // the table part of a moves past the odd word part of b
        let ta = self.table.degree(a.table as usize);
        if ta != 0 {
            sign *= sign_pow(ta * self.ext_degree(b));
        }
        if a.table == 0 || b.table == 0 {
            let mut m = word;
            m.table = a.table.max(b.table);
            return Element::term(m, rat(sign));
        }
        let mut out = Element::zero();
        for (&k, c) in self.table.products_row(a.table as usize, b.table as usize) {
            let mut m = word.clone();
            m.table = k as u32;
            out.add_term(m, c * rat(sign));
        }
        out
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let p = self.multiply_monomials(ma, mb);
                if !p.is_zero() {
                    out.add_scaled(&p, &(ca * cb));
                }
            }
        }
        out
    }

    /// Monomials built only from loop-side generators.
    pub fn is_loop_monomial(&self, m: &Monomial) -> bool {
        m.table == 0
            && m.ext
                .iter()
                .all(|&s| self.gens[self.ext[s as usize]].side == Side::Loop)
    }

    /// True when every loop-side exterior generator precedes every manifold-side one,
    /// so that a canonical monomial is the unsigned product of its loop and manifold parts.
    pub fn has_split_layout(&self) -> bool {
        let mut seen_manifold = false;
        for &id in &self.ext {
            match self.gens[id].side {
                Side::Manifold => seen_manifold = true,
                Side::Loop if seen_manifold => return false,
                Side::Loop => {}
            }
        }
        true
    }

    /// `m = loop · manifold`, exact when [`Self::has_split_layout`] holds.
    pub fn split_loop_manifold(&self, m: &Monomial) -> (Monomial, Monomial) {
        let mut lp = m.clone();
        let mut mf = self.one();
        lp.table = 0;
        lp.ext.clear();
        for &s in &m.ext {
            if self.gens[self.ext[s as usize]].side == Side::Loop {
                lp.ext.push(s);
            } else {
                mf.ext.push(s);
            }
        }
        mf.table = m.table;
        (lp, mf)
    }

    /// All monomials inside the window, in canonical order.
    pub fn basis_window(&self, window: &Window) -> Vec<Monomial> {
        self.enumerate(window, true, true)
    }

    /// Loop-side monomials inside the window.
    pub fn loop_basis_window(&self, window: &Window) -> Vec<Monomial> {
        self.enumerate(window, true, false)
    }

    /// The finite basis of the manifold factor (manifold-side exterior words times table basis).
    pub fn manifold_basis(&self) -> Vec<Monomial> {
        let window = Window {
            degree: i64::MAX / 4,
            group_exponent: 0,
        };
        self.enumerate(&window, false, true)
    }

    fn enumerate(&self, window: &Window, loop_side: bool, manifold_side: bool) -> Vec<Monomial> {
        let e = window.group_exponent.max(0);
        // odd/table part: subsets of admissible exterior slots, times table basis
        let ext_slots: Vec<u16> = (0..self.ext.len())
            .filter(|&s| match self.gens[self.ext[s]].side {
                Side::Loop => loop_side,
                Side::Manifold => manifold_side,
            })
            .map(|s| s as u16)
            .collect();
        let mut odd_parts: Vec<(Vec<u16>, u32, i64)> = Vec::new();
        let tables: Vec<usize> = if manifold_side {
            (0..self.table.dim()).collect()
        } else {
            vec![0]
        };
        for mask in 0u64..(1u64 << ext_slots.len()) {
            let ext: Vec<u16> = ext_slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let d: i64 = ext
                .iter()
                .map(|&s| self.gens[self.ext[s as usize]].degree)
                .sum();
            for &t in &tables {
                odd_parts.push((ext.clone(), t as u32, d + self.table.degree(t)));
            }
        }
        let min_odd = odd_parts.iter().map(|p| p.2).min().unwrap_or(0);
        let poly_budget = window.degree.saturating_sub(min_odd);

        let mut polys: Vec<(Vec<u32>, i64)> = vec![(vec![], 0)];
        if loop_side {
            for &id in &self.poly {
                let d = self.gens[id].degree;
                let mut next = Vec::new();
                for (p, deg) in &polys {
                    let max = if d == 0 {
                        e
                    } else {
                        (poly_budget - deg).max(-1) / d
                    };
                    for n in 0..=max {
                        let mut q = p.clone();
                        q.push(n as u32);
                        next.push((q, deg + n * d));
                    }
                }
                polys = next;
            }
        } else {
            polys = vec![(vec![0; self.poly.len()], 0)];
        }

        let mut frees: Vec<Vec<i64>> = vec![vec![]];
        let mut tors: Vec<Vec<u64>> = vec![vec![]];
        if loop_side {
            for _ in &self.free {
                frees = frees
                    .into_iter()
                    .flat_map(|f| {
                        (-e..=e).map(move |n| {
                            let mut g = f.clone();
                            g.push(n);
                            g
                        })
                    })
                    .collect();
            }
            for &id in &self.torsion {
                let order = self.gens[id].torsion_order.unwrap_or(1);
                tors = tors
                    .into_iter()
                    .flat_map(|t| {
                        (0..order).map(move |k| {
                            let mut u = t.clone();
                            u.push(k);
                            u
                        })
                    })
                    .collect();
            }
        } else {
            frees = vec![vec![0; self.free.len()]];
            tors = vec![vec![0; self.torsion.len()]];
        }

        let mut out = Vec::new();
        for f in &frees {
            for t in &tors {
                for (p, pd) in &polys {
                    for (x, tab, xd) in &odd_parts {
                        if (pd + xd).abs() <= window.degree {
                            out.push(Monomial {
                                free: f.clone(),
                                torsion: t.clone(),
                                poly: p.clone(),
                                ext: x.clone(),
                                table: *tab,
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        let pow = |name: &str, n: i64| {
            if n == 1 {
                name.to_string()
            } else {
                format!("{name}^{n}")
            }
        };
        for (s, &n) in m.free.iter().enumerate() {
            if n != 0 {
                parts.push(pow(&self.gens[self.free[s]].name, n));
            }
        }
        for (s, &n) in m.torsion.iter().enumerate() {
            if n != 0 {
                parts.push(pow(&self.gens[self.torsion[s]].name, n as i64));
            }
        }
        for (s, &n) in m.poly.iter().enumerate() {
            if n != 0 {
                parts.push(pow(&self.gens[self.poly[s]].name, n as i64));
            }
        }
        for &s in &m.ext {
            parts.push(self.gens[self.ext[s as usize]].name.clone());
        }
        if m.table != 0 {
            parts.push(self.table.name(m.table as usize).to_string());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, e: &Element) -> String {
        format_linear(e, |m| self.format_monomial(m))
    }

    pub fn display<'a>(&'a self, e: &'a Element) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Signature, &'a Element);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, e)
    }

    pub(crate) fn table_dim(&self) -> usize {
        self.table.dim()
    }

    /// Signature of the tensor product: generators of `self` then of `other`.
    pub fn tensor(&self, other: &Signature) -> Result<Signature> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Signature::with_table(gens, self.table.tensor(&other.table))
    }

    /// Image of a monomial of the left factor in `self ⊗ other` (= `flat`).
    pub(crate) fn embed_left(&self, other: &Signature, m: &Monomial) -> Monomial {
        let mut out = Monomial {
            free: m.free.clone(),
            torsion: m.torsion.clone(),
            poly: m.poly.clone(),
            ext: m.ext.clone(),
            table: m.table * other.table_dim() as u32,
        };
        out.free.extend(std::iter::repeat_n(0, other.free.len()));
        out.torsion
            .extend(std::iter::repeat_n(0, other.torsion.len()));
        out.poly.extend(std::iter::repeat_n(0, other.poly.len()));
        out
    }

    pub(crate) fn embed_right(&self, _other: &Signature, m: &Monomial) -> Monomial {
        let shift = self.ext.len() as u16;
        let mut out = Monomial {
            free: vec![0; self.free.len()],
            torsion: vec![0; self.torsion.len()],
            poly: vec![0; self.poly.len()],
            ext: m.ext.iter().map(|&s| s + shift).collect(),
            table: m.table,
        };
        out.free.extend_from_slice(&m.free);
        out.torsion.extend_from_slice(&m.torsion);
        out.poly.extend_from_slice(&m.poly);
        out
    }

    /// Unsigned concatenation of a left and a right monomial in `self ⊗ other`.
    pub(crate) fn join_tensor(&self, other: &Signature, a: &Monomial, b: &Monomial) -> Monomial {
        let l = self.embed_left(other, a);
        let r = self.embed_right(other, b);
        let mut ext = l.ext;
        ext.extend(r.ext);
        Monomial {
            free: l.free.iter().zip(&r.free).map(|(x, y)| x + y).collect(),
            torsion: l
                .torsion
                .iter()
                .zip(&r.torsion)
                .map(|(x, y)| x + y)
                .collect(),
            poly: l.poly.iter().zip(&r.poly).map(|(x, y)| x + y).collect(),
            ext,
            table: l.table + r.table,
        }
    }

    /// Inverse of the embeddings on a flat monomial: `(left, right)` parts.
    pub(crate) fn split_tensor(&self, other: &Signature, m: &Monomial) -> (Monomial, Monomial) {
        let (nf, nt, np, ne) = (
            self.free.len(),
            self.torsion.len(),
            self.poly.len(),
            self.ext.len(),
        );
        let dim = other.table_dim() as u32;
        let left = Monomial {
            free: m.free[..nf].to_vec(),
            torsion: m.torsion[..nt].to_vec(),
            poly: m.poly[..np].to_vec(),
            ext: m
                .ext
                .iter()
                .copied()
                .filter(|&s| (s as usize) < ne)
                .collect(),
            table: m.table / dim,
        };
        let right = Monomial {
            free: m.free[nf..].to_vec(),
            torsion: m.torsion[nt..].to_vec(),
            poly: m.poly[np..].to_vec(),
            ext: m
                .ext
                .iter()
                .copied()
                .filter(|&s| (s as usize) >= ne)
                .map(|s| s - ne as u16)
                .collect(),
            table: m.table % dim,
        };
        (left, right)
    }
}

impl Signature {
    /// The word of `m` read in canonical order, with generator names.
    pub fn word_names(&self, m: &Monomial) -> Vec<(String, i64)> {
        let mut out = Vec::new();
        for (s, &n) in m.free.iter().enumerate() {
            if n != 0 {
                out.push((self.gens[self.free[s]].name.clone(), n));
            }
        }
        for (s, &n) in m.torsion.iter().enumerate() {
            if n != 0 {
                out.push((self.gens[self.torsion[s]].name.clone(), n as i64));
            }
        }
        for (s, &n) in m.poly.iter().enumerate() {
            if n != 0 {
                out.push((self.gens[self.poly[s]].name.clone(), n as i64));
            }
        }
        for &s in &m.ext {
            out.push((self.gens[self.ext[s as usize]].name.clone(), 1));
        }
        if m.table != 0 {
            out.push((self.table.name(m.table as usize).to_string(), 1));
        }
        out
    }

    /// Re-reads `m` in `target` by matching generator and table basis names; the
    /// canonical word of `m` is multiplied out in `target`, so reordering signs appear.
    pub fn transport(&self, m: &Monomial, target: &Signature) -> Result<Element> {
        let mut word = Vec::new();
        for (name, n) in self.word_names(m) {
            if let Some(g) = target.generator_by_name(&name) {
                word.push(WordFactor::Gen {
                    id: g.id,
                    exponent: n,
                });
            } else if let Some(i) = target.table.index_of(&name) {
                word.push(WordFactor::Table(i));
            } else {
                return Err(Error::Signature(format!(
                    "`{name}` has no counterpart in the target"
                )));
            }
        }
        target.normalize(rat(1), &word)
    }

    pub fn transport_element(&self, e: &Element, target: &Signature) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in e {
            out.add_scaled(&self.transport(m, target)?, c);
        }
        Ok(out)
    }
}

/// Coefficient of the unit monomial.
pub fn constant_term(sig: &Signature, e: &Element) -> Rational {
    let one = sig.one();
    e.iter()
        .find(|(m, _)| **m == one)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generator::Side;

    // x free, y torsion of order 2, s poly in degree 2, d1, d2 exterior duals
    fn sig() -> Signature {
        Signature::new(vec![
            GeneratorSpec::free("x1"),
            GeneratorSpec::torsion("y", 2),
            GeneratorSpec::poly("sx2", 2),
            GeneratorSpec::ext("d1", -1, Side::Manifold),
            GeneratorSpec::ext("d2", -3, Side::Manifold),
            GeneratorSpec::ext("d3", -3, Side::Manifold),
        ])
        .unwrap()
    }

    fn g(id: usize, exponent: i64) -> WordFactor {
        WordFactor::Gen { id, exponent }
    }

    #[test]
    fn koszul_swap_of_two_odd_generators() {
        let s = sig();
        let swapped = s.normalize(rat(1), &[g(4, 1), g(3, 1)]).unwrap();
        let ordered = s.normalize(rat(1), &[g(3, 1), g(4, 1)]).unwrap();
        assert_eq!(swapped, ordered.neg());
        assert_eq!(s.format(&swapped), "-d1*d2");
    }

    #[test]
    fn exterior_square_vanishes() {
        let s = sig();
        assert!(s.normalize(rat(1), &[g(3, 1), g(3, 1)]).unwrap().is_zero());
        assert!(s.gen_power(3, 2).unwrap().is_zero());
    }

    #[test]
    fn torsion_group_law() {
        let s = sig();
        let yy = s.normalize(rat(1), &[g(1, 1), g(1, 1)]).unwrap();
        assert_eq!(yy, s.unit());
        let y3 = s.gen_power(1, -3).unwrap();
        assert_eq!(y3, s.gen_power(1, 1).unwrap());
    }

    #[test]
    fn group_ring_inverse() {
        let s = sig();
        let p = s.multiply(&s.gen_power(0, 2).unwrap(), &s.gen_power(0, -2).unwrap());
        assert_eq!(p, s.unit());
    }

    #[test]
    fn even_generator_is_polynomial() {
        let s = sig();
        let sx = s.gen_power(2, 1).unwrap();
        assert_eq!(s.multiply(&sx, &sx), s.gen_power(2, 2).unwrap());
    }

    #[test]
    fn odd_pair_commutes_with_odd_generator() {
        let s = sig();
        let d12 = s.normalize(rat(1), &[g(3, 1), g(4, 1)]).unwrap();
        let d3 = s.gen_power(5, 1).unwrap();
        assert_eq!(s.multiply(&d12, &d3), s.multiply(&d3, &d12));
        assert!(!s.multiply(&d12, &d3).is_zero());
    }

    #[test]
    fn degrees() {
        let s = sig();
        let m = |w: &[WordFactor]| {
            s.normalize(rat(1), w)
                .unwrap()
                .keys()
                .next()
                .unwrap()
                .clone()
        };
        assert_eq!(s.degree(&s.one()), 0);
        assert_eq!(s.degree(&m(&[g(2, 1)])), 2);
        assert_eq!(s.degree(&m(&[g(0, 5), g(3, 1)])), -1);
        assert_eq!(s.degree(&m(&[g(2, 3), g(3, 1), g(4, 1)])), 2);
    }

    #[test]
    fn unknown_generator_is_a_signature_error() {
        let s = sig();
        assert!(matches!(
            s.normalize(rat(1), &[g(42, 1)]),
            Err(Error::Signature(_))
        ));
    }

    #[test]
    fn mixed_degree_detection() {
        let s = sig();
        let e = s.unit().plus(&s.gen_power(2, 1).unwrap());
        assert!(matches!(
            s.homogeneous_degree(&e),
            Err(Error::MixedDegree(_))
        ));
        assert_eq!(s.homogeneous_components(&e).len(), 2);
    }

    #[test]
    fn window_enumeration_respects_bounds() {
        let s = sig();
        let w = Window::new(4).with_group_exponent(1);
        let basis = s.basis_window(&w);
        assert!(basis.iter().all(|m| s.degree(m).abs() <= 4));
        assert!(basis.iter().all(|m| m.free[0].abs() <= 1));
        // brute force over a generous box
        let mut count = 0;
        for n in -1..=1 {
            for y in 0..2 {
                for p in 0..=10 {
                    for mask in 0..8u32 {
                        let dm: i64 = [(1, -1), (2, -3), (4, -3)]
                            .iter()
                            .filter(|(b, _)| mask & b != 0)
                            .map(|(_, d)| d)
                            .sum();
                        let _ = (n, y);
                        if (2 * p + dm).abs() <= 4 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(basis.len(), count);
    }

    #[test]
    fn duplicate_generator_names_are_rejected() {
        let err = Signature::new(vec![GeneratorSpec::free("x"), GeneratorSpec::free("x")]);
        assert!(matches!(err, Err(Error::Signature(_))));
    }

    #[test]
    fn invalid_generator_data_is_rejected() {
        assert!(Signature::new(vec![GeneratorSpec::poly("s", 3)]).is_err());
        assert!(Signature::new(vec![GeneratorSpec::ext("d", 2, Side::Loop)]).is_err());
        assert!(Signature::new(vec![GeneratorSpec::torsion("y", 1)]).is_err());
    }

    #[test]
    fn table_part_carries_koszul_sign_past_odd_words() {
        let table =
            TableAlgebra::new(vec!["M".into(), "a".into()], vec![0, -1], BTreeMap::new()).unwrap();
        let s = Signature::with_table(vec![GeneratorSpec::ext("e", 1, Side::Loop)], table).unwrap();
        let a = Element::basis(s.table_basis(1).unwrap());
        let e = s.gen_power(0, 1).unwrap();
        assert_eq!(s.multiply(&a, &e), s.multiply(&e, &a).neg());
    }
}
