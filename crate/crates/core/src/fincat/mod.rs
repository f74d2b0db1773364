//! Finite categories given by explicit tables.
//!
//! Everything here is decidable by brute force: hom-sets are finite lists,
//! composition is a lookup, and universal properties are checked by
//! exhaustive search over hom-sets.

mod perm;
mod permutative;
pub mod samples;

use std::borrow::Cow;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Report;

pub use perm::Permutation;
pub use permutative::{check_perm_coherence, validate_permutative, FinPermCat, Permutative};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// Read access to a finite category.
///
/// Objects are always `ObjId(0..object_count())`. Morphism ids need not be
/// contiguous (subcategories reuse the ids of their ambient category), so
/// enumeration goes through [`Category::hom`].
pub trait Category {
    fn object_count(&self) -> usize;
    fn src(&self, m: MorId) -> ObjId;
    fn tgt(&self, m: MorId) -> ObjId;
    fn identity(&self, a: ObjId) -> MorId;
    /// `outer ∘ inner`, or `None` when undefined.
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId>;
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]>;
    fn object_name(&self, a: ObjId) -> String;
    fn morphism_name(&self, m: MorId) -> String;

    fn objects(&self) -> Vec<ObjId> {
        (0..self.object_count()).map(ObjId).collect()
    }

    fn morphisms(&self) -> Vec<MorId> {
        let objs = self.objects();
        let mut out = Vec::new();
        for &a in &objs {
            for &b in &objs {
                out.extend_from_slice(&self.hom(a, b));
            }
        }
        out
    }

    fn is_identity(&self, m: MorId) -> bool {
        let a = self.src(m);
        a == self.tgt(m) && self.identity(a) == m
    }
}

impl<C: Category + ?Sized> Category for &C {
    fn object_count(&self) -> usize {
        (**self).object_count()
    }
    fn src(&self, m: MorId) -> ObjId {
        (**self).src(m)
    }
    fn tgt(&self, m: MorId) -> ObjId {
        (**self).tgt(m)
    }
    fn identity(&self, a: ObjId) -> MorId {
        (**self).identity(a)
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        (**self).compose(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        (**self).hom(a, b)
    }
    fn object_name(&self, a: ObjId) -> String {
        (**self).object_name(a)
    }
    fn morphism_name(&self, m: MorId) -> String {
        (**self).morphism_name(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorData {
    name: String,
    src: ObjId,
    tgt: ObjId,
}

/// A finite category with a dense composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identity: Vec<MorId>,
    /// `compose[outer * n + inner]`
    compose: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
}

impl FinCat {
    /// Builds a category from raw tables. Only index ranges are checked
    /// here; the category axioms are checked by [`validate_category`].
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        identity: Vec<MorId>,
        compose: impl IntoIterator<Item = ((MorId, MorId), MorId)>,
    ) -> Result<Self> {
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        let mut mors = Vec::with_capacity(n_mor);
        for (name, s, t) in morphisms {
            for o in [s, t] {
                if o.0 >= n_obj {
                    return Err(Error::Index { table: "morphisms", index: o.0 });
                }
            }
            mors.push(MorData { name, src: s, tgt: t });
        }
        if identity.len() != n_obj {
            return Err(Error::Index { table: "identity", index: identity.len() });
        }
        if let Some(bad) = identity.iter().find(|m| m.0 >= n_mor) {
            return Err(Error::Index { table: "identity", index: bad.0 });
        }
        let mut table = vec![None; n_mor * n_mor];
        for ((g, f), h) in compose {
            for m in [g, f, h] {
                if m.0 >= n_mor {
                    return Err(Error::Index { table: "compose", index: m.0 });
                }
            }
            table[g.0 * n_mor + f.0] = Some(h);
        }
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for (i, m) in mors.iter().enumerate() {
            hom[m.src.0 * n_obj + m.tgt.0].push(MorId(i));
        }
        Ok(Self { objects, morphisms: mors, identity, compose: table, hom })
    }

    pub fn builder() -> FinCatBuilder {
        FinCatBuilder::default()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    /// Raw table entry, without any composability check.
    pub fn composite_entry(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        self.compose[outer.0 * self.morphisms.len() + inner.0]
    }

    /// Overwrites one composition entry. Used to build mutants.
    pub fn set_composite(&mut self, outer: MorId, inner: MorId, result: Option<MorId>) {
        let n = self.morphisms.len();
        self.compose[outer.0 * n + inner.0] = result;
    }

    pub fn all_morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    /// All entries present in the composition table, in index order.
    pub fn composition_entries(&self) -> Vec<((MorId, MorId), MorId)> {
        let n = self.morphisms.len();
        self.compose
            .iter()
            .enumerate()
            .filter_map(|(k, h)| h.map(|h| ((MorId(k / n), MorId(k % n)), h)))
            .collect()
    }
}

impl Category for FinCat {
    fn object_count(&self) -> usize {
        self.objects.len()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].src
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].tgt
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.identity[a.0]
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        if self.tgt(inner) != self.src(outer) {
            return None;
        }
        self.composite_entry(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        Cow::Borrowed(&self.hom[a.0 * self.objects.len() + b.0])
    }
    fn object_name(&self, a: ObjId) -> String {
        self.objects[a.0].clone()
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.morphisms[m.0].name.clone()
    }
    fn morphisms(&self) -> Vec<MorId> {
        self.all_morphisms().collect()
    }
}

/// Incremental construction with implicit identities.
///
/// Every object gets an identity named `id_<object>`; composites with an
/// identity are filled in at [`FinCatBuilder::build`] unless set explicitly.
#[derive(Debug, Default, Clone)]
pub struct FinCatBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, ObjId, ObjId)>,
    identity: Vec<MorId>,
    compose: Vec<((MorId, MorId), MorId)>,
}

impl FinCatBuilder {
    pub fn object(&mut self, name: &str) -> ObjId {
        let id = ObjId(self.objects.len());
        self.objects.push(name.to_string());
        self.identity.push(MorId(self.morphisms.len()));
        self.morphisms.push((format!("id_{name}"), id, id));
        id
    }

    pub fn morphism(&mut self, name: &str, src: ObjId, tgt: ObjId) -> MorId {
        let id = MorId(self.morphisms.len());
        self.morphisms.push((name.to_string(), src, tgt));
        id
    }

    pub fn compose(&mut self, outer: MorId, inner: MorId, result: MorId) -> &mut Self {
        self.compose.push(((outer, inner), result));
        self
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a.0]
    }

    pub fn build(&self) -> Result<FinCat> {
        let mut entries: Vec<((MorId, MorId), MorId)> = Vec::new();
        let explicit: std::collections::HashSet<(MorId, MorId)> =
            self.compose.iter().map(|(k, _)| *k).collect();
        for (i, (_, s, t)) in self.morphisms.iter().enumerate() {
            let m = MorId(i);
            let id_t = *self.identity.get(t.0).ok_or(Error::Index { table: "morphisms", index: t.0 })?;
            let id_s = *self.identity.get(s.0).ok_or(Error::Index { table: "morphisms", index: s.0 })?;
            if !explicit.contains(&(id_t, m)) {
                entries.push(((id_t, m), m));
            }
            if !explicit.contains(&(m, id_s)) {
                entries.push(((m, id_s), m));
            }
        }
        entries.extend(self.compose.iter().copied());
        FinCat::from_tables(self.objects.clone(), self.morphisms.clone(), self.identity.clone(), entries)
    }
}

/// Table lookup of `outer ∘ inner` with an error for non-composable pairs.
pub fn compose(cat: &FinCat, outer: MorId, inner: MorId) -> Result<MorId> {
    if cat.tgt(inner) != cat.src(outer) {
        return Err(Error::NotComposable {
            outer: cat.morphism_name(outer),
            inner: cat.morphism_name(inner),
        });
    }
    cat.composite_entry(outer, inner).ok_or_else(|| Error::MissingComposite {
        outer: cat.morphism_name(outer),
        inner: cat.morphism_name(inner),
    })
}

/// Checks typing, totality, identity laws and associativity of a finite
/// category. Every violated instance is reported with its witness.
pub fn validate_category(cat: &FinCat) -> Report {
    let mut r = Report::new();
    for sec in ["identity_typing", "composition_typing", "composition_total", "identity_law", "associativity"] {
        r.touch(sec);
    }
    let name = |m: MorId| cat.morphism_name(m);
    for a in cat.objects() {
        let id = cat.identity(a);
        r.check("identity_typing", cat.src(id) == a && cat.tgt(id) == a, "identity typing", || {
            (cat.object_name(a), format!("{} : {} → {}", name(id), cat.object_name(cat.src(id)), cat.object_name(cat.tgt(id))))
        });
    }
    let mors: Vec<MorId> = cat.all_morphisms().collect();
    for &g in &mors {
        for &f in &mors {
            let entry = cat.composite_entry(g, f);
            if cat.tgt(f) != cat.src(g) {
                r.check("composition_typing", entry.is_none(), "entry for non-composable pair", || {
                    (format!("{} ∘ {}", name(g), name(f)), format!("table gives {}", name(entry.unwrap())))
                });
                continue;
            }
            match entry {
                None => r.fail(
                    "composition_total",
                    "missing composite",
                    format!("{} ∘ {}", name(g), name(f)),
                    "no table entry".into(),
                ),
                Some(h) => {
                    r.pass("composition_total");
                    let ok = cat.src(h) == cat.src(f) && cat.tgt(h) == cat.tgt(g);
                    r.check("composition_typing", ok, "composite has wrong type", || {
                        (format!("{} ∘ {}", name(g), name(f)), format!("{} : {} → {}", name(h), cat.object_name(cat.src(h)), cat.object_name(cat.tgt(h))))
                    });
                }
            }
        }
    }
    for &f in &mors {
        let left = cat.composite_entry(cat.identity(cat.tgt(f)), f);
        r.check("identity_law", left == Some(f), "identity law violated", || {
            (format!("id ∘ {}", name(f)), format!("gives {:?}", left.map(name)))
        });
        let right = cat.composite_entry(f, cat.identity(cat.src(f)));
        r.check("identity_law", right == Some(f), "identity law violated", || {
            (format!("{} ∘ id", name(f)), format!("gives {:?}", right.map(name)))
        });
    }
    // Associativity over all composable triples h ∘ g ∘ f.
    for &f in &mors {
        for c in cat.objects() {
            for &g in cat.hom(cat.tgt(f), c).iter() {
                for d in cat.objects() {
                    for &h in cat.hom(c, d).iter() {
                        let left = cat.compose(h, g).and_then(|hg| cat.compose(hg, f));
                        let right = cat.compose(g, f).and_then(|gf| cat.compose(h, gf));
                        if left.is_none() && right.is_none() {
                            r.skip("associativity");
                            continue;
                        }
                        r.check("associativity", left == right, "associativity violated", || {
                            (
                                format!("({} ∘ {}) ∘ {} vs {} ∘ ({} ∘ {})", name(h), name(g), name(f), name(h), name(g), name(f)),
                                format!("{:?} ≠ {:?}", left.map(name), right.map(name)),
                            )
                        });
                    }
                }
            }
        }
    }
    r
}

/// Two-sided inverse of `f`, found by search over `Hom(tgt f, src f)`.
pub fn inverse<C: Category + ?Sized>(cat: &C, f: MorId) -> Option<MorId> {
    let (a, b) = (cat.src(f), cat.tgt(f));
    let (id_a, id_b) = (cat.identity(a), cat.identity(b));
    cat.hom(b, a)
        .iter()
        .copied()
        .find(|&g| cat.compose(g, f) == Some(id_a) && cat.compose(f, g) == Some(id_b))
}

pub fn is_iso<C: Category + ?Sized>(cat: &C, f: MorId) -> bool {
    inverse(cat, f).is_some()
}

/// A cocone to be factored through an apex: find `m: apex → target` with
/// `m ∘ leg = value` for every `(leg, value)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub apex: ObjId,
    pub target: ObjId,
    pub legs: Vec<(MorId, MorId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mediating {
    Unique(MorId),
    NotFound,
    NotUnique(MorId, MorId),
}

impl Mediating {
    pub fn unique(self) -> Option<MorId> {
        match self {
            Mediating::Unique(m) => Some(m),
            _ => None,
        }
    }
}

/// Exhaustive search for the morphism out of `cocone.apex` through which all
/// legs factor.
pub fn mediating_morphism<C: Category + ?Sized>(cat: &C, cocone: &Cocone) -> Mediating {
    let mut found: Option<MorId> = None;
    for &m in cat.hom(cocone.apex, cocone.target).iter() {
        let fits = cocone.legs.iter().all(|&(leg, value)| cat.compose(m, leg) == Some(value));
        if fits {
            if let Some(prev) = found {
                return Mediating::NotUnique(prev, m);
            }
            found = Some(m);
        }
    }
    found.map_or(Mediating::NotFound, Mediating::Unique)
}

/// Object and morphism maps between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl FinFunctor {
    /// Checks that sources, targets, identities and composites are
    /// preserved.
    pub fn validate(&self, domain: &FinCat, codomain: &FinCat) -> Report {
        let mut r = Report::new();
        r.touch("functor");
        if self.objects.len() != domain.object_count() || self.morphisms.len() != domain.morphism_count() {
            r.fail("functor", "arity mismatch", "functor tables".into(), "table lengths differ from domain".into());
            return r;
        }
        for f in domain.all_morphisms() {
            let img = self.morphisms[f.0];
            let ok = codomain.src(img) == self.objects[domain.src(f).0] && codomain.tgt(img) == self.objects[domain.tgt(f).0];
            r.check("functor", ok, "source/target not preserved", || (domain.morphism_name(f), codomain.morphism_name(img)));
        }
        for a in domain.objects() {
            let ok = self.morphisms[domain.identity(a).0] == codomain.identity(self.objects[a.0]);
            r.check("functor", ok, "identity not preserved", || (domain.object_name(a), String::new()));
        }
        for ((g, f), h) in domain.composition_entries() {
            let img = codomain.compose(self.morphisms[g.0], self.morphisms[f.0]);
            r.check("functor", img == Some(self.morphisms[h.0]), "composite not preserved", || {
                (format!("{} ∘ {}", domain.morphism_name(g), domain.morphism_name(f)), format!("{:?}", img))
            });
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn x1_base() -> (FinCat, MorId) {
        let mut b = FinCat::builder();
        let _e = b.object("e");
        let x = b.object("x");
        let t = b.morphism("t", x, x);
        b.compose(t, t, t);
        (b.build().unwrap(), t)
    }

    #[test]
    fn one_object_category_is_valid() {
        let mut b = FinCat::builder();
        b.object("e");
        let cat = b.build().unwrap();
        assert!(validate_category(&cat).is_clean());
    }

    #[test]
    fn x1_is_valid() {
        let (cat, _) = x1_base();
        let r = validate_category(&cat);
        assert!(r.is_clean(), "{:?}", r.findings);
        assert!(r.section("associativity").passed > 0);
    }

    #[test]
    fn t_squared_identity_is_still_a_category() {
        // ℤ/2 acting on x: a group, hence a valid category.
        let (mut cat, t) = x1_base();
        let id_x = cat.identity(ObjId(1));
        cat.set_composite(t, t, Some(id_x));
        assert!(validate_category(&cat).is_clean());
    }

    #[test]
    fn broken_identity_law_is_reported() {
        let (mut cat, t) = x1_base();
        let id_x = cat.identity(ObjId(1));
        cat.set_composite(id_x, t, Some(id_x));
        let r = validate_category(&cat);
        assert!(r.has_kind("identity law violated"));
    }

    #[test]
    fn missing_and_mistyped_entries_are_reported() {
        let (mut cat, t) = x1_base();
        cat.set_composite(t, t, None);
        assert!(validate_category(&cat).has_kind("missing composite"));
        let (mut cat, t) = x1_base();
        let id_e = cat.identity(ObjId(0));
        cat.set_composite(t, id_e, Some(t));
        assert!(validate_category(&cat).has_kind("entry for non-composable pair"));
    }

    #[test]
    fn compose_lookup() {
        let (cat, t) = x1_base();
        let id_x = cat.identity(ObjId(1));
        let id_e = cat.identity(ObjId(0));
        assert_eq!(compose(&cat, id_x, t), Ok(t));
        assert_eq!(compose(&cat, t, t), Ok(t));
        assert!(matches!(compose(&cat, t, id_e), Err(Error::NotComposable { .. })));
    }

    #[test]
    fn iso_search() {
        let (cat, t) = x1_base();
        assert!(is_iso(&cat, cat.identity(ObjId(1))));
        assert!(!is_iso(&cat, t));
    }

    #[test]
    fn out_of_range_tables_are_rejected() {
        let err = FinCat::from_tables(vec!["a".into()], vec![("id".into(), ObjId(0), ObjId(3))], vec![MorId(0)], []);
        assert!(matches!(err, Err(Error::Index { .. })));
    }

    #[test]
    fn mediating_search_distinguishes_outcomes() {
        // Two parallel arrows u, v: a → b, plus identities.
        let mut bld = FinCat::builder();
        let a = bld.object("a");
        let b = bld.object("b");
        let u = bld.morphism("u", a, b);
        let v = bld.morphism("v", a, b);
        let cat = bld.build().unwrap();
        let id_a = cat.identity(a);
        let id_b = cat.identity(b);
        // Fold over zero-like apex: legs id ↦ id.
        let c = Cocone { apex: b, target: b, legs: vec![(id_b, id_b)] };
        assert_eq!(mediating_morphism(&cat, &c), Mediating::Unique(id_b));
        let c = Cocone { apex: a, target: b, legs: vec![] };
        assert_eq!(mediating_morphism(&cat, &c), Mediating::NotUnique(u, v));
        let c = Cocone { apex: b, target: a, legs: vec![] };
        assert_eq!(mediating_morphism(&cat, &c), Mediating::NotFound);
        let c = Cocone { apex: a, target: b, legs: vec![(id_a, v)] };
        assert_eq!(mediating_morphism(&cat, &c), Mediating::Unique(v));
    }

    #[test]
    fn inclusion_functor_validates() {
        let (cat, _) = x1_base();
        let f = FinFunctor { objects: cat.objects(), morphisms: cat.morphisms() };
        assert!(f.validate(&cat, &cat).is_clean());
    }
}
