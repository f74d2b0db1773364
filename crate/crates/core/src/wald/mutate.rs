use std::borrow::Cow;
use std::collections::{HashMap, HashSet};

use super::{PushoutOutcome, WaldView};
use crate::fincat::{Category, MorId, ObjId};

/// A view with selected predicate answers or pushouts replaced. Used to
/// confirm that the checker notices single-entry defects.
#[derive(Debug, Clone)]
pub struct MutatedView<V> {
    inner: V,
    flip_cof: HashSet<MorId>,
    flip_we: HashSet<MorId>,
    pushouts: HashMap<(MorId, MorId), PushoutOutcome>,
}

impl<V: WaldView> MutatedView<V> {
    pub fn new(inner: V) -> Self {
        Self { inner, flip_cof: HashSet::new(), flip_we: HashSet::new(), pushouts: HashMap::new() }
    }

    pub fn flip_cof(mut self, m: MorId) -> Self {
        self.flip_cof.insert(m);
        self
    }

    pub fn flip_we(mut self, m: MorId) -> Self {
        self.flip_we.insert(m);
        self
    }

    pub fn with_pushout(mut self, cof: MorId, m: MorId, out: PushoutOutcome) -> Self {
        self.pushouts.insert((cof, m), out);
        self
    }
}

impl<V: WaldView> Category for MutatedView<V> {
    fn object_count(&self) -> usize {
        self.inner.object_count()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.inner.src(m)
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.inner.tgt(m)
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.inner.identity(a)
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        self.inner.compose(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        self.inner.hom(a, b)
    }
    fn object_name(&self, a: ObjId) -> String {
        self.inner.object_name(a)
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.inner.morphism_name(m)
    }
}

impl<V: WaldView> WaldView for MutatedView<V> {
    fn zero(&self) -> ObjId {
        self.inner.zero()
    }
    fn is_cof(&self, m: MorId) -> bool {
        self.inner.is_cof(m) != self.flip_cof.contains(&m)
    }
    fn is_we(&self, m: MorId) -> bool {
        self.inner.is_we(m) != self.flip_we.contains(&m)
    }
    fn pushout(&self, cof: MorId, m: MorId) -> PushoutOutcome {
        match self.pushouts.get(&(cof, m)) {
            Some(out) => out.clone(),
            None => self.inner.pushout(cof, m),
        }
    }
    fn wedge(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)> {
        self.inner.wedge(a, b)
    }
    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }
    fn is_iso(&self, f: MorId) -> bool {
        self.inner.is_iso(f)
    }
}
