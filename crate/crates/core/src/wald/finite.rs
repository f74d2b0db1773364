use std::borrow::Cow;
use std::cell::RefCell;
use std::collections::HashMap;

use itertools::Itertools;

use super::{is_pushout, PushoutOutcome, WaldView};
use crate::error::{Error, Result};
use crate::fincat::{mediating_morphism, Category, Cocone, FinCat, MorId, ObjId, Permutative};

type Wedge = (ObjId, MorId, MorId);

/// A Waldhausen presentation given by explicit tables. Pushouts other than
/// chosen wedges are found by searching the finite category.
#[derive(Debug, Clone)]
pub struct FiniteWald {
    cat: FinCat,
    zero: ObjId,
    cof: Vec<bool>,
    we: Vec<bool>,
    wedges: HashMap<(ObjId, ObjId), Wedge>,
    complete: bool,
    pushouts: RefCell<HashMap<(MorId, MorId), PushoutOutcome>>,
}

impl FiniteWald {
    /// Identities are added to both classes automatically.
    pub fn new(
        cat: FinCat,
        zero: ObjId,
        cofibrations: impl IntoIterator<Item = MorId>,
        weak_equivalences: impl IntoIterator<Item = MorId>,
        wedges: impl IntoIterator<Item = ((ObjId, ObjId), Wedge)>,
        complete: bool,
    ) -> Result<Self> {
        let n = cat.morphism_count();
        let check = |m: MorId, table| if m.0 < n { Ok(m) } else { Err(Error::Index { table, index: m.0 }) };
        if zero.0 >= cat.object_count() {
            return Err(Error::Index { table: "zero", index: zero.0 });
        }
        let mut cof = vec![false; n];
        let mut we = vec![false; n];
        for a in cat.objects() {
            let id = cat.identity(a);
            cof[id.0] = true;
            we[id.0] = true;
        }
        for m in cofibrations {
            cof[check(m, "cofibrations")?.0] = true;
        }
        for m in weak_equivalences {
            we[check(m, "weak_equivalences")?.0] = true;
        }
        let mut table = HashMap::new();
        for ((a, b), (w, l, r)) in wedges {
            let (l, r) = (check(l, "wedges")?, check(r, "wedges")?);
            if cat.src(l) != a || cat.src(r) != b || cat.tgt(l) != w || cat.tgt(r) != w {
                return Err(Error::Input(format!(
                    "wedge {} ∨ {}: inclusions do not have the stated ends",
                    cat.object_name(a),
                    cat.object_name(b)
                )));
            }
            table.insert((a, b), (w, l, r));
        }
        Ok(Self { cat, zero, cof, we, wedges: table, complete, pushouts: RefCell::default() })
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn cofibrations(&self) -> Vec<MorId> {
        self.cat.all_morphisms().filter(|m| self.cof[m.0]).collect()
    }

    pub fn weak_equivalences(&self) -> Vec<MorId> {
        self.cat.all_morphisms().filter(|m| self.we[m.0]).collect()
    }

    pub fn wedge_entries(&self) -> Vec<((ObjId, ObjId), Wedge)> {
        self.wedges.iter().map(|(&k, &v)| (k, v)).sorted().collect()
    }

    /// `d_1 ∨ … ∨ d_n`, folded from the left starting at the zero object.
    pub fn iterated_wedge(&self, objs: &[ObjId]) -> Option<ObjId> {
        objs.iter().try_fold(self.zero, |acc, &o| self.wedge(acc, o).map(|w| w.0))
    }

    fn search_pushout(&self, cof: MorId, m: MorId) -> PushoutOutcome {
        let (a, b, c) = (self.cat.src(cof), self.cat.tgt(cof), self.cat.tgt(m));
        if a == self.zero {
            if let Some((d, into_c, into_b)) = self.wedge(c, b) {
                return PushoutOutcome::Square { d, into_c, into_b };
            }
        }
        for d in self.cat.objects() {
            for &into_c in self.cat.hom(c, d).iter().filter(|&&f| self.cof[f.0]) {
                let target = self.cat.compose(into_c, m);
                for &into_b in self.cat.hom(b, d).iter() {
                    if self.cat.compose(into_b, cof) == target && is_pushout(self, cof, m, d, into_c, into_b).is_ok() {
                        return PushoutOutcome::Square { d, into_c, into_b };
                    }
                }
            }
        }
        let why = format!("no pushout of {} ↢ {} → {} in the presentation", self.cat.morphism_name(cof), self.cat.object_name(a), self.cat.morphism_name(m));
        if self.complete {
            PushoutOutcome::Failed(why)
        } else {
            PushoutOutcome::OutOfWindow(why)
        }
    }
}

impl Category for FiniteWald {
    fn object_count(&self) -> usize {
        self.cat.object_count()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.cat.src(m)
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.cat.tgt(m)
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.cat.identity(a)
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        self.cat.compose(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        self.cat.hom(a, b)
    }
    fn object_name(&self, a: ObjId) -> String {
        self.cat.object_name(a)
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.cat.morphism_name(m)
    }
    fn morphisms(&self) -> Vec<MorId> {
        self.cat.all_morphisms().collect()
    }
}

impl WaldView for FiniteWald {
    fn zero(&self) -> ObjId {
        self.zero
    }
    fn is_cof(&self, m: MorId) -> bool {
        self.cof[m.0]
    }
    fn is_we(&self, m: MorId) -> bool {
        self.we[m.0]
    }
    fn pushout(&self, cof: MorId, m: MorId) -> PushoutOutcome {
        if let Some(hit) = self.pushouts.borrow().get(&(cof, m)) {
            return hit.clone();
        }
        let out = self.search_pushout(cof, m);
        self.pushouts.borrow_mut().insert((cof, m), out.clone());
        out
    }
    fn wedge(&self, a: ObjId, b: ObjId) -> Option<Wedge> {
        self.wedges.get(&(a, b)).copied()
    }
    fn is_complete(&self) -> bool {
        self.complete
    }
}

/// The subcategory `wD` of weak equivalences with the chosen wedge as a
/// (possibly partial) permutative structure. Tensors of maps and the
/// symmetry are the mediating maps out of the chosen wedges.
#[derive(Debug)]
pub struct WeakSub<'a> {
    d: &'a FiniteWald,
    hom: Vec<Vec<MorId>>,
    tensor: RefCell<HashMap<(MorId, MorId), Option<MorId>>>,
}

impl<'a> WeakSub<'a> {
    pub fn new(d: &'a FiniteWald) -> Self {
        let n = d.object_count();
        let mut hom = vec![Vec::new(); n * n];
        for a in d.objects() {
            for b in d.objects() {
                hom[a.0 * n + b.0] = d.hom(a, b).iter().copied().filter(|&f| d.is_we(f)).collect();
            }
        }
        Self { d, hom, tensor: RefCell::default() }
    }

    pub fn ambient(&self) -> &'a FiniteWald {
        self.d
    }

    /// The mediating map `f ∨ g` in the ambient category, whether or not it
    /// is a weak equivalence.
    pub fn wedge_mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        let d = self.d;
        let (w1, l1, r1) = d.wedge(d.src(f), d.src(g))?;
        let (w2, l2, r2) = d.wedge(d.tgt(f), d.tgt(g))?;
        let legs = vec![(l1, d.compose(l2, f)?), (r1, d.compose(r2, g)?)];
        mediating_morphism(d, &Cocone { apex: w1, target: w2, legs }).unique()
    }
}

impl Category for WeakSub<'_> {
    fn object_count(&self) -> usize {
        self.d.object_count()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.d.src(m)
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.d.tgt(m)
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.d.identity(a)
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        self.d.compose(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        Cow::Borrowed(&self.hom[a.0 * self.d.object_count() + b.0])
    }
    fn object_name(&self, a: ObjId) -> String {
        self.d.object_name(a)
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.d.morphism_name(m)
    }
}

impl Permutative for WeakSub<'_> {
    fn unit(&self) -> ObjId {
        self.d.zero()
    }
    fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.d.wedge(a, b).map(|w| w.0)
    }
    fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        if let Some(&hit) = self.tensor.borrow().get(&(f, g)) {
            return hit;
        }
        let out = self.wedge_mor(f, g).filter(|&h| self.d.is_we(h));
        self.tensor.borrow_mut().insert((f, g), out);
        out
    }
    fn symmetry(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        let d = self.d;
        let (ab, l, r) = d.wedge(a, b)?;
        let (ba, l2, r2) = d.wedge(b, a)?;
        let twist = mediating_morphism(d, &Cocone { apex: ab, target: ba, legs: vec![(l, r2), (r, l2)] }).unique()?;
        d.is_we(twist).then_some(twist)
    }
    fn is_total(&self) -> bool {
        self.d.is_complete()
    }
}

/// Pointed finite sets `p0, …, p_max` (`p_n` has `n` points besides the
/// basepoint) with all pointed maps, injections as cofibrations,
/// bijections as weak equivalences and `p_n ∨ p_m = p_{n+m}` when it fits.
pub fn pointed_sets(max: usize) -> FiniteWald {
    let mut b = FinCat::builder();
    let objs: Vec<ObjId> = (0..=max).map(|n| b.object(&format!("p{n}"))).collect();
    // A map p_n → p_m is the list of images of 1..=n, 0 being the basepoint.
    let mut maps: HashMap<(usize, usize, Vec<usize>), MorId> = HashMap::new();
    for n in 0..=max {
        for m in 0..=max {
            for images in std::iter::repeat_n(0..=m, n).multi_cartesian_product() {
                let id = if n == m && images.iter().enumerate().all(|(i, &x)| x == i + 1) {
                    b.identity(objs[n])
                } else {
                    let name = format!("p{n}>p{m}:{}", images.iter().join(""));
                    b.morphism(&name, objs[n], objs[m])
                };
                maps.insert((n, m, images), id);
            }
        }
    }
    type Entry = ((usize, usize, Vec<usize>), MorId);
    let entries: Vec<Entry> = maps.iter().map(|(k, &v)| (k.clone(), v)).sorted().collect();
    for ((n, m, f), fid) in &entries {
        for ((m2, k, g), gid) in &entries {
            if m2 != m {
                continue;
            }
            let gf: Vec<usize> = f.iter().map(|&x| if x == 0 { 0 } else { g[x - 1] }).collect();
            b.compose(*gid, *fid, maps[&(*n, *k, gf)]);
        }
    }
    let cat = b.build().expect("pointed sets form a category");
    let injective = |images: &[usize]| images.iter().all(|&x| x != 0) && images.iter().all_unique();
    let cofs: Vec<MorId> = entries.iter().filter(|((_, _, f), _)| injective(f)).map(|(_, id)| *id).collect();
    let wes: Vec<MorId> = entries.iter().filter(|((n, m, f), _)| n == m && injective(f)).map(|(_, id)| *id).collect();
    let mut wedges = Vec::new();
    for n in 0..=max {
        for m in 0..=max - n {
            let l = maps[&(n, n + m, (1..=n).collect())];
            let r = maps[&(m, n + m, (n + 1..=n + m).collect())];
            wedges.push(((objs[n], objs[m]), (objs[n + m], l, r)));
        }
    }
    FiniteWald::new(cat, objs[0], cofs, wes, wedges, false).expect("tables are well-indexed")
}
