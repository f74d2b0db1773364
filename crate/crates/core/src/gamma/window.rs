//! Finite windows onto Γ(C): every tuple of length at most `L` and every
//! morphism between such tuples.

use std::borrow::Cow;
use std::cell::RefCell;
use rustc_hash::FxHashMap as HashMap;

use itertools::Itertools;

use super::{gamma_compose, gamma_identity, GammaMor, GammaObj};
use crate::error::{Error, Result};
use crate::fincat::{Category, MorId, ObjId, Permutative};

fn subsets(b: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << b).map(move |mask| (0..b).filter(|j| mask & (1 << j) != 0).collect())
}

/// `|Hom(A, B)|` from the product formula, or `None` on overflow.
pub fn count_hom<P: Permutative + ?Sized>(p: &P, a: &GammaObj, b: &GammaObj) -> Option<u128> {
    let targets: Vec<Option<ObjId>> = subsets(b.len())
        .filter(|s| !s.is_empty())
        .map(|s| p.tensor_power(&b.select(&s)))
        .collect();
    a.entries().iter().try_fold(1u128, |total, &ai| {
        let options = 1 + targets.iter().flatten().map(|&t| p.hom(ai, t).len() as u128).sum::<u128>();
        total.checked_mul(options)
    })
}

/// All morphisms `A → B` in a fixed order: blocks by subset bitmask, then
/// components in hom-set order, with position 1 varying slowest.
pub fn hom_set<P: Permutative + ?Sized>(p: &P, a: &GammaObj, b: &GammaObj) -> Vec<GammaMor> {
    let choices: Vec<Vec<(Vec<usize>, Option<MorId>)>> = a
        .entries()
        .iter()
        .map(|&ai| {
            let mut opts = Vec::new();
            for s in subsets(b.len()) {
                if s.is_empty() {
                    opts.push((s, None));
                } else if let Some(t) = p.tensor_power(&b.select(&s)) {
                    for &f in p.hom(ai, t).iter() {
                        opts.push((s.clone(), Some(f)));
                    }
                }
            }
            opts
        })
        .collect();
    if a.is_empty() {
        return vec![GammaMor { src: a.clone(), tgt: b.clone(), phi: vec![], comps: vec![] }];
    }
    choices
        .into_iter()
        .multi_cartesian_product()
        .map(|row| {
            let (phi, comps) = row.into_iter().unzip();
            GammaMor { src: a.clone(), tgt: b.clone(), phi, comps }
        })
        .collect()
}

fn tuples(n_objects: usize, max_len: usize) -> Vec<GammaObj> {
    let mut out = vec![GammaObj::empty()];
    for len in 1..=max_len {
        out.extend(
            std::iter::repeat_n(0..n_objects, len)
                .multi_cartesian_product()
                .map(|v| GammaObj(v.into_iter().map(ObjId).collect())),
        );
    }
    out
}

/// Number of morphisms in the length-`max_len` window, or `None` on overflow.
pub fn count_window_morphisms<P: Permutative + ?Sized>(p: &P, max_len: usize) -> Option<u128> {
    let objs = tuples(p.object_count(), max_len);
    let mut total: u128 = 0;
    for a in &objs {
        for b in &objs {
            total = total.checked_add(count_hom(p, a, b)?)?;
        }
    }
    Some(total)
}

/// The full subcategory of Γ(C) on tuples of length at most `max_len`.
#[derive(Debug, Clone)]
pub struct TruncatedGamma<'a, P: Permutative + ?Sized> {
    pcat: &'a P,
    max_len: usize,
    objects: Vec<GammaObj>,
    obj_index: HashMap<GammaObj, ObjId>,
    mors: Vec<GammaMor>,
    ends: Vec<(ObjId, ObjId)>,
    mor_index: HashMap<GammaMor, MorId>,
    hom: Vec<Vec<MorId>>,
    identity: Vec<MorId>,
    composites: RefCell<HashMap<(MorId, MorId), Option<MorId>>>,
}

/// Composites remembered per window before the cache stops growing.
const COMPOSITE_CACHE_CAP: usize = 1 << 22;

impl<'a, P: Permutative + ?Sized> TruncatedGamma<'a, P> {
    /// Enumerates the window, failing up front if it would hold more than
    /// `budget` morphisms.
    pub fn new(pcat: &'a P, max_len: usize, budget: u64) -> Result<Self> {
        let count = count_window_morphisms(pcat, max_len);
        match count {
            Some(c) if c <= budget as u128 => {}
            _ => {
                return Err(Error::Budget(format!(
                    "window of length {max_len} has {} morphisms, budget is {budget}",
                    count.map_or("too many".to_string(), |c| c.to_string())
                )))
            }
        }
        let objects = tuples(pcat.object_count(), max_len);
        let obj_index: HashMap<GammaObj, ObjId> = objects.iter().cloned().enumerate().map(|(i, o)| (o, ObjId(i))).collect();
        let n = objects.len();
        let mut mors = Vec::new();
        let mut ends = Vec::new();
        let mut hom = vec![Vec::new(); n * n];
        for (ai, a) in objects.iter().enumerate() {
            for (bi, b) in objects.iter().enumerate() {
                for m in hom_set(pcat, a, b) {
                    hom[ai * n + bi].push(MorId(mors.len()));
                    ends.push((ObjId(ai), ObjId(bi)));
                    mors.push(m);
                }
            }
        }
        let mor_index: HashMap<GammaMor, MorId> = mors.iter().cloned().enumerate().map(|(i, m)| (m, MorId(i))).collect();
        let identity = objects.iter().map(|a| mor_index[&gamma_identity(pcat, a)]).collect();
        Ok(Self { pcat, max_len, objects, obj_index, mors, ends, mor_index, hom, identity, composites: RefCell::default() })
    }

    pub fn pcat(&self) -> &'a P {
        self.pcat
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn morphism_count(&self) -> usize {
        self.mors.len()
    }

    pub fn obj(&self, a: ObjId) -> &GammaObj {
        &self.objects[a.0]
    }

    pub fn mor(&self, m: MorId) -> &GammaMor {
        &self.mors[m.0]
    }

    pub fn obj_id(&self, a: &GammaObj) -> Option<ObjId> {
        self.obj_index.get(a).copied()
    }

    pub fn mor_id(&self, m: &GammaMor) -> Option<MorId> {
        self.mor_index.get(m).copied()
    }

    pub fn all_morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.mors.len()).map(MorId)
    }
}

impl<P: Permutative + ?Sized> Category for TruncatedGamma<'_, P> {
    fn object_count(&self) -> usize {
        self.objects.len()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.ends[m.0].0
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.ends[m.0].1
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.identity[a.0]
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        if self.ends[inner.0].1 != self.ends[outer.0].0 {
            return None;
        }
        if let Some(&hit) = self.composites.borrow().get(&(outer, inner)) {
            return hit;
        }
        let out = gamma_compose(self.pcat, &self.mors[outer.0], &self.mors[inner.0]).ok().and_then(|gf| self.mor_id(&gf));
        let mut cache = self.composites.borrow_mut();
        if cache.len() < COMPOSITE_CACHE_CAP {
            cache.insert((outer, inner), out);
        }
        out
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        Cow::Borrowed(&self.hom[a.0 * self.objects.len() + b.0])
    }
    fn object_name(&self, a: ObjId) -> String {
        self.objects[a.0].display(self.pcat)
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.mors[m.0].display(self.pcat)
    }
    fn morphisms(&self) -> Vec<MorId> {
        self.all_morphisms().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{c2, x1};
    use super::*;

    #[test]
    fn empty_window() {
        let p = c2();
        let w = TruncatedGamma::new(&p, 0, 10).unwrap();
        assert_eq!(w.object_count(), 1);
        assert_eq!(w.morphism_count(), 1);
    }

    #[test]
    fn object_counts() {
        let p = x1();
        assert_eq!(tuples(2, 2).len(), 7);
        let w = TruncatedGamma::new(&p, 2, 1_000_000).unwrap();
        assert_eq!(w.object_count(), 7);
    }

    #[test]
    fn c2_length_one_counts() {
        // Hom((),B) = Hom(A,()) = 1; Hom((a),(b)) = 1 (empty block) + [a = b].
        let p = c2();
        let w = TruncatedGamma::new(&p, 1, 1000).unwrap();
        assert_eq!(w.object_count(), 3);
        assert_eq!(w.morphism_count(), 5 + 2 * 2 + 2);
    }

    #[test]
    fn enumeration_matches_count() {
        for p in [c2(), x1()] {
            let objs = tuples(2, 2);
            for a in &objs {
                for b in &objs {
                    assert_eq!(hom_set(&p, a, b).len() as u128, count_hom(&p, a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = x1();
        assert!(matches!(TruncatedGamma::new(&p, 2, 10), Err(Error::Budget(_))));
    }

    #[test]
    fn composition_stays_in_window() {
        let p = c2();
        let w = TruncatedGamma::new(&p, 2, 100_000).unwrap();
        for m in w.all_morphisms() {
            let id = w.identity(w.tgt(m));
            assert_eq!(w.compose(id, m), Some(m));
            assert_eq!(w.compose(m, w.identity(w.src(m))), Some(m));
        }
    }
}
