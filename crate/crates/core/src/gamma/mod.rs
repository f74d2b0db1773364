//! The tuple category Γ(C) of a permutative category C.
//!
//! An object is a finite tuple of objects of C. A morphism `A → B` assigns
//! to each position `i` of `A` a subset `φ(i)` of the positions of `B`,
//! together with a map `A_i → T(B_{φ(i)})` whenever the subset is non-empty.
//! Positions are 0-based in memory and printed 1-based.

mod laws;
mod pushout;
mod window;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::fincat::{MorId, ObjId, Permutation, Permutative};

pub use pushout::{
    pushout_identity_check,
    check_gluing_instance, cofiber, pushout_along_cofibration, pushout_mediating, splitting_equivalence, GluingDiagram,
    Pushout,
};
pub use laws::check_composition_laws;
pub use window::{count_hom, count_window_morphisms, hom_set, TruncatedGamma};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaObj(pub Vec<ObjId>);

impl GammaObj {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[ObjId] {
        &self.0
    }

    /// Entries at the given positions, in the given order.
    pub fn select(&self, positions: &[usize]) -> Vec<ObjId> {
        positions.iter().map(|&j| self.0[j]).collect()
    }

    pub fn display<P: Permutative + ?Sized>(&self, p: &P) -> String {
        let names: Vec<String> = self.0.iter().map(|&o| p.object_name(o)).collect();
        format!("({})", names.join(","))
    }
}

/// A morphism of Γ(C).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaMor {
    pub src: GammaObj,
    pub tgt: GammaObj,
    /// `phi[i]` is a sorted list of target positions.
    pub phi: Vec<Vec<usize>>,
    /// `comps[i]` is present exactly when `phi[i]` is non-empty.
    pub comps: Vec<Option<MorId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("target of the first map differs from the source of the second")]
    Mismatch,
    /// Blocks `ψ(j)` and `ψ(j')` inside `φ(i)` share a position.
    #[error("overlapping blocks ψ({}) and ψ({}) inside φ({})", .j + 1, .j2 + 1, .i + 1)]
    Overlapping { i: usize, j: usize, j2: usize },
    /// `φ(i)` contains some `j` with `ψ(j) = ∅` alongside non-empty blocks,
    /// so the tensor of the second map's components has no factor for `j`.
    #[error("empty block ψ({}) inside φ({}) next to non-empty blocks", .j + 1, .i + 1)]
    EmptyBlock { i: usize, j: usize },
    /// A tensor, symmetry or composite needed by the formula is absent from
    /// a partial presentation.
    #[error("composite component {} needs an entry outside the presentation", .i + 1)]
    Undefined { i: usize },
}

impl GammaMor {
    /// Checks arities, block ranges, sortedness and component typing.
    pub fn validate<P: Permutative + ?Sized>(&self, p: &P) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        if self.phi.len() != self.src.len() || self.comps.len() != self.src.len() {
            return bad(format!("φ has {} blocks for a source of length {}", self.phi.len(), self.src.len()));
        }
        for (i, block) in self.phi.iter().enumerate() {
            if block.windows(2).any(|w| w[0] >= w[1]) || block.iter().any(|&j| j >= self.tgt.len()) {
                return bad(format!("φ({}) = {:?} is not a sorted subset of the target", i + 1, block));
            }
            match (block.is_empty(), self.comps[i]) {
                (true, None) => {}
                (true, Some(_)) => return bad(format!("component {} given for an empty block", i + 1)),
                (false, None) => return bad(format!("component {} missing", i + 1)),
                (false, Some(f)) => {
                    let want_tgt = p.tensor_power(&self.tgt.select(block));
                    if p.src(f) != self.src.0[i] || Some(p.tgt(f)) != want_tgt {
                        return bad(format!("component {} = {} has the wrong type", i + 1, p.morphism_name(f)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn display<P: Permutative + ?Sized>(&self, p: &P) -> String {
        let blocks: Vec<String> = self
            .phi
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let comps: Vec<String> = self.comps.iter().map(|c| c.map_or("-".to_string(), |f| p.morphism_name(f))).collect();
        format!(
            "{}→{} φ=[{}] f=[{}]",
            self.src.display(p),
            self.tgt.display(p),
            blocks.join(" "),
            comps.join(" ")
        )
    }

    /// The positions of the target hit by some block.
    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.phi.iter().flatten().copied().collect();
        im.sort_unstable();
        im.dedup();
        im
    }
}

impl fmt::Display for GammaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.phi.iter().map(|b| format!("{:?}", b.iter().map(|j| j + 1).collect::<Vec<_>>())).collect();
        write!(f, "φ=[{}] f={:?}", blocks.join(" "), self.comps)
    }
}

pub fn gamma_identity<P: Permutative + ?Sized>(p: &P, a: &GammaObj) -> GammaMor {
    GammaMor {
        src: a.clone(),
        tgt: a.clone(),
        phi: (0..a.len()).map(|i| vec![i]).collect(),
        comps: a.0.iter().map(|&o| Some(p.identity(o))).collect(),
    }
}

/// The unique map `A → ()`, or `() → B`.
pub fn zero_map(src: &GammaObj, tgt: &GammaObj) -> GammaMor {
    assert!(src.is_empty() || tgt.is_empty(), "zero_map needs an empty end");
    GammaMor { src: src.clone(), tgt: tgt.clone(), phi: vec![Vec::new(); src.len()], comps: vec![None; src.len()] }
}

/// `second ∘ first`.
pub fn gamma_compose<P: Permutative + ?Sized>(p: &P, second: &GammaMor, first: &GammaMor) -> Result<GammaMor, ComposeError> {
    if first.tgt != second.src {
        return Err(ComposeError::Mismatch);
    }
    let mut phi = Vec::with_capacity(first.src.len());
    let mut comps = Vec::with_capacity(first.src.len());
    let mut seen = vec![usize::MAX; second.tgt.len()];
    for (i, block) in first.phi.iter().enumerate() {
        let mut keys = Vec::new();
        let mut empty = None;
        for &j in block {
            if second.phi[j].is_empty() {
                empty = Some(j);
            }
            for &k in &second.phi[j] {
                if seen[k] != usize::MAX {
                    return Err(ComposeError::Overlapping { i, j: seen[k], j2: j });
                }
                seen[k] = j;
                keys.push(k);
            }
        }
        for &k in &keys {
            seen[k] = usize::MAX;
        }
        if keys.is_empty() {
            phi.push(Vec::new());
            comps.push(None);
            continue;
        }
        if let Some(j) = empty {
            return Err(ComposeError::EmptyBlock { i, j });
        }
        let sorted = keys.windows(2).all(|w| w[0] < w[1]);
        let component = (|| {
            let tg = block.iter().try_fold(p.identity(p.unit()), |acc, &j| p.tensor_mor(acc, second.comps[j]?))?;
            let head = p.compose(tg, first.comps[i]?)?;
            let iso = if sorted {
                // The permutation is trivial, so the isomorphism is an identity.
                let x = keys.iter().try_fold(p.unit(), |acc, &k| p.tensor_obj(acc, second.tgt.0[k]))?;
                p.identity(x)
            } else {
                p.perm_iso(&second.tgt.select(&keys), &Permutation::sorting(&keys))?
            };
            p.compose(iso, head)
        })()
        .ok_or(ComposeError::Undefined { i })?;
        keys.sort_unstable();
        phi.push(keys);
        comps.push(Some(component));
    }
    Ok(GammaMor { src: first.src.clone(), tgt: second.tgt.clone(), phi, comps })
}

/// The blocks partition the target and none is empty.
///
/// Empty blocks are excluded: a weak equivalence comes from a surjection of
/// target positions onto source positions.
pub fn is_weak_equivalence(m: &GammaMor) -> bool {
    let mut hit = vec![false; m.tgt.len()];
    for block in &m.phi {
        if block.is_empty() {
            return false;
        }
        for &j in block {
            if std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
    }
    hit.into_iter().all(|h| h)
}

/// Singleton blocks at distinct positions with invertible components.
pub fn is_cofibration<P: Permutative + ?Sized>(p: &P, m: &GammaMor) -> bool {
    let mut hit = vec![false; m.tgt.len()];
    for (block, comp) in m.phi.iter().zip(&m.comps) {
        let [j] = block[..] else { return false };
        if std::mem::replace(&mut hit[j], true) {
            return false;
        }
        match comp {
            Some(f) if p.is_iso(*f) => {}
            _ => return false,
        }
    }
    true
}

/// Invertible morphisms: cofibrations whose blocks reach every position.
pub fn is_isomorphism<P: Permutative + ?Sized>(p: &P, m: &GammaMor) -> bool {
    m.src.len() == m.tgt.len() && is_cofibration(p, m)
}

/// Concatenation with the two factor inclusions.
pub fn wedge<P: Permutative + ?Sized>(p: &P, a: &GammaObj, b: &GammaObj) -> (GammaObj, GammaMor, GammaMor) {
    let mut entries = a.0.clone();
    entries.extend_from_slice(&b.0);
    let ab = GammaObj(entries);
    let left = GammaMor {
        src: a.clone(),
        tgt: ab.clone(),
        phi: (0..a.len()).map(|i| vec![i]).collect(),
        comps: a.0.iter().map(|&o| Some(p.identity(o))).collect(),
    };
    let right = GammaMor {
        src: b.clone(),
        tgt: ab.clone(),
        phi: (0..b.len()).map(|j| vec![a.len() + j]).collect(),
        comps: b.0.iter().map(|&o| Some(p.identity(o))).collect(),
    };
    (ab, left, right)
}

/// `f ∨ g : A ∨ B → A' ∨ B'`.
pub fn wedge_mor(f: &GammaMor, g: &GammaMor) -> GammaMor {
    let shift = f.tgt.len();
    let mut phi = f.phi.clone();
    phi.extend(g.phi.iter().map(|b| b.iter().map(|j| j + shift).collect()));
    let mut comps = f.comps.clone();
    comps.extend_from_slice(&g.comps);
    let cat = |x: &GammaObj, y: &GammaObj| GammaObj(x.0.iter().chain(&y.0).copied().collect());
    GammaMor { src: cat(&f.src, &g.src), tgt: cat(&f.tgt, &g.tgt), phi, comps }
}

/// `(c)` and `(ι₁, h)`: the inclusion of C into Γ(C).
pub fn singleton(c: ObjId) -> GammaObj {
    GammaObj(vec![c])
}

pub fn singleton_mor<P: Permutative + ?Sized>(p: &P, h: MorId) -> GammaMor {
    GammaMor { src: singleton(p.src(h)), tgt: singleton(p.tgt(h)), phi: vec![vec![0]], comps: vec![Some(h)] }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fincat::{Category, FinPermCat};

    pub(crate) use crate::fincat::samples::{c2, x1};

    const E: ObjId = ObjId(0);
    const X: ObjId = ObjId(1);

    fn t(p: &FinPermCat) -> MorId {
        p.base().find_morphism("t").unwrap()
    }

    fn mor(src: &[ObjId], tgt: &[ObjId], phi: &[&[usize]], comps: &[Option<MorId>]) -> GammaMor {
        GammaMor {
            src: GammaObj(src.to_vec()),
            tgt: GammaObj(tgt.to_vec()),
            phi: phi.iter().map(|b| b.to_vec()).collect(),
            comps: comps.to_vec(),
        }
    }

    #[test]
    fn identities() {
        let p = x1();
        let id0 = gamma_identity(&p, &GammaObj::empty());
        assert!(id0.phi.is_empty() && id0.comps.is_empty());
        let id1 = gamma_identity(&p, &singleton(X));
        assert_eq!(id1, singleton_mor(&p, p.identity(X)));
        let id2 = gamma_identity(&p, &GammaObj(vec![X, X]));
        assert_eq!(id2.phi, vec![vec![0], vec![1]]);
        for m in [&id0, &id1, &id2] {
            assert!(is_weak_equivalence(m) && is_cofibration(&p, m));
            m.validate(&p).unwrap();
        }
    }

    #[test]
    fn singletons_compose_like_c() {
        let p = x1();
        let t = t(&p);
        let s = singleton_mor(&p, t);
        assert_eq!(gamma_compose(&p, &s, &s).unwrap(), singleton_mor(&p, p.compose(t, t).unwrap()));
        let id = gamma_identity(&p, &singleton(X));
        assert_eq!(gamma_compose(&p, &id, &s).unwrap(), s);
        assert_eq!(gamma_compose(&p, &s, &id).unwrap(), s);
    }

    #[test]
    fn empty_block_next_to_nonempty_is_rejected() {
        // (x) → (x,x) with φ(1) = {1,2}, then (x,x) → (x) with ψ(2) = ∅.
        let p = x1();
        let t = t(&p);
        let first = mor(&[X], &[X, X], &[&[0, 1]], &[Some(t)]);
        let second = mor(&[X, X], &[X], &[&[0], &[]], &[Some(p.identity(X)), None]);
        first.validate(&p).unwrap();
        second.validate(&p).unwrap();
        assert_eq!(gamma_compose(&p, &second, &first), Err(ComposeError::EmptyBlock { i: 0, j: 1 }));
    }

    #[test]
    fn dropping_empty_factors_would_break_associativity() {
        // The rule "use g_j for non-empty ψ(j) only" gives t one way and id_x
        // the other on this triple, so it cannot be the composition law.
        let p = x1();
        let (t, id) = (t(&p), p.identity(X));
        let f = mor(&[X], &[X, X], &[&[0, 1]], &[Some(id)]);
        let g = mor(&[X, X], &[X, X], &[&[0], &[1]], &[Some(t), Some(id)]);
        let h = mor(&[X, X], &[X], &[&[], &[0]], &[None, Some(id)]);
        let drop_rule = |second: &GammaMor, first: &GammaMor| -> Option<MorId> {
            let block = &first.phi[0];
            let gs: Vec<MorId> = block.iter().filter_map(|&j| second.comps[j]).collect();
            p.compose(p.tensor_mor_power(&gs)?, first.comps[0]?)
        };
        let gf = gamma_compose(&p, &g, &f).unwrap();
        let left = drop_rule(&h, &gf);
        let hg = gamma_compose(&p, &h, &g).unwrap();
        let right = drop_rule(&hg, &f);
        assert_eq!(left, Some(t));
        assert_eq!(right, Some(id));
        assert!(matches!(gamma_compose(&p, &h, &gf), Err(ComposeError::EmptyBlock { .. })));
        assert!(matches!(gamma_compose(&p, &hg, &f), Err(ComposeError::EmptyBlock { .. })));
    }

    #[test]
    fn overlapping_blocks_are_rejected() {
        let p = c2();
        let id_e = p.identity(E);
        let first = mor(&[E], &[X, X], &[&[0, 1]], &[Some(id_e)]);
        let second = mor(&[X, X], &[X], &[&[0], &[0]], &[Some(p.identity(X)), Some(p.identity(X))]);
        assert_eq!(gamma_compose(&p, &second, &first), Err(ComposeError::Overlapping { i: 0, j: 0, j2: 1 }));
    }

    #[test]
    fn mismatched_composition_is_rejected() {
        let p = c2();
        let a = gamma_identity(&p, &singleton(E));
        let b = gamma_identity(&p, &singleton(X));
        assert_eq!(gamma_compose(&p, &a, &b), Err(ComposeError::Mismatch));
    }

    #[test]
    fn swapped_blocks_use_the_symmetry() {
        // (x,x) → (x,x) swapping positions, then the fold (x,x) → (x) in C2.
        let p = c2();
        let id_x = p.identity(X);
        let swap = mor(&[X, X], &[X, X], &[&[1], &[0]], &[Some(id_x), Some(id_x)]);
        let fold = mor(&[X, X], &[X], &[&[0], &[0]], &[Some(id_x), Some(id_x)]);
        assert_eq!(gamma_compose(&p, &fold, &swap).unwrap(), fold);
        let up = mor(&[E], &[X, X], &[&[0, 1]], &[Some(p.identity(E))]);
        let composite = gamma_compose(&p, &swap, &up).unwrap();
        assert_eq!(composite.phi, vec![vec![0, 1]]);
        assert_eq!(composite.comps, vec![p.symmetry(X, X)]);
    }

    #[test]
    fn predicates() {
        let p = x1();
        let t = t(&p);
        let st = singleton_mor(&p, t);
        assert!(is_weak_equivalence(&st));
        assert!(!is_cofibration(&p, &st));
        let to_zero = zero_map(&singleton(X), &GammaObj::empty());
        assert!(!is_weak_equivalence(&to_zero));
        let from_zero = zero_map(&GammaObj::empty(), &GammaObj(vec![X, E]));
        assert!(is_cofibration(&p, &from_zero));
        assert!(!is_weak_equivalence(&from_zero));
        let unhit = mor(&[X], &[X], &[&[]], &[None]);
        assert!(!is_weak_equivalence(&unhit));
    }

    #[test]
    fn wedges_concatenate() {
        let p = c2();
        let (ex, l, r) = wedge(&p, &GammaObj::empty(), &singleton(X));
        assert_eq!(ex, singleton(X));
        assert!(l.phi.is_empty());
        assert_eq!(r, gamma_identity(&p, &singleton(X)));
        let (xe, l, r) = wedge(&p, &singleton(X), &singleton(E));
        assert_eq!(xe, GammaObj(vec![X, E]));
        assert_eq!((l.phi.clone(), r.phi.clone()), (vec![vec![0]], vec![vec![1]]));
        assert!(is_cofibration(&p, &l) && is_cofibration(&p, &r));
        let (xx, ..) = wedge(&p, &singleton(X), &singleton(X));
        let (left_assoc, ..) = wedge(&p, &xx, &singleton(E));
        let (xe, ..) = wedge(&p, &singleton(X), &singleton(E));
        let (right_assoc, ..) = wedge(&p, &singleton(X), &xe);
        assert_eq!(left_assoc, right_assoc);
        assert_eq!(left_assoc, GammaObj(vec![X, X, E]));
    }

    #[test]
    fn wedge_of_maps_is_blockwise() {
        let p = x1();
        let st = singleton_mor(&p, t(&p));
        let id = gamma_identity(&p, &singleton(E));
        let w = wedge_mor(&st, &id);
        assert_eq!(w.phi, vec![vec![0], vec![1]]);
        w.validate(&p).unwrap();
    }

    #[test]
    fn validation_catches_bad_data() {
        let p = c2();
        let bad = mor(&[X], &[X], &[&[0]], &[Some(p.identity(E))]);
        assert!(bad.validate(&p).is_err());
        let unsorted = mor(&[E], &[X, X], &[&[1, 0]], &[Some(p.identity(E))]);
        assert!(unsorted.validate(&p).is_err());
    }
}
